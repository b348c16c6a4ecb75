"""
Instrumentation Module

Counters, trace events and the assertion type shared by the proof-step
algorithms. Branch hits are always recorded; full event traces only when
tracing is switched on.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple


@dataclass
class Counters:
    edges_examined: int = 0
    kempe_swaps: int = 0
    recolorings: int = 0
    path_edge_examinations: int = 0
    path_edges: int = 0
    branches: set = field(default_factory=set)

    def merge(self, other: "Counters") -> None:
        self.edges_examined += other.edges_examined
        self.kempe_swaps += other.kempe_swaps
        self.recolorings += other.recolorings
        self.path_edge_examinations += other.path_edge_examinations
        self.path_edges += other.path_edges
        self.branches |= other.branches

    def as_dict(self) -> dict:
        return {
            'edges_examined': self.edges_examined,
            'kempe_swaps': self.kempe_swaps,
            'recolorings': self.recolorings,
            'path_edge_examinations': self.path_edge_examinations,
            'path_edges': self.path_edges,
            'branches': sorted(self.branches),
        }


@dataclass(frozen=True)
class TraceEvent:
    step: str
    vertices: Tuple[int, ...] = ()
    before: Tuple[int, ...] = ()
    after: Tuple[int, ...] = ()
    note: str = ''

    def format(self) -> str:
        """One line: step, vertices touched, colors before -> after, note."""
        parts = [self.step]
        if self.vertices:
            parts.append('v=' + ','.join(map(str, self.vertices)))
        if self.before or self.after:
            parts.append(
                ','.join(map(str, self.before)) + '->' + ','.join(map(str, self.after))
            )
        if self.note:
            parts.append(self.note)
        return ' '.join(parts)

    def as_dict(self) -> dict:
        return {
            'step': self.step,
            'vertices': list(self.vertices),
            'before': list(self.before),
            'after': list(self.after),
            'note': self.note,
        }


class Trace:
    """Event recorder. With enabled=False only branch hits are kept."""

    def __init__(self, enabled: bool = False, counters: Optional[Counters] = None):
        self.enabled = enabled
        self.events: list[TraceEvent] = []
        self.counters = counters if counters is not None else Counters()

    def emit(self, step: str, vertices: Sequence[int] = (), before: Sequence[int] = (),
             after: Sequence[int] = (), note: str = '') -> None:
        if self.enabled:
            self.events.append(
                TraceEvent(step, tuple(vertices), tuple(before), tuple(after), note)
            )

    def branch(self, name: str, vertices: Sequence[int] = (), note: str = '') -> None:
        self.counters.branches.add(name)
        self.emit('branch:' + name, vertices, note=note)

    def lines(self) -> list[str]:
        return [event.format() for event in self.events]


class InternalAssertion(RuntimeError):
    """A proof-step expectation failed; carries the trace recorded so far."""

    def __init__(self, step: str, detail: str, trace: Optional[Trace] = None):
        super().__init__(f"{step}: {detail}")
        self.step = step
        self.detail = detail
        self.events = list(trace.events) if trace is not None else []
