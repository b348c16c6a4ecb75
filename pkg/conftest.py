"""
Shared fixtures and hypothesis strategies for the test suite
"""

import itertools

import pytest
from hypothesis import strategies as st

from graph_core import build_graph
from testkit import named_graph


@st.composite
def graphs(draw, min_n=0, max_n=9):
    """Arbitrary simple graphs: a vertex count plus one coin flip per pair."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = list(itertools.combinations(range(n), 2))
    flips = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [pair for pair, keep in zip(pairs, flips) if keep])


@pytest.fixture
def petersen():
    return named_graph('petersen')


@pytest.fixture
def prism():
    return named_graph('prism')


@pytest.fixture
def k33():
    return named_graph('k33')


@pytest.fixture
def wagner():
    return named_graph('wagner')


@pytest.fixture
def bridged_cubic():
    return named_graph('bridged-cubic')


@pytest.fixture
def bowtie():
    return named_graph('bowtie')
