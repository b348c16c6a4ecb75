"""
Tests for the command line surface and its exit codes
"""

import json

import pytest

import cli
from coloring_core import Violation
from dispatcher import AlgorithmFailure
from graph_core import parse_dimacs, write_dimacs
from testkit import named_graph

K5 = "p edge 5 10\n" + "".join(
    f"e {u} {v}\n" for u in range(1, 6) for v in range(u + 1, 6))


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.col"
    path.write_text(K5)
    return str(path)


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.col"
    path.write_text("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    return str(path)


def test_color_prints_palette_and_components(k5_file, capsys):
    assert cli.main(['color', k5_file]) == cli.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "c palette 5"
    assert out[1] == "c component 0 class=Complete colors_used=5 algorithm=complete"
    assert out[2:] == [f"s {v} {v + 1}" for v in range(5)]


def test_color_json(tmp_path, capsys):
    path = tmp_path / "petersen.col"
    path.write_bytes(write_dimacs(named_graph('petersen')))
    assert cli.main(['color', str(path), '--algo', 'b', '--json']) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['palette'] == 3
    assert data['components'][0]['algorithm'] == 'B'


def test_color_trace_goes_to_stderr(tmp_path, capsys):
    path = tmp_path / "wagner.col"
    path.write_bytes(write_dimacs(named_graph('wagner')))
    assert cli.main(['color', str(path), '--algo', 'b', '--trace']) == cli.EXIT_OK
    captured = capsys.readouterr()
    assert "pair-removal" in captured.err
    assert "pair-removal" not in captured.out


def test_verify_accepts_valid_coloring(triangle_file, tmp_path, capsys):
    coloring = tmp_path / "ok.txt"
    coloring.write_text("s 0 1\ns 1 2\ns 2 3\n")
    assert cli.main(['verify', triangle_file, str(coloring)]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("ok colors_used=3")


def test_verify_reports_violation(triangle_file, tmp_path, capsys):
    coloring = tmp_path / "bad.json"
    coloring.write_text(json.dumps({'k': 2, 'colors': [1, 1, 2]}))
    assert cli.main(['verify', triangle_file, str(coloring)]) == cli.EXIT_INVALID
    assert capsys.readouterr().out.strip() == "violation 0 1"


def test_verify_reports_uncolored(triangle_file, tmp_path, capsys):
    coloring = tmp_path / "partial.txt"
    coloring.write_text("s 0 1\ns 2 2\n")
    assert cli.main(['verify', triangle_file, str(coloring)]) == cli.EXIT_INVALID
    assert capsys.readouterr().out.strip() == "uncolored 1"


@pytest.mark.parametrize('text', [
    "p edge 3 2\ne 1 2\n",
    "p edge 3 1\ne 1 1\n",
    "e 1 2\n",
    "p edge 2 1\ne 1 9\n",
])
def test_malformed_input_exits_with_input_error(tmp_path, capsys, text):
    path = tmp_path / "bad.col"
    path.write_text(text)
    assert cli.main(['color', str(path)]) == cli.EXIT_INPUT
    assert capsys.readouterr().err.startswith("error:")


def test_missing_file_is_input_error(tmp_path, capsys):
    assert cli.main(['color', str(tmp_path / "absent.col")]) == cli.EXIT_INPUT
    assert "cannot read input" in capsys.readouterr().err


def test_bad_arguments_are_input_errors(capsys):
    assert cli.main(['color']) == cli.EXIT_INPUT
    assert cli.main(['gen', '--kind', 'nope']) == cli.EXIT_INPUT


def test_gen_named_graph(capsys):
    assert cli.main(['gen', '--kind', 'named', '--name', 'petersen']) == cli.EXIT_OK
    g = parse_dimacs(capsys.readouterr().out)
    assert g == named_graph('petersen')


def test_gen_exhaustive_prints_count(capsys):
    assert cli.main(['gen', '--kind', 'exhaustive', '--n', '4']) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "38"


def test_gen_edgelist_round_trips_through_color(tmp_path, capsys):
    assert cli.main(['gen', '--kind', 'regular', '--n', '12', '--d', '3', '--seed', '5',
                     '--out-format', 'edgelist']) == cli.EXIT_OK
    path = tmp_path / "cubic.txt"
    path.write_text(capsys.readouterr().out)
    assert cli.main(['color', str(path)]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("c palette ")


def test_gen_unknown_name(capsys):
    assert cli.main(['gen', '--kind', 'named', '--name', 'nonesuch']) == cli.EXIT_INPUT


def test_chromatic(triangle_file, capsys):
    assert cli.main(['chromatic', triangle_file, '--witness']) == cli.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "chromatic 3"
    assert len(out) == 4


def test_chromatic_budget_exceeded(k5_file, capsys):
    assert cli.main(['chromatic', k5_file, '--budget', '2']) == cli.EXIT_FAILURE


def test_bench_csv(capsys):
    assert cli.main(['bench', '--sizes', '10,12', '--degree', '3', '--repeats', '2']) == cli.EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == ",".join(cli.BENCH_HEADER)
    assert len(rows) == 1 + 2 * 3
    assert rows[3].split(',')[3] == "auto:median"
    assert all(row.endswith("True") for row in rows[1:])


def test_color_long_flags_and_seed(tmp_path, capsys):
    path = tmp_path / "petersen.col"
    path.write_bytes(write_dimacs(named_graph('petersen')))
    assert cli.main(['color', str(path), '--algorithm', 'a', '--seed', '3', '--json']) == cli.EXIT_OK
    first = json.loads(capsys.readouterr().out)
    assert first['components'][0]['algorithm'] == 'A'
    assert cli.main(['color', str(path), '--algorithm', 'a', '--seed', '4', '--json']) == cli.EXIT_OK
    assert json.loads(capsys.readouterr().out)['colors'] == first['colors']


def test_bench_delta_flag(capsys):
    assert cli.main(['bench', '--sizes', '10', '--delta', '4', '--repeats', '1',
                     '--algorithm', 'a']) == cli.EXIT_OK
    rows = capsys.readouterr().out.splitlines()
    assert rows[1].split(',')[2:4] == ['4', 'a']


def test_bench_aborts_on_invalid_coloring(monkeypatch, capsys):
    monkeypatch.setattr(cli, 'validate_coloring', lambda *args, **kwargs: Violation((0, 1)))
    assert cli.main(['bench', '--sizes', '10,12', '--delta', '3', '--repeats', '2']) == cli.EXIT_INVALID
    captured = capsys.readouterr()
    assert captured.out.splitlines() == [",".join(cli.BENCH_HEADER)]
    assert "bench aborted" in captured.err


def test_trace_pair_removal(capsys):
    assert cli.main(['trace', '--case', 'pair-removal']) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("c case pair-removal\np edge 8 12\n")
    assert "c trace" in out and "pair-removal" in out


def test_trace_json(capsys):
    assert cli.main(['trace', '--case', 'split', '--json']) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['branches'] == ['split']
    assert data['n'] == 10


def test_trace_prepared_repair_case(capsys):
    assert cli.main(['trace', '--case', 'final-maneuver-(ii-present)']) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("c case final-maneuver-(ii-present)\n"
                          "c start 0 1 2 3 3 1 3 2 2 1\np edge 10 15\n")
    assert "final-maneuver-(ii-present)" in out.split("p edge", 1)[1]


def test_trace_json_carries_start(capsys):
    assert cli.main(['trace', '--case', 'third-color-break', '--json']) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data['start'] == [0, 1, 2, 3, 4, 3, 1, 4, 4, 2, 2, 1]
    assert 'third-color-break' in data['branches']
    assert data['colors'] == [1, 3, 2, 3, 4, 2, 1, 4, 4, 2, 2, 1]


def test_algorithm_failure_exit_code(k5_file, monkeypatch, capsys):
    def failing(*args, **kwargs):
        raise AlgorithmFailure("no algorithm succeeded")

    monkeypatch.setattr(cli, 'color_graph', failing)
    assert cli.main(['color', k5_file]) == cli.EXIT_FAILURE
    assert "no algorithm succeeded" in capsys.readouterr().err
