"""CLI surface: subcommands, formats, exit codes, determinism."""

import json

import pytest

from spectranorm.cli import main
from spectranorm.fileio import format_matrix_csv, load_subject, parse_matrix_file
from spectranorm.cmatrix import CMatrix
from spectranorm.errors import BadComplexLiteral, RaggedRows
from spectranorm.graphs import Graph, complete


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_construct_complete(capsys, tmp_path):
    code, out = _run(capsys, "construct", "--family", "complete", "--params", "4")
    assert code == 0 and out.strip() == "C~"


def test_construct_matrix_roundtrip(capsys):
    code, out = _run(capsys, "construct", "--family", "dft", "--params", "4")
    assert code == 0
    m = parse_matrix_file(out)
    assert m.rows == 4 and m.cols == 4


def test_norms_text_and_json(capsys, tmp_path):
    f = tmp_path / "k4.g6"
    f.write_text("C~\n")
    code, out = _run(capsys, "norms", "--in", str(f), "--p", "1", "--k", "4")
    assert code == 0
    assert "schatten p=1: 6" in out
    assert "kyfan   k=4: 6" in out
    code, out = _run(capsys, "norms", "--in", str(f), "--p", "1", "--format", "json")
    payload = json.loads(out)
    assert payload["kind"] == "graph"
    assert abs(payload["schatten"]["1"] - 6.0) < 1e-9


def test_norms_empty_graph(capsys, tmp_path):
    f = tmp_path / "empty5.g6"
    f.write_text("D??\n")
    code, out = _run(capsys, "norms", "--in", str(f), "--p", "1")
    assert code == 0 and "schatten p=1: 0" in out


def test_check_kyfan01_equality_exit0(capsys, tmp_path):
    f = tmp_path / "k4.g6"
    f.write_text("C~\n")
    code, out = _run(capsys, "check", "--in", str(f), "--bound", "KYFAN_01", "--k", "4")
    assert code == 0
    assert "EQUALITY" in out


def test_check_json_schema(capsys, tmp_path):
    f = tmp_path / "k4.g6"
    f.write_text("C~\n")
    code, out = _run(capsys, "check", "--in", str(f), "--format", "json")
    assert code == 0
    payload = json.loads(out)
    pinned = {"bound_id", "params", "lhs", "rhs", "slack", "holds", "equality",
              "equality_witness", "notes", "skipped", "skip_reason"}
    for chk in payload["checks"]:
        assert set(chk) == pinned


def test_check_skip_and_exit(capsys, tmp_path):
    f = tmp_path / "mat.csv"
    f.write_text("0,1\n1,0\n")
    code, out = _run(capsys, "check", "--in", str(f), "--bound", "MCCLELLAND")
    assert code == 0  # graph-only row is skipped for a matrix, not failed
    assert "SKIP" in out


def test_sweep_exit_codes(capsys):
    code, _ = _run(capsys, "sweep", "--n", "4", "--threads", "1")
    assert code == 0
    # shrinking all tolerances far below float dust turns exact-equality
    # rows into reported violations: documents what --tol-scale does
    code, _ = _run(capsys, "sweep", "--n", "4", "--threads", "1",
                   "--tol-scale", "1e-9")
    assert code == 1


def test_sweep_csv(capsys):
    code, out = _run(capsys, "sweep", "--n", "3", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0]
    assert header == "bound_id,params,evaluated,skipped,violations,min_slack,equality_count"


def test_random_determinism(capsys):
    code, out1 = _run(capsys, "random", "--n", "40", "--p", "1",
                      "--samples", "2", "--seed", "3", "--format", "json")
    assert code == 0
    code, out2 = _run(capsys, "random", "--n", "40", "--p", "1",
                      "--samples", "2", "--seed", "3", "--format", "json")
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["samples"] == 2 and len(payload["values"]) == 2


def test_search_cli_and_threads(capsys):
    outs = []
    for t in ("1", "2"):
        code, out = _run(capsys, "search", "--objective", "XI_K", "--n", "5",
                         "--k", "2", "--threads", t, "--format", "json")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    payload = json.loads(outs[0])
    assert payload["objective"] == "XI_K" and payload["n"] == 5


def test_json_schemas_pinned(capsys, tmp_path):
    code, out = _run(capsys, "search", "--objective", "MAX_ENERGY", "--n", "4",
                     "--format", "json")
    assert set(json.loads(out)) == {"objective", "n", "param", "value",
                                    "witnesses", "witness_count",
                                    "graphs_scanned", "notes"}
    code, out = _run(capsys, "random", "--n", "30", "--p", "2", "--samples",
                     "1", "--seed", "1", "--format", "json")
    assert set(json.loads(out)) == {"n", "p", "samples", "seed", "values",
                                    "mean", "stdev", "normalized",
                                    "sigma1_over_n", "sigma2_over_sqrt_n"}
    code, out = _run(capsys, "sweep", "--n", "3", "--format", "json")
    payload = json.loads(out)
    assert set(payload) == {"n", "p_values", "k_values", "tol_scale",
                            "canonical", "graphs_scanned", "total_violations",
                            "rows"}
    assert set(payload["rows"][0]) == {"bound_id", "params", "evaluated",
                                       "skipped", "violations", "min_slack",
                                       "equality_count", "equality_examples",
                                       "violation_examples", "skip_reason"}


def test_search_spread_vs_f2(capsys):
    code, out = _run(capsys, "search", "--objective", "SPREAD_VS_F2", "--n", "4",
                     "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["maxima_coincide"] is True


def test_construct_blow_up(capsys, tmp_path):
    f = tmp_path / "k4.g6"
    f.write_text("C~\n")
    code, out = _run(capsys, "construct", "--family", "blow_up", "--params", "2",
                     "--in", str(f))
    assert code == 0
    g = load_subject(out)
    assert isinstance(g, Graph) and g.n == 8 and g.num_edges() == 24


def test_error_exit_2_and_json_error(capsys, tmp_path):
    code, _ = _run(capsys, "norms", "--in", str(tmp_path / "missing.g6"))
    assert code == 2
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    code, out = _run(capsys, "norms", "--in", str(bad), "--format", "json")
    assert code == 2
    payload = json.loads(out)
    assert payload["error"]["type"] == "RaggedRows"


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["check"])  # missing --in
    assert exc.value.code == 2


# --- file format parsing -------------------------------------------------------

def test_parse_matrix_examples():
    m = parse_matrix_file("0,1\n1,0")
    assert m.rows == 2 and m.entries == (0, 1, 1, 0)
    m = parse_matrix_file("1+1i")
    assert m.rows == 1 and m.entries == (1 + 1j,)
    m = parse_matrix_file("2.5e-1-3i,4")
    assert m.entries == (0.25 - 3j, 4 + 0j)
    with pytest.raises(RaggedRows):
        parse_matrix_file("1,2\n3")
    with pytest.raises(BadComplexLiteral):
        parse_matrix_file("ham")
    with pytest.raises(BadComplexLiteral):
        parse_matrix_file("2i")  # needs the a+bi form


def test_matrix_csv_roundtrip():
    import numpy as np

    rng = np.random.default_rng(14)
    m = CMatrix.from_array(rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4)))
    again = parse_matrix_file(format_matrix_csv(m))
    assert np.array_equal(again.data, m.data)


def test_load_subject_detection(tmp_path):
    assert isinstance(load_subject("C~"), Graph)
    g = load_subject("3\n0 1\n1 2\n")
    assert isinstance(g, Graph) and g.num_edges() == 2
    assert isinstance(load_subject("0,1\n1,0"), CMatrix)
    assert isinstance(load_subject("1+1i"), CMatrix)
    # a bare integer line reads as an edge-list header
    g = load_subject("5\n")
    assert isinstance(g, Graph) and g.n == 5 and g.num_edges() == 0
