"""Bound registry: example values, detectors, preconditions, soundness."""

import math

import numpy as np
import pytest

from spectranorm.cmatrix import CMatrix
from spectranorm.constructions import dft_matrix, sylvester_hadamard
from spectranorm.bounds import (
    check_bound,
    detect_complete_multipartite,
    registry_ids,
    run_registry,
)
from spectranorm.errors import PreconditionFailed, UnknownBoundId
from spectranorm.graphs import (
    Graph,
    complete,
    complete_multipartite,
    cycle,
    empty_graph,
    paley,
    path,
    perfect_matching,
    with_isolated,
)


def test_mcclelland_example_k4():
    chk = check_bound("MCCLELLAND", complete(4))
    assert abs(chk.lhs - 6.0) < 1e-9
    assert abs(chk.rhs - math.sqrt(48)) < 1e-9
    assert chk.holds and not chk.equality


def test_mcclelland_matchings_and_empty():
    chk = check_bound("MCCLELLAND", perfect_matching(6))
    assert chk.equality  # energy 6 = sqrt(2*3*6)
    chk = check_bound("MCCLELLAND", empty_graph(4))
    # numerically 0 = 0, but the detector demands a nonzero Gram scale
    assert chk.holds and abs(chk.slack) < 1e-12 and not chk.equality


def test_kyfan01_equality_k4():
    chk = check_bound("KYFAN_01", complete(4), k=4)
    assert abs(chk.lhs - 6.0) < 1e-12 and abs(chk.rhs - 6.0) < 1e-12
    assert chk.equality
    assert chk.equality_witness["plain"] is True
    assert chk.equality_witness["nonzero_sigma"] == 4


def test_caporossi_p4_strict():
    chk = check_bound("CAPOROSSI", path(4))
    assert abs(chk.lhs - 2 * math.sqrt(5)) < 1e-9
    assert abs(chk.rhs - (1 + math.sqrt(5))) < 1e-9
    assert chk.holds and not chk.equality


def test_caporossi_equality_multipartite():
    g = with_isolated(complete_multipartite([2, 3]), 2)
    chk = check_bound("CAPOROSSI", g)
    assert chk.equality
    assert chk.equality_witness["parts"] == [3, 2]


def test_km_spectral_equality_kn():
    chk = check_bound("KM_SPECTRAL", complete(4), p=1.0)
    assert chk.equality  # 6 = 3 + sqrt(3) sqrt(12 - 9)


def test_km_density_detector_cases():
    chk = check_bound("KM_DENSITY", complete(5), p=1.0)
    assert chk.equality and chk.equality_witness["case"] == "complete"
    chk = check_bound("KM_DENSITY", perfect_matching(6), p=1.0)
    assert chk.equality and chk.equality_witness["case"] == "perfect_matching"
    # C_5 is strongly regular but its nontrivial eigenvalue moduli differ,
    # so the bound holds strictly
    chk = check_bound("KM_DENSITY", paley(5), p=1.0)
    assert chk.holds and not chk.equality
    from spectranorm.bounds import SubjectContext, _detect_km_density

    verdict, witness = _detect_km_density(SubjectContext(paley(13)), {"p": 1.0})
    assert verdict is False and witness["case"] == "strongly_regular"
    assert witness["srg"] == [13, 6, 2, 3]
    with pytest.raises(PreconditionFailed):
        check_bound("KM_DENSITY", with_isolated(complete(2), 3), p=1.0)  # m < n/2


def test_km_absolute_k4_equality():
    chk = check_bound("KM_ABSOLUTE", complete(4))
    assert chk.equality  # 6 = 4(1+2)/2; witness is informational
    assert chk.equality_witness["strongly_regular"] == [4, 3, 2, 0]


def test_hoffman_k4_equality():
    chk = check_bound("HOFFMAN", complete(4))
    assert abs(chk.lhs - 3.0) < 1e-9 and abs(chk.rhs - 3.0) < 1e-9
    assert chk.equality


def test_schr_lower_detectors():
    chk = check_bound("SCHR_LOWER", complete(4), p=1.0)
    assert chk.equality
    # at p > 1 only the regular multipartite case is structural equality
    chk = check_bound("SCHR_LOWER", complete_multipartite([2, 2]), p=1.5)
    assert chk.equality and chk.equality_witness["parts"] == [2, 2]
    chk = check_bound("SCHR_LOWER", path(4), p=1.0)
    assert chk.holds and not chk.equality


def test_schatten_p_ge2_notes_flag():
    chk = check_bound("SCHATTEN_P_GE2", complete(4), p=3.0)
    assert chk.holds
    assert "norm-level" in chk.notes


def test_power_mean_equality_dft_rows():
    sub = CMatrix.from_array(dft_matrix(5).data[:3, :])
    chk = check_bound("POWER_MEAN", sub, p=1.0, q=2.0)
    assert chk.equality
    rng = np.random.default_rng(21)
    rand = CMatrix.from_array(rng.standard_normal((3, 5)))
    chk = check_bound("POWER_MEAN", rand, p=1.0, q=2.0)
    assert chk.holds and not chk.equality


def test_schatten_abs_mat_equality_dft():
    chk = check_bound("SCHATTEN_ABS_MAT", dft_matrix(4), p=1.0)
    assert abs(chk.lhs - 8.0) < 1e-9
    assert chk.equality


def test_km_matrix_exponent_choice():
    # regression for the frozen p/q final exponent: sound on random inputs,
    # while the 1/q variant is violated
    rng = np.random.default_rng(31)
    saw_1q_violation = False
    for _ in range(300):
        m = int(rng.integers(2, 6))
        n = int(rng.integers(m, 7))
        a = CMatrix.from_array(rng.standard_normal((m, n)))
        for p, q in [(1.0, 2.0), (1.5, 2.0), (2.0, 3.0)]:
            chk = check_bound("KM_MATRIX", a, p=p, q=q)
            assert chk.holds
            from spectranorm.eigen import singular_values

            sig = singular_values(a).values
            inner = max(0.0, float(np.sum(sig**q)) - sig[0] ** q)
            rhs_1q = sig[0] ** p + (m - 1) ** (1 - p / q) * inner ** (1 / q)
            if chk.lhs > rhs_1q + 1e-9:
                saw_1q_violation = True
    assert saw_1q_violation


def test_nonneg_energy_block_equality():
    # (B, B) with B the adjacency of a maximum-energy order-4 graph attains
    # the absolute nonnegative bound
    b = complete(4).adjacency_matrix().data.real
    a = CMatrix.from_array(np.hstack([b, b]))
    chk = check_bound("NONNEG_ENERGY", a)
    assert abs(chk.lhs - (4 + 2) * math.sqrt(8) / 2) < 1e-9
    assert chk.equality
    assert chk.equality_witness == {"plain": True, "had_class": True}


def test_kyfan_l2_equality_hadamard():
    h = sylvester_hadamard(4)
    chk = check_bound("KYFAN_L2", h, k=4)
    assert chk.equality
    chk = check_bound("KYFAN_INF", h, k=4)
    assert chk.equality


def test_kyfan_matrix_equality_witness_construction():
    # Hadamard-type rows tensored with an all-ones block give exactly k
    # equal nonzero singular values, attaining both matrix Ky Fan bounds
    from spectranorm.constructions import all_ones, kronecker

    for k, q, r, s in [(2, 4, 2, 3), (3, 5, 1, 2), (1, 3, 3, 1)]:
        b = CMatrix.from_array(dft_matrix(q).data[:k, :])
        a = kronecker(b, all_ones(r, s))
        for bid in ("KYFAN_L2", "KYFAN_INF"):
            chk = check_bound(bid, a, k=k)
            assert chk.equality, (bid, k, q, r, s)
            assert chk.equality_witness["nonzero_sigma"] == k


def test_matrix_rows_orient_wide():
    # rows > cols inputs are transposed first; m becomes the smaller side
    rng = np.random.default_rng(41)
    tall = CMatrix.from_array(rng.standard_normal((5, 3)))
    wide = CMatrix.from_array(tall.data.T)
    for bid, kwargs in [("POWER_MEAN", dict(p=1.0, q=2.0)),
                        ("SCHATTEN_ABS_MAT", dict(p=1.5)),
                        ("KM_MATRIX", dict(p=1.0, q=2.0)),
                        ("KYFAN_L2", dict(k=2))]:
        a = check_bound(bid, tall, **kwargs)
        b = check_bound(bid, wide, **kwargs)
        assert a.holds and b.holds
        assert abs(a.lhs - b.lhs) < 1e-9 and abs(a.rhs - b.rhs) < 1e-9


def test_preconditions_and_errors():
    with pytest.raises(UnknownBoundId):
        check_bound("NO_SUCH_BOUND", complete(3))
    with pytest.raises(PreconditionFailed):
        check_bound("MCCLELLAND", dft_matrix(3))  # graph-only row
    with pytest.raises(PreconditionFailed):
        check_bound("SCHATTEN_ABS_N", complete(3), p=2.0)  # needs p < 2
    with pytest.raises(PreconditionFailed):
        check_bound("SCHR_LOWER", empty_graph(3), p=1.0)  # needs an edge
    with pytest.raises(PreconditionFailed):
        check_bound("KM_SPECTRAL", complete(3))  # missing p
    with pytest.raises(PreconditionFailed):
        check_bound("KYFAN_01", dft_matrix(3), k=1)  # not 0/1
    with pytest.raises(PreconditionFailed):
        check_bound("KYFAN_L2", complete(3), k=5)  # k > m
    with pytest.raises(PreconditionFailed):
        check_bound("POWER_MEAN", complete(3), p=3.0, q=2.0)  # p > q


def _brute_complete_multipartite(g: Graph):
    adj = g.neighbor_masks()
    live = [v for v in range(g.n) if adj[v]]
    # non-adjacency must be transitive on the live vertices
    for u in live:
        for v in live:
            for w in live:
                if u == w or u == v or v == w:
                    continue
                if not g.has_edge(u, v) and not g.has_edge(v, w) and g.has_edge(u, w):
                    return False
    return True


def test_detect_complete_multipartite_examples():
    assert detect_complete_multipartite(cycle(4)) == [2, 2]
    assert detect_complete_multipartite(path(4)) is None
    assert detect_complete_multipartite(with_isolated(complete(3), 2)) == [1, 1, 1]
    assert detect_complete_multipartite(empty_graph(3)) == []


def test_detect_complete_multipartite_brute_force():
    for n in range(1, 6):
        for mask in range(1 << (n * (n - 1) // 2)):
            g = Graph(n, mask)
            got = detect_complete_multipartite(g) is not None
            assert got == _brute_complete_multipartite(g), (n, mask)


def test_schatten_abs_n_paley_tightness_trend():
    # the absolute order-only bound is strict at finite order but the Paley
    # family approaches it: the powered norm over the bulk term decreases
    # toward 1, and over the full bound increases toward 1
    from spectranorm.norms import schatten_norm

    for p in (1.0, 1.5):
        bulk_ratios = []
        full_ratios = []
        for q in (13, 17, 29, 37, 53):
            lhs = schatten_norm(paley(q), p) ** p
            bulk = 2.0 ** (-p) * q ** (1 + p / 2.0)
            bulk_ratios.append(lhs / bulk)
            full_ratios.append(lhs / (bulk + q**p))
        assert all(r > 1.0 for r in bulk_ratios)
        assert bulk_ratios == sorted(bulk_ratios, reverse=True)
        assert all(r < 1.0 for r in full_ratios)
        assert full_ratios == sorted(full_ratios)


def test_run_registry_reports_skips():
    res = run_registry(complete(4), p_values=(3.0,), k_values=(1,))
    by_id = {}
    for chk in res:
        by_id.setdefault(chk.bound_id, []).append(chk)
    assert any(c.skipped for c in by_id["SCHATTEN_ABS_N"])
    assert all(c.skipped is False for c in by_id["SCHATTEN_P_GE2"])
    # matrix subject: graph rows are reported skipped, never dropped
    res = run_registry(dft_matrix(3), p_values=(1.0,), k_values=(1,))
    ids = {c.bound_id for c in res}
    assert "MCCLELLAND" in ids
    assert all(c.skipped for c in res if c.bound_id == "MCCLELLAND")


def test_run_registry_perfect_matching_equalities():
    res = run_registry(perfect_matching(6), p_values=(1.0,), k_values=(1,))
    flags = {c.bound_id: c for c in res if not c.skipped}
    assert flags["MCCLELLAND"].equality
    assert flags["SCHATTEN_EDGES"].equality


def test_registry_soundness_order_5_exhaustive():
    # every evaluated row holds on every labeled order-5 graph
    for mask in range(1 << 10):
        g = Graph(5, mask)
        for chk in run_registry(g, p_values=(1.0, 1.5, 2.0, 3.0),
                                q_values=(2.0, 3.0), k_values=(1, 2, 3)):
            if chk.skipped:
                continue
            assert chk.holds, (mask, chk.bound_id, chk.params, chk.slack)
            if chk.equality:
                assert chk.holds  # equality implies holds


def test_registry_ids_stable():
    assert registry_ids() == [
        "MCCLELLAND", "SCHATTEN_EDGES", "KM_SPECTRAL", "KM_DENSITY",
        "SCHATTEN_ABS_N", "KM_ABSOLUTE", "SCHATTEN_P_GE2", "SCHR_LOWER",
        "HOFFMAN", "CAPOROSSI", "KYFAN_CHROMATIC", "EMNA", "POWER_MEAN",
        "SCHATTEN_ABS_MAT", "KM_MATRIX", "NONNEG_ENERGY", "KYFAN_01",
        "KYFAN_L2", "KYFAN_INF", "KYFAN_NONNEG",
    ]
