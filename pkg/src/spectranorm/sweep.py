"""Vectorized exhaustive bound verification over all order-n graphs.

Evaluates every registry row on every labeled graph of a given order, in
fixed mask chunks, entirely with array arithmetic on batched spectra. The
scalar registry in `bounds` stays the reference implementation: the sweep's
per-graph numbers are cross-checked against it in the test suite, and the
equality examples the sweep reports are re-confirmed through the reference
path before they are emitted.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import bounds
from .enumeration import chunk_quantities, mask_ranges
from .graphs import Graph, write_graph6

_EMNA_COEF = 0.5 + math.sqrt(5.0 / 12.0)
_MAX_EXAMPLES = 8


def _range_reason(bound_id: str, params: dict) -> Optional[str]:
    p = params.get("p")
    q = params.get("q")
    if bound_id in ("KM_SPECTRAL", "KM_DENSITY", "SCHATTEN_ABS_MAT"):
        if not 1.0 <= p <= 2.0:
            return f"requires 1 <= p <= 2 (got {p:g})"
    elif bound_id == "SCHATTEN_ABS_N":
        if not 1.0 <= p < 2.0:
            return f"requires 1 <= p < 2 (got {p:g})"
    elif bound_id == "SCHATTEN_P_GE2":
        if p < 2.0:
            return f"requires p >= 2 (got {p:g})"
    elif bound_id in ("SCHATTEN_EDGES", "SCHR_LOWER"):
        if p < 1.0:
            return f"requires p >= 1 (got {p:g})"
    elif bound_id in ("POWER_MEAN", "KM_MATRIX"):
        if p < 1.0:
            return f"requires p >= 1 (got {p:g})"
        if q < p:
            return f"requires p <= q (got p={p:g}, q={q:g})"
    return None


def _row_arrays(q: dict, bound_id: str, params: dict):
    """(applicable, lhs, rhs, lower, mid) arrays for one row over a chunk.

    `mid` is None except for the chained NONNEG_ENERGY row.
    """
    n = q["n"]
    m = q["m"].astype(float)
    sig = q["sig"]
    eigs = q["eigs"]
    b = m.shape[0]
    ones = np.ones(b, dtype=bool)
    sig1 = sig[:, 0]
    entinf = (m > 0).astype(float)
    mid = None

    if bound_id == "MCCLELLAND":
        return ones, sig.sum(axis=1), np.sqrt(2.0 * m * n), False, mid
    if bound_id == "SCHATTEN_EDGES":
        p = params["p"]
        lhs = (sig**p).sum(axis=1)
        rhs = n ** (1.0 - p / 2.0) * (2.0 * m) ** (p / 2.0)
        return ones, lhs, rhs, p > 2.0, mid
    if bound_id == "KM_SPECTRAL":
        p = params["p"]
        mu = eigs[:, 0]
        inner = np.clip(2.0 * m - mu * mu, 0.0, None)
        factor = float(n - 1) ** (1.0 - p / 2.0) if n > 1 else (1.0 if p == 2.0 else 0.0)
        rhs = mu**p + factor * inner ** (p / 2.0)
        return ones, (sig**p).sum(axis=1), rhs, False, mid
    if bound_id == "KM_DENSITY":
        p = params["p"]
        app = 2.0 * m >= n
        d = 2.0 * m / n
        inner = np.clip(2.0 * m - d * d, 0.0, None)
        factor = float(n - 1) ** (1.0 - p / 2.0) if n > 1 else (1.0 if p == 2.0 else 0.0)
        rhs = d**p + factor * inner ** (p / 2.0)
        return app, (sig**p).sum(axis=1), rhs, False, mid
    if bound_id == "SCHATTEN_ABS_N":
        p = params["p"]
        rhs = 2.0 ** (-p) * n ** (1.0 + p / 2.0) + float(n) ** p
        return ones, (sig**p).sum(axis=1), np.full(b, rhs), False, mid
    if bound_id == "KM_ABSOLUTE":
        rhs = n * (1.0 + math.sqrt(n)) / 2.0
        return ones, sig.sum(axis=1), np.full(b, rhs), False, mid
    if bound_id == "SCHATTEN_P_GE2":
        p = params["p"]
        return ones, (sig**p).sum(axis=1) ** (1.0 / p), np.sqrt(2.0 * m), False, mid
    if bound_id == "SCHR_LOWER":
        p = params["p"]
        app = m >= 1
        chi = q["chi"].astype(float)
        with np.errstate(divide="ignore", invalid="ignore"):
            rhs = sig1 * (1.0 + (chi - 1.0) ** (1.0 - p)) ** (1.0 / p)
        lhs = (sig**p).sum(axis=1) ** (1.0 / p)
        return app, lhs, np.where(app, rhs, 0.0), True, mid
    if bound_id == "HOFFMAN":
        app = m >= 1
        acs = np.cumsum(np.abs(eigs)[:, ::-1], axis=1)
        idx = np.clip(q["chi"] - 2, 0, None)[:, None]
        lhs = np.take_along_axis(acs, idx, axis=1)[:, 0]
        return app, lhs, eigs[:, 0], True, mid
    if bound_id == "CAPOROSSI":
        return ones, sig.sum(axis=1), 2.0 * eigs[:, 0], True, mid
    if bound_id == "KYFAN_CHROMATIC":
        app = m >= 1
        cum = np.cumsum(sig, axis=1)
        idx = np.clip(q["chi"] - 1, 0, n - 1)[:, None]
        lhs = np.take_along_axis(cum, idx, axis=1)[:, 0]
        return app, lhs, 2.0 * sig1, True, mid
    if bound_id == "EMNA":
        if n < 2:
            return np.zeros(b, dtype=bool), np.zeros(b), np.zeros(b), False, mid
        lhs = np.abs(eigs[:, 0]) + np.abs(eigs[:, 1])
        return ones, lhs, np.full(b, _EMNA_COEF * n), False, mid
    if bound_id == "POWER_MEAN":
        p, qq = params["p"], params["q"]
        lhs = n ** (-1.0 / p) * (sig**p).sum(axis=1) ** (1.0 / p)
        rhs = n ** (-1.0 / qq) * (sig**qq).sum(axis=1) ** (1.0 / qq)
        return ones, lhs, rhs, False, mid
    if bound_id == "SCHATTEN_ABS_MAT":
        p = params["p"]
        lhs = (sig**p).sum(axis=1) ** (1.0 / p)
        rhs = n ** (1.0 / p) * math.sqrt(n) * entinf
        return ones, lhs, rhs, False, mid
    if bound_id == "KM_MATRIX":
        p, qq = params["p"], params["q"]
        lhs = (sig**p).sum(axis=1)
        inner = np.clip((sig**qq).sum(axis=1) - sig1**qq, 0.0, None)
        factor = float(n - 1) ** (1.0 - p / qq) if n > 1 else (1.0 if p == qq else 0.0)
        rhs = sig1**p + factor * inner ** (p / qq)
        return ones, lhs, rhs, False, mid
    if bound_id == "NONNEG_ENERGY":
        app = (2.0 * m >= n) | (m == 0)
        ray = 2.0 * m / n
        inner = np.clip((n - 1.0) * (2.0 * m - ray * ray), 0.0, None)
        mid = ray + np.sqrt(inner)
        rhs = (n + math.sqrt(n)) * math.sqrt(n) / 2.0 * entinf
        return app, sig.sum(axis=1), rhs, False, mid
    if bound_id in ("KYFAN_01", "KYFAN_L2", "KYFAN_INF", "KYFAN_NONNEG"):
        k = params["k"]
        if k > n:
            return np.zeros(b, dtype=bool), np.zeros(b), np.zeros(b), False, None
        lhs = np.cumsum(sig, axis=1)[:, k - 1]
        if bound_id == "KYFAN_01":
            rhs = np.full(b, (1.0 + math.sqrt(k)) * n / 2.0)
        elif bound_id == "KYFAN_L2":
            rhs = math.sqrt(k) * np.sqrt(2.0 * m)
        elif bound_id == "KYFAN_INF":
            rhs = n * math.sqrt(k) * entinf
        else:
            rhs = (1.0 + math.sqrt(k)) * n / 2.0 * entinf
        return ones, lhs, rhs, False, mid
    raise AssertionError(bound_id)


def _param_key(params: dict) -> tuple:
    return tuple(sorted(params.items()))


def _sweep_chunk(args) -> list[dict]:
    n, lo, hi, p_values, q_values, k_values, tol_scale, canonical = args
    q = chunk_quantities(n, lo, hi, need_chi=True, canonical=canonical)
    masks = q["masks"]
    q["n"] = n
    partials = []
    for row in bounds._ROWS.values():
        for params in bounds._param_grid(row, p_values, q_values, k_values):
            entry = {
                "bound_id": row.bound_id,
                "params": params,
                "scanned": int(masks.size),
                "evaluated": 0,
                "skipped": int(masks.size),
                "violations": 0,
                "min_slack": None,
                "equality_count": 0,
                "eq_masks": [],
                "viol_masks": [],
                "skip_reason": None,
            }
            reason = _range_reason(row.bound_id, params)
            if reason is not None or masks.size == 0:
                entry["skip_reason"] = reason
                partials.append(entry)
                continue
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                app, lhs, rhs, lower, mid = _row_arrays(q, row.bound_id, params)
            slack = (lhs - rhs) if lower else (rhs - lhs)
            tol = bounds.EQ_TOL * (1.0 + np.abs(lhs) + np.abs(rhs)) * tol_scale
            if mid is not None:
                tol_a = bounds.EQ_TOL * (1.0 + np.abs(lhs) + np.abs(mid)) * tol_scale
                tol_b = bounds.EQ_TOL * (1.0 + np.abs(mid) + np.abs(rhs)) * tol_scale
                viol = app & ((lhs > mid + tol_a) | (mid > rhs + tol_b))
            else:
                viol = app & (slack < -tol)
            eq = app & (np.abs(slack) <= tol)
            n_app = int(app.sum())
            entry["evaluated"] = n_app
            entry["skipped"] = int(masks.size) - n_app
            entry["violations"] = int(viol.sum())
            if n_app:
                entry["min_slack"] = float(slack[app].min())
            entry["equality_count"] = int(eq.sum())
            entry["eq_masks"] = [int(v) for v in masks[eq][:_MAX_EXAMPLES]]
            entry["viol_masks"] = [int(v) for v in masks[viol][:_MAX_EXAMPLES]]
            partials.append(entry)
    return partials


@dataclass
class SweepRowSummary:
    """Aggregate for one (bound, parameter) cell.

    equality_count counts numeric equalities (|slack| inside tolerance);
    the retained examples additionally carry the reference checker's
    detector-gated equality verdict.
    """

    bound_id: str
    params: dict
    evaluated: int = 0
    skipped: int = 0
    violations: int = 0
    min_slack: Optional[float] = None
    equality_count: int = 0
    equality_examples: list = field(default_factory=list)
    violation_examples: list = field(default_factory=list)
    skip_reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "params": self.params,
            "evaluated": self.evaluated,
            "skipped": self.skipped,
            "violations": self.violations,
            "min_slack": self.min_slack,
            "equality_count": self.equality_count,
            "equality_examples": self.equality_examples,
            "violation_examples": self.violation_examples,
            "skip_reason": self.skip_reason,
        }


@dataclass
class SweepReport:
    n: int
    p_values: tuple
    k_values: tuple
    tol_scale: float
    canonical: bool
    graphs_scanned: int
    total_violations: int
    rows: list

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p_values": list(self.p_values),
            "k_values": list(self.k_values),
            "tol_scale": self.tol_scale,
            "canonical": self.canonical,
            "graphs_scanned": self.graphs_scanned,
            "total_violations": self.total_violations,
            "rows": [r.to_dict() for r in self.rows],
        }


def run_sweep(n: int, p_values=(1.0,), k_values=(1,), *, q_values=None,
              tol_scale: float = 1.0, canonical: bool = False,
              threads: int = 1) -> SweepReport:
    """Check every registry row on every order-n graph; fully deterministic.

    Results are merged chunk-by-chunk in mask order, so the report is
    byte-identical for any thread count.
    """
    p_values = tuple(float(p) for p in p_values)
    k_values = tuple(int(k) for k in k_values)
    jobs = [
        (n, lo, hi, p_values, q_values, k_values, tol_scale, canonical)
        for lo, hi in mask_ranges(n)
    ]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            partial_lists = list(pool.map(_sweep_chunk, jobs))
    else:
        partial_lists = [_sweep_chunk(job) for job in jobs]

    merged: dict[tuple, SweepRowSummary] = {}
    order: list[tuple] = []
    scanned = 0
    for idx, partials in enumerate(partial_lists):
        chunk_scanned = partials[0]["scanned"] if partials else 0
        scanned += chunk_scanned
        for e in partials:
            key = (e["bound_id"], _param_key(e["params"]))
            if key not in merged:
                merged[key] = SweepRowSummary(e["bound_id"], e["params"],
                                              skip_reason=e["skip_reason"])
                order.append(key)
            s = merged[key]
            s.evaluated += e["evaluated"]
            s.skipped += e["skipped"]
            s.violations += e["violations"]
            s.equality_count += e["equality_count"]
            if e["min_slack"] is not None:
                s.min_slack = e["min_slack"] if s.min_slack is None else min(
                    s.min_slack, e["min_slack"])
            for mask in e["eq_masks"]:
                if len(s.equality_examples) < _MAX_EXAMPLES:
                    s.equality_examples.append(mask)
            for mask in e["viol_masks"]:
                if len(s.violation_examples) < _MAX_EXAMPLES:
                    s.violation_examples.append(mask)

    # confirm the retained equality examples through the reference path
    for s in merged.values():
        confirmed = []
        for mask in s.equality_examples:
            g = Graph(n, mask)
            chk = bounds.check_bound(s.bound_id, g, tol_scale=tol_scale, **s.params)
            confirmed.append({
                "graph6": write_graph6(g),
                "slack": chk.slack,
                "equality": chk.equality,
                "witness": chk.equality_witness,
            })
        s.equality_examples = confirmed
        s.violation_examples = [write_graph6(Graph(n, mk)) for mk in s.violation_examples]

    rows = [merged[k] for k in order]
    return SweepReport(
        n=n,
        p_values=p_values,
        k_values=k_values,
        tol_scale=tol_scale,
        canonical=canonical,
        graphs_scanned=scanned,
        total_violations=sum(r.violations for r in rows),
        rows=rows,
    )
