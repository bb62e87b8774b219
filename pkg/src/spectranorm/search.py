"""Exhaustive extremal search over all labeled graphs of small order.

Objectives:
  XI_K            max Ky Fan k-norm                    (needs k)
  TAU_K           max sum of the k largest eigenvalues (needs k)
  SPREAD          max mu_1 - mu_n
  MAX_ENERGY      max Schatten 1-norm
  MAX_SCHATTEN_P  max Schatten p-norm                  (needs p)

The search scans fixed mask chunks; chunk maxima and their near-tie
candidates merge by (value, then smallest witness), so records are
byte-identical for any thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .enumeration import chunk_quantities, mask_ranges
from .errors import TooLarge
from .graphs import Graph, write_graph6

OBJECTIVES = ("XI_K", "TAU_K", "SPREAD", "MAX_ENERGY", "MAX_SCHATTEN_P")

_TIE_TOL = 1e-9
_WITNESS_CAP = 100


@dataclass(frozen=True)
class SearchRecord:
    objective: str
    n: int
    param: Optional[float]
    value: float
    witnesses: tuple[str, ...]
    witness_count: int
    graphs_scanned: int
    notes: str

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "n": self.n,
            "param": self.param,
            "value": self.value,
            "witnesses": list(self.witnesses),
            "witness_count": self.witness_count,
            "graphs_scanned": self.graphs_scanned,
            "notes": self.notes,
        }


def _objective_values(q: dict, objective: str, param) -> np.ndarray:
    sig = q["sig"]
    eigs = q["eigs"]
    n = q["n"]
    if objective == "XI_K":
        k = min(int(param), n)
        return sig[:, :k].sum(axis=1)
    if objective == "TAU_K":
        k = min(int(param), n)
        return eigs[:, :k].sum(axis=1)
    if objective == "SPREAD":
        return eigs[:, 0] - eigs[:, -1]
    if objective == "MAX_ENERGY":
        return sig.sum(axis=1)
    if objective == "MAX_SCHATTEN_P":
        p = float(param)
        return (sig**p).sum(axis=1) ** (1.0 / p)
    raise ValueError(f"unknown objective {objective!r}")


def _search_chunk(args) -> dict:
    n, lo, hi, objective, param, canonical = args
    q = chunk_quantities(n, lo, hi, canonical=canonical)
    q["n"] = n
    masks = q["masks"]
    if masks.size == 0:
        return {"max": None, "masks": [], "values": [], "scanned": 0}
    vals = _objective_values(q, objective, param)
    top = float(vals.max())
    keep = vals >= top - _TIE_TOL
    return {
        "max": top,
        "masks": masks[keep].tolist(),
        "values": vals[keep].tolist(),
        "scanned": int(masks.size),
    }


def _notes_for(objective: str, n: int, param) -> str:
    if objective in ("XI_K", "TAU_K"):
        k = int(param)
        return f"reference upper line (1+sqrt(k))n/2 = {(1 + math.sqrt(k)) * n / 2.0:.12g}"
    if objective == "SPREAD":
        return f"reference line (2n-1)/sqrt(3) = {(2 * n - 1) / math.sqrt(3.0):.12g}"
    if objective == "MAX_ENERGY":
        return f"reference absolute bound n(1+sqrt(n))/2 = {n * (1 + math.sqrt(n)) / 2.0:.12g}"
    p = float(param)
    if p < 2.0:
        line = (2.0 ** (-p) * n ** (1.0 + p / 2.0) + float(n) ** p) ** (1.0 / p)
        return f"reference upper line (2^-p n^(1+p/2) + n^p)^(1/p) = {line:.12g}"
    return f"reference upper line sqrt(n(n-1)) = {math.sqrt(n * (n - 1.0)):.12g}"


def extremal(objective: str, n: int, param=None, *, canonical: bool = False,
             threads: int = 1) -> SearchRecord:
    """Exact maximum of an objective over all labeled graphs of order n."""
    if objective not in OBJECTIVES:
        raise ValueError(f"objective must be one of {OBJECTIVES}")
    if objective in ("XI_K", "TAU_K"):
        if param is None or int(param) < 1:
            raise ValueError(f"{objective} needs a positive integer k")
        param = int(param)
    elif objective == "MAX_SCHATTEN_P":
        if param is None or float(param) < 1.0:
            raise ValueError("MAX_SCHATTEN_P needs p >= 1")
        param = float(param)
    else:
        param = None

    jobs = [(n, lo, hi, objective, param, canonical) for lo, hi in mask_ranges(n)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_search_chunk, jobs))
    else:
        parts = [_search_chunk(job) for job in jobs]

    tops = [p["max"] for p in parts if p["max"] is not None]
    if not tops:
        raise TooLarge("no graphs scanned")
    best = max(tops)
    candidates = []
    for part in parts:
        if part["max"] is None or part["max"] < best - _TIE_TOL:
            continue
        for mask, value in zip(part["masks"], part["values"]):
            if value >= best - _TIE_TOL:
                candidates.append(write_graph6(Graph(n, mask)))
    candidates.sort()  # graph6 string order: ties listed smallest witness first
    witnesses = tuple(candidates[:_WITNESS_CAP])
    return SearchRecord(
        objective=objective,
        n=n,
        param=param,
        value=best,
        witnesses=witnesses,
        witness_count=len(candidates),
        graphs_scanned=sum(p["scanned"] for p in parts),
        notes=_notes_for(objective, n, param),
    )


@dataclass(frozen=True)
class SpreadComparison:
    n: int
    max_spread: float
    max_kyfan2: float
    spread_witnesses: tuple[str, ...]
    kyfan2_witnesses: tuple[str, ...]
    maxima_coincide: bool
    identity_max_gap: float
    graphs_scanned: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "max_spread": self.max_spread,
            "max_kyfan2": self.max_kyfan2,
            "spread_witnesses": list(self.spread_witnesses),
            "kyfan2_witnesses": list(self.kyfan2_witnesses),
            "maxima_coincide": self.maxima_coincide,
            "identity_max_gap": self.identity_max_gap,
            "graphs_scanned": self.graphs_scanned,
        }


def _identity_chunk(args) -> float:
    n, lo, hi = args
    q = chunk_quantities(n, lo, hi)
    if q["masks"].size == 0:
        return 0.0
    sig = q["sig"]
    eigs = q["eigs"]
    f2 = sig[:, : min(2, n)].sum(axis=1)
    alt = np.maximum(
        np.abs(eigs[:, 0]) + (np.abs(eigs[:, 1]) if n > 1 else 0.0),
        np.abs(eigs[:, 0]) + np.abs(eigs[:, -1]),
    )
    return float(np.abs(f2 - alt).max())


def compare_spread_vs_f2(n: int, *, threads: int = 1) -> SpreadComparison:
    """Max spread vs max Ky Fan 2-norm, plus the per-graph identity check.

    Reports whether the two maxima coincide at this order; nothing is
    asserted (coincidence is only expected for large orders).
    """
    spread = extremal("SPREAD", n, threads=threads)
    xi2 = extremal("XI_K", n, 2 if n >= 2 else 1, threads=threads)
    jobs = [(n, lo, hi) for lo, hi in mask_ranges(n)]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            gaps = list(pool.map(_identity_chunk, jobs))
    else:
        gaps = [_identity_chunk(job) for job in jobs]
    return SpreadComparison(
        n=n,
        max_spread=spread.value,
        max_kyfan2=xi2.value,
        spread_witnesses=spread.witnesses[:5],
        kyfan2_witnesses=xi2.witnesses[:5],
        maxima_coincide=abs(spread.value - xi2.value) <= _TIE_TOL,
        identity_max_gap=max(gaps),
        graphs_scanned=spread.graphs_scanned,
    )
