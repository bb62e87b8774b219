"""Registry of extremal norm bounds as checkable predicates.

Every row evaluates both sides of one inequality on a graph or matrix
subject, reports the slack, and (when the slack is inside tolerance) runs a
structural equality detector. Registry ids are stable strings used by the
CLI and the JSON report schema.

Conventions:
  * upper rows assert lhs <= rhs and use slack = rhs - lhs,
  * lower rows assert lhs >= rhs and use slack = lhs - rhs,
  * holds means slack >= -tol with tol = 1e-7 * (1 + |lhs| + |rhs|),
  * the equality flag is the numeric test AND the detector verdict when the
    row has a gating detector.

Nonsquare matrix subjects are oriented rows <= cols (transposed if needed)
before matrix rows are evaluated; singular values are unchanged by this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Union

import numpy as np

from .cmatrix import CMatrix
from .constructions import in_had_class, is_plain
from .eigen import hermitian_eigenvalues, singular_values
from .errors import PreconditionFailed, UnknownBoundId
from .graphs import Graph, chromatic_number, is_strongly_regular
from .norms import as_matrix

EQ_TOL = 1e-7
_SIGMA_ZERO_FRACTION = 1e-6  # sigma below this times sigma_1 counts as zero


@dataclass
class BoundCheck:
    """One bound evaluation, or a skip record when a precondition failed."""

    bound_id: str
    params: dict
    lhs: float = math.nan
    rhs: float = math.nan
    slack: float = math.nan
    holds: Optional[bool] = None
    equality: Optional[bool] = None
    equality_witness: Optional[dict] = None
    notes: str = ""
    skipped: bool = False
    skip_reason: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "equality": self.equality,
            "equality_witness": self.equality_witness,
            "notes": self.notes,
            "skipped": self.skipped,
            "skip_reason": self.skip_reason,
        }


class SubjectContext:
    """Lazy cache of spectra and invariants shared by all registry rows."""

    def __init__(self, subject: Union[Graph, CMatrix]):
        if isinstance(subject, Graph):
            self.graph: Optional[Graph] = subject
        elif isinstance(subject, CMatrix):
            self.graph = None
        else:
            raise TypeError(f"expected Graph or CMatrix, got {type(subject).__name__}")
        self._subject = subject

    @cached_property
    def matrix(self) -> CMatrix:
        return as_matrix(self._subject)

    @cached_property
    def oriented(self) -> CMatrix:
        m = self.matrix
        return m if m.rows <= m.cols else CMatrix.from_array(m.data.T)

    @property
    def m_rows(self) -> int:
        return self.oriented.rows

    @property
    def n_cols(self) -> int:
        return self.oriented.cols

    @cached_property
    def sigmas(self) -> np.ndarray:
        return singular_values(self.matrix).values

    @cached_property
    def graph_eigs(self) -> np.ndarray:
        return hermitian_eigenvalues(self.matrix).values

    @cached_property
    def chi(self) -> int:
        return chromatic_number(self.graph)

    @cached_property
    def m_edges(self) -> int:
        return self.graph.num_edges()

    @cached_property
    def ent1(self) -> float:
        return float(np.sum(np.abs(self.matrix.data)))

    @cached_property
    def ent2_sq(self) -> float:
        return float(np.sum(np.abs(self.matrix.data) ** 2))

    @cached_property
    def entinf(self) -> float:
        return float(np.max(np.abs(self.matrix.data)))

    @cached_property
    def is_nonnegative(self) -> bool:
        d = self.matrix.data
        return bool(
            np.all(d.real >= 0.0)
            and np.all(np.abs(d.imag) <= 1e-12 * (1.0 + self.entinf))
        )

    @cached_property
    def is_zero_one(self) -> bool:
        d = self.matrix.data
        near = (np.abs(d) <= 1e-12) | (np.abs(d - 1.0) <= 1e-12)
        return bool(np.all(near))


# --- small shared predicates ---------------------------------------------------

def _sum_pow(sig: np.ndarray, p: float) -> float:
    return float(np.sum(sig**p))


def _values_equal(values: np.ndarray, scale: float) -> bool:
    if values.size <= 1:
        return True
    return float(values.max() - values.min()) <= EQ_TOL * (1.0 + scale)


def _nonzero_sigma_profile(sig: np.ndarray) -> tuple[int, bool, float]:
    """(count, all-equal flag, common value) of the nonzero singular values."""
    if sig.size == 0 or sig[0] <= 0.0:
        return 0, True, 0.0
    cut = _SIGMA_ZERO_FRACTION * float(sig[0])
    nz = sig[sig > cut]
    return int(nz.size), _values_equal(nz, float(sig[0])), float(nz.mean())


def _gram_scalar_identity(data: np.ndarray) -> tuple[bool, float]:
    """Whether A A* = cI within 1e-8 relative; returns (flag, c)."""
    gram = data @ data.conj().T
    diag = np.einsum("ii->i", gram).real
    c = float(diag.mean())
    dev = np.abs(gram - c * np.eye(gram.shape[0]))
    return bool(np.max(dev) <= 1e-8 * (1.0 + abs(c))), c


def detect_complete_multipartite(g: Graph) -> Optional[list[int]]:
    """Part sizes when G is complete multipartite plus isolated vertices.

    Isolated vertices are stripped first; the rest must have non-adjacency as
    an equivalence relation (the complement is a disjoint union of cliques).
    A graph with no edges strips to nothing and reports an empty part list.
    Returns None when the structure does not match.
    """
    adj = g.neighbor_masks()
    live = [v for v in range(g.n) if adj[v]]
    if not live:
        return []
    live_mask = 0
    for v in live:
        live_mask |= 1 << v
    classes: dict[int, int] = {}
    for v in live:
        cls = (live_mask & ~adj[v]) | (1 << v)
        classes[cls] = classes.get(cls, 0) + 1
    seen = 0
    parts = []
    for cls, count in classes.items():
        if cls & seen or cls.bit_count() != count:
            return None
        seen |= cls
        parts.append(count)
    if seen != live_mask:
        return None
    return sorted(parts, reverse=True)


# --- row implementations --------------------------------------------------------
#
# Evaluators return (lhs, rhs, lower?, notes); detectors return
# (verdict, witness) where verdict None means the detector is informational
# and does not gate the equality flag.

def _need_graph(ctx: SubjectContext) -> Optional[str]:
    return None if ctx.graph is not None else "row applies to graph subjects only"


def _p_in(params, lo, hi, *, hi_strict=False) -> Optional[str]:
    p = params["p"]
    if p < lo or p > hi or (hi_strict and p == hi):
        upper = f"< {hi}" if hi_strict else f"<= {hi}"
        return f"requires {lo} <= p {upper} (got {p:g})"
    return None


def _eval_mcclelland(ctx, params):
    lhs = float(ctx.sigmas.sum())
    rhs = math.sqrt(2.0 * ctx.m_edges * ctx.graph.n)
    return lhs, rhs, False, ""


def _detect_mcclelland(ctx, params):
    flag, c = _gram_scalar_identity(ctx.oriented.data)
    nonzero = c > 1e-8 * (1.0 + c)
    return flag and nonzero, {"gram_scale": c}


def _eval_schatten_edges(ctx, params):
    p = params["p"]
    lhs = _sum_pow(ctx.sigmas, p)
    rhs = ctx.graph.n ** (1.0 - p / 2.0) * (2.0 * ctx.m_edges) ** (p / 2.0)
    return lhs, rhs, p > 2.0, "p-th power on the left; direction reverses for p > 2"


def _detect_schatten_edges(ctx, params):
    sig = ctx.sigmas
    return _values_equal(sig, float(sig[0])), {"sigma_top": float(sig[0])}


def _eval_km_spectral(ctx, params):
    p = params["p"]
    mu = float(ctx.graph_eigs[0])
    lhs = _sum_pow(ctx.sigmas, p)
    inner = max(0.0, 2.0 * ctx.m_edges - mu * mu)
    nmin1 = ctx.graph.n - 1
    rhs = mu**p + nmin1 ** (1.0 - p / 2.0) * inner ** (p / 2.0) if nmin1 else mu**p
    return lhs, rhs, False, ""


def _detect_sigma_tail_equal(ctx, params):
    sig = ctx.sigmas
    tail = sig[1:]
    return _values_equal(tail, float(sig[0])), {
        "sigma_tail": float(tail[0]) if tail.size else 0.0
    }


def _eval_km_density(ctx, params):
    p = params["p"]
    n = ctx.graph.n
    d = 2.0 * ctx.m_edges / n
    lhs = _sum_pow(ctx.sigmas, p)
    inner = max(0.0, 2.0 * ctx.m_edges - d * d)
    rhs = d**p + (n - 1) ** (1.0 - p / 2.0) * inner ** (p / 2.0)
    return lhs, rhs, False, ""


def _detect_km_density(ctx, params):
    g = ctx.graph
    n = g.n
    degs = g.degrees()
    if all(dg == 1 for dg in degs):
        return True, {"case": "perfect_matching"}
    if g.num_edges() == n * (n - 1) // 2:
        return True, {"case": "complete"}
    srg = is_strongly_regular(g)
    if srg is None or ctx.m_edges == 0:
        return False, {"case": None}
    d = 2.0 * ctx.m_edges / n
    t = math.sqrt(max(0.0, (2.0 * ctx.m_edges - d * d) / (n - 1)))
    rest = np.abs(ctx.graph_eigs[1:])
    ok = bool(np.max(np.abs(rest - t)) <= EQ_TOL * (1.0 + t))
    return ok, {"case": "strongly_regular", "srg": list(srg), "eigenvalue_modulus": t}


def _eval_km_absolute(ctx, params):
    n = ctx.graph.n
    lhs = float(ctx.sigmas.sum())
    rhs = n * (1.0 + math.sqrt(n)) / 2.0
    return lhs, rhs, False, ""


def _detect_km_absolute(ctx, params):
    # informational: reports the strongly-regular parameters for inspection;
    # the equality flag stays purely numeric
    srg = is_strongly_regular(ctx.graph)
    n = ctx.graph.n
    root = math.sqrt(n)
    target = None
    if abs(root - round(root)) < 1e-9:
        r = round(root)
        target = [n, (n + r) // 2, (n + 2 * r) // 4, (n + 2 * r) // 4]
    return None, {
        "strongly_regular": list(srg) if srg else None,
        "target_params": target,
    }


def _eval_schatten_abs_n(ctx, params):
    p = params["p"]
    n = ctx.graph.n
    lhs = _sum_pow(ctx.sigmas, p)
    rhs = 2.0 ** (-p) * n ** (1.0 + p / 2.0) + n**p
    return lhs, rhs, False, "strict for finite graphs; tight asymptotically"


def _eval_schatten_p_ge2(ctx, params):
    p = params["p"]
    lhs = _sum_pow(ctx.sigmas, p) ** (1.0 / p)
    rhs = math.sqrt(2.0 * ctx.m_edges)
    return lhs, rhs, False, (
        "norm-level form; the p-th-powered variant is not an inequality "
        "(fails already for K_4 at p = 3)"
    )


def _detect_schatten_p_ge2(ctx, params):
    count, equal, value = _nonzero_sigma_profile(ctx.sigmas)
    return count == 1 and equal, {"nonzero_sigma": count}


def _eval_schr_lower(ctx, params):
    p = params["p"]
    sigma1 = float(ctx.sigmas[0])
    chi = ctx.chi
    rhs = sigma1 * (1.0 + (chi - 1.0) ** (1.0 - p)) ** (1.0 / p)
    lhs = _sum_pow(ctx.sigmas, p) ** (1.0 / p)
    return lhs, rhs, True, f"chi = {chi}"


def _detect_schr_lower(ctx, params):
    parts = detect_complete_multipartite(ctx.graph)
    if parts is None or len(parts) != ctx.chi:
        return False, {"parts": parts}
    if params["p"] > 1.0 and len(set(parts)) > 1:
        return False, {"parts": parts, "regular": False}
    return True, {"parts": parts}


def _eval_hoffman(ctx, params):
    mu = ctx.graph_eigs
    chi = ctx.chi
    lhs = float(np.sum(np.abs(mu[ctx.graph.n - chi + 1:])))
    rhs = float(mu[0])
    return lhs, rhs, True, f"sum of the {chi - 1} bottom |eigenvalues|"


def _eval_caporossi(ctx, params):
    lhs = float(ctx.sigmas.sum())
    rhs = 2.0 * float(ctx.graph_eigs[0])
    return lhs, rhs, True, ""


def _detect_caporossi(ctx, params):
    parts = detect_complete_multipartite(ctx.graph)
    return parts is not None, {"parts": parts}


def _eval_kyfan_chromatic(ctx, params):
    chi = ctx.chi
    sig = ctx.sigmas
    lhs = float(sig[: min(chi, sig.size)].sum())
    rhs = 2.0 * float(sig[0])
    return lhs, rhs, True, f"Ky Fan order is chi = {chi}"


def _eval_emna(ctx, params):
    mu = ctx.graph_eigs
    lhs = abs(float(mu[0])) + abs(float(mu[1]))
    rhs = (0.5 + math.sqrt(5.0 / 12.0)) * ctx.graph.n
    return lhs, rhs, False, ""


def _eval_power_mean(ctx, params):
    p, q = params["p"], params["q"]
    m = ctx.m_rows
    sig = ctx.sigmas
    lhs = m ** (-1.0 / p) * _sum_pow(sig, p) ** (1.0 / p)
    rhs = m ** (-1.0 / q) * _sum_pow(sig, q) ** (1.0 / q)
    return lhs, rhs, False, ""


def _detect_power_mean(ctx, params):
    flag, c = _gram_scalar_identity(ctx.oriented.data)
    return flag, {"gram_scale": c}


def _eval_schatten_abs_mat(ctx, params):
    p = params["p"]
    lhs = _sum_pow(ctx.sigmas, p) ** (1.0 / p)
    rhs = ctx.m_rows ** (1.0 / p) * math.sqrt(ctx.n_cols) * ctx.entinf
    return lhs, rhs, False, ""


def _detect_schatten_abs_mat(ctx, params):
    return in_had_class(ctx.oriented), {}


def _eval_km_matrix(ctx, params):
    p, q = params["p"], params["q"]
    m = ctx.m_rows
    sig = ctx.sigmas
    s1 = float(sig[0])
    lhs = _sum_pow(sig, p)
    inner = max(0.0, _sum_pow(sig, q) - s1**q)
    rhs = s1**p + (m - 1.0) ** (1.0 - p / q) * inner ** (p / q)
    rhs_alt = s1**p + (m - 1.0) ** (1.0 - p / q) * inner ** (1.0 / q)
    notes = (
        "final exponent p/q (confirmed sound by numeric sweep); "
        f"the 1/q variant would give rhs = {rhs_alt:.12g}"
    )
    return lhs, rhs, False, notes


def _eval_nonneg_energy(ctx, params):
    m, n = ctx.m_rows, ctx.n_cols
    lhs = float(ctx.sigmas.sum())
    ray = ctx.ent1 / math.sqrt(m * n)
    mid = ray + math.sqrt(max(0.0, (m - 1.0) * (ctx.ent2_sq - ray * ray)))
    rhs = (m + math.sqrt(m)) * math.sqrt(n) * ctx.entinf / 2.0
    notes = f"middle bound {mid:.12g}; chain checked on both links"
    return lhs, rhs, False, notes, mid


def _detect_nonneg_energy(ctx, params):
    if ctx.entinf <= 0.0:
        return False, {"reason": "zero matrix"}
    scaled = ctx.oriented.data / ctx.entinf
    b = CMatrix.from_array(np.ones_like(scaled) - 2.0 * scaled)
    plain = is_plain(b)
    had = in_had_class(b)
    return plain and had, {"plain": plain, "had_class": had}


def _eval_kyfan_01(ctx, params):
    k = params["k"]
    sig = ctx.sigmas
    lhs = float(sig[: min(k, sig.size)].sum())
    rhs = (1.0 + math.sqrt(k)) * math.sqrt(ctx.m_rows * ctx.n_cols) / 2.0
    return lhs, rhs, False, ""


def _flip_profile(ctx) -> tuple[bool, int, float]:
    """Plainness and nonzero-sigma profile of J - 2A for 0/1 subjects."""
    b = CMatrix.from_array(np.ones_like(ctx.oriented.data.real) - 2.0 * ctx.oriented.data.real)
    sig = singular_values(b).values
    count, equal, value = _nonzero_sigma_profile(sig)
    return is_plain(b), count if equal else -1, value


def _detect_kyfan_01(ctx, params):
    k = params["k"]
    plain, count, value = _flip_profile(ctx)
    ok = plain and count == k
    return ok, {"plain": plain, "nonzero_sigma": count, "sigma_value": value}


def _detect_kyfan_l2(ctx, params):
    k = params["k"]
    count, equal, value = _nonzero_sigma_profile(ctx.sigmas)
    return equal and count == k, {"nonzero_sigma": count, "sigma_value": value}


def _detect_kyfan_inf(ctx, params):
    k = params["k"]
    count, equal, value = _nonzero_sigma_profile(ctx.sigmas)
    mods = np.abs(ctx.matrix.data)
    unimodular = bool(
        ctx.entinf > 0.0 and float(mods.min()) >= ctx.entinf * (1.0 - 1e-9)
    )
    return equal and count == k and unimodular, {
        "nonzero_sigma": count,
        "constant_modulus": unimodular,
    }


def _detect_kyfan_nonneg(ctx, params):
    k = params["k"]
    if ctx.entinf <= 0.0:
        return False, {"reason": "zero matrix"}
    scaled = ctx.oriented.data.real / ctx.entinf
    zero_one = bool(np.all((np.abs(scaled) <= 1e-9) | (np.abs(scaled - 1.0) <= 1e-9)))
    if not zero_one:
        return False, {"zero_one_multiple": False}
    b = CMatrix.from_array(np.ones_like(scaled) - 2.0 * scaled)
    sig = singular_values(b).values
    count, equal, value = _nonzero_sigma_profile(sig)
    plain = is_plain(b)
    ok = plain and equal and count == k
    return ok, {"zero_one_multiple": True, "plain": plain, "nonzero_sigma": count}


def _eval_kyfan_helper(ctx, params, rhs):
    k = params["k"]
    sig = ctx.sigmas
    lhs = float(sig[: min(k, sig.size)].sum())
    return lhs, rhs, False, ""


# --- the registry ---------------------------------------------------------------

@dataclass(frozen=True)
class BoundRow:
    bound_id: str
    statement: str
    takes: tuple
    graph_only: bool
    evaluate: object
    precondition: object = None
    detector: object = None


def _pre_graph_edge(ctx, params):
    return _need_graph(ctx) or (
        None if ctx.m_edges >= 1 else "graph must have at least one edge"
    )


def _pre_km_density(ctx, params):
    reason = _need_graph(ctx) or _p_in(params, 1.0, 2.0)
    if reason:
        return reason
    return None if ctx.m_edges >= ctx.graph.n / 2.0 else "requires m >= n/2"


def _pre_pq(ctx, params):
    p, q = params["p"], params["q"]
    if p < 1.0:
        return f"requires p >= 1 (got {p:g})"
    if q < p:
        return f"requires p <= q (got p={p:g}, q={q:g})"
    return None


def _pre_nonneg_energy(ctx, params):
    if not ctx.is_nonnegative:
        return "matrix must be nonnegative"
    if ctx.ent1 < ctx.n_cols * ctx.entinf - 1e-12 * (1.0 + ctx.entinf):
        return "requires |A|_1 >= n |A|_inf"
    return None


def _pre_kyfan_k(ctx, params):
    k = params["k"]
    return None if 1 <= k <= ctx.m_rows else f"requires 1 <= k <= m (got k={k})"


def _pre_kyfan_01(ctx, params):
    if not ctx.is_zero_one:
        return "matrix entries must all be 0 or 1"
    return _pre_kyfan_k(ctx, params)


def _pre_kyfan_nonneg(ctx, params):
    if not ctx.is_nonnegative:
        return "matrix must be nonnegative"
    return _pre_kyfan_k(ctx, params)


_ROWS: dict[str, BoundRow] = {}


def _row(bound_id, statement, takes, graph_only, evaluate, precondition=None, detector=None):
    _ROWS[bound_id] = BoundRow(
        bound_id, statement, takes, graph_only, evaluate, precondition, detector
    )


_row(
    "MCCLELLAND",
    "||G||_S1 <= sqrt(2mn)",
    (),
    True,
    _eval_mcclelland,
    None,
    _detect_mcclelland,
)
_row(
    "SCHATTEN_EDGES",
    "||G||_Sp^p <= n^(1-p/2) (2m)^(p/2) for 1<=p<=2; reversed for p>2",
    ("p",),
    True,
    _eval_schatten_edges,
    lambda ctx, params: _need_graph(ctx)
    or (None if params["p"] >= 1.0 else f"requires p >= 1 (got {params['p']:g})"),
    _detect_schatten_edges,
)
_row(
    "KM_SPECTRAL",
    "||G||_Sp^p <= mu^p + (n-1)^(1-p/2) (2m - mu^2)^(p/2), 1<=p<=2",
    ("p",),
    True,
    _eval_km_spectral,
    lambda ctx, params: _need_graph(ctx) or _p_in(params, 1.0, 2.0),
    _detect_sigma_tail_equal,
)
_row(
    "KM_DENSITY",
    "||G||_Sp^p <= (2m/n)^p + (n-1)^(1-p/2) (2m - (2m/n)^2)^(p/2), 1<=p<=2, m>=n/2",
    ("p",),
    True,
    _eval_km_density,
    _pre_km_density,
    _detect_km_density,
)
_row(
    "SCHATTEN_ABS_N",
    "||G||_Sp^p <= 2^-p n^(1+p/2) + n^p, 1<=p<2",
    ("p",),
    True,
    _eval_schatten_abs_n,
    lambda ctx, params: _need_graph(ctx) or _p_in(params, 1.0, 2.0, hi_strict=True),
)
_row(
    "KM_ABSOLUTE",
    "||G||_S1 <= n(1+sqrt(n))/2",
    (),
    True,
    _eval_km_absolute,
    None,
    _detect_km_absolute,
)
_row(
    "SCHATTEN_P_GE2",
    "||G||_Sp <= sqrt(2m) for p >= 2",
    ("p",),
    True,
    _eval_schatten_p_ge2,
    lambda ctx, params: _need_graph(ctx)
    or (None if params["p"] >= 2.0 else f"requires p >= 2 (got {params['p']:g})"),
    _detect_schatten_p_ge2,
)
_row(
    "SCHR_LOWER",
    "||G||_Sp >= sigma_1 (1 + (chi-1)^(1-p))^(1/p)",
    ("p",),
    True,
    _eval_schr_lower,
    lambda ctx, params: _pre_graph_edge(ctx, params)
    or (None if params["p"] >= 1.0 else f"requires p >= 1 (got {params['p']:g})"),
    _detect_schr_lower,
)
_row(
    "HOFFMAN",
    "|mu_n| + ... + |mu_(n-chi+2)| >= mu_1",
    (),
    True,
    _eval_hoffman,
    _pre_graph_edge,
)
_row(
    "CAPOROSSI",
    "||G||_S1 >= 2 mu_1",
    (),
    True,
    _eval_caporossi,
    None,
    _detect_caporossi,
)
_row(
    "KYFAN_CHROMATIC",
    "||G||_F_chi >= 2 sigma_1",
    (),
    True,
    _eval_kyfan_chromatic,
    _pre_graph_edge,
)
_row(
    "EMNA",
    "|mu_1| + |mu_2| <= (1/2 + sqrt(5/12)) n",
    (),
    True,
    _eval_emna,
    lambda ctx, params: _need_graph(ctx)
    or (None if ctx.graph.n >= 2 else "requires n >= 2"),
)
_row(
    "POWER_MEAN",
    "m^(-1/p) ||A||_Sp <= m^(-1/q) ||A||_Sq, 1<=p<=q",
    ("p", "q"),
    False,
    _eval_power_mean,
    _pre_pq,
    _detect_power_mean,
)
_row(
    "SCHATTEN_ABS_MAT",
    "||A||_Sp <= m^(1/p) n^(1/2) |A|_inf, 1<=p<=2",
    ("p",),
    False,
    _eval_schatten_abs_mat,
    lambda ctx, params: _p_in(params, 1.0, 2.0),
    _detect_schatten_abs_mat,
)
_row(
    "KM_MATRIX",
    "||A||_Sp^p <= sigma_1^p + (m-1)^(1-p/q) (||A||_Sq^q - sigma_1^q)^(p/q), 1<=p<=q",
    ("p", "q"),
    False,
    _eval_km_matrix,
    _pre_pq,
    _detect_sigma_tail_equal,
)
_row(
    "NONNEG_ENERGY",
    "||A||_S1 <= |A|_1/sqrt(mn) + sqrt((m-1)(|A|_2^2 - |A|_1^2/(mn))) <= (m+sqrt(m)) sqrt(n) |A|_inf / 2",
    (),
    False,
    _eval_nonneg_energy,
    _pre_nonneg_energy,
    _detect_nonneg_energy,
)
_row(
    "KYFAN_01",
    "||A||_Fk <= (1+sqrt(k)) sqrt(mn) / 2 for 0/1 A, k <= m <= n",
    ("k",),
    False,
    _eval_kyfan_01,
    _pre_kyfan_01,
    _detect_kyfan_01,
)
_row(
    "KYFAN_L2",
    "||A||_Fk <= sqrt(k) |A|_2, k <= m <= n",
    ("k",),
    False,
    lambda ctx, params: _eval_kyfan_helper(
        ctx, params, math.sqrt(params["k"]) * math.sqrt(ctx.ent2_sq)
    ),
    _pre_kyfan_k,
    _detect_kyfan_l2,
)
_row(
    "KYFAN_INF",
    "||A||_Fk <= sqrt(kmn) |A|_inf, k <= m <= n",
    ("k",),
    False,
    lambda ctx, params: _eval_kyfan_helper(
        ctx,
        params,
        math.sqrt(params["k"] * ctx.m_rows * ctx.n_cols) * ctx.entinf,
    ),
    _pre_kyfan_k,
    _detect_kyfan_inf,
)
_row(
    "KYFAN_NONNEG",
    "||A||_Fk <= (1+sqrt(k)) sqrt(mn) |A|_inf / 2 for nonnegative A",
    ("k",),
    False,
    lambda ctx, params: _eval_kyfan_helper(
        ctx,
        params,
        (1.0 + math.sqrt(params["k"]))
        * math.sqrt(ctx.m_rows * ctx.n_cols)
        * ctx.entinf
        / 2.0,
    ),
    _pre_kyfan_nonneg,
    _detect_kyfan_nonneg,
)


def registry_ids() -> list[str]:
    return list(_ROWS)


def registry_statement(bound_id: str) -> str:
    return _ROWS[bound_id].statement


def _evaluate_row(row: BoundRow, ctx: SubjectContext, params: dict,
                  tol_scale: float) -> BoundCheck:
    result = row.evaluate(ctx, params)
    if len(result) == 5:
        lhs, rhs, lower, notes, mid = result
    else:
        lhs, rhs, lower, notes = result
        mid = None
    slack = (lhs - rhs) if lower else (rhs - lhs)
    tol = EQ_TOL * (1.0 + abs(lhs) + abs(rhs)) * tol_scale
    holds = slack >= -tol
    if mid is not None:
        # chained upper bound: both links must hold
        tol_a = EQ_TOL * (1.0 + abs(lhs) + abs(mid)) * tol_scale
        tol_b = EQ_TOL * (1.0 + abs(mid) + abs(rhs)) * tol_scale
        holds = (lhs <= mid + tol_a) and (mid <= rhs + tol_b)
    numeric_eq = abs(slack) <= tol and bool(holds)
    equality = numeric_eq
    witness = None
    if numeric_eq and row.detector is not None:
        verdict, witness = row.detector(ctx, params)
        if verdict is not None:
            equality = numeric_eq and verdict
    return BoundCheck(
        bound_id=row.bound_id,
        params=dict(params),
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        holds=bool(holds),
        equality=bool(equality),
        equality_witness=witness,
        notes=notes,
    )


def check_bound(bound_id: str, subject, *, p: float = None, q: float = None,
                k: int = None, tol_scale: float = 1.0) -> BoundCheck:
    """Evaluate one registry row; raises PreconditionFailed when not applicable."""
    try:
        row = _ROWS[bound_id]
    except KeyError:
        raise UnknownBoundId(f"no bound with id {bound_id!r}") from None
    params = {}
    supplied = {"p": p, "q": q, "k": k}
    for name in row.takes:
        if supplied[name] is None:
            raise PreconditionFailed(f"{bound_id} needs parameter {name}")
        params[name] = float(supplied[name]) if name in ("p", "q") else int(supplied[name])
    ctx = SubjectContext(subject)
    if row.graph_only and ctx.graph is None:
        raise PreconditionFailed(f"{bound_id} applies to graph subjects only")
    if row.precondition is not None:
        reason = row.precondition(ctx, params)
        if reason:
            raise PreconditionFailed(f"{bound_id}: {reason}")
    return _evaluate_row(row, ctx, params, tol_scale)


def _param_grid(row: BoundRow, p_values, q_values, k_values) -> list[dict]:
    if row.takes == ():
        return [{}]
    if row.takes == ("p",):
        return [{"p": float(p)} for p in p_values]
    if row.takes == ("p", "q"):
        qs = q_values if q_values is not None else p_values
        return [{"p": float(p), "q": float(q)} for p in p_values for q in qs]
    if row.takes == ("k",):
        return [{"k": int(k)} for k in k_values]
    raise AssertionError(row.takes)


def run_registry(subject, *, p_values=(1.0,), q_values=None, k_values=(1,),
                 tol_scale: float = 1.0) -> list[BoundCheck]:
    """Evaluate every registry row over the given parameter grid.

    Rows whose preconditions the subject (or a parameter combination) does
    not meet are reported as skipped with the reason, never dropped.
    """
    ctx = SubjectContext(subject)
    out = []
    for row in _ROWS.values():
        for params in _param_grid(row, p_values, q_values, k_values):
            if row.graph_only and ctx.graph is None:
                out.append(BoundCheck(row.bound_id, dict(params), skipped=True,
                                      skip_reason="row applies to graph subjects only"))
                continue
            reason = row.precondition(ctx, params) if row.precondition else None
            if reason:
                out.append(BoundCheck(row.bound_id, dict(params), skipped=True,
                                      skip_reason=reason))
                continue
            out.append(_evaluate_row(row, ctx, params, tol_scale))
    return out
