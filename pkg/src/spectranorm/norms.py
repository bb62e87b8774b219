"""Norm functionals: Schatten, Ky Fan, entrywise, energy.

Every function accepts either a CMatrix or a Graph; graphs delegate to their
adjacency matrix with no separate code path.
"""

from __future__ import annotations

import math
import operator
from typing import Union

import numpy as np

from .cmatrix import CMatrix
from .eigen import hermitian_eigenvalues, singular_values
from .graphs import Graph

Subject = Union[CMatrix, Graph]


def as_matrix(subject: Subject) -> CMatrix:
    if isinstance(subject, Graph):
        return subject.adjacency_matrix()
    if isinstance(subject, CMatrix):
        return subject
    raise TypeError(f"expected CMatrix or Graph, got {type(subject).__name__}")


def _check_schatten_order(p: float) -> float:
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"Schatten order must be a finite real >= 1, got {p}")
    return p


def schatten_norm(subject: Subject, p: float) -> float:
    """(sum_i sigma_i^p)^(1/p) over all singular values; p = 1 is the energy."""
    p = _check_schatten_order(p)
    sig = singular_values(as_matrix(subject)).values
    if p == 1.0:
        return float(sig.sum())
    return float(np.sum(sig**p) ** (1.0 / p))


def energy(subject: Subject) -> float:
    """Sum of singular values (trace norm); alias for the Schatten 1-norm."""
    return schatten_norm(subject, 1.0)


def kyfan_norm(subject: Subject, k: int) -> float:
    """Sum of the k largest singular values; k past min(m, n) saturates."""
    k = operator.index(k)
    if k < 1:
        raise ValueError(f"Ky Fan order must be a positive integer, got {k}")
    sig = singular_values(as_matrix(subject)).values
    return float(sig[: min(k, len(sig))].sum())


def entrywise_norm(subject: Subject, p: float) -> float:
    """|A|_p = (sum |a_ij|^p)^(1/p); p = inf gives max |a_ij|."""
    mods = np.abs(as_matrix(subject).data)
    if p == math.inf:
        return float(mods.max())
    p = float(p)
    if not math.isfinite(p) or p < 1.0:
        raise ValueError(f"entrywise order must be >= 1 or inf, got {p}")
    return float(np.sum(mods**p) ** (1.0 / p))


def kyfan2_eigen_identity(g: Graph) -> tuple[float, float]:
    """Both sides of ||G||_F2 = max(|mu_1| + |mu_2|, |mu_1| + |mu_n|)."""
    if not isinstance(g, Graph) or g.n < 2:
        raise ValueError("identity needs a graph on at least 2 vertices")
    lhs = kyfan_norm(g, 2)
    mu = hermitian_eigenvalues(g.adjacency_matrix()).values
    rhs = max(abs(mu[0]) + abs(mu[1]), abs(mu[0]) + abs(mu[-1]))
    return lhs, float(rhs)
