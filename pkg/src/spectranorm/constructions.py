"""Constructors and classifiers for special matrices.

Covers the all-ones matrix, the discrete Fourier transform matrix, Sylvester
Hadamard matrices, Kronecker products, the J - 2A transform of a 0/1 matrix,
plainness, and membership in the Hadamard-type class (constant entry modulus,
pairwise orthogonal rows).
"""

from __future__ import annotations

import numpy as np

from .cmatrix import CMatrix
from .eigen import allones_quotient_modulus, singular_values
from .errors import NotPowerOfTwo, NotZeroOne, PreconditionFailed, SizeOverflow

_KRON_ENTRY_CAP = 10**6


def all_ones(m: int, n: int) -> CMatrix:
    if m < 1 or n < 1:
        raise ValueError("all_ones needs positive dimensions")
    return CMatrix.from_array(np.ones((m, n)))


def dft_matrix(n: int) -> CMatrix:
    """n x n discrete Fourier transform matrix, a_kj = exp(2*pi*i*k*j/n)."""
    if n < 1:
        raise ValueError("dft_matrix needs n >= 1")
    idx = np.arange(n)
    return CMatrix.from_array(np.exp(2j * np.pi * np.outer(idx, idx) / n))


def sylvester_hadamard(order: int) -> CMatrix:
    """+-1 Hadamard matrix of power-of-two order by the doubling construction."""
    if order < 1 or order & (order - 1):
        raise NotPowerOfTwo(f"order must be a power of two, got {order}")
    h = np.array([[1.0]])
    while h.shape[0] < order:
        h = np.block([[h, h], [h, -h]])
    return CMatrix.from_array(h)


def kronecker(a: CMatrix, b: CMatrix) -> CMatrix:
    """Kronecker product; singular values are all pairwise products."""
    entries = a.rows * b.rows * a.cols * b.cols
    if entries > _KRON_ENTRY_CAP:
        raise SizeOverflow(f"product would have {entries} entries (cap {_KRON_ENTRY_CAP})")
    return CMatrix.from_array(np.kron(a.data, b.data))


def _check_zero_one(a: CMatrix) -> None:
    d = a.data
    ok = (np.abs(d.imag) == 0) & ((d.real == 0.0) | (d.real == 1.0))
    if not np.all(ok):
        raise NotZeroOne("matrix entries must all be 0 or 1")


def one_complement(a: CMatrix) -> CMatrix:
    """J - 2A for a 0/1 matrix; the result has entries +-1."""
    _check_zero_one(a)
    return CMatrix.from_array(np.ones_like(a.data) - 2.0 * a.data)


def is_plain(a: CMatrix) -> bool:
    """Whether the all-ones vectors form a top singular pair for A.

    Checked as |<j_m, A j_n>| / sqrt(mn) == sigma_1(A) within a relative
    tolerance; the modulus reading keeps sign-flipped matrices plain.
    """
    sigma1 = float(singular_values(a)[0])
    quotient = allones_quotient_modulus(a)
    return abs(quotient - sigma1) <= 1e-7 * (1.0 + sigma1)


def in_had_class(a: CMatrix) -> bool:
    """Membership in Had_{m,n}: constant entry modulus, orthogonal rows.

    Requires m <= n. The zero matrix is rejected: "same modulus" is read as a
    common nonzero modulus, matching the scalar-multiple-of-Hadamard picture.
    """
    if a.rows > a.cols:
        raise PreconditionFailed("Had_{m,n} is defined for m <= n")
    mods = np.abs(a.data)
    top = float(mods.max())
    if top == 0.0:
        return False
    if float(mods.min()) < top * (1.0 - 1e-9):
        return False
    gram = a.data @ a.data.conj().T
    row_norm_sq = float(np.max(np.abs(np.einsum("ii->i", gram))))
    off = gram - np.diag(np.einsum("ii->i", gram))
    return float(np.max(np.abs(off))) <= 1e-9 * row_norm_sq
