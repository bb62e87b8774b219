"""Self-contained Hermitian eigensolver and singular value computation.

The solver is a cyclic Jacobi iteration with complex rotations, chosen for
unconditional accuracy on the small dense matrices this package targets
(order up to a few hundred). No external eigensolver is used anywhere in the
package: every norm ultimately reduces to this module.

Conventions:
  * eigenvalues are returned sorted nonincreasing,
  * singular values are square roots of the spectrum of the Gram product,
    formed on the smaller side of the matrix,
  * all tolerances are relative to the scale of the input; floating data is
    never compared against exact zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cmatrix import CMatrix
from .errors import NoConvergence, NonRealRayleigh, NotHermitian

SWEEP_LIMIT = 100

# Convergence: off-diagonal Frobenius norm below _CONV_TOL * (1 + |M|_2).
_CONV_TOL = 1e-12
# Hermitian precondition: entrywise within _HERM_TOL * (1 + |M|_inf).
_HERM_TOL = 1e-12
# Gram eigenvalues below -_GRAM_NEG_TOL * |A|_2^2 indicate a solver bug.
_GRAM_NEG_TOL = 1e-9

_SPECTRUM_SUM_TOL = 1e-9


@dataclass(frozen=True)
class EigenSpectrum:
    """Real eigenvalues of a Hermitian matrix, sorted nonincreasing."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("spectrum must be a non-empty 1-D array")
        if np.any(v[:-1] < v[1:]):
            raise ValueError("eigenvalues must be sorted nonincreasing")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class SingularSpectrum:
    """Nonnegative singular values, sorted nonincreasing, min(m, n) of them."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("spectrum must be a non-empty 1-D array")
        if np.any(v < 0):
            raise ValueError("singular values must be nonnegative")
        if np.any(v[:-1] < v[1:]):
            raise ValueError("singular values must be sorted nonincreasing")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


def _offdiag_norm(a: np.ndarray) -> float:
    # summed directly over off-diagonal entries: subtracting the diagonal
    # mass from the total cancels catastrophically near convergence
    mods = np.abs(a) ** 2
    np.einsum("ii->i", mods)[:] = 0.0
    return float(np.sqrt(np.sum(mods)))


def _jacobi_real(a: np.ndarray) -> np.ndarray:
    """Cyclic Jacobi on a real symmetric matrix; returns the diagonal."""
    n = a.shape[0]
    frob = float(np.sqrt(np.sum(a * a)))
    thresh = _CONV_TOL * (1.0 + frob)
    delay = thresh / (2.0 * n)
    for _ in range(SWEEP_LIMIT):
        if _offdiag_norm(a) <= thresh:
            return np.einsum("ii->i", a).copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= delay:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
    raise NoConvergence(f"Jacobi did not converge in {SWEEP_LIMIT} sweeps (n={n})")


def _jacobi_complex(a: np.ndarray) -> np.ndarray:
    """Cyclic Jacobi on a Hermitian complex matrix; returns the real diagonal."""
    n = a.shape[0]
    frob = float(np.sqrt(np.sum(np.abs(a) ** 2)))
    thresh = _CONV_TOL * (1.0 + frob)
    delay = thresh / (2.0 * n)
    for _ in range(SWEEP_LIMIT):
        if _offdiag_norm(a) <= thresh:
            return np.einsum("ii->i", a).real.copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= delay:
                    continue
                e = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                se = s * e
                sec = s * np.conj(e)
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - se * rq
                a[q, :] = sec * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - sec * cq
                a[:, q] = se * cp + c * cq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    raise NoConvergence(f"Jacobi did not converge in {SWEEP_LIMIT} sweeps (n={n})")


def _eigenvalues_of_hermitian_array(w: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of an array already known to be Hermitian."""
    if w.shape[0] == 1:
        vals = np.array([float(w[0, 0].real)])
    elif np.all(w.imag == 0.0):
        vals = _jacobi_real(w.real.copy())
    else:
        vals = _jacobi_complex(w.astype(np.complex128, copy=True))
    return np.sort(vals)[::-1]


def hermitian_eigenvalues(m: CMatrix) -> EigenSpectrum:
    """All eigenvalues of a Hermitian matrix, sorted nonincreasing.

    Raises NotHermitian when the input is not square or fails the symmetry
    check, and NoConvergence if the sweep limit is hit (a solver bug).
    """
    if not m.is_square():
        raise NotHermitian(f"matrix is {m.rows}x{m.cols}, not square")
    a = m.data
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if np.max(np.abs(a - a.conj().T)) > _HERM_TOL * (1.0 + scale):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w = (a + a.conj().T) / 2.0  # kill roundoff asymmetry
    vals = _eigenvalues_of_hermitian_array(w)
    trace = float(np.einsum("ii->i", a).real.sum())
    if abs(float(vals.sum()) - trace) > _SPECTRUM_SUM_TOL * (1.0 + abs(trace)):
        raise NoConvergence("eigenvalue sum drifted from the trace")
    return EigenSpectrum(vals)


def singular_values(a: CMatrix) -> SingularSpectrum:
    """Singular values of a complex matrix, sorted nonincreasing.

    Forms the Hermitian Gram product on the smaller side, eigendecomposes it
    with the Jacobi solver, clamps tiny negative eigenvalues to zero and
    returns their square roots.
    """
    d = a.data
    if d.shape[0] <= d.shape[1]:
        gram = d @ d.conj().T
    else:
        gram = d.conj().T @ d
    gram = (gram + gram.conj().T) / 2.0
    lam = _eigenvalues_of_hermitian_array(gram)
    f2sq = float(np.sum(np.abs(d) ** 2))
    if np.any(lam < -_GRAM_NEG_TOL * f2sq):
        raise NoConvergence("Gram eigenvalue significantly negative")
    # Gram eigenvalues carry roundoff of order eps * lambda_max; anything at
    # that scale is dust from an exact zero, and taking its square root would
    # inflate it to ~1e-8. Flatten the dust so exact zeros come out exact.
    if lam.size and lam[0] > 0.0:
        dust = 64.0 * gram.shape[0] * np.finfo(float).eps * float(lam[0])
        lam[np.abs(lam) < dust] = 0.0
    sig = np.sqrt(np.clip(lam, 0.0, None))
    sig = np.sort(sig)[::-1]
    if abs(float(np.sum(sig * sig)) - f2sq) > _SPECTRUM_SUM_TOL * (1.0 + f2sq):
        raise NoConvergence("singular value mass drifted from the Frobenius norm")
    return SingularSpectrum(sig)


def rayleigh_allones(a: CMatrix) -> float:
    """<j_m, A j_n> / sqrt(mn): the all-ones Rayleigh quotient.

    Raises NonRealRayleigh when the value is not real within tolerance.
    """
    total = complex(a.data.sum())
    value = total / np.sqrt(a.rows * a.cols)
    if abs(value.imag) > 1e-9 * (1.0 + abs(value)):
        raise NonRealRayleigh(f"imaginary part {value.imag:g} exceeds tolerance")
    return float(value.real)


def allones_quotient_modulus(a: CMatrix) -> float:
    """|<j_m, A j_n>| / sqrt(mn), defined for every complex matrix."""
    total = complex(a.data.sum())
    return abs(total) / float(np.sqrt(a.rows * a.cols))
