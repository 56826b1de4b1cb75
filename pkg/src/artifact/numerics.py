"""Dense complex linear algebra used by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The helpers here
fix the conventions the rest of the package relies on: the Kronecker index
order, the SVD-based nullspace with its rank diagnostics, and the principal
branches of square and fourth roots.
"""

from __future__ import annotations

import warnings

from functools import reduce
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from .errors import DimensionError

Matrix = np.ndarray

DEFAULT_TOL = 1e-9
DEFAULT_REL_TOL = 1e-7


def as_matrix(m: object) -> Matrix:
    """Return ``m`` as a finite 2-d complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _square(m: object) -> Matrix:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def det(m: object) -> complex:
    """Determinant by LU with partial pivoting; the 0x0 determinant is 1."""
    a = _square(m)
    if a.shape[0] == 0:
        return 1.0 + 0j
    with warnings.catch_warnings():
        # an exactly singular matrix is a valid input whose determinant is 0
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    sign = -1.0 if np.count_nonzero(piv != np.arange(len(piv))) % 2 else 1.0
    return complex(sign * np.prod(np.diag(lu)))


def inv(m: object) -> Matrix:
    a = _square(m)
    if a.shape[0] == 0:
        return a.copy()
    return np.linalg.inv(a)


def identity(n: int) -> Matrix:
    return np.eye(n, dtype=complex)


def kron(a: object, b: object) -> Matrix:
    """Kronecker product, (i, j) x (k, l) -> (i * rows(b) + k, j * cols(b) + l)."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(factors: Iterable[object]) -> Matrix:
    """Left-nested Kronecker product of a nonempty sequence of matrices."""
    mats = [as_matrix(f) for f in factors]
    if not mats:
        return identity(1)
    return reduce(np.kron, mats)


def nullspace(m: object, tol: float = DEFAULT_TOL) -> tuple[list[Matrix], np.ndarray]:
    """Orthonormal basis of the right null space and the singular values.

    A right singular vector is kept when its singular value is at most
    ``tol * ||m||`` (spectral norm).  Singular values are returned in
    decreasing order, padded with zeros when ``m`` has more columns than
    rows, so callers can read off the gap below the kept ones.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = as_matrix(m)
    rows, cols = a.shape
    if cols == 0:
        return [], np.zeros(0)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    if rows < cols:
        s = np.concatenate([s, np.zeros(cols - rows)])
    scale = s[0] if s.size and s[0] > 0 else 1.0
    keep = np.nonzero(s <= tol * scale)[0]
    vectors = [vh[k].conj().reshape(cols, 1) for k in keep]
    return vectors, s


def eig2(m: object) -> tuple[complex, complex]:
    """Eigenvalues of a 2x2 matrix from its characteristic quadratic."""
    a = as_matrix(m)
    if a.shape != (2, 2):
        raise DimensionError(f"eig2 needs a 2x2 matrix, got {a.shape}")
    t = a[0, 0] + a[1, 1]
    d = a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    root = np.sqrt(complex(t * t - 4 * d))
    # pick the larger-magnitude root first to avoid cancellation
    big = (t + root) / 2 if abs(t + root) >= abs(t - root) else (t - root) / 2
    small = d / big if big != 0 else (t - big)
    return complex(big), complex(small)


def principal_sqrt(z: complex) -> complex:
    """Square root with argument in (-pi/2, pi/2]."""
    r = np.sqrt(complex(z))
    if r.real == 0 and r.imag < 0:
        r = -r
    return complex(r)


def principal_fourth_root(z: complex) -> complex:
    """Fourth root with argument in (-pi/4, pi/4]."""
    z = complex(z)
    if z == 0:
        raise ValueError("fourth root of zero")
    arg = np.angle(z) / 4
    if arg <= -np.pi / 4:
        arg += np.pi / 2
    return complex(abs(z) ** 0.25 * np.exp(1j * arg))


def relative_error(a: complex, b: complex) -> float:
    denom = max(abs(a), abs(b), 1e-300)
    return abs(a - b) / denom


def max_abs(m: object) -> float:
    a = np.asarray(m)
    return float(np.max(np.abs(a))) if a.size else 0.0


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b + b @ a


def intertwiner_system(source: Sequence[Matrix], target: Sequence[Matrix]) -> Matrix:
    """Stack the linear conditions ``X @ s = t @ X`` for pairs (s, t).

    The unknown ``X`` (shape rows(t) x rows(s)) is vectorized column-major,
    so a nullspace vector ``v`` reshapes back with ``order="F"``.
    """
    blocks = []
    for s, t in zip(source, target):
        s = as_matrix(s)
        t = as_matrix(t)
        blocks.append(np.kron(s.T, identity(t.shape[0])) - np.kron(identity(s.shape[0]), t))
    return np.vstack(blocks)


def unvec(v: np.ndarray, rows: int, cols: int) -> Matrix:
    return np.asarray(v, dtype=complex).reshape(rows, cols, order="F")
