"""Matrix models for the small quantum group at q = i.

Generators K, E, F satisfy KE = -EK, KF = -FK, EF - FE = 2i(K - K^-1), with

    Delta E = 1 (x) E + E (x) K,   Delta F = K^-1 (x) F + F (x) 1,   Delta K = K (x) K,

and the Casimir Omega = iEF + K - K^-1.  K^2, E^2, F^2 are central; on the
simple module V(chi, mu) they act by kappa, epsilon, phi/kappa and Omega
acts by mu - 1/mu.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from .errors import DimensionError, SingularError, SolverError
from .holonomy import ExtChar
from .numerics import (
    DEFAULT_TOL,
    Matrix,
    anticommutator,
    as_matrix,
    commutator,
    identity,
    inv,
    kron,
    kron_all,
    max_abs,
    principal_sqrt,
)

Variant = Literal["delta", "op"]


@dataclass(frozen=True)
class Rep:
    """Images of K, E, F on a finite-dimensional module."""

    K: Matrix
    E: Matrix
    F: Matrix

    def __post_init__(self) -> None:
        mats = [as_matrix(m) for m in (self.K, self.E, self.F)]
        d = mats[0].shape[0]
        for m in mats:
            if m.shape != (d, d):
                raise DimensionError("generator images must be square of equal size")
        for name, m in zip("KEF", mats):
            m.setflags(write=False)
            object.__setattr__(self, name, m)

    @property
    def dim(self) -> int:
        return self.K.shape[0]

    @property
    def Kinv(self) -> Matrix:
        return inv(self.K)

    def image(self, name: str) -> Matrix:
        return {"K": self.K, "E": self.E, "F": self.F}[name]

    def ftilde(self, sign: int = 1) -> Matrix:
        """F~ = iKF (sign=+1) or -iKF (sign=-1)."""
        return sign * 1j * self.K @ self.F

    def casimir(self) -> Matrix:
        return 1j * self.E @ self.F + self.K - self.Kinv

    def relation_residual(self) -> float:
        k, e, f = self.K, self.E, self.F
        return max(
            max_abs(anticommutator(k, e)),
            max_abs(anticommutator(k, f)),
            max_abs(commutator(e, f) - 2j * (k - self.Kinv)),
        )

    def center_images(self) -> tuple[Matrix, Matrix, Matrix]:
        """Images of K^2, E^2, F^2."""
        return self.K @ self.K, self.E @ self.E, self.F @ self.F


def is_intertwiner(f: Matrix, source: Rep, target: Rep) -> float:
    """Max residual of f . source(u) = target(u) . f over the generators."""
    return max(max_abs(f @ source.image(u) - target.image(u) @ f) for u in "KEF")


def _check_simple_input(x: ExtChar, tol: float) -> None:
    if not x.is_nonsingular(tol):
        raise SingularError("no simple module")
    scale = max(1.0, abs(x.chi.casimir_square()))
    if x.residual() > 1e-6 * scale:
        raise ValueError("fractional eigenvalue does not match the character")


@lru_cache(maxsize=4096)
def _simple_cached(x: ExtChar, tol: float) -> Rep:
    k, e, f = x.chi.as_tuple()
    w = x.omega
    scale = max(1.0, abs(k), abs(e), abs(f))
    if abs(e) > tol * scale and abs(f) > tol * scale:
        # cyclic case, principal square root of kappa
        s = principal_sqrt(k)
        K = np.diag([s, -s]).astype(complex)
        E = np.array([[0, e], [1, 0]], dtype=complex)
        F = np.array(
            [[0, -1j * (w + s - 1 / s)], [-1j * (w - s + 1 / s) / e, 0]], dtype=complex
        )
        return Rep(K, E, F)
    # semicyclic: epsilon * phi = 0; the weight s is the square root of kappa
    # with s - 1/s = omega, and F has (0,1) entry -2i omega
    r = principal_sqrt(k)
    s = min((r, -r), key=lambda c: abs(c - 1 / c - w))
    a = -2j * w
    K = np.diag([s, -s]).astype(complex)
    E = np.array([[0, e], [1, 0]], dtype=complex)
    F = np.array([[0, a], [f / (k * a), 0]], dtype=complex)
    return Rep(K, E, F)


def simple_module(x: ExtChar, tol: float = DEFAULT_TOL) -> Rep:
    """The two-dimensional simple weight module V(chi, mu)."""
    _check_simple_input(x, tol)
    return _simple_cached(x, tol)


def antipode_images(r: Rep) -> Rep:
    """Images of S(K), S(E), S(F) (not a representation: S is an antihomomorphism)."""
    ki = r.Kinv
    return Rep(ki, -r.E @ ki, -r.K @ r.F)


def dual_module(r: Rep) -> Rep:
    """The left dual: x acts by the transpose of r(S(x))."""
    s = antipode_images(r)
    return Rep(s.K.T, s.E.T, s.F.T)


def _tensor_pair(r1: Rep, r2: Rep, variant: Variant) -> Rep:
    i1, i2 = identity(r1.dim), identity(r2.dim)
    if variant == "delta":
        return Rep(
            kron(r1.K, r2.K),
            kron(i1, r2.E) + kron(r1.E, r2.K),
            kron(r1.Kinv, r2.F) + kron(r1.F, i2),
        )
    if variant == "op":
        return Rep(
            kron(r1.K, r2.K),
            kron(r1.E, i2) + kron(r1.K, r2.E),
            kron(r1.F, r2.Kinv) + kron(i1, r2.F),
        )
    raise ValueError(f"unknown coproduct variant {variant!r}")


def tensor_rep(reps: Sequence[Rep], variant: Variant = "delta") -> Rep:
    """Iterated tensor product through Delta (``"delta"``) or Delta^op (``"op"``)."""
    if not reps:
        raise ValueError("need at least one factor")
    out = reps[0]
    for r in reps[1:]:
        out = _tensor_pair(out, r, variant)
    return out


def p0_module() -> Rep:
    """The projective cover of the trivial module, basis (x, y1, y2, z)."""
    K = np.diag([1, -1, -1, 1]).astype(complex)
    E = np.zeros((4, 4), dtype=complex)
    F = np.zeros((4, 4), dtype=complex)
    E[1, 0] = E[3, 2] = 1
    F[2, 0] = F[3, 1] = -1j
    return Rep(K, E, F)


def parity_module() -> Rep:
    """The one-dimensional module K -> -1, E, F -> 0."""
    return Rep(np.array([[-1]], dtype=complex), np.zeros((1, 1)), np.zeros((1, 1)))


def p1_module() -> Rep:
    return tensor_rep([parity_module(), p0_module()])


def _projective_iso(target: Rep, model: Rep, fx: np.ndarray) -> Matrix:
    """Extend the image of the top vector x to a map model -> target.

    Uses y1 = E x, y2 = F x / F[2,0] and z = E y2 in the model.
    """
    fx = np.asarray(fx, dtype=complex)
    fy1 = target.E @ fx / model.E[1, 0]
    fy2 = target.F @ fx / model.F[2, 0]
    fz = target.E @ fy2 / model.E[3, 2]
    return np.column_stack([fx, fy1, fy2, fz])


def p0_iso(x: ExtChar, tol: float = DEFAULT_TOL) -> Matrix:
    """An isomorphism P0 -> V(chi, mu) (x) V(chi, mu)*.

    The top vector goes to |0><0| - |1><1| (basis |j><k| -> index 2j + k).
    """
    v = simple_module(x, tol)
    target = tensor_rep([v, dual_module(v)])
    f = _projective_iso(target, p0_module(), np.array([1, 0, 0, -1], dtype=complex))
    _check_iso(f, p0_module(), target)
    return f


def p1_iso(x: ExtChar, tol: float = DEFAULT_TOL) -> Matrix:
    """An isomorphism P1 -> V(chi, mu) (x) V(chi, -mu)*."""
    v = simple_module(x, tol)
    w = simple_module(x.with_mu(-x.mu), tol)
    target = tensor_rep([v, dual_module(w)])
    model = p1_module()
    best = None
    # the top vector has K-weight -1; pick the weight vector giving the best-conditioned map
    for idx in range(4):
        fx = np.zeros(4, dtype=complex)
        fx[idx] = 1
        if abs(target.K[idx, idx] + 1) > 1e-6:
            continue
        f = _projective_iso(target, model, fx)
        if best is None or abs(np.linalg.det(f)) > abs(np.linalg.det(best)):
            best = f
    if best is None:
        raise SolverError("no weight vector for the projective cover")
    _check_iso(best, model, target)
    return best


def _check_iso(f: Matrix, source: Rep, target: Rep) -> None:
    scale = max(1.0, max_abs(f))
    if is_intertwiner(f, source, target) > 1e-8 * scale * max(1.0, max_abs(target.F)):
        raise SolverError("projective cover map is not an intertwiner")
    if abs(np.linalg.det(f)) <= 1e-12 * scale**4:
        raise SolverError("projective cover map is not invertible")


def _embed(n: int, j: int, op: Matrix, left: Matrix | None, right: Matrix | None) -> Matrix:
    """kron of ``left`` on factors < j, ``op`` on factor j and ``right`` on factors > j (0-based)."""
    factors = []
    for k in range(n):
        if k < j:
            factors.append(left if left is not None else identity(2))
        elif k == j:
            factors.append(op)
        else:
            factors.append(right if right is not None else identity(2))
    return kron_all(factors)


def _embed_with(n: int, j: int, op: Matrix, others: Sequence[Matrix], before: bool) -> Matrix:
    factors = []
    for k in range(n):
        if k == j:
            factors.append(op)
        elif (k < j) == before:
            factors.append(others[k])
        else:
            factors.append(identity(2))
    return kron_all(factors)


@dataclass(frozen=True)
class CliffordFamily:
    """Odd operators alpha_j^nu (j = 1..n) and beta_j^nu = alpha_j^nu - alpha_{j+1}^nu."""

    n: int
    xs: tuple[ExtChar, ...]
    alpha: dict = field(repr=False)
    beta: dict = field(repr=False)
    ftilde_sign: int = 1

    def a(self, nu: int, j: int) -> Matrix:
        return self.alpha[(nu, j)]

    def b(self, nu: int, j: int) -> Matrix:
        return self.beta[(nu, j)]


def _family(n: int, xs: tuple, alpha: dict, sign: int) -> CliffordFamily:
    beta = {
        (nu, j): alpha[(nu, j)] - alpha[(nu, j + 1)] for nu in (1, 2) for j in range(1, n)
    }
    return CliffordFamily(n, xs, alpha, beta, sign)


def clifford_family(
    xs: Sequence[ExtChar], ftilde_sign: int = 1, tol: float = DEFAULT_TOL
) -> CliffordFamily:
    """alpha_j^1 = K_1...K_{j-1} E_j / omega_j and alpha_j^2 = K_1...K_{j-1} F~_j / omega_j."""
    xs = tuple(xs)
    reps = [simple_module(x, tol) for x in xs]
    n = len(xs)
    Ks = [r.K for r in reps]
    alpha = {}
    for j, (x, r) in enumerate(zip(xs, reps), start=1):
        alpha[(1, j)] = _embed_with(n, j - 1, r.E / x.omega, Ks, before=True)
        alpha[(2, j)] = _embed_with(n, j - 1, r.ftilde(ftilde_sign) / x.omega, Ks, before=True)
    return _family(n, xs, alpha, ftilde_sign)


def mirrored_clifford_family(
    xs: Sequence[ExtChar], ftilde_sign: int = 1, tol: float = DEFAULT_TOL
) -> CliffordFamily:
    """On the duals V_j*: alpha-bar_j = E_j / omega_j K_{j+1} ... K_n, likewise with F~."""
    xs = tuple(xs)
    reps = [dual_module(simple_module(x, tol)) for x in xs]
    n = len(xs)
    Ks = [r.K for r in reps]
    alpha = {}
    for j, (x, r) in enumerate(zip(xs, reps), start=1):
        alpha[(1, j)] = _embed_with(n, j - 1, r.E / x.omega, Ks, before=False)
        alpha[(2, j)] = _embed_with(n, j - 1, r.ftilde(ftilde_sign) / x.omega, Ks, before=False)
    return _family(n, xs, alpha, ftilde_sign)


@lru_cache(maxsize=16)
def interleave_permutation(n: int) -> Matrix:
    """P with P (a_1..a_n (x) b_1..b_n) = (a_1 b_1 ... a_n b_n) on 2-dim factors."""
    size = 4**n
    perm = np.zeros((size, size))
    for src in range(size):
        bits = [(src >> (2 * n - 1 - k)) & 1 for k in range(2 * n)]
        a, b = bits[:n], bits[n:]
        dst = 0
        for j in range(n):
            dst = (dst << 2) | (a[j] << 1) | b[j]
        perm[dst, src] = 1
    perm.setflags(write=False)
    return perm


def doubled_operator(left: Matrix, right: Matrix, n: int) -> Matrix:
    """left (x) right on (V_1..V_n) (x) (V_1*..V_n*), moved to the interleaved order."""
    p = interleave_permutation(n)
    return p @ kron(left, right) @ p.T


def doubled_theta(
    xs: Sequence[ExtChar], ftilde_sign: int = 1, tol: float = DEFAULT_TOL
) -> CliffordFamily:
    """theta_j = beta_j (x) 1 + Delta K (x) beta-bar_j on the interleaved doubled space.

    The ``alpha`` slot holds the matching gamma_j = alpha_j (x) 1 + Delta K (x) alpha-bar_j.
    """
    xs = tuple(xs)
    n = len(xs)
    fam = clifford_family(xs, ftilde_sign, tol)
    bar = mirrored_clifford_family(xs, ftilde_sign, tol)
    dk = tensor_rep([simple_module(x, tol) for x in xs]).K
    one = identity(2**n)
    gamma = {
        key: doubled_operator(fam.alpha[key], one, n) + doubled_operator(dk, bar.alpha[key], n)
        for key in fam.alpha
    }
    theta = {
        key: doubled_operator(fam.beta[key], one, n) + doubled_operator(dk, bar.beta[key], n)
        for key in fam.beta
    }
    return CliffordFamily(n, xs, gamma, theta, ftilde_sign)
