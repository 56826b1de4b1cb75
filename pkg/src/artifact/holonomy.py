"""Coordinates on SL2(C) and its Poisson dual SL2(C)*.

A point of SL2(C)* is a pair of triangular matrices

    a+ = [[kappa, 0], [phi, 1]],    a- = [[1, epsilon], [0, kappa]],

stored as a ``StarChar``.  The map ``psi(a) = a+ (a-)^-1`` identifies the
dual group with the open set of SL2(C) where the (1,1) entry is nonzero.
Color tuples are moved between the two pictures by ``factorize_tuple`` and
``defactorize_tuple``; on the dual side the braid group acts through the
biquandle map ``biquandle_B``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .braids import BraidWord
from .errors import (
    DegenerateCharacterError,
    DimensionError,
    InadmissibleError,
    SingularError,
)
from .numerics import DEFAULT_TOL, Matrix, as_matrix, eig2, identity, inv, principal_sqrt


@dataclass(frozen=True)
class StarChar:
    """A character of the central subalgebra: chi(K^2)=kappa, chi(E^2)=epsilon, chi(F^2)=phi/kappa."""

    kappa: complex
    epsilon: complex = 0j
    phi: complex = 0j

    def __post_init__(self) -> None:
        for name in ("kappa", "epsilon", "phi"):
            value = complex(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} is not finite")
            object.__setattr__(self, name, value)
        if abs(self.kappa) < 1e-300:
            raise DegenerateCharacterError("degenerate character")

    @property
    def plus(self) -> Matrix:
        return np.array([[self.kappa, 0], [self.phi, 1]], dtype=complex)

    @property
    def minus(self) -> Matrix:
        return np.array([[1, self.epsilon], [0, self.kappa]], dtype=complex)

    def __mul__(self, other: "StarChar") -> "StarChar":
        p = self.plus @ other.plus
        m = self.minus @ other.minus
        return StarChar(p[0, 0], m[0, 1], p[1, 0])

    def inverse(self) -> "StarChar":
        k = self.kappa
        return StarChar(1 / k, -self.epsilon / k, -self.phi / k)

    def casimir_square(self) -> complex:
        """chi(Omega^2) = tr psi(chi) - 2."""
        k, e, f = self.kappa, self.epsilon, self.phi
        return k + (1 - e * f) / k - 2

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.kappa, self.epsilon, self.phi)

    def distance(self, other: "StarChar") -> float:
        return float(max(abs(a - b) for a, b in zip(self.as_tuple(), other.as_tuple())))


IDENTITY_CHAR = StarChar(1, 0, 0)


@dataclass(frozen=True)
class ExtChar:
    """A character together with a fractional eigenvalue mu, labelling V(chi, mu)."""

    chi: StarChar
    mu: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", complex(self.mu))
        if self.mu == 0 or not np.isfinite(self.mu):
            raise ValueError("fractional eigenvalue must be finite and nonzero")
        target = self.chi.casimir_square()
        if self.residual() > 1e-6 * max(1.0, abs(target)):
            raise ValueError("mu is not a fractional eigenvalue of chi")

    @property
    def omega(self) -> complex:
        """The Casimir value mu - 1/mu."""
        return self.mu - 1 / self.mu

    def residual(self) -> float:
        return abs(self.omega**2 - self.chi.casimir_square())

    def is_nonsingular(self, tol: float = DEFAULT_TOL) -> bool:
        return abs(self.omega) > tol

    def inverse(self) -> "ExtChar":
        return ExtChar(self.chi.inverse(), self.mu)

    def with_mu(self, mu: complex) -> "ExtChar":
        return replace(self, mu=complex(mu))


def as_sl2(m: object, tol: float = 1e-8) -> Matrix:
    a = as_matrix(m)
    if a.shape != (2, 2):
        raise DimensionError("SL2 elements are 2x2")
    if abs(np.linalg.det(a) - 1) > tol * max(1.0, float(np.abs(a).max()) ** 2):
        raise ValueError("matrix does not have determinant 1")
    return a


def psi(a: StarChar) -> Matrix:
    k, e, f = a.as_tuple()
    return np.array([[k, -e], [f, (1 - e * f) / k]], dtype=complex)


def factorize(h: Matrix, tol: float = DEFAULT_TOL) -> StarChar:
    h = as_matrix(h)
    if abs(h[0, 0]) <= tol:
        raise InadmissibleError("inadmissible element")
    return StarChar(h[0, 0], -h[0, 1], h[1, 0])


def defactorize_tuple(a: Sequence[StarChar]) -> list[Matrix]:
    out = []
    prefix = identity(2)
    for ai in a:
        out.append(prefix @ psi(ai) @ inv(prefix))
        prefix = prefix @ ai.plus
    return out


def factorize_tuple(g: Sequence[Matrix], tol: float = DEFAULT_TOL) -> list[StarChar]:
    """Invert ``defactorize_tuple`` using g_i ... g_1 = psi(a_1 ... a_i)."""
    out = []
    h = identity(2)
    previous = IDENTITY_CHAR
    for gi in g:
        h = as_matrix(gi) @ h
        if abs(h[0, 0]) <= tol:
            raise InadmissibleError("inadmissible tuple")
        current = StarChar(h[0, 0], -h[0, 1], h[1, 0])
        out.append(previous.inverse() * current)
        previous = current
    return out


def is_admissible(g: Sequence[Matrix], tol: float = DEFAULT_TOL) -> bool:
    h = identity(2)
    for gi in g:
        h = as_matrix(gi) @ h
        if abs(h[0, 0]) <= tol:
            return False
    return True


def biquandle_B(a1: StarChar, a2: StarChar, tol: float = DEFAULT_TOL) -> tuple[StarChar, StarChar]:
    """The positive crossing (a1, a2) -> (a4, a3) in dual-group coordinates."""
    k1, e1, f1 = a1.as_tuple()
    k2, e2, f2 = a2.as_tuple()
    d = e1 * f2 + k2
    if abs(d) <= tol:
        raise InadmissibleError("inadmissible crossing")
    k4 = d
    f4 = k1 * f2
    k3 = k1 * k2 / d
    e3 = e1 / d
    e4 = (e1 * k2**2 + e2 * k2 + (e1**2 * k2 + e1 * e2) * f2 - e1) / (k1 * k2)
    f3 = (k2**2 * f1 + e1 * f2**2 + (e1 * k2 * f1 - (k1**2 - 1) * k2) * f2) / d
    return StarChar(k4, e4, f4), StarChar(k3, e3, f3)


def biquandle_B_inverse(
    a4: StarChar, a3: StarChar, tol: float = DEFAULT_TOL
) -> tuple[StarChar, StarChar]:
    """The unique (a1, a2) with biquandle_B(a1, a2) = (a4, a3).

    From a1- a2+ = a4+ a3-: the right side is an LU-type product whose
    entries give epsilon_1, kappa_1, phi_2 and kappa_2 directly; the
    remaining factors follow from the other two biquandle equations.
    """
    m = a4.plus @ a3.minus
    e1 = m[0, 1]
    k1 = m[1, 1]
    if abs(k1) <= tol:
        raise InadmissibleError("inadmissible crossing")
    f2 = m[1, 0] / k1
    k2 = m[0, 0] - e1 * f2
    if abs(k2) <= tol:
        raise InadmissibleError("inadmissible crossing")
    p2 = np.array([[k2, 0], [f2, 1]], dtype=complex)
    m1 = np.array([[1, e1], [0, k1]], dtype=complex)
    p1 = a4.plus @ a3.plus @ inv(p2)
    m2 = inv(m1) @ a4.minus @ a3.minus
    return StarChar(p1[0, 0], e1, p1[1, 0]), StarChar(m2[1, 1], m2[0, 1], f2)


def crossing_step(
    letter: int, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL
) -> list[ExtChar]:
    """Apply a single signed letter to a tuple of extended characters."""
    xs = list(xs)
    i = abs(letter) - 1
    x1, x2 = xs[i], xs[i + 1]
    if letter > 0:
        a4, a3 = biquandle_B(x1.chi, x2.chi, tol)
    else:
        a4, a3 = biquandle_B_inverse(x1.chi, x2.chi, tol)
    xs[i], xs[i + 1] = ExtChar(a4, x2.mu), ExtChar(a3, x1.mu)
    return xs


def act_colors_star(
    word: BraidWord, a: Sequence[ExtChar], tol: float = DEFAULT_TOL
) -> list[ExtChar]:
    if len(a) != word.strands:
        raise DimensionError(f"expected {word.strands} characters, got {len(a)}")
    xs = list(a)
    for pos, letter in enumerate(word.letters):
        try:
            xs = crossing_step(letter, xs, tol)
        except InadmissibleError as exc:
            raise InadmissibleError(f"inadmissible crossing at letter {pos + 1} (sigma {letter})") from exc
    return xs


def star_trajectory(
    word: BraidWord, a: Sequence[ExtChar], tol: float = DEFAULT_TOL
) -> list[list[ExtChar]]:
    """Character tuples before the first letter and after each letter."""
    traj = [list(a)]
    for pos, letter in enumerate(word.letters):
        try:
            traj.append(crossing_step(letter, traj[-1], tol))
        except InadmissibleError as exc:
            raise InadmissibleError(f"inadmissible crossing at letter {pos + 1} (sigma {letter})") from exc
    return traj


def fractional_eigenvalues(chi: StarChar) -> tuple[complex, complex, complex, complex]:
    """All mu with (mu - 1/mu)^2 = tr psi(chi) - 2, as (mu, -mu, 1/mu, -1/mu)."""
    m, _ = eig2(psi(chi))
    mu = principal_sqrt(m)
    return (mu, -mu, 1 / mu, -1 / mu)


def default_mu(chi: StarChar) -> complex:
    """The fractional eigenvalue with |mu| >= 1 and Re mu >= 0, ties broken by Im mu >= 0."""
    slack = 1e-12
    roots = fractional_eigenvalues(chi)
    big = [mu for mu in roots if abs(mu) >= 1 - slack]
    right = [mu for mu in big if mu.real >= -slack]
    upper = [mu for mu in right if mu.imag >= -slack] or right
    return max(upper, key=lambda mu: (round(mu.real, 12), round(mu.imag, 12)))


def require_nonsingular_meridians(g: Sequence[Matrix], tol: float = DEFAULT_TOL) -> None:
    for gi in g:
        if abs(np.trace(as_matrix(gi)) - 2) <= tol:
            raise SingularError("singular meridian")


def gauge_transform(g: Sequence[Matrix], c: Matrix) -> list[Matrix]:
    c = as_matrix(c)
    ci = inv(c)
    return [c @ as_matrix(gi) @ ci for gi in g]


def random_sl2(rng: np.random.Generator, scale: float = 1.0) -> Matrix:
    """A random SL2 element: complex Gaussian entries rescaled to determinant 1."""
    while True:
        m = scale * (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        d = np.linalg.det(m)
        if abs(d) > 1e-3:
            return m / np.sqrt(d)


def find_admissible_gauge(
    g: Sequence[Matrix],
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    attempts: int = 1000,
    accept: Callable[[list[Matrix]], bool] | None = None,
) -> Matrix:
    """Search seeded random conjugations until the tuple is admissible with margin 10*tol.

    ``accept`` can impose further conditions on the conjugated tuple, e.g.
    that every crossing met along a braid word stays admissible.
    """
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        c = random_sl2(rng)
        moved = gauge_transform(g, c)
        if is_admissible(moved, 10 * tol) and (accept is None or accept(moved)):
            return c
    raise InadmissibleError("no admissible gauge found")

def random_star_char(rng: np.random.Generator, min_omega: float = 0.2) -> StarChar:
    """A random nonsingular character with moderate coordinates."""
    while True:
        kappa = (0.5 + 1.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
        eps = complex(rng.normal(), rng.normal())
        phi = complex(rng.normal(), rng.normal())
        chi = StarChar(kappa, eps, phi)
        if abs(chi.casimir_square()) > min_omega**2:
            return chi


def random_ext_char(rng: np.random.Generator, min_omega: float = 0.2) -> ExtChar:
    chi = random_star_char(rng, min_omega)
    return ExtChar(chi, default_mu(chi))


def random_crossing(
    rng: np.random.Generator, min_denominator: float = 0.1, min_omega: float = 0.2
) -> tuple[ExtChar, ExtChar]:
    """A random pair whose positive crossing, and its mirror, stay well inside the admissible set."""
    while True:
        x1, x2 = random_ext_char(rng, min_omega), random_ext_char(rng, min_omega)
        if abs(x1.chi.epsilon * x2.chi.phi + x2.chi.kappa) < min_denominator:
            continue
        try:
            x4, x3 = crossing_step(1, [x1, x2])
            crossing_step(1, [x3.inverse(), x4.inverse()])
        except InadmissibleError:
            continue
        if min(abs(x.chi.kappa) for x in (x3, x4)) < min_denominator:
            continue
        return x1, x2
