"""Holonomy braidings: matrices realizing the outer automorphism R-hat.

For a crossing (chi_1, chi_2) -> (chi_4, chi_3) the braiding is the matrix
``c : V_1 (x) V_2 -> V_4 (x) V_3`` with ``c X = R-hat(X) c`` for every
generator X of the source algebra.  It is unique up to a scalar, so it is
found as a one-dimensional nullspace and normalized afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .braids import BraidWord
from .errors import InadmissibleError, SingularError, SolverError
from .holonomy import ExtChar, crossing_step, star_trajectory
from .numerics import (
    DEFAULT_TOL,
    Matrix,
    det,
    identity,
    intertwiner_system,
    inv,
    kron,
    kron_all,
    nullspace,
    principal_fourth_root,
    unvec,
)
from .uqi import (
    Rep,
    dual_module,
    interleave_permutation,
    simple_module,
    tensor_rep,
)

GENERATORS = ("K1", "1K", "E1", "1E", "F1", "1F")

# swap of two 2-dimensional factors
SWAP = np.eye(4)[[0, 2, 1, 3]].astype(complex)


@dataclass(frozen=True)
class BraidingCell:
    source: tuple[ExtChar, ExtChar]
    target: tuple[ExtChar, ExtChar]
    c: Matrix = field(repr=False)
    residual: float = 0.0
    gap: float = float("inf")


@dataclass(frozen=True)
class DoubledCell:
    source: tuple[ExtChar, ExtChar]
    target: tuple[ExtChar, ExtChar]
    C: Matrix = field(repr=False)
    scale: complex = 1.0
    v0_residual: float = 0.0


def source_generators(r1: Rep, r2: Rep) -> dict[str, Matrix]:
    i1, i2 = identity(r1.dim), identity(r2.dim)
    return {
        "K1": kron(r1.K, i2),
        "1K": kron(i1, r2.K),
        "E1": kron(r1.E, i2),
        "1E": kron(i1, r2.E),
        "F1": kron(r1.F, i2),
        "1F": kron(i1, r2.F),
    }


def rhat_from_reps(r4: Rep, r3: Rep, tol: float = DEFAULT_TOL) -> dict[str, Matrix]:
    """R-hat images of the six source generators, as matrices on r4 (x) r3."""
    i4 = identity(r4.dim)
    e1 = kron(r4.K, r3.E)
    f1 = kron(r4.F, r3.Kinv)
    k1 = kron(i4, r3.K) - 1j * kron(r4.K @ r4.F, r3.E)
    if abs(det(k1)) <= tol * max(1.0, float(np.abs(k1).max())) ** k1.shape[0]:
        raise InadmissibleError("crossing at localization locus")
    k1_inv = inv(k1)
    t = tensor_rep([r4, r3])
    one_k = k1_inv @ t.K
    return {
        "K1": k1,
        "1K": one_k,
        "E1": e1,
        "1E": t.E - e1 @ one_k,
        "F1": t.F - k1_inv @ f1,
        "1F": f1,
    }


def target_pair(x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL) -> tuple[ExtChar, ExtChar]:
    x4, x3 = crossing_step(1, [x1, x2], tol)
    return x4, x3


def rhat_images(x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL) -> dict[str, Matrix]:
    x4, x3 = target_pair(x1, x2, tol)
    return rhat_from_reps(simple_module(x4, tol), simple_module(x3, tol), tol)


def _solve(
    source: dict[str, Matrix], images: dict[str, Matrix], tol: float
) -> tuple[Matrix, float, float]:
    """Unique-up-to-scale c with c source[g] = images[g] c; returns (c, residual, gap)."""
    system = intertwiner_system(
        [source[g] for g in GENERATORS], [images[g] for g in GENERATORS]
    )
    vectors, s = nullspace(system, tol)
    smallest = s[-1]
    second = s[-2] if len(s) > 1 else np.inf
    if len(vectors) != 1:
        raise SolverError(
            f"braiding not unique/found: nullspace dimension {len(vectors)}, "
            f"smallest singular values {list(np.round(s[-3:], 14))}"
        )
    d = source["K1"].shape[0]
    c = unvec(vectors[0][:, 0], d, d)
    c = c / np.abs(c).max()
    residual = max(
        float(np.abs(c @ source[g] - images[g] @ c).max()) for g in GENERATORS
    )
    gap = float(second / max(smallest, 1e-300))
    return c, residual, gap


def _localization_margin(r4: Rep, r3: Rep) -> float:
    k1 = kron(identity(r4.dim), r3.K) - 1j * kron(r4.K @ r4.F, r3.E)
    return abs(det(k1)) / max(1.0, float(np.abs(k1).max())) ** k1.shape[0]


def crossing_evaluable(x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL) -> bool:
    """True when the crossing, its mirror on inverse characters and both R-hat maps are defined."""
    try:
        x4, x3 = target_pair(x1, x2, tol)
        y2, y1 = target_pair(x3.inverse(), x4.inverse(), tol)
        reps = [simple_module(x, tol) for x in (x4, x3, y2, y1)]
    except (InadmissibleError, SingularError):
        return False
    return min(_localization_margin(reps[0], reps[1]), _localization_margin(reps[2], reps[3])) > tol


def word_evaluable(word: BraidWord, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> bool:
    """True when every crossing of the word can be turned into a braiding cell."""
    xs = list(xs)
    try:
        for letter in word.letters:
            i = abs(letter) - 1
            if letter > 0:
                pair = (xs[i], xs[i + 1])
                xs = crossing_step(letter, xs, tol)
            else:
                xs = crossing_step(letter, xs, tol)
                pair = (xs[i], xs[i + 1])
            if not crossing_evaluable(*pair, tol=tol):
                return False
    except (InadmissibleError, SingularError):
        return False
    return True


def det_normalize(c: Matrix) -> Matrix:
    """Scale so that det c = 1, using the principal fourth root."""
    return c / principal_fourth_root(det(c))


@lru_cache(maxsize=8192)
def _solve_braiding_cached(x1: ExtChar, x2: ExtChar, tol: float) -> BraidingCell:
    x4, x3 = target_pair(x1, x2, tol)
    r1, r2 = simple_module(x1, tol), simple_module(x2, tol)
    images = rhat_from_reps(simple_module(x4, tol), simple_module(x3, tol), tol)
    c, residual, gap = _solve(source_generators(r1, r2), images, tol)
    c = det_normalize(c)
    return BraidingCell((x1, x2), (x4, x3), c, residual, gap)


def solve_braiding(x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL) -> BraidingCell:
    """The det-normalized holonomy braiding V(x1) (x) V(x2) -> V(x4) (x) V(x3)."""
    return _solve_braiding_cached(x1, x2, tol)


def dual_iso(x: ExtChar, tol: float = DEFAULT_TOL) -> Matrix:
    """An isomorphism V(chi, mu)* -> V(chi^-1, mu), found as a 1-dim intertwiner space."""
    src = dual_module(simple_module(x, tol))
    tgt = simple_module(x.inverse(), tol)
    system = intertwiner_system([src.K, src.E, src.F], [tgt.K, tgt.E, tgt.F])
    vectors, s = nullspace(system, tol)
    if len(vectors) != 1:
        raise SolverError(f"dual isomorphism not unique/found: {len(vectors)} solutions")
    return unvec(vectors[0][:, 0], 2, 2)


def _mirror_direct(x1: ExtChar, x2: ExtChar, tol: float) -> tuple[Matrix, float, float]:
    """Forward braiding of the duals V3* (x) V4* -> V2* (x) V1*, inverted and flipped."""
    x4, x3 = target_pair(x1, x2, tol)
    d1, d2, d3, d4 = (dual_module(simple_module(x, tol)) for x in (x1, x2, x3, x4))
    d, residual, gap = _solve(source_generators(d3, d4), rhat_from_reps(d2, d1, tol), tol)
    return SWAP @ inv(d) @ SWAP, residual, gap


def _mirror_via_isos(x1: ExtChar, x2: ExtChar, tol: float) -> tuple[Matrix, float, float]:
    """Transport the inverse-character braiding through V(chi, mu)* = V(chi^-1, mu)."""
    x4, x3 = target_pair(x1, x2, tol)
    e = solve_braiding(x3.inverse(), x4.inverse(), tol)
    expected = (x2.inverse(), x1.inverse())
    if any(a.chi.distance(b.chi) > 1e-6 * max(1.0, abs(b.chi.kappa)) for a, b in zip(e.target, expected)):
        raise SolverError("inverse characters do not close up the mirror crossing")
    f1, f2, f3, f4 = (dual_iso(x, tol) for x in (x1, x2, x3, x4))
    cbar = kron(inv(f4), inv(f3)) @ SWAP @ inv(e.c) @ SWAP @ kron(f1, f2)
    return cbar, e.residual, e.gap


@lru_cache(maxsize=8192)
def _mirror_cached(x1: ExtChar, x2: ExtChar, tol: float, route: str) -> BraidingCell:
    x4, x3 = target_pair(x1, x2, tol)
    if route == "isomorphism":
        cbar, residual, gap = _mirror_via_isos(x1, x2, tol)
    elif route == "direct":
        cbar, residual, gap = _mirror_direct(x1, x2, tol)
    else:
        raise ValueError(f"unknown mirror route {route!r}")
    return BraidingCell((x1, x2), (x4, x3), det_normalize(cbar), residual, gap)


def mirror_braiding(
    x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL, route: str = "isomorphism"
) -> BraidingCell:
    """Det-normalized mirror braiding V1* (x) V2* -> V4* (x) V3*.

    ``route="isomorphism"`` conjugates the inverse-character braiding by the
    isomorphisms V(chi, mu)* = V(chi^-1, mu); ``route="direct"`` solves on
    the dual modules themselves.  The two agree up to a fourth root of unity.
    """
    return _mirror_cached(x1, x2, tol, route)


def v0(xs: Sequence[ExtChar] | int) -> np.ndarray:
    """The vector (x)_j (|0><0| + |1><1|) in the order V_1 V_1* ... V_n V_n*."""
    n = xs if isinstance(xs, int) else len(xs)
    z = np.array([1, 0, 0, 1], dtype=complex)
    return kron_all([z.reshape(4, 1)] * n)[:, 0] if n else np.ones(1, dtype=complex)


def assemble_doubled(c: Matrix, cbar: Matrix) -> Matrix:
    """c (x) c-bar moved from (V V)(V* V*) to the interleaved (V V*)(V V*) order."""
    p = interleave_permutation(2)
    return p @ kron(c, cbar) @ p.T


def v0_projection(C: Matrix) -> tuple[complex, float]:
    """(alpha, residual) with C v0 = alpha v0 + residual part, for a two-strand cell."""
    v = v0(2)
    w = C @ v
    alpha = complex(np.vdot(v, w) / np.vdot(v, v))
    return alpha, float(np.linalg.norm(w - alpha * v))


@lru_cache(maxsize=8192)
def _doubled_cached(x1: ExtChar, x2: ExtChar, tol: float) -> DoubledCell:
    cell = solve_braiding(x1, x2, tol)
    mirror = mirror_braiding(x1, x2, tol)
    raw = assemble_doubled(cell.c, mirror.c)
    alpha, residual = v0_projection(raw)
    if abs(alpha) <= tol:
        raise SolverError("normalization failure")
    return DoubledCell(cell.source, cell.target, raw / alpha, alpha, residual / abs(alpha))


def doubled_braiding(x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL) -> DoubledCell:
    """The doubled cell C = c (x) c-bar on (V1 V1*) (x) (V2 V2*), rescaled so C v0 = v0.

    ``scale`` is the eigenvalue of the det-normalized product on v0, always a
    fourth root of unity; ``v0_residual`` is the relative size of the part of
    the image orthogonal to v0 before rescaling.
    """
    return _doubled_cached(x1, x2, tol)


def _embed(cell: Matrix, i: int, n: int, local: int) -> Matrix:
    """cell acting on factors i, i+1 (0-based) of n factors of dimension ``local``."""
    return kron_all([identity(local**i), cell, identity(local ** (n - i - 2))])


def _run_functor(word: BraidWord, xs: Sequence[ExtChar], cell_of, local: int, tol: float) -> Matrix:
    n = word.strands
    if len(xs) != n:
        raise ValueError(f"expected {n} extended characters, got {len(xs)}")
    xs = list(xs)
    total = identity(local**n)
    for pos, letter in enumerate(word.letters):
        i = abs(letter) - 1
        try:
            if letter > 0:
                block = cell_of(xs[i], xs[i + 1])
                xs = crossing_step(letter, xs, tol)
            else:
                xs = crossing_step(letter, xs, tol)
                block = inv(cell_of(xs[i], xs[i + 1]))
        except InadmissibleError as exc:
            raise InadmissibleError(f"inadmissible crossing at letter {pos + 1} (sigma {letter}): {exc}") from exc
        total = _embed(block, i, n, local) @ total
    return total


def functor_F(word: BraidWord, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> Matrix:
    """Image of a colored braid under F, well defined up to a power of i."""
    return _run_functor(word, xs, lambda a, b: solve_braiding(a, b, tol).c, 2, tol)


def functor_Fbar(word: BraidWord, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> Matrix:
    """Image under the mirror functor, acting on V_1* (x) ... (x) V_n*, up to a power of i."""
    return _run_functor(word, xs, lambda a, b: mirror_braiding(a, b, tol).c, 2, tol)


def functor_T(word: BraidWord, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> Matrix:
    """Image under the doubled functor on (V_1 V_1*) (x) ... (x) (V_n V_n*); no phase ambiguity."""
    return _run_functor(word, xs, lambda a, b: doubled_braiding(a, b, tol).C, 4, tol)


def final_characters(word: BraidWord, xs: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> list[ExtChar]:
    return star_trajectory(word, xs, tol)[-1]


def clear_caches() -> None:
    for fn in (_solve_braiding_cached, _mirror_cached, _doubled_cached):
        fn.cache_clear()


def crossing_operator(xs: Sequence[ExtChar], i: int, tol: float = DEFAULT_TOL) -> tuple[Matrix, list[ExtChar]]:
    """The det-normalized braiding of sigma_i on V(x_1) (x) ... (x) V(x_n) and the target tuple."""
    n = len(xs)
    cell = solve_braiding(xs[i - 1], xs[i], tol)
    target = crossing_step(i, xs, tol)
    return _embed(cell.c, i - 1, n, 2), target


def expand_in_span(images: Sequence[Matrix], basis: Sequence[Matrix]) -> tuple[Matrix, float]:
    """Row-vector coefficients M with images[k] = sum_l M[k, l] basis[l], and the fit residual."""
    b = np.column_stack([np.asarray(m).ravel() for m in basis])
    rows = []
    residual = 0.0
    for img in images:
        coeff, *_ = np.linalg.lstsq(b, np.asarray(img).ravel(), rcond=None)
        residual = max(residual, float(np.abs(b @ coeff - np.asarray(img).ravel()).max()))
        rows.append(coeff)
    return np.array(rows), residual


def schur_weyl_matrix(
    xs: Sequence[ExtChar], i: int, ftilde_sign: int = 1, tol: float = DEFAULT_TOL
) -> tuple[Matrix, float]:
    """Matrix of X -> c X c^-1 from the source beta span to the target beta span.

    Basis order per strand gap j is (beta_j^2, beta_j^1), matching the nice
    Burau coordinates.  Returns the matrix and the residual of the expansion.
    """
    from .uqi import clifford_family

    c, target = crossing_operator(xs, i, tol)
    src = clifford_family(xs, ftilde_sign, tol)
    tgt = clifford_family(target, ftilde_sign, tol)
    n = len(xs)
    order = [(nu, j) for j in range(1, n) for nu in (2, 1)]
    ci = inv(c)
    images = [c @ src.beta[key] @ ci for key in order]
    return expand_in_span(images, [tgt.beta[key] for key in order])


def gamma_operators(x1: ExtChar, x2: ExtChar, tol: float = DEFAULT_TOL) -> list[Matrix]:
    """The four operators on W(x1) (x) W(x2) whose joint kernel is the line of v0.

    W(x) = V(x) (x) V(x)*; the factor order is V1, V1*, V2, V2*, and each
    operator is a sum of products acting factorwise (duals by the dual module).
    """
    r1, r2 = simple_module(x1, tol), simple_module(x2, tol)
    d1, d2 = dual_module(r1), dual_module(r2)
    one = identity(2)

    def op(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
        return kron_all([a, b, c, d])

    g0 = op(r1.K, d1.K, r2.K, d2.K) - identity(16)
    g1 = op(r1.K, d1.Kinv, one, one) - op(r1.K @ r1.K, one, one, one)
    g2 = op(r1.E, d1.K, one, d2.K) + op(one, d1.E, one, d2.K)
    g3 = op(one, d1.Kinv, one, d2.F) - op(one, d1.Kinv, r2.F, d2.Kinv)
    return [g0, g1, g2, g3]
