"""Twisted Burau matrices and the Reidemeister torsion of colored braid closures.

Matrices act on row vectors, so a braid word multiplies its letter blocks
left to right.  Only SL2 colors are supported, so every block entry is 2x2
and a braid on n strands gives a 2(n-1) x 2(n-1) matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .braids import (
    BraidWord,
    act_colors_sl2,
    color_trajectory,
    stabilize_nonsingular,
    total_holonomy,
)
from .errors import ClosureError, DimensionError, SingularError
from .holonomy import ExtChar, StarChar, crossing_step
from .numerics import DEFAULT_TOL, Matrix, as_matrix, det, identity, inv

__all__ = [
    "BurauMatrix",
    "burau_boundary",
    "burau_reduced",
    "burau_nice",
    "nice_block",
    "nice_change_of_basis",
    "total_holonomy",
    "is_closure",
    "torsion",
]


@dataclass(frozen=True)
class BurauMatrix:
    matrix: Matrix
    source: tuple
    target: tuple
    variant: str

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def det_one_minus(self) -> complex:
        return det(identity(self.size) - self.matrix)


def _require_strands(word: BraidWord) -> None:
    if word.strands < 2:
        raise DimensionError("Burau matrices need at least two strands")


def _slot(j: int) -> slice:
    """Rows/columns of block j (1-based, 1 <= j <= n-1)."""
    return slice(2 * (j - 1), 2 * j)


def _reduced_block(n: int, i: int, after: Sequence[Matrix]) -> Matrix:
    # column i carries (I, -X, X) in rows (i-1, i, i+1); X is the dual-twisted
    # meridian x_{i+1} of the target colors
    x = inv(after[i]).T
    m = identity(2 * (n - 1))
    m[_slot(i), _slot(i)] = -x
    if i - 1 >= 1:
        m[_slot(i - 1), _slot(i)] = identity(2)
    if i + 1 <= n - 1:
        m[_slot(i + 1), _slot(i)] = x
    return m


def _boundary_block(n: int, i: int, before: Sequence[Matrix]) -> Matrix:
    # row i reads (I, -X, X) in columns (i-1, i, i+1) with X = rho(y_{i-1} y_i^-1)
    x = inv(before[i - 1])
    m = identity(2 * (n - 1))
    m[_slot(i), _slot(i)] = -x
    if i - 1 >= 1:
        m[_slot(i), _slot(i - 1)] = identity(2)
    if i + 1 <= n - 1:
        m[_slot(i), _slot(i + 1)] = x
    return m


def burau_reduced(word: BraidWord, colors: Sequence[Matrix]) -> BurauMatrix:
    """Locally finite reduced Burau matrix twisted by the dual representation."""
    _require_strands(word)
    n = word.strands
    traj = color_trajectory(word, colors)
    m = identity(2 * (n - 1))
    for k, letter in enumerate(word.letters):
        i = abs(letter)
        if letter > 0:
            block = _reduced_block(n, i, traj[k + 1])
        else:
            block = inv(_reduced_block(n, i, traj[k]))
        m = m @ block
    return BurauMatrix(m, tuple(traj[0]), tuple(traj[-1]), "reduced")


def burau_boundary(word: BraidWord, colors: Sequence[Matrix]) -> BurauMatrix:
    """Boundary-reduced Burau matrix.

    The letter blocks are maps from the local system of the target colors
    back to that of the source colors, so the word is composed in reverse
    letter order; the result is the transpose of ``burau_reduced``.
    """
    _require_strands(word)
    n = word.strands
    traj = color_trajectory(word, colors)
    m = identity(2 * (n - 1))
    for k, letter in enumerate(word.letters):
        i = abs(letter)
        if letter > 0:
            block = _boundary_block(n, i, traj[k])
        else:
            block = inv(_boundary_block(n, i, traj[k + 1]))
        m = block @ m
    return BurauMatrix(m, tuple(traj[0]), tuple(traj[-1]), "boundary")


def nice_block(n: int, i: int, target: Sequence[StarChar]) -> Matrix:
    """Generator block of sigma_i in the nice basis, in target coordinates."""
    k, _, f = target[i - 1].as_tuple()
    k2, e2, _ = target[i].as_tuple()
    full = np.array(
        [
            [1, 0, 1 / k, -f / k, 0, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 0, -1 / k, f / k, 0, 0],
            [0, 0, -e2, -k2, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [0, 0, e2, k2, 0, 1],
        ],
        dtype=complex,
    )
    m = identity(2 * (n - 1))
    present = [j for j in (i - 1, i, i + 1) if 1 <= j <= n - 1]
    local = {i - 1: [0, 1], i: [2, 3], i + 1: [4, 5]}
    glob = [r for j in present for r in (2 * (j - 1), 2 * j - 1)]
    loc = [r for j in present for r in local[j]]
    m[np.ix_(glob, glob)] = full[np.ix_(loc, loc)]
    return m


def burau_nice(word: BraidWord, star: Sequence[ExtChar], tol: float = DEFAULT_TOL) -> BurauMatrix:
    """Reduced Burau matrix written in the nice basis attached to SL2* coordinates."""
    _require_strands(word)
    n = word.strands
    xs = list(star)
    source = tuple(xs)
    m = identity(2 * (n - 1))
    for letter in word.letters:
        i = abs(letter)
        if letter > 0:
            xs = crossing_step(letter, xs, tol)
            block = nice_block(n, i, [x.chi for x in xs])
        else:
            block = inv(nice_block(n, i, [x.chi for x in xs]))
            xs = crossing_step(letter, xs, tol)
        m = m @ block
    return BurauMatrix(m, source, tuple(xs), "nice")


def nice_change_of_basis(chars: Sequence[StarChar]) -> Matrix:
    """Block-diagonal Q with blocks (a_1+ ... a_j+)^T, j = 1..n-1.

    burau_nice(beta) = Q(source) burau_reduced(beta) Q(target)^-1.
    """
    n = len(chars)
    q = identity(2 * (n - 1))
    prefix = identity(2)
    for j in range(1, n):
        prefix = prefix @ chars[j - 1].plus
        q[_slot(j), _slot(j)] = prefix.T
    return q


def is_closure(word: BraidWord, colors: Sequence[Matrix], tol: float = 1e-8) -> bool:
    out = act_colors_sl2(word, colors)
    scale = max(1.0, max(float(np.abs(as_matrix(g)).max()) for g in colors))
    return all(np.abs(a - as_matrix(b)).max() <= tol * scale for a, b in zip(out, colors))


def torsion(
    word: BraidWord,
    colors: Sequence[Matrix],
    auto_stabilize: bool = True,
    tol: float = DEFAULT_TOL,
) -> complex:
    """det(1 - B(beta)) / det(1 - h^-1) for the closure; defined up to sign."""
    colors = [as_matrix(g) for g in colors]
    if len(colors) != word.strands:
        raise DimensionError(f"expected {word.strands} colors, got {len(colors)}")
    if not is_closure(word, colors, max(tol, 1e-8)):
        raise ClosureError("not a colored closure")
    h = total_holonomy(colors)
    if abs(np.trace(h) - 2) <= tol:
        if not auto_stabilize:
            raise SingularError("singular total holonomy")
        word, colors = stabilize_nonsingular(word, colors, tol)
        h = total_holonomy(colors)
    numerator = burau_reduced(word, colors).det_one_minus() if word.strands > 1 else 1.0 + 0j
    return numerator / det(identity(2) - inv(h))
