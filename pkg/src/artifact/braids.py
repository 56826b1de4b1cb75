"""Braid words and the two actions of the braid group used throughout.

Braids compose left to right.  The generator sigma_i acts on the free group by
``x_i -> x_i^-1 x_{i+1} x_i``, ``x_{i+1} -> x_i`` and on color tuples by the
matching Wirtinger rule ``(g_i, g_{i+1}) -> (g_i^-1 g_{i+1} g_i, g_i)``.
Generator indices are 1-based in public data and 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, SingularError
from .numerics import Matrix, as_matrix, identity, inv

FreeWord = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class BraidWord:
    """A braid on ``strands`` strands; ``letters`` are signed 1-based generator indices."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        letters = tuple(int(x) for x in self.letters)
        for pos, x in enumerate(letters):
            if x == 0 or abs(x) > self.strands - 1:
                raise ValueError(
                    f"letter {x} at position {pos} out of range for {self.strands} strands"
                )
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        """Parse whitespace-separated signed integers, e.g. ``"1 -2 1 -2"``."""
        letters = tuple(int(tok) for tok in text.split())
        if strands is None:
            strands = max((abs(x) for x in letters), default=0) + 1
        return cls(strands, letters)

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError("cannot compose braids on different strand counts")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def mirror(self) -> "BraidWord":
        """Reflect strand order and crossing signs: sigma_i -> sigma_{n-i}^-1."""
        n = self.strands
        return BraidWord(n, tuple((-1 if x > 0 else 1) * (n - abs(x)) for x in self.letters))

    def stabilized(self, positive: bool = True) -> "BraidWord":
        """Markov stabilization: one more strand and a final sigma_n^(+-1)."""
        n = self.strands
        return BraidWord(n + 1, self.letters + ((n if positive else -n),))

    def permutation(self) -> list[int]:
        """perm[k] = final position (0-based) of the strand starting at position k."""
        where = list(range(self.strands))  # where[pos] = strand at pos
        for x in self.letters:
            i = abs(x) - 1
            where[i], where[i + 1] = where[i + 1], where[i]
        perm = [0] * self.strands
        for pos, strand in enumerate(where):
            perm[strand] = pos
        return perm


def full_twist(strands: int) -> BraidWord:
    """The positive full twist (sigma_1 ... sigma_{n-1})^n."""
    return BraidWord(strands, tuple(range(1, strands)) * strands)


def _reduce(word: list[tuple[int, int]]) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    for gen, exp in word:
        if out and out[-1][0] == gen and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((gen, exp))
    return out


def free_inverse(word: Sequence[tuple[int, int]]) -> FreeWord:
    return tuple((g, -e) for g, e in reversed(word))


def act_free(word: BraidWord) -> list[FreeWord]:
    """The images ``(x_1 . beta, ..., x_n . beta)`` as reduced free words."""
    images: list[list[tuple[int, int]]] = [[(j, 1)] for j in range(1, word.strands + 1)]
    for x in word.letters:
        i = abs(x) - 1
        a, b = images[i], images[i + 1]
        if x > 0:
            images[i], images[i + 1] = _reduce(list(free_inverse(a)) + b + a), a
        else:
            images[i], images[i + 1] = b, _reduce(b + a + list(free_inverse(b)))
    return [tuple(w) for w in images]


def evaluate_free(word: Sequence[tuple[int, int]], colors: Sequence[Matrix]) -> Matrix:
    """Substitute ``x_j -> colors[j-1]`` into a free word."""
    out = identity(2)
    for gen, exp in word:
        g = as_matrix(colors[gen - 1])
        out = out @ (g if exp > 0 else inv(g))
    return out


def _check_colors(word: BraidWord, colors: Sequence[object]) -> list[Matrix]:
    if len(colors) != word.strands:
        raise DimensionError(f"expected {word.strands} colors, got {len(colors)}")
    out = [as_matrix(g) for g in colors]
    for g in out:
        if g.shape != (2, 2):
            raise DimensionError("colors must be 2x2 matrices")
    return out


def act_colors_sl2(word: BraidWord, colors: Sequence[Matrix]) -> list[Matrix]:
    """Push a color tuple through the braid, letter by letter."""
    gs = _check_colors(word, colors)
    for x in word.letters:
        i = abs(x) - 1
        a, b = gs[i], gs[i + 1]
        if x > 0:
            gs[i], gs[i + 1] = inv(a) @ b @ a, a
        else:
            gs[i], gs[i + 1] = b, b @ a @ inv(b)
    return gs


def color_trajectory(word: BraidWord, colors: Sequence[Matrix]) -> list[list[Matrix]]:
    """Color tuples before the first letter and after each letter."""
    traj = [_check_colors(word, colors)]
    for x in word.letters:
        traj.append(act_colors_sl2(BraidWord(word.strands, (x,)), traj[-1]))
    return traj


def closure_components(word: BraidWord) -> list[list[int]]:
    """Cycles of the braid permutation (1-based), ordered by least strand index."""
    perm = word.permutation()
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in range(word.strands):
        if start in seen:
            continue
        cycle = []
        k = start
        while k not in seen:
            seen.add(k)
            cycle.append(k + 1)
            k = perm[k]
        comps.append(sorted(cycle))
    return comps


def writhe(word: BraidWord) -> int:
    return int(sum(1 if x > 0 else -1 for x in word.letters))


def total_holonomy(colors: Sequence[Matrix]) -> Matrix:
    """The ordered product g_n ... g_1."""
    h = identity(2)
    for g in colors:
        h = as_matrix(g) @ h
    return h


def is_nonsingular(g: Matrix, tol: float = 1e-9) -> bool:
    return abs(np.trace(as_matrix(g)) - 2) > tol


def stabilize_nonsingular(
    word: BraidWord, colors: Sequence[Matrix], tol: float = 1e-9
) -> tuple[BraidWord, list[Matrix]]:
    """Append positive stabilizations until the total holonomy has trace != 2.

    Each stabilization duplicates the last color.  By the trace identity
    tr(g^2 h) + tr(h) = tr(g) tr(g h), two steps always suffice when the
    meridians themselves are nonsingular.
    """
    gs = _check_colors(word, colors)
    for g in gs:
        if not is_nonsingular(g, tol):
            raise SingularError("singular meridian")
    for _ in range(3):
        if is_nonsingular(total_holonomy(gs), tol):
            return word, gs
        word = word.stabilized()
        gs = gs + [gs[-1].copy()]
    raise SingularError("singular total holonomy")
