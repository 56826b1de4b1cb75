"""Twisted Burau matrices and torsion of colored braid closures.

Colors the trefoil by the diagonal t = 4 representation, prints the reduced
Burau matrix and its torsion, then repeats with a non-abelian coloring and
checks that conjugating every color leaves the torsion unchanged up to sign.
"""

from __future__ import annotations

import numpy as np

from artifact import BraidWord, burau_reduced, torsion
from artifact.holonomy import gauge_transform, random_sl2
from artifact.invariants import sample_closure_colors


def main() -> None:
    trefoil = BraidWord.parse("1 1 1")
    d4 = np.diag([4, 0.25]).astype(complex)
    b = burau_reduced(trefoil, [d4, d4])
    print("reduced Burau matrix of the trefoil at t = 4:")
    print(np.round(b.matrix, 6))
    print("det(1 - B) =", b.det_one_minus())
    print("torsion    =", torsion(trefoil, [d4, d4]), "(expected -4225/900 =", -4225 / 900, ")")

    rng = np.random.default_rng(0)
    colors = sample_closure_colors(trefoil, rng)
    tau = torsion(trefoil, colors)
    moved = torsion(trefoil, gauge_transform(colors, random_sl2(rng)))
    print("\nnon-abelian coloring: torsion =", tau)
    print("after a random gauge:          ", moved)


if __name__ == "__main__":
    main()
