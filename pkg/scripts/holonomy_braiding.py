"""Holonomy braidings between simple modules.

Solves for the braiding of a random admissible crossing, reports the
nullspace gap and intertwining residual, checks the colored Yang-Baxter
relation and the Schur-Weyl identity against the nice-basis Burau block.
"""

from __future__ import annotations

import numpy as np

from artifact.braids import BraidWord
from artifact.braiding import functor_T, schur_weyl_matrix, solve_braiding
from artifact.burau import nice_block
from artifact.holonomy import crossing_step, random_crossing, random_ext_char
from artifact.numerics import max_abs


def main() -> None:
    rng = np.random.default_rng(2)
    x1, x2 = random_crossing(rng)
    cell = solve_braiding(x1, x2)
    print(f"gap ratio {cell.gap:.2e}, intertwiner residual {cell.residual:.2e}")

    m, residual = schur_weyl_matrix([x1, x2], 1, ftilde_sign=-1)
    block = nice_block(2, 1, [x.chi for x in crossing_step(1, [x1, x2])])
    print("Schur-Weyl: span residual", residual, " difference from Burau block", max_abs(m - block))

    while True:
        xs = [random_ext_char(rng) for _ in range(3)]
        try:
            lhs = functor_T(BraidWord(3, (1, 2, 1)), xs)
            rhs = functor_T(BraidWord(3, (2, 1, 2)), xs)
            break
        except ArithmeticError:
            continue
    print("doubled Yang-Baxter defect:", max_abs(lhs - rhs))


if __name__ == "__main__":
    main()
