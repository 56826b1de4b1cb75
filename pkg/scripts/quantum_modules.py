"""Two-dimensional weight modules of the quantum group at q = i.

Builds the simple module of a random character, checks its defining
relations and Casimir value, then verifies the Clifford relations of the
alpha operators on a three-fold tensor product.
"""

from __future__ import annotations

import numpy as np

from artifact.holonomy import random_ext_char
from artifact.numerics import anticommutator, max_abs
from artifact.uqi import clifford_family, dual_module, is_intertwiner, p0_iso, p0_module, simple_module, tensor_rep


def main() -> None:
    rng = np.random.default_rng(1)
    x = random_ext_char(rng)
    r = simple_module(x)
    print("character:", x.chi, " mu =", x.mu)
    print("relation residual:", r.relation_residual())
    print("Casimir minus omega * 1:", max_abs(r.casimir() - x.omega * np.eye(2)))

    f = p0_iso(x)
    target = tensor_rep([r, dual_module(r)])
    print("P0 -> V (x) V* intertwiner residual:", is_intertwiner(f, p0_module(), target))

    xs = [random_ext_char(rng) for _ in range(3)]
    fam = clifford_family(xs)
    cross = max(
        max_abs(anticommutator(fam.a(nu, j), fam.a(mu, k)))
        for j in range(1, 4)
        for k in range(1, 4)
        if j != k
        for nu in (1, 2)
        for mu in (1, 2)
    )
    print("largest anticommutator between different factors:", cross)


if __name__ == "__main__":
    main()
