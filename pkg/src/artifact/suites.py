"""Randomized verification suites behind ``holotor verify``.

Each suite draws ``trials`` random instances from a seeded generator and
returns the largest residual seen together with its pass threshold.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .braids import BraidWord, act_colors_sl2
from .braiding import doubled_braiding, schur_weyl_matrix, solve_braiding
from .burau import burau_boundary, burau_nice, burau_reduced, nice_block
from .holonomy import (
    ExtChar,
    biquandle_B,
    crossing_step,
    random_crossing,
    random_ext_char,
    random_sl2,
)
from .invariants import LinkSpec, sample_closure_colors, verify_theorem
from .numerics import anticommutator, commutator, max_abs
from .uqi import clifford_family, simple_module, tensor_rep


@dataclass
class SuiteResult:
    suite: str
    trials: int
    max_residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.max_residual < self.threshold)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def _random_tuple(rng: np.random.Generator, n: int) -> list[ExtChar]:
    # build from SL2 colors so long words stay admissible with high probability
    while True:
        xs = [random_ext_char(rng) for _ in range(n)]
        if all(abs(x.omega) > 0.2 for x in xs):
            return xs


def braid_relations(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(3, 5))
        i = int(rng.integers(1, n - 1))
        lhs = BraidWord(n, (i, i + 1, i))
        rhs = BraidWord(n, (i + 1, i, i + 1))
        gs = [random_sl2(rng) for _ in range(n)]
        a, b = act_colors_sl2(lhs, gs), act_colors_sl2(rhs, gs)
        worst = max(worst, max(max_abs(x - y) for x, y in zip(a, b)))
        for fn in (burau_reduced, burau_boundary):
            worst = max(worst, max_abs(fn(lhs, gs).matrix - fn(rhs, gs).matrix))
        xs = _random_tuple(rng, n)
        worst = max(worst, max_abs(burau_nice(lhs, xs).matrix - burau_nice(rhs, xs).matrix))
    return SuiteResult("braid-relations", trials, worst, 1e-9)


def biquandle_ybe(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        xs = _random_tuple(rng, 3)
        a = [x.chi for x in xs]
        b = list(a)
        for pos in (0, 1, 0):
            a[pos], a[pos + 1] = biquandle_B(a[pos], a[pos + 1])
        for pos in (1, 0, 1):
            b[pos], b[pos + 1] = biquandle_B(b[pos], b[pos + 1])
        scale = max(1.0, max(abs(v) for c in a for v in c.as_tuple()))
        worst = max(worst, max(p.distance(q) for p, q in zip(a, b)) / scale)
    return SuiteResult("biquandle-ybe", trials, worst, 1e-8)


def schur_weyl(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        x1, x2 = random_crossing(rng)
        target = crossing_step(1, [x1, x2])
        m, residual = schur_weyl_matrix([x1, x2], 1, ftilde_sign=-1)
        expected = nice_block(2, 1, [x.chi for x in target])
        worst = max(worst, residual, max_abs(m - expected))
    return SuiteResult("schur-weyl", trials, worst, 1e-9)


def clifford(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 5))
        xs = _random_tuple(rng, n)
        fam = clifford_family(xs)
        big = tensor_rep([simple_module(x) for x in xs])
        ks = [simple_module(x).K for x in xs]
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for nu in (1, 2):
                    for nu2 in (1, 2):
                        ac = anticommutator(fam.a(nu, j), fam.a(nu2, k))
                        if j != k:
                            worst = max(worst, max_abs(ac))
            prefix = np.eye(1)
            for kk in ks[: j - 1]:
                prefix = np.kron(prefix, kk @ kk)
            x = xs[j - 1]
            kj = ks[j - 1]
            rest = np.eye(2 ** (n - j))
            expected = np.kron(np.kron(prefix, 2 * (kj @ kj - np.eye(2)) / x.omega**2), rest)
            worst = max(worst, max_abs(anticommutator(fam.a(1, j), fam.a(2, j)) - expected))
        ft = big.ftilde()
        omega = big.casimir()
        for key, b in fam.beta.items():
            worst = max(
                worst,
                max_abs(anticommutator(big.K, b)),
                max_abs(commutator(big.E, b)),
                max_abs(commutator(ft, b)),
                max_abs(anticommutator(omega, b)),
            )
    return SuiteResult("clifford", trials, worst, 1e-9)


def braiding_residuals(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    for _ in range(trials):
        x1, x2 = random_crossing(rng)
        cell = solve_braiding(x1, x2)
        gap_penalty = 0.0 if cell.gap > 1e6 else 1.0
        doubled = doubled_braiding(x1, x2)
        worst = max(worst, cell.residual, gap_penalty, doubled.v0_residual)
    return SuiteResult("braiding-residuals", trials, worst, 1e-9)


def torsion_theorem(trials: int, rng: np.random.Generator) -> SuiteResult:
    worst = 0.0
    links = [
        (BraidWord(2, (1, 1, 1)), False),
        (BraidWord(3, (1, -2, 1, -2)), False),
        (BraidWord(2, (1, 1)), True),
    ]
    for t in range(trials):
        word, abelian = links[t % len(links)]
        colors = sample_closure_colors(word, rng, abelian=abelian)
        report = verify_theorem(LinkSpec(word, colors), trials=1, seed=int(rng.integers(2**31)))
        worst = max(worst, report["max_relative_deviation"], report["max_signed_error"])
    return SuiteResult("torsion-theorem", trials, worst, 1e-6)


SUITES: dict[str, Callable[[int, np.random.Generator], SuiteResult]] = {
    "braid-relations": braid_relations,
    "biquandle-ybe": biquandle_ybe,
    "schur-weyl": schur_weyl,
    "clifford": clifford,
    "braiding-residuals": braiding_residuals,
    "torsion-theorem": torsion_theorem,
}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](trials, np.random.default_rng(seed))
