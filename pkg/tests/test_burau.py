from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

import oracles
from artifact.braids import BraidWord, act_colors_sl2, total_holonomy
from artifact.burau import (
    burau_boundary,
    burau_nice,
    burau_reduced,
    nice_block,
    nice_change_of_basis,
    torsion,
)
from artifact.errors import ClosureError, DimensionError, SingularError
from artifact.holonomy import (
    ExtChar,
    StarChar,
    act_colors_star,
    default_mu,
    defactorize_tuple,
    gauge_transform,
    random_ext_char,
    random_sl2,
)
from artifact.invariants import sample_closure_colors
from artifact.numerics import det, inv, max_abs
from conftest import seeds

D4 = np.diag([4, 0.25]).astype(complex)
TREFOIL = BraidWord(2, (1, 1, 1))
FIGURE_EIGHT = BraidWord(3, (1, -2, 1, -2))


def test_identity_word():
    gs = [random_sl2(np.random.default_rng(1)) for _ in range(3)]
    for fn in (burau_reduced, burau_boundary):
        assert np.array_equal(fn(BraidWord(3, ()), gs).matrix, np.eye(4))
    xs = [random_ext_char(np.random.default_rng(2)) for _ in range(3)]
    assert np.array_equal(burau_nice(BraidWord(3, ()), xs).matrix, np.eye(4))


def test_boundary_single_crossing_diagonal():
    m = burau_boundary(BraidWord(2, (1,)), [D4, D4]).matrix
    assert np.allclose(m, -np.diag([0.25, 4]))


def test_trefoil_reduced_determinant():
    m = burau_reduced(TREFOIL, [D4, D4])
    assert m.det_one_minus() == pytest.approx(4225 / 64)


def test_one_strand_rejected():
    with pytest.raises(DimensionError):
        burau_reduced(BraidWord(1, ()), [D4])


@given(seeds)
def test_colored_braid_relations(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 5))
    i = int(rng.integers(1, n - 1))
    lhs, rhs = BraidWord(n, (i, i + 1, i)), BraidWord(n, (i + 1, i, i + 1))
    gs = [random_sl2(rng) for _ in range(n)]
    for fn in (burau_reduced, burau_boundary):
        assert max_abs(fn(lhs, gs).matrix - fn(rhs, gs).matrix) < 1e-9 * max(1, max_abs(fn(lhs, gs).matrix))
    xs = [random_ext_char(rng) for _ in range(n)]
    try:
        a, b = burau_nice(lhs, xs).matrix, burau_nice(rhs, xs).matrix
    except ArithmeticError:
        return
    assert max_abs(a - b) < 1e-9 * max(1, max_abs(a))


@given(seeds)
def test_inverse_letters_cancel(seed):
    rng = np.random.default_rng(seed)
    gs = [random_sl2(rng) for _ in range(3)]
    for fn in (burau_reduced, burau_boundary):
        assert max_abs(fn(BraidWord(3, (2, -2, -1, 1)), gs).matrix - np.eye(4)) < 1e-9


def _closure(word, seed, abelian=False):
    return sample_closure_colors(word, np.random.default_rng(seed), abelian=abelian)


@pytest.mark.parametrize(
    "word",
    [TREFOIL, FIGURE_EIGHT, BraidWord(3, (1, 2, 1, 2)), BraidWord(4, (1, -2, 3, -2, 1, -2, 3))],
    ids=str,
)
def test_torsion_matches_fox_calculus(word):
    for seed in range(3):
        gs = _closure(word, seed)
        ours = torsion(word, gs)
        theirs = oracles.wada_torsion(word.letters, gs)
        assert abs(abs(ours) - abs(theirs)) <= 1e-8 * abs(theirs)
        assert min(abs(ours - theirs), abs(ours + theirs)) <= 1e-8 * abs(theirs)


@pytest.mark.parametrize("word", [BraidWord(2, (1, 1)), BraidWord(3, (1, 1, 2, 2))], ids=str)
def test_torsion_matches_fox_calculus_abelian(word):
    # these closures have abelian link groups, so only abelian colorings exist
    for seed in range(3):
        gs = _closure(word, seed, abelian=True)
        ours = torsion(word, gs)
        theirs = oracles.wada_torsion(word.letters, gs)
        assert abs(abs(ours) - abs(theirs)) <= 1e-8 * abs(theirs)
        assert min(abs(ours - theirs), abs(ours + theirs)) <= 1e-8 * abs(theirs)


@pytest.mark.parametrize("word", [TREFOIL, FIGURE_EIGHT, BraidWord(2, (1, 1))], ids=str)
def test_boundary_and_reduced_torsion_agree(word):
    gs = _closure(word, 11, abelian=word.strands == 2 and word.letters == (1, 1))
    h = total_holonomy(gs)
    lhs = burau_boundary(word, gs).det_one_minus() / det(np.eye(2) - h)
    rhs = burau_reduced(word, gs).det_one_minus() / det(np.eye(2) - inv(h))
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs)


@given(seeds)
def test_nice_basis_conjugacy(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    xs = [random_ext_char(rng) for _ in range(n)]
    letters = tuple(int(s * i) for s, i in zip(rng.choice([-1, 1], 3), rng.integers(1, n, 3)))
    word = BraidWord(n, letters)
    try:
        target = act_colors_star(word, xs)
        nice = burau_nice(word, xs).matrix
    except ArithmeticError:
        return
    gs = defactorize_tuple([x.chi for x in xs])
    reduced = burau_reduced(word, gs).matrix
    q_src = nice_change_of_basis([x.chi for x in xs])
    q_tgt = nice_change_of_basis([x.chi for x in target])
    expected = q_src @ reduced @ inv(q_tgt)
    assert max_abs(nice - expected) < 1e-9 * max(1.0, max_abs(expected))


def test_nice_charpoly_matches_reduced_on_closure():
    gs = _closure(FIGURE_EIGHT, 5)
    from artifact.holonomy import factorize_tuple

    xs = [ExtChar(a, default_mu(a)) for a in factorize_tuple(gs)]
    nice = burau_nice(FIGURE_EIGHT, xs).matrix
    reduced = burau_reduced(FIGURE_EIGHT, gs).matrix
    assert np.allclose(np.poly(nice), np.poly(reduced), rtol=1e-8, atol=1e-8)


def test_quantum_burau_display_under_characters():
    # the displayed R-hat matrix on the beta span, with K^-2, F^2, E^2, K^2 replaced by scalars
    rng = np.random.default_rng(8)
    chars = [random_ext_char(rng).chi for _ in range(4)]
    i = 2
    k_i, f_i = chars[i - 1].kappa, chars[i - 1].phi / chars[i - 1].kappa
    e_n, k_n = chars[i].epsilon, chars[i].kappa
    shown = np.array(
        [
            [1, 0, 1 / k_i, -f_i, 0, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 0, -1 / k_i, f_i, 0, 0],
            [0, 0, -e_n, -k_n, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [0, 0, e_n, k_n, 0, 1],
        ]
    )
    assert max_abs(nice_block(4, i, chars) - shown) < 1e-12


def test_torsion_known_values():
    assert torsion(BraidWord(1, ()), [D4]) == pytest.approx(-4 / 9)
    assert torsion(TREFOIL, [D4, D4]) == pytest.approx(-4225 / 900)


def test_torsion_errors():
    rng = np.random.default_rng(0)
    with pytest.raises(ClosureError, match="not a colored closure"):
        torsion(TREFOIL, [random_sl2(rng), random_sl2(rng)])
    g = random_sl2(rng)
    with pytest.raises(SingularError, match="singular total holonomy"):
        torsion(BraidWord(2, ()), [g, inv(g)], auto_stabilize=False)
    assert np.isfinite(torsion(BraidWord(2, ()), [g, inv(g)]))


def test_torsion_gauge_invariance():
    gs = _closure(TREFOIL, 4)
    base = torsion(TREFOIL, gs)
    rng = np.random.default_rng(9)
    for _ in range(20):
        moved = torsion(TREFOIL, gauge_transform(gs, random_sl2(rng)))
        assert min(abs(moved - base), abs(moved + base)) < 1e-8 * abs(base)


@pytest.mark.parametrize("word", [TREFOIL, FIGURE_EIGHT], ids=str)
def test_torsion_markov_stabilization(word):
    gs = _closure(word, 6)
    base = torsion(word, gs)
    stab = torsion(word.stabilized(), gs + [gs[-1]])
    assert min(abs(stab - base), abs(stab + base)) < 1e-8 * abs(base)
    closed = act_colors_sl2(word.stabilized(), gs + [gs[-1]])
    assert max(max_abs(a - b) for a, b in zip(closed, gs + [gs[-1]])) < 1e-9
