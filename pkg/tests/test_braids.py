from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

import oracles
from artifact.braids import (
    BraidWord,
    act_colors_sl2,
    act_free,
    closure_components,
    evaluate_free,
    full_twist,
    stabilize_nonsingular,
    total_holonomy,
    writhe,
)
from artifact.errors import SingularError
from artifact.holonomy import random_sl2
from conftest import seeds


def random_word(rng, n, length):
    return BraidWord(n, tuple(int(s * i) for s, i in zip(rng.choice([-1, 1], length), rng.integers(1, n, length))))


def test_parse_and_format():
    w = BraidWord.parse("1 -2 1 -2")
    assert w.strands == 3 and w.letters == (1, -2, 1, -2)
    assert str(w) == "1 -2 1 -2"
    assert BraidWord.parse("", strands=1).letters == ()


def test_letter_range_validated():
    with pytest.raises(ValueError):
        BraidWord(2, (2,))
    with pytest.raises(ValueError):
        BraidWord(3, (0,))


def test_act_free_examples():
    assert act_free(BraidWord(2, ())) == [((1, 1),), ((2, 1),)]
    assert act_free(BraidWord(2, (1,))) == [((1, -1), (2, 1), (1, 1)), ((1, 1),)]
    assert act_free(BraidWord(2, (1, 1))) == [
        ((1, -1), (2, -1), (1, 1), (2, 1), (1, 1)),
        ((1, -1), (2, 1), (1, 1)),
    ]


@given(seeds)
def test_act_free_matches_oracle(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    w = random_word(rng, n, 6)
    ours = act_free(w)
    theirs = oracles.act_free(w.letters, n)
    assert [[(a - 1, e) for a, e in x] for x in ours] == theirs


def test_act_colors_generator_rule(rng):
    g1, g2 = random_sl2(rng), random_sl2(rng)
    out = act_colors_sl2(BraidWord(2, (1,)), [g1, g2])
    assert np.allclose(out[0], np.linalg.inv(g1) @ g2 @ g1)
    assert np.allclose(out[1], g1)


def test_identity_and_inverse_letters(rng):
    gs = [random_sl2(rng) for _ in range(3)]
    assert all(np.array_equal(a, b) for a, b in zip(act_colors_sl2(BraidWord(3, ()), gs), gs))
    back = act_colors_sl2(BraidWord(3, (-2, 2)), gs)
    assert max(np.abs(a - b).max() for a, b in zip(back, gs)) < 1e-12


@given(seeds)
def test_groupoid_functoriality(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    w1, w2 = random_word(rng, n, 4), random_word(rng, n, 4)
    gs = [random_sl2(rng, 0.7) for _ in range(n)]
    lhs = act_colors_sl2(w1 * w2, gs)
    rhs = act_colors_sl2(w2, act_colors_sl2(w1, gs))
    assert max(np.abs(a - b).max() for a, b in zip(lhs, rhs)) < 1e-8


@given(seeds)
def test_braid_relation_on_colors_and_words(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(3, 5))
    i = int(rng.integers(1, n - 1))
    lhs, rhs = BraidWord(n, (i, i + 1, i)), BraidWord(n, (i + 1, i, i + 1))
    assert act_free(lhs) == act_free(rhs)
    gs = [random_sl2(rng) for _ in range(n)]
    assert max(np.abs(a - b).max() for a, b in zip(act_colors_sl2(lhs, gs), act_colors_sl2(rhs, gs))) < 1e-9


@given(seeds)
def test_free_action_commutes_with_evaluation(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    w = random_word(rng, n, 5)
    gs = [random_sl2(rng, 0.7) for _ in range(n)]
    via_words = [evaluate_free(x, gs) for x in act_free(w)]
    direct = act_colors_sl2(w, gs)
    assert max(np.abs(a - b).max() / max(1, np.abs(b).max()) for a, b in zip(via_words, direct)) < 1e-9
    assert max(np.abs(a - b).max() / max(1, np.abs(b).max()) for a, b in zip(direct, oracles.act_colors(w.letters, gs))) < 1e-9


def test_closure_components():
    assert closure_components(BraidWord(3, ())) == [[1], [2], [3]]
    assert closure_components(BraidWord(2, (1, 1, 1))) == [[1, 2]]
    assert closure_components(BraidWord(2, (1, 1))) == [[1], [2]]
    assert closure_components(BraidWord(3, (1, -2, 1, -2))) == [[1, 2, 3]]


def test_writhe():
    assert writhe(BraidWord(2, ())) == 0
    assert writhe(BraidWord(2, (1, 1, 1))) == 3
    assert writhe(BraidWord(3, (1, -2))) == 0


def test_mirror_and_inverse():
    w = BraidWord(3, (1, -2, 2))
    assert w.mirror().letters == (-2, 1, -1)
    assert w.inverse().letters == (-2, 2, -1)
    assert full_twist(3).letters == (1, 2) * 3


def test_total_holonomy_examples(rng):
    g = random_sl2(rng)
    assert np.array_equal(total_holonomy([g]), g)
    assert np.allclose(total_holonomy([g, np.linalg.inv(g)]), np.eye(2))
    d = np.diag([4, 0.25])
    assert np.allclose(total_holonomy([d, d]), np.diag([16, 1 / 16]))


def test_stabilize_unchanged_when_nonsingular():
    d = np.diag([4, 0.25]).astype(complex)
    w = BraidWord(2, (1, 1, 1))
    w2, colors = stabilize_nonsingular(w, [d, d])
    assert w2 == w and len(colors) == 2
    assert np.trace(total_holonomy(colors)) == pytest.approx(16.0625)


def test_stabilize_appends_kink(rng):
    g = random_sl2(rng)
    w2, colors = stabilize_nonsingular(BraidWord(2, ()), [g, np.linalg.inv(g)])
    assert w2 == BraidWord(3, (2,))
    assert np.allclose(colors[2], colors[1])
    assert abs(np.trace(total_holonomy(colors)) - 2) > 1e-6
    assert np.allclose(act_colors_sl2(w2, colors)[2], colors[2])


def test_stabilize_rejects_singular_meridian():
    with pytest.raises(SingularError, match="singular meridian"):
        stabilize_nonsingular(BraidWord(1, ()), [np.array([[1, 1], [0, 1]], complex)])
