import random
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from urnwalk.urn import (
    BLUE,
    WHITE,
    UrnError,
    UrnScheme,
    apply_draw,
    blue_probability,
    new_urn,
    sample_draw,
    sequence_probability,
    white_probability,
)

POLYA = UrnScheme.polya()
FRIEDMAN = UrnScheme.friedman()
COIN = UrnScheme.bernoulli()


class FixedVariate:
    def __init__(self, *values):
        self.values = list(values)

    def random(self):
        return self.values.pop(0)


def test_new_urn_compositions():
    u = new_urn(POLYA, 1, 1)
    assert (u.whites, u.blues, u.white_draws, u.blue_draws) == (1, 1, 0, 0)
    u = new_urn(FRIEDMAN, 1, 0)
    assert (u.whites, u.blues) == (1, 0)


@pytest.mark.parametrize("scheme,w,b", [
    (POLYA, 1, 0), (POLYA, 0, 2), (POLYA, -1, 1), (FRIEDMAN, 0, 0), (FRIEDMAN, -1, 2),
    (COIN, 1, -1),
])
def test_new_urn_rejects(scheme, w, b):
    with pytest.raises(UrnError):
        new_urn(scheme, w, b)


def test_bernoulli_probability_range():
    with pytest.raises(UrnError):
        UrnScheme.bernoulli(Fraction(3, 2))
    with pytest.raises(UrnError):
        UrnScheme.parse("hypergeometric")


def test_white_probability_examples():
    assert white_probability(new_urn(POLYA, 1, 1)) == Fraction(1, 2)
    assert white_probability(new_urn(FRIEDMAN, 1, 0)) == 1
    u = new_urn(POLYA, 1, 1)
    for c in (WHITE, WHITE, BLUE):
        u = apply_draw(u, c)
    assert white_probability(u) == Fraction(3, 5)
    assert white_probability(new_urn(UrnScheme.bernoulli(Fraction(1, 3)), 1, 1)) == Fraction(1, 3)


def test_apply_draw_reinforcement():
    u = apply_draw(new_urn(POLYA, 1, 1), WHITE)
    assert (u.whites, u.blues) == (2, 1)
    u = apply_draw(new_urn(FRIEDMAN, 1, 0), WHITE)
    assert (u.whites, u.blues) == (1, 1)
    u = apply_draw(new_urn(COIN, 1, 1), BLUE)
    assert (u.whites, u.blues, u.blue_draws) == (1, 1, 1)


def test_sample_draw():
    color, u = sample_draw(new_urn(FRIEDMAN, 1, 0), FixedVariate(0.999999))
    assert color is WHITE and u.white_draws == 1
    color, _ = sample_draw(new_urn(POLYA, 1, 1), FixedVariate(0.3))
    assert color is WHITE
    color, _ = sample_draw(new_urn(POLYA, 1, 1), FixedVariate(0.5))
    assert color is BLUE


def test_sample_draw_deterministic():
    u = new_urn(POLYA, 2, 3)
    runs = []
    for _ in range(2):
        rng = random.Random(1234)
        state, colors = u, []
        for _ in range(50):
            c, state = sample_draw(state, rng)
            colors.append(c)
        runs.append(colors)
    assert runs[0] == runs[1]


schemes = st.sampled_from([POLYA, FRIEDMAN, COIN, UrnScheme.bernoulli(Fraction(2, 7))])


@settings(max_examples=200, deadline=None)
@given(schemes, st.integers(1, 4), st.integers(1, 4), st.lists(st.booleans(), max_size=50))
def test_probabilities_sum_to_one_and_linear_growth(scheme, w, b, draws):
    u = new_urn(scheme, w, b)
    for is_white in draws:
        u = apply_draw(u, WHITE if is_white else BLUE)
        assert white_probability(u) + blue_probability(u) == 1
        assert u.white_draws + u.blue_draws == u.n
        if scheme.name != "bernoulli":
            assert u.total == u.n + w + b


def test_polya_exchangeable():
    base = (WHITE, WHITE, BLUE, WHITE, BLUE, BLUE, BLUE, WHITE, WHITE, BLUE)
    for w, b in [(1, 1), (2, 3)]:
        expected = sequence_probability(POLYA, w, b, base)
        for perm in set(permutations(base)):
            assert sequence_probability(POLYA, w, b, perm) == expected


@pytest.mark.parametrize("n", range(1, 9))
def test_polya_exchangeable_all_lengths(n):
    # probability depends only on the number of whites
    by_count = {}
    for seq in product((WHITE, BLUE), repeat=n):
        p = sequence_probability(POLYA, 2, 1, seq)
        by_count.setdefault(seq.count(WHITE), set()).add(p)
    assert all(len(v) == 1 for v in by_count.values())


def test_friedman_not_exchangeable():
    a = sequence_probability(FRIEDMAN, 1, 0, (WHITE, WHITE, BLUE, BLUE))
    b = sequence_probability(FRIEDMAN, 1, 0, (WHITE, BLUE, BLUE, WHITE))
    # WWBB: 1 * 1/2 * 2/3 * 1/2 ; WBBW: 1 * 1/2 * 1/2 * 1/2
    assert a == Fraction(1, 6)
    assert b == Fraction(1, 8)
    # WBWB happens to tie with WWBB, so it is not a witness
    assert sequence_probability(FRIEDMAN, 1, 0, (WHITE, BLUE, WHITE, BLUE)) == a
