import itertools
import random
import warnings
from fractions import Fraction

import pytest

from okounkov.families import GradedFamily, length_sequence
from okounkov.monomial import MonomialIdeal, length
from okounkov.valuation import (
    MonomialValuation,
    ValueVector,
    alpha_constant,
    body_volume_prediction,
    c_constant,
    gamma_semigroups,
    length_via_semigroups,
    threshold_ideal,
    value,
    value_of_support,
    valuation_family,
)

from oracles import brute_contains

W11 = MonomialValuation(2, (1, 1))
W12 = MonomialValuation(2, (1, 2))


def test_value():
    assert value(W11, (2, 1)) == ValueVector(3, (2, 1))
    assert value(W12, (0, 1)) < value(W12, (2, 0))
    assert value(W11, (0, 0)) == ValueVector(0, (0, 0))
    with pytest.raises(ValueError):
        value(W11, (1, -1))


def test_value_of_support():
    assert value_of_support(W11, [(1, 0), (0, 1)]) == ValueVector(1, (0, 1))
    assert value_of_support(W11, [(2, 3)]) == value(W11, (2, 3))
    with pytest.raises(ValueError):
        value_of_support(W11, [])


def test_constants():
    assert alpha_constant(W11) == 1
    assert alpha_constant(MonomialValuation(2, (2, 5))) == 5
    assert alpha_constant(MonomialValuation(3, (1, 1, 1))) == 1
    assert c_constant(MonomialIdeal.maximal(2)) == 1
    assert c_constant(MonomialIdeal(2, ((2, 0), (0, 2)))) == 3
    with pytest.warns(UserWarning):
        assert c_constant(MonomialIdeal.unit(2)) == 1
    with pytest.raises(ValueError):
        c_constant(MonomialIdeal(2, ((1, 0),)))
    with pytest.raises(ValueError):
        MonomialValuation(2, (0, 1))


def test_threshold_ideal_against_brute_force():
    for w in [(1, 1), (1, 2), (3, 2), (2, 3, 1)]:
        v = MonomialValuation(len(w), w)
        for t in range(0, 9):
            J = threshold_ideal(v, t)
            for a in itertools.product(range(10), repeat=len(w)):
                assert J.contains(a) == (v.degree(a) >= t)


def test_valuation_families():
    f = valuation_family(W12, 2)
    assert [length(f.evaluate(n)) for n in range(1, 8)] == [n * n + n for n in range(1, 8)]
    g = valuation_family(W11, 1)
    assert all(g.evaluate(n) == MonomialIdeal.degree_power(2, n) for n in range(6))
    h = valuation_family(W11, Fraction(1, 2))
    assert all(h.evaluate(n) == MonomialIdeal.degree_power(2, -(-n // 2)) for n in range(10))


def test_gamma_semigroups_examples():
    g = gamma_semigroups(W11, GradedFamily.powers(MonomialIdeal.maximal(2)), 10)
    assert g.beta == 1
    assert g.gamma_hat.slice(1) == [(0, 0)]
    assert g.gamma.slice(1) == []
    for n in range(11):
        assert g.gamma_hat.count(n) - g.gamma.count(n) == n * (n + 1) // 2
    assert length_via_semigroups(g, 4) == 10
    assert length_via_semigroups(g, 0) == 0
    with pytest.raises(ValueError):
        length_via_semigroups(g, 11)
    v = gamma_semigroups(W12, valuation_family(W12, 2), 10)
    assert length_via_semigroups(v, 3) == 12
    assert all(length_via_semigroups(v, n) == n * n + n for n in range(11))


BUILTINS = [
    (W11, GradedFamily.powers(MonomialIdeal.maximal(2))),
    (W11, GradedFamily.powers(MonomialIdeal(2, ((2, 0), (0, 3))))),
    (W11, GradedFamily.powers(MonomialIdeal(2, ((3, 0), (1, 1), (0, 2))))),
    (W12, valuation_family(W12, 2)),
    (MonomialValuation(2, (2, 3)), valuation_family(MonomialValuation(2, (2, 3)), Fraction(5, 2))),
    (MonomialValuation(3, (1, 1, 1)), GradedFamily.powers(MonomialIdeal(3, ((2, 0, 0), (0, 1, 0), (0, 0, 3))))),
]


@pytest.mark.parametrize("v, f", BUILTINS)
def test_length_identity_for_builtins(v, f):
    top = 12 if v.d == 3 else 25
    g = gamma_semigroups(v, f, top)
    for i in range(top + 1):
        assert length_via_semigroups(g, i) == length(f.evaluate(i))


@pytest.mark.parametrize("v, f", BUILTINS[:4])
def test_degree_truncation_gives_same_counts(v, f):
    a = gamma_semigroups(v, f, 12)
    b = gamma_semigroups(v, f, 12, truncation="degree")
    for i in range(13):
        assert length_via_semigroups(a, i) == length_via_semigroups(b, i)


def test_gamma_inside_gamma_hat():
    g = gamma_semigroups(W12, valuation_family(W12, 2), 8)
    for n in range(9):
        assert set(g.gamma.slice(n)) <= set(g.gamma_hat.slice(n))


def test_gamma_rejects_non_m_primary_member():
    f = GradedFamily.custom(2, {1: MonomialIdeal.maximal(2), 2: MonomialIdeal(2, ((1, 0),))})
    g = gamma_semigroups(W11, f, 2, check_level=1)
    with pytest.raises(ValueError, match="I_2"):
        g.gamma.slice(2)


@pytest.mark.parametrize("v, f", BUILTINS[:5])
def test_estimate_matches_body_volume_prediction(v, f):
    g = gamma_semigroups(v, f, 1)
    pred = body_volume_prediction(v, g, 100)
    est = length_sequence(f, 100).estimate
    assert abs(est - pred) / pred < Fraction(2, 100)


def test_unit_first_member_warns():
    f = GradedFamily.custom(2, {1: MonomialIdeal.unit(2), 2: MonomialIdeal.maximal(2)})
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = gamma_semigroups(W11, f, 2, check_level=0)
    assert caught and g.c == 1


# ---------------------------------------------------------------------------
# randomized panels


def test_panel_injectivity_and_additivity():
    rng = random.Random(11)
    for _ in range(500):
        d = rng.choice((2, 3))
        v = MonomialValuation(d, tuple(rng.randint(1, 4) for _ in range(d)))
        pts = {tuple(rng.randint(0, 6) for _ in range(d)) for _ in range(20)}
        vals = {value(v, a) for a in pts}
        assert len(vals) == len(pts)
        a, b = rng.sample(sorted(pts), 2) if len(pts) > 1 else (next(iter(pts)),) * 2
        s = tuple(x + y for x, y in zip(a, b))
        assert value(v, s) == value(v, a) + value(v, b)
        assert value(v, s).primary == value(v, a).primary + value(v, b).primary


def test_panel_alpha_certificate():
    rng = random.Random(12)
    for _ in range(1000):
        d = rng.choice((2, 3))
        v = MonomialValuation(d, tuple(rng.randint(1, 5) for _ in range(d)))
        J = MonomialIdeal(d, tuple(tuple(rng.randint(1, 4) if i == j else 0 for j in range(d)) for i in range(d)))
        c = c_constant(J)
        beta = alpha_constant(v) * c
        a = tuple(rng.randint(0, 200) for _ in range(d))
        n = rng.randint(1, 50)
        if v.degree(a) >= beta * n:
            assert sum(a) >= c * n


def test_panel_gamma_semigroup_law():
    rng = random.Random(13)
    for _ in range(20):
        gens = [(rng.randint(1, 4), 0), (0, rng.randint(1, 4)), (rng.randint(0, 3), rng.randint(0, 3))]
        J = MonomialIdeal(2, tuple(gens))
        f = GradedFamily.powers(J)
        g = gamma_semigroups(W11, f, 4, check_level=4)
        for n in range(5):
            pts = g.gamma.slice(n)
            assert all(brute_contains(f.evaluate(n).gens, a) for a in pts)
