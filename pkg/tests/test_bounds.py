import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_thue.bounds import (
    BakerInputs,
    BoundConstants,
    HeightFloorError,
    absolute_log_height,
    baker_constant,
    baker_lower_bound,
    derived_bounds,
    folded_c4,
    mahler_measure,
)
from twisted_thue.cubic_field import compute_roots
from twisted_thue.numerics import DomainError, RealEnclosure, log_enclosure
from twisted_thue.order import OrderElement, UnitWord, unit_word_to_element

mpmath.mp.prec = 200


def mpf(enc):
    return float(enc.mid)


def test_mahler_examples():
    one = RealEnclosure.exact(1)
    assert mahler_measure((1, -3, 3, -1), [one, one, one]) == RealEnclosure.exact(1)
    assert mahler_measure((2, -2), [one]) == RealEnclosure.exact(2)
    lam0, lam1, lam2 = compute_roots(3)
    assert mahler_measure((1, -2, -5, -1), [lam0, lam1, lam2]).overlaps(lam0 * abs(lam2))


def test_height_examples():
    assert absolute_log_height(OrderElement.one(3)).value == RealEnclosure.exact(0)
    assert absolute_log_height(2).value.overlaps(log_enclosure(RealEnclosure.exact(2), 128))
    lam0, _, lam2 = compute_roots(3)
    expected = log_enclosure(lam0 * abs(lam2), 128).div(RealEnclosure.exact(3), 128)
    h = absolute_log_height(OrderElement.lam0(3)).value
    assert h.overlaps(expected)
    assert abs(mpf(h) - 0.5018786268) < 1e-9


@pytest.mark.parametrize("n", [3, 10, 1000, 10 ** 6])
def test_height_of_lam0_bracket(n):
    h = absolute_log_height(OrderElement.lam0(n)).value
    log_n = log_enclosure(RealEnclosure.exact(n), 128)
    assert h.certainly_gt(log_n.div(RealEnclosure.exact(3), 128))
    assert h.certainly_lt((log_n + RealEnclosure.from_fraction(Fraction(2, n), 128)).div(RealEnclosure.exact(3), 128))


words = st.builds(UnitWord, st.sampled_from([1, -1]), st.integers(-6, 6), st.integers(-6, 6))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 30), words, words)
def test_height_subadditive(n, w1, w2):
    u, v = unit_word_to_element(w1, n), unit_word_to_element(w2, n)
    hu, hv, huv = (absolute_log_height(e).value for e in (u, v, u * v))
    assert huv.lo <= (hu + hv + log_enclosure(RealEnclosure.exact(2), 128)).hi


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 30), words, st.integers(-4, 4))
def test_height_power_rule(n, w, k):
    u = unit_word_to_element(w, n)
    hk = absolute_log_height(u ** k).value
    assert hk.overlaps(abs(k) * absolute_log_height(u).value)


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 30), words)
def test_unit_height_bound(n, w):
    h = absolute_log_height(unit_word_to_element(w, n)).value
    bound = abs(w.a) * absolute_log_height(OrderElement.lam0(n)).value + abs(w.b) * absolute_log_height(OrderElement.lam2(n)).value
    assert h.lo <= bound.hi


def test_baker_constant_examples():
    c = baker_constant(2, 3)
    oracle = 18 * 6 * 8 * mpmath.mpf(96) ** 4 * mpmath.log(12)
    assert abs(mpf(c) / float(oracle) - 1) < 1e-12
    assert float(c.width) / float(oracle) < 1e-12
    assert abs(mpf(baker_constant(1, 3)) - 5.707e7) < 1e4
    for t in (1, 2, 3):
        assert baker_constant(t, 4).certainly_gt(baker_constant(t, 3))


def test_baker_lower_bound_example():
    h = Fraction(16, 300)
    bound = baker_lower_bound(BakerInputs(2, 3, [h, h], RealEnclosure.exact(3)))
    expected = -baker_constant(2, 3) * RealEnclosure.from_fraction(h * h, 128) * log_enclosure(RealEnclosure.exact(3), 128)
    assert bound.overlaps(expected)
    assert bound.certainly_lt(0)


def test_baker_doubling_b():
    h = [RealEnclosure.exact(1), RealEnclosure.exact(2)]
    b1 = baker_lower_bound(BakerInputs(2, 3, h, RealEnclosure.exact(5)))
    b2 = baker_lower_bound(BakerInputs(2, 3, h, RealEnclosure.exact(10)))
    ratio = mpf(b2) / mpf(b1)
    assert abs(ratio - float(mpmath.log(10) / mpmath.log(5))) < 1e-12


def test_baker_height_floor():
    with pytest.raises(HeightFloorError):
        baker_lower_bound(BakerInputs(2, 3, [Fraction(1, 100), Fraction(1)], RealEnclosure.exact(3)))


def test_baker_monotone_random():
    rng = random.Random(11)
    for _ in range(100):
        t = rng.randint(1, 3)
        hs = [Fraction(rng.randint(6, 400), 100) for _ in range(t)]
        B = rng.randint(3, 10 ** 6)
        base = baker_lower_bound(BakerInputs(t, 3, hs, RealEnclosure.exact(B)))
        bigger_b = baker_lower_bound(BakerInputs(t, 3, hs, RealEnclosure.exact(B + rng.randint(1, 1000))))
        i = rng.randrange(t)
        hs2 = list(hs)
        hs2[i] += Fraction(rng.randint(1, 100), 100)
        bigger_h = baker_lower_bound(BakerInputs(t, 3, hs2, RealEnclosure.exact(B)))
        assert bigger_b.certainly_lt(base) and bigger_h.certainly_lt(base)


def test_derived_bounds_examples():
    rep = derived_bounds(3, 3)
    L = mpmath.log(3)
    expected = 3 * L ** 3 * (mpmath.log(3) + mpmath.log(L))
    assert abs(mpf(rep.logy_ub) - float(expected)) < 1e-12

    rep = derived_bounds(10 ** 6, 10)
    assert rep.holds["tau_bound"] is True
    assert abs(mpf(rep.tau_ub) - 36.28) < 0.01


def test_derived_bounds_logy_checks():
    rep = derived_bounds(1000, 5, logy=RealEnclosure.exact(2), coeff=3)
    assert rep.holds == {"tau_bound": True, "logy_ub": True, "logy_by_n": True, "coeff_by_n": True}
    rep = derived_bounds(1000, 5, logy=RealEnclosure.exact(10 ** 9))
    assert rep.holds["logy_ub"] is False


def test_derived_bounds_domain():
    with pytest.raises(DomainError):
        derived_bounds(2, 5)
    with pytest.raises(ValueError):
        derived_bounds(10, 2)


@pytest.mark.parametrize("n", [3, 10, 10 ** 3, 10 ** 6, 10 ** 12])
@pytest.mark.parametrize("c2,c3", [(1, 1), (Fraction(1, 2), 5), (3, Fraction(1, 7))])
def test_logy_bound_folds_into_n_bound(n, c2, c3):
    # substitute tau = c3 log n log log n into the tau-dependent bound
    L = mpmath.log(n)
    LL = mpmath.log(L)
    tau = c3 * L * LL
    by_tau = float(c2) * tau * L ** 3 * (mpmath.log(tau) + LL)
    c4 = folded_c4(c2, c3, n)
    by_n = mpf(c4) * L ** 4 * LL ** 2
    assert by_tau <= by_n * (1 + 1e-12)


def test_bound_constants_positive():
    with pytest.raises(ValueError):
        BoundConstants(c2=0)
