from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_thue.numerics import (
    Dyadic,
    DomainError,
    PrecisionPolicy,
    RealEnclosure,
    Status,
    ZeroSpanError,
    decide,
    exp_enclosure,
    log_enclosure,
    parse_rational,
    pow_int_enclosure,
    refine_until,
)

mpmath.mp.prec = 300

dyadics = st.builds(Dyadic, st.integers(-(10 ** 12), 10 ** 12), st.integers(-80, 80))


def mp(d: Dyadic):
    f = d.to_fraction()
    return mpmath.mpf(f.numerator) / f.denominator


def inside(value, enc: RealEnclosure) -> bool:
    return mp(enc.lo) <= value <= mp(enc.hi)


@st.composite
def enclosures(draw):
    a, b = draw(dyadics), draw(dyadics)
    return RealEnclosure(min(a, b), max(a, b))


def test_dyadic_is_canonical():
    d = Dyadic(12, 0)
    assert (d.man, d.exp) == (3, 2)
    assert Dyadic(0, 17) == Dyadic(0)
    assert Dyadic(6, -1) == 3


@given(dyadics)
def test_dyadic_string_round_trip(d):
    assert Dyadic.parse(str(d)) == d


@given(dyadics, dyadics)
def test_dyadic_arithmetic_is_exact(a, b):
    fa, fb = a.to_fraction(), b.to_fraction()
    assert (a + b).to_fraction() == fa + fb
    assert (a - b).to_fraction() == fa - fb
    assert (a * b).to_fraction() == fa * fb


@given(st.fractions(), st.integers(8, 200))
def test_from_fraction_rounds_outward(q, bits):
    enc = RealEnclosure.from_fraction(q, bits)
    assert enc.lo.to_fraction() <= q <= enc.hi.to_fraction()


@settings(max_examples=200)
@given(enclosures(), enclosures(), st.floats(0, 1), st.floats(0, 1))
def test_arithmetic_containment(x, y, p, q):
    # sample points inside both operands
    u = x.lo.to_fraction() + Fraction(p) * (x.hi - x.lo).to_fraction()
    v = y.lo.to_fraction() + Fraction(q) * (y.hi - y.lo).to_fraction()
    for op, exact in (
        (lambda a, b: a + b, u + v),
        (lambda a, b: a - b, u - v),
        (lambda a, b: a * b, u * v),
    ):
        assert op(x, y).contains(exact)
    assert abs(x).contains(abs(u))
    assert x.square().contains(u * u)
    if y.excludes_zero():
        assert x.div(y, 64).contains(u / v)


def test_log_examples():
    assert log_enclosure(RealEnclosure.exact(1), 128) == RealEnclosure.exact(0)
    enc = log_enclosure(RealEnclosure.exact(12), 128)
    assert inside(mpmath.log(12), enc)
    assert enc.width <= Dyadic(1, -120)
    with pytest.raises(DomainError):
        log_enclosure(RealEnclosure(Dyadic(-1), Dyadic(2)), 128)


@settings(max_examples=100)
@given(st.integers(1, 10 ** 30), st.integers(-100, 100), st.sampled_from([64, 128, 300]))
def test_log_matches_mpmath(m, e, bits):
    d = Dyadic(m, e)
    assert inside(mpmath.log(mp(d)), log_enclosure(RealEnclosure.exact(d), bits))


@settings(max_examples=100)
@given(st.integers(-(10 ** 6), 10 ** 6), st.integers(-20, 4), st.sampled_from([64, 128, 300]))
def test_exp_matches_mpmath(m, e, bits):
    d = Dyadic(m, e)
    assert inside(mpmath.exp(mp(d)), exp_enclosure(RealEnclosure.exact(d), bits))


def test_log_width_shrinks_with_bits():
    x = RealEnclosure.exact(Dyadic(12345, -7))
    widths = [log_enclosure(x, b).width for b in (64, 128, 256, 512)]
    for w, w2 in zip(widths, widths[1:]):
        assert w2 <= w * 2


def test_pow_examples():
    x = RealEnclosure(Dyadic(3, -1), Dyadic(7))
    assert pow_int_enclosure(x, 0) == RealEnclosure.exact(1)
    assert pow_int_enclosure(RealEnclosure.exact(2), 10) == RealEnclosure.exact(1024)
    with pytest.raises(ZeroSpanError):
        pow_int_enclosure(RealEnclosure(Dyadic(-1), Dyadic(1)), -1)


@given(enclosures(), st.integers(-6, 9))
def test_pow_contains_endpoint_powers(x, k):
    if k < 0 and not x.excludes_zero():
        return
    enc = pow_int_enclosure(x, k, 96)
    for end in (x.lo, x.hi):
        assert enc.contains(end.to_fraction() ** k)


def test_refine_until():
    const = refine_until(lambda bits: RealEnclosure.exact(3))
    assert const.converged and const.bits == 128 and const.enclosure == RealEnclosure.exact(3)

    log12 = refine_until(lambda bits: log_enclosure(RealEnclosure.exact(12), bits))
    assert log12.converged and log12.enclosure.width <= Dyadic(1, -64)

    stuck = refine_until(
        lambda bits: RealEnclosure(Dyadic(0), Dyadic(1, -1)),
        PrecisionPolicy(target_width=Dyadic(1, -10)),
    )
    assert stuck.unrefined and stuck.bits == 16384


def test_policy_schedule_and_validation():
    assert list(PrecisionPolicy(100, 700).schedule()) == [100, 200, 400, 700]
    with pytest.raises(ValueError):
        PrecisionPolicy(256, 128)
    with pytest.raises(ValueError):
        PrecisionPolicy(escalation_factor=1)


def test_decide_three_valued():
    assert decide(lambda bits: True)[0] is Status.PASS
    assert decide(lambda bits: False)[0] is Status.FAIL
    assert decide(lambda bits: None, PrecisionPolicy(16, 16)) == (Status.UNDECIDED, 16)
    # undecided until enough precision
    assert decide(lambda bits: True if bits >= 512 else None) == (Status.PASS, 512)


def test_compare_is_three_valued():
    a = RealEnclosure(Dyadic(0), Dyadic(2))
    b = RealEnclosure(Dyadic(1), Dyadic(3))
    assert a.compare(b) is None
    assert a.compare(RealEnclosure.exact(5)) == -1
    assert RealEnclosure.exact(2).compare(2) == 0


def test_parse_rational_is_exact():
    assert parse_rational("1/10") == Fraction(1, 10)
    assert parse_rational("-7") == -7
    for bad in ("0.1", "1/0", "abc"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_enclosures_are_deterministic():
    a = log_enclosure(RealEnclosure.exact(Dyadic(99, -3)), 200)
    b = log_enclosure(RealEnclosure.exact(Dyadic(99, -3)), 200)
    assert (a.lo, a.hi) == (b.lo, b.hi)
