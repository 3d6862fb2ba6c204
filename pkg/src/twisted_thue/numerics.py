"""Dyadic interval arithmetic with outward rounding.

Every real number handled by the package is carried as a ``RealEnclosure``:
a closed interval ``[lo, hi]`` whose endpoints are exact dyadic rationals
``m * 2**e``.  Ring operations on enclosures are exact (dyadic numbers are
closed under +, -, *); division and the transcendental functions take a
``bits`` argument and round their endpoints outward, so the exact result is
always contained in the returned interval.

Comparisons between enclosures are three-valued: a comparison is decided only
when the intervals are disjoint, otherwise ``None`` is returned and the caller
is expected to retry at higher precision (see ``PrecisionPolicy``).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterator, List, Optional, Union


class NumericsError(ArithmeticError):
    pass


class DomainError(NumericsError, ValueError):
    """Raised when an enclosure leaves the domain of a function."""


class ZeroSpanError(NumericsError, ZeroDivisionError):
    """Raised when dividing by (or inverting) an enclosure that contains 0."""


class PrecisionExhausted(NumericsError):
    """Raised when a certificate could not be produced within ``max_bits``."""


def _trailing_zeros(m: int) -> int:
    return (m & -m).bit_length() - 1


class Dyadic:
    """Exact number ``man * 2**exp`` kept in canonical form (``man`` odd or 0)."""

    __slots__ = ("man", "exp")

    def __init__(self, man: int, exp: int = 0):
        if man == 0:
            exp = 0
        else:
            tz = _trailing_zeros(man)
            if tz:
                man >>= tz
                exp += tz
        object.__setattr__(self, "man", man)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    def __reduce__(self):
        return (Dyadic, (self.man, self.exp))

    # construction -----------------------------------------------------

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int):
            return cls(value)
        if isinstance(value, Fraction) and value.denominator & (value.denominator - 1) == 0:
            return cls(value.numerator, -(value.denominator.bit_length() - 1))
        raise TypeError(f"cannot convert {value!r} to Dyadic exactly")

    @classmethod
    def from_fraction(cls, q: Fraction, bits: int, up: bool) -> "Dyadic":
        """Round the rational ``q`` to ``bits`` significant bits, down or up."""
        q = Fraction(q)
        p, r = q.numerator, q.denominator
        if p == 0:
            return cls(0)
        shift = bits - (abs(p).bit_length() - r.bit_length()) + 1
        if shift >= 0:
            num, den = p << shift, r
        else:
            num, den = p, r << -shift
        m = -((-num) // den) if up else num // den
        return cls(m, -shift)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Inverse of ``str``: accepts ``"m*2^e"`` or a plain integer."""
        match = re.fullmatch(r"\s*(-?\d+)\s*(?:\*\s*2\^\s*(-?\d+))?\s*", text)
        if match is None:
            raise ValueError(f"not a dyadic string: {text!r}")
        return cls(int(match.group(1)), int(match.group(2) or 0))

    # conversion -------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.exp >= 0:
            return Fraction(self.man << self.exp)
        return Fraction(self.man, 1 << -self.exp)

    def __float__(self) -> float:
        try:
            return float(self.to_fraction())
        except OverflowError:
            return float("inf") if self.man > 0 else float("-inf")

    def __str__(self) -> str:
        return f"{self.man}*2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self.man}, {self.exp})"

    def magnitude(self) -> int:
        """``floor(log2 |self|)``; undefined for zero."""
        if self.man == 0:
            raise ValueError("magnitude of zero")
        return abs(self.man).bit_length() - 1 + self.exp

    def is_zero(self) -> bool:
        return self.man == 0

    def sign(self) -> int:
        return (self.man > 0) - (self.man < 0)

    # rounding ---------------------------------------------------------

    def round(self, bits: int, up: bool) -> "Dyadic":
        """Round to at most ``bits`` significant bits toward +inf or -inf."""
        drop = abs(self.man).bit_length() - bits
        if drop <= 0:
            return self
        if up:
            return Dyadic(-((-self.man) >> drop), self.exp + drop)
        return Dyadic(self.man >> drop, self.exp + drop)

    def floor(self) -> int:
        if self.exp >= 0:
            return self.man << self.exp
        return self.man >> -self.exp

    def ceil(self) -> int:
        return -(Dyadic(-self.man, self.exp).floor())

    # arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Dyadic":
        other = _dy(other)
        if other is NotImplemented:
            return other
        if self.man == 0:
            return other
        if other.man == 0:
            return self
        e = min(self.exp, other.exp)
        return Dyadic((self.man << (self.exp - e)) + (other.man << (other.exp - e)), e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.man, self.exp)

    def __abs__(self) -> "Dyadic":
        return self if self.man >= 0 else -self

    def __sub__(self, other) -> "Dyadic":
        other = _dy(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Dyadic":
        return _dy(other) - self

    def __mul__(self, other) -> "Dyadic":
        other = _dy(other)
        if other is NotImplemented:
            return other
        return Dyadic(self.man * other.man, self.exp + other.exp)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Dyadic":
        """Multiply by ``2**k`` exactly."""
        return Dyadic(self.man, self.exp + k)

    # comparison -------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, Fraction):
            a = self.to_fraction()
            return (a > other) - (a < other)
        other = _dy(other)
        if other is NotImplemented:
            raise TypeError(f"cannot compare Dyadic with {type(other).__name__}")
        sa, sb = self.sign(), other.sign()
        if sa != sb or sa == 0:
            return (sa > sb) - (sa < sb)
        e = min(self.exp, other.exp)
        a = self.man << (self.exp - e)
        b = other.man << (other.exp - e)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.man == other.man and self.exp == other.exp
        if isinstance(other, (int, Fraction)):
            return self._cmp(other) == 0
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.man, self.exp))

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0


def _dy(value):
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int):
        return Dyadic(value)
    return NotImplemented


def _div_round(a: Dyadic, b: Dyadic, bits: int, up: bool) -> Dyadic:
    if b.man == 0:
        raise ZeroSpanError("division by zero")
    if a.man == 0:
        return a
    shift = bits + abs(b.man).bit_length() - abs(a.man).bit_length() + 2
    num, den = a.man, b.man
    if den < 0:
        num, den = -num, -den
    if shift >= 0:
        num <<= shift
    else:
        den <<= -shift
    q = -((-num) // den) if up else num // den
    return Dyadic(q, a.exp - b.exp - shift)


Number = Union[int, Fraction, Dyadic]


@dataclass(frozen=True)
class RealEnclosure:
    """Closed interval ``[lo, hi]`` with dyadic endpoints."""

    lo: Dyadic
    hi: Dyadic

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure: {self.lo} > {self.hi}")

    # construction -----------------------------------------------------

    @classmethod
    def exact(cls, value) -> "RealEnclosure":
        d = Dyadic.coerce(value)
        return cls(d, d)

    @classmethod
    def from_fraction(cls, q, bits: int) -> "RealEnclosure":
        q = Fraction(q)
        try:
            return cls.exact(q)
        except TypeError:
            return cls(Dyadic.from_fraction(q, bits, up=False), Dyadic.from_fraction(q, bits, up=True))

    @classmethod
    def hull(cls, *items: "RealEnclosure") -> "RealEnclosure":
        return cls(min(i.lo for i in items), max(i.hi for i in items))

    @classmethod
    def coerce(cls, value, bits: int = 128) -> "RealEnclosure":
        if isinstance(value, RealEnclosure):
            return value
        if isinstance(value, (int, Dyadic)):
            return cls.exact(value)
        if isinstance(value, Fraction):
            return cls.from_fraction(value, bits)
        raise TypeError(f"cannot enclose {value!r}")

    # inspection -------------------------------------------------------

    @property
    def width(self) -> Dyadic:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo.to_fraction() + self.hi.to_fraction()) / 2

    def contains(self, value) -> bool:
        if isinstance(value, RealEnclosure):
            return self.lo <= value.lo and value.hi <= self.hi
        if isinstance(value, float):
            value = Fraction(value)
        return self.lo <= value and self.hi >= value

    __contains__ = contains

    def overlaps(self, other: "RealEnclosure") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)

    def excludes_zero(self) -> bool:
        return self.lo.man > 0 or self.hi.man < 0

    def sign(self) -> Optional[int]:
        """Certified sign, or None when the interval straddles zero."""
        if self.lo.man > 0:
            return 1
        if self.hi.man < 0:
            return -1
        if self.lo.man == 0 and self.hi.man == 0:
            return 0
        return None

    def compare(self, other) -> Optional[int]:
        """-1 / 0 / +1 when certified, None when the intervals overlap.

        0 is returned only for two identical degenerate (point) intervals.
        """
        other = RealEnclosure.coerce(other)
        if self.hi < other.lo:
            return -1
        if self.lo > other.hi:
            return 1
        if self.lo == self.hi == other.lo == other.hi:
            return 0
        return None

    def certainly_lt(self, other) -> bool:
        return self.compare(other) == -1

    def certainly_gt(self, other) -> bool:
        return self.compare(other) == 1

    def certainly_le(self, other) -> bool:
        return self.compare(other) in (-1, 0)

    def certainly_ge(self, other) -> bool:
        return self.compare(other) in (1, 0)

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(self.mid)

    def __str__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"

    # arithmetic -------------------------------------------------------

    def round(self, bits: Optional[int]) -> "RealEnclosure":
        """Outward rounding of both endpoints to ``bits`` significant bits."""
        if bits is None:
            return self
        return RealEnclosure(self.lo.round(bits, up=False), self.hi.round(bits, up=True))

    def __add__(self, other) -> "RealEnclosure":
        other = _enc(other)
        if other is NotImplemented:
            return other
        return RealEnclosure(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self) -> "RealEnclosure":
        return RealEnclosure(-self.hi, -self.lo)

    def __sub__(self, other) -> "RealEnclosure":
        other = _enc(other)
        if other is NotImplemented:
            return other
        return RealEnclosure(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other) -> "RealEnclosure":
        return _enc(other) - self

    def __mul__(self, other) -> "RealEnclosure":
        other = _enc(other)
        if other is NotImplemented:
            return other
        if self.lo.man >= 0 and other.lo.man >= 0:
            return RealEnclosure(self.lo * other.lo, self.hi * other.hi)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RealEnclosure(min(products), max(products))

    __rmul__ = __mul__

    def __abs__(self) -> "RealEnclosure":
        if self.lo.man >= 0:
            return self
        if self.hi.man <= 0:
            return -self
        return RealEnclosure(Dyadic(0), max(-self.lo, self.hi))

    def square(self) -> "RealEnclosure":
        a = abs(self)
        return RealEnclosure(a.lo * a.lo, a.hi * a.hi)

    def shift(self, k: int) -> "RealEnclosure":
        return RealEnclosure(self.lo.shift(k), self.hi.shift(k))

    def div(self, other, bits: int) -> "RealEnclosure":
        """Outward-rounded quotient; ``other`` must exclude zero."""
        other = RealEnclosure.coerce(other, bits)
        if not other.excludes_zero():
            raise ZeroSpanError(f"divisor {other} contains zero")
        lows = [_div_round(a, b, bits, up=False) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        highs = [_div_round(a, b, bits, up=True) for a in (self.lo, self.hi) for b in (other.lo, other.hi)]
        return RealEnclosure(min(lows), max(highs))

    def reciprocal(self, bits: int) -> "RealEnclosure":
        return RealEnclosure.exact(1).div(self, bits)


def _enc(value):
    if isinstance(value, RealEnclosure):
        return value
    if isinstance(value, (int, Dyadic)):
        return RealEnclosure.exact(value)
    return NotImplemented


def enc_max(*items: RealEnclosure) -> RealEnclosure:
    return RealEnclosure(max(i.lo for i in items), max(i.hi for i in items))


def enc_min(*items: RealEnclosure) -> RealEnclosure:
    return RealEnclosure(min(i.lo for i in items), min(i.hi for i in items))


# ---------------------------------------------------------------------------
# transcendental kernels (fixed point, with explicit lower/upper tracking)


def _atanh_fixed(p: int, q: int, w: int) -> tuple:
    """Integers ``(L, U)`` with ``L <= atanh(p/q) * 2**w <= U``; needs ``|p/q| <= 1/2``."""
    if p == 0:
        return 0, 0
    if p < 0:
        lo, hi = _atanh_fixed(-p, q, w)
        return -hi, -lo
    zl = (p << w) // q
    zh = -((-(p << w)) // q)
    zl2 = (zl * zl) >> w
    zh2 = -((-(zh * zh)) >> w)
    pl, ph = zl, zh
    sl = sh = 0
    k = 1
    while ph > 1:
        sl += pl // k
        sh += -((-ph) // k)
        pl = (pl * zl2) >> w
        ph = -((-(ph * zh2)) >> w)
        k += 2
    # ph bounds z**k * 2**w by one unit; the rest is geometric with ratio <= 1/4
    sh += 2
    return sl, sh


def _exp_fixed(p: int, q: int, w: int) -> tuple:
    """``(L, U)`` with ``L <= exp(p/q) * 2**w <= U`` for ``0 <= p/q <= 1``."""
    if not 0 <= p <= q:
        raise ValueError("exp kernel needs 0 <= p/q <= 1")
    tl = th = 1 << w
    sl = sh = 0
    k = 0
    while th > 1:
        sl += tl
        sh += th
        k += 1
        tl = (tl * p) // (q * k)
        th = -((-(th * p)) // (q * k))
    # term k is at most one unit and later ratios are <= 1/2
    sh += 2 * th
    return sl, sh


@lru_cache(maxsize=64)
def _log2_fixed(w: int) -> tuple:
    lo, hi = _atanh_fixed(1, 3, w)
    return 2 * lo, 2 * hi


def _log_dyadic_fixed(d: Dyadic, w: int) -> tuple:
    """``(L, U)`` with ``L <= log(d) * 2**w <= U`` for ``d > 0``."""
    m, e = d.man, d.exp
    b = m.bit_length()
    k = e + b - 1
    num, den = m, 1 << (b - 1)
    if num * num > 2 * den * den:
        den <<= 1
        k += 1
    alo, ahi = _atanh_fixed(num - den, num + den, w)
    l2lo, l2hi = _log2_fixed(w)
    if k >= 0:
        return 2 * alo + k * l2lo, 2 * ahi + k * l2hi
    return 2 * alo + k * l2hi, 2 * ahi + k * l2lo


def _fixed_to_enclosure(lo: int, hi: int, w: int) -> RealEnclosure:
    return RealEnclosure(Dyadic(lo, -w), Dyadic(hi, -w))


def log2_enclosure(bits: int) -> RealEnclosure:
    w = bits + 8
    lo, hi = _log2_fixed(w)
    return _fixed_to_enclosure(lo, hi, w)


def log_enclosure(x, bits: int) -> RealEnclosure:
    """Enclosure of ``log v`` for every ``v`` in ``x``.

    The result has absolute accuracy of roughly ``2**-bits`` (plus the width
    inherited from ``x``).  Raises ``DomainError`` unless ``x.lo > 0``.
    """
    x = RealEnclosure.coerce(x, bits)
    if x.lo.man <= 0:
        raise DomainError(f"log of enclosure {x} not contained in (0, inf)")
    if x.lo == 1 and x.hi == 1:
        return RealEnclosure.exact(0)
    mag = max(abs(x.lo.magnitude()), abs(x.hi.magnitude()), 1)
    w = bits + mag.bit_length() + 8
    lo = _log_dyadic_fixed(x.lo, w)[0]
    hi = _log_dyadic_fixed(x.hi, w)[1]
    return _fixed_to_enclosure(lo, hi, w).round(bits + 8)


def _exp_dyadic(d: Dyadic, bits: int, up: bool) -> Dyadic:
    """One-sided bound of ``exp(d)`` with about ``bits`` relative bits."""
    if d.man == 0:
        return Dyadic(1)
    q = d.to_fraction()
    # k ~ floor(d / log 2) so that the reduced argument lies near [0, log 2)
    k = (q.numerator << 53) // (q.denominator * 6243314768165359)
    w = bits + abs(k).bit_length() + 16
    l2lo, l2hi = _log2_fixed(w)
    scaled = Dyadic(d.man, d.exp + w)
    if up:
        r = scaled.ceil() - k * (l2lo if k >= 0 else l2hi)
    else:
        r = scaled.floor() - k * (l2hi if k >= 0 else l2lo)
    one = 1 << w
    if r >= 0:
        lo, hi = _exp_fixed(r, one, w)
        return Dyadic(hi if up else lo, k - w)
    lo, hi = _exp_fixed(-r, one, w)
    num = 1 << (2 * w)
    val = -((-num) // lo) if up else num // hi
    return Dyadic(val, k - w)


def exp_enclosure(x, bits: int) -> RealEnclosure:
    """Enclosure of ``exp v`` for every ``v`` in ``x`` (relative accuracy ~``2**-bits``)."""
    x = RealEnclosure.coerce(x, bits)
    lo = _exp_dyadic(x.lo, bits + 8, up=False)
    hi = _exp_dyadic(x.hi, bits + 8, up=True)
    return RealEnclosure(lo, hi).round(bits + 8)


def _pow_endpoint(d: Dyadic, k: int, bits: Optional[int], up: bool) -> Dyadic:
    """Bound of ``d**k`` for ``d >= 0``, ``k >= 0``."""
    result = Dyadic(1)
    base = d
    while k:
        if k & 1:
            result = result * base
            if bits is not None:
                result = result.round(bits, up)
        k >>= 1
        if k:
            base = base * base
            if bits is not None:
                base = base.round(bits, up)
    return result


def pow_int_enclosure(x, k: int, bits: Optional[int] = None) -> RealEnclosure:
    """Enclosure of ``v**k`` for every ``v`` in ``x``.

    Exact when ``bits`` is None and ``k >= 0``; otherwise intermediate results
    are rounded outward to ``bits`` significant bits.  Negative ``k`` needs an
    enclosure that excludes zero and a ``bits`` value.
    """
    x = RealEnclosure.coerce(x, bits or 128)
    if k == 0:
        return RealEnclosure.exact(1)
    if k < 0:
        if not x.excludes_zero():
            raise ZeroSpanError(f"negative power of enclosure {x} containing zero")
        b = bits or 128
        return pow_int_enclosure(x, -k, b + 8).reciprocal(b + 8).round(b)
    a = abs(x)
    lo = _pow_endpoint(a.lo, k, bits, up=False)
    hi = _pow_endpoint(a.hi, k, bits, up=True)
    if k % 2 == 0 or x.lo.man >= 0:
        return RealEnclosure(lo, hi)
    if x.hi.man <= 0:
        return RealEnclosure(-hi, -lo)
    # odd power of an interval straddling zero is monotone: [lo^k, hi^k]
    return RealEnclosure(-_pow_endpoint(-x.lo, k, bits, up=True), _pow_endpoint(x.hi, k, bits, up=True))


# ---------------------------------------------------------------------------
# precision control


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDECIDED = "undecided"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class PrecisionPolicy:
    start_bits: int = 128
    max_bits: int = 16384
    escalation_factor: int = 2
    target_width: Dyadic = field(default_factory=lambda: Dyadic(1, -64))

    def __post_init__(self):
        if self.start_bits < 1 or self.max_bits < 1:
            raise ValueError("bit counts must be positive")
        if self.start_bits > self.max_bits:
            raise ValueError("start_bits must not exceed max_bits")
        if self.escalation_factor < 2:
            raise ValueError("escalation_factor must be at least 2")
        if not isinstance(self.target_width, Dyadic):
            object.__setattr__(self, "target_width", Dyadic.coerce(self.target_width))

    def schedule(self) -> Iterator[int]:
        """Bit counts to try, ending exactly at ``max_bits``."""
        bits = self.start_bits
        while True:
            yield bits
            if bits >= self.max_bits:
                return
            bits = min(bits * self.escalation_factor, self.max_bits)

    def starting_at(self, bits: int) -> "PrecisionPolicy":
        bits = max(self.start_bits, min(bits, self.max_bits))
        return PrecisionPolicy(bits, self.max_bits, self.escalation_factor, self.target_width)


DEFAULT_POLICY = PrecisionPolicy()


@dataclass(frozen=True)
class Refinement:
    """Outcome of ``refine_until``: the enclosure and whether it met the target."""

    enclosure: RealEnclosure
    bits: int
    converged: bool

    @property
    def unrefined(self) -> bool:
        return not self.converged


def refine_until(compute: Callable[[int], RealEnclosure], policy: PrecisionPolicy = DEFAULT_POLICY) -> Refinement:
    """Re-run ``compute(bits)`` along the policy schedule until narrow enough.

    Non-convergence is reported through ``Refinement.converged`` rather than
    raised.
    """
    enclosure = None
    bits = policy.start_bits
    for bits in policy.schedule():
        enclosure = compute(bits)
        if enclosure.width <= policy.target_width:
            return Refinement(enclosure, bits, True)
    return Refinement(enclosure, bits, False)


def decide(check: Callable[[int], Optional[bool]], policy: PrecisionPolicy = DEFAULT_POLICY) -> tuple:
    """Run a three-valued check along the precision schedule.

    ``check(bits)`` returns True/False once certified and None when the
    enclosures at that precision are too wide.  Returns ``(Status, bits)``.
    """
    bits = policy.start_bits
    for bits in policy.schedule():
        outcome = check(bits)
        if outcome is True:
            return Status.PASS, bits
        if outcome is False:
            return Status.FAIL, bits
    return Status.UNDECIDED, bits


def rational_enclosure(q, bits: int) -> RealEnclosure:
    return RealEnclosure.from_fraction(Fraction(q), bits)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` exactly; floats are rejected."""
    match = re.fullmatch(r"\s*(-?\d+)\s*(?:/\s*(\d+))?\s*", str(text))
    if match is None:
        raise ValueError(f"expected a rational 'p/q', got {text!r}")
    den = int(match.group(2) or 1)
    if den == 0:
        raise ValueError("zero denominator")
    return Fraction(int(match.group(1)), den)


@dataclass(frozen=True)
class VerificationReport:
    """Three-valued outcome of a certified check, with supporting details."""

    name: str
    status: Status
    bits: int
    details: Optional[Dict] = None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_dict(self) -> Dict:
        out = {"check": self.name, "status": self.status.value, "bits": self.bits}
        if self.details:
            out.update(self.details)
        return out


def run_check(
    name: str,
    check: Callable[[int], Optional[bool]],
    policy: PrecisionPolicy,
    details: Dict,
    failures: Optional[List[str]] = None,
) -> VerificationReport:
    status, bits = decide(check, policy)
    details = dict(details)
    if failures:
        details["failed"] = list(failures)
    return VerificationReport(name, status, bits, details)
