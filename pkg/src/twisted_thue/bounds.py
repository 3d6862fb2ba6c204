"""Heights, Mahler measures, the Baker-Wuestholz bound and the derived bound formulas."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence

from .cubic_field import check_n, log_n_at, roots_at
from .numerics import (
    DEFAULT_POLICY,
    DomainError,
    PrecisionPolicy,
    RealEnclosure,
    enc_max,
    log_enclosure,
    rational_enclosure,
)
from .order import CharPoly


class HeightFloorError(ValueError):
    """A height passed to the Baker bound is below 0.16/D."""


@dataclass(frozen=True)
class HeightValue:
    value: RealEnclosure

    def __post_init__(self):
        if self.value.hi < 0:
            raise ValueError("heights are non-negative")


@dataclass(frozen=True)
class BakerInputs:
    t_count: int
    D: int
    heights: Sequence[RealEnclosure]
    B: RealEnclosure

    def __post_init__(self):
        if self.t_count < 1 or self.D < 1:
            raise ValueError("t_count and D must be positive")
        if len(self.heights) != self.t_count:
            raise ValueError("need one height per logarithm")


@dataclass(frozen=True)
class BoundConstants:
    c2: Fraction = Fraction(1)
    c3: Fraction = Fraction(1)
    c4: Fraction = Fraction(1)
    c5: Fraction = Fraction(1)
    C_cu: Fraction = Fraction(64)

    def __post_init__(self):
        for name in ("c2", "c3", "c4", "c5", "C_cu"):
            value = Fraction(getattr(self, name))
            if value <= 0:
                raise ValueError(f"{name} must be positive")
            object.__setattr__(self, name, value)


def mahler_measure(poly, roots: Sequence[RealEnclosure], leading: Optional[int] = None) -> RealEnclosure:
    """|a_d| * prod max(1, |root|) for enclosures covering all roots with multiplicity.

    ``poly`` is a CharPoly or a coefficient list from the leading term down; only
    its leading coefficient and degree are used.
    """
    coeffs = poly.coefficients if isinstance(poly, CharPoly) else tuple(poly)
    if leading is None:
        leading = coeffs[0]
    if len(roots) != len(coeffs) - 1:
        raise ValueError("number of root enclosures must equal the degree")
    out = RealEnclosure.exact(abs(leading))
    one = RealEnclosure.exact(1)
    for r in roots:
        out = out * enc_max(one, abs(r))
    return out


def absolute_log_height(u, policy: PrecisionPolicy = DEFAULT_POLICY) -> HeightValue:
    """h(u) for u in Z[lam0]: (1/3) log M(char_poly(u)), or log max(1, |q|) for a rational integer q."""
    if isinstance(u, int):
        return HeightValue(log_enclosure(RealEnclosure.exact(max(1, abs(u))), policy.start_bits))
    if u.is_rational():
        return absolute_log_height(u.c0, policy)
    n = u.n
    check_n(n)
    bits = policy.start_bits
    work = bits + 3 * u.max_bits() + 16
    lams = roots_at(n, work)
    conj = [u.embed(lam).round(work) for lam in lams]
    m = mahler_measure((1, 0, 0, 0), conj)
    value = log_enclosure(m, bits).div(RealEnclosure.exact(3), bits)
    return HeightValue(value)


def baker_constant(t_count: int, D: int, bits: int = 128) -> RealEnclosure:
    """18 (t+1)! t^(t+1) (32 D)^(t+2) log(2 t D)."""
    if t_count < 1 or D < 1:
        raise ValueError("t_count and D must be positive")
    t = t_count
    integer = 18 * math.factorial(t + 1) * t ** (t + 1) * (32 * D) ** (t + 2)
    return integer * log_enclosure(RealEnclosure.exact(2 * t * D), bits)


def baker_lower_bound(inputs: BakerInputs, bits: int = 128) -> RealEnclosure:
    """Enclosure of -C h_1 ... h_t log B; a nonzero linear form has log|Lambda| at least this."""
    floor_ = Fraction(16, 100 * inputs.D)
    for i, h in enumerate(inputs.heights):
        lowest = Fraction(h) if isinstance(h, (int, Fraction)) else RealEnclosure.coerce(h, bits).lo.to_fraction()
        if lowest < floor_:
            raise HeightFloorError(f"height {i} is not certified >= 0.16/{inputs.D}")
    B = RealEnclosure.coerce(inputs.B, bits)
    if not B.certainly_ge(3):
        raise ValueError("B must be at least 3")
    prod = baker_constant(inputs.t_count, inputs.D, bits)
    for h in inputs.heights:
        prod = (prod * RealEnclosure.coerce(h, bits)).round(bits + 16)
    return -(prod * log_enclosure(B, bits))


def _loglog(n: int, bits: int):
    log_n = log_n_at(n, bits)
    return log_n, log_enclosure(log_n, bits)


def folded_c4(c2, c3, n: int, bits: int = 128) -> RealEnclosure:
    """A c4 making the log|y| bound in n alone follow from the tau-dependent one.

    With tau = c3 L LL (L = log n, LL = log L) we have log tau = log c3 + LL + log LL
    and log LL <= LL - 1, so c2 tau L^3 (log tau + LL) <= c2 c3 (3 + log+(c3)/LL) L^4 LL^2.
    """
    check_n(n)
    c2, c3 = Fraction(c2), Fraction(c3)
    _, ll = _loglog(n, bits)
    log_c3 = log_enclosure(rational_enclosure(max(c3, Fraction(1)), bits), bits)
    return rational_enclosure(c2 * c3, bits) * (3 + log_c3.div(ll, bits))


@dataclass(frozen=True)
class BoundReport:
    n: int
    tau: int
    logy_ub: RealEnclosure
    tau_ub: RealEnclosure
    logy_by_n: RealEnclosure
    coeff_by_n: RealEnclosure
    holds: Dict[str, Optional[bool]] = field(default_factory=dict)


def _holds_le(value, bound) -> Optional[bool]:
    if value.certainly_le(bound):
        return True
    if value.certainly_gt(bound):
        return False
    return None


def derived_bounds(
    n: int,
    tau: int,
    consts: BoundConstants = BoundConstants(),
    logy: Optional[RealEnclosure] = None,
    coeff: Optional[int] = None,
    bits: int = 128,
) -> BoundReport:
    """Evaluate the four bound formulas; with ``logy`` (and ``coeff``) also report whether they hold.

    logy_ub    = c2 tau L^3 (log tau + LL)
    tau_ub     = c3 L LL
    logy_by_n  = c4 L^4 LL^2
    coeff_by_n = c5 L^3 LL^2
    with L = log n and LL = log log n.
    """
    try:
        check_n(n)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    if tau < 3:
        raise ValueError("tau must be at least 3")
    L, LL = _loglog(n, bits)
    L3 = L.square() * L
    logy_ub = rational_enclosure(consts.c2 * tau, bits) * L3 * (
        log_enclosure(RealEnclosure.exact(tau), bits) + LL
    )
    tau_ub = rational_enclosure(consts.c3, bits) * L * LL
    logy_by_n = rational_enclosure(consts.c4, bits) * L3 * L * LL.square()
    coeff_by_n = rational_enclosure(consts.c5, bits) * L3 * LL.square()
    logy_ub, tau_ub, logy_by_n, coeff_by_n = (v.round(bits) for v in (logy_ub, tau_ub, logy_by_n, coeff_by_n))
    holds: Dict[str, Optional[bool]] = {}
    tau_enc = RealEnclosure.exact(tau)
    holds["tau_bound"] = True if tau_enc.certainly_lt(tau_ub) else (False if tau_enc.certainly_ge(tau_ub) else None)
    if logy is not None:
        logy = RealEnclosure.coerce(logy, bits)
        holds["logy_ub"] = _holds_le(logy, logy_ub)
        holds["logy_by_n"] = _holds_le(logy, logy_by_n)
    if coeff is not None:
        holds["coeff_by_n"] = _holds_le(RealEnclosure.exact(abs(coeff)), coeff_by_n)
    return BoundReport(n, tau, logy_ub, tau_ub, logy_by_n, coeff_by_n, holds)
