"""Validated roots of f(X; n) = X^3 - (n-1)X^2 - (n+2)X - 1 and their logarithms.

The three roots are labelled by the rational brackets they fall in, never by
sorting: lam0 in (n + 1/n, n + 2/n), lam1 in (-1/(n+1), -1/(n+2)) and lam2 in
(-1 - 1/n, -1 - 1/(n+1)).  Each enclosure is certified by a sign change of f
at its endpoints; three disjoint sign-change intervals for a cubic pin down
exactly one root each.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from .numerics import (
    DEFAULT_POLICY,
    Dyadic,
    PrecisionExhausted,
    PrecisionPolicy,
    RealEnclosure,
    VerificationReport,
    log_enclosure,
    rational_enclosure,
    run_check,
)


class ParameterError(ValueError):
    pass


def check_n(n: int) -> None:
    if not isinstance(n, int) or n < 3:
        raise ParameterError(f"n must be an integer >= 3, got {n!r}")


@dataclass(frozen=True)
class Params:
    n: int

    def __post_init__(self):
        check_n(self.n)


def poly_coeffs(n: int) -> Tuple[int, int, int, int]:
    """Coefficients of f from the leading term down."""
    return (1, -(n - 1), -(n + 2), -1)


def root_brackets(n: int) -> Tuple[Tuple[Fraction, Fraction], ...]:
    """Open rational brackets for (lam0, lam1, lam2)."""
    return (
        (n + Fraction(1, n), n + Fraction(2, n)),
        (Fraction(-1, n + 1), Fraction(-1, n + 2)),
        (-1 - Fraction(1, n), -1 - Fraction(1, n + 1)),
    )


def log_brackets(n: int):
    """Brackets for (log lam0, log|lam1|, log|lam2|) as (log-n multiplier, rational offset) pairs.

    Each bound has the form ``c * log(n) + q``.
    """
    nn = Fraction(1, n * n)
    return (
        ((1, Fraction(0)), (1, nn)),
        ((-1, Fraction(-2, n)), (-1, Fraction(-1, 2 * n))),
        ((0, Fraction(1, n) - 2 * nn), (0, Fraction(1, n) + nn)),
    )


def _sign_at(n: int, d: Dyadic) -> int:
    """Exact sign of f at the dyadic point ``d``."""
    m, e = d.man, d.exp
    if e >= 0:
        x = m << e
        v = ((x - (n - 1)) * x - (n + 2)) * x - 1
    else:
        s = -e
        # 2^(3s) f(m / 2^s)
        v = ((m - ((n - 1) << s)) * m - ((n + 2) << (2 * s))) * m - (1 << (3 * s))
    return (v > 0) - (v < 0)


def _newton_point(n: int, d: Dyadic, grid: int):
    """One Newton step from ``d``, floored to the grid 2**grid; None if f'(d) = 0."""
    x = d.to_fraction()
    fx = ((x - (n - 1)) * x - (n + 2)) * x - 1
    dfx = (3 * x - 2 * (n - 1)) * x - (n + 2)
    if dfx == 0:
        return None
    y = x - fx / dfx
    scaled = y * Fraction(2) ** (-grid)
    return Dyadic(scaled.numerator // scaled.denominator, grid)


def _refine_root(n: int, lo: Dyadic, hi: Dyadic, bits: int) -> RealEnclosure:
    """Shrink a sign-change bracket to relative width about 2**-bits."""
    slo = _sign_at(n, lo)
    shi = _sign_at(n, hi)
    if slo == 0:
        return RealEnclosure(lo, lo)
    if shi == 0:
        return RealEnclosure(hi, hi)
    if slo == shi:
        raise PrecisionExhausted(f"no sign change of f on [{lo}, {hi}] for n={n}")
    scale = max(abs(lo), abs(hi)).magnitude()
    grid = scale - bits
    target = Dyadic(1, grid + 2)
    while hi - lo > target:
        mid = (lo + hi).shift(-1)
        smid = _sign_at(n, mid)
        if smid == 0:
            return RealEnclosure(mid, mid)
        if smid == slo:
            lo = mid
        else:
            hi = mid
        x = _newton_point(n, mid, grid)
        if x is None:
            continue
        step = Dyadic(1, grid)
        a, b = x - step, x + step + step
        if lo <= a and b <= hi and b - a < hi - lo:
            sa, sb = _sign_at(n, a), _sign_at(n, b)
            if sa == 0:
                return RealEnclosure(a, a)
            if sb == 0:
                return RealEnclosure(b, b)
            if sa == slo and sb != slo:
                lo, hi = a, b
    return RealEnclosure(lo, hi)


@lru_cache(maxsize=512)
def roots_at(n: int, bits: int) -> Tuple[RealEnclosure, RealEnclosure, RealEnclosure]:
    """Enclosures of (lam0, lam1, lam2) with relative width about 2**-bits.

    The starting brackets are the rational brackets rounded outward to
    ``bits`` significant bits.
    """
    check_n(n)
    out = []
    for lo_q, hi_q in root_brackets(n):
        lo = Dyadic.from_fraction(lo_q, bits, up=False)
        hi = Dyadic.from_fraction(hi_q, bits, up=True)
        out.append(_refine_root(n, lo, hi, bits))
    lam0, lam1, lam2 = out
    if not (lam2.hi < lam1.lo and lam1.hi < lam0.lo):
        raise PrecisionExhausted(f"root enclosures for n={n} overlap at {bits} bits")
    return lam0, lam1, lam2


@dataclass(frozen=True)
class RootTriple:
    lam0: RealEnclosure
    lam1: RealEnclosure
    lam2: RealEnclosure
    n: int
    bits: int = 0
    converged: bool = True

    def __iter__(self):
        return iter((self.lam0, self.lam1, self.lam2))

    def __getitem__(self, i: int) -> RealEnclosure:
        return (self.lam0, self.lam1, self.lam2)[i]


@dataclass(frozen=True)
class RootLogs:
    log_lam0: RealEnclosure
    log_abs_lam1: RealEnclosure
    log_abs_lam2: RealEnclosure
    n: int
    bits: int = 0

    def __iter__(self):
        return iter((self.log_lam0, self.log_abs_lam1, self.log_abs_lam2))

    def __getitem__(self, i: int) -> RealEnclosure:
        return (self.log_lam0, self.log_abs_lam1, self.log_abs_lam2)[i]


def compute_roots(n: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> RootTriple:
    """First root triple along the policy schedule whose widths all meet the target."""
    check_n(n)
    triple = None
    bits = policy.start_bits
    for bits in policy.schedule():
        triple = roots_at(n, bits)
        if all(r.width <= policy.target_width for r in triple):
            return RootTriple(*triple, n=n, bits=bits, converged=True)
    return RootTriple(*triple, n=n, bits=bits, converged=False)


@lru_cache(maxsize=512)
def logs_at(n: int, bits: int) -> Tuple[RealEnclosure, RealEnclosure, RealEnclosure]:
    """Enclosures of (log lam0, log|lam1|, log|lam2|) from ``roots_at(n, bits)``."""
    lam0, lam1, lam2 = roots_at(n, bits)
    return (log_enclosure(lam0, bits), log_enclosure(-lam1, bits), log_enclosure(-lam2, bits))


@lru_cache(maxsize=512)
def log_n_at(n: int, bits: int) -> RealEnclosure:
    return log_enclosure(RealEnclosure.exact(n), bits)


def compute_root_logs(n: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> RootLogs:
    check_n(n)
    logs = None
    bits = policy.start_bits
    for bits in policy.schedule():
        logs = logs_at(n, bits)
        if all(v.width <= policy.target_width for v in logs):
            break
    return RootLogs(*logs, n=n, bits=bits)


def _strictly_inside(value: RealEnclosure, lo: RealEnclosure, hi: RealEnclosure):
    """True/False when certified, None when the enclosures overlap."""
    left = value.compare(lo)
    right = value.compare(hi)
    if left == 1 and right == -1:
        return True
    if left in (-1, 0) or right in (1, 0):
        return False
    return None


def verify_root_brackets(n: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """Certify the six bracket inequalities for lam0, lam1, lam2."""
    check_n(n)
    brackets = root_brackets(n)
    failures: List[str] = []

    def check(bits: int):
        try:
            triple = roots_at(n, bits)
        except PrecisionExhausted:
            return None
        outcome = True
        failures.clear()
        for i, (root, (blo, bhi)) in enumerate(zip(triple, brackets)):
            inside = _strictly_inside(root, rational_enclosure(blo, bits), rational_enclosure(bhi, bits))
            if inside is False:
                failures.append(f"lam{i}")
                outcome = False
            elif inside is None and outcome is True:
                outcome = None
        return outcome

    return run_check("root_brackets", check, policy, {"n": n}, failures)


def verify_root_log_brackets(n: int, policy: PrecisionPolicy = DEFAULT_POLICY) -> VerificationReport:
    """Certify the six inequalities bounding log lam0, log|lam1|, log|lam2|."""
    check_n(n)
    brackets = log_brackets(n)
    failures: List[str] = []

    def check(bits: int):
        try:
            logs = logs_at(n, bits)
        except PrecisionExhausted:
            return None
        log_n = log_n_at(n, bits)
        outcome = True
        failures.clear()
        for i, (value, ((c_lo, q_lo), (c_hi, q_hi))) in enumerate(zip(logs, brackets)):
            lo = c_lo * log_n + rational_enclosure(q_lo, bits)
            hi = c_hi * log_n + rational_enclosure(q_hi, bits)
            inside = _strictly_inside(value, lo, hi)
            if inside is False:
                failures.append(f"log_lam{i}")
                outcome = False
            elif inside is None and outcome is True:
                outcome = None
        return outcome

    return run_check("root_log_brackets", check, policy, {"n": n}, failures)
