"""The twisted cubic form F(X, Y; n, s, t) = prod_i (X - alpha_i Y).

alpha_0 = lam0^s lam1^t and alpha_1, alpha_2 are its images under the cyclic
automorphism.  Since lam1 = 1 / (lam0 lam2), alpha_0 = lam0^(s-t) lam2^(-t),
which is the form used for all exponent bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from .cubic_field import check_n, roots_at
from .numerics import RealEnclosure, pow_int_enclosure
from .order import (
    OrderElement,
    UnitWord,
    conjugate,
    elementary_symmetric,
    exponent_conjugate,
)


@dataclass(frozen=True)
class TwistExponents:
    s: int
    t: int

    @property
    def tau(self) -> int:
        return max(abs(self.s), abs(self.t))


@dataclass(frozen=True)
class NormFormCoeffs:
    """F = X^3 - e1 X^2 Y + e2 X Y^2 - e3 Y^3."""

    n: int
    s: int
    t: int
    e1: int
    e2: int
    e3: int

    def __call__(self, x: int, y: int) -> int:
        return ((x - self.e1 * y) * x + self.e2 * y * y) * x - self.e3 * y * y * y


def alpha_exponents(s: int, t: int, i: int = 0) -> Tuple[int, int]:
    """Exponents (a, b) with alpha_i = lam0^a lam2^b."""
    return exponent_conjugate(s - t, -t, i)


@lru_cache(maxsize=4096)
def alpha_elements(n: int, s: int, t: int) -> Tuple[OrderElement, OrderElement, OrderElement]:
    check_n(n)
    lam0 = OrderElement.lam0(n)
    a0 = (lam0 ** s) * (conjugate(lam0) ** t)
    a1 = conjugate(a0)
    return (a0, a1, conjugate(a1))


def alpha_element(n: int, s: int, t: int, i: int) -> OrderElement:
    if i not in (0, 1, 2):
        raise ValueError("conjugate index must be 0, 1 or 2")
    return alpha_elements(n, s, t)[i]


def alpha_word(s: int, t: int) -> UnitWord:
    a, b = alpha_exponents(s, t)
    return UnitWord(1, a, b)


@lru_cache(maxsize=4096)
def form_coeffs(n: int, s: int, t: int) -> NormFormCoeffs:
    """Exact coefficients from the symmetric functions of alpha_0's regular matrix."""
    e1, e2, e3 = elementary_symmetric(alpha_element(n, s, t, 0))
    return NormFormCoeffs(n, s, t, e1, e2, e3)


def evaluate_form(n: int, s: int, t: int, x: int, y: int) -> int:
    return form_coeffs(n, s, t)(x, y)


@lru_cache(maxsize=4096)
def alpha_enclosures(n: int, s: int, t: int, bits: int) -> Tuple[RealEnclosure, RealEnclosure, RealEnclosure]:
    """Enclosures of (alpha_0, alpha_1, alpha_2) as products of root powers.

    Evaluated as lam_i^s * lam_{i+1}^t rather than through coordinates, which
    avoids cancellation between large coordinates.
    """
    lams = roots_at(n, bits)
    work = bits + 16
    out = []
    for i in range(3):
        p = pow_int_enclosure(lams[i], s, work)
        q = pow_int_enclosure(lams[(i + 1) % 3], t, work)
        out.append((p * q).round(work))
    return tuple(out)
