"""Exact arithmetic in the order Z[lam0], lam0 a root of X^3 - (n-1)X^2 - (n+2)X - 1.

Elements are integer coordinate triples in the basis (1, lam0, lam0^2).  The
cyclic automorphism ``conjugate`` sends lam0 to lam1 = lam0^2 - n*lam0 - 2,
lam1 to lam2 = -1 - 1/lam0, and lam2 back to lam0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .numerics import RealEnclosure


class OrderError(ArithmeticError):
    pass


class MismatchedParameterError(OrderError, ValueError):
    pass


class NotAUnitError(OrderError, ValueError):
    pass


@dataclass(frozen=True)
class OrderElement:
    n: int
    c0: int
    c1: int = 0
    c2: int = 0

    # construction -----------------------------------------------------

    @classmethod
    def scalar(cls, n: int, value: int) -> "OrderElement":
        return cls(n, value, 0, 0)

    @classmethod
    def one(cls, n: int) -> "OrderElement":
        return cls(n, 1, 0, 0)

    @classmethod
    def lam0(cls, n: int) -> "OrderElement":
        return cls(n, 0, 1, 0)

    @classmethod
    def lam1(cls, n: int) -> "OrderElement":
        return cls(n, -2, -n, 1)

    @classmethod
    def lam2(cls, n: int) -> "OrderElement":
        return cls(n, n + 1, n - 1, -1)

    @property
    def coords(self) -> Tuple[int, int, int]:
        return (self.c0, self.c1, self.c2)

    def is_rational(self) -> bool:
        return self.c1 == 0 and self.c2 == 0

    def is_zero(self) -> bool:
        return self.c0 == 0 and self.c1 == 0 and self.c2 == 0

    def max_bits(self) -> int:
        return max(abs(self.c0).bit_length(), abs(self.c1).bit_length(), abs(self.c2).bit_length())

    # ring operations ----------------------------------------------------

    def _coerce(self, other) -> "OrderElement":
        if isinstance(other, int):
            return OrderElement(self.n, other)
        if isinstance(other, OrderElement):
            if other.n != self.n:
                raise MismatchedParameterError(f"elements of Z[lam0] for n={self.n} and n={other.n}")
            return other
        return NotImplemented

    def __add__(self, other) -> "OrderElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.n, self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    __radd__ = __add__

    def __neg__(self) -> "OrderElement":
        return OrderElement(self.n, -self.c0, -self.c1, -self.c2)

    def __sub__(self, other) -> "OrderElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return OrderElement(self.n, self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __rsub__(self, other) -> "OrderElement":
        return self._coerce(other) - self

    def __mul__(self, other) -> "OrderElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "OrderElement":
        if k < 0:
            return invert_unit(self) ** (-k)
        result = OrderElement.one(self.n)
        base = self
        while k:
            if k & 1:
                result = mul(result, base)
            k >>= 1
            if k:
                base = mul(base, base)
        return result

    def embed(self, root: RealEnclosure) -> RealEnclosure:
        """Enclosure of the real value obtained by substituting ``root`` for lam0."""
        return self.c0 + root * (self.c1 + root * self.c2)

    def __str__(self) -> str:
        return f"({self.c0}, {self.c1}, {self.c2})"


def mul(u: OrderElement, v: OrderElement) -> OrderElement:
    """Exact product, reduced with lam0^3 = (n-1)lam0^2 + (n+2)lam0 + 1."""
    if u.n != v.n:
        raise MismatchedParameterError(f"elements of Z[lam0] for n={u.n} and n={v.n}")
    n = u.n
    a0, a1, a2 = u.coords
    b0, b1, b2 = v.coords
    d0 = a0 * b0
    d1 = a0 * b1 + a1 * b0
    d2 = a0 * b2 + a1 * b1 + a2 * b0
    d3 = a1 * b2 + a2 * b1
    d4 = a2 * b2
    p, q = n - 1, n + 2
    # lam^4 = lam * lam^3 = p*lam^3 + q*lam^2 + lam
    d3 += p * d4
    d2 += q * d4
    d1 += d4
    # lam^3 = p*lam^2 + q*lam + 1
    return OrderElement(n, d0 + d3, d1 + q * d3, d2 + p * d3)


def regular_matrix(u: OrderElement) -> Tuple[Tuple[int, ...], ...]:
    """Matrix of multiplication by ``u``; column i holds the coordinates of u*lam0^i."""
    lam = OrderElement.lam0(u.n)
    cols = [u, mul(u, lam)]
    cols.append(mul(cols[1], lam))
    return tuple(tuple(col.coords[r] for col in cols) for r in range(3))


def _det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def norm(u: OrderElement) -> int:
    return _det3(regular_matrix(u))


def trace(u: OrderElement) -> int:
    m = regular_matrix(u)
    return m[0][0] + m[1][1] + m[2][2]


@dataclass(frozen=True)
class CharPoly:
    """Monic ``X^3 + p2*X^2 + p1*X + p0``."""

    p2: int
    p1: int
    p0: int

    @property
    def coefficients(self) -> Tuple[int, int, int, int]:
        """Coefficients from the leading term down."""
        return (1, self.p2, self.p1, self.p0)

    def __call__(self, x):
        return ((x + self.p2) * x + self.p1) * x + self.p0


def elementary_symmetric(u: OrderElement) -> Tuple[int, int, int]:
    """(e1, e2, e3) of the three conjugates of ``u``: trace, second symmetric function, norm."""
    m = regular_matrix(u)
    tr = m[0][0] + m[1][1] + m[2][2]
    tr_sq = sum(m[i][k] * m[k][i] for i in range(3) for k in range(3))
    e2, rem = divmod(tr * tr - tr_sq, 2)
    assert rem == 0
    return tr, e2, _det3(m)


def char_poly(u: OrderElement) -> CharPoly:
    e1, e2, e3 = elementary_symmetric(u)
    return CharPoly(-e1, e2, -e3)


def conjugate(u: OrderElement) -> OrderElement:
    """Image under the automorphism lam0 -> lam1 = lam0^2 - n*lam0 - 2."""
    lam1 = OrderElement.lam1(u.n)
    return u.c0 + lam1 * (u.c1 + lam1 * u.c2)


def conjugates(u: OrderElement) -> Tuple[OrderElement, OrderElement, OrderElement]:
    u1 = conjugate(u)
    return (u, u1, conjugate(u1))


def invert_unit(u: OrderElement) -> OrderElement:
    """Exact inverse of a unit (norm +-1), via the adjugate of its regular matrix."""
    m = regular_matrix(u)
    det = _det3(m)
    if det not in (1, -1):
        raise NotAUnitError(f"{u} has norm {det}, not a unit")
    # first column of adj(M) gives M^{-1} e_0 up to the factor det
    c0 = m[1][1] * m[2][2] - m[1][2] * m[2][1]
    c1 = -(m[1][0] * m[2][2] - m[1][2] * m[2][0])
    c2 = m[1][0] * m[2][1] - m[1][1] * m[2][0]
    return OrderElement(u.n, det * c0, det * c1, det * c2)


@dataclass(frozen=True)
class UnitWord:
    """The unit ``sign * lam0**a * lam2**b``."""

    sign: int
    a: int
    b: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __mul__(self, other: "UnitWord") -> "UnitWord":
        return UnitWord(self.sign * other.sign, self.a + other.a, self.b + other.b)


def unit_word_to_element(w: UnitWord, n: int) -> OrderElement:
    return w.sign * (OrderElement.lam0(n) ** w.a) * (OrderElement.lam2(n) ** w.b)


def exponent_conjugate(a: int, b: int, times: int = 1) -> Tuple[int, int]:
    """Exponent pair of sigma^times(lam0^a lam2^b) in the (lam0, lam2) basis."""
    for _ in range(times % 3):
        a, b = -a + b, -a
    return a, b


def siegel_residual(
    j: int,
    k: int,
    l: int,
    alphas: Sequence[OrderElement],
    betas: Sequence[OrderElement],
) -> OrderElement:
    """beta_j(alpha_k - alpha_l) + beta_l(alpha_j - alpha_k) + beta_k(alpha_l - alpha_j).

    Zero whenever beta_i = x - alpha_i*y.  The middle term uses beta_l: this
    is the form obtained by clearing denominators in the normalised unit
    equation, and the one that vanishes identically.
    """
    if sorted((j, k, l)) != [0, 1, 2]:
        raise ValueError("(j, k, l) must be a permutation of (0, 1, 2)")
    aj, ak, al = alphas[j], alphas[k], alphas[l]
    bj, bk, bl = betas[j], betas[k], betas[l]
    return bj * (ak - al) + bl * (aj - ak) + bk * (al - aj)
