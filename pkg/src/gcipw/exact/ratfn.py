"""Normalized rational functions num/den over sparse polynomials.

Normalization is deliberately cheap: joint content reduction plus a
canonical sign for the denominator's lex-leading coefficient.  No
multivariate gcd cancellation is attempted; equality is decided by
cross-multiplication, which is exact and cheap at the sizes used here.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .mpoly import MPoly


def _joint_content(*polys: MPoly) -> Fraction:
    """gcd of all numerators over lcm of all denominators across the polys."""
    num_g = 0
    den_l = 1
    for p in polys:
        for c in p.terms.values():
            num_g = gcd(num_g, c.numerator)
            den_l = den_l * c.denominator // gcd(den_l, c.denominator)
    if num_g == 0:
        return Fraction(1)
    return Fraction(num_g, den_l)


def _lex_leading_coeff(p: MPoly) -> Fraction:
    e = max(p.terms)
    return p.terms[e]


class RatFn:
    """Rational function in a fixed number of variables."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.const(num.arity, 1)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.arity != den.arity:
            raise ValueError("arity mismatch between num and den")
        if num.is_zero():
            den = MPoly.const(num.arity, 1)
        else:
            c = _joint_content(num, den)
            if c != 1:
                num = num.map_coeff(lambda x: x / c)
                den = den.map_coeff(lambda x: x / c)
            if _lex_leading_coeff(den) < 0:
                num, den = -num, -den
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, p: MPoly) -> "RatFn":
        return cls(p)

    @classmethod
    def const(cls, arity: int, c) -> "RatFn":
        return cls(MPoly.const(arity, Fraction(c)))

    @classmethod
    def var(cls, arity: int, i: int) -> "RatFn":
        return cls(MPoly.var(arity, i))

    @property
    def arity(self) -> int:
        return self.num.arity

    # -- field operations -------------------------------------------------

    def _coerce(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            if other.arity != self.arity:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, MPoly):
            return RatFn(other)
        return RatFn.const(self.arity, other)

    def __add__(self, other):
        other = self._coerce(other)
        return RatFn(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFn(self.den, self.num) ** (-n)
        return RatFn(self.num**n, self.den**n)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        """True iff den divides num exactly (checked by attempting division)."""
        if self.num.is_zero():
            return True
        try:
            self.as_poly()
            return True
        except ValueError:
            return False

    def as_poly(self) -> MPoly:
        """Return the numerator/denominator quotient if it is a polynomial."""
        from .mpoly import divide_exact

        if self.den == MPoly.const(self.arity, 1):
            return self.num
        if self.den.total_degree() == 0:
            c = self.den.constant_term()
            return self.num.map_coeff(lambda x: x / c)
        last_err = None
        for v in range(self.arity):
            if self.den.degree_in(v) > 0:
                try:
                    return divide_exact(self.num, self.den, v)
                except ValueError as err:
                    last_err = err
        raise ValueError(f"not a polynomial: {last_err}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MPoly)):
            other = self._coerce(other)
        if not isinstance(other, RatFn):
            return NotImplemented
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFn is unhashable (equality is cross-multiplicative)")

    # -- maps ----------------------------------------------------------------

    def eval(self, point: Sequence[Fraction]) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.eval(point) / d

    def subs(self, images: Sequence["RatFn"]) -> "RatFn":
        """Substitute a rational function for each variable."""
        if len(images) != self.arity:
            raise ValueError("need one image per variable")
        arity = images[0].arity

        def sub_poly(p: MPoly) -> RatFn:
            total = RatFn.const(arity, 0)
            for e, c in p.terms.items():
                m = RatFn.const(arity, c)
                for img, k in zip(images, e):
                    if k:
                        m = m * img**k
                total = total + m
            return total

        return sub_poly(self.num) / sub_poly(self.den)

    def deriv(self, i: int) -> "RatFn":
        """Partial derivative via the quotient rule."""
        return RatFn(
            self.num.deriv(i) * self.den - self.num * self.den.deriv(i),
            self.den * self.den,
        )

    def __repr__(self):
        return f"RatFn({self.num!r} / {self.den!r})"


def ratfn_eq(a: RatFn, b: RatFn) -> bool:
    """Equality by cross-multiplication: a.num b.den == b.num a.den."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    return a == b
