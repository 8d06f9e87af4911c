"""Gaussian rationals: elements of Q(i) with exact Fraction components."""

from __future__ import annotations

from fractions import Fraction


class GaussRat:
    """A complex number re + i*im with rational re, im.

    Supports ring arithmetic and conjugation; used for the entries of
    quaternion (slash) matrices so that traces stay exact.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(x) -> "GaussRat | None":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        return None

    def __add__(self, other):
        other = GaussRat.coerce(other)
        if other is None:
            return NotImplemented
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = GaussRat.coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        other = GaussRat.coerce(other)
        if other is None:
            return NotImplemented
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat.coerce(other)
        if other is None:
            return NotImplemented
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussRat")
        return self * GaussRat(other.re / n, -other.im / n)

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def as_fraction(self) -> Fraction:
        """Return the real part, requiring the imaginary part to vanish."""
        if self.im != 0:
            raise ValueError(f"nonreal GaussRat {self!r}")
        return self.re

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GaussRat({self.re!r}, {self.im!r})"


I_UNIT = GaussRat(0, 1)


class GaussInt:
    """Gaussian integer with plain-int components.

    A fast coefficient ring for the symbolic trace identities, whose
    coefficients never leave Z[i]; convert to GaussRat/Fraction at the
    boundary.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re
        self.im = im

    @staticmethod
    def coerce(x):
        if isinstance(x, GaussInt):
            return x
        if isinstance(x, int):
            return GaussInt(x)
        return None

    def __add__(self, other):
        other = GaussInt.coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other):
        other = GaussInt.coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = GaussInt.coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = GaussInt.coerce(other)
        if other is None:
            return NotImplemented
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def as_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"nonreal GaussInt {self.re}+{self.im}i")
        return Fraction(self.re)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussInt):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __bool__(self):
        return bool(self.re or self.im)

    def __repr__(self):
        return f"GaussInt({self.re}, {self.im})"


I_INT = GaussInt(0, 1)
