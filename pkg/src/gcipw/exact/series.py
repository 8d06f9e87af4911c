"""Truncated power series: univariate (PSeries) and bivariate (Series2).

Series2 uses total-degree truncation: coefficients are stored for
exponent pairs (i, j) with i + j <= order, and products are truncated
back to the same total order.  All coefficients are exact Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .mpoly import MPoly


class PSeries:
    """Univariate truncated series: coeffs[k] is the coefficient of x^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: List[Fraction]):
        self.coeffs = [Fraction(c) for c in coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def truncate(self, order: int) -> "PSeries":
        c = self.coeffs[: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        return PSeries(c)

    def __add__(self, other: "PSeries") -> "PSeries":
        n = min(self.order, other.order)
        return PSeries([self[k] + other[k] for k in range(n + 1)])

    def __sub__(self, other: "PSeries") -> "PSeries":
        n = min(self.order, other.order)
        return PSeries([self[k] - other[k] for k in range(n + 1)])

    def __mul__(self, other):
        if isinstance(other, PSeries):
            n = min(self.order, other.order)
            out = [Fraction(0)] * (n + 1)
            for i, a in enumerate(self.coeffs[: n + 1]):
                if not a:
                    continue
                for j in range(0, n + 1 - i):
                    b = other[j]
                    if b:
                        out[i + j] += a * b
            return PSeries(out)
        return PSeries([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __neg__(self):
        return PSeries([-c for c in self.coeffs])

    def shift(self, k: int) -> "PSeries":
        """Multiply by x^k (k may be negative if low coefficients vanish)."""
        if k >= 0:
            return PSeries([Fraction(0)] * k + self.coeffs)
        if any(self.coeffs[i] for i in range(min(-k, len(self.coeffs)))):
            raise ValueError("shift would drop nonzero low-order coefficients")
        return PSeries(self.coeffs[-k:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        return f"PSeries({self.coeffs!r})"


Key = Tuple[int, int]


class Series2:
    """Bivariate series in (u, v), truncated at total degree `order`."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Dict[Key, Fraction] | None = None):
        self.order = order
        self.coeffs: Dict[Key, Fraction] = {}
        if coeffs:
            for (i, j), c in coeffs.items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                if i + j <= order and c:
                    self.coeffs[(i, j)] = Fraction(c)

    @classmethod
    def zero(cls, order: int) -> "Series2":
        return cls(order)

    @classmethod
    def const(cls, order: int, c) -> "Series2":
        return cls(order, {(0, 0): Fraction(c)})

    @classmethod
    def from_poly(cls, p: MPoly, order: int) -> "Series2":
        """Truncate a 2-variable polynomial to a Series2."""
        if p.arity != 2:
            raise ValueError("from_poly needs a bivariate polynomial")
        return cls(order, {e: c for e, c in p.terms.items() if sum(e) <= order})

    def __getitem__(self, key: Key) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def truncate(self, order: int) -> "Series2":
        return Series2(order, {e: c for e, c in self.coeffs.items() if sum(e) <= order})

    def _merge(self, other: "Series2", sign: int) -> "Series2":
        order = min(self.order, other.order)
        coeffs = {e: c for e, c in self.coeffs.items() if sum(e) <= order}
        for e, c in other.coeffs.items():
            if sum(e) > order:
                continue
            s = coeffs.get(e, Fraction(0)) + sign * c
            if s:
                coeffs[e] = s
            else:
                coeffs.pop(e, None)
        return Series2(order, coeffs)

    def __add__(self, other: "Series2") -> "Series2":
        return self._merge(other, 1)

    def __sub__(self, other: "Series2") -> "Series2":
        return self._merge(other, -1)

    def __neg__(self) -> "Series2":
        return Series2(self.order, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Series2):
            return Series2(
                self.order, {e: c * other for e, c in self.coeffs.items()}
            )
        order = min(self.order, other.order)
        out: Dict[Key, Fraction] = {}
        for (i1, j1), c1 in self.coeffs.items():
            if i1 + j1 > order:
                continue
            for (i2, j2), c2 in other.coeffs.items():
                i, j = i1 + i2, j1 + j2
                if i + j > order:
                    continue
                key = (i, j)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Series2(order, out)

    __rmul__ = __mul__

    def shift(self, a: int, b: int) -> "Series2":
        """Multiply by u^a v^b; the valid order grows by a + b."""
        return Series2(
            self.order + a + b,
            {(i + a, j + b): c for (i, j), c in self.coeffs.items()},
        )

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, Series2):
            return NotImplemented
        order = min(self.order, other.order)
        return self.truncate(order).coeffs == other.truncate(order).coeffs

    def __hash__(self):
        raise TypeError("Series2 is unhashable")

    def v_slice(self, j: int) -> PSeries:
        """Coefficient of v^j as a series in u (valid to degree order - j)."""
        n = self.order - j
        out = [Fraction(0)] * (n + 1)
        for (a, b), c in self.coeffs.items():
            if b == j and a <= n:
                out[a] = c
        return PSeries(out)

    def swap(self) -> "Series2":
        """Exchange u and v."""
        return Series2(self.order, {(j, i): c for (i, j), c in self.coeffs.items()})

    def __repr__(self):
        items = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        return f"Series2(order={self.order}, {dict(items)!r})"


def series2_div_unit(num: Series2, den: Series2) -> Series2:
    """Divide by a series with nonzero constant term, order by order."""
    d0 = den[(0, 0)]
    if d0 == 0:
        raise ZeroDivisionError("series division by non-unit (zero constant term)")
    order = min(num.order, den.order)
    out: Dict[Key, Fraction] = {}
    # solve num = out * den for out, by increasing total degree then lex
    for deg in range(order + 1):
        for i in range(deg, -1, -1):
            j = deg - i
            acc = num[(i, j)]
            for (a, b), c in out.items():
                da, db = i - a, j - b
                if da >= 0 and db >= 0 and (da, db) != (0, 0):
                    dc = den[(da, db)]
                    if dc:
                        acc -= c * dc
            if acc:
                out[(i, j)] = acc / d0
    return Series2(order, out)


def series2_outer(fu: PSeries, gv: PSeries, order: int) -> "Series2":
    """The product f(u) * g(v) as a Series2."""
    coeffs: Dict[Key, Fraction] = {}
    for i, a in enumerate(fu.coeffs):
        if not a or i > order:
            continue
        for j, b in enumerate(gv.coeffs):
            if j > order - i:
                break
            if b:
                coeffs[(i, j)] = a * b
    return Series2(order, coeffs)


def series2_div_antisym(f: Series2) -> Series2:
    """Exact division of an antisymmetric series by (u - v).

    The input must satisfy f(u, v) = -f(v, u) on all stored coefficients;
    the result g satisfies (u - v) * g = f through the input's order and
    is returned with order reduced by one.

    Raises ValueError if f is not antisymmetric or the division leaves a
    residue (which signals a malformed partial-wave numerator).
    """
    for (i, j), c in f.coeffs.items():
        if f[(j, i)] != -c:
            raise ValueError("input is not antisymmetric under u <-> v")
    order = f.order - 1
    g: Dict[Key, Fraction] = {}

    def gval(i: int, j: int) -> Fraction:
        return g.get((i, j), Fraction(0))

    # from f[a][b] = g[a-1][b] - g[a][b-1]: fill columns in increasing v-degree
    for b in range(order + 1):
        for a in range(order - b, -1, -1):
            val = f[(a + 1, b)] + (gval(a + 1, b - 1) if b else Fraction(0))
            if val:
                g[(a, b)] = val
    result = Series2(order, g)
    umv = Series2(f.order, {(1, 0): Fraction(1), (0, 1): Fraction(-1)})
    check = umv * Series2(f.order, dict(result.coeffs))
    if check != f:
        raise ValueError("division by (u - v) left a residue")
    return result
