"""Point configurations, squared intervals, cross-ratios, chiral variables,
the S3 crossing action and admissibility predicates for rational conformal
field labels.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .exact import MPoly, RatFn

Vec4 = Tuple[Fraction, Fraction, Fraction, Fraction]


class DegenerateConfiguration(Exception):
    """A squared interval needed in a denominator vanishes."""


def vec4(*coords) -> Vec4:
    if len(coords) != 4:
        raise ValueError("points live in four dimensions")
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class PointConfig:
    """A finite sequence of rational 4-vectors (Euclidean-chart points)."""

    points: Tuple[Vec4, ...]

    def __init__(self, points: Sequence[Sequence]):
        object.__setattr__(self, "points", tuple(vec4(*p) for p in points))

    def __len__(self):
        return len(self.points)

    def rho(self, i: int, j: int) -> Fraction:
        return squared_interval(self, i, j)

    def is_nondegenerate(self) -> bool:
        n = len(self.points)
        return all(
            self.rho(i, j) != 0 for i in range(n) for j in range(i + 1, n)
        )

    def subset(self, indices: Sequence[int]) -> "PointConfig":
        return PointConfig([self.points[i] for i in indices])


def squared_interval(config: PointConfig, i: int, j: int) -> Fraction:
    """rho_ij = sum_mu (z_i - z_j)_mu^2."""
    pts = config.points
    if not (0 <= i < len(pts) and 0 <= j < len(pts)):
        raise IndexError("point index out of range")
    return sum((a - b) ** 2 for a, b in zip(pts[i], pts[j]))


def dot4(z: Vec4, w: Vec4) -> Fraction:
    return sum(a * b for a, b in zip(z, w))


def vsub(z: Vec4, w: Vec4) -> Vec4:
    return tuple(a - b for a, b in zip(z, w))


@dataclass(frozen=True)
class CrossRatios:
    s: Fraction
    t: Fraction


def cross_ratios(config: PointConfig) -> CrossRatios:
    """s = rho12 rho34 / (rho13 rho24), t = rho14 rho23 / (rho13 rho24)."""
    if len(config) != 4:
        raise ValueError("cross ratios need exactly four points")
    r = config.rho
    d = r(0, 2) * r(1, 3)
    if d == 0:
        raise DegenerateConfiguration("rho13 * rho24 = 0")
    return CrossRatios(s=r(0, 1) * r(2, 3) / d, t=r(0, 3) * r(1, 2) / d)


def _rat_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    pn, pd = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if pn * pn == x.numerator and pd * pd == x.denominator:
        return Fraction(pn, pd)
    return None


@dataclass(frozen=True)
class ChiralPair:
    """e1 = u+v = 1+s-t, e2 = uv = s, and explicit roots when rational.

    u and v solve X^2 + (t-s-1) X + s = 0; when the discriminant is a
    rational square the smaller root is labelled u (downstream algebra
    only ever uses the symmetric functions, so the labelling is inert).
    """

    e1: Fraction
    e2: Fraction
    discriminant: Fraction
    u: Fraction | None = None
    v: Fraction | None = None


def chiral_from_st(s, t) -> ChiralPair:
    s, t = Fraction(s), Fraction(t)
    e1 = 1 + s - t
    e2 = s
    disc = e1 * e1 - 4 * e2
    root = _rat_sqrt(disc)
    if root is None:
        return ChiralPair(e1, e2, disc)
    return ChiralPair(e1, e2, disc, (e1 - root) / 2, (e1 + root) / 2)


# -- S3 crossing action -----------------------------------------------------


def s3_action(gen: str, f: RatFn, d: int) -> RatFn:
    """Apply a crossing generator to a function of the cross-ratios.

    s12: f -> t^(2d-3) f(s/t, 1/t);  s23: f -> s^(2d-3) f(1/s, t/s).
    Both are involutions and (s12 s23) has order three.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    if f.arity != 2:
        raise ValueError("s3_action acts on functions of (s, t)")
    w = 2 * d - 3
    s = RatFn.var(2, 0)
    t = RatFn.var(2, 1)
    if gen == "s12":
        return t**w * f.subs([s / t, 1 / t])
    if gen == "s23":
        return s**w * f.subs([1 / s, t / s])
    raise ValueError(f"unknown generator {gen!r} (use 's12' or 's23')")


def s3_symmetrize(f: RatFn, d: int) -> RatFn:
    """(1 + s23 + s13) f, with s13 = s12 s23 s12."""
    s23f = s3_action("s23", f, d)
    s13f = s3_action("s12", s3_action("s23", s3_action("s12", f, d), d), d)
    return f + s23f + s13f


# -- admissibility ------------------------------------------------------------


@dataclass(frozen=True)
class SpinLabel:
    """A label (d; j1, j2) with 2d, 2j1, 2j2 integers and j1, j2 >= 0."""

    d: Fraction
    j1: Fraction
    j2: Fraction

    def __init__(self, d, j1, j2):
        d, j1, j2 = Fraction(d), Fraction(j1), Fraction(j2)
        for x in (d, j1, j2):
            if (2 * x).denominator != 1:
                raise ValueError("entries must be half-integers")
        if j1 < 0 or j2 < 0:
            raise ValueError("spins must be nonnegative")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "j1", j1)
        object.__setattr__(self, "j2", j2)


class InadmissibleField(Exception):
    pass


def locality_exponent(label: SpinLabel) -> Tuple[int, int]:
    """(N, epsilon) with N = d + j1 + j2 and epsilon = (-1)^(2j1 + 2j2).

    N must come out a nonnegative integer; 0 is accepted (we read the
    naturals as including zero).
    """
    n = label.d + label.j1 + label.j2
    if n.denominator != 1 or n < 0:
        raise InadmissibleField(f"d + j1 + j2 = {n} is not a nonnegative integer")
    eps = -1 if (2 * label.j1 + 2 * label.j2) % 2 else 1
    return int(n), eps


def gci_3pt_admissible(labels: Sequence[SpinLabel]) -> bool:
    """Existence test for a rational 3-point function of elementary fields.

    Requires each N_i = d_i + j_i1 + j_i2 to be a nonnegative integer,
    the half-sum of the N_i to be an integer, and the dimensions to sum
    to an integer.
    """
    if len(labels) != 3:
        raise ValueError("need exactly three labels")
    ns = []
    for lab in labels:
        n = lab.d + lab.j1 + lab.j2
        if n.denominator != 1 or n < 0:
            return False
        ns.append(n)
    if (sum(ns) / 2).denominator != 1:
        return False
    if sum(l.d for l in labels).denominator != 1:
        return False
    return True


def harmonic_dimension(m: int, D: int) -> int:
    """Dimension of degree-m homogeneous harmonic polynomials in D variables."""
    if m < 0 or D < 2:
        raise ValueError("need m >= 0 and D >= 2")
    return math.comb(m + D - 1, D - 1) - math.comb(m + D - 3, D - 1)


# -- seeded random configurations ---------------------------------------------


def random_config(
    rng: random.Random,
    n_points: int,
    num_range: int = 9,
    dens: Sequence[int] = (1, 2, 3),
    max_tries: int = 2000,
) -> PointConfig:
    """A non-degenerate configuration of rational points, reproducibly.

    Coordinates have numerators in [-num_range, num_range] and denominators
    drawn from `dens`; configurations with any vanishing pairwise interval
    are rejected and redrawn.
    """
    for _ in range(max_tries):
        pts = [
            [
                Fraction(rng.randint(-num_range, num_range), rng.choice(dens))
                for _ in range(4)
            ]
            for _ in range(n_points)
        ]
        config = PointConfig(pts)
        if config.is_nondegenerate():
            return config
    raise RuntimeError("could not draw a non-degenerate configuration")
