"""Crossing-symmetric truncated 4-point functions of a dimension-4 scalar.

The five-parameter family is assembled from three twist-2 basis
polynomials J_nu and two higher-twist blocks st*(Q1 - 2Q2), st*Q2.  The
companion rational functions j_nu generate the J_nu under the weighted
S3 symmetrization, with eigenvalues (1, 1, 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .exact import MPoly, RatFn
from .kinematics import (
    DegenerateConfiguration,
    PointConfig,
    cross_ratios,
    s3_action,
    s3_symmetrize,
)

S, T = MPoly.variables(2)
ONE = MPoly.const(2, 1)


@dataclass(frozen=True)
class PWParams:
    """The (a0, a1, a2, b, c) 4-point parameters and the 2-point norm B."""

    a0: Fraction = Fraction(0)
    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    B: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a0", "a1", "a2", "b", "c", "B"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.B < 0:
            raise ValueError("the 2-point normalization B must be >= 0")

    @classmethod
    def unit(cls, name: str) -> "PWParams":
        return cls(**{name: Fraction(1)})


def basis_J(nu: int) -> MPoly:
    """The three crossing-symmetric twist-2 polynomials."""
    s, t = S, T
    if nu == 0:
        return s**2 * (1 + s) + t**2 * (1 + t) + s**2 * t**2 * (s + t)
    if nu == 1:
        return (
            s * (1 - s) * (1 - s**2)
            + t * (1 - t) * (1 - t**2)
            + s * t * ((s - t) * (s**2 - t**2) - 2 * basis_Q(1))
        )
    if nu == 2:
        return (
            (ONE + t**3) * ((1 + s - t) ** 2 - s)
            - 3 * s * (1 - t)
            + s**3 * ((1 + t - s) ** 2 - t)
        )
    raise ValueError("nu must be 0, 1 or 2")


def basis_Q(j: int) -> MPoly:
    """Q1 = 1 + s^2 + t^2, Q2 = s + t + st."""
    s, t = S, T
    if j == 1:
        return ONE + s**2 + t**2
    if j == 2:
        return s + t + s * t
    raise ValueError("j must be 1 or 2")


def basis_j_small(nu: int) -> RatFn:
    """The twist-2 channel functions j_nu(s, t)."""
    s = RatFn.var(2, 0)
    t = RatFn.var(2, 1)
    if nu == 0:
        return 1 + 1 / t
    if nu == 1:
        return ((1 - t) / t) ** 2 * (1 + t - s) - 2 * s / t
    if nu == 2:
        return (1 + 1 / t**3) * ((1 + s - t) ** 2 - s) - 3 * s * (1 - t) / t**3
    raise ValueError("nu must be 0, 1 or 2")


EIGENVALUES = (Fraction(1), Fraction(1), Fraction(1, 2))
GAP_ORDERS = (2, 1, 3)


def assemble_P4(p: PWParams) -> MPoly:
    """P4 = sum a_nu J_nu + st*(b*(Q1 - 2Q2) + c*Q2)."""
    s, t = S, T
    poly = (
        p.a0 * basis_J(0)
        + p.a1 * basis_J(1)
        + p.a2 * basis_J(2)
        + s * t * (p.b * (basis_Q(1) - 2 * basis_Q(2)) + p.c * basis_Q(2))
    )
    return poly if isinstance(poly, MPoly) else MPoly.const(2, 0)


def crossing_check(poly: MPoly, d: int) -> bool:
    """True iff the polynomial is invariant under both S3 generators."""
    f = RatFn.from_poly(poly)
    return s3_action("s12", f, d) == f and s3_action("s23", f, d) == f


def crossing_dimension(d: int) -> int:
    """Number of independent crossing-symmetric polynomials: floor(d^2/3)."""
    if d < 2:
        raise ValueError("need d >= 2")
    return d * d // 3


class BasisIdentityError(Exception):
    """The eigenfunction identity failed (a basis implementation bug)."""


def eigen_check(nu: int) -> Tuple[Fraction, int, MPoly]:
    """Verify the symmetrization eigen-relation for channel nu.

    Checks J_nu = lambda_nu (1 + s23 + s13)[t^3 j_nu] exactly and returns
    (lambda_nu, sigma_nu, q_nu) where

        lambda_nu (1 + s23 + s13)[t^3 j_nu] - t^3 j_nu = s^sigma_nu q_nu

    with q_nu(0, t) != 0.
    """
    lam = EIGENVALUES[nu]
    t = RatFn.var(2, 1)
    t3j = t**3 * basis_j_small(nu)
    sym = lam * s3_symmetrize(t3j, 4)
    if not sym == RatFn.from_poly(basis_J(nu)):
        raise BasisIdentityError(f"symmetrization of t^3 j_{nu} is not J_{nu}")
    diff = (sym - t3j).as_poly()
    sigma = min(e[0] for e in diff.terms) if not diff.is_zero() else 0
    if sigma < 1:
        raise BasisIdentityError(f"gap order sigma_{nu} = {sigma} < 1")
    q = MPoly(2, {(a - sigma, b): c for (a, b), c in diff.terms.items()})
    if all(e[0] != 0 for e in q.terms):
        raise BasisIdentityError(f"q_{nu}(0, t) = 0")
    if sigma != GAP_ORDERS[nu]:
        raise BasisIdentityError(
            f"sigma_{nu} = {sigma}, expected {GAP_ORDERS[nu]}"
        )
    return lam, sigma, q


def truncated_4pt_value(poly: MPoly, config: PointConfig, d: int) -> Fraction:
    """(rho13 rho24)^(d-2) (rho12 rho23 rho34 rho14)^(1-d) P(s, t)."""
    if len(config) != 4:
        raise ValueError("need a 4-point configuration")
    r = config.rho
    ring = r(0, 1) * r(1, 2) * r(2, 3) * r(0, 3)
    diag = r(0, 2) * r(1, 3)
    if ring == 0 or diag == 0:
        raise DegenerateConfiguration("vanishing squared interval")
    cr = cross_ratios(config)
    return diag ** (d - 2) * ring ** (1 - d) * poly.eval([cr.s, cr.t])
