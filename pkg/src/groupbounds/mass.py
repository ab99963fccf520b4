"""Zeta values at negative odd integers, Euler characteristics and masses."""

from __future__ import annotations

from fractions import Fraction

from .arith import FactoredInteger, bernoulli, v_ell
from .bounds import m_bound
from .cyclo import Rationals, invariants
from .errors import DomainError
from .rootdata import RootSystem

# |W| / |W_K| for split E8 over Q
C_E8 = FactoredInteger({3: 3, 5: 1})


def zeta_neg(d: int) -> Fraction:
    """``zeta(1 - d) = -B_d / d`` for even ``d >= 2``."""
    if d < 2:
        raise DomainError(f"zeta_neg needs d >= 2, got {d}")
    if d % 2:
        raise DomainError(f"zeta(1-{d}) = 0 for odd d: term is zero")
    return -bernoulli(d) / d


def _check_even(R: RootSystem) -> None:
    for d in R.degrees:
        if d % 2:
            raise DomainError(f"{R.label} has odd degree {d}; the product vanishes")


def mass(R: RootSystem) -> Fraction:
    """``prod_i zeta(1 - d_i) / 2``."""
    _check_even(R)
    out = Fraction(1)
    for d in R.degrees:
        out *= zeta_neg(d) / 2
    return out


def mass_denominator_exponent(R: RootSystem, ell: int) -> tuple[int, int]:
    """``(v_ell(denominator of the mass), M-bound of R over Q at ell)``."""
    m = mass(R)
    return v_ell(m.denominator, ell), m_bound(R, invariants(Rationals(), ell), ell).value


def euler_characteristic(R: RootSystem, c: FactoredInteger | int) -> Fraction:
    """``c * prod_i zeta(1 - d_i) / 2`` with the index ``c = |W|/|W_K|`` supplied."""
    return int(c) * mass(R)


def factored_denominator(x: Fraction) -> FactoredInteger:
    return FactoredInteger.from_int(x.denominator)
