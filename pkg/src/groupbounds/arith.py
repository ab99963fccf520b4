"""Exact integer and rational arithmetic.

Factored integers, l-adic valuations, Bernoulli numbers, cyclotomic
polynomials and fixed-precision l-adic residues.  Nothing in here touches
floating point.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .errors import DomainError, PrecisionError

TRIAL_LIMIT = 10**6
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class Infinite(enum.Enum):
    """The value ``infinity`` for invariants and bounds (never an integer)."""

    INF = "inf"

    def __repr__(self) -> str:
        return "INF"

    def __str__(self) -> str:
        return "inf"


INF = Infinite.INF

IntOrInf = Union[int, Infinite]
Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# primes and factorization


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases.

    Deterministic for ``n < 3.3 * 10**24``, which covers every 64-bit input.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes ``p <= n`` (sieve of Eratosthenes)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def _pollard_brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite ``n``."""
    rng = random.Random(n)
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` as ``{prime: exponent}``.

    Trial division up to 10**6, then Miller-Rabin; any composite cofactor
    left over is split with Pollard-Brent.
    """
    if n < 1:
        raise DomainError(f"cannot factor {n}: expected a positive integer")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    # wheel over residues coprime to 30
    p, steps, i = 7, (4, 2, 4, 2, 4, 6, 2, 6), 0
    while p * p <= n and p <= TRIAL_LIMIT:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += steps[i]
        i = (i + 1) % 8
    if n > 1:
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m) or m < p * p:
                factors[m] = factors.get(m, 0) + 1
                continue
            d = _pollard_brent(m)
            stack.extend((d, m // d))
    return dict(sorted(factors.items()))


def multiplicative_order(a: int, n: int) -> int:
    """Order of ``a`` in ``(Z/nZ)*``."""
    if n < 1 or math.gcd(a, n) != 1:
        raise DomainError(f"{a} is not a unit modulo {n}")
    if n == 1:
        return 1
    order = euler_phi(n)
    for p in factorize(order):
        while order % p == 0 and pow(a, order // p, n) == 1:
            order //= p
    return order


def primitive_root(ell: int) -> int:
    """Least generator of ``(Z/ell Z)*`` for a prime ``ell``."""
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    for g in range(1, ell):
        if multiplicative_order(g, ell) == ell - 1:
            return g
    raise AssertionError("unreachable")


def euler_phi(t: int) -> int:
    if t < 1:
        raise DomainError(f"euler_phi needs t >= 1, got {t}")
    result = t
    for p in factorize(t):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# ---------------------------------------------------------------------------
# valuations


def v_ell(x: Rational, ell: int) -> int:
    """Exponent of the prime ``ell`` in the nonzero rational ``x``."""
    if x == 0:
        raise DomainError("valuation of zero undefined")
    if ell < 2:
        raise DomainError(f"{ell} is not prime")
    x = Fraction(x)
    return _v_int(x.numerator, ell) - _v_int(x.denominator, ell)


def _v_int(n: int, ell: int) -> int:
    n = abs(n)
    v = 0
    while n % ell == 0:
        n //= ell
        v += 1
    return v


def v_factorial(n: int, ell: int) -> int:
    """``v_ell(n!)`` by Legendre's formula."""
    total, q = 0, ell
    while q <= n:
        total += n // q
        q *= ell
    return total


# ---------------------------------------------------------------------------
# factored integers


class FactoredInteger:
    """A positive integer stored as a prime -> exponent map.

    Instances are immutable.  The empty map is 1.
    """

    __slots__ = ("_factors",)

    def __init__(self, factors: Mapping[int, int] | None = None):
        clean: dict[int, int] = {}
        for p, e in (factors or {}).items():
            if e < 0:
                raise DomainError(f"negative exponent {e} for {p}")
            if e == 0:
                continue
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
            clean[p] = e
        object.__setattr__(self, "_factors", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("FactoredInteger is immutable")

    @classmethod
    def from_int(cls, n: int) -> FactoredInteger:
        return cls(factorize(n))

    @classmethod
    def product(cls, items: Iterable[FactoredInteger | int]) -> FactoredInteger:
        result = cls()
        for item in items:
            result = result * item
        return result

    @property
    def factors(self) -> dict[int, int]:
        return dict(self._factors)

    def exponent(self, p: int) -> int:
        return self._factors.get(p, 0)

    def primes(self) -> list[int]:
        return list(self._factors)

    def value(self) -> int:
        return math.prod(p**e for p, e in self._factors.items())

    def __int__(self) -> int:
        return self.value()

    def _coerce(self, other) -> FactoredInteger:
        if isinstance(other, FactoredInteger):
            return other
        if isinstance(other, int):
            return FactoredInteger.from_int(other)
        return NotImplemented

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._factors)
        for p, e in other._factors.items():
            merged[p] = merged.get(p, 0) + e
        return FactoredInteger(merged)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact quotient; raises DomainError if ``other`` does not divide."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        merged = dict(self._factors)
        for p, e in other._factors.items():
            if merged.get(p, 0) < e:
                raise DomainError(f"{other} does not divide {self}")
            merged[p] -= e
        return FactoredInteger(merged)

    def __pow__(self, k: int) -> FactoredInteger:
        if k < 0:
            raise DomainError("negative power of a factored integer")
        return FactoredInteger({p: e * k for p, e in self._factors.items()})

    def divides(self, other: FactoredInteger) -> bool:
        return all(other.exponent(p) >= e for p, e in self._factors.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, FactoredInteger):
            return self._factors == other._factors
        if isinstance(other, int):
            return other >= 1 and self.value() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._factors.items()))

    def __repr__(self) -> str:
        return f"FactoredInteger({self._factors!r})"

    def __str__(self) -> str:
        """Factored rendering, e.g. ``2^15·3^5·5^2·7``."""
        if not self._factors:
            return "1"
        return "·".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self._factors.items())

    def to_json(self) -> dict:
        return {"value": str(self.value()), "factors": [[p, e] for p, e in self._factors.items()]}


# ---------------------------------------------------------------------------
# Bernoulli numbers


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{d} C(d+1, j) B_j = 0 solved for B_d, d = 1..n
    table = [Fraction(1)]
    for d in range(1, n + 1):
        if d > 1 and d % 2 == 1:
            table.append(Fraction(0))
            continue
        acc = sum(math.comb(d + 1, j) * table[j] for j in range(d))
        table.append(-acc / (d + 1))
    return tuple(table)


def bernoulli(d: int) -> Fraction:
    """Bernoulli number ``B_d`` with ``B_1 = -1/2``."""
    if d < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {d}")
    # grow the cache in blocks so repeated calls stay cheap
    size = max(32, 1 << (d.bit_length()))
    return _bernoulli_table(size)[d]


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficients low -> high); ``den`` monic."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        if c:
            for j, b in enumerate(den):
                num[i + j] -= c * b
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple[int, ...]:
    """Coefficients of the cyclotomic polynomial ``Phi_d``, lowest degree first."""
    if d < 1:
        raise DomainError(f"cyclotomic index must be >= 1, got {d}")
    poly = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d)[:-1]:
        poly = _poly_divexact(poly, list(cyclotomic_poly(e)))
    return tuple(poly)


# ---------------------------------------------------------------------------
# l-adic residues


@dataclass(frozen=True)
class PadicApprox:
    """An element of ``Z_ell`` known modulo ``ell**precision``."""

    ell: int
    precision: int
    residue: int

    def __post_init__(self):
        if self.precision < 1:
            raise DomainError(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @classmethod
    def of(cls, value: int, ell: int, precision: int) -> PadicApprox:
        return cls(ell, precision, value)

    @property
    def modulus(self) -> int:
        return self.ell**self.precision

    def _lift(self, other) -> tuple[int, int]:
        if isinstance(other, PadicApprox):
            if other.ell != self.ell:
                raise DomainError(f"mixing {self.ell}-adic and {other.ell}-adic values")
            return other.residue, min(self.precision, other.precision)
        if isinstance(other, int):
            return other, self.precision
        raise TypeError(f"cannot combine PadicApprox with {type(other).__name__}")

    def __add__(self, other) -> PadicApprox:
        r, k = self._lift(other)
        return PadicApprox(self.ell, k, self.residue + r)

    __radd__ = __add__

    def __sub__(self, other) -> PadicApprox:
        r, k = self._lift(other)
        return PadicApprox(self.ell, k, self.residue - r)

    def __rsub__(self, other) -> PadicApprox:
        r, k = self._lift(other)
        return PadicApprox(self.ell, k, r - self.residue)

    def __neg__(self) -> PadicApprox:
        return PadicApprox(self.ell, self.precision, -self.residue)

    def __mul__(self, other) -> PadicApprox:
        r, k = self._lift(other)
        return PadicApprox(self.ell, k, self.residue * r)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> PadicApprox:
        if e < 0 and not self.is_unit():
            raise DomainError("negative power of a non-unit")
        return PadicApprox(self.ell, self.precision, pow(self.residue, e, self.modulus))

    def is_unit(self) -> bool:
        return self.residue % self.ell != 0

    def is_zero(self) -> bool:
        return self.residue == 0

    def valuation(self) -> int:
        """``v_ell`` of the element; raises PrecisionError when it is ``>= precision``."""
        if self.residue == 0:
            raise PrecisionError(
                f"valuation >= {self.precision} (residue is 0 mod {self.ell}^{self.precision})",
                lower_bound=self.precision,
            )
        return _v_int(self.residue, self.ell)

    def valuation_floor(self) -> int:
        """Certified lower bound for the valuation (exact unless the residue is 0)."""
        return self.precision if self.residue == 0 else _v_int(self.residue, self.ell)


def cyclotomic_value(d: int, x: PadicApprox) -> PadicApprox:
    """``Phi_d(x)`` modulo ``ell**precision`` (Horner evaluation)."""
    acc = 0
    mod = x.modulus
    for c in reversed(cyclotomic_poly(d)):
        acc = (acc * x.residue + c) % mod
    return PadicApprox(x.ell, x.precision, acc)


def teichmuller(c: int, ell: int, precision: int) -> PadicApprox:
    """The root of unity of order dividing ``ell - 1`` congruent to ``c`` mod ``ell``."""
    if ell == 2 or not is_prime(ell):
        raise DomainError(f"teichmuller needs an odd prime, got {ell}")
    if c % ell == 0:
        raise DomainError(f"{c} is not a unit modulo {ell}")
    mod = ell**precision
    x = c % mod
    while True:
        nxt = pow(x, ell, mod)
        if nxt == x:
            return PadicApprox(ell, precision, x)
        x = nxt


def iter_units(n: int) -> Iterator[int]:
    return (a for a in range(1, n) if math.gcd(a, n) == 1)
