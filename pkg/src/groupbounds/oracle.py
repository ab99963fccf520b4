"""Independent desk-scale checks.

Orders of finite classical and Chevalley groups, brute-force enumeration
of ``GL_2(F_p)``, the wreath-product and ``A_N`` witness groups, kernel
sizes through Smith normal form, and valuations of cyclotomic values at
explicit l-adic points.
"""

from __future__ import annotations

import itertools
import math
from typing import Optional, Sequence

from .arith import (
    INF,
    FactoredInteger,
    IntOrInf,
    PadicApprox,
    cyclotomic_value,
    factorize,
    is_prime,
    multiplicative_order,
    primitive_root,
    teichmuller,
    v_ell,
    v_factorial,
)
from .cyclo import CycloInvariants
from .errors import DomainError, PrecisionError, ValidationError
from .rootdata import RootSystem, positive_root_count

GL2_ENUMERATION_LIMIT = 7


def _prime_power(q: int) -> None:
    if q < 2 or len(factorize(q)) != 1:
        raise DomainError(f"{q} is not a prime power")


# ---------------------------------------------------------------------------
# group orders


def gl_order(n: int, q: int) -> FactoredInteger:
    """``|GL_n(F_q)| = q^{n(n-1)/2} prod_{i=1}^{n} (q^i - 1)``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _prime_power(q)
    out = FactoredInteger.from_int(q) ** (n * (n - 1) // 2)
    for i in range(1, n + 1):
        out = out * FactoredInteger.from_int(q**i - 1)
    return out


def o_order(n: int, p: int, eps: Optional[int] = None) -> FactoredInteger:
    """Order of the orthogonal group ``O_n(F_p)`` for odd ``p``.

    For even ``n`` the sign ``eps`` (the Legendre symbol of ``(-1)^r D``)
    picks the form.
    """
    if p == 2 or not is_prime(p):
        raise DomainError(f"orthogonal group orders are stated for odd primes, got {p}")
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    r = n // 2
    num = 2 * math.prod(p ** (2 * i) - 1 for i in range(1, r + 1))
    if n % 2:
        return FactoredInteger.from_int(num * p ** (r * r))
    if eps not in (1, -1):
        raise DomainError("even n needs eps = +1 or -1")
    num *= p ** (r * (r - 1))
    if num % (p**r + eps):
        raise ArithmeticError("orthogonal order formula is not integral")
    return FactoredInteger.from_int(num // (p**r + eps))


def chevalley_order(R: RootSystem, q: int) -> FactoredInteger:
    """``q^N prod_i (q^{d_i} - 1)`` with ``N`` the number of positive roots."""
    _prime_power(q)
    out = FactoredInteger.from_int(q) ** positive_root_count(R)
    for d in R.degrees:
        out = out * FactoredInteger.from_int(q**d - 1)
    return out


def sylow_exponent_formula(n: int, q: int, ell: int) -> int:
    """``sum_{i=1}^{n} v_ell(q^i - 1)``, the ``ell``-part of ``|GL_n(F_q)|``."""
    if q % ell == 0:
        raise DomainError(f"ell={ell} divides q={q}")
    return sum(v_ell(q**i - 1, ell) for i in range(1, n + 1))


def enumerate_gl2(p: int) -> int:
    """Number of invertible 2x2 matrices over ``F_p``, by listing all of them."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p > GL2_ENUMERATION_LIMIT:
        raise DomainError(f"refusing to enumerate GL_2(F_{p}): p > {GL2_ENUMERATION_LIMIT}")
    return sum(
        1 for a, b, c, d in itertools.product(range(p), repeat=4) if (a * d - b * c) % p
    )


def enumerate_gl2_sylow(p: int, ell: int) -> int:
    if ell == p:
        raise DomainError("ell must differ from p")
    return v_ell(enumerate_gl2(p), ell)


def least_generator_prime(ell: int) -> int:
    """Least prime whose class generates ``(Z/ell^2 Z)*`` (``ell`` odd)."""
    if ell == 2 or not is_prime(ell):
        raise DomainError(f"need an odd prime, got {ell}")
    mod = ell * ell
    target = ell * (ell - 1)
    p = 2
    while True:
        if is_prime(p) and p % ell and multiplicative_order(p, mod) == target:
            return p
        p += 1


# ---------------------------------------------------------------------------
# witness groups


def wreath_witness(n: int, ell: int) -> tuple[FactoredInteger, int]:
    """``S_r`` acting on ``(S_ell)^r`` with ``r = [n/(ell-1)]``: order and ``v_ell``."""
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    r = n // (ell - 1)
    if r == 0:
        return FactoredInteger(), 0
    order = FactoredInteger.product(range(2, ell + 1)) ** r * FactoredInteger.product(range(2, r + 1))
    return order, order.exponent(ell)


def schur_witness(N: int, inv: CycloInvariants) -> tuple[int, int]:
    """``(v_ell(A_N), v_ell(A_N^1))``: the wreath product of ``S_N`` with
    ``C_{ell^m}`` and its determinant-one part."""
    if inv.ell == 2:
        raise DomainError("schur_witness is stated for odd ell")
    if inv.m is INF:
        raise DomainError("schur_witness needs finite m")
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    vf = v_factorial(N, inv.ell)
    return inv.m * N + vf, inv.m * (N - 1) + vf


# ---------------------------------------------------------------------------
# Smith normal form and kernels


def _check_square(u: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [list(map(int, row)) for row in u]
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise ValidationError("expected a non-empty square matrix")
    return rows


def determinant(u: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = _check_square(u)
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def smith_diagonal(u: Sequence[Sequence[int]]) -> list[int]:
    """Elementary divisors ``s_1 | s_2 | ...`` of a square integer matrix (zeros last)."""
    a = _check_square(u)
    n = len(a)
    for k in range(n):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(k, n) for j in range(k, n) if a[i][j]]
            if not entries:
                return [abs(a[i][i]) for i in range(n)]
            _, pi, pj = min(entries)
            a[k], a[pi] = a[pi], a[k]
            for row in a:
                row[k], row[pj] = row[pj], row[k]
            pivot = a[k][k]
            clean = True
            for i in range(k + 1, n):
                q = a[i][k] // pivot
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[k])]
                clean = clean and a[i][k] == 0
            for j in range(k + 1, n):
                q = a[k][j] // pivot
                if q:
                    for row in a:
                        row[j] -= q * row[k]
                clean = clean and a[k][j] == 0
            if not clean:
                continue
            # the pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(k + 1, n) for j in range(k + 1, n) if a[i][j] % pivot), None
            )
            if bad is None:
                break
            a[k] = [x + y for x, y in zip(a[k], a[bad[0]])]
    return [abs(a[i][i]) for i in range(n)]


def kernel_valuation(u: Sequence[Sequence[int]], ell: int, e: int) -> IntOrInf:
    """``v_ell`` of the kernel of ``u`` acting on ``(ell^{-e} Z / Z)^n``.

    Infinite (``INF``) when ``det u = 0``.
    """
    if e < 1:
        raise DomainError(f"level must be >= 1, got {e}")
    diag = smith_diagonal(u)
    if 0 in diag:
        return INF
    return sum(min(v_ell(s, ell), e) for s in diag)


def kernel_size_bruteforce(u: Sequence[Sequence[int]], ell: int, e: int) -> int:
    """``|ker u|`` on ``(Z/ell^e)^n`` by listing every vector (tiny cases only)."""
    a = _check_square(u)
    mod = ell**e
    n = len(a)
    count = 0
    for vec in itertools.product(range(mod), repeat=n):
        if all(sum(r * x for r, x in zip(row, vec)) % mod == 0 for row in a):
            count += 1
    return count


# ---------------------------------------------------------------------------
# valuations of cyclotomic values


def phi_valuation(d: int, inv: CycloInvariants, ell: int, K: Optional[int] = None) -> int:
    """``v_ell(Phi_d(x))`` at ``x = z_t (1 + ell^m)`` with ``z_t`` of exact order ``t``."""
    if ell != inv.ell:
        raise DomainError(f"invariants were computed for ell={inv.ell}, not {ell}")
    if ell == 2:
        raise DomainError("only odd ell is supported")
    if inv.m is INF:
        raise DomainError("phi_valuation needs finite m")
    if K is None:
        K = inv.m + 3
    if K <= inv.m + 2:
        raise DomainError(f"precision K={K} must exceed m + 2 = {inv.m + 2}")
    c = pow(primitive_root(ell), (ell - 1) // inv.t, ell)
    x = teichmuller(c, ell, K) * PadicApprox(ell, K, 1 + ell**inv.m)
    value = cyclotomic_value(d, x)
    if value.is_zero():
        raise PrecisionError(f"inconclusive precision: Phi_{d}(x) = 0 mod {ell}^{K}", K)
    return value.valuation()


def phi_valuation_table(d: int, t: int, m: int, ell: int) -> int:
    """Expected ``v_ell(Phi_d(x))``: ``m`` if ``d = t``, ``1`` if ``d = t ell^a`` with ``a >= 1``, else 0."""
    if d == t:
        return m
    if d % t == 0:
        q = d // t
        while q % ell == 0:
            q //= ell
        if q == 1:
            return 1
    return 0
