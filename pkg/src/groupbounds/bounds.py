"""Closed-form bounds on ``v_ell(A)`` for finite subgroups ``A``.

Minkowski's bound for ``GL_n(Q)``, Schur's bound over a number field, the
torus bound, the S-bound (normalizers of maximal tori), the M-bound and
its definitional oracle, the achievable values and the corank bound for
infinite ``m``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .arith import (
    INF,
    FactoredInteger,
    IntOrInf,
    PadicApprox,
    cyclotomic_poly,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    multiplicative_order,
    primes_up_to,
    primitive_root,
    teichmuller,
    v_ell,
)
from .cyclo import (
    CycloInvariants,
    CyclotomicField,
    Explicit,
    FieldDescriptor,
    FiniteField,
    PadicField,
    Rationals,
    invariants,
)
from .errors import DomainError, PrecisionError
from .rootdata import RootSystem, a_t, parity_counts, weyl_group_order

SOURCES = ("Minkowski", "Schur", "Torus", "S", "M", "Achievable", "Corank")


@dataclass(frozen=True)
class BoundValue:
    value: IntOrInf
    source: str

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown bound source {self.source!r}")

    @property
    def infinite(self) -> bool:
        return self.value is INF

    def to_json(self) -> dict:
        return {"value": "inf" if self.value is INF else self.value, "source": self.source}


def _check_ell(ell: int, inv: Optional[CycloInvariants] = None) -> None:
    if not is_prime(ell):
        raise DomainError(f"{ell} is not prime")
    if inv is not None and inv.ell != ell:
        raise DomainError(f"invariants were computed for ell={inv.ell}, not {ell}")


# ---------------------------------------------------------------------------
# Minkowski and Schur


def minkowski_exponent(n: int, ell: int) -> int:
    """``[n/(ell-1)] + [n/ell(ell-1)] + [n/ell^2(ell-1)] + ...``"""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _check_ell(ell)
    total, q = 0, ell - 1
    while q <= n:
        total += n // q
        q *= ell
    return total


def minkowski_bound(n: int) -> FactoredInteger:
    """``M(n)``: every finite subgroup of ``GL_n(Q)`` has order dividing it."""
    return FactoredInteger({ell: minkowski_exponent(n, ell) for ell in primes_up_to(n + 1)})


def schur_exponent(n: int, ell: int, inv: CycloInvariants) -> int:
    """Schur's bound ``M_k(n, ell)`` for a field with invariants ``inv``."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _check_ell(ell, inv)
    if inv.m is INF:
        raise DomainError("Schur bound requires finite m")
    t, m = inv.t, inv.m
    tail, q = 0, ell * t
    while q <= n:
        tail += n // q
        q *= ell
    if ell != 2:
        return m * (n // t) + tail
    m_prime = m + 1 if inv.two_type == "b" else m
    return n + (m_prime - 1) * (n // t) + tail


# ---------------------------------------------------------------------------
# tori and the S-bound


def torus_bound(dim: int, inv: CycloInvariants) -> BoundValue:
    """``m * [dim / phi(t)]`` for a ``dim``-dimensional torus."""
    if dim < 1:
        raise DomainError(f"torus dimension must be >= 1, got {dim}")
    k = dim // euler_phi(inv.t)
    if k == 0:
        return BoundValue(0, "Torus")
    return BoundValue(INF if inv.m is INF else inv.m * k, "Torus")


def s_bound(R: RootSystem, inv: CycloInvariants, ell: int) -> BoundValue:
    """``m * [r / phi(t)] + v_ell(|W|)``."""
    _check_ell(ell, inv)
    torus = torus_bound(R.rank, inv).value
    if torus is INF:
        return BoundValue(INF, "S")
    return BoundValue(torus + weyl_group_order(R).exponent(ell), "S")


def s_torsion_free(R: RootSystem, inv: CycloInvariants) -> bool:
    """True when ``r < phi(t)``, which forces ``G(k)`` to have no ``ell``-torsion."""
    return R.rank < euler_phi(inv.t)


# ---------------------------------------------------------------------------
# the M-bound


def _needs_type(inv: CycloInvariants) -> None:
    if inv.ell == 2 and inv.t == 2 and inv.m is not INF and inv.two_type not in ("b", "c"):
        raise DomainError("ell = 2 with t = 2 needs type b or c")


def m_bound(R: RootSystem, inv: CycloInvariants, ell: int) -> BoundValue:
    """Closed form of ``inf_x sum_i v_ell(x^{d_i} - 1)`` over the cyclotomic image.

    Infinite exactly when ``m`` is infinite and ``t`` divides some degree.
    """
    _check_ell(ell, inv)
    _needs_type(inv)
    t, m = inv.t, inv.m
    if m is INF:
        return BoundValue(INF if a_t(R, t) >= 1 else 0, "M")
    if ell == 2 and t == 2:
        r0, r1 = parity_counts(R)
        return BoundValue(r1 + m * r0 + weyl_group_order(R).exponent(2), "M")
    return BoundValue(sum(m + v_ell(d, ell) for d in R.degrees if d % t == 0), "M")


def m_torsion_free(R: RootSystem, inv: CycloInvariants) -> bool:
    """No degree divisible by ``t`` means the M-bound is an empty sum."""
    return a_t(R, inv.t) == 0


def image_generators(inv: CycloInvariants, precision: int) -> tuple[list[int], list[int]]:
    """``(minimizers, generators)`` of the cyclotomic image mod ``ell^precision``.

    The minimizers are the elements at which the M-bound infimum is attained;
    the generators topologically generate the image.
    """
    ell, t, m = inv.ell, inv.t, inv.m
    if m is INF:
        raise DomainError("the image is finite torsion when m is infinite; no minimizer needed")
    mod = ell**precision
    if ell != 2:
        z = teichmuller(pow(primitive_root(ell), (ell - 1) // t, ell), ell, precision).residue
        u = (1 + ell**m) % mod
        return [z * u % mod], [z, u]
    if inv.two_type == "a":
        x = (1 + 2**m) % mod
        return [x], [x]
    if inv.two_type == "b":
        x = (-1 + 2**m) % mod
        return [x], [x]
    return [(-1 + 2**m) % mod, (1 + 2**m) % mod], [mod - 1, (1 + 2**m) % mod]


def _valuation_sum(x: int, degrees: tuple[int, ...], ell: int, precision: int) -> tuple[int, bool]:
    """``(sum of certified lower bounds, exact?)`` for ``sum_i v_ell(x^{d_i} - 1)``."""
    total, exact = 0, True
    for d in degrees:
        term = PadicApprox(ell, precision, pow(x, d, ell**precision) - 1)
        total += term.valuation_floor()
        exact = exact and not term.is_zero()
    return total, exact


def m_bound_direct(
    R: RootSystem,
    inv: CycloInvariants,
    ell: int,
    K: Optional[int] = None,
    samples: int = 50,
    rng: Optional[random.Random] = None,
) -> int:
    """Evaluate the defining infimum on explicit elements of the cyclotomic image.

    Every candidate is a word in the image's generators computed modulo
    ``ell^K``; the least certified sum is returned.  ``K`` defaults to
    ``m + max v_ell(d_i) + 6``, which certifies every term at a minimizer.
    """
    _check_ell(ell, inv)
    _needs_type(inv)
    if inv.m is INF:
        raise DomainError("m_bound_direct requires finite m")
    if K is None:
        K = inv.m + max(v_ell(d, ell) for d in R.degrees) + 6
    rng = rng or random.Random(0)
    mod = ell**K
    minimizers, gens = image_generators(inv, K)

    best: Optional[int] = None
    for x in minimizers:
        total, exact = _valuation_sum(x, R.degrees, ell, K)
        if not exact:
            raise PrecisionError(f"inconclusive precision: K={K} cannot certify the minimizer", total)
        best = total if best is None else min(best, total)

    # random words in the generators; the ell-adic exponents are drawn mod ell^K
    for _ in range(samples):
        x = 1
        for g in gens:
            x = x * pow(g, rng.randrange(mod), mod) % mod
        total, exact = _valuation_sum(x, R.degrees, ell, K)
        if total < best:
            if not exact:
                raise PrecisionError(f"inconclusive precision: K={K} is too small", total)
            best = total
    return best


# ---------------------------------------------------------------------------
# achievable values and m = infinity


def achievable_exponent(R: RootSystem, inv: CycloInvariants, ell: int) -> tuple[int, bool]:
    """``(v_ell(A) of a constructible pair, whether that equals the M-bound)``."""
    _check_ell(ell, inv)
    if inv.m is INF:
        raise DomainError("m is infinite: use corank_bound")
    bound = m_bound(R, inv, ell).value
    if ell == 2 and inv.two_type == "c":
        r0, r1 = parity_counts(R)
        return r0 * inv.m + weyl_group_order(R).exponent(2), r1 == 0
    return bound, True


def corank_bound(R: RootSystem, inv: CycloInvariants) -> int:
    """Largest ``a`` with ``(Q_ell/Z_ell)^a`` inside an ``ell``-subgroup, for ``m`` infinite."""
    if inv.m is not INF:
        raise DomainError("corank_bound requires m = inf (finite m gives finite groups)")
    return a_t(R, inv.t)


# ---------------------------------------------------------------------------
# all primes at once


def _cyclotomic_int(d: int, x: int) -> int:
    return sum(c * x**i for i, c in enumerate(cyclotomic_poly(d)))


def _finite_field_primes(q: int, ts: set[int]) -> set[int]:
    """Primes ``ell`` whose multiplicative order of ``q`` lies in ``ts``."""
    out = set()
    for t in ts:
        for p in factorize(abs(_cyclotomic_int(t, q))):
            if q % p and multiplicative_order(q, p) in ts:
                out.add(p)
    return out


def candidate_primes(field: FieldDescriptor, R: RootSystem, kind: str, dim: Optional[int] = None) -> list[int]:
    """A finite set of primes outside which the bound of ``kind`` vanishes."""
    if kind == "corank":
        raise DomainError("the corank bound has no finite prime support")
    r = dim if kind == "torus" else R.rank
    degrees = R.degrees
    weyl_primes = set() if kind == "torus" else set(weyl_group_order(R).primes())

    if kind in ("m", "achievable"):
        ts = {t for d in degrees for t in divisors(d)}
    else:
        # phi(t) <= r forces t <= 2 r^2
        ts = {t for t in range(1, 2 * r * r + 1) if euler_phi(t) <= r}

    def char_zero() -> set[int]:
        # Q-like primes have t = ell - 1 (and t = 2 at ell = 2)
        return {ell for ell in primes_up_to(max(ts) + 1) if ell == 2 or ell - 1 in ts}

    if isinstance(field, Rationals):
        found = char_zero()
    elif isinstance(field, CyclotomicField):
        found = char_zero() | set(factorize(field.N))
    elif isinstance(field, FiniteField):
        p = field.characteristic
        found = _finite_field_primes(field.q, ts) | ({2} if field.q % 2 else set())
        weyl_primes.discard(p)
    elif isinstance(field, PadicField):
        # ell = p sees the whole character, ell != p only the Frobenius
        p = field.p
        found = (_finite_field_primes(p, ts) - {p}) | ({p} & char_zero()) | ({2} if p != 2 else set())
    elif isinstance(field, Explicit):
        raise DomainError("explicit invariants are tied to one prime; pass --ell")
    else:
        raise DomainError(f"{field.label} has m = inf at every prime: no finite product")
    return sorted(found | weyl_primes)


def bound_for(kind: str, R: RootSystem, inv: CycloInvariants, ell: int, dim: Optional[int] = None):
    """Dispatch used by ``bound_all`` and the CLI."""
    if kind == "s":
        return s_bound(R, inv, ell)
    if kind == "m":
        return m_bound(R, inv, ell)
    if kind == "torus":
        return torus_bound(dim if dim is not None else R.rank, inv)
    if kind == "achievable":
        value, optimal = achievable_exponent(R, inv, ell)
        return BoundValue(value, "Achievable"), optimal
    if kind == "corank":
        return BoundValue(corank_bound(R, inv), "Corank")
    raise DomainError(f"unknown bound kind {kind!r}")


def bound_all(field: FieldDescriptor, R: RootSystem, kind: str, dim: Optional[int] = None) -> tuple[FactoredInteger, dict[int, int]]:
    """Assemble ``prod_ell ell^{bound(ell)}`` over all primes.

    Returns the product together with the per-prime exponents (zeros
    included for the primes examined).
    """
    exps: dict[int, int] = {}
    for ell in candidate_primes(field, R, kind, dim):
        if isinstance(field, FiniteField) and field.q % ell == 0:
            continue
        result = bound_for(kind, R, invariants(field, ell), ell, dim)
        bv = result[0] if isinstance(result, tuple) else result
        if bv.value is INF:
            raise DomainError(f"bound is infinite at ell={ell} (m = inf and t | some degree)")
        exps[ell] = bv.value
    return FactoredInteger({p: e for p, e in exps.items() if e}), exps
