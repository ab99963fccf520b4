"""Batteries of cross-checks between closed forms and independent oracles.

Each suite returns a list of :class:`Check`; a check records the first
counterexample it met (or a small summary when it passed).
"""

from __future__ import annotations

import random
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bounds, mass, oracle, rootdata
from .arith import FactoredInteger, bernoulli, divisors, primes_up_to, v_ell
from .cyclo import CycloInvariants, FiniteField, Rationals, invariants

E8_M_BOUND = FactoredInteger({2: 30, 3: 13, 5: 5, 7: 4, 11: 2, 13: 2, 19: 1, 31: 1})
MINKOWSKI_TABLE = {
    1: 2,
    2: 24,
    3: 48,
    4: 5760,
    5: 11520,
    6: 2903040,
    7: 5806080,
    8: 1393459200,
}
# regular numbers among the divisors of the degrees, per Springer
IRREGULAR_DIVISORS = {
    "G2": set(),
    "F4": set(),
    "E6": {5},
    "E7": {4, 5, 8, 10, 12},
    "E8": {7, 9, 14, 18},
}


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "check": self.name,
            "status": "pass" if self.passed else "fail",
            "witness": self.witness,
        }


def _grid_check(suite: str, name: str, cells, fn: Callable) -> Check:
    """Run ``fn(*cell)`` -> ``(lhs, rhs)`` over ``cells``; stop at the first mismatch."""
    count = 0
    for cell in cells:
        lhs, rhs = fn(*cell)
        count += 1
        if lhs != rhs:
            return Check(suite, name, False, {"cell": repr(cell), "got": repr(lhs), "expected": repr(rhs)})
    return Check(suite, name, True, {"cells": count})


def _invariant_grid(ell: int, t_values, m_values):
    """Every valid ``CycloInvariants`` at ``ell`` for the given ``t`` and ``m``."""
    for m in m_values:
        if ell == 2:
            if m < 2:
                continue
            yield CycloInvariants(2, 1, m, "a")
            yield CycloInvariants(2, 2, m, "b")
            yield CycloInvariants(2, 2, m, "c")
        else:
            for t in t_values:
                if (ell - 1) % t == 0:
                    yield CycloInvariants(ell, t, m)


# ---------------------------------------------------------------------------


def suite_minkowski() -> list[Check]:
    s = "minkowski"
    checks = [
        _grid_check(s, "table n<=8", [(n,) for n in range(1, 9)],
                    lambda n: (bounds.minkowski_bound(n).value(), MINKOWSKI_TABLE[n])),
    ]

    def ratio(n):
        q = Fraction(bounds.minkowski_bound(n).value(), bounds.minkowski_bound(n - 1).value())
        want = 2 if n % 2 else (bernoulli(n) / n).denominator
        return q, want

    checks.append(_grid_check(s, "ratio law n<=30", [(n,) for n in range(2, 31)], ratio))

    def digit_identity(n, ell):
        k, digits = n // (ell - 1), []
        while k:
            digits.append(k % ell)
            k //= ell
        rhs = sum(a * (ell ** (i + 1) - 1) // (ell - 1) for i, a in enumerate(digits))
        return bounds.minkowski_exponent(n, ell), rhs

    checks.append(_grid_check(s, "digit identity n<=200 ell<=97",
                              [(n, ell) for n in range(1, 201) for ell in primes_up_to(97)], digit_identity))
    return checks


def suite_schur() -> list[Check]:
    return [_grid_check(
        "schur", "reduces to Minkowski over Q",
        [(n, ell) for n in range(1, 41) for ell in primes_up_to(41)],
        lambda n, ell: (bounds.schur_exponent(n, ell, invariants(Rationals(), ell)),
                        bounds.minkowski_exponent(n, ell)),
    )]


def suite_mbound() -> list[Check]:
    s = "mbound"
    cat = rootdata.catalogue(8, include_gl=True)
    expected = {2: 30, 3: 13, 5: 5, 7: 4, 11: 2, 13: 2, 17: 0, 19: 1, 31: 1}
    e8 = rootdata.parse_root("E8")
    checks = [_grid_check(s, "E8 over Q", [(ell,) for ell in expected],
                          lambda ell: (bounds.m_bound(e8, invariants(Rationals(), ell), ell).value, expected[ell]))]
    a1 = rootdata.parse_root("A:1")
    checks.append(_grid_check(s, "A1 over Q", [(ell,) for ell in primes_up_to(50)],
                              lambda ell: (bounds.m_bound(a1, invariants(Rationals(), ell), ell).value,
                                           {2: 3, 3: 1}.get(ell, 0))))

    cells = []
    for R in cat:
        for ell in primes_up_to(31):
            for inv in _invariant_grid(ell, divisors(ell - 1), range(1, 5)):
                if rootdata.a_t(R, inv.t) > 0:
                    cells.append((R, inv))

    def direct(R, inv):
        rng = random.Random(zlib.crc32(f"{R.label}/{inv}/{inv.ell}".encode()))
        return bounds.m_bound_direct(R, inv, inv.ell, samples=50, rng=rng), bounds.m_bound(R, inv, inv.ell).value

    checks.append(_grid_check(s, "definitional oracle", cells, direct))
    checks.append(_grid_check(
        s, "dominated by S-bound",
        [(R, inv) for R in cat for ell in primes_up_to(31)
         for inv in _invariant_grid(ell, range(1, 31), range(1, 6))],
        lambda R, inv: (bounds.m_bound(R, inv, inv.ell).value <= bounds.s_bound(R, inv, inv.ell).value, True),
    ))
    return checks


def suite_finite_field() -> list[Check]:
    cells = [
        (R, q, ell)
        for R in rootdata.catalogue(8, include_gl=True)
        for q in range(2, 65)
        if len(FactoredInteger.from_int(q).primes()) == 1
        for ell in primes_up_to(31)
        if q % ell
    ]
    return [_grid_check(
        "finite_field", "M-bound equals v_ell |G(F_q)|", cells,
        lambda R, q, ell: (bounds.m_bound(R, invariants(FiniteField(q), ell), ell).value,
                           sum(v_ell(q**d - 1, ell) for d in R.degrees)),
    )]


def suite_sbound() -> list[Check]:
    e8 = rootdata.parse_root("E8")
    excess = {2: 0, 3: 0, 5: 1, 7: 1, 13: 0, 17: 1, 19: 0, 31: 0}

    def cell(ell):
        inv = invariants(Rationals(), ell)
        return bounds.s_bound(e8, inv, ell).value - bounds.m_bound(e8, inv, ell).value, excess[ell]

    return [
        _grid_check("sbound", "E8/Q excess over M-bound", [(ell,) for ell in excess], cell),
        _grid_check("sbound", "E8/Q at ell=11 (printed value omits it)", [(11,)],
                    lambda ell: (bounds.s_bound(e8, invariants(Rationals(), ell), ell).value, 2)),
    ]


def suite_mass() -> list[Check]:
    s = "mass"
    G2, F4, E8 = (rootdata.parse_root(x) for x in ("G2", "F4", "E8"))
    checks = [
        Check(s, "G2 mass", mass.mass(G2) == Fraction(1, 12096), {"mass": str(mass.mass(G2))}),
        Check(s, "F4 mass", mass.mass(F4) == Fraction(691, 2**15 * 3**6 * 5**2 * 7**2 * 13),
              {"mass": str(mass.mass(F4))}),
        Check(s, "E8 denominator", mass.factored_denominator(mass.mass(E8)) == E8_M_BOUND,
              {"denominator": str(mass.factored_denominator(mass.mass(E8)))}),
        Check(s, "F4 two-class sum",
              Fraction(1, 2**15 * 3**6 * 5**2 * 7) + Fraction(1, 2**12 * 3**5 * 7**2 * 13) == mass.mass(F4)),
        Check(s, "G2 order vs mass",
              oracle.chevalley_order(G2, 2).value() == 1 / mass.mass(G2) == 12096),
    ]
    return checks


def suite_witness() -> list[Check]:
    s = "witness"
    checks = [_grid_check(
        s, "wreath product is optimal", [(n, ell) for n in range(1, 31) for ell in primes_up_to(13)],
        lambda n, ell: (oracle.wreath_witness(n, ell)[1], bounds.minkowski_exponent(n, ell)),
    )]

    def sl_cell(N, ell, t, m):
        inv = CycloInvariants(ell, t, m)
        vA, vA1 = oracle.schur_witness(N, inv)
        n = N * t
        degrees = range(2, n + 1)
        expected = sum(m + v_ell(d, ell) for d in degrees if d % t == 0)
        return (vA if t >= 2 else vA1), expected

    cells = [(N, ell, t, m) for ell in primes_up_to(13) if ell > 2 for t in divisors(ell - 1) if t <= 12
             for m in range(1, 4) for N in range(1, 11) if N * t >= 2]
    checks.append(_grid_check(s, "A_N witnesses reach the SL_n bound", cells, sl_cell))

    def sl_bound_cell(N, ell, t, m):
        inv = CycloInvariants(ell, t, m)
        vA, vA1 = oracle.schur_witness(N, inv)
        R = rootdata.RootSystem("A", N * t - 1)
        return (vA if t >= 2 else vA1), bounds.m_bound(R, inv, ell).value

    checks.append(_grid_check(s, "A_N witnesses equal m_bound(A_{n-1})", cells, sl_bound_cell))
    return checks


def suite_enumeration() -> list[Check]:
    cells = [(p, ell) for p in (2, 3, 5, 7) for ell in (2, 3, 5, 7) if ell != p]
    return [_grid_check("enumeration", "GL2(F_p) by enumeration", cells,
                        lambda p, ell: (oracle.enumerate_gl2_sylow(p, ell), oracle.gl_order(2, p).exponent(ell)))]


def suite_kernel(count: int = 500) -> list[Check]:
    rng = random.Random(2024)
    cells = []
    for n in range(1, 5):
        for ell in (2, 3, 5, 7):
            made = 0
            while made < count:
                u = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
                det = oracle.determinant(u)
                if det:
                    cells.append((u, ell, v_ell(det, ell) + 1))
                    made += 1

    return [_grid_check("kernel", "kernel valuation equals v_ell(det)", cells,
                        lambda u, ell, e: (oracle.kernel_valuation(u, ell, e), v_ell(oracle.determinant(u), ell)))]


def suite_cyclotomic_values() -> list[Check]:
    cells = [(d, ell, t, m) for ell in (3, 5, 7, 11, 13) for t in divisors(ell - 1)
             for m in range(1, 4) for d in range(1, 101)]
    return [_grid_check(
        "cyclotomic_values", "v_ell(Phi_d(x)) table", cells,
        lambda d, ell, t, m: (oracle.phi_valuation(d, CycloInvariants(ell, t, m), ell, K=m + 4),
                              oracle.phi_valuation_table(d, t, m, ell)),
    )]


def suite_prime_selection() -> list[Check]:
    cells = []
    for ell in (3, 5, 7, 11, 13):
        p = oracle.least_generator_prime(ell)
        cells.extend((n, p, ell) for n in range(1, 21))
    return [_grid_check("prime_selection", "generator prime attains M(n, ell)", cells,
                        lambda n, p, ell: (oracle.sylow_exponent_formula(n, p, ell),
                                           bounds.minkowski_exponent(n, ell)))]


def suite_rootdata() -> list[Check]:
    s = "rootdata"
    cat = rootdata.catalogue(12)
    checks = [
        _grid_check(s, "degree symmetry", [(R,) for R in cat], lambda R: (rootdata.is_symmetric(R), True)),
        _grid_check(s, "coprime rule", [(R,) for R in cat], lambda R: (rootdata.coprime_rule_holds(R), True)),
        _grid_check(s, "dim = rank + 2N", [(R,) for R in cat],
                    lambda R: (rootdata.dimension(R), R.rank + 2 * rootdata.positive_root_count(R))),
    ]
    irregular = {}
    for name, expected in IRREGULAR_DIVISORS.items():
        R = rootdata.parse_root(name)
        irregular[name] = ({t for t in rootdata.degree_divisors(R) if not rootdata.regular_number(R, t)}, expected)
    checks.append(_grid_check(s, "Springer regular numbers", [(k,) for k in irregular],
                              lambda name: irregular[name]))
    return checks


SUITES: dict[str, Callable[[], list[Check]]] = {
    "cyclotomic_values": suite_cyclotomic_values,
    "enumeration": suite_enumeration,
    "finite_field": suite_finite_field,
    "kernel": suite_kernel,
    "mass": suite_mass,
    "mbound": suite_mbound,
    "minkowski": suite_minkowski,
    "prime_selection": suite_prime_selection,
    "rootdata": suite_rootdata,
    "sbound": suite_sbound,
    "schur": suite_schur,
    "witness": suite_witness,
}


def run_suites(names: list[str] | None = None, workers: int = 1) -> list[Check]:
    """Run the named suites (all by default); results come back sorted by suite name."""
    names = sorted(names or SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(lambda n: SUITES[n](), names))
    else:
        results = [SUITES[n]() for n in names]
    return [c for batch in results for c in batch]
