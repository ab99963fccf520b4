from fractions import Fraction

import pytest

from groupbounds.arith import FactoredInteger, factorize, v_ell
from groupbounds.cyclo import Rationals, invariants
from groupbounds.bounds import bound_all, m_bound
from groupbounds.errors import DomainError
from groupbounds.mass import (
    C_E8,
    euler_characteristic,
    factored_denominator,
    mass,
    mass_denominator_exponent,
    zeta_neg,
)
from groupbounds.oracle import chevalley_order
from groupbounds.rootdata import catalogue, parse_root

G2, F4, E8 = (parse_root(s) for s in ("G2", "F4", "E8"))
EVEN = [R for R in catalogue(max_rank=10) if all(d % 2 == 0 for d in R.degrees)]

# zeta(1 - d) for even d from the functional equation, as printed in standard tables
ZETA_TABLE = {
    2: Fraction(-1, 12),
    4: Fraction(1, 120),
    6: Fraction(-1, 252),
    8: Fraction(1, 240),
    10: Fraction(-1, 132),
    12: Fraction(691, 32760),
    14: Fraction(-1, 12),
}


def test_zeta_examples():
    assert zeta_neg(2) == Fraction(-1, 12)
    assert zeta_neg(6) == Fraction(-1, 252)
    # -B_12/12 with B_12 = -691/2730 is positive
    assert zeta_neg(12) == Fraction(691, 32760)


@pytest.mark.parametrize("d", sorted(ZETA_TABLE))
def test_zeta_table(d):
    assert zeta_neg(d) == ZETA_TABLE[d]


@pytest.mark.parametrize("d", [1, 3, 5, 9])
def test_zeta_odd_is_domain_error(d):
    with pytest.raises(DomainError):
        zeta_neg(d)


def test_mass_examples():
    assert mass(G2) == Fraction(1, 12096) == Fraction(1, 2**6 * 3**3 * 7)
    assert mass(F4) == Fraction(691, 2**15 * 3**6 * 5**2 * 7**2 * 13)
    assert factored_denominator(mass(E8)) == FactoredInteger(
        {2: 30, 3: 13, 5: 5, 7: 4, 11: 2, 13: 2, 19: 1, 31: 1}
    )


def test_f4_two_class_sum():
    a = Fraction(1, 2**15 * 3**6 * 5**2 * 7)
    b = Fraction(1, 2**12 * 3**5 * 7**2 * 13)
    assert a + b == mass(F4)


def test_mass_rejects_odd_degrees():
    with pytest.raises(DomainError, match="odd degree 3"):
        mass(parse_root("A:2"))
    with pytest.raises(DomainError, match="odd degree 5"):
        mass(parse_root("E6"))


def test_mass_denominator_examples():
    assert mass_denominator_exponent(E8, 5) == (5, 5)
    assert mass_denominator_exponent(F4, 13) == (1, 1)
    assert mass_denominator_exponent(F4, 691) == (0, 0)


@pytest.mark.parametrize("R", [G2, F4, E8], ids=str)
def test_mass_denominator_is_the_m_bound(R):
    m = mass(R)
    numerator_primes = set()
    for d in R.degrees:
        numerator_primes |= set(factorize(abs(zeta_neg(d).numerator) or 1))
    # numerator primes are all too large to sit in an M-bound of these ranks
    assert all(p > 31 for p in numerator_primes)
    for ell in factorize(m.denominator):
        if ell in numerator_primes:
            continue
        den, bound = mass_denominator_exponent(R, ell)
        assert den == bound == m_bound(R, invariants(Rationals(), ell), ell).value


def test_f4_691_is_a_numerator_prime():
    assert v_ell(mass(F4).numerator, 691) == 1
    assert all(d % 690 for d in F4.degrees)


def test_euler_characteristic_examples():
    assert C_E8.value() == 3**3 * 5
    assert euler_characteristic(E8, C_E8) == 135 * mass(E8)
    assert euler_characteristic(G2, 1) == mass(G2)
    assert euler_characteristic(F4, 2) == Fraction(691, 2**14 * 3**6 * 5**2 * 7**2 * 13)


def test_g2_mass_is_the_inverse_group_order():
    assert chevalley_order(G2, 2).value() == 12096 == 1 / mass(G2)


@pytest.mark.parametrize("R", EVEN, ids=str)
def test_mass_sign_law(R):
    # zeta(1-d) < 0 exactly when d = 2 mod 4
    negatives = sum(1 for d in R.degrees if d % 4 == 2)
    assert (mass(R) > 0) == (negatives % 2 == 0)


def test_mass_positive_for_the_exceptional_examples():
    for R in (G2, F4, E8):
        assert mass(R) > 0
    # not every even-degree type: B2 has one factor zeta(-1) < 0
    assert mass(parse_root("B:2")) < 0


@pytest.mark.parametrize("R", [G2, F4, E8], ids=str)
def test_mass_denominator_equals_the_full_m_bound(R):
    total, _ = bound_all(Rationals(), R, "m")
    assert factored_denominator(mass(R)) == total
