import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from groupbounds.arith import (
    FactoredInteger,
    PadicApprox,
    bernoulli,
    cyclotomic_poly,
    cyclotomic_value,
    divisors,
    euler_phi,
    factorize,
    is_prime,
    multiplicative_order,
    teichmuller,
    v_ell,
)
from groupbounds.errors import DomainError, PrecisionError


def akiyama_tanigawa(n):
    """Independent Bernoulli oracle; this algorithm yields B_1 = +1/2."""
    a = [Fraction(0)] * (n + 1)
    out = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    out[1] = -out[1]
    return out


def trial_division_v(n, p):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# --- valuations -------------------------------------------------------------


@pytest.mark.parametrize("x, ell, expected", [(12, 2, 2), (Fraction(5, 8), 2, -3), (2400, 5, 2), (3, 3, 1)])
def test_v_ell_examples(x, ell, expected):
    assert v_ell(x, ell) == expected


def test_v_ell_matches_trial_division():
    assert v_ell(2400, 5) == trial_division_v(2400, 5) == 2


def test_v_ell_zero_is_domain_error():
    with pytest.raises(DomainError, match="valuation of zero"):
        v_ell(0, 3)


nonzero_rationals = st.fractions().filter(lambda f: f != 0)


@given(nonzero_rationals, nonzero_rationals, st.sampled_from([2, 3, 5, 7, 11]))
def test_v_ell_is_additive(x, y, ell):
    assert v_ell(x * y, ell) == v_ell(x, ell) + v_ell(y, ell)


# --- Bernoulli ---------------------------------------------------------------


def test_bernoulli_examples():
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(1) == Fraction(-1, 2)


def test_bernoulli_matches_akiyama_tanigawa():
    oracle = akiyama_tanigawa(60)
    assert [bernoulli(d) for d in range(61)] == oracle


@pytest.mark.parametrize("d", range(1, 61))
def test_bernoulli_defining_recurrence(d):
    assert sum(math.comb(d + 1, j) * bernoulli(j) for j in range(d + 1)) == 0


@pytest.mark.parametrize("d", range(2, 61, 2))
def test_bernoulli_denominator_von_staudt_clausen(d):
    expected = math.prod(p for p in range(2, d + 2) if is_prime(p) and d % (p - 1) == 0)
    assert bernoulli(d).denominator == expected


# --- totient, orders, factoring ----------------------------------------------


@pytest.mark.parametrize("t", [1, 10, 16, 30, 97, 360])
def test_euler_phi_counts_units(t):
    assert euler_phi(t) == sum(1 for a in range(1, t + 1) if math.gcd(a, t) == 1)


def test_euler_phi_examples():
    assert (euler_phi(1), euler_phi(10), euler_phi(16)) == (1, 4, 8)


@given(st.integers(2, 2**64))
@settings(max_examples=200)
def test_factorize_round_trip(n):
    f = factorize(n)
    assert all(is_prime(p) for p in f)
    assert math.prod(p**e for p, e in f.items()) == n


def test_factorize_beyond_trial_division():
    p, q = 1_000_003, 2_147_483_647
    assert factorize(p * q * q) == {p: 1, q: 2}


@given(st.integers(2, 500), st.integers(1, 500))
def test_multiplicative_order_brute_force(n, a):
    if math.gcd(a, n) != 1:
        return
    k = 1
    while pow(a, k, n) != 1:
        k += 1
    assert multiplicative_order(a, n) == k


# --- factored integers -------------------------------------------------------


@given(st.integers(1, 2**32), st.integers(1, 2**32))
def test_factored_mul_div_agree_with_ints(a, b):
    fa, fb = FactoredInteger.from_int(a), FactoredInteger.from_int(b)
    assert (fa * fb).value() == a * b
    assert ((fa * fb) / fb).value() == a


def test_factored_integer_rules():
    assert FactoredInteger().value() == 1
    assert str(FactoredInteger({2: 15, 3: 5, 5: 2, 7: 1})) == "2^15·3^5·5^2·7"
    with pytest.raises(DomainError):
        FactoredInteger({4: 1})
    with pytest.raises(DomainError):
        FactoredInteger.from_int(6) / 4
    with pytest.raises(AttributeError):
        FactoredInteger({2: 1})._factors = {}


def test_factored_json():
    assert FactoredInteger({2: 3, 3: 1}).to_json() == {"value": "24", "factors": [[2, 3], [3, 1]]}


# --- cyclotomic polynomials and l-adic residues ------------------------------


def test_cyclotomic_polynomials_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_cyclotomic_value_examples():
    assert cyclotomic_value(1, PadicApprox(3, 5, 2)) == PadicApprox(3, 5, 1)
    assert cyclotomic_value(2, PadicApprox(5, 4, 2)) == PadicApprox(5, 4, 3)
    # Phi_4(7) = 50 evaluated directly
    assert cyclotomic_value(4, PadicApprox(2, 10, 7)).residue == 7**2 + 1 == 50


@given(st.integers(1, 60), st.integers(0, 10**9), st.sampled_from([2, 3, 5, 7]))
@settings(max_examples=150)
def test_cyclotomic_product_is_x_n_minus_1(n, x, ell):
    K = 8
    px = PadicApprox(ell, K, x)
    prod = PadicApprox(ell, K, 1)
    for d in divisors(n):
        prod = prod * cyclotomic_value(d, px)
    assert prod == px**n - 1


def test_padic_precision_is_the_minimum():
    a = PadicApprox(3, 5, 10)
    b = PadicApprox(3, 2, 4)
    assert (a + b).precision == 2
    assert (a * b).precision == 2


def test_padic_zero_valuation_is_never_a_number():
    z = PadicApprox(5, 3, 125)
    with pytest.raises(PrecisionError) as info:
        z.valuation()
    assert info.value.lower_bound == 3
    assert PadicApprox(5, 3, 50).valuation() == 2


def test_teichmuller_examples():
    assert teichmuller(1, 5, 6) == PadicApprox(5, 6, 1)
    assert teichmuller(4, 5, 2).residue == 24
    x = teichmuller(2, 7, 3)
    assert x.residue % 7 == 2 and pow(x.residue, 6, 343) == 1


@given(st.sampled_from([3, 5, 7, 11, 13, 31]), st.integers(1, 10**6), st.integers(1, 8))
def test_teichmuller_order_divides_ell_minus_one(ell, c, K):
    if c % ell == 0:
        return
    x = teichmuller(c, ell, K)
    assert x.residue % ell == c % ell
    order = multiplicative_order(x.residue, ell**K)
    assert (ell - 1) % order == 0
    assert order == multiplicative_order(c, ell)


def test_teichmuller_rejects_non_units():
    with pytest.raises(DomainError):
        teichmuller(10, 5, 3)
