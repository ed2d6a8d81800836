import pytest
from hypothesis import given, strategies as st

from trinocong.modring import (
    ExactnessError,
    NegativeValuationError,
    NonInvertibleError,
    Residue,
    RingError,
    ValuatedResidue,
    divide_exact_by_p,
    jacobi,
    legendre,
    legendre_p_mod_3,
    primes_between,
    res_from_rational,
    res_inv,
    res_mul,
    res_pow,
    ring_make,
    val_collapse,
    val_from_integer,
    val_scale,
)

SMALL_PRIMES = primes_between(3, 200)
primes = st.sampled_from(SMALL_PRIMES)
exponents = st.integers(min_value=1, max_value=4)


def test_ring_make():
    assert ring_make(5, 2).modulus == 25
    assert ring_make(3, 3).modulus == 27
    with pytest.raises(RingError):
        ring_make(4, 2)
    with pytest.raises(RingError):
        ring_make(2, 2)
    with pytest.raises(RingError):
        ring_make(5, 0)
    assert ring_make(2, 2, allow_two=True).modulus == 4


def test_primes_between_matches_trial_division():
    expected = [n for n in range(2, 500) if all(n % d for d in range(2, n))]
    assert primes_between(0, 499) == expected
    assert primes_between(5, 13) == [5, 7, 11, 13]
    assert primes_between(10, 3) == []


def test_res_from_rational_examples():
    r25 = ring_make(5, 2)
    assert res_from_rational(1, 3, r25).value == 17
    assert (3 * 17) % 25 == 1
    assert res_from_rational(0, 7, r25).value == 0
    r49 = ring_make(7, 2)
    assert res_from_rational(-1, 4, r49).value == 12
    assert (4 * 12) % 49 == 49 - 1
    with pytest.raises(NonInvertibleError):
        res_from_rational(1, 10, r25)


def test_inverse_and_power_examples():
    r25 = ring_make(5, 2)
    assert res_inv(r25(13)).value == 2
    assert res_pow(r25(3), 4).value == 81 % 25 == 6
    assert res_pow(r25(7), 0).value == 1
    with pytest.raises(NonInvertibleError):
        res_inv(r25(10))


def test_mixed_rings_rejected():
    with pytest.raises(RingError):
        ring_make(5, 2)(1) + ring_make(7, 2)(1)


def test_divide_exact_by_p_examples():
    r125 = ring_make(5, 3)
    q = divide_exact_by_p(r125(50))
    assert q.value == 10 and q.ring.modulus == 25
    assert divide_exact_by_p(r125(0)).value == 0
    with pytest.raises(ExactnessError):
        divide_exact_by_p(r125(51))


def test_valuated_examples():
    r25 = ring_make(5, 2)
    x = val_from_integer(50, r25)
    assert (x.v, x.u) == (2, 2)
    x = val_from_integer(7, r25)
    assert (x.v, x.u) == (0, 7)
    assert val_from_integer(0, r25).is_zero

    one = ValuatedResidue(r25, 0, 1)
    y = val_scale(one, 10, 3)
    assert (y.v, y.u) == (1, 9)
    assert (2 * pow(3, -1, 25)) % 25 == 9
    assert val_scale(y, 1, 1) == y
    with pytest.raises(NegativeValuationError):
        val_scale(ValuatedResidue(r25, 0, 2), 1, 5)

    assert val_collapse(ValuatedResidue(r25, 1, 3)).value == 15
    assert val_collapse(ValuatedResidue(r25, 3, 4)).value == 0
    assert val_collapse(ValuatedResidue.zero(r25)).value == 0


def test_legendre_examples():
    for p in SMALL_PRIMES:
        assert legendre(1, p) == 1
    assert legendre(2, 7) == 1
    assert legendre(3, 7) == -1
    assert legendre(14, 7) == 0
    assert legendre_p_mod_3(7) == 1
    assert legendre_p_mod_3(5) == -1
    assert legendre_p_mod_3(13) == 1
    with pytest.raises(RingError):
        legendre_p_mod_3(3)


@given(primes, exponents, st.integers(), st.integers())
def test_canonical_results(p, E, a, b):
    ring = ring_make(p, E)
    for r in (ring(a) + ring(b), ring(a) - ring(b), ring(a) * ring(b), -ring(a)):
        assert 0 <= r.value < ring.modulus


@given(primes, exponents, st.integers())
def test_inverse_property(p, E, a):
    ring = ring_make(p, E)
    if a % p == 0:
        return
    x = ring(a)
    assert (x * res_inv(x)).value == 1


@given(primes, exponents, st.integers(min_value=-10**30, max_value=10**30))
def test_collapse_round_trip(p, E, n):
    ring = ring_make(p, E)
    assert val_collapse(val_from_integer(n, ring)).value == n % ring.modulus


@given(primes, st.integers(min_value=2, max_value=4), st.integers())
def test_exact_division_property(p, E, a):
    ring = ring_make(p, E)
    x = ring(a)
    q = divide_exact_by_p(res_mul(ring(p), x))
    assert q.value == a % p ** (E - 1)


@given(primes, st.integers(), st.integers())
def test_legendre_multiplicative(p, a, b):
    assert legendre(a * b, p) == legendre(a, p) * legendre(b, p)


@given(primes, st.integers())
def test_euler_agreement_and_reciprocity_route(p, a):
    if a % p:
        assert legendre(a, p) % p == pow(a, (p - 1) // 2, p)
    assert legendre(a, p) == jacobi(a, p)


@given(st.sampled_from(primes_between(5, 3000)))
def test_reciprocity_consequence(p):
    assert legendre(3, p) * legendre_p_mod_3(p) == legendre(-1, p)


@given(primes, exponents, st.integers())
def test_fermat_little(p, E, a):
    if a % p == 0:
        return
    assert res_pow(ring_make(p, E)(a), p - 1).value % p == 1


def test_residue_equality_with_int():
    r = ring_make(5, 2)
    assert r(27) == 2
    assert r(27) == Residue(r, 2)
