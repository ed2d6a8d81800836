import pytest

from trinocong.claims import (
    CATALOG,
    InapplicableError,
    PrimeWorkspace,
    UnknownClaimError,
    default_param_sets,
    evaluate_lhs,
    list_claims,
    sweep,
    thm3_double_sum,
    verify,
    verify_range,
)
from trinocong.exact import ORACLE_CLAIMS, oracle_claim
from trinocong.modring import primes_between

ALL_IDS = sorted(CATALOG)
PRIME_IDS = [c for c in ALL_IDS if CATALOG[c].prime_indexed]


def test_catalog_contents():
    ids = [c.id for c in list_claims()]
    assert ids == sorted(ids)
    assert len(ids) == 21
    for required in ("thm1", "thm2", "thm3"):
        assert required in ids
    assert CATALOG["thm1"].modulus_exponent == 2
    assert [c.id for c in list_claims()] == ids
    assert all(c.anchor and c.statement for c in list_claims())


def test_spot_values():
    r = verify("thm1", 5)
    assert (r.passed, r.lhs, r.rhs, r.modulus) == (True, 4, 4, "5^2")
    r = verify("thm3", 5, {"m": 2})
    assert (r.passed, r.lhs, r.rhs, r.modulus) == (True, 0, 0, "5^2")
    assert 5 + 10 * (1 - (-1)) == 25
    r = verify("halfH", 7)
    assert (r.passed, r.lhs, r.rhs, r.modulus) == (True, 3, 3, "7^1")
    r = verify("thm2", 5)
    assert (r.passed, r.lhs, r.rhs) == (True, 1, 1)


def test_small_prime_behaviour():
    with pytest.raises(InapplicableError, match="p > 3"):
        verify("wolst", 3)
    r = verify("wolst", 3, include_small_primes=True)
    assert (r.passed, r.lhs, r.rhs, r.modulus) == (False, 10, 1, "3^3")
    r = verify("thm2", 2, include_small_primes=True)
    assert (r.passed, r.lhs, r.rhs, r.modulus) == (False, 3, 1, "2^2")
    # 3 is not invertible mod 9: reported as FAIL, not raised
    r = verify("thm2", 3, include_small_primes=True)
    assert not r.passed and r.lhs is None and "NonInvertible" in r.detail


def test_thm3_at_three_with_override():
    results = [verify("thm3", 3, {"m": m}, include_small_primes=True) for m in (-2, -1, 2, 4, 5)]
    assert all(r.lhs is not None for r in results)


def test_errors():
    with pytest.raises(UnknownClaimError):
        verify("nope", 5)
    with pytest.raises(InapplicableError, match="p \\| m"):
        verify("thm3", 5, {"m": 10})
    with pytest.raises(InapplicableError, match="m = 1"):
        verify("thm3", 7, {"m": 1})
    with pytest.raises(InapplicableError, match="missing"):
        verify("thm3", 7)
    with pytest.raises(InapplicableError, match="not prime"):
        verify("thm1", 9)
    with pytest.raises(InapplicableError, match="n < 1"):
        verify("sunN2", None, {"n": 0, "b": 1, "c": 1})


def test_thm3_range_example():
    params = [{"m": m} for m in range(-10, 11) if m != 0]
    out = sweep(["thm3"], [5], {"thm3": params})
    ms = [r.params["m"] for r in out.results]
    for excluded in (-10, -5, 5, 10, 1):
        assert excluded not in ms
    assert 6 in ms
    r6 = next(r for r in out.results if r.params["m"] == 6)
    assert r6.passed and r6.rhs == 5
    assert {s[2]["m"] for s in out.skipped} == {-10, -5, 1, 5, 10}


@pytest.mark.parametrize(
    "p,m", [(p, m) for p in (5, 7, 11, 13, 31, 97) for m in (-7, -3, 2, 3, 6, 9) if m % p]
)
def test_thm3_fast_and_direct_agree(p, m):
    ws = PrimeWorkspace(p)
    assert thm3_double_sum(ws, m) == thm3_double_sum(ws, m, direct=True)


def test_thm3_rhs_precondition():
    # (m/p) = -1 implies m != 1 (mod p)
    from trinocong.modring import legendre

    for p in primes_between(5, 300):
        for m in range(-10, 11):
            if m % p and legendre(m, p) == -1:
                assert (m - 1) % p


def test_sunN2_example():
    params = default_param_sets("sunN2")
    assert len(params) == 40 * 25
    results = verify_range(["sunN2"], [], {"sunN2": params})
    assert len(results) == 1000 and all(r.passed for r in results)
    assert results[0].p is None


@pytest.mark.parametrize("claim_id", sorted(ORACLE_CLAIMS))
def test_pipeline_matches_oracle_small(claim_id):
    for p in primes_between(5, 40):
        for params in default_param_sets(claim_id, m_set=(-3, 2, 6)):
            if CATALOG[claim_id].applicability(p, params) is not None:
                continue
            assert evaluate_lhs(claim_id, p, params) == oracle_claim(claim_id, p, params)


def test_workspace_shared_and_checked():
    ws = PrimeWorkspace(11)
    assert verify("thm1", 11, workspace=ws).passed
    with pytest.raises(ValueError):
        verify("thm1", 13, workspace=ws)


def test_all_claims_pass_small_primes():
    out = sweep(ALL_IDS, primes_between(5, 150))
    assert out.results and all(r.passed for r in out.results)
    assert all(r.lhs == r.rhs for r in out.results)


def test_witness_reporting_on_multi_comparison_claims():
    r = verify("binomp1j", 7)
    assert r.passed and "7 comparison" in r.detail
    r = verify("binomp1j", 7, perturb=1)
    assert not r.passed and r.detail.startswith("mismatch at j=0")
    r = verify("pansun", 11, perturb=2)
    assert not r.passed and r.lhs != r.rhs


def test_mutation_sensitivity():
    for claim_id in PRIME_IDS:
        for params in default_param_sets(claim_id, m_set=(2,)):
            for p in primes_between(5, 97):
                if CATALOG[claim_id].applicability(p, params) is not None:
                    continue
                assert not verify(claim_id, p, params, perturb=1).passed, (claim_id, p)


def test_order_determinism():
    a = verify_range(["thm1", "euler", "thm3"], [31, 5, 11, 7], {"thm3": [{"m": 3}, {"m": -2}]})
    b = verify_range(["thm3", "thm1", "euler"], [7, 11, 5, 31], {"thm3": [{"m": -2}, {"m": 3}]})
    strip = lambda rs: [(r.claim_id, r.p, r.params, r.lhs, r.rhs, r.passed) for r in rs]
    assert strip(a) == strip(b)
    assert [r.sort_key() for r in a] == sorted(r.sort_key() for r in a)


def test_thm1_range_example():
    results = verify_range(["thm1"], primes_between(5, 97))
    # every prime in [5, 97]; there are 23 of them
    assert len(results) == 23 and all(r.passed for r in results)
