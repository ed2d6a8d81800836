"""Claim catalog and the modular verification pipeline.

Every claim evaluates to one or more ``(lhs, rhs)`` comparisons at a prime
(or, for the one integer-indexed claim, at a parameter set).  A claim passes
when every comparison agrees in its ring.  The reported ``lhs``/``rhs`` are
the first disagreeing comparison, or the first comparison when all agree, so
``passed`` is always ``lhs == rhs``.

Per-prime data lives in a :class:`PrimeWorkspace`: sequence tables are built
once, modulo ``p**3``, and shared by every claim evaluated at that prime.
Claims with a smaller target modulus reduce at the end.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

from .comb import SequenceTables, fermat_quotient, trinomial_general_exact
from .modring import (
    Residue,
    ValuatedResidue,
    divide_exact_by_p,
    inverse_mod,
    is_prime,
    jacobi,
    legendre,
    legendre_p_mod_3,
    ring_make,
    val_collapse,
    val_scale,
)

__all__ = [
    "WORK_EXPONENT",
    "DEFAULT_M_SET",
    "EULER_SAMPLE",
    "UnknownClaimError",
    "InapplicableError",
    "Comparison",
    "Claim",
    "VerifyResult",
    "PrimeWorkspace",
    "CATALOG",
    "list_claims",
    "get_claim",
    "default_param_sets",
    "thm3_double_sum",
    "verify",
    "evaluate_lhs",
    "SweepOutcome",
    "sweep",
    "verify_range",
]

# Highest target is p^3 (wolst, morley, binom2p2); quantities needing one exact
# division by p are taken from tables at this exponent too.
WORK_EXPONENT = 3

DEFAULT_M_SET = tuple(m for m in range(-10, 11) if m not in (0, 1))
EULER_SAMPLE = (-3, -2, -1, 2, 3, 5, 6, 7, 10, 11, 12, 13)


class UnknownClaimError(KeyError):
    pass


class InapplicableError(ValueError):
    """(p, params) fall outside a claim's hypotheses."""


class Comparison(NamedTuple):
    lhs: int
    rhs: int
    label: str = ""


class PrimeWorkspace:
    """Lazily built per-prime data shared across claims."""

    def __init__(self, p: int, *, direct_double_sum: bool = False):
        self.p = p
        self.ring = ring_make(p, WORK_EXPONENT, allow_two=True)
        self.M = self.ring.modulus
        self.tables = SequenceTables(self.ring, p - 1)
        self.direct_double_sum = direct_double_sum

    @property
    def half(self) -> int:
        return (self.p - 1) // 2

    def inv(self, a: int) -> int:
        return inverse_mod(a, self.M)

    def binom(self, n: int, k: int) -> ValuatedResidue:
        return self.tables.factorials.binomial(n, k)

    def binom_mod(self, n: int, k: int) -> int:
        return val_collapse(self.binom(n, k)).value

    @cached_property
    def fermat_q2(self) -> int:
        """q_p(2) modulo p^2."""
        return fermat_quotient(self.ring).value

    @cached_property
    def minus_third_harmonic(self) -> int:
        """sum_{k=1}^{(p-1)/2} 1/(k (-3)^k)."""
        t = self.tables
        ip = t.inverse_powers(-3)
        return sum(t.inv[k] * ip[k] for k in range(1, self.half + 1)) % self.M

    @cached_property
    def central_quartic_sum(self) -> int:
        """sum_{k<p} binom(4k,2k) binom(2k,k) / 64^k."""
        t = self.tables
        i64 = t.inverse_powers(64)
        return sum(
            self.binom_mod(4 * k, 2 * k) * t.C_mod[k] * i64[k] for k in range(self.p)
        ) % self.M


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    anchor: str
    modulus_exponent: int
    evaluate: Callable[..., list[Comparison]] = field(repr=False)
    division_budget: int = 0
    min_prime: int = 5
    params: tuple[str, ...] = ()
    param_check: Callable[[int | None, dict], str | None] | None = field(default=None, repr=False)
    prime_indexed: bool = True
    hypothesis: str = "p > 3"

    def applicability(
        self, p: int | None, params: Mapping, include_small_primes: bool = False
    ) -> str | None:
        """None when applicable, else a reason naming the violated condition."""
        missing = [name for name in self.params if name not in params]
        if missing:
            return f"missing parameter(s) {', '.join(missing)}"
        extra = sorted(set(params) - set(self.params))
        if extra:
            return f"unexpected parameter(s) {', '.join(extra)}"
        if self.prime_indexed:
            if p is None or not is_prime(p):
                return f"p = {p} is not prime"
            if not include_small_primes and p < self.min_prime:
                return f"requires {self.hypothesis} (p = {p})"
        if self.param_check is not None:
            return self.param_check(p, dict(params))
        return None

    def modulus_label(self, p: int | None, params: Mapping) -> str:
        if self.prime_indexed:
            return f"{p}^{self.modulus_exponent}"
        return f"{params['n']}^2"


@dataclass(frozen=True)
class VerifyResult:
    claim_id: str
    p: int | None
    params: dict
    modulus: str
    lhs: int | None
    rhs: int | None
    passed: bool
    micros: int
    detail: str = ""

    def sort_key(self):
        return _sort_key(self.claim_id, self.p, self.params)


def _sort_key(claim_id: str, p: int | None, params: Mapping):
    return (claim_id, -1 if p is None else p, tuple(sorted(params.items())))


# -- evaluators ---------------------------------------------------------------
# Each returns comparisons as ints modulo the work ring; verify() reduces them
# to the claim's own modulus.


def _lhs_binomial_trinomial_sum(ws: PrimeWorkspace) -> int:
    t = ws.tables
    i12 = t.inverse_powers(12)
    C, T = t.C_mod, t.T
    return sum(C[k] * T[k] * i12[k] for k in range(ws.p)) % ws.M


def _thm1(ws: PrimeWorkspace, params) -> list[Comparison]:
    lhs = _lhs_binomial_trinomial_sum(ws)
    rhs = legendre_p_mod_3(ws.p) * (pow(3, ws.p - 1, ws.M) + 3) * ws.inv(4)
    return [Comparison(lhs, rhs)]


def _eq13a(ws: PrimeWorkspace, params) -> list[Comparison]:
    lhs = _lhs_binomial_trinomial_sum(ws)
    return [Comparison(lhs, legendre(6, ws.p) * ws.central_quartic_sum)]


def _eq13b(ws: PrimeWorkspace, params) -> list[Comparison]:
    p = ws.p
    return [Comparison(ws.central_quartic_sum, legendre(6, p) * legendre_p_mod_3(p))]


def _thm2(ws: PrimeWorkspace, params) -> list[Comparison]:
    t = ws.tables
    i3 = t.inverse_powers(3)
    T, H = t.T, t.H
    lhs = sum(T[k] * H[k] * i3[k] for k in range(ws.p)) % ws.M
    L = legendre_p_mod_3(ws.p)
    return [Comparison(lhs, (3 + L) // 2 - ws.p * (1 + L))]


def thm3_double_sum(ws: PrimeWorkspace, m: int, direct: bool = False) -> int:
    """sum_{n<p} m^-n sum_{k<=n} binom(n,k) binom(2k,k) ((m-1)/4)^k mod p^3.

    The inner sum a_n is the coefficient sequence of
    1/sqrt(1 - (m+1) y + m y^2), so
    n a_n = (2n-1) (m+1)/2 a_{n-1} - (n-1) m a_{n-2}, giving O(p) work.
    ``direct=True`` instead rebuilds each inner sum from a Pascal row (O(p^2)).
    """
    p, M = ws.p, ws.M
    x = (m - 1) * ws.inv(4) % M
    m_inv = ws.inv(m)
    if direct:
        C = ws.tables.C_mod
        row = [1]
        total = 0
        scale = 1
        for n in range(p):
            if n:
                row = [1] + [(row[k - 1] + row[k]) % M for k in range(1, n)] + [1]
            inner, xk = 0, 1
            for k in range(n + 1):
                inner += row[k] * C[k] * xk
                xk = xk * x % M
            total = (total + inner * scale) % M
            scale = scale * m_inv % M
        return total
    inv = ws.tables.inv
    half_b = (m + 1) * ws.inv(2) % M
    prev, cur = 1, half_b  # a_0, a_1
    total = 1 + cur * m_inv
    scale = m_inv
    for n in range(2, p):
        prev, cur = cur, ((2 * n - 1) * half_b * cur - (n - 1) * m * prev) * inv[n] % M
        scale = scale * m_inv % M
        total += cur * scale
    return total % M


def _thm3(ws: PrimeWorkspace, params) -> list[Comparison]:
    p, m = ws.p, params["m"]
    lhs = thm3_double_sum(ws, m, direct=ws.direct_double_sum)
    symbol = legendre(m, p)
    if symbol == 1:
        rhs = p
    else:
        # (m/p) = -1 forces m != 1 mod p, so m - 1 is a unit here.
        assert (m - 1) % p, "m = 1 mod p with (m/p) = -1"
        rhs = p + 2 * p * (1 - symbol) * ws.inv(m - 1)
    return [Comparison(lhs, rhs)]


def _lem22(ws: PrimeWorkspace, params) -> list[Comparison]:
    p, M, h = ws.p, ws.M, ws.half
    sign = -1 if h % 2 else 1
    i3h = ws.inv(pow(3, h, M))
    bracket = sign * (i3h * ws.inv(4) + pow(3, h + 1, M) * ws.inv(4) - pow(4, p - 1, M) * i3h) % M
    if bracket % p:
        return [Comparison(bracket % p, 0, "bracket = 0 (mod p)")]
    scaled = divide_exact_by_p(Residue(ws.ring, bracket)).value
    t = ws.tables
    i3 = t.inverse_powers(3)
    s = sum(t.C_mod[k] * t.inv[2 * k + 1] * i3[k] for k in range((p - 3) // 2 + 1)) % M
    return [
        Comparison(s, scaled, "p * sum = bracket (mod p^2)"),
        Comparison(bracket % p, 0, "bracket = 0 (mod p)"),
    ]


def _lem32(ws: PrimeWorkspace, params) -> list[Comparison]:
    p, M = ws.p, ws.M
    t = ws.tables
    i3 = t.inverse_powers(3)
    total = 0
    for k in range(1, p):
        if k + 1 < p:
            term = t.C_mod[k] * t.inv[k + 1]
        else:
            # k + 1 = p: binom(2p-2, p-1) carries the p that cancels
            term = val_collapse(val_scale(t.C[k], 1, k + 1)).value
        total += term * i3[k]
    L = legendre_p_mod_3(p)
    return [Comparison(total % M, pow(3, p - 1, M) - 1 + (L - 1) // 2)]


def _lem34(ws: PrimeWorkspace, params) -> list[Comparison]:
    t = ws.tables
    lhs = sum(pow(-3, k, ws.M) * t.inv[k] for k in range(1, ws.half + 1))
    return [Comparison(lhs, -2 * ws.fermat_q2)]


def _wolst(ws: PrimeWorkspace, params) -> list[Comparison]:
    p = ws.p
    return [Comparison(ws.binom_mod(2 * p - 1, p - 1), 1)]


def _wolstH(ws: PrimeWorkspace, params) -> list[Comparison]:
    return [Comparison(ws.tables.H[ws.p - 1], 0)]


def _morley(ws: PrimeWorkspace, params) -> list[Comparison]:
    p, h = ws.p, ws.half
    sign = -1 if h % 2 else 1
    return [Comparison(ws.binom_mod(p - 1, h), sign * pow(4, p - 1, ws.M))]


def _halfH(ws: PrimeWorkspace, params) -> list[Comparison]:
    return [Comparison(ws.tables.H[ws.half], -2 * ws.fermat_q2)]


def _pansun(ws: PrimeWorkspace, params) -> list[Comparison]:
    t = ws.tables
    terms = [t.C_mod[k] * t.inv[k] for k in range(1, ws.p)]
    full = sum(terms)
    half = sum(terms[: ws.half])
    return [Comparison(full, 0, "full sum = 0"), Comparison(half, 0, "half sum = 0")]


def _sunTsq(ws: PrimeWorkspace, params) -> list[Comparison]:
    T = ws.tables.T
    return [Comparison(sum(T[k] * T[k] for k in range(ws.p)), legendre(-1, ws.p))]


def _sunN2(ws, params) -> list[Comparison]:
    n, b, c = params["n"], params["b"], params["c"]
    d = b * b - 4 * c
    total = sum(
        (2 * k + 1) * trinomial_general_exact(k, b, c) ** 2 * d ** (n - 1 - k) for k in range(n)
    )
    return [Comparison(total % (n * n), 0)]


def _binomp1j(ws: PrimeWorkspace, params) -> list[Comparison]:
    p, M = ws.p, ws.M
    t = ws.tables
    out = []
    b = 1
    for j in range(p):
        if j:
            b = b * (p - j) * t.inv[j] % M
        sign = -1 if j % 2 else 1
        out.append(Comparison(b, sign * (1 - p * t.H[j]), f"j={j}"))
    return out


def _binom2p2(ws: PrimeWorkspace, params) -> list[Comparison]:
    p = ws.p
    return [Comparison(ws.binom_mod(2 * p - 2, p - 1), -p - 2 * p * p)]


def _euler(ws: PrimeWorkspace, params) -> list[Comparison]:
    p = ws.p
    return [
        Comparison(pow(a, (p - 1) // 2, p), jacobi(a, p), f"a={a}")
        for a in EULER_SAMPLE
        if a % p
    ]


def _sigma1(ws: PrimeWorkspace, params) -> list[Comparison]:
    p, M = ws.p, ws.M
    t = ws.tables
    i3 = t.inverse_powers(3)
    lhs = sum(t.C_mod[j] * t.inv[j + 1] * i3[j] for j in range(p - 1))
    L = legendre_p_mod_3(p)
    rhs = pow(3, p - 1, M) + (L - 1) // 2 + (2 * p + 1) * i3[p - 1]
    return [Comparison(lhs, rhs)]


def _sigma2(ws: PrimeWorkspace, params) -> list[Comparison]:
    h, M = ws.half, ws.M
    t = ws.tables
    i3 = t.inverse_powers(3)
    lhs = sum(t.C_mod[k] * t.H[k] * t.inv[k + 1] * i3[k] for k in range(h + 1))
    q = ws.fermat_q2
    neg_third_h = ws.inv(pow(-3, h, M))
    rhs = -(-3 + neg_third_h) * q + q * neg_third_h + 3 * ws.inv(2) * ws.minus_third_harmonic
    return [Comparison(lhs, rhs)]


def _sigma3(ws: PrimeWorkspace, params) -> list[Comparison]:
    h, M = ws.half, ws.M
    t = ws.tables
    i3 = t.inverse_powers(3)
    lhs = sum(t.C_mod[k] * t.inv[k + 1] * t.inv[k + 1] * i3[k] for k in range(h + 1))
    q = ws.fermat_q2
    rhs = 3 - 3 * q - 3 * ws.inv(2) * ws.minus_third_harmonic + ws.inv(pow(-3, h, M))
    return [Comparison(lhs, rhs)]


def _thm3_params(p, params) -> str | None:
    m = params["m"]
    if not isinstance(m, int):
        return f"m must be an integer, got {m!r}"
    if m == 1:
        return "m = 1"
    if p is not None and m % p == 0:
        return "p | m"
    return None


def _sunN2_params(p, params) -> str | None:
    if params["n"] < 1:
        return "n < 1"
    return None


_CLAIMS = [
    Claim("thm1", "sum_{k<p} binom(2k,k) T_k / 12^k = (p/3) (3^(p-1) + 3) / 4 (mod p^2)",
          "main result: binomial-weighted trinomial sum", 2, _thm1),
    Claim("eq13a", "sum_{k<p} binom(2k,k) T_k / 12^k = (6/p) sum_{k<p} binom(4k,2k) binom(2k,k) / 64^k (mod p)",
          "earlier mod-p evaluation, first link", 1, _eq13a),
    Claim("eq13b", "sum_{k<p} binom(4k,2k) binom(2k,k) / 64^k = (6/p) (p/3) (mod p)",
          "earlier mod-p evaluation, second link", 1, _eq13b),
    Claim("thm2", "sum_{k<p} T_k H_k / 3^k = (3 + (p/3))/2 - p (1 + (p/3)) (mod p^2)",
          "main result: trinomial-harmonic sum", 2, _thm2),
    Claim("thm3", "sum_{n<p} m^-n sum_{k<=n} binom(n,k) binom(2k,k) ((m-1)/4)^k = p + 2p (1 - (m/p)) / (m - 1) (mod p^2)",
          "main result: double sum via telescoping", 2, _thm3,
          params=("m",), param_check=_thm3_params, hypothesis="p > 3, p odd"),
    Claim("lem2.2", "p sum_{k<=(p-3)/2} binom(2k,k) / ((2k+1) 3^k) = bracket (mod p^2), bracket = 0 (mod p)",
          "odd-denominator central binomial sum at t = 1/3", 1, _lem22, division_budget=1),
    Claim("lem3.2", "sum_{k=1}^{p-1} binom(2k,k) / (3^k (k+1)) = 3^(p-1) - 1 + ((p/3) - 1)/2 (mod p^2)",
          "Catalan-type sum with ratio 1/3", 2, _lem32),
    Claim("lem3.4", "sum_{k=1}^{(p-1)/2} (-3)^k / k = -2 q_p(2) (mod p)",
          "alternating power sum and the Fermat quotient", 1, _lem34, division_budget=1),
    Claim("wolst", "binom(2p-1, p-1) = 1 (mod p^3)", "Wolstenholme's theorem", 3, _wolst),
    Claim("wolstH", "H_{p-1} = 0 (mod p^2)", "Wolstenholme's harmonic congruence", 2, _wolstH),
    Claim("morley", "binom(p-1, (p-1)/2) = (-1)^((p-1)/2) 4^(p-1) (mod p^3)",
          "Morley's congruence", 3, _morley),
    Claim("halfH", "H_{(p-1)/2} = -2 q_p(2) (mod p)", "half harmonic number and the Fermat quotient",
          1, _halfH, division_budget=1),
    Claim("pansun", "sum_{k=1}^{p-1} binom(2k,k)/k = sum_{k=1}^{(p-1)/2} binom(2k,k)/k = 0 (mod p)",
          "Pan-Sun congruence", 1, _pansun),
    Claim("sunTsq", "sum_{k<p} T_k^2 = (-1/p) (mod p)", "sum of squared trinomial coefficients",
          1, _sunTsq, min_prime=3, hypothesis="p odd"),
    Claim("sunN2", "sum_{k<n} (2k+1) T_k(b,c)^2 (b^2 - 4c)^(n-1-k) = 0 (mod n^2)",
          "divisibility of the weighted generalized trinomial sum", 2, _sunN2,
          params=("b", "c", "n"), param_check=_sunN2_params, prime_indexed=False,
          hypothesis="n >= 1"),
    Claim("binomp1j", "binom(p-1, j) = (-1)^j (1 - p H_j) (mod p^2) for 0 <= j <= p-1",
          "binom(p-1, j) via harmonic numbers", 2, _binomp1j, min_prime=3, hypothesis="p odd"),
    Claim("binom2p2", "binom(2p-2, p-1) = -p - 2p^2 (mod p^3)",
          "Wolstenholme consequence for binom(2p-2, p-1)", 3, _binom2p2),
    Claim("euler", "a^((p-1)/2) = (a/p) (mod p) for the fixed sample of a, p not dividing a",
          "Euler's criterion", 1, _euler, min_prime=3, hypothesis="p odd"),
    Claim("sigma1", "sum_{j=0}^{p-2} binom(2j,j) / (3^j (j+1)) = 3^(p-1) + ((p/3) - 1)/2 + (2p + 1)/3^(p-1) (mod p^2)",
          "first partial sum in the harmonic proof", 2, _sigma1),
    Claim("sigma2", "sum_{k<=(p-1)/2} binom(2k,k) H_k / ((k+1) 3^k) = -(-3 + (-1/3)^((p-1)/2)) q_p(2) + q_p(2) (-1/3)^((p-1)/2) + (3/2) sum_{k=1}^{(p-1)/2} 1/(k (-3)^k) (mod p)",
          "second partial sum in the harmonic proof", 1, _sigma2, division_budget=1),
    Claim("sigma3", "sum_{k<=(p-1)/2} binom(2k,k) / ((k+1)^2 3^k) = 3 - 3 q_p(2) - (3/2) sum_{k=1}^{(p-1)/2} 1/(k (-3)^k) + 1/(-3)^((p-1)/2) (mod p)",
          "third partial sum in the harmonic proof", 1, _sigma3, division_budget=1),
]

CATALOG: dict[str, Claim] = {c.id: c for c in sorted(_CLAIMS, key=lambda c: c.id)}


def list_claims() -> list[Claim]:
    return list(CATALOG.values())


def get_claim(claim_id: str) -> Claim:
    try:
        return CATALOG[claim_id]
    except KeyError:
        raise UnknownClaimError(f"unknown claim {claim_id!r}") from None


def default_param_sets(
    claim_id: str,
    m_set: Iterable[int] = DEFAULT_M_SET,
    n_max: int = 40,
    bc_range: Iterable[int] = range(-2, 3),
) -> list[dict]:
    if claim_id == "thm3":
        return [{"m": m} for m in m_set]
    if claim_id == "sunN2":
        bc = list(bc_range)
        return [{"b": b, "c": c, "n": n} for n in range(1, n_max + 1) for b in bc for c in bc]
    return [{}]


def _workspace_for(p: int | None, workspace: PrimeWorkspace | None, **kw) -> PrimeWorkspace | None:
    if p is None:
        return None
    if workspace is not None:
        if workspace.p != p:
            raise ValueError(f"workspace is for p = {workspace.p}, not {p}")
        return workspace
    return PrimeWorkspace(p, **kw)


def _check(claim: Claim, p, params, include_small_primes) -> None:
    reason = claim.applicability(p, params, include_small_primes)
    if reason is not None:
        raise InapplicableError(f"{claim.id} not applicable at p={p}, params={params}: {reason}")


def verify(
    claim_id: str,
    p: int | None,
    params: Mapping | None = None,
    *,
    include_small_primes: bool = False,
    workspace: PrimeWorkspace | None = None,
    perturb: int = 0,
    direct_double_sum: bool = False,
) -> VerifyResult:
    """Evaluate both sides of a claim and compare them in the claim's ring.

    Arithmetic failures inside the evaluator (a non-invertible denominator at
    a small prime, say) become a FAIL result with a diagnostic.  ``perturb``
    is added to every right-hand side; it exists to check that the harness
    notices a wrong claim.
    """
    claim = get_claim(claim_id)
    params = dict(params or {})
    _check(claim, p, params, include_small_primes)
    modulus = claim.modulus_label(p, params)
    ws = _workspace_for(p, workspace, direct_double_sum=direct_double_sum)
    start = time.perf_counter_ns()
    try:
        comparisons = claim.evaluate(ws, params)
    except (ArithmeticError, ValueError) as exc:
        micros = (time.perf_counter_ns() - start) // 1000
        return VerifyResult(claim_id, p, params, modulus, None, None, False, micros,
                            f"{type(exc).__name__}: {exc}")
    if claim.prime_indexed:
        M = p**claim.modulus_exponent
    else:
        M = params["n"] ** 2
    reported = None
    for cmp in comparisons:
        lhs, rhs = cmp.lhs % M, (cmp.rhs + perturb) % M
        if reported is None:
            reported = (lhs, rhs, cmp.label)
        if lhs != rhs:
            reported = (lhs, rhs, f"mismatch at {cmp.label}" if cmp.label else "mismatch")
            break
    micros = (time.perf_counter_ns() - start) // 1000
    if reported is None:
        return VerifyResult(claim_id, p, params, modulus, None, None, False, micros,
                            "no comparisons produced")
    lhs, rhs, label = reported
    detail = label if lhs != rhs else f"{len(comparisons)} comparison(s) agree"
    return VerifyResult(claim_id, p, params, modulus, lhs, rhs, lhs == rhs, micros, detail)


def evaluate_lhs(
    claim_id: str,
    p: int,
    params: Mapping | None = None,
    *,
    include_small_primes: bool = False,
    workspace: PrimeWorkspace | None = None,
) -> Residue:
    """The pipeline's primary left-hand side at the claim's modulus."""
    claim = get_claim(claim_id)
    params = dict(params or {})
    _check(claim, p, params, include_small_primes)
    if not claim.prime_indexed:
        raise ValueError(f"{claim_id} is not prime-indexed")
    ws = _workspace_for(p, workspace)
    first = claim.evaluate(ws, params)[0]
    ring = ring_make(p, claim.modulus_exponent, allow_two=True)
    return ring(first.lhs)


@dataclass
class SweepOutcome:
    results: list[VerifyResult]
    skipped: list[tuple[str, int | None, dict, str]]


def _run_task(task) -> tuple[list[VerifyResult], list]:
    p, jobs, include_small_primes, perturb, direct = task
    results, skipped = [], []
    ws = None
    for claim_id, param_sets in jobs:
        claim = CATALOG[claim_id]
        for params in param_sets:
            reason = claim.applicability(p, params, include_small_primes)
            if reason is not None:
                skipped.append((claim_id, p, params, reason))
                continue
            if ws is None and p is not None:
                ws = PrimeWorkspace(p, direct_double_sum=direct)
            results.append(
                verify(claim_id, p, params, include_small_primes=include_small_primes,
                       workspace=ws, perturb=perturb.get(claim_id, 0))
            )
    return results, skipped


def sweep(
    claim_ids: Sequence[str],
    primes: Iterable[int],
    param_sets: Mapping[str, list[dict]] | None = None,
    *,
    include_small_primes: bool = False,
    threads: int = 1,
    perturb: Mapping[str, int] | None = None,
    direct_double_sum: bool = False,
) -> SweepOutcome:
    """Run every applicable (claim, p, params) triple.

    The unit of work is one prime (all its claims share one workspace), or
    one parameter set for the integer-indexed claim.  Output is sorted by
    (claim id, p, params) whatever the worker count.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    claims = [get_claim(c) for c in claim_ids]
    param_sets = dict(param_sets or {})
    for c in claims:
        param_sets.setdefault(c.id, default_param_sets(c.id))
    perturb = dict(perturb or {})
    prime_jobs = [(c.id, param_sets[c.id]) for c in claims if c.prime_indexed]
    tasks = []
    if prime_jobs:
        for p in sorted(set(primes)):
            tasks.append((p, prime_jobs, include_small_primes, perturb, direct_double_sum))
    for c in claims:
        if not c.prime_indexed:
            for params in param_sets[c.id]:
                tasks.append((None, [(c.id, [params])], include_small_primes, perturb, False))

    if threads == 1 or len(tasks) <= 1:
        chunks = map(_run_task, tasks)
        outcome = _collect(chunks)
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcome = _collect(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * threads))))
    return outcome


def _collect(chunks) -> SweepOutcome:
    results, skipped = [], []
    for r, s in chunks:
        results.extend(r)
        skipped.extend(s)
    results.sort(key=VerifyResult.sort_key)
    skipped.sort(key=lambda s: _sort_key(s[0], s[1], s[2]))
    return SweepOutcome(results, skipped)


def verify_range(
    claim_ids: Sequence[str],
    primes: Iterable[int],
    param_sets: Mapping[str, list[dict]] | None = None,
    **kwargs,
) -> list[VerifyResult]:
    return sweep(claim_ids, primes, param_sets, **kwargs).results
