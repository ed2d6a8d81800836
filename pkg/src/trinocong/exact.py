"""Exact rational oracle and finite-identity checkers.

Everything here works in :class:`fractions.Fraction` with binomials from
:func:`math.comb`, recomputed per term.  Nothing is shared with the modular
pipeline except the final reduction to a residue.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator

from .modring import NonInvertibleError, PrimePowerRing, Residue, ring_make

BigRational = Fraction

__all__ = [
    "BigRational",
    "rational_reduce_mod",
    "harmonic",
    "trinomial",
    "CertificateTriple",
    "check_lemma_2_1",
    "check_lemma_3_1",
    "check_lemma_3_3",
    "check_th3id",
    "check_inverse_hockey",
    "check_certificate",
    "check_trinomial_forms",
    "CERTIFICATE_M_SAMPLES",
    "TH3ID_T_SAMPLES",
    "GridBounds",
    "IdentityResult",
    "identity_grids",
    "ORACLE_CLAIMS",
    "oracle_value",
    "oracle_claim",
]


def rational_reduce_mod(q: Fraction, ring: PrimePowerRing) -> Residue:
    q = Fraction(q)
    if q.denominator % ring.p == 0:
        raise NonInvertibleError(f"{q} has p = {ring.p} in its denominator")
    M = ring.modulus
    return Residue(ring, q.numerator * pow(q.denominator, -1, M) % M)


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    if n <= 0:
        return Fraction(0)
    return harmonic(n - 1) + Fraction(1, n)


def trinomial(n: int) -> int:
    """T_n as sum of binom(n, k) * binom(n - k, k)."""
    return sum(comb(n, k) * comb(n - k, k) for k in range(n + 1))


def _multinomial_trinomial(n: int) -> int:
    f = _factorial
    return sum(f(n) // (f(k) * f(k) * f(n - 2 * k)) for k in range(n // 2 + 1))


@lru_cache(maxsize=None)
def _factorial(n: int) -> int:
    out = 1
    for j in range(2, n + 1):
        out *= j
    return out


# -- finite identities ------------------------------------------------------


def check_lemma_2_1(n: int, j: int) -> bool:
    """sum_{k=j}^n binom(2k,k) binom(k,j) / 4^k against its closed form."""
    lhs = sum(Fraction(comb(2 * k, k) * comb(k, j), 4**k) for k in range(j, n + 1))
    rhs = Fraction((n + 1) * comb(n, j) * comb(2 * n + 2, n + 1), 2 ** (2 * n + 1) * (2 * j + 1))
    return lhs == rhs


def check_lemma_3_1(n: int, j: int) -> bool:
    lhs = sum((comb(k, j) * harmonic(k) for k in range(j, n + 1)), Fraction(0))
    rhs = comb(n + 1, j + 1) * (harmonic(n + 1) - Fraction(1, j + 1))
    return lhs == rhs


_MINUS_FOUR_THIRDS = Fraction(-4, 3)


def _lem33_first_lhs(n: int) -> Fraction:
    return sum(
        (comb(n, k) * harmonic(k) / (k + 1) * _MINUS_FOUR_THIRDS**k for k in range(n + 1)),
        Fraction(0),
    )


def _lem33_first_rhs(n: int) -> Fraction:
    m3 = Fraction(-3)
    a = sum((m3**k / k for k in range(1, n + 1)), Fraction(0))
    b = sum((1 / (k * m3**k) for k in range(1, n + 1)), Fraction(0))
    return (
        (-3 + Fraction(-1, 3) ** n) * harmonic(n) / (4 * (n + 1))
        - a / (4 * m3**n * (n + 1))
        + 3 * b / (4 * (n + 1))
    )


def _lem33_second_lhs(n: int) -> Fraction:
    return sum(
        (Fraction(comb(n, k), (k + 1) ** 2) * _MINUS_FOUR_THIRDS**k for k in range(n + 1)),
        Fraction(0),
    )


def _lem33_second_rhs(n: int) -> Fraction:
    m3 = Fraction(-3)
    a = sum((Fraction(1, k + 1) for k in range(1, n + 1)), Fraction(0))
    b = sum((1 / ((k + 1) * m3**k) for k in range(1, n + 1)), Fraction(0))
    return Fraction(1, n + 1) + 3 * a / (4 * (n + 1)) + b / (4 * (n + 1))


def _lem33_recurrence(X, n: int) -> Fraction:
    return (
        (n + 1) * (n + 2) * X(n)
        + (n + 2) * (5 * n + 13) * X(n + 1)
        + 3 * (n + 3) * (n + 4) * X(n + 2)
        - 9 * (n + 3) * (n + 4) * X(n + 3)
    )


def check_lemma_3_3(n: int) -> bool:
    """Both harmonic/(-4/3)^k closed forms at n, plus the order-3 recurrence
    (inhomogeneous term 12) for each side of the first one."""
    if _lem33_first_lhs(n) != _lem33_first_rhs(n):
        return False
    if _lem33_second_lhs(n) != _lem33_second_rhs(n):
        return False
    return all(_lem33_recurrence(X, n) == 12 for X in (_lem33_first_lhs, _lem33_first_rhs))


def check_th3id(n: int, t) -> bool:
    """sum_k binom(n,k) t^(k+1)/(k+1) == ((1+t)^(n+1) - 1)/(n+1).

    Also accepted at t = 0, where both sides vanish.
    """
    t = Fraction(t)
    lhs = sum((comb(n, k) * t ** (k + 1) / (k + 1) for k in range(n + 1)), Fraction(0))
    return lhs == ((1 + t) ** (n + 1) - 1) / (n + 1)


def check_inverse_hockey(M: int, j: int) -> bool:
    lhs = sum((Fraction(comb(k, j), k) for k in range(j, M + 1)), Fraction(0))
    return lhs == Fraction(comb(M, j), j)


def _binom0(a: int, b: int) -> int:
    # binom(a, b) = 0 outside 0 <= b <= a
    return comb(a, b) if 0 <= b <= a else 0


@dataclass(frozen=True)
class CertificateTriple:
    """Summand F and telescoping certificates G1, G2 for fixed ``m``.

    F(n,k)  = m^-n binom(n,k) binom(2k,k) x^k,            x = (m-1)/4
    G1(n,k) = (2kn+k+n)/(k+1) * F(n,k)
    G2(n,k) = 2k m^-(n+1) binom(n+1,k) binom(2k,k) x^k

    with F(n,k) = G1(n+1,k) - G1(n,k) + G2(n,k+1) - G2(n,k).
    """

    m: Fraction

    def __post_init__(self):
        object.__setattr__(self, "m", Fraction(self.m))
        if self.m == 0:
            raise ValueError("m must be nonzero")

    @property
    def x(self) -> Fraction:
        return (self.m - 1) / 4

    def F(self, n: int, k: int) -> Fraction:
        return _binom0(n, k) * comb(2 * k, k) * self.x**k / self.m**n

    def G1(self, n: int, k: int) -> Fraction:
        return Fraction(2 * k * n + k + n, k + 1) * self.F(n, k)

    def G2(self, n: int, k: int) -> Fraction:
        return 2 * k * _binom0(n + 1, k) * comb(2 * k, k) * self.x**k / self.m ** (n + 1)


def check_certificate(n: int, k: int, m) -> bool:
    c = CertificateTriple(Fraction(m))
    rhs = (c.G1(n + 1, k) - c.G1(n, k)) + (c.G2(n, k + 1) - c.G2(n, k))
    return c.F(n, k) == rhs


def check_trinomial_forms(n: int, b: int = 1, c: int = 1) -> bool:
    """The three multinomial forms of T_n agree, the alternating
    3^(n-k) form agrees, and the general T_n(b, c) reduces to T_n at (1, 1).

    For ``(b, c) != (1, 1)`` the general coefficient is also compared with a
    direct expansion of (x^2 + b x + c)^n.
    """
    t1 = _multinomial_trinomial(n)
    t2 = sum(comb(n, 2 * k) * comb(2 * k, k) for k in range(n // 2 + 1))
    t3 = trinomial(n)
    if not t1 == t2 == t3:
        return False
    alt = sum(comb(n, k) * comb(2 * k, k) * (-1) ** k * 3 ** (n - k) for k in range(n + 1))
    if alt != t1:
        return False
    general = sum(comb(n, 2 * k) * comb(2 * k, k) * b ** (n - 2 * k) * c**k for k in range(n // 2 + 1))
    if (b, c) == (1, 1) and general != t1:
        return False
    return general == _expand_coefficient(n, b, c)


def _expand_coefficient(n: int, b: int, c: int) -> int:
    return _power(n, b, c)[n]


@lru_cache(maxsize=None)
def _power(n: int, b: int, c: int) -> tuple[int, ...]:
    """Coefficients of (x^2 + b x + c)^n, lowest degree first."""
    if n == 0:
        return (1,)
    prev = _power(n - 1, b, c)
    nxt = [0] * (len(prev) + 2)
    for i, a in enumerate(prev):
        nxt[i] += c * a
        nxt[i + 1] += b * a
        nxt[i + 2] += a
    return tuple(nxt)


# 41 distinct nonzero sample points.  At fixed (n, k) with k <= n + 1, clearing
# m^(n+1) * 4^k turns the certificate relation into a polynomial identity in m
# of degree <= k + 1 <= n + 2, so agreement at n + 3 points proves it; 41
# points cover every (n, k) with n <= 38.
CERTIFICATE_M_SAMPLES: tuple[Fraction, ...] = tuple(
    sorted(
        {Fraction(v) for v in range(-12, 13) if v != 0}
        | {Fraction(a, b) for a, b in [(1, 2), (-1, 2), (1, 3), (-2, 3), (3, 2), (-5, 2),
                                       (7, 3), (-7, 4), (5, 6), (9, 5), (-11, 7), (13, 8),
                                       (-1, 5), (2, 9), (17, 4), (-19, 6), (1, 7)]}
    )
)

TH3ID_T_SAMPLES: tuple[Fraction, ...] = tuple(
    Fraction(t) for t in ("1", "-1", "1/2", "-1/2", "2/3", "-4/3", "5", "0")
)


@dataclass(frozen=True)
class GridBounds:
    lemma_n: int = 60
    th3id_n: int = 40
    certificate_n: int = 30
    forms_n: int = 120
    bc_lo: int = -2
    bc_hi: int = 2


@dataclass(frozen=True)
class IdentityResult:
    id: str
    params: dict
    passed: bool
    micros: int


def _timed(identity_id: str, params: dict, fn, *args) -> IdentityResult:
    start = time.perf_counter_ns()
    ok = bool(fn(*args))
    return IdentityResult(identity_id, params, ok, (time.perf_counter_ns() - start) // 1000)


def _certificate_cell(n: int, k: int) -> bool:
    return all(check_certificate(n, k, m) for m in CERTIFICATE_M_SAMPLES)


def identity_grids(bounds: GridBounds = GridBounds()) -> Iterator[IdentityResult]:
    """Yield one result per grid cell, in a fixed order."""
    L = bounds.lemma_n
    for n in range(L + 1):
        for j in range(n + 1):
            yield _timed("lemma_2_1", {"j": j, "n": n}, check_lemma_2_1, n, j)
    for n in range(L + 1):
        for j in range(n + 1):
            yield _timed("lemma_3_1", {"j": j, "n": n}, check_lemma_3_1, n, j)
    for n in range(L + 1):
        yield _timed("lemma_3_3", {"n": n}, check_lemma_3_3, n)
    for n in range(bounds.th3id_n + 1):
        for t in TH3ID_T_SAMPLES:
            yield _timed("th3id", {"n": n, "t": str(t)}, check_th3id, n, t)
    for M in range(1, L + 1):
        for j in range(1, M + 1):
            yield _timed("inverse_hockey", {"M": M, "j": j}, check_inverse_hockey, M, j)
    for n in range(bounds.certificate_n + 1):
        for k in range(n + 2):
            yield _timed(
                "certificate",
                {"k": k, "m_points": len(CERTIFICATE_M_SAMPLES), "n": n},
                _certificate_cell,
                n,
                k,
            )
    bcs = range(bounds.bc_lo, bounds.bc_hi + 1)
    for n in range(bounds.forms_n + 1):
        for b in bcs:
            for c in bcs:
                yield _timed(
                    "trinomial_forms", {"b": b, "c": c, "n": n}, check_trinomial_forms, n, b, c
                )


# -- oracle ------------------------------------------------------------------


def _thm3_exact(p: int, m: int) -> Fraction:
    x = Fraction(m - 1, 4)
    total = Fraction(0)
    for n in range(p):
        inner = sum(
            (comb(n, k) * comb(2 * k, k) * x**k for k in range(n + 1)), Fraction(0)
        )
        total += inner / Fraction(m) ** n
    return total


def _sum(terms) -> Fraction:
    return sum(terms, Fraction(0))


def _oracle_thm1(p, params):
    return _sum(Fraction(comb(2 * k, k) * trinomial(k), 12**k) for k in range(p))


def _oracle_eq13b(p, params):
    return _sum(Fraction(comb(4 * k, 2 * k) * comb(2 * k, k), 64**k) for k in range(p))


def _oracle_thm2(p, params):
    return _sum(trinomial(k) * harmonic(k) / 3**k for k in range(p))


def _oracle_lem22(p, params):
    return _sum(Fraction(comb(2 * k, k), (2 * k + 1) * 3**k) for k in range((p - 3) // 2 + 1))


def _oracle_lem32(p, params):
    return _sum(Fraction(comb(2 * k, k), 3**k * (k + 1)) for k in range(1, p))


def _oracle_lem34(p, params):
    return _sum(Fraction((-3) ** k, k) for k in range(1, (p - 1) // 2 + 1))


def _oracle_pansun(p, params):
    return _sum(Fraction(comb(2 * k, k), k) for k in range(1, p))


def _oracle_sunTsq(p, params):
    return Fraction(sum(trinomial(k) ** 2 for k in range(p)))


def _oracle_sigma1(p, params):
    return _sum(Fraction(comb(2 * j, j), 3**j * (j + 1)) for j in range(p - 1))


def _oracle_sigma2(p, params):
    return _sum(
        comb(2 * k, k) * harmonic(k) / ((k + 1) * 3**k) for k in range((p - 1) // 2 + 1)
    )


def _oracle_sigma3(p, params):
    return _sum(Fraction(comb(2 * k, k), (k + 1) ** 2 * 3**k) for k in range((p - 1) // 2 + 1))


# claim id -> (exact left-hand side, modulus exponent)
ORACLE_CLAIMS = {
    "binom2p2": (lambda p, params: Fraction(comb(2 * p - 2, p - 1)), 3),
    "eq13a": (_oracle_thm1, 1),
    "eq13b": (_oracle_eq13b, 1),
    "halfH": (lambda p, params: harmonic((p - 1) // 2), 1),
    "lem2.2": (_oracle_lem22, 1),
    "lem3.2": (_oracle_lem32, 2),
    "lem3.4": (_oracle_lem34, 1),
    "morley": (lambda p, params: Fraction(comb(p - 1, (p - 1) // 2)), 3),
    "pansun": (_oracle_pansun, 1),
    "sigma1": (_oracle_sigma1, 2),
    "sigma2": (_oracle_sigma2, 1),
    "sigma3": (_oracle_sigma3, 1),
    "sunTsq": (_oracle_sunTsq, 1),
    "thm1": (_oracle_thm1, 2),
    "thm2": (_oracle_thm2, 2),
    "thm3": (lambda p, params: _thm3_exact(p, int(params["m"])), 2),
    "wolst": (lambda p, params: Fraction(comb(2 * p - 1, p - 1)), 3),
    "wolstH": (lambda p, params: harmonic(p - 1), 2),
}


def oracle_value(claim_id: str, p: int, params: dict | None = None) -> Fraction:
    """The claim's left-hand side as an exact rational."""
    try:
        fn, _ = ORACLE_CLAIMS[claim_id]
    except KeyError:
        raise KeyError(f"no oracle for claim {claim_id!r}") from None
    return fn(p, params or {})


def oracle_claim(claim_id: str, p: int, params: dict | None = None) -> Residue:
    """Exact left-hand side reduced at the claim's modulus."""
    value = oracle_value(claim_id, p, params)
    return rational_reduce_mod(value, ring_make(p, ORACLE_CLAIMS[claim_id][1]))
