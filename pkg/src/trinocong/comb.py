"""Sequences: central trinomial coefficients, binomials, harmonic numbers.

Each sequence has an exact big-integer route and a modular table route; the
tests cross-check one against the other.  Table routes are O(N) per ring and
require ``N <= p - 1`` so every recurrence divisor is a unit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from .modring import (
    NonInvertibleError,
    PrimePowerRing,
    Residue,
    ValuatedResidue,
    divide_exact_by_p,
    inverse_mod,
    val_collapse,
    val_div,
    val_mul,
    val_scale,
)

__all__ = [
    "trinomial_exact",
    "trinomial_general_exact",
    "trinomial_mod_table",
    "factorial_decompose",
    "FactorialTable",
    "binomial_valuated",
    "kummer_carries",
    "central_binomial_table",
    "harmonic_table",
    "fermat_quotient",
    "SequenceTables",
]


def trinomial_exact(n: int) -> int:
    """T_n as sum of binom(n, 2k) * binom(2k, k)."""
    return sum(comb(n, 2 * k) * comb(2 * k, k) for k in range(n // 2 + 1))


def trinomial_general_exact(n: int, b: int, c: int) -> int:
    """Coefficient of x**n in (x**2 + b*x + c)**n."""
    return sum(
        comb(n, 2 * k) * comb(2 * k, k) * b ** (n - 2 * k) * c**k
        for k in range(n // 2 + 1)
    )


def _check_table_length(ring: PrimePowerRing, N: int) -> None:
    if N < 0:
        raise ValueError(f"table length must be >= 0, got {N}")
    if N >= ring.p:
        raise NonInvertibleError(
            f"table length {N} >= p = {ring.p}: recurrence would divide by p"
        )


def _trinomial_values(ring: PrimePowerRing, N: int, inv: list[int]) -> list[int]:
    # n T_n = (2n - 1) T_{n-1} + 3 (n - 1) T_{n-2}
    M = ring.modulus
    T = [1 % M, 1 % M][: N + 1]
    for n in range(2, N + 1):
        T.append(((2 * n - 1) * T[n - 1] + 3 * (n - 1) * T[n - 2]) * inv[n] % M)
    return T


def _inverse_table(ring: PrimePowerRing, N: int) -> list[int]:
    M = ring.modulus
    return [0] + [inverse_mod(k, M) for k in range(1, N + 1)]


def trinomial_mod_table(ring: PrimePowerRing, N: int) -> list[Residue]:
    _check_table_length(ring, N)
    values = _trinomial_values(ring, N, _inverse_table(ring, N))
    return [Residue(ring, t) for t in values]


def kummer_carries(a: int, b: int, p: int) -> int:
    """Number of carries when adding ``a`` and ``b`` in base ``p``."""
    carries = carry = 0
    while a or b or carry:
        s = a % p + b % p + carry
        carry = 1 if s >= p else 0
        carries += carry
        a //= p
        b //= p
    return carries


def _legendre_valuation(n: int, p: int) -> int:
    v, q = 0, n // p
    while q:
        v += q
        q //= p
    return v


def factorial_decompose(n: int, ring: PrimePowerRing) -> ValuatedResidue:
    """n! as ``p**v * u``; O(n) direct product of the p-free parts."""
    if n < 0:
        raise ValueError("factorial of a negative number")
    p, M = ring.p, ring.modulus
    u = 1
    m = n
    while m:
        for j in range(1, m + 1):
            if j % p:
                u = u * j % M
        m //= p
    return ValuatedResidue(ring, _legendre_valuation(n, p), u)


class FactorialTable:
    """Prefix products of p-free integers, so n! decomposes in O(log n).

    ``prefix[j]`` is the product of all ``i <= j`` with ``p`` not dividing
    ``i``.  Then ``unit(n!) = prefix[n] * unit((n // p)!)``.
    """

    def __init__(self, ring: PrimePowerRing, limit: int):
        self.ring = ring
        self.limit = limit
        p, M = ring.p, ring.modulus
        prefix = [1] * (limit + 1)
        acc = 1
        for j in range(1, limit + 1):
            if j % p:
                acc = acc * j % M
            prefix[j] = acc
        self.prefix = prefix

    def factorial(self, n: int) -> ValuatedResidue:
        if n < 0:
            raise ValueError("factorial of a negative number")
        if n > self.limit:
            raise ValueError(f"{n}! is beyond table limit {self.limit}")
        p, M = self.ring.p, self.ring.modulus
        u, m = 1, n
        while m:
            u = u * self.prefix[m] % M
            m //= p
        return ValuatedResidue(self.ring, _legendre_valuation(n, p), u)

    def binomial(self, n: int, k: int) -> ValuatedResidue:
        return binomial_valuated(n, k, self.ring, table=self)


def binomial_valuated(
    n: int, k: int, ring: PrimePowerRing, table: FactorialTable | None = None
) -> ValuatedResidue:
    """binom(n, k) as a valuated residue; exact zero when k < 0 or k > n."""
    if k < 0 or k > n:
        return ValuatedResidue.zero(ring)
    if table is not None and n <= table.limit:
        fact = table.factorial
    else:
        def fact(m):
            return factorial_decompose(m, ring)
    return val_div(fact(n), val_mul(fact(k), fact(n - k)))


def central_binomial_table(ring: PrimePowerRing, N: int) -> list[ValuatedResidue]:
    """binom(2k, k) for k <= N via C[k+1] = C[k] * 2(2k+1) / (k+1)."""
    _check_table_length(ring, N)
    C = [ValuatedResidue(ring, 0, 1)]
    for k in range(N):
        C.append(val_scale(C[k], 2 * (2 * k + 1), k + 1))
    return C


def _harmonic_values(ring: PrimePowerRing, N: int, inv: list[int]) -> list[int]:
    M = ring.modulus
    H = [0]
    for k in range(1, N + 1):
        H.append((H[-1] + inv[k]) % M)
    return H


def harmonic_table(ring: PrimePowerRing, N: int) -> list[Residue]:
    _check_table_length(ring, N)
    return [Residue(ring, h) for h in _harmonic_values(ring, N, _inverse_table(ring, N))]


def fermat_quotient(ring: PrimePowerRing, base: int = 2) -> Residue:
    """(base**(p-1) - 1) / p, returned modulo ``p**(E-1)``."""
    p, M = ring.p, ring.modulus
    return divide_exact_by_p(Residue(ring, (pow(base, p - 1, M) - 1) % M))


@dataclass
class SequenceTables:
    """Per-ring tables of length ``N + 1``, built lazily and then reused.

    Entries are stored as plain ints modulo ``ring.modulus`` (and as
    :class:`ValuatedResidue` for the central binomials) because the claim
    evaluators consume them in tight loops.
    """

    ring: PrimePowerRing
    N: int
    _powers: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        _check_table_length(self.ring, self.N)

    @cached_property
    def inv(self) -> list[int]:
        return _inverse_table(self.ring, self.N)

    @cached_property
    def T(self) -> list[int]:
        return _trinomial_values(self.ring, self.N, self.inv)

    @cached_property
    def C(self) -> list[ValuatedResidue]:
        return central_binomial_table(self.ring, self.N)

    @cached_property
    def C_mod(self) -> list[int]:
        return [val_collapse(c).value for c in self.C]

    @cached_property
    def H(self) -> list[int]:
        return _harmonic_values(self.ring, self.N, self.inv)

    @cached_property
    def factorials(self) -> FactorialTable:
        return FactorialTable(self.ring, 4 * self.ring.p)

    def inverse_powers(self, base: int) -> list[int]:
        """``base**-k`` for ``0 <= k <= N``; cached per base."""
        if base not in self._powers:
            M = self.ring.modulus
            step = inverse_mod(base, M)
            out = [1 % M]
            for _ in range(self.N):
                out.append(out[-1] * step % M)
            self._powers[base] = out
        return self._powers[base]
