"""Arithmetic modulo odd prime powers.

Three value kinds live here:

* :class:`Residue` -- a canonical integer in ``[0, p**E)``.
* :class:`ValuatedResidue` -- ``p**v * u`` with ``u`` a unit, so that
  p-divisible quantities (binomials, factorials) can be multiplied and divided
  exactly before being collapsed to a plain residue.
* Legendre/Jacobi symbols, with Euler's criterion as the primary route and the
  reciprocity recursion kept as an independent cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

__all__ = [
    "RingError",
    "NonInvertibleError",
    "ExactnessError",
    "NegativeValuationError",
    "PrimePowerRing",
    "Residue",
    "ValuatedResidue",
    "is_prime",
    "primes_between",
    "ring_make",
    "inverse_mod",
    "res_from_rational",
    "res_add",
    "res_sub",
    "res_mul",
    "res_inv",
    "res_pow",
    "divide_exact_by_p",
    "p_adic_split",
    "val_from_integer",
    "val_scale",
    "val_mul",
    "val_div",
    "val_collapse",
    "legendre",
    "jacobi",
    "legendre_p_mod_3",
]


class RingError(ValueError):
    """Bad ring parameters (non-prime, even, exponent < 1, mismatched rings)."""


class NonInvertibleError(ArithmeticError):
    pass


class ExactnessError(ArithmeticError):
    """An exact division by p was requested on a value not divisible by p."""


class NegativeValuationError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes ``lo <= p <= hi`` by a sieve of Eratosthenes."""
    if hi < 2 or hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, hi + 1, i)))
    return [n for n in range(max(lo, 2), hi + 1) if sieve[n]]


@dataclass(frozen=True)
class PrimePowerRing:
    """The integers modulo ``p**E``."""

    p: int
    E: int
    modulus: int

    def __call__(self, n: int) -> Residue:
        return Residue(self, n % self.modulus)

    def label(self) -> str:
        return f"{self.p}^{self.E}"

    def with_exponent(self, E: int) -> PrimePowerRing:
        return ring_make(self.p, E, allow_two=self.p == 2)

    def __repr__(self) -> str:
        return f"PrimePowerRing({self.label()})"


def ring_make(p: int, E: int, *, allow_two: bool = False) -> PrimePowerRing:
    """Build the ring of integers mod ``p**E``.

    ``p = 2`` is refused unless ``allow_two`` is set; it exists only so the
    small-prime override path can report what happens at 2.
    """
    if not isinstance(p, int) or not isinstance(E, int):
        raise RingError(f"p and E must be integers, got {p!r}, {E!r}")
    if E < 1:
        raise RingError(f"exponent must be >= 1, got {E}")
    if not is_prime(p):
        raise RingError(f"{p} is not prime")
    if p == 2 and not allow_two:
        raise RingError("p = 2 is not supported (odd primes only)")
    return PrimePowerRing(p, E, p**E)


class Residue:
    """A canonical residue ``value`` in ``[0, ring.modulus)``."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: PrimePowerRing, value: int):
        if not 0 <= value < ring.modulus:
            raise ValueError(f"{value} is not canonical modulo {ring.modulus}")
        self.ring = ring
        self.value = value

    def _coerce(self, other) -> int:
        if isinstance(other, Residue):
            if other.ring != self.ring:
                raise RingError(f"mixed rings {self.ring.label()} and {other.ring.label()}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.ring, (self.value + o) % self.ring.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.ring, (self.value - o) % self.ring.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.ring, (o - self.value) % self.ring.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.ring, (self.value * o) % self.ring.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(self.ring, (-self.value) % self.ring.modulus)

    def __pow__(self, e: int):
        return res_pow(self, e)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.ring.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value} mod {self.ring.label()})"


def inverse_mod(a: int, modulus: int) -> int:
    try:
        return pow(a, -1, modulus)
    except ValueError:
        raise NonInvertibleError(f"{a} is not invertible modulo {modulus}") from None


def res_from_rational(a: int, b: int, ring: PrimePowerRing) -> Residue:
    """``a / b`` as a residue; ``b`` must be coprime to p."""
    if b == 0 or b % ring.p == 0:
        raise NonInvertibleError(f"denominator {b} is not a unit modulo {ring.p}")
    return Residue(ring, a * inverse_mod(b, ring.modulus) % ring.modulus)


def res_add(a: Residue, b: Residue) -> Residue:
    return a + b


def res_sub(a: Residue, b: Residue) -> Residue:
    return a - b


def res_mul(a: Residue, b: Residue) -> Residue:
    return a * b


def res_inv(a: Residue) -> Residue:
    return Residue(a.ring, inverse_mod(a.value, a.ring.modulus))


def res_pow(a: Residue, e: int) -> Residue:
    if e < 0:
        return res_pow(res_inv(a), -e)
    return Residue(a.ring, pow(a.value, e, a.ring.modulus))


def divide_exact_by_p(x: Residue) -> Residue:
    """Return ``x / p`` in the ring one exponent lower.

    Raises :class:`ExactnessError` if ``x`` is not divisible by p; callers
    treat that as a failed congruence premise.
    """
    ring = x.ring
    if ring.E < 2:
        raise RingError("exact division by p needs exponent >= 2")
    if x.value % ring.p:
        raise ExactnessError(f"{x.value} is not divisible by {ring.p}")
    return Residue(ring.with_exponent(ring.E - 1), x.value // ring.p)


def p_adic_split(n: int, p: int) -> tuple[int, int]:
    """Write nonzero ``n`` as ``p**v * u`` with ``p`` not dividing ``u``."""
    if n == 0:
        raise ValueError("zero has no p-adic split")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


class ValuatedResidue:
    """``p**v * u`` with ``u`` a unit known modulo ``p**E``.

    Only multiplicative operations are offered; add after collapsing.
    """

    __slots__ = ("ring", "v", "u", "is_zero")

    def __init__(self, ring: PrimePowerRing, v: int, u: int, is_zero: bool = False):
        self.ring = ring
        if is_zero:
            self.v, self.u, self.is_zero = 0, 0, True
            return
        if v < 0:
            raise NegativeValuationError(f"valuation {v} < 0")
        u %= ring.modulus
        if u % ring.p == 0:
            raise ValueError(f"unit part {u} is divisible by {ring.p}")
        self.v, self.u, self.is_zero = v, u, False

    @classmethod
    def zero(cls, ring: PrimePowerRing) -> ValuatedResidue:
        return cls(ring, 0, 0, is_zero=True)

    @property
    def unit(self) -> Residue:
        return Residue(self.ring, self.u)

    def __eq__(self, other):
        if not isinstance(other, ValuatedResidue):
            return NotImplemented
        return (self.ring, self.v, self.u, self.is_zero) == (
            other.ring,
            other.v,
            other.u,
            other.is_zero,
        )

    def __hash__(self):
        return hash((self.ring, self.v, self.u, self.is_zero))

    def __repr__(self):
        if self.is_zero:
            return f"ValuatedResidue(0 in {self.ring.label()})"
        return f"ValuatedResidue(v={self.v}, u={self.u} mod {self.ring.label()})"


def val_from_integer(n: int, ring: PrimePowerRing) -> ValuatedResidue:
    if n == 0:
        return ValuatedResidue.zero(ring)
    v, u = p_adic_split(n, ring.p)
    return ValuatedResidue(ring, v, u)


def val_mul(x: ValuatedResidue, y: ValuatedResidue) -> ValuatedResidue:
    if x.is_zero or y.is_zero:
        return ValuatedResidue.zero(x.ring)
    return ValuatedResidue(x.ring, x.v + y.v, x.u * y.u)


def val_div(x: ValuatedResidue, y: ValuatedResidue) -> ValuatedResidue:
    if y.is_zero:
        raise ZeroDivisionError("division by an exact zero")
    if x.is_zero:
        return x
    v = x.v - y.v
    if v < 0:
        raise NegativeValuationError(f"quotient would have valuation {v}")
    return ValuatedResidue(x.ring, v, x.u * inverse_mod(y.u, x.ring.modulus))


def val_scale(x: ValuatedResidue, num: int, den: int) -> ValuatedResidue:
    """``x * num / den`` with the p-parts of ``num`` and ``den`` folded into v."""
    if den == 0:
        raise ZeroDivisionError("den must be nonzero")
    if x.is_zero or num == 0:
        return ValuatedResidue.zero(x.ring)
    p = x.ring.p
    vn, un = p_adic_split(num, p)
    vd, ud = p_adic_split(den, p)
    v = x.v + vn - vd
    if v < 0:
        raise NegativeValuationError(f"scaling by {num}/{den} gives valuation {v}")
    M = x.ring.modulus
    return ValuatedResidue(x.ring, v, x.u * un * inverse_mod(ud, M))


def val_collapse(x: ValuatedResidue) -> Residue:
    ring = x.ring
    if x.is_zero or x.v >= ring.E:
        return Residue(ring, 0)
    return Residue(ring, ring.p**x.v * x.u % ring.modulus)


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion: ``a**((p-1)/2) mod p``."""
    if p < 3 or p % 2 == 0:
        raise RingError(f"Legendre symbol needs an odd prime, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    if r == 1:
        return 1
    if r == p - 1:
        return -1
    raise RingError(f"Euler's criterion gave {r}; is {p} prime?")


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol via quadratic reciprocity (binary algorithm)."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def legendre_p_mod_3(p: int) -> int:
    """The symbol (p/3): +1 for p = 1 mod 3, -1 for p = 2 mod 3."""
    r = p % 3
    if r == 0:
        raise RingError(f"(p/3) is undefined for p = {p}")
    # Euler's criterion in the field with 3 elements: r**1 mod 3.
    return 1 if r == 1 else -1
