"""Prime fields with precomputed discrete-log tables and multiplicative characters.

A PrimeField carries the full exp/dlog tables for its least primitive root, so
character evaluation is a table lookup and product-set algebra can move between
value and log coordinates in O(p). The table bound (default 2^24) caps memory
at roughly 16 bytes per element.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import gcd

import numpy as np

from fplab import _kernels
from fplab.errors import NotPrime, TooLarge, TrivialCharacter

DEFAULT_MAX_P = 1 << 24


def is_prime(n: int) -> bool:
    """Trial division; admissible moduli are small enough that this is instant."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def least_primitive_root(p: int) -> int:
    """Smallest g generating F_p^*, found by ascending trial against p-1's factors."""
    if p == 3:
        return 2
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise NotPrime(f"no primitive root mod {p}; modulus is not prime")


@dataclass(frozen=True, eq=False)
class PrimeField:
    """F_p with generator g and full exp/dlog tables.

    exp[t] = g^t for t in [0, p-1); dlog[x] inverts it, with dlog[0] = -1 as a
    sentinel. Instances are immutable; construct through make_field, which
    validates. Equality is by modulus, since g is determined as the least root.
    """

    p: int
    g: int
    exp: np.ndarray = dc_field(repr=False)
    dlog: np.ndarray = dc_field(repr=False)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def inv(self, x: int) -> int:
        """Multiplicative inverse of x != 0."""
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    def centered(self, x: int) -> int:
        """Representative in (-p/2, p/2]; a display convention only."""
        x %= self.p
        return x if x <= (self.p - 1) // 2 else x - self.p

    @cached_property
    def roots_of_unity(self) -> np.ndarray:
        """e(x) = exp(2 pi i x / p) for x in [0, p), used by the direct transform."""
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)


def make_field(p: int, max_p: int = DEFAULT_MAX_P) -> PrimeField:
    """Validated field constructor: p an odd prime, table bound enforced."""
    if not isinstance(p, int) or not is_prime(p) or p == 2:
        raise NotPrime(f"modulus {p!r} is not an odd prime")
    if p > max_p:
        raise TooLarge(f"p = {p} exceeds the table bound {max_p}")
    g = least_primitive_root(p)
    exp, dlog = _kernels.build_exp_dlog(p, g)
    return PrimeField(p=p, g=g, exp=exp, dlog=dlog)


@dataclass(frozen=True)
class UnitValue:
    """Exact character value: either zero or the root of unity e^{2 pi i index/modulus}."""

    modulus: int
    index: int | None  # None encodes the zero value chi(0)

    @classmethod
    def zero(cls, modulus: int) -> "UnitValue":
        return cls(modulus, None)

    @property
    def is_zero(self) -> bool:
        return self.index is None

    def __mul__(self, other: "UnitValue") -> "UnitValue":
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli")
        if self.index is None or other.index is None:
            return UnitValue.zero(self.modulus)
        return UnitValue(self.modulus, (self.index + other.index) % self.modulus)

    def conjugate(self) -> "UnitValue":
        if self.index is None:
            return self
        return UnitValue(self.modulus, (-self.index) % self.modulus)

    def to_complex(self) -> complex:
        if self.index is None:
            return 0j
        return complex(np.exp(2j * np.pi * self.index / self.modulus))

    def as_int(self) -> int:
        """Exact value for indices 0 and modulus/2; zero maps to 0."""
        if self.index is None:
            return 0
        if self.index == 0:
            return 1
        if 2 * self.index == self.modulus:
            return -1
        raise ValueError(f"index {self.index} mod {self.modulus} is not +-1")


@dataclass(frozen=True)
class Character:
    """Multiplicative character chi_k(x) = e^{2 pi i k dlog(x)/(p-1)}, chi(0) = 0.

    k is stored reduced mod p-1 and never 0, so the character is nontrivial.
    order = (p-1)/gcd(k, p-1); order 2 is the quadratic character.
    """

    field: PrimeField
    k: int

    @property
    def order(self) -> int:
        n = self.field.p - 1
        return n // gcd(self.k, n)

    @property
    def is_quadratic(self) -> bool:
        return 2 * self.k == self.field.p - 1

    def conjugate(self) -> "Character":
        return Character(self.field, (self.field.p - 1 - self.k) % (self.field.p - 1))

    @cached_property
    def index_table(self) -> np.ndarray:
        """k*dlog(x) mod p-1 per x, with -1 at x = 0."""
        n = self.field.p - 1
        idx = (self.k * self.field.dlog) % n
        idx[0] = -1
        return idx

    @cached_property
    def value_table(self) -> np.ndarray:
        """chi(x) as complex128 per x in [0, p); exact-int fast path for order 2."""
        if self.order <= 2:
            return self.sign_table.astype(np.complex128)
        n = self.field.p - 1
        roots = np.exp(2j * np.pi * np.arange(n) / n)
        vals = roots[self.index_table]
        vals[0] = 0.0
        return vals

    @cached_property
    def sign_table(self) -> np.ndarray:
        """For order-2 characters: chi(x) in {-1, 0, +1} as int64."""
        if self.order != 2:
            raise ValueError("sign_table is defined for order-2 characters only")
        vals = np.where(self.field.dlog % 2 == 0, 1, -1).astype(np.int64)
        vals[0] = 0
        return vals


def character(field: PrimeField, k: int) -> Character:
    """Character with exponent index k, reduced mod p-1; k = 0 mod p-1 is rejected."""
    k %= field.p - 1
    if k == 0:
        raise TrivialCharacter(f"k = 0 mod {field.p - 1} names the trivial character")
    return Character(field, k)


def legendre_character(field: PrimeField) -> Character:
    """The quadratic character (Legendre symbol) chi_{(p-1)/2}."""
    return character(field, (field.p - 1) // 2)


def char_eval(chi: Character, x: int) -> UnitValue:
    """chi(x) as an exact root-of-unity index; chi(0) = 0."""
    p = chi.field.p
    x %= p
    if x == 0:
        return UnitValue.zero(p - 1)
    return UnitValue(p - 1, int(chi.index_table[x]))
