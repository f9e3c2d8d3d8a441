"""Dense subsets of F_p and the sumset/product-set algebra on them.

An FpSet is an immutable bit mask of length p. Sumsets are unions of cyclic
shifts of the cheaper operand's mask; product and quotient sets move to
discrete-log coordinates, where they become sumsets over Z_{p-1}, with zero
handled combinatorially. Canonical element storage is [0, p-1]; centered
representatives exist only for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from fplab import _kernels
from fplab.errors import EmptySet, FieldMismatch, FormatError, ZeroDilation
from fplab.field import PrimeField, make_field


class FpSet:
    """Immutable subset of F_p backed by a dense bit mask."""

    __slots__ = ("field", "mask", "_size")

    def __init__(self, field: PrimeField, mask: int):
        self.field = field
        self.mask = mask
        self._size = mask.bit_count()

    @classmethod
    def from_iterable(cls, field: PrimeField, elems: Iterable[int]) -> "FpSet":
        """Build from integers, reduced mod p (so centered inputs are accepted)."""
        mask = 0
        p = field.p
        for e in elems:
            mask |= 1 << (int(e) % p)
        return cls(field, mask)

    @classmethod
    def empty(cls, field: PrimeField) -> "FpSet":
        return cls(field, 0)

    @classmethod
    def full(cls, field: PrimeField) -> "FpSet":
        return cls(field, (1 << field.p) - 1)

    def __len__(self) -> int:
        return self._size

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> (int(x) % self.field.p)) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FpSet)
            and other.field.p == self.field.p
            and other.mask == self.mask
        )

    def __hash__(self) -> int:
        return hash((self.field.p, self.mask))

    def __repr__(self) -> str:
        if len(self) <= 12:
            return f"FpSet(p={self.field.p}, {{{', '.join(map(str, self.elements()))}}})"
        return f"FpSet(p={self.field.p}, size={len(self)})"

    @property
    def is_empty(self) -> bool:
        return self.mask == 0

    def elements(self) -> list[int]:
        """Members as ints in [0, p), ascending."""
        return _kernels.mask_to_indices(self.mask, self.field.p).tolist()

    def elements_array(self) -> np.ndarray:
        return _kernels.mask_to_indices(self.mask, self.field.p)

    def centered_elements(self) -> list[int]:
        """Members as representatives in (-p/2, p/2], ascending. Display only."""
        return sorted(self.field.centered(e) for e in self.elements())

    def union(self, other: "FpSet") -> "FpSet":
        _same_field(self, other)
        return FpSet(self.field, self.mask | other.mask)

    def intersect(self, other: "FpSet") -> "FpSet":
        _same_field(self, other)
        return FpSet(self.field, self.mask & other.mask)

    def minus(self, other: "FpSet") -> "FpSet":
        _same_field(self, other)
        return FpSet(self.field, self.mask & ~other.mask)

    def subset_of(self, other: "FpSet") -> bool:
        _same_field(self, other)
        return (self.mask & ~other.mask) == 0

    def without_zero(self) -> "FpSet":
        return FpSet(self.field, self.mask & ~1)

    # Operator sugar matching the written algebra: A + B, A - B, A * B, A / B.
    def __add__(self, other: "FpSet") -> "FpSet":
        return sumset(self, other)

    def __sub__(self, other: "FpSet") -> "FpSet":
        return difference_set(self, other)

    def __mul__(self, other: "FpSet") -> "FpSet":
        return product_set(self, other)

    def __truediv__(self, other: "FpSet") -> "FpSet":
        return quotient_set(self, other)


@dataclass(frozen=True)
class DoublingStats:
    """Exact doubling ratios: K = |A+A|/|A|, L = |B+B|/|B| when a pair is given."""

    K: Fraction
    L: Fraction | None = None


def _same_field(a: FpSet, b: FpSet) -> PrimeField:
    if a.field.p != b.field.p:
        raise FieldMismatch(f"operands over F_{a.field.p} and F_{b.field.p}")
    return a.field


def sumset(a: FpSet, b: FpSet) -> FpSet:
    """A + B = {x + y : x in A, y in B}; shifts the larger mask by the smaller set."""
    field = _same_field(a, b)
    if a.is_empty or b.is_empty:
        return FpSet.empty(field)
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    mask = _kernels.shift_or_union(big.mask, small.elements_array(), field.p)
    return FpSet(field, mask)


def negate(a: FpSet) -> FpSet:
    """-A = {-x mod p}."""
    return FpSet(a.field, _kernels.remap_affine(a.mask, a.field.p - 1, 0, a.field.p))


def difference_set(a: FpSet, b: FpSet) -> FpSet:
    """A - B = A + (-B)."""
    return sumset(a, negate(b))


def translate(a: FpSet, t: int) -> FpSet:
    """A + t elementwise."""
    return FpSet(a.field, _kernels.remap_affine(a.mask, 1, t % a.field.p, a.field.p))


def dilate(a: FpSet, lam: int) -> FpSet:
    """lam . A = {lam*x mod p}; lam = 0 mod p is rejected."""
    p = a.field.p
    lam %= p
    if lam == 0:
        raise ZeroDilation("dilation coefficient is 0 mod p")
    return FpSet(a.field, _kernels.remap_affine(a.mask, lam, 0, p))


def _log_mask(a: FpSet) -> int:
    """Bit mask over Z_{p-1} of dlog(x) for nonzero x in A."""
    return _kernels.remap_table(a.mask & ~1, a.field.dlog, a.field.p - 1)


def _from_log_mask(field: PrimeField, log_mask: int) -> int:
    return _kernels.remap_table(log_mask, field.exp, field.p)


def product_set(a: FpSet, b: FpSet) -> FpSet:
    """A * B = {x*y}; a sumset in log coordinates, zero handled separately."""
    field = _same_field(a, b)
    if a.is_empty or b.is_empty:
        return FpSet.empty(field)
    la, lb = _log_mask(a), _log_mask(b)
    n = field.p - 1
    small, big = (la, lb) if la.bit_count() <= lb.bit_count() else (lb, la)
    out_log = _kernels.shift_or_union(big, _kernels.mask_to_indices(small, n), n)
    mask = _from_log_mask(field, out_log)
    if (0 in a and not b.is_empty) or (0 in b and not a.is_empty):
        mask |= 1
    return FpSet(field, mask)


def quotient_set(a: FpSet, b: FpSet) -> FpSet:
    """A / B = {x/y : y != 0}; (A / {0} is empty by convention)."""
    field = _same_field(a, b)
    lb = _log_mask(b)
    if lb == 0:  # B has no invertible elements
        return FpSet.empty(field)
    n = field.p - 1
    inv_lb = _kernels.remap_affine(lb, n - 1, 0, n)  # negated logs = inverses
    la = _log_mask(a)
    small, big = (la, inv_lb) if la.bit_count() <= inv_lb.bit_count() else (inv_lb, la)
    out_log = _kernels.shift_or_union(big, _kernels.mask_to_indices(small, n), n)
    mask = _from_log_mask(field, out_log)
    if 0 in a:
        mask |= 1
    return FpSet(field, mask)


def fold_sum(a: FpSet, k: int) -> FpSet:
    """kA = A + ... + A (k summands, k >= 1)."""
    if k < 1:
        raise ValueError("fold count must be >= 1")
    out = a
    for _ in range(k - 1):
        out = sumset(out, a)
    return out


def fold_prod(a: FpSet, k: int) -> FpSet:
    """A^k = A * ... * A (k factors, k >= 1)."""
    if k < 1:
        raise ValueError("fold count must be >= 1")
    out = a
    for _ in range(k - 1):
        out = product_set(out, a)
    return out


def dilated_sumset(a: FpSet, lams: Iterable[int]) -> tuple[FpSet, Fraction]:
    """lam_1.A + ... + lam_r.A and the exact growth ratio |result|/|A|."""
    if a.is_empty:
        raise EmptySet("dilated sumset of the empty set has no growth ratio")
    out: FpSet | None = None
    for lam in lams:
        term = dilate(a, lam)
        out = term if out is None else sumset(out, term)
    if out is None:
        raise ValueError("need at least one dilation coefficient")
    return out, Fraction(len(out), len(a))


def doubling(a: FpSet, b: FpSet | None = None) -> DoublingStats:
    """Exact K = |A+A|/|A| (and L = |B+B|/|B| when B is given)."""
    if a.is_empty or (b is not None and b.is_empty):
        raise EmptySet("doubling ratio needs nonempty sets")
    k = Fraction(len(sumset(a, a)), len(a))
    l = Fraction(len(sumset(b, b)), len(b)) if b is not None else None
    return DoublingStats(K=k, L=l)


def read_set_file(path: str | Path, field: PrimeField | None = None) -> FpSet:
    """Read the set file format: line 1 'p <modulus>', line 2 the elements.

    Elements are whitespace-separated decimals in [0, p-1]; duplicates are
    rejected. A missing or blank second line is the empty set.
    """
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].split() or lines[0].split()[0] != "p":
        raise FormatError(f"{path}: first line must be 'p <modulus>'")
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError(f"{path}: first line must be 'p <modulus>'")
    try:
        p = int(head[1])
    except ValueError as exc:
        raise FormatError(f"{path}: modulus {head[1]!r} is not an integer") from exc
    if field is None:
        field = make_field(p)
    elif field.p != p:
        raise FieldMismatch(f"{path}: file modulus {p} != field modulus {field.p}")
    toks = lines[1].split() if len(lines) > 1 else []
    seen: set[int] = set()
    for t in toks:
        try:
            e = int(t)
        except ValueError as exc:
            raise FormatError(f"{path}: element {t!r} is not an integer") from exc
        if not 0 <= e < p:
            raise FormatError(f"{path}: element {e} outside [0, {p - 1}]")
        if e in seen:
            raise FormatError(f"{path}: duplicate element {e}")
        seen.add(e)
    return FpSet.from_iterable(field, seen)


def write_set_file(path: str | Path, a: FpSet) -> None:
    body = " ".join(map(str, a.elements()))
    Path(path).write_text(f"p {a.field.p}\n{body}\n")
