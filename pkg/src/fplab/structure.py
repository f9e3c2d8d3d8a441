"""Deterministic structure extraction: popular-sum components, greedy
well-spread subsets with k-fold sumset certificates, and maximal dilation-
stable cores with exhaustive inclusion verification.

Every extractor is a fixed rule (no randomness), so outputs are reproducible
set-for-set; certificates are recomputed from scratch rather than trusted
from the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from fplab.errors import BadParams, EmptySet
from fplab.setalg import (
    FpSet,
    difference_set,
    dilate,
    fold_sum,
    sumset,
)
from fplab.spectral import additive_energy


@dataclass(frozen=True)
class BsgResult:
    """Popular-sum component extraction record."""

    subset: FpSet
    energy: int
    k_in: Fraction  # |A|^3 / E+(A)
    threshold: Fraction  # popularity cutoff |A| / (2 K)
    size_ratio: Fraction  # |A'| / |A|
    doubling_out: Fraction  # |A' - A'| / |A'|


def bsg_extract(a: FpSet) -> BsgResult:
    """Deterministic rule: keep sums s with r_{A+A}(s) >= |A|/(2K), K = |A|^3/E+(A);
    join a, b in A when a + b is popular; return the largest connected component
    (ties broken toward the one containing the smallest element)."""
    if a.is_empty:
        raise EmptySet("bsg_extract needs a nonempty set")
    field = a.field
    p = field.p
    energy = additive_energy(a, a).direct_count
    n = len(a)
    k_in = Fraction(n**3, energy)
    threshold = Fraction(n) / (2 * k_in)
    elems = a.elements_array()
    ind = np.zeros(p, dtype=np.int64)
    ind[elems] = 1
    r = np.convolve(ind, ind)
    counts = r[:p].copy()
    counts[: p - 1] += r[p:]
    # exact comparison r(s) >= num/den without leaving integers
    popular = counts * threshold.denominator >= threshold.numerator
    adj = popular[(elems[:, None] + elems[None, :]) % p]
    comp = _components(adj)
    sizes = np.bincount(comp)
    best = min(
        range(len(sizes)),
        key=lambda c: (-int(sizes[c]), int(elems[comp == c].min())),
    )
    subset = FpSet.from_iterable(field, elems[comp == best].tolist())
    diff = difference_set(subset, subset)
    return BsgResult(
        subset=subset,
        energy=energy,
        k_in=k_in,
        threshold=threshold,
        size_ratio=Fraction(len(subset), n),
        doubling_out=Fraction(len(diff), len(subset)),
    )


def _components(adj: np.ndarray) -> np.ndarray:
    """Connected-component labels for a boolean adjacency matrix (BFS)."""
    n = len(adj)
    label = np.full(n, -1, dtype=np.int64)
    cur = 0
    for start in range(n):
        if label[start] >= 0:
            continue
        frontier = np.zeros(n, dtype=bool)
        frontier[start] = True
        label[start] = cur
        while frontier.any():
            reach = adj[frontier].any(axis=0) & (label < 0)
            label[reach] = cur
            frontier = reach
        cur += 1
    return label


@dataclass(frozen=True)
class SandersResult:
    """Greedy well-spread subset X of A - A with its k-fold sumset certificate."""

    x_set: FpSet
    k: int
    verified: bool  # kX inside 2A - 2A, recomputed from scratch
    size_ratio: Fraction  # |X| / |A|
    floor_value: float  # exp(-k^2 log2^2 K) reference floor, reported only


def sanders_greedy(a: FpSet, k: int) -> tuple[FpSet, SandersResult]:
    """Scan A - A by centered magnitude (positive representative first) and keep
    every x whose addition leaves the k-fold sumset of the kept set inside
    T = 2A - 2A. Incremental i-fold sumsets make each test one pass of shifts.
    """
    if a.is_empty:
        raise EmptySet("sanders_greedy needs a nonempty set")
    if k < 1:
        raise BadParams("fold count k must be >= 1")
    field = a.field
    p = field.p
    two_a = sumset(a, a)
    target = difference_set(two_a, two_a)
    tmask = target.mask
    diff = difference_set(a, a)
    order = sorted(diff.elements(), key=lambda x: (min(x, p - x), x > (p - 1) // 2))
    # folds[i] = mask of the i-fold sumset of the kept set; folds[0] = {0}
    folds: list[int] = [1] + [0] * k
    kept: list[int] = []
    for x in order:
        cand = list(folds)
        ok = True
        for i in range(1, k + 1):
            m = 0
            shift_val = 0
            for j in range(i + 1):
                if j:
                    shift_val = (shift_val + x) % p
                    src = folds[i - j]
                else:
                    src = folds[i]
                if src:
                    m |= ((src << shift_val) | (src >> (p - shift_val))) if shift_val else src
            m &= (1 << p) - 1
            if i == k and (m & ~tmask) != 0:
                ok = False
                break
            cand[i] = m
        if ok:
            folds = cand
            kept.append(x)
    x_set = FpSet.from_iterable(field, kept)
    verified = fold_sum(x_set, k).subset_of(target) if not x_set.is_empty else True
    k_doubling = Fraction(len(two_a), len(a))
    logk = math.log2(float(k_doubling)) if k_doubling > 1 else 0.0
    floor = math.exp(-(k**2) * logk**2)
    result = SandersResult(
        x_set=x_set,
        k=k,
        verified=verified,
        size_ratio=Fraction(len(x_set), len(a)),
        floor_value=floor,
    )
    return x_set, result


def extract_z(x_set: FpSet, d: int, l: int) -> FpSet:
    """Largest Z with d^j Z inside X - X for every j < l:
    Z = intersection of d^{-j}(X - X), j = 0..l-1."""
    _check_dl(x_set.field.p, d, l)
    diff = difference_set(x_set, x_set)
    inv_d = x_set.field.inv(d % x_set.field.p)
    z = diff
    scale = 1
    for _ in range(1, l):
        scale = (scale * inv_d) % x_set.field.p
        z = z.intersect(dilate(diff, scale))
    return z


def _check_dl(p: int, d: int, l: int) -> None:
    if d < 2 or l < 1:
        raise BadParams(f"need d >= 2 and l >= 1, got d={d}, l={l}")
    if d % p == 0:
        raise BadParams("d is divisible by p; dilation by d degenerates")


@dataclass(frozen=True)
class InclusionCert:
    """Outcome of the exhaustive [1, d^l] dilation-inclusion check."""

    z_set: FpSet
    d: int
    l: int
    verified: bool
    witness: tuple[int, int, int] | None  # (m, z, m*z mod p) for the first failure


def verify_inclusion(z_set: FpSet, d: int, l: int, target: FpSet) -> InclusionCert:
    """Check m*z in target for every m in [1, d^l] and z in Z, smallest m first;
    the witness is the first (m, z, m*z) violation in that scan order."""
    _check_dl(z_set.field.p, d, l)
    if z_set.field.p != target.field.p:
        raise BadParams("Z and target over different fields")
    p = z_set.field.p
    if z_set.is_empty:
        return InclusionCert(z_set, d, l, True, None)
    for m in range(1, d**l + 1):
        mm = m % p
        scaled = dilate(z_set, mm) if mm else FpSet.from_iterable(z_set.field, [0])
        bad = scaled.minus(target)
        if not bad.is_empty:
            badmask = bad.mask
            for z in z_set.elements():
                if (badmask >> ((mm * z) % p)) & 1:
                    return InclusionCert(z_set, d, l, False, (m, z, (mm * z) % p))
    return InclusionCert(z_set, d, l, True, None)


def structure_pipeline(a: FpSet, d: int, l: int) -> dict:
    """Greedy X from A with k = 2(l(d-1)+1), then Z = extract_z(X, d, l), then the
    exhaustive inclusion check of [1, d^l] Z against 2A - 2A."""
    _check_dl(a.field.p, d, l)
    k = 2 * (l * (d - 1) + 1)
    x_set, sanders = sanders_greedy(a, k)
    z_set = extract_z(x_set, d, l) if not x_set.is_empty else FpSet.empty(a.field)
    two_a = sumset(a, a)
    target = difference_set(two_a, two_a)
    cert = verify_inclusion(z_set, d, l, target)
    return {
        "k": k,
        "k_alt_convention": 2 * (d * (l - 1) + 1),
        "x_set": x_set,
        "sanders": sanders,
        "z_set": z_set,
        "cert": cert,
    }
