"""Points and planes in F_p^3: incidence counts, collinearity, and the
skew product family whose incidences count solutions of (s-a)b = (s'-a')b'.

Planes are stored canonically: coefficients (a, b, c, d) for ax + by + cz = d
are scaled so the first nonzero of (a, b, c) is 1, which makes scalar-multiple
duplicates visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from pathlib import Path

import numpy as np

from fplab.errors import EmptySet, FieldMismatch, FormatError
from fplab.field import PrimeField, make_field
from fplab.report import Report, encode_quantity
from fplab.setalg import FpSet, sumset


@dataclass(frozen=True)
class PointSet3:
    """Distinct points of F_p^3 as an (n, 3) int64 array."""

    field: PrimeField
    coords: np.ndarray

    def __post_init__(self) -> None:
        c = np.asarray(self.coords, dtype=np.int64).reshape(-1, 3)
        if c.size and (c.min() < 0 or c.max() >= self.field.p):
            raise ValueError("point coordinates must lie in [0, p)")
        if len(np.unique(c, axis=0)) != len(c):
            raise ValueError("duplicate points")
        object.__setattr__(self, "coords", c)

    def __len__(self) -> int:
        return len(self.coords)

    @classmethod
    def from_tuples(cls, field: PrimeField, pts) -> "PointSet3":
        return cls(field, np.array(sorted(set(map(tuple, pts))), dtype=np.int64).reshape(-1, 3))


@dataclass(frozen=True)
class PlaneSet:
    """Distinct planes ax + by + cz = d, canonicalized; (a,b,c) != (0,0,0)."""

    field: PrimeField
    coeffs: np.ndarray  # (m, 4) rows (a, b, c, d), canonical

    def __post_init__(self) -> None:
        c = np.asarray(self.coeffs, dtype=np.int64).reshape(-1, 4)
        object.__setattr__(self, "coeffs", c)

    def __len__(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_tuples(cls, field: PrimeField, planes, dedupe: bool = False) -> "PlaneSet":
        rows = [canonical_plane(field, *pl) for pl in planes]
        uniq = sorted(set(rows))
        if not dedupe and len(uniq) != len(rows):
            raise ValueError("duplicate planes after canonical scaling")
        return cls(field, np.array(uniq, dtype=np.int64).reshape(-1, 4))


def canonical_plane(field: PrimeField, a: int, b: int, c: int, d: int) -> tuple[int, int, int, int]:
    p = field.p
    a, b, c, d = a % p, b % p, c % p, d % p
    for lead in (a, b, c):
        if lead:
            inv = field.inv(lead)
            return (a * inv % p, b * inv % p, c * inv % p, d * inv % p)
    raise ValueError("plane normal vector is zero")


def count_incidences(points: PointSet3, planes: PlaneSet) -> int:
    """#{(q, pi) : q on pi}, evaluated in blocks of plane equations."""
    if points.field.p != planes.field.p:
        raise FieldMismatch("points and planes over different fields")
    if len(points) == 0 or len(planes) == 0:
        return 0
    p = points.field.p
    pts = points.coords
    total = 0
    chunk = max(1, (1 << 22) // max(1, len(pts)))
    for lo in range(0, len(planes), chunk):
        pl = planes.coeffs[lo : lo + chunk]
        lhs = (pts @ pl[:, :3].T) % p
        total += int(np.count_nonzero(lhs == pl[None, :, 3] % p))
    return total


def max_collinear(points: PointSet3) -> int:
    """Largest number of the points on one line, by exhaustive pair grouping.

    Every unordered pair contributes one canonical (direction, base) key; a
    line through m points shows up in exactly m(m-1)/2 pairs.
    """
    n = len(points)
    if n == 0:
        raise EmptySet("max_collinear needs at least one point")
    if n == 1:
        return 1
    p = points.field.p
    field = points.field
    pts = points.coords
    lines: dict[tuple, int] = {}
    for i in range(n - 1):
        for j in range(i + 1, n):
            d = (pts[j] - pts[i]) % p
            lead = 0
            while d[lead] == 0:
                lead += 1
            d = (d * field.inv(int(d[lead]))) % p
            base = (pts[i] - int(pts[i][lead]) * d) % p
            key = (d[0], d[1], d[2], base[0], base[1], base[2])
            lines[key] = lines.get(key, 0) + 1
    best_pairs = max(lines.values())
    m = (1 + isqrt(1 + 8 * best_pairs)) // 2
    if m * (m - 1) // 2 != best_pairs:
        raise AssertionError("pair count is not a triangular number; line keying is broken")
    return m


def rudnev_gap(points: PointSet3, planes: PlaneSet) -> Report:
    """|I - |P||Pi|/p| against sqrt(|P|)|Pi| + k|Pi|, k = max points on a line."""
    if points.field.p != planes.field.p:
        raise FieldMismatch("points and planes over different fields")
    p = points.field.p
    n, m = len(points), len(planes)
    inc = count_incidences(points, planes)
    expected = Fraction(n * m, p)
    lhs_exact = abs(Fraction(inc) - expected)
    k = max_collinear(points) if n else 0
    rhs = (n**0.5) * m + k * m
    ratio = float(lhs_exact) / rhs if rhs > 0 else 0.0
    notes = []
    if n > m:
        notes.append("hypothesis |P| <= |Pi| violated; the bound is not asserted here")
    return Report(
        kind="incidence",
        inputs={"p": p, "n_points": n, "n_planes": m},
        quantities={
            "incidences": inc,
            "expected": float(expected),
            "expected_exact": encode_quantity(expected),
            "lhs": float(lhs_exact),
            "lhs_exact": encode_quantity(lhs_exact),
            "rhs": rhs,
            "ratio": ratio,
            "max_collinear": k,
        },
        flags={"hypothesis_ok": n <= m},
        notes=notes,
    )


def skew_family(a: FpSet, b: FpSet) -> tuple[PointSet3, PlaneSet]:
    """The product-structure family: points {(s, b', a'b')}, planes (x-a)b = s'y - z,
    over a, a' in A\\{0}, b, b' in B\\{0}, s, s' in (A\\{0}) + (A\\{0}).

    Zeros are stripped so the parameterizations are injective, giving
    |P| = |Pi| = |A*||B*||A*+A*| exactly; every incidence then matches one
    solution of (s-a)b = (s'-a')b' and vice versa.
    """
    field = a.field
    if field.p != b.field.p:
        raise FieldMismatch("A and B over different fields")
    astar = a.without_zero()
    bstar = b.without_zero()
    if astar.is_empty or bstar.is_empty:
        raise EmptySet("skew family needs nonzero elements in A and B")
    s = sumset(astar, astar)
    p = field.p
    ea = astar.elements_array()
    eb = bstar.elements_array()
    es = s.elements_array()
    ab = (ea[:, None] * eb[None, :]) % p  # a'b' grid
    shape = (len(es), len(ea), len(eb))
    grid_s = np.broadcast_to(es[:, None, None], shape)
    grid_b = np.broadcast_to(eb[None, None, :], shape)
    grid_ab = np.broadcast_to(ab[None, :, :], shape)
    ones = np.ones(shape, dtype=np.int64)
    pts = np.stack([grid_s, grid_b, grid_ab], axis=-1).reshape(-1, 3)
    planes = np.stack([grid_b, (-grid_s) % p, ones, grid_ab], axis=-1).reshape(-1, 4)
    point_set = PointSet3.from_tuples(field, map(tuple, pts.tolist()))
    plane_set = PlaneSet.from_tuples(field, map(tuple, planes.tolist()))
    return point_set, plane_set


def skew_solution_count(a: FpSet, b: FpSet) -> int:
    """#{(s,a1,b1,s',a2,b2) : (s-a1)b1 = (s'-a2)b2} over the skew_family index sets,
    grouped by the common product value (same technique as count_system)."""
    field = a.field
    astar = a.without_zero()
    bstar = b.without_zero()
    if astar.is_empty or bstar.is_empty:
        raise EmptySet("skew family needs nonzero elements in A and B")
    s = sumset(astar, astar)
    p = field.p
    ea = astar.elements_array()
    eb = bstar.elements_array()
    es = s.elements_array()
    vals = (((es[:, None] - ea[None, :]) % p)[:, :, None] * eb[None, None, :]) % p
    m = np.bincount(vals.reshape(-1), minlength=p).astype(np.int64)
    return int(np.dot(m, m))


def random_point_set(field: PrimeField, n: int, rng: np.random.Generator) -> PointSet3:
    """n distinct uniform points of F_p^3 (rejection sampling)."""
    p = field.p
    if n > p**3:
        raise ValueError("more points requested than the space holds")
    seen: set[tuple[int, int, int]] = set()
    while len(seen) < n:
        draw = rng.integers(0, p, size=(n - len(seen), 3))
        for row in draw:
            if len(seen) < n:
                seen.add((int(row[0]), int(row[1]), int(row[2])))
    return PointSet3.from_tuples(field, seen)


def random_plane_set(field: PrimeField, m: int, rng: np.random.Generator) -> PlaneSet:
    """m distinct uniform planes (canonicalized before deduplication)."""
    p = field.p
    if m > p * p * p + p * p + p:
        raise ValueError("more planes requested than exist")
    seen: set[tuple[int, int, int, int]] = set()
    while len(seen) < m:
        draw = rng.integers(0, p, size=(m - len(seen) + 4, 4))
        for row in draw:
            if len(seen) >= m:
                break
            if row[0] == 0 and row[1] == 0 and row[2] == 0:
                continue
            seen.add(canonical_plane(field, int(row[0]), int(row[1]), int(row[2]), int(row[3])))
    return PlaneSet.from_tuples(field, seen)


def read_point_plane_file(path: str | Path) -> tuple[PointSet3, PlaneSet]:
    """Format: first line 'p <modulus>', then 'pt x y z' and 'pl a b c d' lines."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0].split()[0] != "p" or len(lines[0].split()) != 2:
        raise FormatError(f"{path}: first line must be 'p <modulus>'")
    field = make_field(int(lines[0].split()[1]))
    pts, pls = [], []
    for ln in lines[1:]:
        toks = ln.split()
        if toks[0] == "pt" and len(toks) == 4:
            pts.append(tuple(int(t) % field.p for t in toks[1:]))
        elif toks[0] == "pl" and len(toks) == 5:
            pls.append(tuple(int(t) % field.p for t in toks[1:]))
        else:
            raise FormatError(f"{path}: bad line {ln!r}")
    return PointSet3.from_tuples(field, pts), PlaneSet.from_tuples(field, pls)


def write_point_plane_file(path: str | Path, points: PointSet3, planes: PlaneSet) -> None:
    out = [f"p {points.field.p}"]
    out += [f"pt {x} {y} {z}" for x, y, z in points.coords]
    out += [f"pl {a} {b} {c} {d}" for a, b, c, d in planes.coeffs]
    Path(path).write_text("\n".join(out) + "\n")
