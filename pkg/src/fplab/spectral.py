"""Direct Fourier analysis on Z_p and the exact counting operations built on it.

The transform is the direct O(n^2) evaluation of f_hat(xi) = sum_x f(x) e(-xi x),
e(x) = exp(2 pi i x / p), done as chunked root-table matmuls; no fast transform.
Counts (energies, system solutions, dilate-equation solutions) are computed
exactly in integers, and every spectral value that stands for an integer count
must land within 0.5 of it: energies report the agreement flag, bare-integer
operations raise SpectralMismatch on violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from fplab.errors import SpectralMismatch, ZeroInA
from fplab.field import PrimeField
from fplab.setalg import FpSet, _same_field

_CHUNK = 512  # transform rows per matmul block; bounds scratch memory at ~8 MB


@lru_cache(maxsize=64)
def _roots(n: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def dft_direct(values: np.ndarray) -> np.ndarray:
    """sum_x values[x] * e(-xi*x/n) per xi, by direct evaluation over Z_n."""
    v = np.asarray(values, dtype=np.complex128)
    n = len(v)
    roots = _roots(n).conj()
    x = np.arange(n, dtype=np.int64)
    out = np.empty(n, dtype=np.complex128)
    for lo in range(0, n, _CHUNK):
        xi = np.arange(lo, min(lo + _CHUNK, n), dtype=np.int64)
        out[lo : lo + _CHUNK] = roots[(xi[:, None] * x[None, :]) % n] @ v
    return out


def cyclic_convolve(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(x) = sum_y f(y) g(x - y) over Z_n, by direct linear convolution.

    Integer inputs stay exact (int64 accumulation); this is deliberately not
    implemented through the transform, so the convolution-theorem check is a
    real cross-check of two routes.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    n = len(f)
    if len(g) != n:
        raise ValueError("convolution operands must share a length")
    if n == 1:
        return f * g
    lin = np.convolve(f, g)
    out = lin[:n].copy()
    out[: n - 1] += lin[n:]
    return out


@dataclass
class DenseFunction:
    """A function F_p -> C stored densely; indicator functions stay integer-typed."""

    field: PrimeField
    values: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values)
        if len(self.values) != self.field.p:
            raise ValueError("dense function must have exactly p values")

    @classmethod
    def indicator(cls, a: FpSet) -> "DenseFunction":
        vals = np.zeros(a.field.p, dtype=np.int64)
        vals[a.elements_array()] = 1
        return cls(a.field, vals)

    def dft(self) -> "DenseFunction":
        return DenseFunction(self.field, dft_direct(self.values))

    def convolve(self, other: "DenseFunction") -> "DenseFunction":
        if other.field.p != self.field.p:
            raise ValueError("mixed moduli")
        return DenseFunction(self.field, cyclic_convolve(self.values, other.values))


@dataclass(frozen=True)
class EnergyReport:
    """Exact count, its spectral evaluation, and the within-0.5 rounding verdict."""

    direct_count: int
    spectral_value: float
    agreement: bool


def additive_energy(a: FpSet, b: FpSet) -> EnergyReport:
    """E+(A,B) = #{a1 + b1 = a2 + b2}, exact, with the Plancherel-side check."""
    field = _same_field(a, b)
    ra = _indicator_array(a)
    rb = _indicator_array(b)
    r = cyclic_convolve(ra, rb)
    direct = int(np.dot(r, r))
    fa2 = _abs2(dft_direct(ra))
    fb2 = _abs2(dft_direct(rb))
    spectral = float(np.dot(fa2, fb2) / field.p)
    return EnergyReport(direct, spectral, abs(direct - spectral) < 0.5)


def mult_energy(a: FpSet, b: FpSet) -> EnergyReport:
    """Ex(A,B) = #{a1 b1 = a2 b2}, zeros included, exact.

    Nonzero products become additive structure in log coordinates (a cyclic
    convolution over Z_{p-1}); pairs with product zero are counted directly.
    The spectral side is the transform over that cyclic group plus the same
    zero-pair correction.
    """
    field = _same_field(a, b)
    n = field.p - 1
    la = np.zeros(n, dtype=np.int64)
    lb = np.zeros(n, dtype=np.int64)
    ea = a.without_zero().elements_array()
    eb = b.without_zero().elements_array()
    la[field.dlog[ea]] = 1
    lb[field.dlog[eb]] = 1
    a0 = 1 if 0 in a else 0
    b0 = 1 if 0 in b else 0
    zero_pairs = a0 * len(b) + b0 * len(a) - a0 * b0
    r = cyclic_convolve(la, lb)
    direct = int(np.dot(r, r)) + zero_pairs * zero_pairs
    fa2 = _abs2(dft_direct(la))
    fb2 = _abs2(dft_direct(lb))
    spectral = float(np.dot(fa2, fb2) / n) + zero_pairs * zero_pairs
    return EnergyReport(direct, spectral, abs(direct - spectral) < 0.5)


def _indicator_array(a: FpSet) -> np.ndarray:
    vals = np.zeros(a.field.p, dtype=np.int64)
    vals[a.elements_array()] = 1
    return vals


def _abs2(z: np.ndarray) -> np.ndarray:
    return (z * z.conj()).real


def count_system(a: FpSet, b: FpSet) -> int:
    """Solutions (a1,a2,b11,b12,b21,b22) of b11/a1 = b12/a2 and b21/a1 = b22/a2.

    Grouped count: each triple (x, b1, b2) with x in A maps to the key
    (b1/x, b2/x); the answer is the sum of squared key multiplicities.
    Requires 0 not in A.
    """
    field = _same_field(a, b)
    if 0 in a:
        raise ZeroInA("count_system requires 0 to be excluded from A")
    if a.is_empty or b.is_empty:
        return 0
    p = field.p
    ea = a.elements_array()
    eb = b.elements_array()
    inv = field.exp[(field.p - 1 - field.dlog[ea]) % (field.p - 1)]
    u = (eb[None, :] * inv[:, None]) % p  # u[i, j] = b_j / a_i
    keys = (u[:, :, None] * np.int64(p) + u[:, None, :]).reshape(-1)
    _, counts = np.unique(keys, return_counts=True)
    return int(np.dot(counts, counts))


def count_dilate_eq(a: FpSet, xi: int) -> int:
    """Exact #{(a1..a6) in A^6 : xi (a1 - a2) = a3 + a4 - a5 - a6}.

    Counted through exact difference/double-difference tables, then cross
    checked against (1/p) sum_x |A_hat(xi x)|^2 |A_hat(x)|^4 under the 0.5
    rounding contract (SpectralMismatch on violation).
    """
    field = a.field
    p = field.p
    xi %= p
    ind = _indicator_array(a)
    rev = ind[(-np.arange(p)) % p]
    diff = cyclic_convolve(ind, rev)  # diff[v] = #{a1 - a2 = v}
    ddif = cyclic_convolve(diff, diff[(-np.arange(p)) % p])  # #{a3+a4-a5-a6 = w}
    count = int(np.dot(diff, ddif[(xi * np.arange(p)) % p]))

    fa2 = _abs2(dft_direct(ind))
    spectral = float(np.dot(fa2[(xi * np.arange(p)) % p], fa2 * fa2) / p)
    if abs(count - spectral) >= 0.5:
        raise SpectralMismatch(
            f"dilate-equation count {count} vs spectral {spectral!r} breaks the 0.5 contract"
        )
    return count
