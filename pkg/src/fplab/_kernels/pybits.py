"""Pure-Python kernel backend.

Masks are arbitrary-precision ints, so shifts and unions run at C speed
inside CPython's big-int machinery; everything elementwise goes through
numpy. Semantics must stay bit-identical to the compiled backend, which
the parity tests enforce on random inputs.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

BACKEND = "python"


def build_exp_dlog(p: int, g: int) -> tuple[np.ndarray, np.ndarray]:
    """Tables exp[t] = g^t mod p (t in [0, p-1)) and dlog[g^t] = t, dlog[0] = -1.

    The sequential powering is blocked: g^(qB + s) = (g^B)^q * g^s, so only
    O(sqrt(p)) Python-level multiplications happen and the O(p) outer product
    stays in numpy. Products are below p^2 < 2^63 for every admissible p.
    """
    n = p - 1
    block = max(1, min(1 << 12, int(n**0.5) + 1))
    small = np.empty(block, dtype=np.int64)
    v = 1
    for i in range(block):
        small[i] = v
        v = (v * g) % p
    nblocks = -(-n // block)
    big = np.empty(nblocks, dtype=np.int64)
    gb = pow(g, block, p)
    w = 1
    for i in range(nblocks):
        big[i] = w
        w = (w * gb) % p
    exp = ((big[:, None] * small[None, :]) % p).reshape(-1)[:n]
    dlog = np.full(p, -1, dtype=np.int64)
    dlog[exp] = np.arange(n, dtype=np.int64)
    return exp, dlog


def mask_to_indices(mask: int, m: int) -> np.ndarray:
    """Positions of set bits in [0, m), ascending, as int64."""
    if mask == 0:
        return np.empty(0, dtype=np.int64)
    raw = np.frombuffer(mask.to_bytes((m + 7) // 8, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[:m]
    return np.flatnonzero(bits).astype(np.int64)


def indices_to_mask(indices: Iterable[int] | np.ndarray, m: int) -> int:
    idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.int64)
    if idx.size == 0:
        return 0
    bits = np.zeros(m, dtype=np.uint8)
    bits[idx] = 1
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def shift_or_union(mask: int, shifts: Sequence[int] | np.ndarray, m: int) -> int:
    """Union over s of the cyclic rotation of mask by s (bit e -> bit (e+s) mod m)."""
    full = (1 << m) - 1
    acc = 0
    for s in shifts:
        s = int(s) % m
        acc |= (mask << s) | (mask >> (m - s))
    return acc & full


def remap_affine(mask: int, mult: int, add: int, m: int) -> int:
    """{(mult*e + add) mod m : e in mask}."""
    idx = mask_to_indices(mask, m)
    if idx.size == 0:
        return 0
    return indices_to_mask((idx * (mult % m) + add) % m, m)


def remap_table(mask: int, table: np.ndarray, m_out: int) -> int:
    """{table[e] : e in mask, table[e] >= 0} as a mask over [0, m_out)."""
    idx = mask_to_indices(mask, len(table))
    if idx.size == 0:
        return 0
    vals = np.asarray(table, dtype=np.int64)[idx]
    vals = vals[vals >= 0]
    if vals.size == 0:
        return 0
    return indices_to_mask(vals, m_out)


def _window_matrix(table: np.ndarray, i_start: int, i_len: int) -> np.ndarray:
    """Rows u -> [table[(u + i_start + j) mod p] for j < i_len]."""
    p = len(table)
    u = np.arange(p, dtype=np.int64)[:, None]
    j = np.arange(i_len, dtype=np.int64)[None, :]
    return table[(u + i_start + j) % p]


def pair_corr_moments_int(table: np.ndarray, i_start: int, i_len: int, r_max: int) -> np.ndarray:
    """Exact moment sums for integer-valued tables (order-2 characters).

    Returns lhs[r-1] = sum_{u1,u2} S(u1,u2)^(2r) for r = 1..r_max, where
    S(u1,u2) = sum_{j<i_len} table[u1+i_start+j] * table[u2+i_start+j] (indices
    cyclic). Caller guarantees p^2 * i_len^(2*r_max) fits in int64.
    """
    p = len(table)
    win = _window_matrix(np.asarray(table, dtype=np.int64), i_start, i_len)
    out = np.zeros(r_max, dtype=np.int64)
    chunk = max(1, (1 << 22) // max(1, p))
    for lo in range(0, p, chunk):
        s = win[lo : lo + chunk] @ win.T  # S for a block of u1 rows
        sq = s * s
        acc = sq.copy()
        out[0] += int(acc.sum())
        for r in range(2, r_max + 1):
            acc *= sq
            out[r - 1] += int(acc.sum())
    return out


def pair_corr_moments_complex(table: np.ndarray, i_start: int, i_len: int, r_max: int) -> np.ndarray:
    """Float moment sums lhs[r-1] = sum_{u1,u2} |S(u1,u2)|^(2r), general characters."""
    p = len(table)
    win = _window_matrix(np.asarray(table, dtype=np.complex128), i_start, i_len)
    out = np.zeros(r_max, dtype=np.float64)
    chunk = max(1, (1 << 21) // max(1, p))
    for lo in range(0, p, chunk):
        s = win[lo : lo + chunk] @ win.conj().T
        sq = (s * s.conj()).real
        acc = sq.copy()
        out[0] += float(acc.sum())
        for r in range(2, r_max + 1):
            acc *= sq
            out[r - 1] += float(acc.sum())
    return out
