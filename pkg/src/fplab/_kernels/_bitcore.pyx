# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend. Semantics mirror fplab._kernels.pybits exactly;
the parity tests drive both on random inputs and require identical output.
Masks cross the boundary as Python ints and are unpacked to byte/word views
here, so callers never see the buffer representation."""

from libc.stdint cimport int64_t, uint64_t, uint8_t

import numpy as np

BACKEND = "cython"


def build_exp_dlog(int64_t p, int64_t g):
    """exp[t] = g^t mod p for t in [0, p-1); dlog[g^t] = t, dlog[0] = -1."""
    exp_arr = np.empty(p - 1, dtype=np.int64)
    dlog_arr = np.full(p, -1, dtype=np.int64)
    cdef int64_t[::1] exp = exp_arr
    cdef int64_t[::1] dlog = dlog_arr
    cdef int64_t t, v = 1
    for t in range(p - 1):
        exp[t] = v
        dlog[v] = t
        v = (v * g) % p
    return exp_arr, dlog_arr


def mask_to_indices(mask, int64_t m):
    """Positions of set bits in [0, m), ascending, as int64."""
    cdef bytes raw = mask.to_bytes((m + 7) >> 3, "little")
    cdef const uint8_t[::1] b = raw
    cdef Py_ssize_t nb = b.shape[0]
    cdef Py_ssize_t i, k = 0, n = 0
    cdef int j
    cdef uint8_t byte
    for i in range(nb):
        byte = b[i]
        while byte:
            byte &= byte - 1
            n += 1
    out_arr = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    if n:
        for i in range(nb):
            byte = b[i]
            for j in range(8):
                if byte & (1 << j):
                    out[k] = (<int64_t> i << 3) + j
                    k += 1
    return out_arr


def indices_to_mask(indices, int64_t m):
    idx_arr = np.ascontiguousarray(np.asarray(indices, dtype=np.int64))
    cdef int64_t[::1] idx = idx_arr
    cdef Py_ssize_t n = idx.shape[0]
    if n == 0:
        return 0
    out_buf = bytearray((m + 7) >> 3)
    cdef uint8_t[::1] ob = out_buf
    cdef Py_ssize_t i
    cdef int64_t e
    for i in range(n):
        e = idx[i]
        ob[e >> 3] |= <uint8_t> (1 << (e & 7))
    return int.from_bytes(bytes(out_buf), "little")


def shift_or_union(mask, shifts, int64_t m):
    """Union over s of the cyclic rotation of mask by s (bit e -> bit (e+s) mod m)."""
    cdef Py_ssize_t nwords = (m + 63) >> 6
    cdef Py_ssize_t nbytes = (m + 7) >> 3
    raw = mask.to_bytes(nbytes, "little")
    src_arr = np.zeros(nwords + 1, dtype=np.uint64)
    src_arr[:nwords] = np.frombuffer(raw.ljust(nwords * 8, b"\x00"), dtype=np.uint64)
    acc_arr = np.zeros(nwords + 1, dtype=np.uint64)
    sh_arr = np.ascontiguousarray(np.asarray(shifts, dtype=np.int64))
    cdef uint64_t[::1] src = src_arr
    cdef uint64_t[::1] acc = acc_arr
    cdef int64_t[::1] sh = sh_arr
    cdef Py_ssize_t i, j, wq, qq
    cdef int64_t s, q
    cdef int wb, qb, top
    for i in range(sh.shape[0]):
        s = sh[i] % m
        if s < 0:
            s += m
        if s == 0:
            for j in range(nwords):
                acc[j] |= src[j]
            continue
        # low part: (mask << s), bits above m-1 discarded (handled by the wrap part)
        wq = <Py_ssize_t> (s >> 6)
        wb = <int> (s & 63)
        if wb == 0:
            for j in range(nwords - wq):
                acc[j + wq] |= src[j]
        else:
            for j in range(nwords - wq):
                acc[j + wq] |= src[j] << wb
                if j + wq + 1 < nwords:
                    acc[j + wq + 1] |= src[j] >> (64 - wb)
        # wrap part: (mask >> (m - s))
        q = m - s
        qq = <Py_ssize_t> (q >> 6)
        qb = <int> (q & 63)
        if qb == 0:
            for j in range(nwords - qq):
                acc[j] |= src[j + qq]
        else:
            for j in range(nwords - qq):
                acc[j] |= (src[j + qq] >> qb) | (src[j + qq + 1] << (64 - qb))
    top = <int> (m & 63)
    if top:
        acc[nwords - 1] &= (<uint64_t> 1 << top) - 1
    acc[nwords] = 0
    return int.from_bytes(acc_arr.tobytes()[:nbytes], "little")


def remap_affine(mask, int64_t mult, int64_t add, int64_t m):
    """{(mult*e + add) mod m : e in mask}. Requires m < 2^31 so products fit int64."""
    cdef bytes raw = mask.to_bytes((m + 7) >> 3, "little")
    cdef const uint8_t[::1] b = raw
    out_buf = bytearray((m + 7) >> 3)
    cdef uint8_t[::1] ob = out_buf
    cdef Py_ssize_t i
    cdef int j
    cdef uint8_t byte
    cdef int64_t e, t
    mult = mult % m
    if mult < 0:
        mult += m
    add = add % m
    if add < 0:
        add += m
    for i in range(b.shape[0]):
        byte = b[i]
        if byte == 0:
            continue
        for j in range(8):
            if byte & (1 << j):
                e = (<int64_t> i << 3) + j
                t = (mult * e + add) % m
                ob[t >> 3] |= <uint8_t> (1 << (t & 7))
    return int.from_bytes(bytes(out_buf), "little")


def remap_table(mask, table, int64_t m_out):
    """{table[e] : e in mask, table[e] >= 0} as a mask over [0, m_out)."""
    tab_arr = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
    cdef int64_t[::1] tab = tab_arr
    cdef int64_t m_in = tab.shape[0]
    cdef bytes raw = mask.to_bytes((m_in + 7) >> 3, "little")
    cdef const uint8_t[::1] b = raw
    out_buf = bytearray((m_out + 7) >> 3)
    cdef uint8_t[::1] ob = out_buf
    cdef Py_ssize_t i
    cdef int j
    cdef uint8_t byte
    cdef int64_t e, t
    for i in range(b.shape[0]):
        byte = b[i]
        if byte == 0:
            continue
        for j in range(8):
            if byte & (1 << j):
                e = (<int64_t> i << 3) + j
                t = tab[e]
                if t >= 0:
                    ob[t >> 3] |= <uint8_t> (1 << (t & 7))
    return int.from_bytes(bytes(out_buf), "little")


def pair_corr_moments_int(table, int64_t i_start, int64_t i_len, int r_max):
    """Exact lhs[r-1] = sum_{u1,u2} S^(2r), S = windowed pair correlation of an
    integer table. Caller guarantees p^2 * i_len^(2*r_max) fits in int64."""
    tab_arr = np.ascontiguousarray(np.asarray(table, dtype=np.int64))
    cdef int64_t[::1] tab = tab_arr
    cdef int64_t p = tab.shape[0]
    win_arr = np.empty((p, i_len), dtype=np.int64)
    cdef int64_t[:, ::1] win = win_arr
    cdef int64_t u, u2, j, s, sq, acc
    cdef int r
    for u in range(p):
        for j in range(i_len):
            win[u, j] = tab[(u + i_start + j) % p]
    out_arr = np.zeros(r_max, dtype=np.int64)
    cdef int64_t[::1] out = out_arr
    for u in range(p):
        for u2 in range(p):
            s = 0
            for j in range(i_len):
                s += win[u, j] * win[u2, j]
            sq = s * s
            acc = sq
            out[0] += sq
            for r in range(2, r_max + 1):
                acc *= sq
                out[r - 1] += acc
    return out_arr


def pair_corr_moments_complex(table, int64_t i_start, int64_t i_len, int r_max):
    """Float lhs[r-1] = sum_{u1,u2} |S|^(2r) for a complex table."""
    tab_arr = np.ascontiguousarray(np.asarray(table, dtype=np.complex128))
    cdef double complex[::1] tab = tab_arr
    cdef int64_t p = tab.shape[0]
    win_arr = np.empty((p, i_len), dtype=np.complex128)
    cdef double complex[:, ::1] win = win_arr
    cdef int64_t u, u2, j
    cdef double complex s
    cdef double sq, acc
    cdef int r
    for u in range(p):
        for j in range(i_len):
            win[u, j] = tab[(u + i_start + j) % p]
    out_arr = np.zeros(r_max, dtype=np.float64)
    cdef double[::1] out = out_arr
    for u in range(p):
        for u2 in range(p):
            s = 0
            for j in range(i_len):
                s += win[u, j] * win[u2, j].conjugate()
            sq = s.real * s.real + s.imag * s.imag
            acc = sq
            out[0] += sq
            for r in range(2, r_max + 1):
                acc *= sq
                out[r - 1] += acc
    return out_arr
