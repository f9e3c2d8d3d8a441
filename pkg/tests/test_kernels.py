"""Backend parity: the compiled kernels and the pure-Python ones must agree bit for bit."""

import os

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import fplab
from fplab._kernels import pybits

try:
    from fplab._kernels import _bitcore
except ImportError:
    _bitcore = None

BACKENDS = [pybits] + ([_bitcore] if _bitcore is not None else [])

subsets = st.sets(st.integers(min_value=0, max_value=30), max_size=31)


def mask_of(elems, m):
    acc = 0
    for e in elems:
        acc |= 1 << (e % m)
    return acc


def test_active_backend_reported():
    assert fplab.BACKEND in ("cython", "python")
    if os.environ.get("FPLAB_PURE_PYTHON") == "1":
        assert fplab.BACKEND == "python"
    elif _bitcore is not None:
        assert fplab.BACKEND == "cython"


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
@pytest.mark.parametrize("p,g", [(7, 3), (11, 2), (31, 3)])
def test_build_exp_dlog_tables(mod, p, g):
    exp, dlog = mod.build_exp_dlog(p, g)
    assert exp.shape == (p - 1,) and dlog.shape == (p,)
    for t in range(p - 1):
        assert exp[t] == pow(g, t, p)
    assert dlog[0] == -1
    assert all(dlog[exp[t]] == t for t in range(p - 1))


@given(elems=subsets)
def test_mask_index_roundtrip(elems):
    m = 31
    mask = mask_of(elems, m)
    idx = pybits.mask_to_indices(mask, m)
    assert set(idx.tolist()) == elems
    assert pybits.indices_to_mask(idx, m) == mask
    if _bitcore is not None:
        assert _bitcore.indices_to_mask(_bitcore.mask_to_indices(mask, m), m) == mask


@given(elems=subsets, shifts=st.lists(st.integers(min_value=-40, max_value=80), max_size=6))
def test_shift_or_union_parity_and_meaning(elems, shifts):
    m = 31
    mask = mask_of(elems, m)
    got = pybits.shift_or_union(mask, shifts, m)
    want = mask_of({(e + s) % m for e in elems for s in shifts}, m)
    assert got == want
    if _bitcore is not None:
        assert _bitcore.shift_or_union(mask, list(shifts), m) == got


@given(elems=subsets, mult=st.integers(min_value=-30, max_value=30), add=st.integers(min_value=0, max_value=30))
def test_remap_affine_parity_and_meaning(elems, mult, add):
    m = 31
    mask = mask_of(elems, m)
    got = pybits.remap_affine(mask, mult, add, m)
    assert got == mask_of({(mult * e + add) % m for e in elems}, m)
    if _bitcore is not None:
        assert _bitcore.remap_affine(mask, mult, add, m) == got


@given(elems=subsets)
def test_remap_table_parity(elems):
    m = 31
    table = np.array([(3 * i * i + 1) % 29 if i % 5 else -1 for i in range(m)], dtype=np.int64)
    mask = mask_of(elems, m)
    got = pybits.remap_table(mask, table, 29)
    want = mask_of({int(table[e]) for e in elems if table[e] >= 0}, 29)
    assert got == want
    if _bitcore is not None:
        assert _bitcore.remap_table(mask, table, 29) == got


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_pair_corr_int_matches_triple_loop(mod):
    p = 11
    rng = np.random.Generator(np.random.PCG64(7))
    table = rng.choice(np.array([-1, 0, 1], dtype=np.int64), size=p)
    got = mod.pair_corr_moments_int(table, 2, 3, 2)
    want = np.zeros(2, dtype=np.int64)
    for u1 in range(p):
        for u2 in range(p):
            s = sum(int(table[(u1 + 2 + j) % p]) * int(table[(u2 + 2 + j) % p]) for j in range(3))
            want[0] += s**2
            want[1] += s**4
    assert np.array_equal(got, want)


@pytest.mark.parametrize("mod", BACKENDS, ids=lambda m: m.BACKEND)
def test_pair_corr_complex_matches_int_on_real_table(mod):
    p = 13
    rng = np.random.Generator(np.random.PCG64(11))
    table = rng.choice(np.array([-1, 0, 1], dtype=np.int64), size=p)
    exact = mod.pair_corr_moments_int(table, 0, 4, 2)
    approx = mod.pair_corr_moments_complex(table.astype(np.complex128), 0, 4, 2)
    assert np.allclose(approx, exact, rtol=0, atol=1e-6)


@pytest.mark.skipif(_bitcore is None, reason="compiled backend not built")
def test_pair_corr_complex_parity():
    p = 17
    rng = np.random.Generator(np.random.PCG64(3))
    table = np.exp(2j * np.pi * rng.integers(0, p - 1, size=p) / (p - 1))
    table[0] = 0
    a = pybits.pair_corr_moments_complex(table, 5, 4, 3)
    b = _bitcore.pair_corr_moments_complex(table, 5, 4, 3)
    assert np.allclose(a, b, rtol=1e-12, atol=1e-9)


@pytest.mark.skipif(_bitcore is None, reason="compiled backend not built")
def test_build_exp_dlog_parity_larger_prime():
    from fplab.field import least_primitive_root

    g = least_primitive_root(499)
    exp_a, dlog_a = pybits.build_exp_dlog(499, g)
    exp_b, dlog_b = _bitcore.build_exp_dlog(499, g)
    assert np.array_equal(exp_a, exp_b)
    assert np.array_equal(dlog_a, dlog_b)
