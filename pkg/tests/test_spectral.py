import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fplab.errors import ZeroInA
from fplab.oracles import (
    additive_energy_naive,
    count_dilate_eq_naive,
    count_system_naive,
    count_system_tiny,
    mult_energy_naive,
)
from fplab.setalg import FpSet
from fplab.spectral import (
    DenseFunction,
    additive_energy,
    count_dilate_eq,
    count_system,
    cyclic_convolve,
    dft_direct,
    mult_energy,
)

from conftest import get_field


def fp(p, elems):
    return FpSet.from_iterable(get_field(p), elems)


def test_dft_matches_library_fft(rng):
    for n in (5, 31, 101):
        v = rng.normal(size=n) + 1j * rng.normal(size=n)
        assert np.allclose(dft_direct(v), np.fft.fft(v), atol=1e-9 * n)


def test_dft_frozen_value():
    # indicator of {0,1} in F_5 at frequency 1: |1 + e(-1/5)|^2 = 2 + 2cos(2 pi /5)
    f = dft_direct(np.array([1, 1, 0, 0, 0]))
    want = 2 + 2 * np.cos(2 * np.pi / 5)
    assert abs(abs(f[1]) ** 2 - want) < 1e-12
    assert abs(f[0] - 2.0) < 1e-12


@given(
    fv=st.lists(st.integers(min_value=-5, max_value=5), min_size=7, max_size=7),
    gv=st.lists(st.integers(min_value=-5, max_value=5), min_size=7, max_size=7),
)
def test_cyclic_convolve_matches_definition(fv, gv):
    n = 7
    f, g = np.array(fv), np.array(gv)
    got = cyclic_convolve(f, g)
    assert got.dtype == np.int64
    for x in range(n):
        assert got[x] == sum(f[y] * g[(x - y) % n] for y in range(n))


def test_convolution_theorem(rng):
    n = 31
    f = rng.integers(-3, 4, size=n)
    g = rng.integers(-3, 4, size=n)
    lhs = dft_direct(cyclic_convolve(f, g))
    rhs = dft_direct(f) * dft_direct(g)
    assert np.allclose(lhs, rhs, atol=1e-9 * n)


def test_plancherel(rng):
    n = 101
    f = rng.normal(size=n)
    fh = dft_direct(f)
    assert abs(np.vdot(fh, fh).real - n * np.vdot(f, f).real) < 1e-9 * n * n


def test_convolve_length_guard():
    with pytest.raises(ValueError):
        cyclic_convolve(np.ones(3), np.ones(4))


def test_dense_function_wrappers():
    a = fp(5, [0, 1])
    ind = DenseFunction.indicator(a)
    assert ind.values.tolist() == [1, 1, 0, 0, 0]
    assert np.allclose(ind.dft().values, dft_direct(ind.values))
    auto = ind.convolve(ind)
    assert auto.values.tolist() == [1, 2, 1, 0, 0]
    with pytest.raises(ValueError):
        DenseFunction(get_field(5), np.ones(4))
    with pytest.raises(ValueError):
        ind.convolve(DenseFunction.indicator(fp(7, [0])))


def test_additive_energy_frozen():
    rep = additive_energy(fp(5, [0, 1]), fp(5, [0, 1]))
    assert rep.direct_count == 6 and rep.agreement
    assert abs(rep.spectral_value - 6) < 0.5


def test_mult_energy_frozen():
    assert mult_energy(fp(7, [1, 2, 4]), fp(7, [1, 2, 4])).direct_count == 27
    assert mult_energy(fp(7, [1, 2]), fp(7, [1, 2])).direct_count == 6


@given(
    ea=st.sets(st.integers(min_value=0, max_value=10), min_size=1, max_size=6),
    eb=st.sets(st.integers(min_value=0, max_value=10), min_size=1, max_size=6),
)
def test_energies_match_oracle(ea, eb):
    a, b = fp(11, ea), fp(11, eb)
    add = additive_energy(a, b)
    mul = mult_energy(a, b)
    assert add.direct_count == additive_energy_naive(a, b) and add.agreement
    assert mul.direct_count == mult_energy_naive(a, b) and mul.agreement


def test_count_system_frozen():
    assert count_system(fp(7, [1, 2]), fp(7, [1])) == 2
    assert count_system(fp(7, [1]), fp(7, [1, 2, 3])) == 9
    assert count_system(fp(5, [1, 2]), fp(5, [1, 2])) == 10


def test_count_system_rejects_zero_and_handles_empty():
    with pytest.raises(ZeroInA):
        count_system(fp(7, [0, 1]), fp(7, [1]))
    assert count_system(fp(7, []), fp(7, [1])) == 0
    assert count_system(fp(7, [1]), fp(7, [])) == 0


@given(
    ea=st.sets(st.integers(min_value=1, max_value=10), min_size=1, max_size=5),
    eb=st.sets(st.integers(min_value=0, max_value=10), min_size=1, max_size=5),
)
def test_count_system_matches_oracles(ea, eb):
    a, b = fp(11, ea), fp(11, eb)
    got = count_system(a, b)
    assert got == count_system_naive(a, b)
    if len(a) <= 3 and len(b) <= 3:
        assert got == count_system_tiny(a, b)


def test_count_dilate_eq_frozen():
    a = fp(5, [0, 1])
    assert count_dilate_eq(a, 1) == 20
    assert count_dilate_eq(a, 0) == 24


@given(
    ea=st.sets(st.integers(min_value=0, max_value=10), min_size=1, max_size=5),
    xi=st.integers(min_value=0, max_value=10),
)
def test_count_dilate_eq_matches_oracle(ea, xi):
    a = fp(11, ea)
    got = count_dilate_eq(a, xi)
    assert got == count_dilate_eq_naive(a, xi)
    assert got * 11 >= len(a) ** 6  # averaging floor over xi attained pointwise here


def test_count_dilate_floor_all_xi():
    # each count is at least |A|^6/p, so the sum over xi is at least |A|^6
    a = fp(13, [0, 1, 3, 9])
    counts = [count_dilate_eq(a, xi) for xi in range(13)]
    assert all(13 * c >= len(a) ** 6 for c in counts)
    assert sum(counts) >= len(a) ** 6
