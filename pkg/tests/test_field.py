import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fplab.errors import NotPrime, TooLarge, TrivialCharacter
from fplab.field import (
    Character,
    UnitValue,
    char_eval,
    character,
    is_prime,
    least_primitive_root,
    legendre_character,
    make_field,
    prime_factors,
)

from conftest import get_field


def test_is_prime_small_table():
    primes_below_60 = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59}
    for n in range(-3, 60):
        assert is_prime(n) == (n in primes_below_60)


def test_prime_factors():
    assert prime_factors(1) == []
    assert prime_factors(2) == [2]
    assert prime_factors(100) == [2, 5]
    assert prime_factors(498) == [2, 3, 83]


def test_least_primitive_roots_frozen():
    assert least_primitive_root(7) == 3
    assert least_primitive_root(11) == 2
    assert least_primitive_root(13) == 2
    assert least_primitive_root(101) == 2


def test_make_field_rejects_bad_moduli():
    with pytest.raises(NotPrime):
        make_field(8)
    with pytest.raises(NotPrime):
        make_field(2)
    with pytest.raises(NotPrime):
        make_field(1)
    with pytest.raises(TooLarge):
        make_field(101, max_p=100)


def test_field_tables_roundtrip():
    f = get_field(31)
    assert f.exp.shape == (30,) and f.dlog.shape == (31,)
    assert f.dlog[0] == -1
    for x in range(1, 31):
        assert f.exp[f.dlog[x]] == x
    assert sorted(f.exp.tolist()) == list(range(1, 31))


def test_field_equality_and_hash():
    f = get_field(7)
    assert f == make_field(7)
    assert f != get_field(11)
    assert hash(f) == hash(make_field(7))


def test_inv_and_centered():
    f = get_field(7)
    for x in range(1, 7):
        assert (x * f.inv(x)) % 7 == 1
    with pytest.raises(ZeroDivisionError):
        f.inv(0)
    assert [f.centered(x) for x in range(7)] == [0, 1, 2, 3, -3, -2, -1]


def test_roots_of_unity():
    f = get_field(5)
    w = f.roots_of_unity
    assert w.shape == (5,)
    assert np.allclose(w**5, 1.0)
    assert abs(w[1] - np.exp(2j * np.pi / 5)) < 1e-12


def test_trivial_character_rejected():
    f = get_field(7)
    with pytest.raises(TrivialCharacter):
        character(f, 0)
    with pytest.raises(TrivialCharacter):
        character(f, 6)
    with pytest.raises(TrivialCharacter):
        character(f, -6)


def test_character_index_reduction_and_order():
    f = get_field(7)
    assert character(f, 8).k == 2
    assert character(f, 2).order == 3
    assert character(f, 1).order == 6
    chi = legendre_character(f)
    assert chi.k == 3 and chi.order == 2 and chi.is_quadratic


def test_legendre_frozen_values_p7():
    # quadratic residues mod 7 are {1, 2, 4}
    chi = legendre_character(get_field(7))
    signs = chi.sign_table
    assert signs[0] == 0
    assert {x for x in range(1, 7) if signs[x] == 1} == {1, 2, 4}
    assert signs[5] == -1
    assert char_eval(chi, 5).as_int() == -1
    assert char_eval(chi, 0).is_zero


def test_sign_table_requires_order_two():
    chi = character(get_field(7), 2)
    with pytest.raises(ValueError):
        chi.sign_table


def test_value_table_matches_exact_values():
    f = get_field(11)
    for k in (1, 2, 5):
        chi = character(f, k)
        vt = chi.value_table
        assert vt[0] == 0
        for x in range(1, 11):
            assert abs(vt[x] - char_eval(chi, x).to_complex()) < 1e-12


def test_conjugate_character():
    f = get_field(11)
    chi = character(f, 3)
    bar = chi.conjugate()
    assert bar.k == 7
    assert np.allclose(bar.value_table, np.conj(chi.value_table))
    assert legendre_character(f).conjugate().k == 5


@given(p=st.sampled_from([7, 11, 13]), k=st.integers(min_value=1, max_value=11))
def test_multiplicativity_exact(p, k):
    f = get_field(p)
    if k % (p - 1) == 0:
        return
    chi = character(f, k)
    idx = chi.index_table
    for x in range(1, p):
        for y in range(1, p):
            assert idx[(x * y) % p] == (idx[x] + idx[y]) % (p - 1)


def test_character_sums_to_zero():
    f = get_field(13)
    for k in range(1, 12):
        total = character(f, k).value_table.sum()
        assert abs(total) < 1e-9


def test_unit_value_algebra():
    a = UnitValue(6, 2)
    b = UnitValue(6, 5)
    assert (a * b).index == 1
    assert a.conjugate().index == 4
    z = UnitValue.zero(6)
    assert (a * z).is_zero and z.conjugate().is_zero
    assert UnitValue(6, 0).as_int() == 1
    assert UnitValue(6, 3).as_int() == -1
    assert z.as_int() == 0
    with pytest.raises(ValueError):
        UnitValue(6, 2).as_int()
    with pytest.raises(ValueError):
        a * UnitValue(4, 1)
    assert abs(UnitValue(4, 1).to_complex() - 1j) < 1e-12
