import math

import pytest

import fplab.charsum as charsum
from fplab.charsum import (
    BoundParams,
    bound_eval,
    character_sum,
    interval_bounds,
    moment_sum,
    paley_profile,
)
from fplab.errors import EmptySet, FieldMismatch, MissingParam, NotInterval
from fplab.field import character, legendre_character
from fplab.oracles import character_sum_naive, moment_sum_naive
from fplab.setalg import FpSet

from conftest import get_field


def fp(p, elems):
    return FpSet.from_iterable(get_field(p), elems)


def test_character_sum_frozen_exact():
    # Legendre over F_7, A = {1,2}, B = {3,4}: the sum is exactly -2
    chi = legendre_character(get_field(7))
    res = character_sum(chi, fp(7, [1, 2]), fp(7, [3, 4]))
    assert res.exact_numerator == -2
    assert res.value == complex(-2, 0)
    assert res.magnitude == 2.0 and res.normalized == 0.5


def test_character_sum_matches_oracle(rng):
    f = get_field(13)
    for k in (1, 5, 6):
        chi = character(f, k)
        for _ in range(5):
            a = fp(13, rng.choice(13, size=4, replace=False))
            b = fp(13, rng.choice(13, size=3, replace=False))
            got = character_sum(chi, a, b)
            want = character_sum_naive(chi, a, b)
            assert abs(got.value - want) < 1e-9
            assert abs(got.normalized - abs(want) / 12) < 1e-9


def test_character_sum_guards():
    chi = legendre_character(get_field(7))
    with pytest.raises(EmptySet):
        character_sum(chi, fp(7, []), fp(7, [1]))
    with pytest.raises(FieldMismatch):
        character_sum(chi, fp(11, [1]), fp(11, [2]))


def test_interval_bounds():
    assert interval_bounds(fp(7, [0, 1])) == (0, 2)
    assert interval_bounds(fp(7, [5, 6, 0, 1])) == (5, 4)  # wraps through 0
    assert interval_bounds(fp(7, [3])) == (3, 1)
    assert interval_bounds(fp(7, range(7))) == (0, 7)
    with pytest.raises(NotInterval):
        interval_bounds(fp(7, [0, 2]))
    with pytest.raises(NotInterval):
        interval_bounds(fp(7, []))


def test_moment_frozen_anchor():
    # Legendre over F_7, I = {0,1}, r = 1: lhs = 74, rhs = 49*2 + 4*7*4 = 210
    chi = legendre_character(get_field(7))
    res = moment_sum(chi, fp(7, [0, 1]), 1)
    assert res == (74, 210, True, False)
    assert isinstance(res.lhs, int)


def test_moment_singleton_interval():
    # |I| = 1: S(u1,u2) = chi(u1)conj(chi(u2)) so lhs = 36; rhs = 49 + 28 = 77
    chi = legendre_character(get_field(7))
    res = moment_sum(chi, fp(7, [0]), 1)
    assert res.lhs == 36 and res.rhs == 77 and res.holds


def test_moment_rhs_formula():
    chi = legendre_character(get_field(11))
    res = moment_sum(chi, fp(11, [0, 1, 2]), 2)
    assert res.rhs == 121 * 9 * 16 + 16 * 11 * 81
    assert res.rhs == 31680
    assert res.holds


def test_moment_matches_oracle():
    f = get_field(7)
    i_elems = [2, 3, 4]
    i_set = fp(7, i_elems)
    for k in (1, 2, 3):
        chi = character(f, k)
        for r in (1, 2):
            got = moment_sum(chi, i_set, r)
            want = moment_sum_naive(chi, i_elems, r)
            assert abs(got.lhs - want) < 1e-6
            assert not got.sampled


def test_moment_complex_path_agrees_with_int_path(monkeypatch):
    chi = legendre_character(get_field(7))
    i_set = fp(7, [0, 1])
    exact = moment_sum(chi, i_set, 1)
    monkeypatch.setattr(charsum, "_INT64_SAFE", 1)  # force the complex path
    approx = moment_sum(chi, i_set, 1)
    assert isinstance(approx.lhs, float)
    assert abs(approx.lhs - exact.lhs) < 1e-6
    assert approx.rhs == exact.rhs


def test_moment_sampled_path():
    chi = legendre_character(get_field(31))
    res = moment_sum(chi, fp(31, range(4)), 1, sample=200, seed=3)
    assert res.sampled and res.holds
    exact = moment_sum(chi, fp(31, range(4)), 1)
    # a 200-draw estimate of a mean of size ~p|I| should land well within 3x
    assert res.lhs < 3 * exact.lhs + 3 * 31 * 31


def test_moment_guards():
    chi = legendre_character(get_field(7))
    with pytest.raises(ValueError):
        moment_sum(chi, fp(7, [0, 1]), 0)
    with pytest.raises(FieldMismatch):
        moment_sum(chi, fp(11, [0, 1]), 1)
    with pytest.raises(NotInterval):
        moment_sum(chi, fp(7, [0, 2]), 1)


def test_bound_thm2_frozen():
    # p = 2^20, K = 2, delta = 1, c = 1: exp(-20^(1/3))
    got = bound_eval("thm2", BoundParams(p=1 << 20, K=2.0, delta=1.0))
    assert abs(got - math.exp(-(20 ** (1 / 3)))) < 1e-12
    assert abs(got - 0.06624352) < 5e-8
    assert bound_eval("thm4", BoundParams(p=1 << 20, K=2.0, delta=1.0)) == got


def test_bound_no_doubling_limit():
    # K = 1 collapses the exponent argument to infinity: bound 0
    assert bound_eval("thm2", BoundParams(p=101, K=1.0, delta=1.0)) == 0.0


def test_bound_cor1_general_frozen():
    got = bound_eval("cor1_general", BoundParams(K=2.0, size_A=10, size_B=100))
    assert abs(got - 2**1.5 * 10 * 100**2.5) < 1e-3
    assert abs(got - 2.8284271e6) < 1e1


def test_bound_lemma1_matches_moment_rhs():
    chi = legendre_character(get_field(11))
    res = moment_sum(chi, fp(11, [0, 1, 2]), 2)
    assert bound_eval("lemma1", BoundParams(p=11, size_I=3, r=2)) == res.rhs


def test_bound_thm1_param_and_small_doubling():
    assert abs(bound_eval("thm1_param", BoundParams(p=100, delta=1.0, C_of_K=2.0, c=3.0)) - 0.3) < 1e-12
    v = bound_eval(
        "cor1_small_doubling",
        BoundParams(K=1.0, L=1.0, size_A=2, size_B=3, p=4, c=1.0),
    )
    assert abs(v - (1 * 1 * 2 * 9 * 2 + 4 * 3)) < 1e-9


def test_bound_missing_param_and_unknown_name():
    with pytest.raises(MissingParam):
        bound_eval("thm2", BoundParams(p=101, K=2.0))
    with pytest.raises(MissingParam):
        bound_eval("no_such_bound", BoundParams())


def test_paley_profile_report():
    f = get_field(7)
    chi = legendre_character(f)
    rep = paley_profile(chi, fp(7, [1, 2]), fp(7, [3, 4]))
    assert rep.kind == "paley"
    assert rep.inputs["p"] == 7 and rep.inputs["char_order"] == 2
    assert rep.quantities["exact_numerator"] == -2
    assert rep.quantities["normalized"] == 0.5
    assert rep.quantities["K_exact"] == "3/2"
    assert rep.flags["exact"]
    # delta defaults to log_p of the smaller set size
    assert abs(rep.inputs["delta"] - math.log(2) / math.log(7)) < 1e-12
    # tau_effective solves normalized = p^(-tau)
    assert abs(float(rep.quantities["tau_effective"]) - (-math.log(0.5) / math.log(7))) < 1e-12
