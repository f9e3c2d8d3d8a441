"""Character sums over sumsets, windowed pair-correlation moments, and the
closed-form bound formulas they are profiled against.

Exactness rule: order-2 characters take integer-only paths (the sums are
rational integers), everything else is complex double. All logarithms in
bound formulas are base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from fplab import _kernels
from fplab.errors import EmptySet, FieldMismatch, MissingParam, NotInterval
from fplab.field import Character
from fplab.report import Report, encode_quantity
from fplab.setalg import FpSet, doubling, sumset
from fplab.spectral import cyclic_convolve, _indicator_array

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class CharSumResult:
    """sum_{a in A, b in B} chi(a + b), with |.| and the |A||B|-normalized size.

    exact_numerator carries the integer value of the sum when chi has order 2
    (those sums are exact integers); None otherwise.
    """

    value: complex
    magnitude: float
    normalized: float
    exact_numerator: int | None = None


def _check_operands(chi: Character, a: FpSet, b: FpSet) -> None:
    if a.field.p != chi.field.p or b.field.p != chi.field.p:
        raise FieldMismatch("character and sets must share a field")
    if a.is_empty or b.is_empty:
        raise EmptySet("character sums need nonempty A and B")


def character_sum(chi: Character, a: FpSet, b: FpSet) -> CharSumResult:
    """Evaluated through the sum-representation counts r_{A+B}, not |A||B| terms."""
    _check_operands(chi, a, b)
    r = cyclic_convolve(_indicator_array(a), _indicator_array(b))
    size = len(a) * len(b)
    if chi.order == 2:
        exact = int(np.dot(r, chi.sign_table))
        value = complex(exact, 0.0)
        return CharSumResult(value, abs(exact), abs(exact) / size, exact)
    value = complex(np.dot(r.astype(np.complex128), chi.value_table))
    mag = abs(value)
    return CharSumResult(value, mag, mag / size, None)


class MomentResult(NamedTuple):
    lhs: float
    rhs: int
    holds: bool
    sampled: bool = False


def interval_bounds(i_set: FpSet) -> tuple[int, int]:
    """(start, length) of a cyclic run of consecutive residues; NotInterval otherwise."""
    m = len(i_set)
    if m == 0:
        raise NotInterval("the empty set is not an interval")
    p = i_set.field.p
    if m == p:
        return 0, p
    elems = i_set.elements_array()
    gaps = np.diff(np.concatenate([elems, [elems[0] + p]]))
    big = np.flatnonzero(gaps != 1)
    if len(big) != 1:
        raise NotInterval("set is not a run of consecutive residues")
    start = int(elems[(int(big[0]) + 1) % m])
    return start, m


def moment_sum(
    chi: Character,
    i_set: FpSet,
    r: int,
    *,
    sample: int | None = None,
    seed: int = 0,
) -> MomentResult:
    """lhs = sum_{u1,u2} |sum_{t in I} chi(u1+t) conj(chi)(u2+t)|^{2r} vs the
    closed-form ceiling p^2 |I|^r r^{2r} + 4 r^2 p |I|^{2r} (strict inequality).

    Exhaustive over all p^2 pairs (u1, u2) by default; sample draws that many
    pairs instead and scales, and is flagged in the result. Order-2 characters
    accumulate exactly in integers whenever the worst case fits in int64.
    """
    if i_set.field.p != chi.field.p:
        raise FieldMismatch("character and interval must share a field")
    if r < 1:
        raise ValueError("moment order r must be >= 1")
    start, length = interval_bounds(i_set)
    p = chi.field.p
    rhs = p * p * length**r * r ** (2 * r) + 4 * r * r * p * length ** (2 * r)
    if sample is not None:
        lhs = _sampled_lhs(chi, start, length, r, sample, seed)
        return MomentResult(lhs, rhs, lhs < rhs, True)
    if chi.order == 2 and p * p * length ** (2 * r) < _INT64_SAFE:
        lhs_i = int(_kernels.pair_corr_moments_int(chi.sign_table, start, length, r)[r - 1])
        return MomentResult(lhs_i, rhs, lhs_i < rhs, False)
    lhs = float(_kernels.pair_corr_moments_complex(chi.value_table, start, length, r)[r - 1])
    return MomentResult(lhs, rhs, lhs < rhs, False)


def _sampled_lhs(chi: Character, start: int, length: int, r: int, sample: int, seed: int) -> float:
    p = chi.field.p
    rng = np.random.Generator(np.random.PCG64(seed))
    u1 = rng.integers(0, p, size=sample)
    u2 = rng.integers(0, p, size=sample)
    tab = chi.value_table
    j = np.arange(length, dtype=np.int64)
    s = np.sum(tab[(u1[:, None] + start + j) % p] * tab[(u2[:, None] + start + j) % p].conj(), axis=1)
    return float(np.mean(np.abs(s) ** (2 * r)) * p * p)


@dataclass(frozen=True)
class BoundParams:
    """Inputs for bound_eval; only the fields a formula reads need to be set."""

    p: int | None = None
    K: float | None = None
    L: float | None = None
    delta: float | None = None
    r: int | None = None
    size_I: int | None = None
    size_A: int | None = None
    size_B: int | None = None
    c: float = 1.0
    C_of_K: float | None = None


def _need(params: BoundParams, name: str, formula: str):
    v = getattr(params, name)
    if v is None:
        raise MissingParam(f"bound {formula!r} needs parameter {name!r}")
    return v


def _exp_shape(p: int, k_doubling: float, delta: float, c: float, delta_power: int) -> float:
    logp = math.log2(p)
    logk = math.log2(k_doubling)
    if logk == 0.0:
        return 0.0
    return math.exp(-c * (delta**delta_power * logp / logk**2) ** (1.0 / 3.0))


def bound_eval(name: str, params: BoundParams) -> float:
    """Closed-form bound values. Shapes:

    thm2 / thm4           exp(-c (delta^4 log p / log^2 K)^(1/3))   (normalized by |A||B|)
    thm1_param            c * p^(-delta^2 / C(K))                   (normalized by |A||B|)
    lemma1                p^2 |I|^r r^(2r) + 4 r^2 p |I|^(2r)
    cor1_small_doubling   c * (K^(5/4) L^(5/2) |A| |B|^2 log p + |A|^2 |B|)
    cor1_general          c * K^(3/2) |A| |B|^(5/2)
    """
    if name in ("thm2", "thm4"):
        return _exp_shape(
            _need(params, "p", name),
            _need(params, "K", name),
            _need(params, "delta", name),
            params.c,
            delta_power=4,
        )
    if name == "thm1_param":
        p = _need(params, "p", name)
        delta = _need(params, "delta", name)
        ck = _need(params, "C_of_K", name)
        return params.c * p ** (-(delta**2) / ck)
    if name == "lemma1":
        p = _need(params, "p", name)
        i = _need(params, "size_I", name)
        r = _need(params, "r", name)
        return p * p * i**r * r ** (2 * r) + 4 * r * r * p * i ** (2 * r)
    if name == "cor1_small_doubling":
        k = _need(params, "K", name)
        l = _need(params, "L", name)
        sa = _need(params, "size_A", name)
        sb = _need(params, "size_B", name)
        p = _need(params, "p", name)
        return params.c * (k**1.25 * l**2.5 * sa * sb**2 * math.log2(p) + sa**2 * sb)
    if name == "cor1_general":
        k = _need(params, "K", name)
        sa = _need(params, "size_A", name)
        sb = _need(params, "size_B", name)
        return params.c * k**1.5 * sa * sb**2.5
    raise MissingParam(f"unknown bound name {name!r}")


def paley_profile(
    chi: Character,
    a: FpSet,
    b: FpSet,
    delta: float | None = None,
    c: float = 1.0,
) -> Report:
    """Profile of the normalized sumset character sum against the exp-shape bounds.

    delta defaults to log_p(min(|A|, |B|)), the exponent the sets actually
    realize. Both exponent conventions of the bound (delta^4 as stated; delta
    as in the proof parameter) are reported, since the implied constants are
    not pinned down.
    """
    res = character_sum(chi, a, b)
    p = chi.field.p
    if delta is None:
        delta = math.log(min(len(a), len(b))) / math.log(p)
    stats = doubling(a, b)
    kf, lf = float(stats.K), float(stats.L)
    bound4 = _exp_shape(p, kf, delta, c, delta_power=4)
    bound1 = _exp_shape(p, kf, delta, c, delta_power=1)
    tau = -math.log(res.normalized) / math.log(p) if res.normalized > 0 else math.inf
    rep = Report(
        kind="paley",
        inputs={
            "p": p,
            "char_k": chi.k,
            "char_order": chi.order,
            "size_A": len(a),
            "size_B": len(b),
            "delta": delta,
            "c": c,
        },
        quantities={
            "sum_real": res.value.real,
            "sum_imag": res.value.imag,
            "magnitude": res.magnitude,
            "normalized": res.normalized,
            "exact_numerator": res.exact_numerator,
            "K": float(stats.K),
            "K_exact": encode_quantity(stats.K),
            "L": lf,
            "L_exact": encode_quantity(stats.L),
            "size_sumset": len(sumset(a, b)),
            "thm2_bound": bound4,
            "thm2_bound_proof_form": bound1,
            "thm4_bound": bound4,
            "tau_effective": encode_quantity(tau if math.isfinite(tau) else "inf"),
        },
        flags={
            "within_thm2_at_c": res.normalized <= bound4,
            "exact": res.exact_numerator is not None,
        },
    )
    return rep
