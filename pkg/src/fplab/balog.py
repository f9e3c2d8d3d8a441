"""Coverage checkers: does a difference/quotient expression in A generate all
of F_p, and do the classical direction-count and quadratic-residue
decomposition inequalities hold?

Coverage is decided on the full bit mask, so results are exact; uncovered
elements are sampled (at most ten, ascending) for the record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from fplab import _kernels
from fplab.errors import EmptySet, FieldMismatch, TooSmall
from fplab.field import legendre_character
from fplab.report import Report, encode_quantity
from fplab.setalg import FpSet, difference_set, negate, quotient_set, sumset
from fplab.setexpr import eval_expr, expr_to_str, parse_expr


@dataclass(frozen=True)
class CoverageResult:
    """Whether an expression in A filled the field, with evidence."""

    expression: str
    covered: bool
    achieved: int  # size of the evaluated set
    missing_sample: list[int]  # at most 10 uncovered residues, ascending
    notes: dict = dc_field(default_factory=dict)


def coverage(expression: str, a: FpSet, notes: dict | None = None) -> CoverageResult:
    """Evaluate an expression of the single variable A and compare against F_p."""
    expr = parse_expr(expression)
    value = eval_expr(expr, {"A": a})
    p = a.field.p
    full = (1 << p) - 1
    covered = value.mask == full
    missing: list[int] = []
    if not covered:
        hole = full & ~value.mask
        missing = _kernels.mask_to_indices(hole, p)[:10].tolist()
    return CoverageResult(
        expression=expr_to_str(expr),
        covered=covered,
        achieved=len(value),
        missing_sample=missing,
        notes=notes or {},
    )


class BalogCheck(NamedTuple):
    """The three coverage checks, in the order the guarantees are stated."""

    quotient_of_doubles: CoverageResult  # (2A-2A)/(A-A)
    squared_quotient: CoverageResult  # ((A-A)/(A-A))^2 * (A-A)
    triple_over_double: CoverageResult  # (2A-2A)^3 / (2A-2A)^2


def balog_new_check(a: FpSet, c: float = 1.0) -> BalogCheck:
    """Coverage of the three below-square-root generating expressions.

    The guarantee (for |A| above exp(-c log2^{1/5} p) sqrt(p)) is that at
    least one of the first two expressions covers; the third is guaranteed on
    its own. Size-threshold data rides along in each result's notes.
    """
    if a.is_empty:
        raise EmptySet("coverage checks need a nonempty set")
    p = a.field.p
    threshold = math.exp(-c * math.log2(p) ** 0.2) * math.sqrt(p)
    notes = {
        "c": c,
        "size_threshold": threshold,
        "size_ok": len(a) >= threshold,
    }
    return BalogCheck(
        coverage("(2A-2A)/(A-A)", a, dict(notes)),
        coverage("((A-A)/(A-A))^2*(A-A)", a, dict(notes)),
        coverage("(2A-2A)^3/(2A-2A)^2", a, dict(notes)),
    )


def balog_iterated(a: FpSet, k: int) -> CoverageResult:
    """Coverage of (A-A)^{2k+1}, with the |A| >= p^(1/2 + 1/2^k) hypothesis
    evaluated and carried in notes (the check itself always runs)."""
    if a.is_empty:
        raise EmptySet("coverage checks need a nonempty set")
    if k < 1:
        raise ValueError("iteration count k must be >= 1")
    p = a.field.p
    need = p ** (0.5 + 0.5**k)
    notes = {
        "k": k,
        "size_threshold": need,
        "hypothesis_met": len(a) >= need,
    }
    return coverage(f"(A-A)^{2 * k + 1}", a, notes)


def redei_check(a: FpSet) -> Report:
    """|Q| for Q = (A-A)/(A-A) against min{p, (|A|^2+3)/2}.

    Two verdicts: the literal bound on |Q| alone (literal_holds), and the
    direction count including the vertical direction (direction_holds,
    |Q| + 1 >= bound). A = {0,1} at p = 7 shows the two differ.
    """
    if len(a) <= 1:
        raise TooSmall("redei_check needs |A| >= 2")
    p = a.field.p
    diff = difference_set(a, a)
    q = quotient_set(diff, diff)
    bound = min(Fraction(p), Fraction(len(a) ** 2 + 3, 2))
    return Report(
        kind="redei",
        inputs={"p": p, "size_A": len(a)},
        quantities={
            "size_Q": len(q),
            "bound": float(bound),
            "bound_exact": encode_quantity(bound),
            "size_diff": len(diff),
        },
        flags={
            "literal_holds": Fraction(len(q)) >= bound,
            "direction_holds": Fraction(len(q) + 1) >= bound,
        },
    )


def qr_decomposition_check(a: FpSet, b: FpSet) -> Report:
    """When A + B lands inside the quadratic residues, check
    |A||B| <= (p-1)/2 + |B n (-A)|; vacuous (and not evaluated) otherwise."""
    if a.field.p != b.field.p:
        raise FieldMismatch("A and B over different fields")
    field = a.field
    p = field.p
    chi = legendre_character(field)
    qr = FpSet(field, _kernels.indices_to_mask(np.flatnonzero(chi.sign_table == 1), p))
    sums = sumset(a, b) if not (a.is_empty or b.is_empty) else FpSet.empty(field)
    inside = sums.subset_of(qr)
    overlap = len(b.intersect(negate(a)))
    quantities = {
        "size_A": len(a),
        "size_B": len(b),
        "size_sums": len(sums),
        "overlap": overlap,
        "rhs": (p - 1) / 2 + overlap,
    }
    flags = {"sums_in_qr": inside}
    notes = []
    if inside:
        flags["inequality_holds"] = 2 * len(a) * len(b) <= (p - 1) + 2 * overlap
    else:
        notes.append("A+B is not inside the quadratic residues; inequality not evaluated")
    return Report(
        kind="qr_decomposition",
        inputs={"p": p},
        quantities=quantities,
        flags=flags,
        notes=notes,
    )
