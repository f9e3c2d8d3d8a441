"""Brute-force reference implementations.

Everything here evaluates its definition literally (full enumeration, Python
sets, per-element character evaluation) and deliberately shares no algorithmic
ideas with the fast paths it checks. The verification suite and the test
oracles both come through this module; sizes are the caller's problem.
"""

from __future__ import annotations

import itertools

import numpy as np

from fplab.field import Character, char_eval
from fplab.setalg import FpSet
from fplab.setexpr import BinOp, Dilate, Fold, SetExpr, Var, parse_expr


def sumset_naive(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {(x + y) % p for x in a for y in b}


def difference_naive(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {(x - y) % p for x in a for y in b}


def product_naive(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {(x * y) % p for x in a for y in b}


def quotient_naive(a: FpSet, b: FpSet) -> set[int]:
    p = a.field.p
    return {(x * pow(y, p - 2, p)) % p for x in a for y in b if y != 0}


def dilate_naive(a: FpSet, lam: int) -> set[int]:
    p = a.field.p
    return {(lam * x) % p for x in a}


def eval_expr_naive(expr: SetExpr | str, env: dict[str, set[int]], p: int) -> set[int]:
    """Set-expression evaluation on plain Python sets."""
    if isinstance(expr, str):
        expr = parse_expr(expr)
    if isinstance(expr, Var):
        return env[expr.name]
    if isinstance(expr, BinOp):
        left = eval_expr_naive(expr.left, env, p)
        right = eval_expr_naive(expr.right, env, p)
        if expr.op == "+":
            return {(x + y) % p for x in left for y in right}
        if expr.op == "-":
            return {(x - y) % p for x in left for y in right}
        if expr.op == "*":
            return {(x * y) % p for x in left for y in right}
        return {(x * pow(y, p - 2, p)) % p for x in left for y in right if y != 0}
    if isinstance(expr, Dilate):
        inner = eval_expr_naive(expr.inner, env, p)
        return {(expr.scalar * x) % p for x in inner}
    if isinstance(expr, Fold):
        inner = eval_expr_naive(expr.inner, env, p)
        out = set(inner)
        for _ in range(expr.k - 1):
            if expr.op == "+":
                out = {(x + y) % p for x in out for y in inner}
            else:
                out = {(x * y) % p for x in out for y in inner}
        return out
    raise TypeError(f"not a set expression: {expr!r}")


def additive_energy_naive(a: FpSet, b: FpSet) -> int:
    p = a.field.p
    return sum(
        1
        for a1, b1, a2, b2 in itertools.product(a, b, a, b)
        if (a1 + b1) % p == (a2 + b2) % p
    )


def mult_energy_naive(a: FpSet, b: FpSet) -> int:
    p = a.field.p
    return sum(
        1
        for a1, b1, a2, b2 in itertools.product(a, b, a, b)
        if (a1 * b1) % p == (a2 * b2) % p
    )


def character_sum_naive(chi: Character, a: FpSet, b: FpSet) -> complex:
    return sum(
        (char_eval(chi, (x + y)).to_complex() for x in a for y in b),
        start=0j,
    )


def moment_sum_naive(chi: Character, i_elems: list[int], r: int) -> float:
    """Double loop over all (u1, u2), literal |sum chi(u1+t) conj chi(u2+t)|^(2r)."""
    p = chi.field.p
    total = 0.0
    for u1 in range(p):
        for u2 in range(p):
            s = 0j
            for t in i_elems:
                s += char_eval(chi, u1 + t).to_complex() * char_eval(chi, u2 + t).to_complex().conjugate()
            total += abs(s) ** (2 * r)
    return total


def pair_identity_sum(chi: Character, a: int, b: int) -> complex:
    """sum_u chi(u + a) chi(u + b) over all u, by per-term evaluation."""
    return sum((char_eval(chi, u + a).to_complex() * char_eval(chi, u + b).to_complex()
                for u in range(chi.field.p)), start=0j)


def count_system_naive(a: FpSet, b: FpSet) -> int:
    """All |A|^2 |B|^4 tuples of b11/a1 = b12/a2, b21/a1 = b22/a2, by broadcasting.

    The equations are checked cross-multiplied (b11 a2 = b12 a1 etc.), which is
    equivalent since 0 is excluded from A; no grouping trick is involved.
    """
    p = a.field.p
    ea = a.elements_array()
    eb = b.elements_array()
    a1 = ea[:, None, None, None]
    a2 = ea[None, :, None, None]
    # eq[i,j,k,l]: b_k / a_i == b_l / a_j, cross-multiplied to b_k a_j == b_l a_i
    eq = ((eb[None, None, :, None] * a2) % p) == ((eb[None, None, None, :] * a1) % p)
    # both equations share (a1, a2), so the solution count factors per pair
    per_pair = eq.sum(axis=(2, 3), dtype=np.int64)
    return int((per_pair**2).sum())


def count_system_tiny(a: FpSet, b: FpSet) -> int:
    """Literal six-fold loop; only for very small inputs."""
    p = a.field.p
    inv = {x: pow(x, p - 2, p) for x in a}
    count = 0
    for a1, a2, b11, b12, b21, b22 in itertools.product(a, a, b, b, b, b):
        if (b11 * inv[a1]) % p == (b12 * inv[a2]) % p and (b21 * inv[a1]) % p == (b22 * inv[a2]) % p:
            count += 1
    return count


def count_dilate_eq_naive(a: FpSet, xi: int) -> int:
    """All |A|^6 tuples of xi (a1 - a2) = a3 + a4 - a5 - a6, by broadcasting."""
    p = a.field.p
    e = a.elements_array()
    lhs = (xi * (e[:, None] - e[None, :])) % p
    rhs = (e[:, None, None, None] + e[None, :, None, None] - e[None, None, :, None] - e[None, None, None, :]) % p
    lhs_counts = np.bincount(lhs.reshape(-1), minlength=p)
    rhs_counts = np.bincount(rhs.reshape(-1), minlength=p)
    return int(np.dot(lhs_counts.astype(np.int64), rhs_counts.astype(np.int64)))


def count_incidences_naive(points, planes) -> int:
    """Literal double loop over (point, plane)."""
    p = points.field.p
    total = 0
    for x, y, z in points.coords.tolist():
        for a, b, c, d in planes.coeffs.tolist():
            if (a * x + b * y + c * z - d) % p == 0:
                total += 1
    return total


def max_collinear_naive(points) -> int:
    """For every pair, count points on the line through it (cross-product test)."""
    n = len(points)
    if n == 1:
        return 1
    p = points.field.p
    pts = points.coords
    best = 1
    for i in range(n - 1):
        for j in range(i + 1, n):
            d = (pts[j] - pts[i]) % p
            rel = (pts - pts[i]) % p
            cross = np.stack(
                [
                    (rel[:, 1] * d[2] - rel[:, 2] * d[1]) % p,
                    (rel[:, 2] * d[0] - rel[:, 0] * d[2]) % p,
                    (rel[:, 0] * d[1] - rel[:, 1] * d[0]) % p,
                ],
                axis=1,
            )
            on_line = int(np.count_nonzero((cross == 0).all(axis=1)))
            best = max(best, on_line)
    return best
