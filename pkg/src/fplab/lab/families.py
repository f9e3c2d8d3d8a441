"""Deterministic set-family generators.

A family is a kind plus named parameters, written `kind:key=value,...`:

    interval:n=10                    {0..9}
    interval:n=5,start=3             {3..7}
    ap:start=2,step=3,n=4            {2,5,8,11}
    gap:dims=4|3,steps=1|10          {x + 10*y : x<4, y<3}
    gap:dims=4|3                     steps picked to make the box proper
    random:n=12,seed=7               12 distinct elements, PCG64(seed)
    mult_subgroup:order=3            the order-3 subgroup of F_p*
    quadratic_residues               nonzero squares
    dilate_union:base=interval,n=5,lams=1|2   A union 2*A for A={0..4}

Numeric parameters may be closed-form expressions in p, e.g.
`interval:n=ceil(p^0.5)+2`; `^` means power and the callable names are
ceil, floor, sqrt, log, log2, exp, min, max. Expressions are resolved
against a concrete field at generation time, so one family string can
drive a whole sweep over p.

Random sets use numpy's PCG64 stream; the seed is a family parameter and
is echoed into sweep reports, so a run is reproducible within one build.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from fplab._kernels import indices_to_mask
from fplab.errors import BadFamily, ZeroDilation
from fplab.field import PrimeField
from fplab.setalg import FpSet, dilate

KINDS = (
    "interval",
    "ap",
    "gap",
    "random",
    "mult_subgroup",
    "quadratic_residues",
    "dilate_union",
)

_EXPR_NAMES = {
    "ceil": math.ceil,
    "floor": math.floor,
    "sqrt": math.sqrt,
    "log": math.log,
    "log2": math.log2,
    "exp": math.exp,
    "min": min,
    "max": max,
}

_EXPR_OK = re.compile(r"^[A-Za-z0-9_+\-*/().,^ ]*$")


def eval_size_expr(expr: str, p: int) -> int:
    """Evaluate a closed-form integer expression in p.

    Only arithmetic and the names listed in the module docstring are
    allowed; anything else raises BadFamily. The result is rounded to
    the nearest integer (exprs like ceil(...) are already integral).
    """
    text = str(expr).strip()
    if not _EXPR_OK.match(text):
        raise BadFamily(f"bad characters in size expression {expr!r}")
    for name in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", text):
        if name != "p" and name not in _EXPR_NAMES:
            raise BadFamily(f"unknown name {name!r} in size expression {expr!r}")
    try:
        value = eval(text.replace("^", "**"), {"__builtins__": {}}, {"p": p, **_EXPR_NAMES})
    except Exception as exc:
        raise BadFamily(f"cannot evaluate size expression {expr!r}: {exc}") from None
    if isinstance(value, float):
        if not math.isfinite(value) or abs(value - round(value)) > 1e-9:
            raise BadFamily(f"size expression {expr!r} is not integral at p={p}")
        value = round(value)
    return int(value)


@dataclass(frozen=True)
class Family:
    kind: str
    params: tuple[tuple[str, str], ...] = ()

    def param(self, key: str, default: str | None = None) -> str | None:
        for k, v in self.params:
            if k == key:
                return v
        return default

    def __str__(self) -> str:
        return family_to_str(self)


def parse_family(spec: str) -> Family:
    """Parse `kind:key=value,...`; values may be `a|b|c` lists kept verbatim."""
    text = spec.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind not in KINDS:
        raise BadFamily(f"unknown family kind {kind!r}")
    params: list[tuple[str, str]] = []
    seen: set[str] = set()
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            value = value.strip()
            if not eq or not key or not value:
                raise BadFamily(f"bad family parameter {item!r} in {spec!r}")
            if key in seen:
                raise BadFamily(f"duplicate family parameter {key!r} in {spec!r}")
            seen.add(key)
            params.append((key, value))
    return Family(kind, tuple(params))


def family_to_str(family: Family) -> str:
    if not family.params:
        return family.kind
    return family.kind + ":" + ",".join(f"{k}={v}" for k, v in family.params)


def _int_param(family: Family, key: str, p: int, default: str | None = None) -> int:
    raw = family.param(key, default)
    if raw is None:
        raise BadFamily(f"family {family.kind!r} needs parameter {key!r}")
    return eval_size_expr(raw, p)


def _int_list_param(family: Family, key: str, p: int) -> list[int]:
    raw = family.param(key)
    if raw is None:
        raise BadFamily(f"family {family.kind!r} needs parameter {key!r}")
    return [eval_size_expr(part, p) for part in raw.split("|")]


def generate(field: PrimeField, family: Family | str) -> FpSet:
    """Build the family's set in the given field. Deterministic per (field, family)."""
    if isinstance(family, str):
        family = parse_family(family)
    p = field.p
    if family.kind == "interval":
        n = _int_param(family, "n", p)
        start = _int_param(family, "start", p, "0")
        if not 1 <= n <= p:
            raise BadFamily(f"interval size {n} out of range for p={p}")
        return FpSet.from_iterable(field, range(start, start + n))
    if family.kind == "ap":
        n = _int_param(family, "n", p)
        start = _int_param(family, "start", p, "0")
        step = _int_param(family, "step", p)
        if not 1 <= n <= p:
            raise BadFamily(f"ap length {n} out of range for p={p}")
        if step % p == 0:
            raise BadFamily("ap step is 0 mod p")
        return FpSet.from_iterable(field, (start + i * step for i in range(n)))
    if family.kind == "gap":
        return _generate_gap(field, family)
    if family.kind == "random":
        n = _int_param(family, "n", p)
        seed = _int_param(family, "seed", p, "0")
        if not 1 <= n <= p:
            raise BadFamily(f"random size {n} out of range for p={p}")
        rng = np.random.Generator(np.random.PCG64(seed))
        picks = rng.choice(p, size=n, replace=False)
        return FpSet(field, indices_to_mask(np.sort(picks).astype(np.int64), p))
    if family.kind == "mult_subgroup":
        order = _int_param(family, "order", p)
        if order < 1 or (p - 1) % order != 0:
            raise BadFamily(f"order {order} does not divide p-1={p - 1}")
        stride = (p - 1) // order
        idx = np.asarray(field.exp, dtype=np.int64)[0 : p - 1 : stride]
        return FpSet(field, indices_to_mask(np.sort(idx), p))
    if family.kind == "quadratic_residues":
        idx = np.asarray(field.exp, dtype=np.int64)[0 : p - 1 : 2]
        return FpSet(field, indices_to_mask(np.sort(idx), p))
    if family.kind == "dilate_union":
        base_kind = family.param("base")
        lams_raw = family.param("lams")
        if base_kind is None or lams_raw is None:
            raise BadFamily("dilate_union needs base= and lams=")
        inner = Family(
            base_kind,
            tuple((k, v) for k, v in family.params if k not in ("base", "lams")),
        )
        base = generate(field, inner)
        lams = [eval_size_expr(part, p) for part in lams_raw.split("|")]
        out = FpSet.empty(field)
        for lam in lams:
            try:
                out = out.union(dilate(base, lam))
            except ZeroDilation:
                raise BadFamily(f"dilate_union factor {lam} is 0 mod p") from None
        return out
    raise BadFamily(f"unknown family kind {family.kind!r}")


def _generate_gap(field: PrimeField, family: Family) -> FpSet:
    p = field.p
    dims = _int_list_param(family, "dims", p)
    if not dims or any(d < 1 for d in dims):
        raise BadFamily(f"bad gap dims {dims}")
    if family.param("steps") is not None:
        steps = _int_list_param(family, "steps", p)
        if len(steps) != len(dims):
            raise BadFamily("gap steps and dims differ in length")
    else:
        # widen each step past the previous box so coordinates never collide
        steps = [1]
        for d in dims[:-1]:
            steps.append(steps[-1] * 2 * d)
    rank = family.param("rank")
    if rank is not None and eval_size_expr(rank, p) != len(dims):
        raise BadFamily("gap rank does not match dims")
    start = _int_param(family, "start", p, "0")
    elems = [start]
    for step, d in zip(steps, dims):
        if step % p == 0:
            raise BadFamily("gap step is 0 mod p")
        elems = [e + x * step for e in elems for x in range(d)]
    return FpSet.from_iterable(field, elems)


def structure_suite(field: PrimeField) -> list[tuple[str, FpSet]]:
    """The generator battery used by the structure-pipeline checks.

    Intervals of three sizes, an AP, a rank-2 box, and two seeded random
    sets; every set is small against p so iterated sumsets stay cheap.
    """
    specs = [
        "interval:n=5",
        "interval:n=10",
        "interval:n=20",
        "ap:start=1,step=3,n=8",
        "gap:dims=4|3,steps=1|10",
        "random:n=8,seed=1",
        "random:n=12,seed=2",
    ]
    return [(spec, generate(field, parse_family(spec))) for spec in specs]
