"""Config-driven experiment sweeps with order-stable, reproducible output.

A config is flat `key=value` lines ('#' starts a comment). Keys of the form
`range.<axis>` declare sweep axes and may repeat; every other key is a scalar
parameter. Axis values are whitespace-separated tokens, each an integer,
`lo..hi` (inclusive), or `primes(lo,hi)`; the `p` axis keeps only primes and
rejects explicit non-primes. The `family` axis takes family strings verbatim.

    kind=moment
    range.p=7..97
    range.r=1 2
    char=all

One Report per point of the axis product. Job order is the product order with
p varying slowest, then family, then the remaining axes by name; results come
back in that order no matter how many workers ran them, and reports carry no
wall-clock state, so a config pins its output byte for byte.

Randomized jobs draw from PCG64 seeded by SeedSequence([seed, job_index]):
reproducible within a build, and independent across jobs.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from fplab.balog import balog_new_check
from fplab.charsum import moment_sum, paley_profile
from fplab.errors import BadConfig, FplabError
from fplab.field import Character, character, is_prime, legendre_character, make_field
from fplab.incidence import random_plane_set, random_point_set, rudnev_gap
from fplab.lab.families import eval_size_expr, generate, parse_family
from fplab.report import Report
from fplab.setalg import FpSet, doubling
from fplab.spectral import count_system
from fplab.structure import structure_pipeline

SWEEP_KINDS = ("paley", "moment", "system", "incidence", "structure-pipeline", "balog")

_RANGE_TOKEN = re.compile(r"^primes\((\d+),(\d+)\)$")


def parse_config(text: str) -> dict:
    """Parse config text to {"kind", "params", "axes"}; axes are expanded lists."""
    params: dict[str, str] = {}
    ranges: dict[str, list[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not eq or not key:
            raise BadConfig(f"line {lineno}: expected key=value, got {raw!r}")
        if key.startswith("range."):
            axis = key[len("range.") :]
            if not axis:
                raise BadConfig(f"line {lineno}: empty axis name")
            ranges.setdefault(axis, []).extend(value.split())
        else:
            if key in params:
                raise BadConfig(f"line {lineno}: duplicate key {key!r}")
            params[key] = value
    kind = params.pop("kind", None)
    if kind is None:
        raise BadConfig("config has no kind=")
    if kind not in SWEEP_KINDS:
        raise BadConfig(f"unknown sweep kind {kind!r}; expected one of {SWEEP_KINDS}")
    axes = {name: _expand_axis(name, toks) for name, toks in ranges.items()}
    for name, values in axes.items():
        if not values:
            raise BadConfig(f"axis {name!r} expanded to nothing")
    return {"kind": kind, "params": params, "axes": axes}


def _expand_axis(name: str, tokens: list[str]) -> list:
    if name == "family":
        return list(tokens)
    out: list[int] = []
    for tok in tokens:
        m = _RANGE_TOKEN.match(tok)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            out.extend(x for x in range(lo, hi + 1) if is_prime(x))
            continue
        if ".." in tok:
            lo_s, _, hi_s = tok.partition("..")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise BadConfig(f"bad range token {tok!r} on axis {name!r}") from None
            values = range(lo, hi + 1)
            out.extend(x for x in values if name != "p" or is_prime(x))
            continue
        try:
            v = int(tok)
        except ValueError:
            raise BadConfig(f"bad token {tok!r} on axis {name!r}") from None
        if name == "p" and not is_prime(v):
            raise BadConfig(f"axis p value {v} is not prime")
        out.append(v)
    return out


def _axis_order(axes: dict) -> list[str]:
    head = [n for n in ("p", "family") if n in axes]
    tail = sorted(n for n in axes if n not in ("p", "family"))
    return head + tail


def build_jobs(config: dict) -> list[dict]:
    """The axis product in output order: p slowest, then family, then the rest."""
    names = _axis_order(config["axes"])
    jobs: list[dict] = [{}]
    for name in names:
        jobs = [{**j, name: v} for j in jobs for v in config["axes"][name]]
    return jobs


def _eff(config: dict, job: dict) -> dict:
    return {**config["params"], **job}


def _get_int(eff: dict, name: str, p: int, default: str | None = None) -> int:
    raw = eff.get(name, default)
    if raw is None:
        raise BadConfig(f"sweep needs parameter {name!r}")
    if isinstance(raw, int):
        return raw
    return eval_size_expr(str(raw), p)


def _get_float(eff: dict, name: str, default: float) -> float:
    raw = eff.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise BadConfig(f"parameter {name!r} is not a number: {raw!r}") from None


def _get_char(eff: dict, field, default: str = "legendre") -> Character:
    raw = str(eff.get("char", default))
    if raw == "legendre":
        return legendre_character(field)
    try:
        k = int(raw)
    except ValueError:
        raise BadConfig(f"char must be 'legendre' or an integer index, got {raw!r}") from None
    return character(field, k)


def _job_rng(eff: dict, index: int) -> tuple[int, np.random.Generator]:
    seed = int(eff.get("seed", 0))
    return seed, np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def _random_subset(field, n: int, rng: np.random.Generator, nonzero: bool) -> FpSet:
    p = field.p
    pool = np.arange(1 if nonzero else 0, p)
    if n > len(pool):
        raise BadConfig(f"cannot draw {n} distinct elements from {len(pool)}")
    picks = rng.choice(pool, size=n, replace=False)
    return FpSet.from_iterable(field, picks.tolist())


def _run_job(payload: tuple) -> Report:
    kind, params, job, index = payload
    eff = {**params, **job}
    p = int(eff["p"])
    field = make_field(p)

    if kind == "paley":
        fam_a = str(eff.get("family", eff.get("A", "quadratic_residues")))
        fam_b = str(eff.get("B", fam_a))
        a = generate(field, parse_family(fam_a))
        b = generate(field, parse_family(fam_b))
        chi = _get_char(eff, field)
        delta = float(eff["delta"]) if "delta" in eff else None
        rep = paley_profile(chi, a, b, delta=delta, c=_get_float(eff, "c", 1.0))
        rep.inputs["family_A"] = fam_a
        rep.inputs["family_B"] = fam_b
        return rep

    if kind == "moment":
        r = _get_int(eff, "r", p, "1")
        ilen_max = _get_int(eff, "ilen_max", p, "6")
        char_spec = str(eff.get("char", "all"))
        if char_spec == "all":
            ks: list[int] | range = range(1, p - 1)
        elif char_spec == "legendre":
            ks = [(p - 1) // 2]
        else:
            try:
                ks = [int(char_spec)]
            except ValueError:
                raise BadConfig(f"char must be 'all', 'legendre', or an index: {char_spec!r}") from None
        checked = 0
        min_margin = math.inf
        all_hold = True
        for k in ks:
            chi = character(field, k)
            for ilen in range(1, ilen_max + 1):
                i_set = FpSet.from_iterable(field, range(ilen))
                res = moment_sum(chi, i_set, r)
                checked += 1
                all_hold = all_hold and res.holds
                min_margin = min(min_margin, res.rhs - res.lhs)
        if checked == 0:
            min_margin = 0
        return Report(
            kind="moment",
            inputs={"p": p, "r": r, "char": char_spec, "ilen_max": ilen_max},
            quantities={"n_checked": checked, "min_margin": min_margin},
            flags={"holds": all_hold},
        )

    if kind == "system":
        seed, rng = _job_rng(eff, index)
        na = _get_int(eff, "size_a", p, "8")
        nb = _get_int(eff, "size_b", p, "8")
        a = _random_subset(field, na, rng, nonzero=True)
        b = _random_subset(field, nb, rng, nonzero=False)
        count = count_system(a, b)
        stats = doubling(a, b)
        return Report(
            kind="system",
            inputs={"p": p, "size_a": na, "size_b": nb, "seed": seed, "job": index},
            quantities={
                "count": count,
                "K": float(stats.K),
                "L": float(stats.L),
                "trivial": na * na * nb**4,
            },
            flags={},
        )

    if kind == "incidence":
        seed, rng = _job_rng(eff, index)
        n = _get_int(eff, "n_points", p, "min(p, 20)")
        m = _get_int(eff, "n_planes", p, "min(p, 20)")
        pts = random_point_set(field, n, rng)
        pls = random_plane_set(field, m, rng)
        rep = rudnev_gap(pts, pls)
        rep.inputs["seed"] = seed
        rep.inputs["job"] = index
        return rep

    if kind == "structure-pipeline":
        fam = str(eff.get("family", eff.get("A", "interval:n=10")))
        d = _get_int(eff, "d", p, "2")
        l = _get_int(eff, "l", p, "1")
        a = generate(field, parse_family(fam))
        out = structure_pipeline(a, d, l)
        return Report(
            kind="structure_pipeline",
            inputs={"p": p, "family": fam, "d": d, "l": l},
            quantities={
                "k": out["k"],
                "k_alt_convention": out["k_alt_convention"],
                "size_A": len(a),
                "size_X": len(out["x_set"]),
                "size_Z": len(out["z_set"]),
            },
            flags={
                "sanders_verified": out["sanders"].verified,
                "inclusion_verified": out["cert"].verified,
                "z_nonempty": not out["z_set"].is_empty,
            },
        )

    if kind == "balog":
        fam = str(eff.get("family", eff.get("A", "interval:n=ceil(p^0.5)+2")))
        a = generate(field, parse_family(fam))
        check = balog_new_check(a, c=_get_float(eff, "c", 1.0))
        first = check.quotient_of_doubles
        return Report(
            kind="balog",
            inputs={"p": p, "family": fam, "size_A": len(a)},
            quantities={
                "achieved_quotient_of_doubles": check.quotient_of_doubles.achieved,
                "achieved_squared_quotient": check.squared_quotient.achieved,
                "achieved_triple_over_double": check.triple_over_double.achieved,
                "size_threshold": first.notes["size_threshold"],
            },
            flags={
                "covered_quotient_of_doubles": check.quotient_of_doubles.covered,
                "covered_squared_quotient": check.squared_quotient.covered,
                "covered_triple_over_double": check.triple_over_double.covered,
                "disjunction": check.quotient_of_doubles.covered or check.squared_quotient.covered,
                "size_ok": bool(first.notes["size_ok"]),
            },
        )

    raise BadConfig(f"unknown sweep kind {kind!r}")


def run_experiment(config: dict, jobs: int = 1) -> list[Report]:
    """Run every job of the config; output order is the build_jobs order."""
    if "p" not in config["axes"]:
        raise BadConfig("every sweep needs a range.p axis")
    job_list = build_jobs(config)
    payloads = [(config["kind"], config["params"], job, i) for i, job in enumerate(job_list)]
    if jobs <= 1 or len(payloads) <= 1:
        return [_run_job(pl) for pl in payloads]
    results: list[Report | None] = [None] * len(payloads)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for i, rep in zip(range(len(payloads)), pool.map(_run_job, payloads)):
            results[i] = rep
    return [r for r in results if r is not None]


def run_config_text(text: str, jobs: int | None = None) -> list[Report]:
    """Parse and run; a `jobs=` config key supplies the default worker count."""
    config = parse_config(text)
    if jobs is None:
        jobs = int(config["params"].get("jobs", 1))
    return run_experiment(config, jobs=jobs)
