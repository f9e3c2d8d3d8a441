"""Command-line front end.

    fplab charsum --p 101 --A quadratic_residues --B interval:n=11
    fplab moment --p 7 --char legendre --ilen 2 --r 1
    fplab energy --p 101 --A interval:n=10 --B random:n=10,seed=3 --mult
    fplab system-count --p 31 --A '{1,2,3}' --B interval:n=4,start=1
    fplab dilate-eq --p 13 --set interval:n=4 --all-xi
    fplab incidence --p 31 --random 40 40 --seed 5
    fplab structure sanders --p 101 --set interval:n=10 --k 4
    fplab balog check --p 101 --set 'interval:n=ceil(p^0.5)+2'
    fplab generate --p 17 --family gap:dims=3|2,steps=1|6
    fplab sweep config.txt --jobs 8 --json out.json
    fplab verify --quick

Set arguments accept three forms: `@path` (set file), `{...}` (element list,
centered values allowed), or a family string. Exit codes: 0 all properties
hold, 1 a checked property failed, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from fplab import _kernels
from fplab.balog import balog_iterated, balog_new_check, qr_decomposition_check, redei_check
from fplab.charsum import character_sum, moment_sum
from fplab.errors import FplabError, SpectralMismatch
from fplab.field import PrimeField, character, legendre_character, make_field
from fplab.incidence import (
    random_plane_set,
    random_point_set,
    read_point_plane_file,
    rudnev_gap,
)
from fplab.lab.families import generate, parse_family
from fplab.lab.sweep import parse_config, run_experiment
from fplab.lab.verify import DEFAULT_PRIMES, verify_suite
from fplab.report import Report, encode_quantity, write_reports_csv, write_reports_json
from fplab.setalg import FpSet, read_set_file, write_set_file
from fplab.spectral import additive_energy, count_dilate_eq, count_system, mult_energy
from fplab.structure import bsg_extract, extract_z, sanders_greedy


def _resolve_set(field: PrimeField, spec: str) -> FpSet:
    spec = spec.strip()
    if spec.startswith("@"):
        return read_set_file(spec[1:], field)
    if spec.startswith("{") and spec.endswith("}"):
        toks = [t for t in re.split(r"[,\s]+", spec[1:-1].strip()) if t]
        return FpSet.from_iterable(field, (int(t) for t in toks))
    return generate(field, parse_family(spec))


def _resolve_char(field: PrimeField, spec: str):
    if spec == "legendre":
        return legendre_character(field)
    return character(field, int(spec))


def _add_p(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True, help="prime modulus")


def _add_outputs(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--json", metavar="OUT", help="write reports as JSON")
    sp.add_argument("--csv", metavar="OUT", help="write reports as CSV")


def _emit(args, reports: list[Report]) -> None:
    for rep in reports:
        for line in rep.summary_lines():
            print(line)
    if getattr(args, "json", None):
        write_reports_json(args.json, reports)
    if getattr(args, "csv", None):
        write_reports_csv(args.csv, reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fplab",
        description="Additive-combinatorics experiments over prime fields.",
    )
    parser.add_argument("--version", action="version", version=f"fplab (backend: {_kernels.BACKEND})")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("charsum", help="character sum over A+B")
    _add_p(sp)
    sp.add_argument("--A", required=True, help="set spec for A")
    sp.add_argument("--B", help="set spec for B (default: A)")
    sp.add_argument("--char", default="legendre", help="'legendre' or character index k")
    _add_outputs(sp)

    sp = sub.add_parser("moment", help="windowed pair-correlation moment vs its ceiling")
    _add_p(sp)
    sp.add_argument("--char", default="legendre", help="'legendre', 'all', or index k")
    sp.add_argument("--ilen", type=int, default=2, help="interval length")
    sp.add_argument("--start", type=int, default=0, help="interval start")
    sp.add_argument("--r", type=int, default=1, help="moment order")
    sp.add_argument("--sample", type=int, help="sample this many (u1,u2) pairs instead")
    sp.add_argument("--seed", type=int, default=0)
    _add_outputs(sp)

    sp = sub.add_parser("energy", help="additive (and optional multiplicative) energy")
    _add_p(sp)
    sp.add_argument("--A", required=True)
    sp.add_argument("--B", help="default: A")
    sp.add_argument("--mult", action="store_true", help="also compute multiplicative energy")
    _add_outputs(sp)

    sp = sub.add_parser("system-count", help="paired division-equation count")
    _add_p(sp)
    sp.add_argument("--A", required=True, help="set spec for A (0 must not be in A)")
    sp.add_argument("--B", required=True)
    _add_outputs(sp)

    sp = sub.add_parser("dilate-eq", help="count xi(a1-a2) = a3+a4-a5-a6 over A^6")
    _add_p(sp)
    sp.add_argument("--set", required=True, dest="set_spec", help="set spec for A")
    sp.add_argument("--xi", type=int, help="single dilation value")
    sp.add_argument("--all-xi", action="store_true", help="sweep every xi in F_p")
    _add_outputs(sp)

    sp = sub.add_parser("incidence", help="point-plane incidences and the gap bound")
    _add_p(sp)
    sp.add_argument("--file", help="point/plane file ('pt x y z' / 'pl a b c d' lines)")
    sp.add_argument("--random", nargs=2, type=int, metavar=("NPTS", "NPLANES"))
    sp.add_argument("--seed", type=int, default=0)
    _add_outputs(sp)

    sp = sub.add_parser("structure", help="structured-subset extractors")
    ssub = sp.add_subparsers(dest="subcommand", required=True)

    s2 = ssub.add_parser("extract-z", help="largest Z with d^j Z inside X-X for j < l")
    _add_p(s2)
    s2.add_argument("--set", required=True, dest="set_spec", help="set spec for X")
    s2.add_argument("--d", type=int, required=True)
    s2.add_argument("--l", type=int, required=True)
    _add_outputs(s2)

    s2 = ssub.add_parser("sanders", help="greedy well-spread X in A-A with kX in 2A-2A")
    _add_p(s2)
    s2.add_argument("--set", required=True, dest="set_spec", help="set spec for A")
    s2.add_argument("--k", type=int, required=True)
    _add_outputs(s2)

    s2 = ssub.add_parser("bsg", help="popular-sum subset extraction")
    _add_p(s2)
    s2.add_argument("--set", required=True, dest="set_spec", help="set spec for A")
    _add_outputs(s2)

    sp = sub.add_parser("balog", help="field-coverage checks")
    bsub = sp.add_subparsers(dest="subcommand", required=True)

    b2 = bsub.add_parser("check", help="the three coverage expressions")
    _add_p(b2)
    b2.add_argument("--set", required=True, dest="set_spec")
    b2.add_argument("--c", type=float, default=1.0, help="constant in the size threshold")
    _add_outputs(b2)

    b2 = bsub.add_parser("redei", help="direction-count bound on (A-A)/(A-A)")
    _add_p(b2)
    b2.add_argument("--set", required=True, dest="set_spec")
    _add_outputs(b2)

    b2 = bsub.add_parser("iterated", help="coverage of (A-A)^{2k+1}")
    _add_p(b2)
    b2.add_argument("--set", required=True, dest="set_spec")
    b2.add_argument("--k", type=int, default=1)
    _add_outputs(b2)

    b2 = bsub.add_parser("qr-decomp", help="sums-in-residues size inequality")
    _add_p(b2)
    b2.add_argument("--A", required=True)
    b2.add_argument("--B", required=True)
    _add_outputs(b2)

    sp = sub.add_parser("generate", help="materialize a set family")
    _add_p(sp)
    sp.add_argument("--family", required=True)
    sp.add_argument("--out", help="write a set file here")
    sp.add_argument("--centered", action="store_true", help="print centered representatives")

    sp = sub.add_parser("sweep", help="run a config-driven experiment sweep")
    sp.add_argument("config", help="path to the key=value config file")
    sp.add_argument("--jobs", type=int, help="worker processes (overrides the config)")
    _add_outputs(sp)

    sp = sub.add_parser("verify", help="run the verification suite")
    sp.add_argument("--quick", action="store_true", help="p=7 only")
    sp.add_argument("--primes", help="space-separated prime list")
    sp.add_argument("--seed", type=int, default=0)
    _add_outputs(sp)

    return parser


def _cmd_charsum(args) -> int:
    field = make_field(args.p)
    a = _resolve_set(field, args.A)
    b = _resolve_set(field, args.B) if args.B else a
    chi = _resolve_char(field, args.char)
    res = character_sum(chi, a, b)
    rep = Report(
        kind="charsum",
        inputs={"p": args.p, "char_k": chi.k, "size_A": len(a), "size_B": len(b)},
        quantities={
            "sum_real": res.value.real,
            "sum_imag": res.value.imag,
            "magnitude": res.magnitude,
            "normalized": res.normalized,
            "exact_numerator": res.exact_numerator,
        },
        flags={"exact": res.exact_numerator is not None},
    )
    _emit(args, [rep])
    return 0


def _cmd_moment(args) -> int:
    field = make_field(args.p)
    i_set = FpSet.from_iterable(field, range(args.start, args.start + args.ilen))
    ks = range(1, args.p - 1) if args.char == "all" else [None]
    reports = []
    all_hold = True
    for k in ks:
        chi = _resolve_char(field, args.char) if k is None else character(field, k)
        res = moment_sum(chi, i_set, args.r, sample=args.sample, seed=args.seed)
        all_hold = all_hold and res.holds
        reports.append(
            Report(
                kind="moment",
                inputs={"p": args.p, "char_k": chi.k, "ilen": args.ilen,
                        "start": args.start, "r": args.r},
                quantities={"lhs": res.lhs, "rhs": res.rhs},
                flags={"holds": res.holds, "sampled": res.sampled},
            )
        )
    _emit(args, reports)
    return 0 if all_hold else 1


def _cmd_energy(args) -> int:
    field = make_field(args.p)
    a = _resolve_set(field, args.A)
    b = _resolve_set(field, args.B) if args.B else a
    ea = additive_energy(a, b)
    quantities = {"additive_direct": ea.direct_count, "additive_spectral": ea.spectral_value}
    flags = {"additive_agree": ea.agreement}
    if args.mult:
        em = mult_energy(a, b)
        quantities.update({"mult_direct": em.direct_count, "mult_spectral": em.spectral_value})
        flags["mult_agree"] = em.agreement
    rep = Report(
        kind="energy",
        inputs={"p": args.p, "size_A": len(a), "size_B": len(b)},
        quantities=quantities,
        flags=flags,
    )
    _emit(args, [rep])
    return 0 if all(flags.values()) else 1


def _cmd_system_count(args) -> int:
    field = make_field(args.p)
    a = _resolve_set(field, args.A)
    b = _resolve_set(field, args.B)
    count = count_system(a, b)
    rep = Report(
        kind="system",
        inputs={"p": args.p, "size_A": len(a), "size_B": len(b)},
        quantities={"count": count, "trivial": len(a) ** 2 * len(b) ** 4},
        flags={},
    )
    _emit(args, [rep])
    return 0


def _cmd_dilate_eq(args) -> int:
    field = make_field(args.p)
    a = _resolve_set(field, args.set_spec)
    if args.all_xi:
        xis = list(range(args.p))
    elif args.xi is not None:
        xis = [args.xi % args.p]
    else:
        print("dilate-eq needs --xi or --all-xi", file=sys.stderr)
        return 2
    reports = []
    floor_ok = True
    for xi in xis:
        count = count_dilate_eq(a, xi)  # raises SpectralMismatch on contract breaks
        ok = count * args.p >= len(a) ** 6
        floor_ok = floor_ok and ok
        reports.append(
            Report(
                kind="dilate_eq",
                inputs={"p": args.p, "xi": xi, "size_A": len(a)},
                quantities={"count": count},
                flags={"above_floor": ok},
            )
        )
    _emit(args, reports)
    return 0 if floor_ok else 1


def _cmd_incidence(args) -> int:
    field = make_field(args.p)
    if args.file and args.random:
        print("incidence takes --file or --random, not both", file=sys.stderr)
        return 2
    if args.file:
        points, planes = read_point_plane_file(args.file)
        if points.field.p != args.p:
            print(f"file modulus {points.field.p} != --p {args.p}", file=sys.stderr)
            return 2
    elif args.random:
        rng = np.random.Generator(np.random.PCG64(args.seed))
        points = random_point_set(field, args.random[0], rng)
        planes = random_plane_set(field, args.random[1], rng)
    else:
        print("incidence needs --file or --random", file=sys.stderr)
        return 2
    rep = rudnev_gap(points, planes)
    _emit(args, [rep])
    return 0


def _cmd_structure(args) -> int:
    field = make_field(args.p)
    a = _resolve_set(field, args.set_spec)
    if args.subcommand == "extract-z":
        z = extract_z(a, args.d, args.l)
        rep = Report(
            kind="extract_z",
            inputs={"p": args.p, "d": args.d, "l": args.l, "size_X": len(a)},
            quantities={
                "size_Z": len(z),
                "Z_centered": " ".join(map(str, z.centered_elements())),
            },
            flags={"nonempty": not z.is_empty},
        )
        _emit(args, [rep])
        return 0
    if args.subcommand == "sanders":
        x_set, res = sanders_greedy(a, args.k)
        rep = Report(
            kind="sanders",
            inputs={"p": args.p, "k": args.k, "size_A": len(a)},
            quantities={
                "size_X": len(x_set),
                "size_ratio": encode_quantity(res.size_ratio),
                "floor_value": res.floor_value,
                "X_centered": " ".join(map(str, x_set.centered_elements())),
            },
            flags={"verified": res.verified},
        )
        _emit(args, [rep])
        return 0 if res.verified else 1
    res = bsg_extract(a)
    rep = Report(
        kind="bsg",
        inputs={"p": args.p, "size_A": len(a)},
        quantities={
            "size_subset": len(res.subset),
            "energy": res.energy,
            "K_in": encode_quantity(res.k_in),
            "threshold": encode_quantity(res.threshold),
            "size_ratio": encode_quantity(res.size_ratio),
            "doubling_out": encode_quantity(res.doubling_out),
        },
        flags={"proper_subset": len(res.subset) < len(a)},
    )
    _emit(args, [rep])
    return 0


def _cmd_balog(args) -> int:
    field = make_field(args.p)
    if args.subcommand == "qr-decomp":
        a = _resolve_set(field, args.A)
        b = _resolve_set(field, args.B)
        rep = qr_decomposition_check(a, b)
        _emit(args, [rep])
        violated = rep.flags.get("sums_in_qr") and rep.flags.get("inequality_holds") is False
        return 1 if violated else 0
    a = _resolve_set(field, args.set_spec)
    if args.subcommand == "check":
        check = balog_new_check(a, c=args.c)
        reports = []
        for cov in check:
            reports.append(
                Report(
                    kind="balog_coverage",
                    inputs={"p": args.p, "size_A": len(a), "expression": cov.expression},
                    quantities={
                        "achieved": cov.achieved,
                        "missing_sample": " ".join(map(str, cov.missing_sample)),
                        "size_threshold": cov.notes.get("size_threshold"),
                    },
                    flags={"covered": cov.covered, "size_ok": bool(cov.notes.get("size_ok"))},
                )
            )
        _emit(args, reports)
        size_ok = bool(check.quotient_of_doubles.notes.get("size_ok"))
        disjunction = check.quotient_of_doubles.covered or check.squared_quotient.covered
        return 1 if (size_ok and not disjunction) else 0
    if args.subcommand == "redei":
        rep = redei_check(a)
        _emit(args, [rep])
        return 0 if rep.flags["direction_holds"] else 1
    cov = balog_iterated(a, args.k)
    rep = Report(
        kind="balog_iterated",
        inputs={"p": args.p, "size_A": len(a), "k": args.k, "expression": cov.expression},
        quantities={
            "achieved": cov.achieved,
            "missing_sample": " ".join(map(str, cov.missing_sample)),
            "size_threshold": cov.notes["size_threshold"],
        },
        flags={"covered": cov.covered, "hypothesis_met": bool(cov.notes["hypothesis_met"])},
    )
    _emit(args, [rep])
    return 1 if (cov.notes["hypothesis_met"] and not cov.covered) else 0


def _cmd_generate(args) -> int:
    field = make_field(args.p)
    a = generate(field, parse_family(args.family))
    elems = a.centered_elements() if args.centered else a.elements()
    print(f"p {args.p}")
    print(" ".join(map(str, elems)))
    if args.out:
        write_set_file(args.out, a)
    return 0


def _sweep_violations(reports: list[Report]) -> bool:
    for rep in reports:
        f = rep.flags
        if f.get("holds") is False:
            return True
        if f.get("sanders_verified") is False or f.get("inclusion_verified") is False:
            return True
        if f.get("direction_holds") is False:
            return True
        if f.get("size_ok") and f.get("disjunction") is False:
            return True
    return False


def _cmd_sweep(args) -> int:
    text = Path(args.config).read_text()
    config = parse_config(text)
    jobs = args.jobs if args.jobs is not None else int(config["params"].get("jobs", 1))
    reports = run_experiment(config, jobs=jobs)
    _emit(args, reports)
    return 1 if _sweep_violations(reports) else 0


def _cmd_verify(args) -> int:
    if args.quick:
        primes: tuple[int, ...] = (7,)
    elif args.primes:
        primes = tuple(int(t) for t in args.primes.split())
    else:
        primes = DEFAULT_PRIMES
    rep = verify_suite(primes=primes, seed=args.seed)
    _emit(args, [rep])
    return 0 if rep.flags["all_passed"] else 1


_DISPATCH = {
    "charsum": _cmd_charsum,
    "moment": _cmd_moment,
    "energy": _cmd_energy,
    "system-count": _cmd_system_count,
    "dilate-eq": _cmd_dilate_eq,
    "incidence": _cmd_incidence,
    "structure": _cmd_structure,
    "balog": _cmd_balog,
    "generate": _cmd_generate,
    "sweep": _cmd_sweep,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except SpectralMismatch as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 1
    except FplabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
