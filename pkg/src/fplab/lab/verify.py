"""Self-contained verification suite.

Every module's contracts are re-checked here at small sizes against the
brute-force oracles, each under a stable dotted name. The result is a single
Report whose flags map check names to pass/fail; failures are data, not
exceptions, so the suite always completes. The CLI turns the overall verdict
into an exit status.

`field_override` swaps in externally built PrimeField instances by modulus;
the test suite uses it to inject a corrupted dlog table and watch exactly the
round-trip property fail.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from fplab import _kernels, oracles
from fplab.balog import balog_new_check, redei_check
from fplab.charsum import character_sum, moment_sum
from fplab.errors import FplabError
from fplab.field import PrimeField, character, legendre_character, make_field
from fplab.incidence import (
    count_incidences,
    max_collinear,
    random_plane_set,
    random_point_set,
    skew_family,
    skew_solution_count,
)
from fplab.lab.families import generate, parse_family
from fplab.lab.sweep import parse_config, run_experiment
from fplab.report import Report, reports_to_json
from fplab.setalg import (
    FpSet,
    difference_set,
    dilate,
    fold_sum,
    product_set,
    quotient_set,
    sumset,
)
from fplab.setexpr import eval_expr, expr_to_str, parse_expr
from fplab.spectral import (
    additive_energy,
    count_dilate_eq,
    count_system,
    cyclic_convolve,
    dft_direct,
    mult_energy,
)
from fplab.structure import bsg_extract, extract_z, sanders_greedy, structure_pipeline

DEFAULT_PRIMES = (7, 11, 31)


@dataclass
class _Ctx:
    primes: tuple[int, ...]
    rng: np.random.Generator
    fields: dict[int, PrimeField] = dc_field(default_factory=dict)
    failures: list[str] = dc_field(default_factory=list)
    checked: int = 0

    def field(self, p: int) -> PrimeField:
        if p not in self.fields:
            self.fields[p] = make_field(p)
        return self.fields[p]

    def expect(self, ok: bool, detail: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(detail)

    def random_set(self, p: int, n: int, nonzero: bool = False) -> FpSet:
        lo = 1 if nonzero else 0
        picks = self.rng.choice(np.arange(lo, p), size=min(n, p - lo), replace=False)
        return FpSet.from_iterable(self.field(p), picks.tolist())


def _check_dlog_roundtrip(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        x = np.arange(1, p)
        ctx.expect(bool(np.array_equal(f.exp[f.dlog[x]], x)), f"exp(dlog(x)) != x at p={p}")
        t = np.arange(p - 1)
        ctx.expect(bool(np.array_equal(f.dlog[f.exp[t]], t)), f"dlog(exp(t)) != t at p={p}")
        ctx.expect(int(f.dlog[0]) == -1, f"dlog(0) sentinel wrong at p={p}")


def _check_char_multiplicative(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        for k in {1, 3 % (p - 1), (p - 1) // 2} - {0}:
            chi = character(f, k)
            it = chi.index_table
            x = np.arange(1, p)
            prod_idx = it[np.outer(x, x) % p]
            sum_idx = (it[x][:, None] + it[x][None, :]) % (p - 1)
            ctx.expect(
                bool(np.array_equal(prod_idx, sum_idx)),
                f"chi_{k} not multiplicative at p={p}",
            )


def _check_char_sum_zero(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        for k in range(1, p - 1):
            total = complex(character(f, k).value_table.sum())
            ctx.expect(abs(total) < 1e-9 * p, f"sum chi_{k} = {total} != 0 at p={p}")


def _check_pair_identity(ctx: _Ctx) -> None:
    # sum_u chi(u+a) chi(u+b) = -1 for the quadratic character, a != b
    for p in ctx.primes:
        f = ctx.field(p)
        chi = legendre_character(f)
        for a in range(min(p, 4)):
            for b in range(a + 1, min(p, 5)):
                brute = oracles.pair_identity_sum(chi, a, b)
                ctx.expect(abs(brute + 1) < 1e-9 * p, f"pair identity ({a},{b}) at p={p}: {brute}")


def _check_setalg_oracles(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        for _ in range(4):
            a = ctx.random_set(p, 4)
            b = ctx.random_set(p, 3)
            ctx.expect(set(sumset(a, b)) == oracles.sumset_naive(a, b), f"sumset at p={p}")
            ctx.expect(
                set(difference_set(a, b)) == oracles.difference_naive(a, b),
                f"difference at p={p}",
            )
            ctx.expect(
                set(product_set(a, b)) == oracles.product_naive(a, b), f"product at p={p}"
            )
            ctx.expect(
                set(quotient_set(a, b)) == oracles.quotient_naive(a, b), f"quotient at p={p}"
            )
            lam = int(ctx.rng.integers(1, p))
            ctx.expect(set(dilate(a, lam)) == oracles.dilate_naive(a, lam), f"dilate at p={p}")
            if not a.is_empty and not b.is_empty:
                n_ab = len(sumset(a, b))
                ctx.expect(
                    n_ab >= min(p, len(a) + len(b) - 1),
                    f"Cauchy-Davenport violated at p={p}: |A+B|={n_ab}",
                )


def _check_setexpr(ctx: _Ctx) -> None:
    exprs = ["A+B", "2A-2A", "(A-A)/(A-A)", "3·A+B", "(2A-2A)^3/(2A-2A)^2", "-1·A"]
    for text in exprs:
        tree = parse_expr(text)
        ctx.expect(parse_expr(expr_to_str(tree)) == tree, f"round-trip failed for {text!r}")
    p = ctx.primes[0]
    for _ in range(3):
        a = ctx.random_set(p, 3)
        b = ctx.random_set(p, 3)
        if a.is_empty or b.is_empty:
            continue
        env = {"A": a, "B": b}
        nenv = {"A": set(a), "B": set(b)}
        for text in exprs:
            got = set(eval_expr(text, env))
            want = oracles.eval_expr_naive(text, nenv, p)
            ctx.expect(got == want, f"eval {text!r} mismatch at p={p}")


def _check_plancherel(ctx: _Ctx) -> None:
    for p in ctx.primes:
        for _ in range(3):
            fvals = ctx.rng.integers(-5, 6, size=p).astype(np.int64)
            gvals = ctx.rng.integers(-5, 6, size=p).astype(np.int64)
            fhat = dft_direct(fvals)
            lhs = float((fhat * fhat.conj()).real.sum())
            rhs = float(p * np.dot(fvals, fvals))
            ctx.expect(abs(lhs - rhs) < 1e-9 * p * max(1.0, rhs), f"Plancherel at p={p}")
            conv = cyclic_convolve(fvals, gvals)
            lhs2 = dft_direct(conv)
            rhs2 = dft_direct(fvals) * dft_direct(gvals)
            err = float(np.abs(lhs2 - rhs2).max())
            ctx.expect(err < 1e-9 * p * max(1.0, float(np.abs(rhs2).max())),
                       f"convolution theorem at p={p}")


def _check_energies(ctx: _Ctx) -> None:
    for p in ctx.primes:
        for _ in range(3):
            a = ctx.random_set(p, 4)
            b = ctx.random_set(p, 4)
            if a.is_empty or b.is_empty:
                continue
            ea = additive_energy(a, b)
            ctx.expect(ea.agreement, f"E+ spectral disagreement at p={p}")
            ctx.expect(
                ea.direct_count == oracles.additive_energy_naive(a, b),
                f"E+ oracle mismatch at p={p}",
            )
            em = mult_energy(a, b)
            ctx.expect(em.agreement, f"Ex spectral disagreement at p={p}")
            ctx.expect(
                em.direct_count == oracles.mult_energy_naive(a, b),
                f"Ex oracle mismatch at p={p}",
            )


def _check_count_system(ctx: _Ctx) -> None:
    for p in ctx.primes:
        for _ in range(3):
            a = ctx.random_set(p, 3, nonzero=True)
            b = ctx.random_set(p, 3)
            if a.is_empty or b.is_empty:
                continue
            ctx.expect(
                count_system(a, b) == oracles.count_system_naive(a, b),
                f"count_system oracle mismatch at p={p}",
            )


def _check_count_dilate(ctx: _Ctx) -> None:
    p = ctx.primes[0]
    for _ in range(2):
        a = ctx.random_set(p, 3)
        if a.is_empty:
            continue
        for xi in range(p):
            got = count_dilate_eq(a, xi)
            ctx.expect(
                got == oracles.count_dilate_eq_naive(a, xi),
                f"count_dilate_eq oracle mismatch at p={p}, xi={xi}",
            )
            ctx.expect(
                got * p >= len(a) ** 6,
                f"count_dilate_eq below |A|^6/p at p={p}, xi={xi}",
            )


def _check_charsum(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        chi = legendre_character(f)
        for _ in range(2):
            a = ctx.random_set(p, 3)
            b = ctx.random_set(p, 3)
            if a.is_empty or b.is_empty:
                continue
            got = character_sum(chi, a, b)
            want = oracles.character_sum_naive(chi, a, b)
            ctx.expect(
                abs(got.value - want) < 1e-9 * len(a) * len(b),
                f"character_sum oracle mismatch at p={p}",
            )
        i_set = FpSet.from_iterable(f, range(2))
        for r in (1, 2):
            res = moment_sum(chi, i_set, r)
            ctx.expect(res.holds, f"moment bound fails at p={p}, r={r}")
            brute = oracles.moment_sum_naive(chi, list(range(2)), r)
            ctx.expect(
                abs(res.lhs - brute) < 1e-6 * max(1.0, brute),
                f"moment oracle mismatch at p={p}, r={r}",
            )


def _check_incidence(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        pts = random_point_set(f, min(8, p), ctx.rng)
        pls = random_plane_set(f, min(8, p), ctx.rng)
        ctx.expect(
            count_incidences(pts, pls) == oracles.count_incidences_naive(pts, pls),
            f"incidence count mismatch at p={p}",
        )
        ctx.expect(
            max_collinear(pts) == oracles.max_collinear_naive(pts),
            f"max_collinear mismatch at p={p}",
        )
        a = ctx.random_set(p, 3, nonzero=True)
        b = ctx.random_set(p, 2, nonzero=True)
        if not a.is_empty and not b.is_empty:
            fam_pts, fam_pls = skew_family(a, b)
            ctx.expect(
                count_incidences(fam_pts, fam_pls) == skew_solution_count(a, b),
                f"skew incidence/sigma mismatch at p={p}",
            )


def _check_structure(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        a = FpSet.from_iterable(f, range(min(5, p - 2)))
        res = bsg_extract(a)
        ctx.expect(res.subset.subset_of(a), f"BSG subset not inside A at p={p}")
        ctx.expect(not res.subset.is_empty, f"BSG subset empty at p={p}")
        ctx.expect(
            res.energy == oracles.additive_energy_naive(a, a),
            f"BSG energy mismatch at p={p}",
        )
        x_set, sres = sanders_greedy(a, 2)
        ctx.expect(sres.verified, f"Sanders certificate failed at p={p}")
        ctx.expect(
            x_set.subset_of(difference_set(a, a)),
            f"Sanders X not inside A-A at p={p}",
        )
        ctx.expect(
            fold_sum(x_set, 2).subset_of(difference_set(sumset(a, a), sumset(a, a))),
            f"Sanders 2X escapes 2A-2A at p={p}",
        )
        if p >= 11:
            out = structure_pipeline(a, 2, 1)
            ctx.expect(out["cert"].verified, f"pipeline certificate failed at p={p}")
            _expect_z_maximal(ctx, out["x_set"], out["z_set"], 2, 1, p)


def _expect_z_maximal(ctx: _Ctx, x_set: FpSet, z_set: FpSet, d: int, l: int, p: int) -> None:
    diff = difference_set(x_set, x_set)
    for z in range(p):
        inside = all(((d**j * z) % p) in diff for j in range(l))
        ctx.expect(
            (z in z_set) == inside,
            f"extract_z not maximal at p={p}: z={z} inside={inside}",
        )


def _check_balog(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        a = FpSet.from_iterable(f, range(min(3, p - 1)))
        if len(a) >= 2:
            rep = redei_check(a)
            ctx.expect(rep.flags["direction_holds"], f"redei direction bound fails at p={p}")
        check = balog_new_check(FpSet.from_iterable(f, range(min(4, p - 1))))
        # coverage results must agree with naive evaluation of the same expressions
        a4 = FpSet.from_iterable(f, range(min(4, p - 1)))
        for cov in check:
            want = oracles.eval_expr_naive(cov.expression, {"A": set(a4)}, p)
            ctx.expect(
                cov.achieved == len(want) and cov.covered == (len(want) == p),
                f"coverage mismatch for {cov.expression!r} at p={p}",
            )


def _check_generators(ctx: _Ctx) -> None:
    for p in ctx.primes:
        f = ctx.field(p)
        n = min(5, p)
        ctx.expect(len(generate(f, parse_family(f"interval:n={n}"))) == n, f"|interval| at p={p}")
        qr = generate(f, parse_family("quadratic_residues"))
        ctx.expect(len(qr) == (p - 1) // 2, f"|quadratic_residues| at p={p}")
        for order in (1, 2, (p - 1) // 2, p - 1):
            sub = generate(f, parse_family(f"mult_subgroup:order={order}"))
            ctx.expect(
                set(product_set(sub, sub)) == set(sub),
                f"mult_subgroup(order={order}) not closed at p={p}",
            )
        r1 = generate(f, parse_family("random:n=3,seed=9"))
        r2 = generate(f, parse_family("random:n=3,seed=9"))
        ctx.expect(r1 == r2, f"random family not reproducible at p={p}")


def _check_sweep_determinism(ctx: _Ctx) -> None:
    p = ctx.primes[0]
    config = parse_config(f"kind=moment\nrange.p={p}\nrange.r=1 2\nchar=legendre\nilen_max=2\n")
    first = reports_to_json(run_experiment(config, jobs=1))
    second = reports_to_json(run_experiment(config, jobs=1))
    ctx.expect(first == second, "sweep rerun is not byte-identical")
    ctx.expect(len(run_experiment(config, jobs=1)) == 2, "sweep job count wrong")


def _check_report_roundtrip(ctx: _Ctx) -> None:
    rep = Report(
        kind="probe",
        inputs={"p": 7, "family": "interval:n=3"},
        quantities={"x": 1.5, "k": "19/10"},
        flags={"ok": True},
        notes=["free text"],
    )
    ctx.expect(Report.from_json(rep.to_json()) == rep, "Report JSON round-trip failed")


def _check_kernel_parity(ctx: _Ctx) -> None:
    from fplab._kernels import pybits

    if _kernels.BACKEND == "python":
        return  # nothing to compare; the check passes vacuously
    p = ctx.primes[-1]
    mask = 0
    for e in ctx.rng.choice(p, size=min(6, p), replace=False).tolist():
        mask |= 1 << int(e)
    shifts = np.sort(ctx.rng.choice(p, size=3, replace=False)).astype(np.int64)
    ctx.expect(
        _kernels.shift_or_union(mask, shifts, p) == pybits.shift_or_union(mask, shifts, p),
        f"shift_or_union backend divergence at p={p}",
    )
    ctx.expect(
        _kernels.remap_affine(mask, 3, 1, p) == pybits.remap_affine(mask, 3, 1, p),
        f"remap_affine backend divergence at p={p}",
    )
    exp_c, dlog_c = _kernels.build_exp_dlog(p, ctx.field(p).g)
    exp_p, dlog_p = pybits.build_exp_dlog(p, ctx.field(p).g)
    ctx.expect(
        bool(np.array_equal(exp_c, exp_p) and np.array_equal(dlog_c, dlog_p)),
        f"exp/dlog backend divergence at p={p}",
    )


CHECKS = (
    ("field.dlog_roundtrip", _check_dlog_roundtrip),
    ("field.char_multiplicative", _check_char_multiplicative),
    ("field.char_sum_zero", _check_char_sum_zero),
    ("field.pair_identity", _check_pair_identity),
    ("setalg.oracle_ops", _check_setalg_oracles),
    ("setexpr.roundtrip_eval", _check_setexpr),
    ("spectral.plancherel_convolution", _check_plancherel),
    ("spectral.energies", _check_energies),
    ("spectral.count_system", _check_count_system),
    ("spectral.count_dilate_eq", _check_count_dilate),
    ("charsum.sums_and_moments", _check_charsum),
    ("incidence.counts", _check_incidence),
    ("structure.certificates", _check_structure),
    ("balog.coverage_redei", _check_balog),
    ("lab.generators", _check_generators),
    ("lab.sweep_determinism", _check_sweep_determinism),
    ("report.roundtrip", _check_report_roundtrip),
    ("kernels.backend_parity", _check_kernel_parity),
)


def verify_suite(
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
    field_override: dict[int, PrimeField] | None = None,
) -> Report:
    """Run the whole battery; one flag per check, failures listed in notes."""
    rng = np.random.Generator(np.random.PCG64(seed))
    flags: dict[str, bool] = {}
    quantities: dict[str, int] = {}
    notes: list[str] = []
    total = 0
    failed_checks = 0
    for name, fn in CHECKS:
        ctx = _Ctx(primes=tuple(primes), rng=rng, fields=dict(field_override or {}))
        try:
            fn(ctx)
        except FplabError as exc:
            ctx.failures.append(f"{name}: raised {exc!r}")
        ok = not ctx.failures
        flags[name] = ok
        total += ctx.checked
        if not ok:
            failed_checks += 1
            notes.extend(f"{name}: {msg}" for msg in ctx.failures[:5])
    quantities["assertions"] = total
    quantities["checks_total"] = len(CHECKS)
    quantities["checks_failed"] = failed_checks
    return Report(
        kind="verify",
        inputs={"primes": " ".join(map(str, primes)), "seed": seed, "backend": _kernels.BACKEND},
        quantities=quantities,
        flags={**flags, "all_passed": failed_checks == 0},
        notes=notes,
    )
