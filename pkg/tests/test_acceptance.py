"""Whole-package checks, one test per shipped guarantee.

`pytest -v tests/test_acceptance.py` prints exactly one pass/fail line per
guarantee. Each test prints its measured quantities so a failure carries the
numbers. Checks with a runtime budget assert it at the end.
"""

import time

import numpy as np

from fplab.balog import balog_iterated, balog_new_check, redei_check
from fplab.charsum import moment_sum
from fplab.field import character, is_prime, legendre_character, make_field
from fplab.incidence import (
    count_incidences,
    random_plane_set,
    random_point_set,
    skew_family,
    skew_solution_count,
)
from fplab.lab.cli import main as cli_main
from fplab.lab.families import generate, parse_family, structure_suite
from fplab.oracles import count_incidences_naive, count_system_naive, pair_identity_sum
from fplab.setalg import FpSet, difference_set, fold_sum
from fplab.spectral import (
    additive_energy,
    count_dilate_eq,
    count_system,
    cyclic_convolve,
    dft_direct,
)
from fplab.structure import extract_z, structure_pipeline, verify_inclusion

from conftest import get_field


def _primes(lo, hi):
    return [n for n in range(lo, hi + 1) if is_prime(n)]


def _random_subset(field, n, rng, forbid_zero=False):
    pool = np.arange(1, field.p) if forbid_zero else np.arange(field.p)
    picks = rng.choice(pool, size=n, replace=False)
    return FpSet.from_iterable(field, picks.tolist())


def test_01_fourier_identities_and_energy_agreement():
    t0 = time.perf_counter()
    for p in (7, 31, 101):
        rng = np.random.Generator(np.random.PCG64(p))
        for _ in range(100):
            f = rng.integers(0, 2, size=p)
            g = rng.integers(0, 2, size=p)
            fh, gh = dft_direct(f), dft_direct(g)
            plancherel_gap = abs(p * float(np.sum(f * f)) - float(np.vdot(fh, fh).real))
            assert plancherel_gap <= 1e-9 * p
            conv_gap = float(np.max(np.abs(dft_direct(cyclic_convolve(f, g)) - fh * gh)))
            assert conv_gap <= 1e-9 * p
    for p in (101, 499):
        field = get_field(p)
        rng = np.random.Generator(np.random.PCG64(10 * p))
        for _ in range(50):
            a = _random_subset(field, int(rng.integers(1, 41)), rng)
            b = _random_subset(field, int(rng.integers(1, 41)), rng)
            rep = additive_energy(a, b)
            assert rep.agreement, (p, rep)
    elapsed = time.perf_counter() - t0
    print(f"\n  300 transform pairs + 100 energy pairs agreed in {elapsed:.2f}s")
    assert elapsed < 10.0


def test_02_pair_moment_strict_ceiling_grid():
    t0 = time.perf_counter()
    checked = 0
    for p in _primes(7, 97):
        field = make_field(p)
        for k in range(1, p - 1):
            chi = character(field, k)
            for ilen in range(1, 7):
                i_set = FpSet.from_iterable(field, range(ilen))
                for r in (1, 2):
                    res = moment_sum(chi, i_set, r)
                    assert res.holds and res.lhs < res.rhs, (p, k, ilen, r, res)
                    checked += 1
    field7 = get_field(7)
    anchor = moment_sum(legendre_character(field7), FpSet.from_iterable(field7, [0, 1]), 1)
    assert (anchor.lhs, anchor.rhs) == (74, 210)
    elapsed = time.perf_counter() - t0
    print(f"\n  {checked} (p, char, interval, r) cells strict, anchor 74 < 210, {elapsed:.1f}s")
    assert elapsed < 60.0


def test_03_system_count_equals_brute_force():
    rng = np.random.Generator(np.random.PCG64(303))
    primes = [7, 11, 13, 31, 61, 101]
    for _ in range(200):
        field = get_field(int(rng.choice(primes)))
        na = int(rng.integers(1, min(12, field.p - 1) + 1))
        nb = int(rng.integers(1, min(12, field.p) + 1))
        a = _random_subset(field, na, rng, forbid_zero=True)
        b = _random_subset(field, nb, rng)
        assert count_system(a, b) == count_system_naive(a, b), (field.p, a, b)
    field5 = get_field(5)
    anchor = count_system(
        FpSet.from_iterable(field5, [1, 2]), FpSet.from_iterable(field5, [1, 2])
    )
    assert anchor == 10
    print("\n  200 random instances matched; anchor ({1,2},{1,2}) at p=5 gives 10")


def test_04_incidence_grouping_and_skew_correspondence():
    rng = np.random.Generator(np.random.PCG64(404))
    for _ in range(100):
        field = get_field(int(rng.choice([7, 11, 13, 31])))
        pts = random_point_set(field, int(rng.integers(1, 201)), rng)
        pls = random_plane_set(field, int(rng.integers(1, 201)), rng)
        assert count_incidences(pts, pls) == count_incidences_naive(pts, pls)
    done = 0
    while done < 20:
        field = get_field(int(rng.choice([7, 11, 13])))
        a = _random_subset(field, int(rng.integers(2, 5)), rng)
        b = _random_subset(field, int(rng.integers(2, 5)), rng)
        if a.without_zero().is_empty or b.without_zero().is_empty:
            continue
        pts, pls = skew_family(a, b)
        assert count_incidences(pts, pls) == skew_solution_count(a, b), (field.p, a, b)
        done += 1
    print("\n  100 grouped-vs-naive counts and 20 product-family correspondences matched")


def test_05_dilate_equation_count_floor():
    rng = np.random.Generator(np.random.PCG64(505))
    cells = 0
    for p in (7, 11, 13):
        field = get_field(p)
        for _ in range(20):
            a = _random_subset(field, int(rng.integers(1, p + 1)), rng)
            for xi in range(p):
                count = count_dilate_eq(a, xi)  # SpectralMismatch if the routes split
                assert count * p >= len(a) ** 6, (p, xi, a)
                cells += 1
    anchor_a = FpSet.from_iterable(get_field(5), [0, 1])
    assert count_dilate_eq(anchor_a, 1) == 20
    print(f"\n  {cells} (A, xi) cells above the |A|^6/p floor; anchor count 20")


def test_06_structure_pipeline_certificates():
    t0 = time.perf_counter()
    cases = 0
    for p in (101, 499):
        field = make_field(p)
        for name, a in structure_suite(field):
            for d in (2, 3):
                for l in (1, 2, 3):
                    out = structure_pipeline(a, d, l)
                    assert out["sanders"].verified, (p, name, d, l)
                    assert out["cert"].verified, (p, name, d, l, out["cert"].witness)
                    xx = difference_set(out["x_set"], out["x_set"])
                    z = out["z_set"]
                    for v in range(p):
                        in_all = all((d**j * v) % p in xx for j in range(l))
                        assert (v in z) == in_all, (p, name, d, l, v)
                    cases += 1
    field = get_field(101)
    a = FpSet.from_iterable(field, range(10))
    z_direct = extract_z(a, 2, 2)
    assert z_direct.centered_elements() == list(range(-4, 5))
    two_a = fold_sum(a, 2)
    assert verify_inclusion(z_direct, 2, 2, difference_set(two_a, two_a)).verified
    out = structure_pipeline(a, 2, 2)
    assert out["sanders"].verified and out["cert"].verified
    assert out["z_set"].centered_elements() == list(range(-3, 4))
    elapsed = time.perf_counter() - t0
    print(f"\n  {cases} pipeline runs certified (greedy, maximality, inclusion), {elapsed:.1f}s")
    assert elapsed < 30.0


def test_07_direction_count_bound():
    rng = np.random.Generator(np.random.PCG64(707))
    for p in (101, 499):
        field = get_field(p)
        root = int(p**0.5)
        for _ in range(500):
            a = _random_subset(field, int(rng.integers(2, root + 1)), rng)
            rep = redei_check(a)
            assert rep.flags["direction_holds"], (p, a)
    small = redei_check(FpSet.from_iterable(get_field(7), [0, 1]))
    assert small.flags["literal_holds"] is False
    assert small.flags["direction_holds"] is True
    assert small.quantities["size_Q"] == 3
    print("\n  1000 random draws held; |Q|-only bound fails at {0,1} mod 7 as recorded")


def test_08_quotient_of_doubles_coverage():
    covered_at = 0
    plist = _primes(101, 499)
    for p in plist:
        field = make_field(p)
        n = int(np.ceil(p**0.5)) + 2
        a = generate(field, parse_family(f"interval:n={n}"))
        check = balog_new_check(a)
        assert check.quotient_of_doubles.covered, p
        covered_at += 1
    it = balog_iterated(FpSet.from_iterable(get_field(5), [0, 1]), 1)
    assert not it.covered
    assert it.achieved == 3 and it.missing_sample == [2, 3]  # reaches exactly {0, 1, 4}
    print(f"\n  first expression covers F_p at all {covered_at} primes in [101, 499]")


def test_09_character_exactness():
    for p in _primes(7, 101):
        field = make_field(p)
        xs = np.arange(1, p, dtype=np.int64)
        prod = (xs[:, None] * xs[None, :]) % p
        for k in range(1, p - 1):
            it = character(field, k).index_table
            assert np.all((it[xs][:, None] + it[xs][None, :] - it[prod]) % (p - 1) == 0)
            assert abs(np.sum(character(field, k).value_table)) <= 1e-9 * p
    for p in (7, 11, 23):
        chi = legendre_character(get_field(p))
        for a in range(p):
            for b in range(p):
                if a != b:
                    assert abs(pair_identity_sum(chi, a, b) - (-1)) <= 1e-9
    print("\n  multiplicativity, zero-sum, and the shifted-pair identity all exact")


def test_10_sweep_byte_determinism(tmp_path, capsys):
    cfg = tmp_path / "sweep.txt"
    cfg.write_text("kind=moment\nrange.p=7 11\nrange.r=1 2\nchar=all\nilen_max=2\n")
    outputs = []
    for jobs in ("1", "8"):
        for attempt in ("a", "b"):
            out = tmp_path / f"rep-{jobs}-{attempt}.json"
            code = cli_main(["sweep", str(cfg), "--jobs", jobs, "--json", str(out)])
            assert code == 0
            outputs.append(out.read_bytes())
    capsys.readouterr()
    assert len(set(outputs)) == 1
    print(f"\n  4 runs (1 and 8 workers, twice each) produced {len(outputs[0])} identical bytes")
