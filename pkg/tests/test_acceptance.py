"""Acceptance gate: one test per headline guarantee, one PASS/FAIL line each.

Each test prints `PASS: <label>` or `FAIL: <label>` and then asserts, so the
verbose pytest run shows exactly one line per criterion.  Tolerances are part
of the checks; runtime limits are enforced with a wall-clock measurement.
"""

import importlib
import math
import time

import numpy as np
import pytest
from scipy.spatial import cKDTree

import chaosgame as cg
from chaosgame.harness import load_preset, run_experiment


def report(ok: bool, label: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'}: {label}", flush=True)
    assert ok, label


@pytest.fixture(scope="module")
def sierpinski_cloud():
    return cg.build_cloud(cg.sierpinski_ifs(), 5e-4)


@pytest.fixture(scope="module")
def slow_schedule(cantor, cantor_cloud_fine):
    base = cg.choose_base_map(cantor, cantor_cloud_fine)
    return cg.build_schedule(cantor, cantor_cloud_fine, cg.power_rate(1.0),
                             base, k_max=3, step_cap=5 * 10 ** 6)


def _dist_to_attractor(cloud, x0) -> float:
    return float(cloud.grid.query(np.atleast_1d(np.asarray(x0, float)))[0])


def test_criterion_01_block_driver_recovery_formulas(halving,
                                                     exact_halving_cloud):
    t0 = time.perf_counter()
    failures = []
    for z, k_range in ((1.0, range(3, 13)), (0.5, range(10, 17))):
        driver = cg.example4_driver(z)
        for k in k_range:
            eps = 2.0 ** -k
            want1 = math.floor(k * 2.0 ** (k * z)) + k - 1
            want0 = math.floor((k - 1) * 2.0 ** ((k - 1) * z)) + k - 2
            got1 = cg.recovery_time(halving, driver, [1.0], eps,
                                    exact_halving_cloud, cap=10 ** 6).n
            got0 = cg.recovery_time(halving, driver, [0.0], eps,
                                    exact_halving_cloud, cap=10 ** 6).n
            if got1 != want1:
                failures.append((z, k, 1.0, got1, want1))
            if got0 != want0:
                failures.append((z, k, 0.0, got0, want0))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 10.0
    report(ok, "block-driver recovery times match the closed formulas "
               f"integer-exactly (z=1 k=3..12, z=0.5 k=10..16; {elapsed:.1f}s)"
               + (f"; mismatches {failures}" if failures else ""))


def test_criterion_02_concatenation_driver_word_bound():
    t0 = time.perf_counter()
    ok = True
    for K, m_max in ((2, 10), (3, 6)):
        driver = cg.champernowne(K)
        for m in range(1, m_max + 1):
            n_i = cg.word_coverage(driver, m).n_of_m
            bound = (K - K ** (m + 1) * (m + 1) + m * K ** (m + 2)) \
                // (K - 1) ** 2
            ok = ok and n_i is not None and n_i <= bound
            ok = ok and cg.champernowne_coverage_bound(K, m) == bound
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 5.0
    report(ok, "concatenation-driver word coverage meets the closed-form "
               f"bound (K=2 m<=10, K=3 m<=6; {elapsed:.1f}s)")


def test_criterion_03_de_bruijn_optimality_and_extension():
    t0 = time.perf_counter()
    ok = True
    for K, m_max in ((2, 12), (3, 8)):
        for m in range(1, m_max + 1):
            w = cg.de_bruijn_word(K, m)
            ok = ok and len(w) == K ** m + m - 1
            seen = {}
            for i in range(len(w) - m + 1):
                fac = w.symbols[i:i + m]
                seen[fac] = seen.get(fac, 0) + 1
            ok = ok and len(seen) == K ** m and set(seen.values()) == {1}
    # infinite streams: later extensions never disturb realized prefixes
    for K, orders in ((2, (2, 4, 6, 8)), (3, (1, 2, 3, 4, 5))):
        d = cg.infinite_de_bruijn(K)
        realized = []
        for m in orders:
            n = K ** m + m - 1
            prefix = tuple(int(s) for s in d.prefix(n))
            ok = ok and cg.is_de_bruijn(cg.Word(prefix, K), m)
            realized.append((n, prefix))
        for n, prefix in realized:
            ok = ok and tuple(int(s) for s in d.prefix(n)) == prefix
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 30.0
    report(ok, "de Bruijn words have optimal length with exact factor counts "
               f"and extensions preserve prefixes (K=2 m<=12, K=3 m<=8; "
               f"{elapsed:.1f}s)")


def test_criterion_04_fast_driver_log_rate_window(cantor, cantor_cloud):
    t0 = time.perf_counter()
    rates = []
    driver = cg.champernowne(2)
    for m in range(8, 13):
        eps = 3.0 ** -m
        for x0 in (0.0, 1.0, 5.0):
            rec = cg.recovery_time(cantor, driver, [x0], eps, cantor_cloud,
                                   cap=2 * 10 ** 6)
            rates.append(cg.log_rate(rec.n, eps) if rec.n else None)
    elapsed = time.perf_counter() - t0
    ok = all(r is not None and 0.55 <= r <= 0.74 for r in rates) \
        and elapsed < 120.0
    report(ok, "ternary-attractor log rates with the concatenation driver lie "
               f"in [0.55, 0.74] (measured {min(rates):.3f}..{max(rates):.3f}; "
               f"{elapsed:.1f}s)")


def test_criterion_05_recovery_vs_packing_inequality():
    presets = ("cantor-champernowne", "cantor-debruijn", "sierpinski-debruijn",
               "example4-z1")
    violations = 0
    total = 0
    for name in presets:
        rep = run_experiment(load_preset(name))
        covers = {c.eps: c for c in rep.covers}
        for rec in rep.records:
            total += 1
            if rec.n is None or not cg.key_inequality_check(rec,
                                                            covers[rec.eps]):
                violations += 1
    report(violations == 0,
           f"n + 1 >= packing lower bound of N(eps) for all {total} records "
           f"across four presets ({violations} violations)")


def test_criterion_06_covering_word_radius(cantor, cantor_cloud_coarse):
    t0 = time.perf_counter()
    cloud = cantor_cloud_coarse
    L = cantor.lip_max
    rng = np.random.default_rng(42)
    ok = True
    for m in range(2, 9):
        c_m = L ** m * (cloud.diam_upper + 1.0)
        sigma = cg.build_sigma(cantor, cloud, c_m, m)
        for _ in range(10):
            x0 = rng.uniform(-1.0, 2.0)
            orbit = cg.run_orbit(cantor, cg.literal_driver(sigma), [x0],
                                 len(sigma))
            worst = cKDTree(orbit.points).query(cloud.points)[0].max()
            ok = ok and worst <= 3 * c_m + cloud.resolution
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 30.0
    report(ok, "covering-word orbits reach every cloud point within "
               f"3*C_m + cloud resolution (m=2..8, 10 random x0; {elapsed:.1f}s)")


def test_criterion_07_slow_schedule_bracketing_and_ratio(cantor,
                                                         cantor_cloud_fine,
                                                         slow_schedule):
    t0 = time.perf_counter()
    sch = slow_schedule
    ok_entries = len(sch.entries) >= 3
    driver = cg.slow_driver(sch)
    psi = sch.psi
    ok_bracket = True
    ok_claim = True
    ok_window = True
    ratios_by_x0 = {x0: [] for x0 in (0.0, 0.5, 1.0)}
    for k, e in enumerate(sch.entries, start=1):
        eps = sch.eps_of(k)
        v_prev = sch.entries[k - 2].v if k >= 2 else 0
        ok_claim = ok_claim and abs(e.p - psi(eps)) <= 1.0
        for x0 in (0.0, 0.5, 1.0):
            n = cg.recovery_time(cantor, driver, [x0], eps,
                                 cantor_cloud_fine, cap=5 * 10 ** 6).n
            ok_bracket = ok_bracket and n is not None and \
                v_prev + e.p <= n <= v_prev + e.p + e.m * e.N_hat
            ratio = cg.rate_ratio(n, psi, eps)
            ratios_by_x0[x0].append(ratio)
            ok_window = ok_window and 0.95 <= ratio <= 1.7
    ok_monotone = all(all(b <= a * (1 + 1e-12) for a, b in zip(rs, rs[1:]))
                      for rs in ratios_by_x0.values())
    elapsed = time.perf_counter() - t0
    sample = [round(r, 3) for r in ratios_by_x0[0.0]]
    ok = ok_entries and ok_bracket and ok_claim and ok_window and ok_monotone \
        and elapsed < 300.0
    report(ok, "slow-driver schedule brackets recovery times, |p - psi| <= 1, "
               f"ratios in [0.95, 1.7] and non-increasing (>=3 blocks; "
               f"bracket={ok_bracket} claim={ok_claim} window={ok_window} "
               f"monotone={ok_monotone} ratios={sample}; {elapsed:.1f}s)")


def test_criterion_08_box_dimension_targets(cantor_cloud):
    t0 = time.perf_counter()
    seg = cg.box_dimension(cg.build_cloud(cg.segment_ifs(), 1e-4),
                           1.0, 0.5, 4, 10).value
    can = cg.box_dimension(cantor_cloud, 1.0, 1 / 3, 4, 10).value
    single = cg.box_dimension(
        cg.AttractorCloud.from_points([[0.0]], resolution=0.0),
        0.5, 0.5, 1, 3).value
    elapsed = time.perf_counter() - t0
    ok = abs(seg - 1.0) <= 0.05 \
        and abs(can - math.log(2) / math.log(3)) <= 0.05 \
        and single == 0.0 and elapsed < 60.0
    report(ok, "box-dimension estimates hit the targets (segment "
               f"{seg:.4f}~1.0, ternary {can:.4f}~0.6309, single point "
               f"{single:g}=0; {elapsed:.1f}s)")


def test_criterion_09_de_bruijn_recovery_chain(cantor, cantor_cloud,
                                               sierpinski_cloud):
    t0 = time.perf_counter()
    ok = True
    # three-map planar system: n(c_m(x0) + resolution) <= n_i(m) <= 3^m + m - 1
    sier = cg.sierpinski_ifs()
    cloud3 = sierpinski_cloud
    driver3 = cg.infinite_de_bruijn(3)
    for m in (5, 7, 9):
        n_i = cg.word_coverage(cg.infinite_de_bruijn(3), m).n_of_m
        ok = ok and n_i is not None and n_i <= 3 ** m + m - 1
        for x0 in ((0.0, 0.0), (1.0, 0.0)):
            c_m = sier.lip_max ** m * (cloud3.diam_upper
                                       + _dist_to_attractor(cloud3, x0))
            eps = c_m + cloud3.resolution
            n = cg.recovery_time(sier, driver3, x0, eps, cloud3,
                                 cap=10 ** 6).n
            ok = ok and n is not None and n <= n_i
    # two-map system, even orders: the doubled extension step gives
    # n <= 2.5 * 2^m
    driver2 = cg.infinite_de_bruijn(2)
    for m in (6, 8, 10, 12):
        for x0 in (0.0, 1.0):
            c_m = cantor.lip_max ** m * (cantor_cloud.diam_upper
                                         + _dist_to_attractor(cantor_cloud,
                                                              x0))
            eps = c_m + cantor_cloud.resolution
            n = cg.recovery_time(cantor, driver2, [x0], eps, cantor_cloud,
                                 cap=10 ** 6).n
            ok = ok and n is not None and n <= 2.5 * 2 ** m
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 120.0
    report(ok, "de Bruijn recovery chain holds: n(c_m + delta) <= n_i(m) <= "
               f"K^m + m - 1 (K=3), and n <= 2.5*2^m for K=2 even orders "
               f"({elapsed:.1f}s)")


def test_criterion_10_property_suite_present():
    modules = ("test_ifs", "test_drivers", "test_construct", "test_metrics",
               "test_harness", "test_cli")
    counts = {}
    for name in modules:
        mod = importlib.import_module(f"tests.{name}")
        n = 0
        for attr in vars(mod).values():
            if callable(attr) and getattr(attr, "__name__", "").startswith("test"):
                n += 1
            elif isinstance(attr, type) and attr.__name__.startswith("Test"):
                n += sum(1 for k in vars(attr) if k.startswith("test"))
        counts[name] = n
    ok = all(n >= 5 for n in counts.values()) \
        and sum(counts.values()) >= 100
    report(ok, "module property/invariant suites are present and substantial "
               f"({sum(counts.values())} tests across {len(modules)} modules)")
