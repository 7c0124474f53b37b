"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s -v`` to see the report lines;
they are also written past output capture so they land in plain runs too.
"""
import math
import time

import numpy as np
import pytest

from dualirs import Scheme, SystemParams, default_params, snr_approx, snr_closed, snr_matrix
from dualirs.channel import build_channels
from dualirs.cli import main
from dualirs.config import dbm_to_watts, watts_to_dbm
from dualirs.link import dominance_condition
from dualirs.placement import Axis, monotonicity_report, optimize_grid, suboptimal_closed
from dualirs.reflection import amplification_power, feasible_interval, optimal_design

PF_DBM = (4.0, 8.0, 12.0, 16.0, 20.0)
ACTIVE = (Scheme.TAPR, Scheme.TPAR)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail})")
        assert ok, detail
    return emit


def _oracle_grid():
    base = default_params()
    for pf in PF_DBM:
        p = base.with_pf_dbm(pf)
        for scheme in ACTIVE:
            low, high = feasible_interval(scheme, p)
            for x in np.linspace(low, high, 50):
                yield scheme, p, float(x)


def test_1_oracle_equivalence(report):
    start = time.perf_counter()
    worst = 0.0
    count = 0
    for scheme, p, x in _oracle_grid():
        closed = snr_closed(scheme, p, x).snr
        matrix = snr_matrix(scheme, p, x).snr
        worst = max(worst, abs(closed - matrix) / matrix)
        count += 1
    elapsed = time.perf_counter() - start
    ok = count == 2 * 250 and worst <= 1e-9 and elapsed < 10.0
    report(1, "closed-form SNR matches matrix cascade", ok,
           f"{count} points, worst rel err {worst:.2e}, {elapsed:.2f} s")


def test_2_power_tightness(report):
    worst = 0.0
    for scheme, p, x in _oracle_grid():
        channels = build_channels(scheme, p, x)
        design = optimal_design(scheme, p, x, channels)
        spent = amplification_power(scheme, p, channels, design)
        worst = max(worst, abs(spent - p.pf) / p.pf)
    report(2, "amplification power equals P_F", worst <= 1e-9, f"worst rel err {worst:.2e}")


def test_3_monotonicity(report):
    base = default_params()
    pf_values = list(range(4, 21, 2))
    np_values = list(range(200, 701, 100))
    failures = []
    for scheme in ACTIVE:
        for n_p in np_values:
            r = monotonicity_report(scheme, base.replace(N_p=n_p), Axis.P_F, pf_values, step=0.01)
            failures += [(scheme.value, "P_F", n_p, i) for i in r.violations]
        for pf in pf_values:
            r = monotonicity_report(scheme, base.with_pf_dbm(pf), Axis.N_p, np_values, step=0.01)
            failures += [(scheme.value, "N_p", pf, i) for i in r.violations]
    report(3, "optimal placement trends in P_F and N_p", not failures,
           f"{len(failures)} violations over {len(pf_values)}x{len(np_values)} grid")


def test_4_crossover(report):
    base = default_params()

    def gap(pf_dbm):
        p = base.with_pf_dbm(pf_dbm)
        return snr_approx(Scheme.TAPR, p) - snr_approx(Scheme.TPAR, p)

    lo, hi = 4.0, 20.0
    assert gap(lo) > 0 > gap(hi)
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if gap(mid) > 0 else (lo, mid)
    root = 0.5 * (lo + hi)
    threshold = watts_to_dbm(base.P_t * base.sigma2 / base.sigmaF2)
    ok = abs(root - threshold) <= 0.01
    report(4, "TAPR/TPAR crossover at P_t sigma^2 / sigma_F^2", ok,
           f"root {root:.4f} dBm, threshold {threshold:.4f} dBm (25 mW), "
           f"{root - 14.0:+.4f} dB from the rounded 14.0 dBm")


def test_5_gap_identity(report):
    rng = np.random.default_rng(20240501)
    worst = 0.0
    for _ in range(1000):
        p = SystemParams(
            D=rng.uniform(10, 100), H_A=rng.uniform(1, 10), H_P=rng.uniform(1, 10),
            beta=10 ** rng.uniform(-5, -3), P_t=10 ** rng.uniform(-3, 0), P_F=10 ** rng.uniform(-3, 0),
            sigma2=10 ** rng.uniform(-13, -9), sigmaF2=10 ** rng.uniform(-13, -9),
            N_a=int(rng.integers(16, 1000)), N_p=int(rng.integers(16, 2000)))
        gap = snr_approx(Scheme.TAPR, p) - snr_approx(Scheme.TPAR, p)
        identity = (p.beta * p.N_a / p.D ** 2 * (p.P_t / p.sigmaF2 - p.P_F / p.sigma2)
                    * (p.H_P ** 2 - p.N_p ** 2 * p.beta) / p.H_P ** 2)
        worst = max(worst, abs(gap - identity) / abs(identity))
    report(5, "factored SNR gap identity", worst <= 1e-12, f"1000 draws, worst rel err {worst:.2e}")


def test_6_closed_form_placement(report):
    base = default_params()
    checked, problems = 0, []
    for n_p in range(200, 701, 100):
        for pf in range(4, 21, 2):
            p = base.replace(N_p=n_p).with_pf_dbm(pf)
            if not dominance_condition(p, threshold=10.0)[0]:
                continue
            for scheme in ACTIVE:
                grid, closed = optimize_grid(scheme, p), suboptimal_closed(scheme, p)
                checked += 1
                if closed.rate_star < 0.99 * grid.rate_star or abs(closed.x_star - grid.x_star) > 0.5:
                    problems.append((scheme.value, n_p, pf, closed.x_star, grid.x_star))
    p10 = base.with_pf_dbm(10.0)
    x_tapr = suboptimal_closed(Scheme.TAPR, p10).x_star
    x_tpar = suboptimal_closed(Scheme.TPAR, p10).x_star
    checkpoints = abs(x_tapr - 23.28) <= 0.005 and abs(x_tpar - 19.30) <= 0.005
    ok = checked > 0 and not problems and checkpoints
    report(6, "closed-form placement vs grid search", ok,
           f"{checked} cases, {len(problems)} misses; at 10 dBm TAPR x={x_tapr:.3f}, TPAR x={x_tpar:.3f}")


def test_7_baseline_dominance(report):
    base = default_params()
    margins = []
    for pf in np.arange(4.0, 20.0 + 1e-9, 0.5):
        p = base.with_pf_dbm(float(pf))
        best = max(optimize_grid(s, p).rate_star for s in ACTIVE)
        margins.append(best - snr_matrix(Scheme.DOUBLE_PIRS, p).rate)
    ok = min(margins) > 0
    report(7, "active+passive beats double passive", ok,
           f"rate margin {min(margins):.2f} to {max(margins):.2f} bps/Hz")


def test_8_double_pirs_scaling(report):
    base = default_params().with_pf_dbm(10.0)
    small = snr_matrix(Scheme.DOUBLE_PIRS, base).snr
    large = snr_matrix(Scheme.DOUBLE_PIRS, base.replace(N_a=2 * base.N_a, N_p=2 * base.N_p)).snr
    ratio = large / small
    report(8, "double-PIRS SNR grows as N^4", abs(ratio / 16.0 - 1.0) <= 1e-9, f"ratio {ratio:.12f}")


def test_9_determinism(report, tmp_path):
    outputs = []
    for run, jobs in enumerate(("1", "1", "4")):
        path = tmp_path / f"run{run}.csv"
        assert main(["--sweep-pf", "4", "20", "2", "--jobs", jobs, "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    ok = outputs[0] == outputs[1] == outputs[2]
    report(9, "sweep CSV is byte-identical across runs", ok, f"{len(outputs[0])} bytes")
