"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Dataset-dependent checks run on the bundled transcribed sample.
"""

import hashlib
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from adcgap.budget import DEFAULT_PLATFORM, DEFAULT_POLICY, cascade, density_comparison
from adcgap.dataset import SurveyRecord
from adcgap.frontier import non_dominated_mask
from adcgap.gap import TABLE2_ADC, gap_report
from adcgap.metrics import (
    derive_all,
    enob_from_sndr,
    jitter_enob_limit,
    jitter_snr_limit,
    min_energy_per_sample,
    sndr_from_enob,
)
from adcgap.samples import load_sample_converters, load_sample_transceivers
from adcgap.trends import TrendFit, fit_doubling, fit_power_law, threshold_year


def _report(n, text):
    print(f"ACCEPTANCE {n:>2} PASS: {text}")


def test_01_metrics_oracle_equivalence():
    """E_bit, density, FOM_S, BW, ENOB<->SNDR vs an independent oracle."""
    rng = np.random.default_rng(20180501)
    start = time.perf_counter()
    worst = 0.0
    for i in range(1000):
        power = float(rng.uniform(1e-4, 10.0))
        rate = float(rng.uniform(1e6, 1e11))
        sndr = float(rng.uniform(10.0, 100.0))
        area = float(rng.uniform(1e-3, 20.0))
        osr = float(rng.uniform(1.0, 8.0))
        record = SurveyRecord(id=f"r{i}", year=2010, power=power,
                              sample_rate=rate, sndr=sndr, area=area)
        m = derive_all(record, osr)

        # independent direct evaluation, straight from the definitions
        oracle_nyq = rate / osr
        oracle_bw = rate / (2.0 * osr)
        oracle_ebit = power / oracle_bw
        oracle_density = oracle_nyq / area
        oracle_enob = (sndr - 1.76) / 6.02
        oracle_fom = sndr + 10.0 * math.log10(rate / (2.0 * power))

        for got, want in (
            (m.bandwidth, oracle_bw),
            (m.nyquist_rate, oracle_nyq),
            (m.single_bit_energy, oracle_ebit),
            (m.sampling_density, oracle_density),
            (m.enob, oracle_enob),
            (m.schreier_fom, oracle_fom),
            (sndr_from_enob(m.enob), 6.02 * oracle_enob + 1.76),
        ):
            rel = abs(got - want) / abs(want)
            worst = max(worst, rel)
            assert rel < 1e-9
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report(1, f"1000-record oracle equivalence, worst rel err {worst:.2e}, "
               f"{elapsed * 1e3:.0f} ms")


def test_02_budget_cascade_exact():
    """The canonical 450 mm2 / 210 W / 100-core chain, zero tolerance."""
    result = cascade(DEFAULT_PLATFORM, DEFAULT_POLICY)
    assert result.per_core_area == 4.5
    assert result.per_core_power == 2.1
    assert result.noc_area == 1.5
    assert result.noc_power == 0.7
    assert result.wireless_area == 0.75
    assert result.wireless_power == 0.35
    assert result.wireless_energy_per_bit == 3.5e-12
    import dataclasses
    at_10g = cascade(DEFAULT_PLATFORM,
                     dataclasses.replace(DEFAULT_POLICY, target_datarate=10e9))
    assert at_10g.wireless_energy_per_bit == 3.5e-11
    _report(2, "budget cascade reproduces 4.5 mm2 / 2.1 W / 1.5 mm2 / 0.7 W / "
               "0.75 mm2 / 0.35 W / 3.5 pJ/bit (100 Gb/s) / 35 pJ/bit (10 Gb/s) exactly")


def test_03_fundamental_limit_consistency():
    """Minimum E_bit at ENOB 4 and its distance to the 0.1 pJ/bit target."""
    sndr = sndr_from_enob(4.0)
    min_ebit = 2.0 * min_energy_per_sample(sndr, 300.0)
    assert min_ebit == pytest.approx(2.54e-17, rel=5e-3)
    ratio = 1e-13 / min_ebit
    assert 1e3 <= ratio <= 1e4
    _report(3, f"minimum E_bit at ENOB 4 = {min_ebit:.3e} J/bit, "
               f"0.1 pJ/bit target sits {ratio:.0f}x above it")


def _plain_loop_front(values, senses):
    """Independent brute-force oracle: nested loops, no vectorization."""
    n = len(values)
    d = len(senses)
    keep = []
    for i in range(n):
        vi = values[i]
        dominated = False
        for j in range(n):
            if j == i:
                continue
            vj = values[j]
            at_least_as_good = True
            strictly_better = False
            for k in range(d):
                diff = senses[k] * (vj[k] - vi[k])
                if diff < 0:
                    at_least_as_good = False
                    break
                if diff > 0:
                    strictly_better = True
            if at_least_as_good and strictly_better:
                dominated = True
                break
        keep.append(not dominated)
    return keep


def test_04_pareto_frontier_vs_brute_force():
    """Exact set equality against an O(n^2) dominance filter, 100 instances."""
    rng = np.random.default_rng(4242)
    start = time.perf_counter()
    for _ in range(100):
        n = int(rng.integers(2, 501))
        d = int(rng.integers(2, 5))
        values = np.round(rng.uniform(0, 10, size=(n, d)), 1)
        senses = rng.choice([-1.0, 1.0], size=d)
        got = non_dominated_mask(values, senses)
        want = _plain_loop_front(values.tolist(), senses.tolist())
        assert got.tolist() == want
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    _report(4, f"frontier equals brute-force filter on 100 instances "
               f"(n <= 500, 2-4 objectives) in {elapsed:.2f} s")


def test_05_trend_fit_recovery():
    """Noiseless and 5%-noise doubling recovery; exact power-law exponent."""
    rng = np.random.default_rng(1997)
    t_true = 4.0
    years = np.arange(1997, 2019, dtype=float)
    values = 3.0 * 2.0 ** ((years - years[0]) / t_true)
    clean = fit_doubling(list(zip(years, values)))
    assert abs(clean.doubling_time - t_true) / t_true < 1e-6
    assert clean.r_squared > 1 - 1e-9

    noisy_values = values * (1.0 + 0.05 * rng.standard_normal(years.size))
    noisy = fit_doubling(list(zip(years, noisy_values)))
    assert abs(noisy.doubling_time - t_true) / t_true < 0.10

    lams = [14.0, 22.0, 32.0, 45.0, 65.0, 90.0]
    power = fit_power_law([(lam, 0.37 * lam ** 1.7) for lam in lams])
    assert power.exponent == pytest.approx(1.7, abs=1e-9)
    assert power.r_squared > 1 - 1e-12
    _report(5, f"doubling recovery: clean {clean.doubling_time:.8f} yr, "
               f"5% noise {noisy.doubling_time:.3f} yr; power-law exponent "
               f"{power.exponent:.12f}")


def test_06_feasibility_projection():
    """1.8-year halving from (2018, 1.92 pJ/bit) down to 0.1 pJ/bit."""
    fit = TrendFit(slope=-1.0 / 1.8, intercept=math.log2(1.92e-12),
                   reference_year=2018, r_squared=1.0, n_points=5)
    year = threshold_year(fit, (2018.0, 1.92e-12), 1e-13, goal="at_most")
    assert year == pytest.approx(2025.7, abs=0.1)
    assert 2023.0 <= year <= 2028.0     # 5-10 years out from 2018
    _report(6, f"0.1 pJ/bit projected for {year:.2f}, inside the 2023-2028 window")


def test_07_gap_report_on_sample():
    """No sample record passes the table2-adc preset; the 24 GS/s SAR part
    misses only on energy, by ~1.92x."""
    dataset, _ = load_sample_converters()
    report = gap_report(dataset, TABLE2_ADC, osr=1.0)
    assert report.overall_passes == ()

    xu = next(v for v in report.verdicts if v.record_id == "xu17")
    assert xu.criteria["area"].outcome == "pass"
    assert xu.criteria["bandwidth"].outcome == "pass"
    assert xu.criteria["energy"].outcome == "fail"
    exceedance = xu.criteria["energy"].exceedance
    assert exceedance == pytest.approx(1.92, rel=0.01)
    assert report.nearest_miss.record_id == "xu17"
    _report(7, f"zero overall passes on {report.n_records} records; xu17 "
               f"passes area+bandwidth, fails energy {exceedance:.4f}x over target")


def test_08_jitter_bound():
    """Reference value at (10 GHz, 0.1 ps) plus strict monotonicity."""
    snr = jitter_snr_limit(10e9, 1e-13)
    enob = jitter_enob_limit(10e9, 1e-13)
    assert snr == pytest.approx(44.04, abs=0.01)
    assert enob == pytest.approx(7.02, abs=0.01)

    frequencies = np.logspace(9, 11, 10)
    jitters = np.logspace(-14, -12, 10)
    for sigma in jitters:
        limits = [jitter_snr_limit(f, sigma) for f in frequencies]
        assert all(a > b for a, b in zip(limits, limits[1:]))
    for f in frequencies:
        limits = [jitter_snr_limit(f, sigma) for sigma in jitters]
        assert all(a > b for a, b in zip(limits, limits[1:]))
    _report(8, f"jitter bound {snr:.4f} dB / {enob:.4f} bits at 10 GHz, 0.1 ps; "
               f"strictly decreasing over the 10x10 grid")


def test_09_density_comparison_on_sample():
    dataset, _ = load_sample_converters()
    transceivers, _ = load_sample_transceivers()
    comparison = density_comparison(dataset, transceivers, osr=1.0)
    assert 3.0 <= comparison.ratio <= 30.0
    _report(9, f"best converter sampling density exceeds best transceiver "
               f"bitrate density by {comparison.ratio:.2f}x (in [3, 30])")


def test_10_cli_determinism(tmp_path):
    """Two identical CLI runs produce byte-identical CSV/SVG artifacts."""
    digests = []
    for run in ("a", "b"):
        out = tmp_path / run
        for argv in (
            ["plot", "--data", "@converters", "--x", "bandwidth", "--y", "ebit",
             "--x-scale", "log10", "--y-scale", "log10", "--split", "enob<=4",
             "--box", "table2-adc", "--out", str(out)],
            ["gap", "--data", "@converters", "--out", str(out)],
            ["metrics", "--data", "@converters", "--out", str(out)],
        ):
            result = subprocess.run([sys.executable, "-m", "adcgap", *argv],
                                    capture_output=True, text=True)
            assert result.returncode == 0, result.stderr
        names = sorted(p.name for p in out.iterdir())
        digests.append({name: hashlib.sha256((out / name).read_bytes()).hexdigest()
                        for name in names})
    assert digests[0] == digests[1]
    assert any(name.endswith(".csv") for name in digests[0])
    assert any(name.endswith(".svg") for name in digests[0])
    _report(10, f"{len(digests[0])} artifacts byte-identical across repeated runs "
                f"({', '.join(sorted(digests[0]))})")
