"""Acceptance gate: one test per criterion, each printing its verdict.

Tolerances are pinned here and nowhere else; a change to any number in
this file is a change to what the package promises.
"""

import functools
import hashlib
import json
import math
import time

import numpy as np
import pytest

import oracles
from specgrowth import cli
from specgrowth.bounds import (
    check_hilbert_upper,
    check_lower_41b,
    check_sandwich_62,
    classify_regularity,
    growth_curve,
)
from specgrowth.increase import (
    PositiveIncreaseCert,
    find_certificate,
    integral_estimate_check,
    verify_certificate,
)
from specgrowth.monotone import (
    MonotoneFn,
    asymp_compare,
    evaluate,
    left_inverse,
    log_uniform_grid,
    m_inf_transform,
    m_log_transform,
    right_inverse,
    sample_function,
)
from specgrowth.spectrum import resolvent_envelope

E2 = math.exp(2.0)


def criterion(n, slug):
    """Print one verdict line per criterion, pass or fail."""

    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"CRITERION {n}: FAIL ({slug})")
                raise
            print(f"CRITERION {n}: PASS ({slug})")

        return wrapper

    return deco


_BUILD_SECONDS = {}


@pytest.fixture(scope="module")
def gate_envelope(power_model):
    t0 = time.perf_counter()
    env = resolvent_envelope(power_model, log_uniform_grid(10.0, 1e9, 16))
    _BUILD_SECONDS["envelope"] = time.perf_counter() - t0
    return env


@pytest.fixture(scope="module")
def gate_curve(power_model):
    t0 = time.perf_counter()
    curve = growth_curve(power_model, log_uniform_grid(1e-4, 1e-2, 16)[::-1])
    _BUILD_SECONDS["curve"] = time.perf_counter() - t0
    return curve


@criterion(1, "inverse calculus")
def test_criterion_1_inverse_calculus():
    started = time.perf_counter()
    rng = np.random.default_rng(11)
    rel = 1e-9
    checked = 0
    for _ in range(220):
        n = int(rng.integers(3, 18))
        grid = 0.5 + np.cumsum(rng.uniform(0.1, 2.0, n))
        jumps = rng.uniform(0.0, 1.5, n) * (rng.uniform(size=n) > 0.25)
        values = 1.0 + np.cumsum(jumps)
        fn = MonotoneFn(grid=grid, values=values, interpolation="linear", meta={})

        for s in grid:
            level = evaluate(fn, s)
            # level sets recover their endpoints around any knot
            assert left_inverse(fn, level) <= s * (1.0 + rel)
            assert right_inverse(fn, level) >= s * (1.0 - rel)
        levels = np.concatenate(
            [values, rng.uniform(fn.value_min, fn.value_max, 3)]
        )
        for y in levels:
            lo = left_inverse(fn, y)
            hi = right_inverse(fn, y)
            assert lo <= hi * (1.0 + rel)
            # continuity: both inverses land back on the level
            assert evaluate(fn, lo) == pytest.approx(y, rel=rel)
            assert evaluate(fn, hi) == pytest.approx(y, rel=rel)
            checked += 1
    assert checked >= 200
    assert time.perf_counter() - started < 10.0


@criterion(2, "stretched-infimum closed form")
def test_criterion_2_m_inf_closed_form():
    started = time.perf_counter()
    probes = log_uniform_grid(10.0, 1e6, 8)
    for alpha in (0.25, 0.5, 0.75):
        # the flattest exponent needs stretches near e^4, so the source
        # domain must reach well past the largest probe height
        fn = sample_function(
            lambda s: s**alpha, log_uniform_grid(10.0, 1e9, 32)
        )
        minf = m_inf_transform(fn)
        want = alpha * math.e * probes**alpha
        got = evaluate(minf, probes)
        ratio = got / want
        assert np.all(ratio >= 0.999) and np.all(ratio <= 1.001), (
            alpha, float(ratio.min()), float(ratio.max()),
        )
        # oracle: dense stretch-grid minimization at three sample heights
        for s in (10.0, 1e3, 1e6):
            dense = oracles.dense_lambda_min(
                lambda x: x**alpha, s, lam_max=math.exp(2.0 / alpha)
            )
            assert evaluate(minf, s) == pytest.approx(dense, rel=2e-3)
    assert time.perf_counter() - started < 5.0


@criterion(3, "two-sided growth sandwich")
def test_criterion_3_sandwich_band(gate_curve, gate_envelope):
    started = time.perf_counter()
    minf = m_inf_transform(gate_envelope)
    window = (gate_curve.t_grid >= 1e-4 * (1 - 1e-12)) & (
        gate_curve.t_grid <= 1e-3 * (1 + 1e-12)
    )
    assert np.count_nonzero(window) >= 16
    for t, v in zip(gate_curve.t_grid[window], gate_curve.values[window]):
        ratio = v / left_inverse(minf, 1.0 / t)
        assert 0.9 <= ratio <= 1.1, (t, ratio)
    rep = check_sandwich_62(gate_curve, gate_envelope, 0.1)
    assert rep.verdict == "pass"
    elapsed = (
        time.perf_counter() - started
        + _BUILD_SECONDS["envelope"]
        + _BUILD_SECONDS["curve"]
    )
    assert elapsed < 60.0


@criterion(4, "inverted-envelope constant stability")
def test_criterion_4_hilbert_constant_stability(gate_curve, gate_envelope):
    rep = check_hilbert_upper(gate_curve, gate_envelope)
    assert rep.verdict == "pass"
    series = dict(rep.ratio_series)
    low = max(r for t, r in series.items() if 1e-4 * (1 - 1e-12) <= t <= 1e-3 * (1 + 1e-12))
    high = max(r for t, r in series.items() if 1e-3 * (1 - 1e-12) <= t <= 1e-2 * (1 + 1e-12))
    assert abs(low / high - 1.0) < 0.2, (low, high)


@criterion(5, "lower bound at half scale")
def test_criterion_5_lower_bound(gate_curve, gate_envelope):
    half = check_lower_41b(gate_curve, gate_envelope, 0.5)
    unit = check_lower_41b(gate_curve, gate_envelope, 1.0)
    assert half.verdict == "pass"
    # the decade-wise sup settles at e^2 / (4 c^2); the advertised c^-2 = 4
    # appears as the ratio between the half-scale and unit-scale constants
    assert abs(half.fitted_C / E2 - 1.0) < 0.2
    assert abs(half.fitted_C / unit.fitted_C / 4.0 - 1.0) < 0.2


@criterion(6, "positive-increase detector")
def test_criterion_6_positive_increase():
    sqrt_fn = sample_function(np.sqrt, log_uniform_grid(10.0, 1e9, 32))
    cert = find_certificate(sqrt_fn)
    assert cert is not None
    assert 0.45 <= cert.alpha <= 0.5
    assert cert.c0 >= 0.9
    assert verify_certificate(sqrt_fn, cert).passed

    log_fn = sample_function(np.log, log_uniform_grid(10.0, 1e9, 32))
    assert find_certificate(log_fn) is None
    fine = [round(0.05 + 0.01 * k, 2) for k in range(96)]
    assert find_certificate(log_fn, alpha_grid=fine) is None

    lhs, rhs, ok = integral_estimate_check(
        sample_function(lambda s: s, log_uniform_grid(1.0, 1e9, 32)),
        PositiveIncreaseCert(1.0, 1.0, 1.0),
        gamma=3.0,
    )
    assert ok and lhs == pytest.approx(1.0, rel=1e-9) and rhs == pytest.approx(1.0, rel=1e-12)

    rng = np.random.default_rng(2024)
    passed = 0
    for trial in range(50):
        beta = rng.uniform(0.15, 1.0)
        coeff = 10.0 ** rng.uniform(-1.0, 1.0)
        alpha = beta * rng.uniform(0.55, 1.0)
        c0 = rng.uniform(0.8, 1.0)
        gamma = (2.0 / alpha) * rng.uniform(1.1, 3.0)
        s0 = 10.0 ** rng.uniform(0.0, 2.0)
        fn = sample_function(
            lambda s: coeff * s**beta, log_uniform_grid(1.0, 1e9, 32)
        )
        cert = PositiveIncreaseCert(alpha, c0, s0)
        assert verify_certificate(fn, cert, seed=trial).passed
        lhs, rhs, ok = integral_estimate_check(fn, cert, gamma)
        assert ok, (trial, beta, alpha, gamma)
        passed += 1
    assert passed == 50


@criterion(7, "regularity classification")
def test_criterion_7_classification(sector_model, log_model, log_envelope):
    scurve = growth_curve(sector_model, log_uniform_grid(1e-3, 1e-1, 16)[::-1])
    srep = classify_regularity(scurve, sector_model)
    assert "class=holomorphic" in srep.notes
    assert srep.fitted_C == pytest.approx(math.sqrt(2.0) / math.e, rel=1e-3)

    lcurve = growth_curve(log_model, log_uniform_grid(0.25, 1.0, 16)[::-1])
    lrep = classify_regularity(lcurve, log_model)
    assert "class=exponential-yosida" in lrep.notes
    # the envelope tracks log s and refuses a positive-increase certificate
    log_ref = sample_function(np.log, log_uniform_grid(10.0, 1e8, 16))
    rel = asymp_compare(log_envelope, log_ref, (100.0, 1e7))
    assert rel.relation in ("asymp-equiv", "big-O")
    assert find_certificate(log_envelope) is None


@criterion(8, "log-quotient inverse asymptotic")
def test_criterion_8_log_quotient_asymptotic():
    fn = sample_function(np.sqrt, log_uniform_grid(10.0, 1e16, 32))
    mlog = m_log_transform(fn)
    levels = [1e4, 10.0**4.5, 1e5, 10.0**5.5, 1e6]
    frozen = [
        1.6046290174570157,
        1.554884254006003,
        1.5134751986667359,
        1.478425203991669,
        1.4483316247485836,
    ]
    ratios = []
    for level, want in zip(levels, frozen):
        got = left_inverse(mlog, level) / (level * math.log(level)) ** 2
        assert got == pytest.approx(want, rel=1e-9)
        # continuum inversion oracle, independent of the sampled grid
        inv = oracles.bisection_left_inverse(
            lambda s: 2.0 * math.sqrt(s) / math.log(s), level, 10.0, 1e16
        )
        assert got == pytest.approx(inv / (level * math.log(level)) ** 2, rel=1e-4)
        ratios.append(got)
    # convergence at decade resolution: successive drift under 10%,
    # decreasing toward the limit, and strictly positive
    for a, b in zip(ratios, ratios[1:]):
        assert 0.9 < b / a < 1.0
    assert ratios[-1] > 1.0
    # the uncorrected exponent diverges instead of settling
    wrong = [
        left_inverse(mlog, level) / (level * math.log(level)) ** 0.5
        for level in (1e4, 1e6)
    ]
    assert wrong[1] / wrong[0] > 100.0


@criterion(9, "determinism and exit codes")
def test_criterion_9_cli_contract(tmp_path):
    base = """\
[model]
variant = "lattice"
profile = "power"
alpha = 0.5

[grids]
t_min = 1e-3
t_max = 1e-1
t_per_decade = 8
s_min = 10.0
s_max = 1e9
s_per_decade = 8
eta_min = 10.0
eta_max = 1e6
eta_per_decade = 8

[output]
directory = "{out}"

[[checks]]
id = "sandwich_62"
epsilon = 0.1
{extra}"""
    out = tmp_path / "out"
    ok_cfg = tmp_path / "ok.toml"
    ok_cfg.write_text(base.format(out=out, extra=""), encoding="utf-8")
    assert cli.main(["check", "--config", str(ok_cfg)]) == 0

    def digest():
        return {
            p.name: hashlib.sha256(p.read_bytes()).hexdigest()
            for p in sorted(out.iterdir())
            if p.is_file()
        }

    first = digest()
    assert cli.main(["check", "--config", str(ok_cfg)]) == 0
    assert digest() == first
    assert set(first) >= {"growth.csv", "envelope.csv", "report.json", "summary.txt"}

    bad_cfg = tmp_path / "bad.toml"
    bad_cfg.write_text(
        base.format(out=out, extra="curve_scale = 1.5\n"), encoding="utf-8"
    )
    assert cli.main(["check", "--config", str(bad_cfg)]) == 1
    verdict = json.loads((out / "report.json").read_text())["checks"][0]["verdict"]
    assert verdict == "fail"

    broken_cfg = tmp_path / "broken.toml"
    broken_cfg.write_text("[model\nvariant =", encoding="utf-8")
    assert cli.main(["check", "--config", str(broken_cfg)]) == 2
