"""Positive-increase certificates and growth-condition checks.

A certificate (alpha, c0, s0) asserts f(lam*s) >= c0 * lam**alpha * f(s)
for all lam >= 1 and s >= s0 within the certified window.  Certificates
are window-scoped evidence found by scanning, then defended by randomized
probing; they are not symbolic proofs.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Optional, Union

import numpy as np

from .errors import ConfigError, DomainError, HypothesisUnmetError
from .monotone import MonotoneFn, evaluate, left_inverse, m_log_transform
from . import spectrum as _spectrum

_C_FLOOR = 1e-3           # below this the scan inf counts as numerical zero
_RATIO_TOL = 1e-9         # relative slack on inequality checks
_VERIFY_SLACK = 1e-6      # verify passes at c0*(1 - _VERIFY_SLACK)
_MIN_DECADES = 3.0


@dataclasses.dataclass(frozen=True)
class PositiveIncreaseCert:
    """Witness that f grows at least like s**alpha beyond s0."""

    alpha: float
    c0: float
    s0: float

    def __post_init__(self) -> None:
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ConfigError("certificate exponent alpha must be positive")
        if not (0.0 < self.c0 <= 1.0):
            raise ConfigError("certificate constant c0 must lie in (0, 1]")
        if not (self.s0 > 0.0 and math.isfinite(self.s0)):
            raise ConfigError("certificate threshold s0 must be positive")


@dataclasses.dataclass(frozen=True)
class CertVerification:
    passed: bool
    worst_ratio: float
    worst_lambda: float
    worst_s: float


@dataclasses.dataclass(frozen=True)
class ConditionVerdict:
    """Single growth-condition verdict with a re-evaluable witness."""

    passed: bool
    witness: dict


@dataclasses.dataclass(frozen=True)
class ConditionReport:
    c1: ConditionVerdict
    c2: ConditionVerdict
    c3: ConditionVerdict
    all_passed: bool


@dataclasses.dataclass(frozen=True)
class Prop33Result:
    passed: bool
    variant: str
    params: dict
    conclusion_holds: Optional[bool]


@dataclasses.dataclass(frozen=True)
class NecessityReport:
    chains_passed: bool
    chain_violation_s: Optional[float]
    size_passed: bool
    size_violation_s: Optional[float]
    growth_passed: Optional[bool]
    certificate: Optional[PositiveIncreaseCert]
    confirmed: bool
    note: str


def _require_decades(fn: MonotoneFn, decades: float) -> None:
    span = fn.domain_end / fn.domain_start
    if span < 10.0 ** decades * (1.0 - 1e-12):
        raise ConfigError(
            f"function domain spans {math.log10(span):.2f} decades; "
            f"need at least {decades:g}"
        )


def _decade_increments(fn: MonotoneFn, per_decade: int = 32) -> list[float]:
    # delta_m = inf over s in decade m of log10 f(10s) - log10 f(s);
    # for f = s**a this is exactly a in every decade.
    start = fn.domain_start
    hi = fn.domain_end / 10.0
    n_dec = int(np.floor(np.log10(hi / start) * (1.0 + 1e-12))) + 1
    deltas: list[float] = []
    for m in range(n_dec):
        a = start * 10.0 ** m
        b = min(start * 10.0 ** (m + 1), hi)
        if b <= a * (1.0 + 1e-12):
            break
        s = np.geomspace(a, b, per_decade + 1)
        s10 = np.minimum(10.0 * s, fn.domain_end)
        inc = np.log10(evaluate(fn, s10)) - np.log10(evaluate(fn, s))
        deltas.append(float(np.min(inc)))
    return deltas


def _projected_increment(deltas: list[float]) -> float:
    """Asymptotic per-decade log-increase: tail minimum, or a one-decade
    linear extrapolation when the increments are still strictly shrinking."""
    tail = deltas[-4:]
    shrinking = len(deltas) >= 2 and all(
        tail[i + 1] < tail[i] * (1.0 - 1e-9) for i in range(len(tail) - 1)
    )
    if shrinking:
        return 2.0 * deltas[-1] - deltas[-2]
    return min(deltas[-3:])


def _ratio_scan(
    fn: MonotoneFn, alpha: float, lambda_samples: int, s_samples: int
) -> tuple[float, float]:
    """Sampled inf of f(lam*s)/(f(s)*lam**alpha) and the stabilized s0.

    s0 is the start of the earliest decade from which the per-decade
    infima are non-decreasing; the returned inf is taken over s >= s0.
    """
    start, end = fn.domain_start, fn.domain_end
    s_vals = np.geomspace(start, end, s_samples)
    f_s = evaluate(fn, s_vals)
    per_s = np.empty(s_samples)
    for i, s in enumerate(s_vals):
        lam_max = end / s
        if lam_max <= 1.0 + 1e-12:
            per_s[i] = 1.0
            continue
        lam = np.geomspace(1.0, lam_max, lambda_samples)
        ratio = evaluate(fn, np.minimum(lam * s, end)) / (f_s[i] * lam ** alpha)
        per_s[i] = float(np.min(ratio))

    dec = np.floor(np.log10(s_vals / start) * (1.0 + 1e-12)).astype(int)
    dec = np.minimum(dec, dec[-1])
    dec_infs = [float(np.min(per_s[dec == d])) for d in range(dec[-1] + 1)]
    first_stable = 0
    for k in range(len(dec_infs) - 1, 0, -1):
        if dec_infs[k] < dec_infs[k - 1] * (1.0 - 1e-12):
            first_stable = k
            break
    s0 = float(s_vals[np.argmax(dec >= first_stable)])
    c = float(np.min(per_s[dec >= first_stable]))
    return c, s0


def find_certificate(
    fn: MonotoneFn,
    alpha_grid: Optional[list[float]] = None,
    lambda_samples: int = 64,
    s_samples: int = 64,
) -> Optional[PositiveIncreaseCert]:
    """Search for a positive-increase certificate, largest exponent first.

    Candidate exponents are capped by the projected per-decade
    log-increase of f: a finite window always admits a raw ratio inf
    above the floor for slowly varying functions (the windowed inf for
    log-like growth never falls near zero), so the cap is what rejects
    them.  For each surviving alpha the sampled inf c(alpha) must clear
    the numerical floor.
    """
    _require_decades(fn, _MIN_DECADES)
    if alpha_grid is None:
        # Exponents below 0.05 are indistinguishable from slow variation
        # on a desk-scale window, so the default grid stops there.
        alpha_grid = [k / 100.0 for k in range(100, 4, -1)]
    alphas = sorted({float(a) for a in alpha_grid}, reverse=True)
    if any(a <= 0.0 for a in alphas):
        raise ConfigError("alpha_grid entries must be positive")

    deltas = _decade_increments(fn)
    projected = _projected_increment(deltas)
    if projected <= 0.0:
        return None
    for alpha in alphas:
        if alpha > projected * (1.0 + 1e-12):
            continue
        c, s0 = _ratio_scan(fn, alpha, lambda_samples, s_samples)
        if c > _C_FLOOR:
            return PositiveIncreaseCert(alpha=alpha, c0=min(1.0, c), s0=s0)
    return None


def verify_certificate(
    fn: MonotoneFn,
    cert: PositiveIncreaseCert,
    probes: int = 512,
    seed: int = 0,
) -> CertVerification:
    """Defend a certificate on an independent randomized probe set."""
    if not (fn.domain_start <= cert.s0 < fn.domain_end):
        raise DomainError("certificate threshold s0 outside the function domain")
    rng = np.random.default_rng(seed)
    span = fn.domain_end / cert.s0
    lam = np.exp(rng.uniform(0.0, np.log(span), probes))
    s_hi = fn.domain_end / lam
    s = np.exp(rng.uniform(np.log(cert.s0), np.log(s_hi)))
    ratio = evaluate(fn, np.minimum(lam * s, fn.domain_end)) / (
        evaluate(fn, s) * lam ** cert.alpha
    )
    worst = int(np.argmin(ratio))
    worst_ratio = float(ratio[worst])
    return CertVerification(
        passed=worst_ratio >= cert.c0 * (1.0 - _VERIFY_SLACK),
        worst_ratio=worst_ratio,
        worst_lambda=float(lam[worst]),
        worst_s=float(s[worst]),
    )


def polynomial_floor_check(fn: MonotoneFn, cert: PositiveIncreaseCert) -> float:
    """Largest c1 with f(s) >= c1 * s**alpha at every sample beyond s0."""
    s0 = max(cert.s0, fn.domain_start)
    n = max(int(np.log10(fn.domain_end / s0) * 64) + 2, 2)
    dense = np.geomspace(s0, fn.domain_end, n)
    knots = fn.grid[(fn.grid >= s0) & (fn.grid <= fn.domain_end)]
    s = np.unique(np.concatenate([dense, knots]))
    return float(np.min(evaluate(fn, s) / s ** cert.alpha))


def _segment_integral_loglog(
    a: float, b: float, fa: float, fb: float, gamma: float
) -> float:
    # f follows A*s**beta on the segment; integrate s**(1-beta*gamma)/A**gamma.
    beta = 0.0 if fb == fa else math.log(fb / fa) / math.log(b / a)
    amp = fa / a ** beta
    p = 1.0 - beta * gamma
    if abs(p + 1.0) < 1e-12:
        return math.log(b / a) / amp ** gamma
    return (b ** (p + 1.0) - a ** (p + 1.0)) / ((p + 1.0) * amp ** gamma)


def _segment_integral_linear(
    a: float, b: float, fa: float, fb: float, gamma: float
) -> float:
    # Composite Simpson on s/f(s)**gamma with a chord model for f.
    n = 64
    s = np.linspace(a, b, 2 * n + 1)
    f = fa + (fb - fa) * (s - a) / (b - a)
    y = s / f ** gamma
    h = (b - a) / (2 * n)
    return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1:-1:2].sum() + 2.0 * y[2:-2:2].sum()))


def integral_estimate_check(
    fn: MonotoneFn, cert: PositiveIncreaseCert, gamma: float
) -> tuple[float, float, bool]:
    """Compare integral of s/f(s)**gamma from s0 against its closed-form cap.

    The left side is the exact piecewise integral over the window plus a
    certified tail bound anchored at the domain end; the cap is
    s0**2 / ((alpha*gamma - 2) * c0**gamma * f(s0)**gamma).
    """
    if gamma <= 2.0 / cert.alpha:
        raise HypothesisUnmetError(
            f"gamma = {gamma:g} must exceed 2/alpha = {2.0 / cert.alpha:g}"
        )
    agm2 = cert.alpha * gamma - 2.0
    s0 = max(cert.s0, fn.domain_start)
    knots = fn.grid[(fn.grid > s0) & (fn.grid <= fn.domain_end)]
    xs = np.concatenate([[s0], knots])
    if xs[-1] < fn.domain_end:
        xs = np.concatenate([xs, [fn.domain_end]])
    fvals = evaluate(fn, xs)

    total = 0.0
    seg = (
        _segment_integral_loglog
        if fn.interpolation == "loglog"
        else _segment_integral_linear
    )
    for i in range(len(xs) - 1):
        total += seg(float(xs[i]), float(xs[i + 1]), float(fvals[i]), float(fvals[i + 1]), gamma)

    end = fn.domain_end
    f_end = float(evaluate(fn, end))
    tail = end ** 2 / (agm2 * (cert.c0 * f_end) ** gamma)
    lhs = total + tail
    rhs = s0 ** 2 / (agm2 * cert.c0 ** gamma * float(fvals[0]) ** gamma)
    return lhs, rhs, lhs <= rhs * (1.0 + _RATIO_TOL)


def _c2_smallness(fn: MonotoneFn) -> ConditionVerdict:
    # Crossing point: first grid index past the last f(s) >= s violation,
    # plus decade-wise strictly decreasing sups of f(s)/s.
    r = fn.values / fn.grid
    above = np.nonzero(r >= 1.0)[0]
    if len(above) == 0:
        crossing = float(fn.grid[0])
    elif above[-1] + 1 < len(fn.grid):
        crossing = float(fn.grid[above[-1] + 1])
    else:
        return ConditionVerdict(False, {"crossing": None, "decade_sups": ()})
    dec = np.floor(np.log10(fn.grid / fn.grid[0]) * (1.0 + 1e-12)).astype(int)
    sups = [float(np.max(r[dec == d])) for d in range(int(dec[-1]) + 1) if np.any(dec == d)]
    decreasing = all(
        sups[i + 1] < sups[i] * (1.0 - _RATIO_TOL) for i in range(len(sups) - 1)
    )
    return ConditionVerdict(
        decreasing, {"crossing": crossing, "decade_sups": tuple(sups)}
    )


def _c3_transform_monotone(fn: MonotoneFn) -> ConditionVerdict:
    try:
        tr = m_log_transform(fn)
    except DomainError as exc:
        return ConditionVerdict(False, {"s1": None, "reason": str(exc)})
    raw = np.asarray(tr.meta["raw_values"])
    grid = tr.grid
    last_viol = -1
    for i in range(len(raw) - 1):
        if raw[i + 1] < raw[i] * (1.0 - 1e-12):
            last_viol = i
    s1 = float(grid[last_viol + 1]) if last_viol >= 0 else float(grid[0])
    tail_spans_decade = grid[-1] >= s1 * 10.0 * (1.0 - 1e-9)
    return ConditionVerdict(
        bool(tail_spans_decade),
        {"s1": s1, "first_decreasing_pair": tr.meta["first_decreasing_pair"]},
    )


def check_c_conditions(fn: MonotoneFn) -> ConditionReport:
    """Audit the three growth conditions behind the Banach-space bound:
    positive increase, strict sublinearity, and monotone log-quotient."""
    _require_decades(fn, _MIN_DECADES)
    cert = find_certificate(fn)
    if cert is not None:
        c1 = ConditionVerdict(True, {"certificate": cert})
    else:
        deltas = _decade_increments(fn)
        c1 = ConditionVerdict(
            False,
            {
                "decade_increments": tuple(deltas),
                "projected_increment": _projected_increment(deltas),
            },
        )
    c2 = _c2_smallness(fn)
    c3 = _c3_transform_monotone(fn)
    return ConditionReport(c1, c2, c3, c1.passed and c2.passed and c3.passed)


def _decade_starts(fn: MonotoneFn) -> list[float]:
    out = []
    s = fn.domain_start
    while s <= fn.domain_end / 10.0 * (1.0 + 1e-12):
        out.append(s)
        s *= 10.0
    return out or [fn.domain_start]


def _holds_from(
    fn: MonotoneFn, s1: float, upper: "np.ufunc | object", samples: int = 200
) -> bool:
    s = np.geomspace(s1, fn.domain_end, samples)
    return bool(np.all(evaluate(fn, s) <= upper(s) * (1.0 + _RATIO_TOL)))


def _ratio_holds_from(fn: MonotoneFn, s1: float, lower: object) -> bool:
    # lower(lam, s) is the required floor for f(lam*s)/f(s).
    s_vals = np.geomspace(s1, fn.domain_end, 24)
    for s in s_vals:
        lam_max = fn.domain_end / s
        if lam_max <= 1.0 + 1e-12:
            continue
        lam = np.geomspace(1.0, lam_max, 24)
        got = evaluate(fn, np.minimum(lam * s, fn.domain_end)) / evaluate(fn, s)
        if np.any(got < lower(lam, s) * (1.0 - _RATIO_TOL)):
            return False
    return True


def _conclusion_beyond(fn: MonotoneFn, s1: float) -> Optional[bool]:
    # The claimed conclusion: no decreasing adjacent pair of the
    # log-quotient transform at or beyond s1.
    try:
        tr = m_log_transform(fn)
    except DomainError:
        return None
    raw = np.asarray(tr.meta["raw_values"])
    keep = tr.grid >= s1 * (1.0 - 1e-12)
    vals = raw[keep]
    if len(vals) < 2:
        return None
    return bool(np.all(vals[1:] >= vals[:-1] * (1.0 - 1e-12)))


def prop33_check(fn: MonotoneFn, variant: str) -> Prop33Result:
    """Sufficient conditions for a strictly increasing log-quotient.

    Variant "i" searches (gamma, delta, s1) with delta = gamma/(1-gamma);
    variant "ii" searches (alpha, s1) for the pure power-ratio form.  On
    success the conclusion is cross-checked at grid resolution.
    """
    _require_decades(fn, _MIN_DECADES)
    starts = _decade_starts(fn)
    if variant == "ii":
        for alpha in (k / 100.0 for k in range(99, 0, -1)):
            thr = math.exp(-1.0 / alpha)
            for s1 in starts:
                if not _holds_from(fn, s1, lambda s: thr * s):
                    continue
                if not _ratio_holds_from(fn, s1, lambda lam, s: lam ** alpha):
                    continue
                concl = _conclusion_beyond(fn, s1)
                return Prop33Result(
                    passed=bool(concl),
                    variant="ii",
                    params={"alpha": alpha, "s1": s1},
                    conclusion_holds=concl,
                )
        return Prop33Result(False, "ii", {}, None)
    if variant == "i":
        for gamma in (k / 10.0 for k in range(1, 10)):
            delta = gamma / (1.0 - gamma)
            for s1 in starts:
                if s1 <= 1.0:
                    continue
                if not _holds_from(fn, s1, lambda s: s ** gamma):
                    continue
                floor = lambda lam, s: (np.log(lam * s) / np.log(s)) ** (1.0 + delta)
                if not _ratio_holds_from(fn, s1, floor):
                    continue
                concl = _conclusion_beyond(fn, s1)
                return Prop33Result(
                    passed=bool(concl),
                    variant="i",
                    params={"gamma": gamma, "delta": delta, "s1": s1},
                    conclusion_holds=concl,
                )
        return Prop33Result(False, "i", {}, None)
    raise ConfigError(f"unknown variant {variant!r}; expected 'i' or 'ii'")


def _growth_big_o(
    model: object, env: MonotoneFn, c: float = 0.5, per_decade: int = 16
) -> Optional[bool]:
    """Decade-rule check of derivative-norm growth against the inverted
    envelope at scale c; None when the comparable window is too narrow."""
    t_lo = 1.0 / (c * env.value_max * (1.0 - 1e-9))
    t_hi = min(1.0 / (c * env.value_min * (1.0 + 1e-9)), 1.0)
    if not (t_hi > t_lo * 100.0):
        return None
    n = max(int(np.log10(t_hi / t_lo) * per_decade) + 2, 2)
    t = np.geomspace(t_lo, t_hi, n)
    ratios = np.empty(n)
    for i, ti in enumerate(t):
        lhs = _spectrum.semigroup_derivative_norm(model, float(ti))
        ratios[i] = lhs / left_inverse(env, 1.0 / (c * ti))
    from .monotone import decade_bounded

    # Orient by reciprocal time so the asymptotic end t -> 0 is scanned last.
    ok, _ = decade_bounded(1.0 / t[::-1], ratios[::-1], 1.10)
    return ok


def necessity_sandwich_check(
    model: object, fn: MonotoneFn, delta: float, epsilon: float
) -> NecessityReport:
    """Empirical instantiation of the necessity direction: when the
    two-sided envelope chain, the smallness hypothesis, and the growth
    bound all hold, a positive-increase certificate should exist."""
    if not (0.0 < delta <= 1.0):
        raise ConfigError("delta must lie in (0, 1]")
    if not (0.0 < epsilon < 1.0):
        raise ConfigError("epsilon must lie in (0, 1)")
    b = _spectrum.imag_bound(model)
    s = fn.grid[fn.grid >= max(b * (1.0 + 1e-12), fn.domain_start)]
    if len(s) < 2:
        raise ConfigError("no probe points above the model's axis window")
    env = _spectrum.resolvent_envelope(model, s)
    env_vals = env.values
    f_vals = evaluate(fn, s)

    lower_ok = f_vals <= env_vals * (1.0 + _RATIO_TOL)
    upper_ok = env_vals <= f_vals / delta * (1.0 + _RATIO_TOL)
    chain_ok = lower_ok & upper_ok
    chains_passed = bool(np.all(chain_ok))
    chain_violation = None if chains_passed else float(s[np.argmin(chain_ok)])

    size_ok = env_vals <= delta * epsilon * s * (1.0 + _RATIO_TOL)
    size_passed = bool(np.all(size_ok))
    size_violation = None if size_passed else float(s[np.argmin(size_ok)])

    growth = _growth_big_o(model, env) if chains_passed and size_passed else None

    certificate = None
    if chains_passed and size_passed:
        try:
            certificate = find_certificate(env)
        except ConfigError:
            certificate = None

    confirmed = bool(
        chains_passed and size_passed and growth is True and certificate is not None
    )
    if not chains_passed:
        note = "envelope chain violated"
    elif not size_passed:
        note = "smallness hypothesis violated"
    elif certificate is None:
        note = "no certificate found; hypothesis of growth bound must fail"
    elif growth is None:
        note = "growth window too narrow to test; certificate found"
    else:
        note = "positive increase confirmed" if confirmed else "growth bound failed"
    return NecessityReport(
        chains_passed=chains_passed,
        chain_violation_s=chain_violation,
        size_passed=size_passed,
        size_violation_s=size_violation,
        growth_passed=growth,
        certificate=certificate,
        confirmed=confirmed,
        note=note,
    )
