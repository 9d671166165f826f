"""Theorem-checking harness over growth curves and monotone envelopes.

Every check reduces an asymptotic claim to an operational decade rule:
the decade-wise sups of a ratio series must stay finite and
non-increasing within 10 percent slack over at least two decades,
scanned toward the asymptotic end of the window.  Reports carry the
ratio evidence so a verdict can be audited offline.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Optional, Sequence, Union

import numpy as np

from .errors import ConfigError, DomainError, HypothesisUnmetError
from .monotone import (
    MonotoneFn,
    decade_bounded,
    evaluate,
    left_inverse,
    m_inf_transform,
    m_log_transform,
)
from .spectrum import (
    FinitePoints,
    LatticeFamily,
    SampledCurve,
    SpectralModel,
    UnionModel,
    imag_bound,
    log_resolvent_criterion,
    resolvent_envelope,
    resolvent_norm_on_axis,
    semigroup_derivative_norm_details,
    sup_real,
)
from .increase import check_c_conditions, find_certificate, verify_certificate

THEOREM_IDS = (
    "banach_upper",
    "hilbert_upper",
    "lower_41b",
    "resolvent_41a",
    "sandwich_62",
    "yosida_log",
    "classical_cp",
    "classical_eberhardt",
    "holomorphic_classify",
)
_VERDICTS = ("pass", "fail", "inconclusive")
_SLACK = 1.10
_MIN_WINDOW_DECADES = 2.0
_RULE_NOTE = (
    "rule: decade-wise sup ratios finite and non-increasing within 10% "
    "slack over >= 2 decades toward the asymptotic end"
)


@dataclasses.dataclass(frozen=True)
class GrowthCurve:
    """Sampled derivative-norm curve with certified truncation metadata."""

    t_grid: np.ndarray
    values: np.ndarray
    model_ref: str
    upper_bounds: np.ndarray
    saturated: tuple[bool, ...]

    def __post_init__(self) -> None:
        t = np.asarray(self.t_grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        u = np.asarray(self.upper_bounds, dtype=float)
        if t.ndim != 1 or len(t) < 2:
            raise ConfigError("growth curve needs at least two time samples")
        if not np.all(t > 0.0) or not np.all(np.diff(t) < 0.0):
            raise ConfigError("t_grid must be positive and strictly decreasing")
        if len(v) != len(t) or len(u) != len(t) or len(self.saturated) != len(t):
            raise ConfigError("curve arrays must share one length")
        if not np.all(v > 0.0):
            raise ConfigError("curve values must be strictly positive")
        for arr in (t, v, u):
            arr.setflags(write=False)
        object.__setattr__(self, "t_grid", t)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "upper_bounds", u)
        object.__setattr__(self, "saturated", tuple(bool(x) for x in self.saturated))


@dataclasses.dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    fitted_c: Optional[float]
    fitted_C: float
    ratio_series: tuple[tuple[float, float], ...]
    verdict: str
    notes: str

    def __post_init__(self) -> None:
        if self.theorem_id not in THEOREM_IDS:
            raise ConfigError(
                f"unknown theorem id {self.theorem_id!r}; known: {THEOREM_IDS}"
            )
        if self.verdict not in _VERDICTS:
            raise ConfigError(f"verdict must be one of {_VERDICTS}")
        if len(self.ratio_series) == 0:
            raise ConfigError("ratio_series must be non-empty")


def model_ref(model: SpectralModel) -> str:
    """Short auditable identifier for a spectral model."""
    if isinstance(model, LatticeFamily):
        p = model.profile
        if isinstance(p, tuple) and p[0] == "power":
            return f"lattice:power(a={p[1]:g},C={p[2]:g})"
        if isinstance(p, tuple) and p[0] == "log":
            return f"lattice:log(C={p[1]:g})"
        return "lattice:sampled"
    if isinstance(model, FinitePoints):
        return f"finite:{len(model.points)}pts"
    if isinstance(model, SampledCurve):
        return f"curve:{len(model.points)}pts"
    if isinstance(model, UnionModel):
        return "union[" + ",".join(model_ref(m) for m in model.parts) + "]"
    return type(model).__name__


def growth_curve(model: SpectralModel, t_grid: Sequence[float]) -> GrowthCurve:
    """Sample the derivative norm on a decreasing time grid."""
    t = np.asarray(list(t_grid), dtype=float)
    if t.ndim != 1 or len(t) < 2 or not np.all(t > 0.0) or not np.all(np.diff(t) < 0.0):
        raise ConfigError("t_grid must be positive and strictly decreasing")
    vals = np.empty(len(t))
    ups = np.empty(len(t))
    sat = []
    for i, ti in enumerate(t):
        d = semigroup_derivative_norm_details(model, float(ti))
        vals[i] = d.value
        ups[i] = d.upper_bound
        sat.append(d.saturated)
    if sup_real(model) <= 0.0 and not np.all(vals[1:] >= vals[:-1] * (1.0 - 1e-9)):
        raise ConfigError(
            "derivative norm must be non-decreasing as t decreases for "
            "spectra in the closed left half-plane"
        )
    return GrowthCurve(
        t_grid=t,
        values=vals,
        model_ref=model_ref(model),
        upper_bounds=ups,
        saturated=tuple(sat),
    )


def k_function(curve: GrowthCurve) -> MonotoneFn:
    """Running sup of the curve in reciprocal time, from tau = 1/t_max up."""
    keep = curve.t_grid <= 1.0 * (1.0 + 1e-12)
    if not np.any(keep):
        raise DomainError("curve has no samples at t <= 1")
    # t_grid is strictly decreasing, so reciprocal time ascends as-is.
    tau = 1.0 / curve.t_grid[keep]
    vals = np.maximum.accumulate(curve.values[keep])
    return MonotoneFn(
        grid=tau,
        values=vals,
        interpolation="loglog",
        meta={"argument": "reciprocal_time", "model_ref": curve.model_ref},
    )


def k_epsilon(curve: GrowthCurve, epsilon: float) -> Optional[MonotoneFn]:
    """Scaled reciprocal-time curve on its largest non-decreasing tail;
    None when no two-point monotone tail exists."""
    if not (0.0 < epsilon < 1.0):
        raise ConfigError("epsilon must lie in (0, 1)")
    keep = curve.t_grid <= 1.0 * (1.0 + 1e-12)
    if not np.any(keep):
        raise DomainError("curve has no samples at t <= 1")
    tau = 1.0 / curve.t_grid[keep]
    vals = curve.values[keep] / (1.0 - epsilon)
    start = len(vals) - 1
    while start > 0 and vals[start] >= vals[start - 1] * (1.0 - 1e-12):
        start -= 1
    if len(vals) - start < 2:
        return None
    return MonotoneFn(
        grid=tau[start:],
        values=vals[start:],
        interpolation="loglog",
        meta={
            "argument": "reciprocal_time",
            "epsilon": epsilon,
            "tail_start_tau": float(tau[start]),
        },
    )


def _inverse_ratio_series(
    curve: GrowthCurve, env: MonotoneFn, scale: float
) -> list[tuple[float, float]]:
    # (t, ||AT(t)|| / env^{-1}(1/(scale*t))) over the t where the level
    # 1/(scale*t) lands inside the envelope's range.
    pts = []
    for t, v in zip(curve.t_grid, curve.values):
        y = 1.0 / (scale * t)
        if y < env.value_min * (1.0 - 1e-12) or y > env.value_max * (1.0 + 1e-12):
            continue
        y = min(max(y, env.value_min), env.value_max)
        pts.append((float(t), float(v / left_inverse(env, y))))
    return pts


def _decade_verdict(pts: list[tuple[float, float]]) -> tuple[str, float, np.ndarray]:
    """Apply the decade rule to a t-indexed ratio series."""
    if len(pts) < 2:
        return "inconclusive", math.nan, np.asarray([math.nan])
    t = np.asarray([p[0] for p in pts])
    r = np.asarray([p[1] for p in pts])
    order = np.argsort(1.0 / t)
    tau, r = (1.0 / t)[order], r[order]
    ok, sups = decade_bounded(tau, r, _SLACK)
    window = tau[-1] / tau[0]
    if window < 10.0 ** _MIN_WINDOW_DECADES * (1.0 - 1e-12):
        return "inconclusive", float(np.max(r)), sups
    return ("pass" if ok else "fail"), float(np.max(r)), sups


def _empty_report(theorem_id: str, note: str, t0: float) -> BoundReport:
    return BoundReport(
        theorem_id=theorem_id,
        fitted_c=None,
        fitted_C=math.nan,
        ratio_series=((t0, math.inf),),
        verdict="inconclusive",
        notes=note + "; " + _RULE_NOTE,
    )


def check_banach_upper(
    curve: GrowthCurve, M: MonotoneFn, c_grid: Optional[Sequence[float]] = None
) -> BoundReport:
    """Derivative norm against the inverted log-quotient envelope at a
    searched scale c in (0,1)."""
    conds = check_c_conditions(M)
    if not conds.all_passed:
        failed = [
            name
            for name, v in (("C1", conds.c1), ("C2", conds.c2), ("C3", conds.c3))
            if not v.passed
        ]
        raise HypothesisUnmetError(
            f"envelope fails growth conditions {', '.join(failed)}"
        )
    if c_grid is None:
        c_grid = [k / 10.0 for k in range(1, 10)]
    if any(not (0.0 < c < 1.0) for c in c_grid):
        raise ConfigError("c_grid entries must lie in (0, 1)")
    mlog = m_log_transform(M)

    best: Optional[tuple[str, float, float, list]] = None
    for c in c_grid:
        pts = _inverse_ratio_series(curve, mlog, c)
        verdict, worst, _ = _decade_verdict(pts)
        cand = (verdict, worst, c, pts)
        if best is None:
            best = cand
        elif verdict == "pass" and (best[0] != "pass" or worst < best[1]):
            best = cand
    if best is None or len(best[3]) == 0:
        return _empty_report(
            "banach_upper",
            "log-quotient envelope undefined on the comparison window",
            float(curve.t_grid[0]),
        )
    verdict, worst, c, pts = best
    return BoundReport(
        theorem_id="banach_upper",
        fitted_c=c,
        fitted_C=worst,
        ratio_series=tuple(pts),
        verdict=verdict,
        notes=f"best scale c={c:g} of {len(list(c_grid))} candidates; " + _RULE_NOTE,
    )


def check_hilbert_upper(curve: GrowthCurve, M: MonotoneFn) -> BoundReport:
    """Derivative norm against the inverted envelope; requires a defended
    positive-increase certificate."""
    cert = find_certificate(M)
    if cert is None:
        raise HypothesisUnmetError(
            "no positive-increase certificate found for the envelope"
        )
    ver = verify_certificate(M, cert)
    if not ver.passed:
        raise HypothesisUnmetError(
            f"certificate failed randomized verification (worst ratio "
            f"{ver.worst_ratio:.6g} < c0 {cert.c0:.6g})"
        )
    pts = _inverse_ratio_series(curve, M, 1.0)
    if not pts:
        return _empty_report(
            "hilbert_upper",
            "envelope undefined on the comparison window",
            float(curve.t_grid[0]),
        )
    verdict, worst, _ = _decade_verdict(pts)
    return BoundReport(
        theorem_id="hilbert_upper",
        fitted_c=None,
        fitted_C=worst,
        ratio_series=tuple(pts),
        verdict=verdict,
        notes=(
            f"certificate alpha={cert.alpha:g} c0={cert.c0:.6g} s0={cert.s0:g}; "
            + _RULE_NOTE
        ),
    )


def _growth_hypothesis_ratios(K: MonotoneFn) -> tuple[bool, np.ndarray]:
    # t = O(K(t)) in reciprocal-time coordinates.
    ok, _ = decade_bounded(K.grid, K.grid / K.values, _SLACK)
    return ok, K.grid / K.values


def check_lower_41b(curve: GrowthCurve, M: MonotoneFn, c: float) -> BoundReport:
    """Inverted envelope at scale c against the running-sup curve."""
    if not (0.0 < c <= 1.0):
        raise ConfigError("c must lie in (0, 1]")
    K = k_function(curve)
    ok_h, _ = _growth_hypothesis_ratios(K)
    if not ok_h:
        raise HypothesisUnmetError("growth hypothesis t = O(K(t)) fails on the window")
    pts = []
    for t in curve.t_grid:
        if t > 1.0 * (1.0 + 1e-12):
            continue
        y = 1.0 / (c * t)
        if y < M.value_min * (1.0 - 1e-12) or y > M.value_max * (1.0 + 1e-12):
            continue
        y = min(max(y, M.value_min), M.value_max)
        tau = min(max(1.0 / t, K.domain_start), K.domain_end)
        pts.append((float(t), float(left_inverse(M, y) / evaluate(K, tau))))
    if not pts:
        return _empty_report(
            "lower_41b",
            "envelope undefined on the comparison window",
            float(curve.t_grid[0]),
        )
    verdict, worst, _ = _decade_verdict(pts)
    return BoundReport(
        theorem_id="lower_41b",
        fitted_c=c,
        fitted_C=worst,
        ratio_series=tuple(pts),
        verdict=verdict,
        notes=f"scale c={c:g}; " + _RULE_NOTE,
    )


def check_resolvent_41a(
    model: SpectralModel,
    K: MonotoneFn,
    c_grid: Optional[Sequence[float]] = None,
    eta_grid: Optional[Sequence[float]] = None,
) -> BoundReport:
    """Axis resolvent norm against the inverse of the running-sup curve."""
    if c_grid is None:
        c_grid = [k / 10.0 for k in range(1, 10)]
    if any(not (0.0 < cc < 1.0) for cc in c_grid):
        raise ConfigError("c_grid entries must lie in (0, 1)")
    ok_h, hratios = _growth_hypothesis_ratios(K)
    if not ok_h:
        return BoundReport(
            theorem_id="resolvent_41a",
            fitted_c=None,
            fitted_C=float(np.max(hratios)),
            ratio_series=tuple(
                (float(x), float(r)) for x, r in zip(K.grid, hratios)
            ),
            verdict="fail",
            notes="growth hypothesis t = O(K(t)) fails on the window; " + _RULE_NOTE,
        )
    if eta_grid is None:
        lo = max(10.0, 2.0 * imag_bound(model) + 1.0)
        eta_grid = np.geomspace(lo, lo * 1e6, 97)
    eta = np.asarray(list(eta_grid), dtype=float)

    best: Optional[tuple[str, float, float, list, int]] = None
    for c in c_grid:
        pts = []
        clipped = 0
        for e in eta:
            y = c * e
            if y < K.value_min * (1.0 - 1e-12) or y > K.value_max * (1.0 + 1e-12):
                clipped += 1
                continue
            y = min(max(y, K.value_min), K.value_max)
            pts.append(
                (float(e), float(resolvent_norm_on_axis(model, e) * left_inverse(K, y)))
            )
        if len(pts) < 2:
            continue
        x = np.asarray([p[0] for p in pts])
        r = np.asarray([p[1] for p in pts])
        ok, _ = decade_bounded(x, r, _SLACK)
        wide = x[-1] / x[0] >= 10.0 ** _MIN_WINDOW_DECADES * (1.0 - 1e-12)
        verdict = ("pass" if ok else "fail") if wide else "inconclusive"
        worst = float(np.max(r))
        cand = (verdict, worst, c, pts, clipped)
        if best is None:
            best = cand
        elif verdict == "pass" and (best[0] != "pass" or worst < best[1]):
            best = cand
    if best is None:
        return _empty_report(
            "resolvent_41a",
            "running-sup inverse undefined at every probe height",
            float(eta[0]),
        )
    verdict, worst, c, pts, clipped = best
    clip_note = f"; {clipped} probe heights clipped outside the inverse domain" if clipped else ""
    return BoundReport(
        theorem_id="resolvent_41a",
        fitted_c=c,
        fitted_C=worst,
        ratio_series=tuple(pts),
        verdict=verdict,
        notes=f"best scale c={c:g}{clip_note}; " + _RULE_NOTE,
    )


def _smallness_holds(M: MonotoneFn) -> bool:
    # M(s) = o(s) at desk scale: decade sups of M(s)/s strictly decreasing
    # and the final sup below one.
    r = M.values / M.grid
    dec = np.floor(np.log10(M.grid / M.grid[0]) * (1.0 + 1e-12)).astype(int)
    sups = [float(np.max(r[dec == d])) for d in range(int(dec[-1]) + 1) if np.any(dec == d)]
    dec_ok = all(sups[i + 1] < sups[i] * (1.0 - 1e-9) for i in range(len(sups) - 1))
    return dec_ok and sups[-1] < 1.0


def check_sandwich_62(curve: GrowthCurve, M: MonotoneFn, epsilon: float) -> BoundReport:
    """Two-sided match of the derivative norm against the inverted
    stretched-envelope infimum, within a relative band of width epsilon."""
    if not (0.0 < epsilon < 1.0):
        raise ConfigError("epsilon must lie in (0, 1)")
    if not _smallness_holds(M):
        raise HypothesisUnmetError("envelope must be o(s) across the window")
    if M.value_max < 2.0 * M.value_min:
        raise HypothesisUnmetError(
            "envelope divergence not visible at grid resolution"
        )
    minf = m_inf_transform(M)
    pts = _inverse_ratio_series(curve, minf, 1.0)
    if not pts:
        return _empty_report(
            "sandwich_62",
            "stretched-envelope infimum undefined on the comparison window",
            float(curve.t_grid[0]),
        )
    lo, hi = 1.0 - epsilon, 1.0 + epsilon
    in_band = [lo <= r <= hi for _, r in pts]
    # pts follow curve order: t strictly decreasing; find the largest t
    # from which the band holds down to the smallest sampled t.
    t0 = None
    for i in range(len(pts)):
        if all(in_band[i:]):
            t0 = pts[i][0]
            break
    verdict = "pass" if t0 is not None else "fail"
    tail = [r for (t, r) in pts if t0 is not None and t <= t0]
    fitted = float(np.max(np.abs(tail))) if tail else float(np.max([r for _, r in pts]))
    per_dec = (len(M.grid) - 1) / math.log10(M.domain_end / M.domain_start)
    t0_note = f"band entered at t0={t0:.6g}" if t0 is not None else "band never closes"
    return BoundReport(
        theorem_id="sandwich_62",
        fitted_c=None,
        fitted_C=fitted,
        ratio_series=tuple(pts),
        verdict=verdict,
        notes=(
            f"epsilon={epsilon:g}; {t0_note}; envelope grid resolution "
            f"{per_dec:.1f} points/decade; divergence checked at grid "
            f"resolution only; " + _RULE_NOTE
        ),
    )


def check_yosida_log(
    model: SpectralModel,
    omega: float = 0.0,
    eta_grid: Optional[Sequence[float]] = None,
) -> BoundReport:
    """Vanishing log-weighted resolvent along a shifted axis, the
    differentiability criterion in its little-o form."""
    if eta_grid is None:
        lo = max(10.0, 2.0 * imag_bound(model) + 1.0)
        eta_grid = np.geomspace(lo, lo * 1e6, 97)
    eta = np.asarray(list(eta_grid), dtype=float)
    rep = log_resolvent_criterion(model, omega, eta)
    passed = rep.relation in ("little-o", "asymp-equiv")
    # One representative point per decade of probe height.
    lead = 10.0 ** np.floor(np.log10(eta[0]) + 1e-12)
    series = tuple(
        (float(lead * 10.0 ** k), float(r)) for k, r in enumerate(rep.decade_sups)
    )
    return BoundReport(
        theorem_id="yosida_log",
        fitted_c=None,
        fitted_C=rep.fitted_constant,
        ratio_series=series,
        verdict="pass" if passed else "fail",
        notes=(
            f"log-weighted axis resolvent relation: {rep.relation}; "
            f"omega={omega:g}; " + _RULE_NOTE
        ),
    )


def check_classical(curve: GrowthCurve, alpha: float, which: str) -> BoundReport:
    """Curve against a classical polynomial comparison envelope."""
    cp, eb = classical_envelopes(alpha, list(curve.t_grid))
    env = {"classical_cp": cp, "classical_eberhardt": eb}.get(which)
    if env is None:
        raise ConfigError("which must be 'classical_cp' or 'classical_eberhardt'")
    pts = [
        (float(t), float(v / evaluate(env, min(max(1.0 / t, env.domain_start), env.domain_end))))
        for t, v in zip(curve.t_grid, curve.values)
    ]
    verdict, worst, _ = _decade_verdict(pts)
    return BoundReport(
        theorem_id=which,
        fitted_c=None,
        fitted_C=worst,
        ratio_series=tuple(pts),
        verdict=verdict,
        notes=f"exponent {env.meta['exponent']:g} in reciprocal time; " + _RULE_NOTE,
    )


def _decade_slopes(curve: GrowthCurve) -> list[float]:
    # Log-log slope of the curve per decade of t.
    lt = np.log10(curve.t_grid)
    lv = np.log10(curve.values)
    bins = np.floor(lt + 1e-12).astype(int)
    slopes = []
    for b in range(int(bins.min()), int(bins.max()) + 1):
        sel = bins == b
        if np.count_nonzero(sel) >= 3:
            slopes.append(float(np.polyfit(lt[sel], lv[sel], 1)[0]))
    return slopes


def classify_regularity(curve: GrowthCurve, model: SpectralModel) -> BoundReport:
    """Assign a regularity class from the curve and the axis resolvent.

    Holomorphic needs both the bounded time-scaled curve and the bounded
    height-scaled axis resolvent; the axis condition vetoes curves whose
    apparent boundedness is a truncation artifact.  Polynomial classes
    come from a stable log-log slope; the exponential regime is detected
    through a logarithmic resolvent envelope with no positive-increase
    certificate.
    """
    t = curve.t_grid
    prod_pts = [(float(tt), float(tt * vv)) for tt, vv in zip(t, curve.values)]
    prod_verdict, prod_worst, _ = _decade_verdict(prod_pts)

    lo = max(10.0, 2.0 * imag_bound(model) + 1.0)
    eta = np.geomspace(lo, lo * 1e6, 97)
    axis_ratio = np.asarray(
        [e * resolvent_norm_on_axis(model, float(e)) for e in eta]
    )
    axis_ok, _ = decade_bounded(eta, axis_ratio, _SLACK)

    if prod_verdict == "pass" and axis_ok:
        return BoundReport(
            theorem_id="holomorphic_classify",
            fitted_c=None,
            fitted_C=prod_worst,
            ratio_series=tuple(prod_pts),
            verdict="pass",
            notes=(
                "class=holomorphic; time-scaled curve and height-scaled "
                "axis resolvent both bounded; " + _RULE_NOTE
            ),
        )

    slopes = _decade_slopes(curve)
    mean_slope = float(np.mean(slopes)) if slopes else math.nan
    stable = (
        len(slopes) >= 2
        and mean_slope < -0.2
        and all(abs(s - mean_slope) <= 0.15 * abs(mean_slope) for s in slopes)
    )
    if stable:
        alpha = -1.0 / mean_slope
        return BoundReport(
            theorem_id="holomorphic_classify",
            fitted_c=None,
            fitted_C=prod_worst,
            ratio_series=tuple(prod_pts),
            verdict="pass",
            notes=(
                f"class=polynomial-gevrey; alpha={alpha:.4g}; gevrey class "
                f"beta > {-mean_slope:.4g}; log-log slope {mean_slope:.4g} "
                f"stable within 15%; " + _RULE_NOTE
            ),
        )

    # Eight decades: slow envelopes need the long window before their
    # shrinking decade increments drop below the certificate floor.
    s_grid = np.geomspace(lo, lo * 1e8, 129)
    env = resolvent_envelope(model, s_grid)
    log_ratio = env.values / np.log(env.grid)
    log_ok, _ = decade_bounded(env.grid, log_ratio, _SLACK)
    cert = None
    try:
        cert = find_certificate(env)
    except ConfigError:
        pass
    if log_ok and cert is None and (any(curve.saturated) or not slopes or not stable):
        return BoundReport(
            theorem_id="yosida_log",
            fitted_c=None,
            fitted_C=float(np.max(log_ratio)),
            ratio_series=tuple(
                (float(s), float(r)) for s, r in zip(env.grid, log_ratio)
            ),
            verdict="pass",
            notes=(
                "class=exponential-yosida; resolvent envelope within a "
                "constant of log s and no positive-increase certificate; "
                + _RULE_NOTE
            ),
        )
    unstable = len(slopes) >= 2 and not stable
    return BoundReport(
        theorem_id="holomorphic_classify",
        fitted_c=None,
        fitted_C=prod_worst,
        ratio_series=tuple(prod_pts),
        verdict="inconclusive" if unstable else "fail",
        notes=(
            "class=other; log-log slope "
            + (f"unstable beyond 15% ({slopes})" if unstable else "criteria not met")
            + "; "
            + _RULE_NOTE
        ),
    )


def classical_envelopes(
    M_alpha: float, t_grid: Sequence[float], eps: float = 0.05
) -> tuple[MonotoneFn, MonotoneFn]:
    """Classical polynomial comparison envelopes in reciprocal time."""
    if not (0.0 < M_alpha <= 1.0):
        raise ConfigError("alpha must lie in (0, 1]")
    tau = np.sort(1.0 / np.asarray(list(t_grid), dtype=float))
    p_cp = 2.0 / M_alpha - 1.0
    p_eb = 1.0 / M_alpha + eps
    cp = MonotoneFn(
        grid=tau,
        values=tau ** p_cp,
        interpolation="loglog",
        meta={"argument": "reciprocal_time", "exponent": p_cp, "name": "crandall_pazy"},
    )
    eb = MonotoneFn(
        grid=tau,
        values=tau ** p_eb,
        interpolation="loglog",
        meta={"argument": "reciprocal_time", "exponent": p_eb, "name": "eberhardt"},
    )
    return cp, eb
