"""Sampled non-decreasing functions and their inverse calculus.

A ``MonotoneFn`` stores a positive non-decreasing function on a finite
grid together with an interpolation mode.  On top of that type this
module provides generalized left/right inverses, the two transforms
used by the growth-bound machinery (division by the log of the
overshoot, and the infimum over multiplicative stretches), and an
operational asymptotic comparison that classifies a ratio of two
sampled functions as bounded, vanishing, or two-sided.

Conventions used throughout:

* grids are strictly increasing and interpreted with no extrapolation;
* the left inverse of ``f`` at ``t`` is ``inf {s : f(s) >= t}`` and the
  right inverse is ``sup {s : f(s) <= t}`` (leftmost / rightmost point
  on flat stretches);
* tiny monotonicity violations (relative dips up to ``1e-12``, float
  noise from upstream computations) are repaired by a running maximum,
  anything larger is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import DomainError, RangeError

# Relative dip tolerated in "non-decreasing" inputs before rejection.
_MONOTONE_SLACK = 1e-12

# Slack factor for "non-increasing decade sups" in asymptotic verdicts.
_DECADE_SLACK = 1.10

# Decade sups must shrink by at least this factor for a little-o verdict.
_LITTLE_O_FACTOR = 2.0

_MODES = ("loglog", "linear")


def log_uniform_grid(lo: float, hi: float, per_decade: int = 16) -> np.ndarray:
    """Log-uniform grid from lo to hi, endpoints included."""
    if not (0.0 < lo < hi):
        raise DomainError(f"need 0 < lo < hi, got lo={lo}, hi={hi}")
    if per_decade < 1:
        raise DomainError(f"per_decade must be >= 1, got {per_decade}")
    n = max(2, int(round(np.log10(hi / lo) * per_decade)) + 1)
    return np.geomspace(lo, hi, n)


@dataclass(frozen=True, eq=False)
class MonotoneFn:
    """Positive non-decreasing function sampled on a strictly increasing grid.

    interpolation: "loglog" (piecewise power law, default for the
    log-uniform grids used here) or "linear".  ``meta`` carries
    diagnostic payloads from transforms and takes no part in equality
    or validation.
    """

    grid: np.ndarray
    values: np.ndarray
    interpolation: str = "loglog"
    meta: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=float)
        if grid.ndim != 1 or values.ndim != 1 or grid.size != values.size:
            raise DomainError("grid and values must be 1-d arrays of equal length")
        if grid.size < 2:
            raise DomainError("need at least two samples")
        if not np.all(np.isfinite(grid)) or not np.all(np.isfinite(values)):
            raise DomainError("grid and values must be finite")
        if np.any(np.diff(grid) <= 0):
            raise DomainError("grid must be strictly increasing")
        if np.any(values <= 0):
            raise DomainError("values must be positive")
        if self.interpolation not in _MODES:
            raise DomainError(f"interpolation must be one of {_MODES}")
        if self.interpolation == "loglog" and grid[0] <= 0:
            raise DomainError("loglog interpolation needs a positive grid")
        dips = np.maximum.accumulate(values) - values
        worst = np.max(dips / np.maximum.accumulate(values))
        if worst > _MONOTONE_SLACK:
            i = int(np.argmax(dips / np.maximum.accumulate(values)))
            raise DomainError(
                f"values decrease by relative {worst:.3e} near grid[{i}]={grid[i]:.6g}; "
                f"tolerated slack is {_MONOTONE_SLACK:.0e}"
            )
        values = np.maximum.accumulate(values)
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonotoneFn):
            return NotImplemented
        return (
            self.interpolation == other.interpolation
            and np.array_equal(self.grid, other.grid)
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def domain_start(self) -> float:
        return float(self.grid[0])

    @property
    def domain_end(self) -> float:
        return float(self.grid[-1])

    @property
    def value_min(self) -> float:
        return float(self.values[0])

    @property
    def value_max(self) -> float:
        return float(self.values[-1])


def sample_function(
    func: Callable[[np.ndarray], np.ndarray],
    grid: np.ndarray,
    interpolation: str = "loglog",
) -> MonotoneFn:
    """Sample a callable on a grid and wrap it as a MonotoneFn."""
    grid = np.asarray(grid, dtype=float)
    return MonotoneFn(grid, np.asarray(func(grid), dtype=float), interpolation)


def evaluate(fn: MonotoneFn, s) -> np.ndarray | float:
    """Interpolated value of fn at s.  No extrapolation: s outside the
    sampled domain raises DomainError."""
    s_arr = np.asarray(s, dtype=float)
    scalar = s_arr.ndim == 0
    s_arr = np.atleast_1d(s_arr)
    lo, hi = fn.grid[0], fn.grid[-1]
    # Tolerate float dust at the endpoints only.
    bad = (s_arr < lo * (1 - 1e-15) - 1e-300) | (s_arr > hi * (1 + 1e-15))
    if np.any(bad):
        raise DomainError(
            f"arguments outside sampled domain [{lo:.6g}, {hi:.6g}]: "
            f"first offender {s_arr[bad][0]:.6g}"
        )
    s_arr = np.clip(s_arr, lo, hi)
    if fn.interpolation == "loglog":
        out = np.exp(np.interp(np.log(s_arr), np.log(fn.grid), np.log(fn.values)))
    else:
        out = np.interp(s_arr, fn.grid, fn.values)
    return float(out[0]) if scalar else out


def _solve_crossing(fn: MonotoneFn, i: int, t: float) -> float:
    # Position inside segment (i, i+1) where the interpolant equals t.
    s0, s1 = fn.grid[i], fn.grid[i + 1]
    v0, v1 = fn.values[i], fn.values[i + 1]
    if fn.interpolation == "loglog":
        w = (np.log(t) - np.log(v0)) / (np.log(v1) - np.log(v0))
        return float(np.exp(np.log(s0) + w * (np.log(s1) - np.log(s0))))
    w = (t - v0) / (v1 - v0)
    return float(s0 + w * (s1 - s0))


def left_inverse(fn: MonotoneFn, t: float) -> float:
    """inf {s in domain : fn(s) >= t}.

    Values below the sampled minimum map to the domain start; values
    above the sampled maximum raise RangeError.  On flat stretches the
    leftmost point is returned, making this left-continuous.
    """
    t = float(t)
    if not np.isfinite(t) or t <= 0:
        raise DomainError(f"target must be positive and finite, got {t}")
    if t > fn.values[-1]:
        raise RangeError(
            f"target {t:.6g} exceeds sampled maximum {fn.values[-1]:.6g}"
        )
    if t <= fn.values[0]:
        return float(fn.grid[0])
    i = int(np.searchsorted(fn.values, t, side="left"))
    if fn.values[i] == t:
        return float(fn.grid[i])
    return _solve_crossing(fn, i - 1, t)


def right_inverse(fn: MonotoneFn, t: float) -> float:
    """sup {s in domain : fn(s) <= t}.

    Values above the sampled maximum map to the domain end; values
    below the sampled minimum raise RangeError.  On flat stretches the
    rightmost point is returned, making this right-continuous.
    """
    t = float(t)
    if not np.isfinite(t) or t <= 0:
        raise DomainError(f"target must be positive and finite, got {t}")
    if t < fn.values[0]:
        raise RangeError(
            f"target {t:.6g} lies below sampled minimum {fn.values[0]:.6g}"
        )
    if t >= fn.values[-1]:
        return float(fn.grid[-1])
    i = int(np.searchsorted(fn.values, t, side="right")) - 1
    if fn.values[i] == t:
        return float(fn.grid[i])
    return _solve_crossing(fn, i, t)


def m_log_transform(fn: MonotoneFn) -> MonotoneFn:
    """f(s) / log(s / f(s)) on the subdomain where f(s) < s.

    Points with f(s) >= s are excluded and reported in ``meta``
    ("excluded"), as is the raw monotonicity audit ("nondecreasing",
    "first_decreasing_pair", "raw_values"): the returned values are the
    running maximum of the raw transform so the MonotoneFn invariant
    holds, while the audit lets callers check the monotonicity
    hypothesis separately instead of having it silently enforced.
    """
    keep = fn.values < fn.grid
    if np.count_nonzero(keep) < 2:
        raise DomainError(
            "transform undefined: fewer than two grid points satisfy f(s) < s"
        )
    grid = fn.grid[keep]
    raw = fn.values[keep] / np.log(grid / fn.values[keep])
    mono = np.maximum.accumulate(raw)
    drop = raw < mono * (1 - _MONOTONE_SLACK)
    first_pair = None
    if np.any(drop):
        j = int(np.argmax(drop))
        first_pair = (float(grid[j - 1]), float(grid[j]))
    meta = {
        "excluded": int(fn.grid.size - grid.size),
        "nondecreasing": not np.any(drop),
        "first_decreasing_pair": first_pair,
        "raw_values": raw,
    }
    return MonotoneFn(grid, mono, fn.interpolation, meta=meta)


_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_min(h: Callable[[float], float], a: float, b: float, rel_tol: float) -> tuple[float, float]:
    # Golden-section minimization on [a, b]; returns (argmin, min).
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    hc, hd = h(c), h(d)
    while (b - a) > rel_tol * max(abs(a), abs(b), 1e-30):
        if hc < hd:
            b, d, hd = d, c, hc
            c = b - _GOLDEN * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, d, hd
            d = a + _GOLDEN * (b - a)
            hd = h(d)
    x = 0.5 * (a + b)
    return x, h(x)


def m_inf_largest_admissible(fn: MonotoneFn) -> float:
    """Largest grid point at which ``m_inf_transform`` can close its
    search bracket inside the sampled domain."""
    candidates = fn.grid[fn.grid < fn.domain_end]
    for s in candidates[::-1]:
        if _m_inf_admissible(fn, float(s)):
            return float(s)
    raise DomainError("no admissible s: enlarge the sampled domain of f")


def _m_inf_scan(fn: MonotoneFn, s: float) -> tuple[np.ndarray, np.ndarray]:
    # Coarse scan of h(u) = f(s e^u) / u over u in (0, u_cap].  The left
    # tail needs no samples below f(s)/(best + 1): there h >= f(s)/u
    # already exceeds best + 1.
    u_cap = np.log(fn.domain_end / s)
    u_lo = max(u_cap * 1e-9, 1e-12)
    while True:
        u = np.geomspace(u_lo, u_cap, 512)
        h = evaluate(fn, np.minimum(s * np.exp(u), fn.domain_end)) / u
        barrier = evaluate(fn, s) / (float(np.min(h)) + 1.0)
        if u_lo <= barrier or u_lo <= 1e-12:
            return u, h
        u_lo = max(u_lo * 1e-6, 1e-12)


def _m_inf_admissible(fn: MonotoneFn, s: float) -> bool:
    if not (fn.domain_start <= s < fn.domain_end):
        return False
    u, h = _m_inf_scan(fn, s)
    best = float(np.min(h))
    i_min = int(np.argmin(h))
    # The search bracket closes on the right once the objective climbs
    # back above best + 1 inside the sampled stretch budget.
    return bool(np.any(h[i_min:] >= best + 1.0))


def m_inf_transform(fn: MonotoneFn, s_grid: Optional[np.ndarray] = None) -> MonotoneFn:
    """inf over stretches lambda > 1 of f(lambda * s) / log(lambda).

    Evaluated per grid point via a coarse scan in u = log(lambda)
    followed by golden-section refinement (relative tolerance 1e-6)
    around the scan minimum.  The scan is certified on the left by the
    barrier u <= f(s)/(best+1), where the objective provably exceeds
    best + 1, and closed on the right by requiring the objective to
    climb back above best + 1 within the sampled stretch budget
    lambda <= domain_end / s.  Requested points whose bracket does not
    close raise DomainError naming the largest admissible s.
    """
    if s_grid is None:
        s_arr = fn.grid[fn.grid <= m_inf_largest_admissible(fn)]
    else:
        s_arr = np.asarray(s_grid, dtype=float)
        if s_arr.ndim != 1 or s_arr.size < 2:
            raise DomainError("s_grid must be a 1-d array with at least 2 points")
        bad = [float(s) for s in s_arr if not _m_inf_admissible(fn, float(s))]
        if bad:
            raise DomainError(
                f"stretch bracket exceeds sampled domain at s={bad[0]:.6g}; "
                f"largest admissible s is {m_inf_largest_admissible(fn):.6g}"
            )
    out = np.empty(s_arr.size)
    argmins = np.empty(s_arr.size)
    for j, s in enumerate(s_arr):
        u, h = _m_inf_scan(fn, float(s))
        i = int(np.argmin(h))
        lo = u[max(i - 1, 0)]
        hi = u[min(i + 1, u.size - 1)]

        def objective(x: float, s=float(s)) -> float:
            lam_s = min(s * np.exp(x), fn.domain_end)
            return evaluate(fn, lam_s) / x

        x, hx = _golden_min(objective, float(lo), float(hi), 1e-6)
        if hx <= h[i]:
            out[j], argmins[j] = hx, np.exp(x)
        else:
            out[j], argmins[j] = h[i], np.exp(u[i])
    # Mathematically non-decreasing in s; the running max removes float dust.
    out = np.maximum.accumulate(out)
    return MonotoneFn(
        s_arr, out, fn.interpolation, meta={"argmin_stretch": argmins}
    )


@dataclass(frozen=True)
class AsympReport:
    """Verdict of an operational asymptotic comparison of f against g."""

    relation: str  # "asymp-equiv" | "little-o" | "big-O" | "none"
    fitted_constant: float
    window: tuple[float, float]
    worst_ratio: float
    decade_sups: tuple[float, ...] = ()


def _decade_sups(x: np.ndarray, r: np.ndarray) -> np.ndarray:
    # Sup of r over each decade bin of x, empty bins dropped.
    bins = np.floor(np.log10(x) + 1e-12).astype(int)
    out = []
    for b in range(int(bins.min()), int(bins.max()) + 1):
        sel = bins == b
        if np.any(sel):
            out.append(np.max(r[sel]))
    return np.asarray(out)


def decade_bounded(x: np.ndarray, r: np.ndarray, slack: float = _DECADE_SLACK) -> tuple[bool, np.ndarray]:
    """True when the decade-wise sups of r are finite and non-increasing
    within the given multiplicative slack over the upper half of the
    x window."""
    sups = _decade_sups(x, r)
    if not np.all(np.isfinite(sups)):
        return False, sups
    half = sups[sups.size // 2 :] if sups.size > 2 else sups
    ok = bool(np.all(half[1:] <= slack * half[:-1]))
    return ok, sups


def asymp_compare(
    fn: MonotoneFn,
    gn: MonotoneFn,
    window: tuple[float, float],
    per_decade: int = 32,
) -> AsympReport:
    """Classify f against g on a window as asymp-equiv / little-o /
    big-O / none, via decade-wise sups of the ratio f/g.

    big-O: sups finite and non-increasing within 10 percent over the
    upper half of the window.  little-o: sups shrink by at least a
    factor 2 per decade across the window.  asymp-equiv: big-O in both
    directions.  The strongest applicable relation is reported.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (0 < lo < hi):
        raise DomainError(f"bad window ({lo}, {hi})")
    if hi / lo < 100.0 * (1 - 1e-12):
        raise DomainError("window must span at least two decades")
    for h in (fn, gn):
        if lo < h.domain_start or hi > h.domain_end:
            raise DomainError(
                f"window [{lo:.6g}, {hi:.6g}] not inside sampled domain "
                f"[{h.domain_start:.6g}, {h.domain_end:.6g}]"
            )
    x = log_uniform_grid(lo, hi, per_decade)
    ratio = evaluate(fn, x) / evaluate(gn, x)
    fwd_ok, sups = decade_bounded(x, ratio)
    rev_ok, _ = decade_bounded(x, 1.0 / ratio)
    little_o = bool(
        np.all(np.isfinite(sups)) and np.all(sups[1:] <= sups[:-1] / _LITTLE_O_FACTOR)
    )
    if fwd_ok and rev_ok:
        relation = "asymp-equiv"
    elif little_o:
        relation = "little-o"
    elif fwd_ok:
        relation = "big-O"
    else:
        relation = "none"
    upper = sups[sups.size // 2 :] if sups.size > 2 else sups
    fitted = float(np.max(upper)) if np.all(np.isfinite(upper)) else float("inf")
    return AsympReport(
        relation=relation,
        fitted_constant=fitted,
        window=(lo, hi),
        worst_ratio=float(np.max(ratio)),
        decade_sups=tuple(float(v) for v in sups),
    )
