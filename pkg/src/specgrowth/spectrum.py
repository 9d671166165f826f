"""Spectral models and the axis quantities derived from them.

A model describes the spectrum of a generator whose semigroup acts by
quasi-multiplication, so every norm the package needs reduces to a
geometric quantity of the point set:

* distance from a point of the imaginary axis to the spectrum
  (reciprocal of the resolvent norm there);
* the tail infimum ``inf {dist(i eta, spectrum) : |eta| >= s}``, the
  resolvent-decay envelope;
* ``sup |z| exp(t Re z)``, the derivative norm of the semigroup.

Finite point sets and sampled curves are handled by direct vectorized
minimization.  Lattice families ``z_k = -g(|k|) + i k`` with up to 1e10
indices per branch are handled by branch-and-bound over the index
range: interval bounds follow from the monotone profile g, cells that
cannot beat the current best are pruned, and surviving cells are
enumerated exactly, so every reported extremum carries a certified
enclosure instead of a grid-sampling guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np

from .errors import DomainError, ModelUnsuitableError, SingularityError
from .monotone import AsympReport, MonotoneFn, evaluate

_DEFAULT_K_MAX = 10**10

# Cells at most this wide are enumerated exactly instead of split.
_ENUM_WIDTH = 64

# Certified relative slack for lattice extremum searches.
_BB_REL_TOL = 1e-9


# ---------------------------------------------------------------------------
# Models


@dataclass(frozen=True)
class FinitePoints:
    """Finite spectrum, arbitrary complex points."""

    points: tuple
    imag_bound_b: float = 0.0

    def __post_init__(self) -> None:
        pts = tuple(complex(z) for z in self.points)
        if not pts:
            raise DomainError("need at least one spectral point")
        _check_axis_window(pts, self.imag_bound_b)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class LatticeFamily:
    """Symmetric lattice z_k = -g(|k|) + i k, 1 <= |k| <= k_max.

    profile: ("power", a, C) for g(x) = C x**a, ("log", C) for
    g(x) = C log x, or a MonotoneFn sampled on a grid covering
    [1, k_max].  The profile must be non-decreasing and non-negative.
    """

    profile: Union[tuple, MonotoneFn]
    k_max: int = _DEFAULT_K_MAX
    imag_bound_b: float = 0.0

    def __post_init__(self) -> None:
        if self.k_max < 1:
            raise DomainError("k_max must be >= 1")
        prof = self.profile
        if isinstance(prof, MonotoneFn):
            if prof.domain_start > 1.0 or prof.domain_end < self.k_max:
                raise DomainError(
                    "sampled profile must cover the index range [1, k_max]"
                )
        elif isinstance(prof, tuple) and len(prof) >= 2:
            tag = prof[0]
            if tag == "power":
                if len(prof) != 3 or prof[1] <= 0 or prof[2] <= 0:
                    raise DomainError("power profile needs ('power', a>0, C>0)")
            elif tag == "log":
                if len(prof) != 2 or prof[1] <= 0:
                    raise DomainError("log profile needs ('log', C>0)")
            else:
                raise DomainError(f"unknown profile tag {tag!r}")
        else:
            raise DomainError("profile must be a tag tuple or a MonotoneFn")
        if _profile_g(self, np.array([1.0]))[0] == 0.0 and self.imag_bound_b <= 1.0:
            raise DomainError(
                "profile vanishes at index 1, placing i on the axis: "
                "set imag_bound_b > 1"
            )


@dataclass(frozen=True)
class SampledCurve:
    """Spectrum sampled along a curve, points ordered by imaginary part."""

    points: tuple
    imag_bound_b: float = 0.0

    def __post_init__(self) -> None:
        pts = tuple(complex(z) for z in self.points)
        if len(pts) < 2:
            raise DomainError("need at least two curve samples")
        ims = np.array([z.imag for z in pts])
        if np.any(np.diff(ims) <= 0):
            raise DomainError("curve samples must be strictly ordered by Im")
        _check_axis_window(pts, self.imag_bound_b)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class UnionModel:
    """Union of several spectral models."""

    parts: tuple

    def __post_init__(self) -> None:
        if not self.parts:
            raise DomainError("union of zero models")
        for m in self.parts:
            if not isinstance(m, (FinitePoints, LatticeFamily, SampledCurve, UnionModel)):
                raise DomainError(f"unsupported member model {type(m).__name__}")
        object.__setattr__(self, "parts", tuple(self.parts))


SpectralModel = Union[FinitePoints, LatticeFamily, SampledCurve, UnionModel]


def _check_axis_window(pts: Iterable[complex], b: float) -> None:
    if b < 0:
        raise DomainError("imag_bound_b must be >= 0")
    for z in pts:
        if z.real == 0.0 and abs(z.imag) >= b:
            raise DomainError(
                f"point {z} sits on the imaginary axis outside (-ib, ib), b={b}"
            )


def _profile_g(model: LatticeFamily, k: np.ndarray) -> np.ndarray:
    prof = model.profile
    if isinstance(prof, MonotoneFn):
        return np.asarray(evaluate(prof, k), dtype=float)
    if prof[0] == "power":
        return prof[2] * np.asarray(k, dtype=float) ** prof[1]
    return prof[1] * np.log(np.asarray(k, dtype=float))


def sup_real(model: SpectralModel) -> float:
    """Supremum of Re z over the model."""
    if isinstance(model, (FinitePoints, SampledCurve)):
        return max(z.real for z in model.points)
    if isinstance(model, LatticeFamily):
        return -float(_profile_g(model, np.array([1.0]))[0])
    return max(sup_real(m) for m in model.parts)


def imag_bound(model: SpectralModel) -> float:
    if isinstance(model, UnionModel):
        return max(imag_bound(m) for m in model.parts)
    return float(model.imag_bound_b)


# ---------------------------------------------------------------------------
# Branch-and-bound over lattice indices


def _branch_min(value_fn, lb_fn, k_lo: int, k_hi: int) -> tuple[float, int]:
    """Certified minimum of value_fn over integers [k_lo, k_hi].

    value_fn maps an int array to values; lb_fn(a, b) lower-bounds the
    value over all integers in [a, b].  Returns (min, argmin).
    """
    best, arg = _eval_candidates(value_fn, np.array([k_lo, k_hi]))
    cells = _initial_cells(k_lo, k_hi)
    while cells:
        next_cells = []
        for a, b in cells:
            if lb_fn(a, b) >= best * (1 - _BB_REL_TOL):
                continue
            if b - a <= _ENUM_WIDTH:
                v, k = _eval_candidates(value_fn, np.arange(a, b + 1))
                if v < best:
                    best, arg = v, k
                continue
            m = int(np.sqrt(float(a) * float(b)))
            m = min(max(m, a + 1), b - 1)
            v, k = _eval_candidates(value_fn, np.array([m]))
            if v < best:
                best, arg = v, k
            next_cells.append((a, m))
            next_cells.append((m, b))
        cells = next_cells
    return best, arg


def _branch_max(value_fn, ub_fn, k_lo: int, k_hi: int) -> tuple[float, int]:
    """Certified maximum, mirror of _branch_min."""
    neg_best, arg = _branch_min(
        lambda k: -value_fn(k), lambda a, b: -ub_fn(a, b), k_lo, k_hi
    )
    return -neg_best, arg


def _eval_candidates(value_fn, ks: np.ndarray) -> tuple[float, int]:
    vals = value_fn(ks)
    i = int(np.argmin(vals))
    return float(vals[i]), int(ks[i])


def _initial_cells(k_lo: int, k_hi: int, per_decade: int = 16) -> list:
    if k_hi <= k_lo:
        return []
    n = max(2, int(np.ceil(np.log10(k_hi / max(k_lo, 1)) * per_decade)) + 1)
    edges = np.unique(
        np.round(np.geomspace(k_lo, k_hi, n)).astype(np.int64)
    )
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


# ---------------------------------------------------------------------------
# Distances and the resolvent on the axis


def dist_to_point(model: SpectralModel, lam: complex) -> float:
    """Exact distance from lam to the spectrum."""
    lam = complex(lam)
    if isinstance(model, (FinitePoints, SampledCurve)):
        pts = np.asarray(model.points, dtype=complex)
        return float(np.min(np.abs(pts - lam)))
    if isinstance(model, UnionModel):
        return min(dist_to_point(m, lam) for m in model.parts)
    return _lattice_dist(model, lam)[0]


def _lattice_dist(model: LatticeFamily, lam: complex) -> tuple[float, complex]:
    best = np.inf
    witness = 0j
    k_max = int(model.k_max)
    for sign in (1.0, -1.0):

        def value(ks: np.ndarray, sign=sign) -> np.ndarray:
            g = _profile_g(model, ks)
            return np.hypot(lam.real + g, lam.imag - sign * ks)

        def lower(a: int, b: int, sign=sign) -> float:
            ga, gb = _profile_g(model, np.array([a, b], dtype=float))
            lo_re, hi_re = lam.real + ga, lam.real + gb
            dre = 0.0 if lo_re <= 0.0 <= hi_re else min(abs(lo_re), abs(hi_re))
            im = sign * lam.imag
            dim = 0.0 if a <= im <= b else min(abs(im - a), abs(im - b))
            return float(np.hypot(dre, dim))

        if lower(1, k_max) >= best * (1 - _BB_REL_TOL):
            continue
        # the vertical gap alone rules out indices farther than the
        # seed distance from the probe height, so branch only there
        im = sign * lam.imag
        k0 = int(min(max(round(im), 1.0), float(k_max)))
        d0 = float(value(np.array([float(k0)]))[0])
        k_lo = max(1, int(np.floor(im - d0)))
        k_hi = min(k_max, int(np.ceil(im + d0)))
        d, k = _branch_min(value, lower, k_lo, k_hi)
        if d < best:
            g = float(_profile_g(model, np.array([float(k)]))[0])
            best, witness = d, complex(-g, sign * k)
    return best, witness


def dist_to_imag(model: SpectralModel, eta: float) -> float:
    """Distance from i*eta to the spectrum."""
    return dist_to_point(model, 1j * float(eta))


def resolvent_norm_on_axis(model: SpectralModel, eta: float) -> float:
    """Resolvent norm at i*eta, i.e. 1 / dist(i eta, spectrum)."""
    d = dist_to_imag(model, eta)
    if d == 0.0:
        raise SingularityError(f"i*{eta} lies in the spectrum")
    return 1.0 / d


# ---------------------------------------------------------------------------
# Resolvent-decay envelope


@dataclass(frozen=True)
class EnvelopeWitness:
    """Attaining pair of the tail minimization at one s."""

    s: float
    eta: float
    point: complex
    dist: float


def _tail_inf(model: SpectralModel, s: float) -> EnvelopeWitness:
    # inf over |eta| >= s of dist(i eta, spectrum), split per point:
    # a point with |Im z| >= s is approached at eta = Im z (cost |Re z|),
    # any other point at eta = +-s (cost hypot(Re z, s - |Im z|)).
    if isinstance(model, (FinitePoints, SampledCurve)):
        pts = np.asarray(model.points, dtype=complex)
        re, im = pts.real, np.abs(pts.imag)
        cost = np.where(im >= s, np.abs(re), np.hypot(re, s - im))
        i = int(np.argmin(cost))
        eta = float(np.copysign(max(im[i], s), pts.imag[i] if pts.imag[i] != 0 else 1.0))
        return EnvelopeWitness(s, eta, complex(pts[i]), float(cost[i]))
    if isinstance(model, UnionModel):
        return min((_tail_inf(m, s) for m in model.parts), key=lambda w: w.dist)
    return _lattice_tail_inf(model, s)


def _lattice_tail_inf(model: LatticeFamily, s: float) -> EnvelopeWitness:
    cands: list[EnvelopeWitness] = []
    k_above = int(np.ceil(s - 1e-12))
    if 1 <= k_above <= model.k_max:
        g = float(_profile_g(model, np.array([float(k_above)]))[0])
        cands.append(EnvelopeWitness(s, float(k_above), complex(-g, k_above), g))
    k_hi = min(k_above - 1, model.k_max)
    if k_hi >= 1:

        def value(ks: np.ndarray) -> np.ndarray:
            return np.hypot(_profile_g(model, ks), s - ks)

        def lower(a: int, b: int) -> float:
            ga = float(_profile_g(model, np.array([float(a)]))[0])
            return float(np.hypot(ga, s - b))

        d, k = _branch_min(value, lower, 1, k_hi)
        g = float(_profile_g(model, np.array([float(k)]))[0])
        cands.append(EnvelopeWitness(s, s, complex(-g, k), d))
    # Negative branch: distance hypot(g(k), s + k) is minimal at k = 1.
    g1 = float(_profile_g(model, np.array([1.0]))[0])
    cands.append(EnvelopeWitness(s, s, complex(-g1, -1.0), float(np.hypot(g1, s + 1))))
    return min(cands, key=lambda w: w.dist)


def envelope_witness(model: SpectralModel, s: float) -> EnvelopeWitness:
    """Point (and axis position) attaining the tail minimization at s."""
    s = float(s)
    if s <= imag_bound(model):
        raise DomainError(f"s={s:.6g} must exceed the axis window {imag_bound(model)}")
    return _tail_inf(model, s)


def resolvent_envelope(model: SpectralModel, s_grid: np.ndarray) -> MonotoneFn:
    """Tail infimum of the axis distance, as a MonotoneFn of s.

    Each grid value is the exact infimum over the whole tail
    ``|eta| >= s`` (not just up to the grid end), so the output is
    non-decreasing; a reverse running minimum removes float dust.
    Raises ModelUnsuitableError when the envelope fails to double from
    the start of the grid to its end, since the transforms downstream
    assume divergence.
    """
    s_arr = np.asarray(s_grid, dtype=float)
    if s_arr.ndim != 1 or s_arr.size < 2 or np.any(np.diff(s_arr) <= 0):
        raise DomainError("s_grid must be a strictly increasing 1-d array")
    b = imag_bound(model)
    if s_arr[0] <= b:
        raise DomainError(f"s_grid must start above the axis window {b}")
    vals = np.array([_tail_inf(model, float(s)).dist for s in s_arr])
    if np.any(vals == 0.0):
        raise ModelUnsuitableError("spectrum touches the scanned axis tail")
    vals = np.minimum.accumulate(vals[::-1])[::-1]
    if vals[-1] < 2.0 * vals[0]:
        raise ModelUnsuitableError(
            f"resolvent envelope fails to double across the grid "
            f"({vals[0]:.6g} to {vals[-1]:.6g}): divergence hypothesis not met"
        )
    return MonotoneFn(s_arr, vals, "loglog")


# ---------------------------------------------------------------------------
# Derivative norm of the semigroup


@dataclass(frozen=True)
class DerivativeNormResult:
    value: float
    upper_bound: float
    arg_abs_imag: float
    saturated: bool  # extremum pinned at the truncation index


def semigroup_derivative_norm(model: SpectralModel, t: float) -> float:
    """sup over the spectrum of |z| exp(t Re z)."""
    return semigroup_derivative_norm_details(model, t).value


def semigroup_derivative_norm_details(
    model: SpectralModel, t: float
) -> DerivativeNormResult:
    t = float(t)
    if t <= 0:
        raise DomainError(f"t must be positive, got {t}")
    if isinstance(model, (FinitePoints, SampledCurve)):
        pts = np.asarray(model.points, dtype=complex)
        vals = np.abs(pts) * np.exp(t * pts.real)
        i = int(np.argmax(vals))
        return DerivativeNormResult(float(vals[i]), float(vals[i]), abs(float(pts.imag[i])), False)
    if isinstance(model, UnionModel):
        parts = [semigroup_derivative_norm_details(m, t) for m in model.parts]
        best = max(parts, key=lambda r: r.value)
        return DerivativeNormResult(
            best.value,
            max(r.upper_bound for r in parts),
            best.arg_abs_imag,
            any(r.saturated for r in parts),
        )
    if sup_real(model) > 0:
        raise DomainError("lattice model must satisfy sup Re z <= 0")

    def value(ks: np.ndarray) -> np.ndarray:
        g = _profile_g(model, ks)
        return np.hypot(g, ks) * np.exp(-t * g)

    def upper(a: int, b: int) -> float:
        ga, gb = _profile_g(model, np.array([float(a), float(b)]))
        return float(np.hypot(gb, b) * np.exp(-t * ga))

    v, k = _branch_max(value, upper, 1, model.k_max)
    return DerivativeNormResult(
        value=v,
        upper_bound=v * (1 + _BB_REL_TOL),
        arg_abs_imag=float(k),
        saturated=k >= 0.99 * model.k_max,
    )


# ---------------------------------------------------------------------------
# Differentiability criteria on spectral data


@dataclass(frozen=True)
class ThetaParams:
    """Exponential region {lambda : p exp(-q Re lambda) <= |Im lambda|}
    with a real-part cap omega and a resolvent slope bound C."""

    p: float
    q: float
    omega: float
    resolvent_slope_C: float

    def __post_init__(self) -> None:
        if self.p <= 0 or self.q <= 0 or self.resolvent_slope_C <= 0:
            raise DomainError("p, q, resolvent_slope_C must all be positive")


@dataclass(frozen=True)
class ThetaReport:
    passed: bool
    point_avoidance: bool
    point_witness: Optional[complex]
    resolvent_bound: bool
    worst_probe: Optional[complex]
    worst_ratio: float


def _theta_member(p: float, q: float, z: complex) -> bool:
    ex = -q * z.real
    if ex > 700.0:  # threshold astronomically large: z cannot be inside
        return False
    return p * np.exp(ex) <= abs(z.imag)


def _lattice_theta_violation(model: LatticeFamily, par: ThetaParams) -> Optional[complex]:
    # Spectral point inside the region with Re z <= omega: membership
    # means p exp(q g(k)) - k <= 0 (both branches are symmetric).
    k_lo = 1
    if par.omega < 0:
        # need g(k) >= -omega; bisect on the non-decreasing profile
        def g_at(k: int) -> float:
            return float(_profile_g(model, np.array([float(k)]))[0])

        if g_at(model.k_max) < -par.omega:
            return None
        lo, hi = 1, model.k_max
        while lo < hi:
            mid = (lo + hi) // 2
            if g_at(mid) >= -par.omega:
                hi = mid
            else:
                lo = mid + 1
        k_lo = lo

    def value(ks: np.ndarray) -> np.ndarray:
        ex = np.minimum(par.q * _profile_g(model, ks), 700.0)
        return np.minimum(par.p * np.exp(ex) - ks, 1e300)

    def lower(a: int, b: int) -> float:
        ga = float(_profile_g(model, np.array([float(a)]))[0])
        return float(min(par.p * np.exp(min(par.q * ga, 700.0)) - b, 1e300))

    margin, k = _branch_min(value, lower, k_lo, model.k_max)
    if margin <= 0:
        g = float(_profile_g(model, np.array([float(k)]))[0])
        return complex(-g, k)
    return None


def _theta_point_violation(model: SpectralModel, par: ThetaParams) -> Optional[complex]:
    if isinstance(model, (FinitePoints, SampledCurve)):
        for z in model.points:
            if z.real <= par.omega and _theta_member(par.p, par.q, z):
                return z
        return None
    if isinstance(model, UnionModel):
        for m in model.parts:
            w = _theta_point_violation(m, par)
            if w is not None:
                return w
        return None
    return _lattice_theta_violation(model, par)


def theta_region_check(
    model: SpectralModel,
    params: ThetaParams,
    imag_range: tuple[float, float] = (10.0, 1e8),
    per_decade: int = 64,
    offsets: int = 16,
) -> ThetaReport:
    """Check the two differentiability conditions on the exponential
    region: the spectrum avoids it (up to Re <= omega), and on a probe
    grid over it the resolvent norm is at most C |Im lambda|.

    Probes walk the boundary curve Re = -log(|Im|/p)/q at log-spaced
    heights plus ``offsets`` equally spaced real-part steps from the
    boundary toward omega.  Both findings are reported separately; the
    overall verdict is their conjunction.
    """
    witness = _theta_point_violation(model, params)
    y_lo = max(imag_range[0], params.p * np.exp(-params.q * params.omega))
    y_hi = imag_range[1]
    worst_ratio = 0.0
    worst_probe: Optional[complex] = None
    if y_lo < y_hi:
        n = max(2, int(np.ceil(np.log10(y_hi / y_lo) * per_decade)) + 1)
        signs = (1.0,) if isinstance(model, LatticeFamily) else (1.0, -1.0)
        for y in np.geomspace(y_lo, y_hi, n):
            re_b = -np.log(y / params.p) / params.q
            for j in range(offsets):
                re = re_b + (params.omega - re_b) * j / offsets
                for sgn in signs:
                    lam = complex(re, sgn * y)
                    d = dist_to_point(model, lam)
                    ratio = np.inf if d == 0.0 else 1.0 / (d * params.resolvent_slope_C * y)
                    if ratio > worst_ratio:
                        worst_ratio, worst_probe = float(ratio), lam
    bound_ok = worst_ratio <= 1.0
    return ThetaReport(
        passed=(witness is None) and bound_ok,
        point_avoidance=witness is None,
        point_witness=witness,
        resolvent_bound=bound_ok,
        worst_probe=worst_probe,
        worst_ratio=float(worst_ratio),
    )


def log_resolvent_criterion(
    model: SpectralModel, omega: float, eta_grid: np.ndarray
) -> AsympReport:
    """Decade-wise decay audit of log|eta| * resolvent norm along the
    vertical line Re = omega.

    Little-o verdict iff the decade maxima halve per decade over the
    upper half of the window and the last decade sits at half the first
    or less; the vanishing of this product is the sufficient condition
    for immediate differentiability.  The first decades are treated as
    preasymptotic because log|eta| itself still doubles there.
    """
    omega = float(omega)
    if omega < sup_real(model):
        raise DomainError(
            f"omega={omega:.6g} lies left of the spectral bound {sup_real(model):.6g}"
        )
    eta = np.asarray(eta_grid, dtype=float)
    if eta.ndim != 1 or eta.size < 2 or np.any(np.diff(eta) <= 0):
        raise DomainError("eta_grid must be strictly increasing")
    if eta[0] <= max(1.0, imag_bound(model)):
        raise DomainError("eta_grid must start above max(1, axis window)")
    vals = np.empty(eta.size)
    for i, e in enumerate(eta):
        d = dist_to_point(model, complex(omega, e))
        if d == 0.0:
            raise SingularityError(f"{omega}+i*{e} lies in the spectrum")
        vals[i] = np.log(e) / d
    bins = np.floor(np.log10(eta) + 1e-12).astype(int)
    sups = []
    for bidx in range(bins[0], bins[-1] + 1):
        sel = bins == bidx
        if np.any(sel):
            sups.append(float(np.max(vals[sel])))
    sups_arr = np.asarray(sups)
    upper = sups_arr[sups_arr.size // 2 :]
    vanishing = bool(
        sups_arr.size >= 2
        and upper.size >= 2
        and np.all(upper[1:] <= upper[:-1] / 2.0)
        and sups_arr[-1] <= sups_arr[0] / 2.0
    )
    return AsympReport(
        relation="little-o" if vanishing else "none",
        fitted_constant=float(sups_arr[-1]),
        window=(float(eta[0]), float(eta[-1])),
        worst_ratio=float(np.max(vals)),
        decade_sups=tuple(float(v) for v in sups_arr),
    )


def liminf_axis_growth(model: SpectralModel, eta_grid: np.ndarray) -> float:
    """Minimum of |eta| / dist(i eta, spectrum) over the top decade of
    the grid: the liminf surrogate used for axis growth estimates."""
    eta = np.asarray(eta_grid, dtype=float)
    if eta.ndim != 1 or eta.size < 2 or np.any(np.diff(eta) <= 0):
        raise DomainError("eta_grid must be strictly increasing")
    top = eta >= eta[-1] / 10.0
    vals = [abs(e) / dist_to_imag(model, e) for e in eta[top]]
    return float(np.min(vals))
