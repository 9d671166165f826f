"""Independent reference computations used to pin expected values.

Everything here is deliberately naive: dense grids, bisection, and
closed forms, with none of the package's own machinery.  Slow is fine;
wrong is not.
"""

from __future__ import annotations

import math

import numpy as np


def bisection_left_inverse(func, target, lo, hi, steps=80):
    """Smallest s in [lo, hi] with func(s) >= target, for a continuous
    non-decreasing scalar callable."""
    if func(lo) >= target:
        return lo
    if func(hi) < target:
        raise ValueError("target above the range on [lo, hi]")
    for _ in range(steps):
        mid = math.sqrt(lo * hi)
        if func(mid) >= target:
            hi = mid
        else:
            lo = mid
    return hi


def dense_lambda_min(func, s, lam_max, n=200_000):
    """min over lambda in (1, lam_max] of func(lambda*s)/log(lambda)."""
    lam = np.geomspace(1.0 + 1e-9, lam_max, n)
    return float(np.min(func(lam * s) / np.log(lam)))


def finite_envelope_exact(points, s):
    """inf over |eta| >= s of min-dist from i*eta to a finite point set.

    Per point the infimum is |Re z| when the point's height already
    clears s, otherwise the distance to the nearest window endpoint.
    """
    best = math.inf
    for z in points:
        re, im = z.real, abs(z.imag)
        if im >= s:
            d = abs(re)
        else:
            d = math.hypot(re, s - im)
        best = min(best, d)
    return best


def finite_derivative_norm(points, t):
    """max over a finite point set of |z| * exp(t * Re z)."""
    return max(abs(z) * math.exp(t * z.real) for z in points)


def lattice_derivative_norm(profile, t, k_max, chunk=2_000_000):
    """Full integer scan of |z_k| e^{t Re z_k} for z_k = -g(k) + i k.

    profile: ("power", a, C) -> g(k) = C k^a;  ("log", C) -> C log k.
    """
    best = 0.0
    k0 = 1
    while k0 <= k_max:
        k1 = min(k0 + chunk - 1, int(k_max))
        k = np.arange(k0, k1 + 1, dtype=float)
        if profile[0] == "power":
            g = profile[2] * k ** profile[1]
        else:
            g = profile[1] * np.log(k)
        vals = np.hypot(g, k) * np.exp(-t * g)
        best = max(best, float(np.max(vals)))
        k0 = k1 + 1
    return best


def power_tail_integral(coeff, beta, gamma, s0):
    """Closed form of the improper integral of r / (coeff * r^beta)^gamma
    from s0 to infinity; requires beta*gamma > 2."""
    p = beta * gamma - 2.0
    if p <= 0:
        raise ValueError("integral diverges")
    return s0 ** (-p) / (p * coeff**gamma)


def simpson_log(func, lo, hi, n=4001):
    """Simpson quadrature of func on [lo, hi] in the substitution
    r = e^u (so the integrand picks up a factor r)."""
    if n % 2 == 0:
        n += 1
    u = np.linspace(math.log(lo), math.log(hi), n)
    r = np.exp(u)
    y = func(r) * r
    h = (u[-1] - u[0]) / (n - 1)
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(h / 3.0 * np.dot(w, y))
