"""Numerical monodromy for sampled pairs at individual spectral points.

In quasi-derivative coordinates the spectral problem becomes the first-order
system

    f'      = f^[1] + z u' f,
    (f^[1])' = (1/4 - z u - z^2 (u'^2 + w)) f - z u' f^[1],

obtained by differentiating the integral relation defining f^[1] when the
singular part of the measure has density w.  Both canonical initial value
problems (c: f=1, f^[1]=0 and s: f=0, f^[1]=1) are integrated over one period
with classical fixed-step RK4 on the sample grid; coefficients come from the
pair's piecewise-linear interpolation.  Spectral points may be complex, and
whole z-arrays propagate together (the coefficient samples per step are
shared by every z).

Atoms are exact-backend territory: this module only accepts SampledPair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteStateError
from .pairs import SampledPair

__all__ = ["rhs", "monodromy_at", "discriminant_at", "dirichlet_value_at",
           "RootScan", "find_real_roots", "eigenvalue_window"]


def rhs(pair: SampledPair, z, x: float, f, fq):
    """Derivative field (f', (f^[1])') at position x; z and the state may be arrays."""
    u, du, w = pair.u(x), pair.du(x), pair.w(x)
    zdu = z * du
    return (fq + zdu * f,
            (0.25 - z * u - z * z * (du * du + w)) * f - zdu * fq)


def _require_sampled(pair) -> SampledPair:
    if not isinstance(pair, SampledPair):
        raise TypeError("shooting backend accepts SampledPair only; "
                        "peakon pairs have an exact polynomial backend")
    return pair


def monodromy_at(pair: SampledPair, z, base: float | None = None,
                 steps: int | None = None) -> np.ndarray:
    """Monodromy matrix [[c, s], [c^[1], s^[1]]] at spectral point(s) z.

    z may be a scalar or an array; the result has shape (2, 2) or
    (2, 2, len(z)).  ``steps`` defaults to 4 samples-per-knot and may not be
    chosen below that resolution.
    """
    _require_sampled(pair)
    a = pair.default_base() if base is None else float(base)
    m = pair.size
    n = 4 * m if steps is None else int(steps)
    if n < 4 * m:
        raise ValueError(f"steps = {n} below the 4-per-knot minimum {4 * m}")
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    scalar = np.ndim(z) == 0

    h = pair.period / n
    xs = a + 0.5 * h * np.arange(2 * n + 1)
    cu = np.asarray(pair.u(xs))
    cdu = np.asarray(pair.du(xs))
    cq = 0.25 - np.multiply.outer(cu, zs) \
        - np.multiply.outer(cdu * cdu + np.asarray(pair.w(xs)), zs * zs)
    czdu = np.multiply.outer(cdu, zs)

    y = np.zeros((2, 2, len(zs)), dtype=complex)
    y[0, 0] = 1.0  # c-column: f = 1
    y[1, 1] = 1.0  # s-column: f^[1] = 1

    def deriv(k, state):
        out = np.empty_like(state)
        out[0] = state[1] + czdu[k] * state[0]
        out[1] = cq[k] * state[0] - czdu[k] * state[1]
        return out

    for i in range(n):
        k = 2 * i
        k1 = deriv(k, y)
        k2 = deriv(k + 1, y + (0.5 * h) * k1)
        k3 = deriv(k + 1, y + (0.5 * h) * k2)
        k4 = deriv(k + 2, y + h * k3)
        y += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)

    if not np.all(np.isfinite(y.view(float))):
        raise NonFiniteStateError(
            "integration overflowed; |z| too large for the step count")
    return y[:, :, 0] if scalar else y


def discriminant_at(pair: SampledPair, z, base: float | None = None,
                    steps: int | None = None):
    """Floquet discriminant tr(M)/2 at z (complex-capable, vectorized)."""
    m = monodromy_at(pair, z, base, steps)
    return 0.5 * (m[0, 0] + m[1, 1])


def dirichlet_value_at(pair: SampledPair, z, base: float | None = None,
                       steps: int | None = None):
    """s(z, base + period): vanishes exactly on the Dirichlet spectrum."""
    return monodromy_at(pair, z, base, steps)[0, 1]


@dataclass
class RootScan:
    """Roots found by sign-change bracketing, plus suspected double roots.

    ``suspected_double`` holds near-tangency locations: |fn| dips close to
    zero without a sign change.  Sampling that is too coarse can miss roots;
    that is part of this contract.
    """

    roots: list[float]
    suspected_double: list[float]


def find_real_roots(fn, window: tuple[float, float], samples: int = 257,
                    xtol: float = 1e-10, tangency_rtol: float = 1e-3) -> RootScan:
    """Scan a real window for zeros of a vectorized real function.

    Sign changes on the uniform grid are refined by bisection to ``xtol``.
    Grid points where |fn| is locally minimal and below ``tangency_rtol``
    times the grid scale, without an adjacent sign change, are refined by
    trisection of |fn| and reported as suspected double roots when the
    refined value stays tiny.
    """
    if samples < 16:
        raise ValueError("need at least 16 samples")
    lo, hi = float(window[0]), float(window[1])
    grid = np.linspace(lo, hi, samples)
    vals = np.real(np.asarray(fn(grid)))
    scale = float(np.max(np.abs(vals))) or 1.0

    def f1(t: float) -> float:
        return float(np.real(np.asarray(fn(np.array([t]))))[0])

    roots: list[float] = []
    for i in range(samples - 1):
        va, vb = vals[i], vals[i + 1]
        if va == 0.0:
            roots.append(float(grid[i]))
            continue
        if va * vb < 0:
            a, b, fa = float(grid[i]), float(grid[i + 1]), float(va)
            while b - a > xtol:
                mid = 0.5 * (a + b)
                fm = f1(mid)
                if fm == 0.0:
                    a = b = mid
                    break
                if (fm > 0) == (fa > 0):
                    a, fa = mid, fm
                else:
                    b = mid
            roots.append(0.5 * (a + b))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 2.0 * xtol:
            deduped.append(r)
    roots = deduped

    doubles: list[float] = []
    av = np.abs(vals)
    for i in range(1, samples - 1):
        if not (av[i] <= av[i - 1] and av[i] <= av[i + 1]):
            continue
        if vals[i - 1] * vals[i] < 0 or vals[i] * vals[i + 1] < 0 or vals[i] == 0.0:
            continue  # handled by the sign-change pass
        if av[i] > tangency_rtol * scale:
            continue
        a, b = float(grid[i - 1]), float(grid[i + 1])
        for _ in range(60):
            m1 = a + (b - a) / 3.0
            m2 = b - (b - a) / 3.0
            if abs(f1(m1)) < abs(f1(m2)):
                b = m2
            else:
                a = m1
            if b - a <= xtol:
                break
        x = 0.5 * (a + b)
        if abs(f1(x)) <= 1e-5 * scale:
            doubles.append(x)
    return RootScan(roots, doubles)


def eigenvalue_window(pair, factor: float = 16.0) -> tuple[float, float] | None:
    """Search window from the second-trace-formula bound.

    Every periodic/antiperiodic eigenvalue satisfies 1/lambda^2 <= B (per
    boundary kind), so |lambda| >= 1/sqrt(max B): the returned symmetric
    window spans ``factor`` times that smallest admissible modulus.  Returns
    None when the bound certifies an empty spectrum.
    """
    l = pair.period
    ch, sh = math.cosh(0.5 * l), math.sinh(0.5 * l)
    iu, imu = pair.integral_u(), pair.integral_mu()
    b_per = (iu * iu + 2.0 * sh * imu) / (ch - 1.0)
    b_anti = (-iu * iu + 2.0 * sh * imu) / (ch + 1.0)
    b = max(b_per, b_anti)
    if b <= 0.0:
        return None
    r = 1.0 / math.sqrt(b)
    return (-factor * r, factor * r)
