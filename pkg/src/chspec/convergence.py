"""Weak-* convergent coefficient families and convergence diagnostics.

A peakon pair is smoothed by a C^1 cosine bump of width eps and unit mass:
u and u' are mollified by convolution (u' as the mollification of u', not the
difference quotient of sampled u, which keeps u'_eps^2 dx converging strongly)
and each point mass becomes a bump-shaped density.  The family converges
weak-* as eps -> 0, so the Floquet discriminants and Dirichlet functions of
the smoothed pairs converge locally uniformly to the exact ones; this module
measures sup-distances on a spectral grid and the drift of matched
eigenvalues, step by step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EpsilonTooLargeError
from .floquet import discriminant, monodromy
from .pairs import PairHandle, PeakonPair, SampledPair
from .quadrature import adaptive_quad
from .shooting import monodromy_at
from .spectra import ANTIPERIODIC, DIRICHLET, PERIODIC, build_report

__all__ = ["cosine_bump", "mollify", "weak_star_functional",
           "discriminant_distance", "dirichlet_distance",
           "ConvergenceReport", "run_family"]


def cosine_bump(eps: float):
    """Unit-mass C^1 bump (1 + cos(pi y/eps)) / (2 eps) supported on [-eps, eps]."""
    def phi(y):
        y = np.asarray(y, dtype=float)
        out = np.where(np.abs(y) < eps, (1.0 + np.cos(np.pi * y / eps)) / (2.0 * eps), 0.0)
        return float(out) if out.ndim == 0 else out
    return phi


def _min_node_gap(pair: PeakonPair) -> float:
    qs = [nd.q for nd in pair.nodes]
    if len(qs) < 2:
        return pair.period
    gaps = [b - a for a, b in zip(qs, qs[1:])] + [qs[0] + pair.period - qs[-1]]
    return min(gaps)


def mollify(pair: PeakonPair, eps: float, step: float | None = None) -> SampledPair:
    """Smooth a peakon pair into a SampledPair by bump convolution.

    Requires 0 < eps < half the minimal inter-node distance and a grid step
    of at most eps/10.  Point masses are sampled as periodized bumps and then
    rescaled per atom so the grid (trapezoid) mass equals v_n exactly.
    """
    l = pair.period
    if not 0.0 < eps < 0.5 * _min_node_gap(pair):
        raise EpsilonTooLargeError(
            f"eps = {eps!r} must lie in (0, {0.5 * _min_node_gap(pair)!r})")
    if step is None:
        step = eps / 10.0
    elif step > eps / 10.0:
        raise ValueError(f"grid step {step!r} exceeds eps/10 = {eps / 10.0!r}")
    m = math.ceil(l / step)
    h = l / m
    xs = h * np.arange(m)
    phi = cosine_bump(eps)

    def smooth(evaluate, x):
        cuts = []
        for nd in pair.nodes:
            y0 = (x - nd.q) % l
            for y in (y0, y0 - l):
                if -eps < y < eps:
                    cuts.append(y)
        return adaptive_quad(lambda y: phi(y) * evaluate(x - y), -eps, eps,
                             tol=1e-12, breakpoints=cuts)

    u_eps = np.array([smooth(pair.u, x) for x in xs])
    du_eps = np.array([smooth(pair.du, x) for x in xs])
    w_eps = np.zeros(m)
    for q, v in pair.atoms:
        wrapped = (xs - q + 0.5 * l) % l - 0.5 * l
        bump = phi(wrapped)
        mass = h * float(np.sum(bump))
        w_eps += v * bump / mass
    return SampledPair(l, u_eps, du_eps, w_eps)


def weak_star_functional(pair, h, dh, g, lo: float, hi: float,
                         tol: float = 1e-9, breakpoints=()) -> float:
    """int u h + int u' h' + int g dmu over [lo, hi).

    h, dh, g are vectorized test functions (h compactly supported in the
    window with derivative dh; g continuous); pass their kink positions in
    ``breakpoints``.  This is exactly the family of functionals generating
    the weak-* topology on coefficient pairs.
    """
    cuts = list(breakpoints)
    l = pair.period
    if isinstance(pair, PeakonPair):
        for nd in pair.nodes:
            k = math.ceil((lo - nd.q) / l)
            while nd.q + k * l < hi:
                cuts.append(nd.q + k * l)
                k += 1
    else:
        step = pair.step
        k = math.floor(lo / step) + 1
        cuts.extend(np.arange(k * step, hi, step).tolist())

    def ac_part(x):
        uu, du = pair.u(x), pair.du(x)
        return uu * h(x) + du * dh(x) + g(x) * (uu * uu + du * du + pair.w(x))

    total = adaptive_quad(ac_part, lo, hi, tol=tol, breakpoints=cuts)
    for q, v in pair.atoms:
        k = math.ceil((lo - q) / l)
        while q + k * l < hi:
            total += v * float(g(q + k * l))
            k += 1
    return total


def _delta_on_grid(handle: PairHandle, zgrid, steps: int | None = None):
    pair = handle.pair
    if isinstance(pair, PeakonPair):
        return discriminant(pair, handle.resolved_base)(zgrid)
    m = monodromy_at(pair, zgrid, handle.resolved_base, steps)
    return 0.5 * (m[0, 0] + m[1, 1])


def _svalue_on_grid(handle: PairHandle, zgrid, steps: int | None = None):
    pair = handle.pair
    if isinstance(pair, PeakonPair):
        return monodromy(pair, handle.resolved_base).dirichlet_poly(zgrid)
    return monodromy_at(pair, zgrid, handle.resolved_base, steps)[0, 1]


def _check_periods(a: PairHandle, b: PairHandle) -> None:
    if not math.isclose(a.pair.period, b.pair.period, rel_tol=1e-12):
        raise ValueError("pairs have incompatible periods")


def discriminant_distance(a: PairHandle, b: PairHandle, zgrid,
                          steps: int | None = None) -> float:
    """sup over the grid of |Delta_a - Delta_b|, each via its natural backend."""
    _check_periods(a, b)
    zgrid = np.asarray(zgrid)
    return float(np.max(np.abs(_delta_on_grid(a, zgrid, steps)
                               - _delta_on_grid(b, zgrid, steps))))


def dirichlet_distance(a: PairHandle, b: PairHandle, zgrid,
                       steps: int | None = None) -> float:
    """sup over the grid of |s_a - s_b| at the handles' base points."""
    _check_periods(a, b)
    zgrid = np.asarray(zgrid)
    return float(np.max(np.abs(_svalue_on_grid(a, zgrid, steps)
                               - _svalue_on_grid(b, zgrid, steps))))


# -- batched bracket refinement (all spectral functions share one integration) --

class _Bracket:
    __slots__ = ("fn_id", "lo", "hi", "f_lo", "f_hi", "side", "done")

    def __init__(self, fn_id, lo, hi, f_lo, f_hi):
        self.fn_id, self.lo, self.hi = fn_id, lo, hi
        self.f_lo, self.f_hi = f_lo, f_hi
        self.side = 0
        self.done = False


def _fn_values(mono: np.ndarray, fn_id: int) -> np.ndarray:
    if fn_id == 0:
        return 0.5 * (mono[0, 0] + mono[1, 1]).real - 1.0
    if fn_id == 1:
        return 0.5 * (mono[0, 0] + mono[1, 1]).real + 1.0
    return mono[0, 1].real


def _refine_brackets(pair: SampledPair, base: float, steps: int | None,
                     brackets: list[_Bracket], xtol: float = 1e-10,
                     max_rounds: int = 80) -> None:
    """Illinois (bracketed secant) refinement, one shooting batch per round."""
    for _ in range(max_rounds):
        active = [b for b in brackets if not b.done]
        if not active:
            return
        xs = []
        for b in active:
            x = (b.lo * b.f_hi - b.hi * b.f_lo) / (b.f_hi - b.f_lo)
            if not b.lo < x < b.hi:
                x = 0.5 * (b.lo + b.hi)
            xs.append(x)
        mono = monodromy_at(pair, np.array(xs), base, steps)
        vals = {fid: _fn_values(mono, fid) for fid in {b.fn_id for b in active}}
        for k, b in enumerate(active):
            fx = float(vals[b.fn_id][k])
            x = xs[k]
            if fx == 0.0:
                b.lo = b.hi = x
                b.done = True
                continue
            if (fx > 0) == (b.f_lo > 0):
                b.lo, b.f_lo = x, fx
                if b.side == -1:
                    b.f_hi *= 0.5
                b.side = -1
            else:
                b.hi, b.f_hi = x, fx
                if b.side == 1:
                    b.f_lo *= 0.5
                b.side = 1
            if b.hi - b.lo <= xtol:
                b.done = True


@dataclass
class ConvergenceReport:
    """Per-step sup distances and matched-eigenvalue drifts for one family."""

    eps: list[float]
    zgrid: np.ndarray
    delta_dist: list[float]
    dirichlet_dist: list[float]
    tracked: list[tuple[str, float]]   # (kind, exact eigenvalue)
    drifts: list[list[float]]          # drifts[k][step] for tracked[k]

    def to_csv(self) -> str:
        cols = ["eps", "delta_dist", "dirichlet_dist"]
        cols += [f"drift_{kind}_{value:.6g}" for kind, value in self.tracked]
        lines = [",".join(cols)]
        for i, e in enumerate(self.eps):
            row = [e, self.delta_dist[i], self.dirichlet_dist[i]]
            row += [self.drifts[k][i] for k in range(len(self.tracked))]
            lines.append(",".join(format(x, ".17g") for x in row))
        return "\n".join(lines) + "\n"


def run_family(pair: PeakonPair, eps_list, zgrid=None, base: float | None = None,
               steps: int | None = None) -> ConvergenceReport:
    """Mollify at each eps and measure distances and eigenvalue drift.

    Distances are sups over ``zgrid`` (default: 241 points on [-3, 3]).
    Every exact eigenvalue whose value lies in the real span of the grid is
    tracked: its drift is the distance to the nearest root of the smoothed
    pair's matching spectral function.
    """
    zgrid = np.linspace(-3.0, 3.0, 241) if zgrid is None else np.asarray(zgrid)
    eps_list = [float(e) for e in eps_list]
    b = pair.default_base() if base is None else float(base)
    if not eps_list:
        return ConvergenceReport([], zgrid, [], [], [], [])

    delta_poly = discriminant(pair, b)
    s_poly = monodromy(pair, b).dirichlet_poly
    rmin = float(np.min(zgrid.real))
    rmax = float(np.max(zgrid.real))
    report = build_report(pair, b)
    tracked: list[tuple[str, float]] = []
    for kind in (PERIODIC, ANTIPERIODIC, DIRICHLET):
        for v in sorted(set(report.values(kind))):
            if rmin <= v <= rmax:
                tracked.append((kind, v))
    fn_of_kind = {PERIODIC: 0, ANTIPERIODIC: 1, DIRICHLET: 2}

    real_grid = np.linspace(rmin, rmax, max(241, len(zgrid)))
    grid_is_real = np.all(np.isreal(zgrid)) and len(zgrid) >= 64

    delta_dist, dirichlet_dist = [], []
    drifts: list[list[float]] = [[] for _ in tracked]
    for eps in eps_list:
        sp = mollify(pair, eps)
        mono_grid = monodromy_at(sp, zgrid.astype(complex), b, steps)
        delta_dist.append(float(np.max(np.abs(
            0.5 * (mono_grid[0, 0] + mono_grid[1, 1]) - delta_poly(zgrid)))))
        dirichlet_dist.append(float(np.max(np.abs(mono_grid[0, 1] - s_poly(zgrid)))))

        if grid_is_real:
            scan_grid, scan_mono = np.real(zgrid), mono_grid
        else:
            scan_grid = real_grid
            scan_mono = monodromy_at(sp, scan_grid.astype(complex), b, steps)
        brackets = []
        for fid in (0, 1, 2):
            vals = _fn_values(scan_mono, fid)
            for i in range(len(scan_grid) - 1):
                if vals[i] * vals[i + 1] < 0:
                    brackets.append(_Bracket(fid, float(scan_grid[i]),
                                             float(scan_grid[i + 1]),
                                             float(vals[i]), float(vals[i + 1])))
        _refine_brackets(sp, b, steps, brackets)
        roots: dict[int, list[float]] = {0: [], 1: [], 2: []}
        for br in brackets:
            roots[br.fn_id].append(0.5 * (br.lo + br.hi))
        for k, (kind, value) in enumerate(tracked):
            candidates = roots[fn_of_kind[kind]]
            drifts[k].append(min((abs(r - value) for r in candidates),
                                 default=math.inf))
    return ConvergenceReport(eps_list, zgrid, delta_dist, dirichlet_dist,
                             tracked, drifts)
