"""Adaptive composite Gauss-Legendre quadrature.

The integrands in this package are piecewise analytic with kinks only at
known positions (peakon nodes, sample-grid knots, kernel folds), so the
strategy is: split at the supplied breakpoints, then refine each panel by
bisection using a 15-point Gauss-Legendre rule, comparing one panel against
its two halves for the error estimate.
"""

from __future__ import annotations

import numpy as np

from .errors import QuadratureError

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)


def _panel(f, lo: float, hi: float) -> float:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    return half * float(np.dot(_WEIGHTS, f(mid + half * _NODES)))


def adaptive_quad(f, lo: float, hi: float, tol: float = 1e-10,
                  breakpoints=(), max_depth: int = 48) -> float:
    """Integrate a vectorized callable ``f`` over [lo, hi] to absolute tolerance.

    ``breakpoints`` lists interior kink positions; panels never straddle them.
    Raises QuadratureError if the recursion depth is exhausted before the
    local error estimate drops below its share of ``tol``.
    """
    if hi == lo:
        return 0.0
    if hi < lo:
        return -adaptive_quad(f, hi, lo, tol, breakpoints, max_depth)
    cuts = [lo] + sorted({float(p) for p in breakpoints if lo < p < hi}) + [hi]
    width = hi - lo
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        total += _refine(f, a, b, _panel(f, a, b), tol * (b - a) / width, max_depth)
    return total


def _refine(f, a: float, b: float, whole: float, tol: float, depth: int) -> float:
    mid = 0.5 * (a + b)
    left = _panel(f, a, mid)
    right = _panel(f, mid, b)
    better = left + right
    err = abs(better - whole)
    if err <= max(tol, 4.0 * np.finfo(float).eps * abs(better)):
        return better
    if depth <= 0:
        raise QuadratureError(
            f"quadrature stalled on [{a!r}, {b!r}]: error estimate {err:.3e} > {tol:.3e}")
    half_tol = 0.5 * tol
    return (_refine(f, a, mid, left, half_tol, depth - 1)
            + _refine(f, mid, b, right, half_tol, depth - 1))
