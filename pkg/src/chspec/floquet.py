"""Exact transfer-matrix engine for peakon pairs.

Between nodes the spectral problem -f'' + f/4 = z omega f + z^2 upsilon f has
no coefficient support, so (f, f') propagates by the constant hyperbolic flow
of -f'' + f/4 = 0 over the interval length.  Crossing a node multiplies the
state by a shear: the weak form forces the jump

    f'(q+) - f'(q-) = -(2 p z + v z^2) f(q),

with 2p the omega-atom (kink of u) and v the upsilon-atom.  The ordered
product of these factors over one period, conjugated into quasi-derivative
coordinates (f, f^[1]) with f^[1] = f' - z u'(a) f at the base point, is the
monodromy matrix; entries are exact polynomials in z.

Conventions: the propagation window is half-open, [a, a + period), and a node
exactly at the window end belongs to the next period.  Node factors act after
the interval reaching them (left-continuous states), and u'(a) is evaluated
on its left-continuous branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BaseAtNodeError
from .pairs import PeakonPair
from .polynomial import Mat2Poly, Poly

__all__ = ["interval_matrix", "node_matrix", "Monodromy", "monodromy",
           "discriminant", "solution_matrix"]


def interval_matrix(d: float) -> Mat2Poly:
    """Propagation of (f, f') over a node-free stretch of length d >= 0."""
    if d < 0:
        raise ValueError(f"interval length must be non-negative, got {d!r}")
    ch, sh = math.cosh(0.5 * d), math.sinh(0.5 * d)
    return Mat2Poly(Poly([ch]), Poly([2.0 * sh]), Poly([0.5 * sh]), Poly([ch]))


def node_matrix(p: float, v: float) -> Mat2Poly:
    """Jump of (f, f') across a node with momentum p and point mass v >= 0."""
    if v < 0:
        raise ValueError(f"point mass must be non-negative, got {v!r}")
    one, zero = Poly([1.0]), Poly([0.0])
    return Mat2Poly(one, zero, Poly([0.0, -2.0 * p, -v]), one)


def _shear(slope: float) -> Mat2Poly:
    # [[1, 0], [slope*z, 1]]: converts (f, f^[1]) to (f, f') when slope = u'(a)
    one, zero = Poly([1.0]), Poly([0.0])
    return Mat2Poly(one, zero, Poly([0.0, slope]), one)


def _window_nodes(pair: PeakonPair, base: float) -> list[tuple[float, float, float]]:
    """Node data shifted into (base, base + period), sorted by position."""
    l = pair.period
    out = []
    for nd in pair.nodes:
        off = (nd.q - base) % l
        if off == 0.0:
            raise BaseAtNodeError(
                f"base {base!r} coincides with node at {nd.q!r} (mod period)")
        out.append((base + off, nd.p, nd.v))
    out.sort()
    return out


def _transfer(pair: PeakonPair, base: float, upto: float) -> Mat2Poly:
    """Ordered product of interval/node factors over [base, upto).

    A node exactly at ``upto`` is excluded: the returned state is the
    left-continuous one.
    """
    acc = Mat2Poly.identity()
    prev = base
    for pos, p, v in _window_nodes(pair, base):
        if pos >= upto:
            break
        acc = node_matrix(p, v) @ interval_matrix(pos - prev) @ acc
        prev = pos
    return interval_matrix(upto - prev) @ acc


@dataclass(frozen=True)
class Monodromy:
    """One-period transport of (f, f^[1]), entries polynomial in z."""

    matrix: Mat2Poly
    base: float

    @property
    def discriminant(self) -> Poly:
        return (self.matrix.a11 + self.matrix.a22) * 0.5

    @property
    def dirichlet_poly(self) -> Poly:
        """s(z, base + period): its zeros are the Dirichlet spectrum."""
        return self.matrix.a12


def monodromy(pair: PeakonPair, base: float | None = None) -> Monodromy:
    """Monodromy matrix at the given base point (default: farthest from nodes)."""
    a = pair.default_base() if base is None else float(base)
    t = _transfer(pair, a, a + pair.period)
    w = pair.du(a)  # left-continuous branch, = u'((a + period)-) by periodicity
    m = _shear(-w) @ t @ _shear(w)
    return Monodromy(m, a)


def discriminant(pair: PeakonPair, base: float | None = None) -> Poly:
    """Floquet discriminant tr(M)/2; independent of the base point.

    Computed from the raw transfer product: the quasi-derivative conversion is
    a conjugation and drops out of the trace.
    """
    a = pair.default_base() if base is None else float(base)
    return _transfer(pair, a, a + pair.period).trace() * 0.5


def solution_matrix(pair: PeakonPair, base: float, x: float) -> Mat2Poly:
    """Fundamental system at x: columns (c, c^[1]) and (s, s^[1]) from base.

    Requires base <= x <= base + period.  x may sit on a node; the state is
    then the left-continuous one (the node factor at x is excluded).
    """
    a = float(base)
    x = float(x)
    if not a <= x <= a + pair.period:
        raise ValueError(f"x = {x!r} outside [base, base + period]")
    t = _transfer(pair, a, x)
    return _shear(-pair.du(x)) @ t @ _shear(pair.du(a))
