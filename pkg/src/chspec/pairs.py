"""Periodic coefficient pairs (u, mu) and their pointwise/integral data.

Two concrete backends are supported:

* ``PeakonPair`` -- exact periodic multi-peakon data.  The wave profile is
  u(x) = sum_k sum_n p_n exp(-|x - q_n - k*period|), evaluated in closed form
  through the periodized kernel sum_k e^{-|t-k*l|} = cosh(|t|_l - l/2)/sinh(l/2),
  and the singular measure part is a finite set of non-negative point masses
  v_n at the node positions.
* ``SampledPair`` -- grid samples of (u, u', w) over one period with periodic
  piecewise-linear interpolation, where w >= 0 is the density of the singular
  part.  This is the input format of the shooting backend.

Either way the associated measure is mu = (u^2 + u'^2) dx + upsilon, so the
admissibility inequality mu(B) >= int_B (u^2 + u'^2) holds by construction.

u' of a peakon jumps by -2*p_n across each node; all derivative evaluations
use the left-continuous branch, matching the left-continuous convention used
for quasi-derivatives in the transfer engine.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .quadrature import adaptive_quad

__all__ = [
    "PeakonNode", "PeakonPair", "SampledPair", "PairHandle", "Violation",
    "validate", "green_potential", "periodic_kernel",
    "handle_to_dict", "handle_from_dict", "dumps_pair", "loads_pair",
    "save_pair", "load_pair",
]


@dataclass(frozen=True)
class PeakonNode:
    """One peakon: position q in [0, period), momentum p, point mass v >= 0."""
    q: float
    p: float
    v: float


def _normalize_nodes(period, nodes):
    """Reduce positions mod period, sort, merge coincident, drop trivial nodes.

    Point masses at the same position are indistinguishable, so coincident
    nodes merge by summing p and v.  Nodes with p = 0 and v = 0 contribute
    neither an omega-atom nor an upsilon-atom and are dropped (keeping them
    would break the exact degree law of the discriminant).
    """
    coerced = []
    for nd in nodes:
        if not isinstance(nd, PeakonNode):
            nd = PeakonNode(*nd)
        coerced.append(PeakonNode(float(nd.q), float(nd.p), float(nd.v)))
    if not (math.isfinite(period) and period > 0):
        return tuple(coerced)
    merged: dict[float, list[float]] = {}
    for nd in coerced:
        q = nd.q % period if math.isfinite(nd.q) else nd.q
        if q == period:  # float wrap artifact
            q = 0.0
        if q in merged:
            merged[q][0] += nd.p
            merged[q][1] += nd.v
        else:
            merged[q] = [nd.p, nd.v]
    out = [PeakonNode(q, p, v) for q, (p, v) in sorted(merged.items())
           if not (p == 0.0 and v == 0.0)]
    return tuple(out)


@dataclass(frozen=True, init=False)
class PeakonPair:
    """Exact periodic multi-peakon coefficient pair."""

    period: float
    nodes: tuple[PeakonNode, ...]

    def __init__(self, period, nodes=()):
        object.__setattr__(self, "period", float(period))
        object.__setattr__(self, "nodes", _normalize_nodes(float(period), nodes))

    # -- pointwise data ----------------------------------------------------

    def u(self, x):
        """Wave profile u(x); accepts scalars or arrays."""
        x = np.asarray(x, dtype=float)
        if not self.nodes:
            out = np.zeros_like(x)
            return float(out) if out.ndim == 0 else out
        l = self.period
        q = np.array([nd.q for nd in self.nodes])
        p = np.array([nd.p for nd in self.nodes])
        d = (x[..., None] - q) % l
        out = np.cosh(d - 0.5 * l) @ p / math.sinh(0.5 * l)
        return float(out) if out.ndim == 0 else out

    def du(self, x):
        """Left-continuous u'(x): the branch d in (0, period] is used, so the
        jump across a node is -2*p_n."""
        x = np.asarray(x, dtype=float)
        if not self.nodes:
            out = np.zeros_like(x)
            return float(out) if out.ndim == 0 else out
        l = self.period
        q = np.array([nd.q for nd in self.nodes])
        p = np.array([nd.p for nd in self.nodes])
        d = (x[..., None] - q) % l
        d = np.where(d == 0.0, l, d)
        out = np.sinh(d - 0.5 * l) @ p / math.sinh(0.5 * l)
        return float(out) if out.ndim == 0 else out

    def w(self, x):
        """Density of the absolutely continuous part of upsilon (zero here)."""
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        return float(out) if out.ndim == 0 else out

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        """(position, mass) of the upsilon point masses, masses > 0 only."""
        return tuple((nd.q, nd.v) for nd in self.nodes if nd.v > 0.0)

    # -- integrals ----------------------------------------------------------

    def integral_u(self) -> float:
        """int u over one period = 2 * sum(p): each periodized kernel has mass 2."""
        return 2.0 * math.fsum(nd.p for nd in self.nodes)

    def integral_mu(self) -> float:
        """mu of one period: closed-form int (u^2 + u'^2) plus sum of masses."""
        return self.int_uu(0.0, self.period) + math.fsum(nd.v for nd in self.nodes)

    def _smooth_cuts(self, a: float, b: float) -> list[float]:
        """Kink positions partitioning [a, b] (b - a <= period) into smooth pieces."""
        l = self.period
        cuts = {a + ((nd.q - a) % l) for nd in self.nodes}
        return [a] + sorted(c for c in cuts if a < c < b) + [b]

    def int_u(self, a: float, b: float) -> float:
        """int_a^b u dx, exact.

        On a kink-free piece u = alpha*e^{x-m} + beta*e^{-(x-m)} around the
        midpoint m, so the piece integrates to 2*u(m)*sinh((t-s)/2).
        """
        if b < a:
            return -self.int_u(b, a)
        l = self.period
        full, rem = divmod(b - a, l)
        total = full * self.integral_u()
        if rem > 0.0:
            cuts = self._smooth_cuts(a, a + rem)
            for s, t in zip(cuts[:-1], cuts[1:]):
                total += 2.0 * self.u(0.5 * (s + t)) * math.sinh(0.5 * (t - s))
        return total

    def int_uu(self, a: float, b: float) -> float:
        """int_a^b (u^2 + u'^2) dx, exact.

        With alpha, beta as in :meth:`int_u`, the cross terms of u^2 and u'^2
        cancel and each piece integrates to 2*(alpha^2+beta^2)*sinh(t-s).
        """
        if b < a:
            return -self.int_uu(b, a)
        full, rem = divmod(b - a, self.period)
        total = full * self._int_uu_window(a, a + self.period) if full else 0.0
        if rem > 0.0:
            total += self._int_uu_window(a, a + rem)
        return total

    def _int_uu_window(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        total = 0.0
        cuts = self._smooth_cuts(a, b)
        for s, t in zip(cuts[:-1], cuts[1:]):
            m = 0.5 * (s + t)
            um, dm = self.u(m), self.du(m)
            alpha = 0.5 * (um + dm)
            beta = 0.5 * (um - dm)
            total += 2.0 * (alpha * alpha + beta * beta) * math.sinh(t - s)
        return total

    def int_mu(self, a: float, b: float) -> float:
        """mu([a, b)): absolutely continuous part plus atoms in [a, b)."""
        if b < a:
            return -self.int_mu(b, a)
        l = self.period
        total = self.int_uu(a, b)
        for q, v in self.atoms:
            kmin = math.ceil((a - q) / l)
            kmax = math.ceil((b - q) / l) - 1
            if kmax >= kmin:
                total += v * (kmax - kmin + 1)
        return total

    def default_base(self) -> float:
        """Midpoint of the longest inter-node gap (maximally far from nodes)."""
        if not self.nodes:
            return 0.0
        l = self.period
        qs = [nd.q for nd in self.nodes]
        best_len, best_mid = -1.0, 0.0
        for i, q in enumerate(qs):
            nxt = qs[i + 1] if i + 1 < len(qs) else qs[0] + l
            if nxt - q > best_len:
                best_len = nxt - q
                best_mid = (q + 0.5 * (nxt - q)) % l
        return best_mid


@dataclass(frozen=True, init=False)
class SampledPair:
    """Grid-sampled smooth coefficient pair for the shooting backend.

    Arrays hold u(x_j), u'(x_j), w(x_j) at x_j = j * step, step = period/M.
    Evaluation wraps modulo the period; interpolation is piecewise linear.
    """

    period: float
    u_grid: np.ndarray
    du_grid: np.ndarray
    w_grid: np.ndarray

    def __init__(self, period, u_grid, du_grid, w_grid):
        object.__setattr__(self, "period", float(period))
        for name, arr in (("u_grid", u_grid), ("du_grid", du_grid), ("w_grid", w_grid)):
            a = np.array(arr, dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @property
    def size(self) -> int:
        return len(self.u_grid)

    @property
    def step(self) -> float:
        return self.period / self.size

    def _interp(self, grid: np.ndarray, x):
        x = np.asarray(x, dtype=float)
        l, m = self.period, self.size
        t = x % l
        t = np.where(t >= l, 0.0, t)  # guard: (tiny negative) % l can round to l
        pos = t / self.step
        idx = np.minimum(pos.astype(int), m - 1)
        frac = pos - idx
        out = grid[idx] * (1.0 - frac) + grid[(idx + 1) % m] * frac
        return float(out) if out.ndim == 0 else out

    def u(self, x):
        return self._interp(self.u_grid, x)

    def du(self, x):
        return self._interp(self.du_grid, x)

    def w(self, x):
        return self._interp(self.w_grid, x)

    @property
    def atoms(self) -> tuple[tuple[float, float], ...]:
        return ()

    def integral_u(self) -> float:
        # periodic trapezoid rule is exact for the piecewise-linear interpolant
        return self.step * float(np.sum(self.u_grid))

    def integral_mu(self) -> float:
        """mu of one period for the interpolated coefficients, exact."""
        return (self._int_sq(self.u_grid) + self._int_sq(self.du_grid)
                + self.step * float(np.sum(self.w_grid)))

    def _int_sq(self, grid: np.ndarray) -> float:
        f0 = grid
        f1 = np.roll(grid, -1)
        return self.step / 3.0 * float(np.sum(f0 * f0 + f0 * f1 + f1 * f1))

    def default_base(self) -> float:
        return 0.0


@dataclass(frozen=True)
class PairHandle:
    """A coefficient pair together with a chosen base point."""

    pair: PeakonPair | SampledPair
    base: float | None = None

    @property
    def resolved_base(self) -> float:
        return self.pair.default_base() if self.base is None else float(self.base)


@dataclass(frozen=True)
class Violation:
    """One violated invariant, as data rather than as an exception."""
    code: str
    message: str


def _validate_peakon(pair: PeakonPair) -> list[Violation]:
    out = []
    if not math.isfinite(pair.period):
        out.append(Violation("NonFiniteValue", "period is not finite"))
    elif pair.period <= 0:
        out.append(Violation("NonPositivePeriod", f"period {pair.period!r} must be > 0"))
    for nd in pair.nodes:
        if not all(map(math.isfinite, (nd.q, nd.p, nd.v))):
            out.append(Violation("NonFiniteValue", f"node {nd} has non-finite fields"))
            continue
        if nd.v < 0:
            out.append(Violation("NegativePointMass", f"node at {nd.q!r} has v = {nd.v!r} < 0"))
    if math.isfinite(pair.period) and pair.period > 0:
        qs = [nd.q for nd in pair.nodes]
        if any(not (0 <= q < pair.period) for q in qs) or any(
                q2 <= q1 for q1, q2 in zip(qs, qs[1:])):
            out.append(Violation("NodeOrder", "node positions not strictly ordered in [0, period)"))
    return out


def _validate_sampled(pair: SampledPair) -> list[Violation]:
    out = []
    if not math.isfinite(pair.period):
        out.append(Violation("NonFiniteValue", "period is not finite"))
    elif pair.period <= 0:
        out.append(Violation("NonPositivePeriod", f"period {pair.period!r} must be > 0"))
    m = len(pair.u_grid)
    if len(pair.du_grid) != m or len(pair.w_grid) != m:
        out.append(Violation("LengthMismatch", "u, du, w arrays differ in length"))
        return out
    if m < 2:
        out.append(Violation("TooFewSamples", f"need at least 2 samples, got {m}"))
    for name, arr in (("u", pair.u_grid), ("du", pair.du_grid), ("w", pair.w_grid)):
        if not np.all(np.isfinite(arr)):
            out.append(Violation("NonFiniteValue", f"array {name} contains non-finite values"))
    if np.any(pair.w_grid < 0):
        out.append(Violation("NegativeDensity", "w must be non-negative"))
    return out


def validate(obj) -> list[Violation]:
    """Collect every violated invariant of a pair or handle; empty means valid."""
    if isinstance(obj, PairHandle):
        out = validate(obj.pair)
        base = obj.resolved_base
        if not math.isfinite(base):
            out.append(Violation("NonFiniteBase", f"base {base!r} is not finite"))
        elif isinstance(obj.pair, PeakonPair) and math.isfinite(obj.pair.period) \
                and obj.pair.period > 0:
            for nd in obj.pair.nodes:
                if (base - nd.q) % obj.pair.period == 0.0:
                    out.append(Violation(
                        "BaseAtNode", f"base {base!r} coincides with node at {nd.q!r}"))
        return out
    if isinstance(obj, PeakonPair):
        return _validate_peakon(obj)
    if isinstance(obj, SampledPair):
        return _validate_sampled(obj)
    raise TypeError(f"cannot validate {type(obj).__name__}")


# -- Green potential ---------------------------------------------------------

def periodic_kernel(period: float, t) -> float | np.ndarray:
    """Period-summed exponential kernel sum_k e^{-|t - k*period|}."""
    d = np.asarray(t, dtype=float) % period
    out = np.cosh(d - 0.5 * period) / math.sinh(0.5 * period)
    return float(out) if out.ndim == 0 else out


def green_potential(pair, x: float, tol: float = 1e-10) -> float:
    """P(x) = 1/4 int K(x,.) u^2 + 1/4 int K(x,.) dmu over one period.

    K is the period-summed kernel, so this equals the whole-line integrals
    of e^{-|x-.|} against u^2 dx and dmu.  P solves P - P'' = (u^2 + mu)/2.
    """
    l = pair.period
    x = float(x)

    def integrand(xi):
        kern = np.cosh((xi - x) - 0.5 * l) / math.sinh(0.5 * l)
        uu = pair.u(xi)
        return kern * (2.0 * uu * uu + pair.du(xi) ** 2 + pair.w(xi))

    # integrate over (x, x + l): the kernel kink sits at the endpoints
    if isinstance(pair, SampledPair):
        h = pair.step
        k0 = math.floor(x / h) + 1
        cuts = [k0 * h + j * h for j in range(pair.size) if x < k0 * h + j * h < x + l]
    else:
        cuts = [x + ((nd.q - x) % l) for nd in pair.nodes]
        cuts = [c for c in cuts if x < c < x + l]
    acum = adaptive_quad(integrand, x, x + l, tol=tol, breakpoints=cuts)
    atom = math.fsum(v * periodic_kernel(l, x - q) for q, v in pair.atoms)
    return 0.25 * acum + 0.25 * atom


# -- JSON pair format ---------------------------------------------------------

def handle_to_dict(handle: PairHandle) -> dict:
    pair = handle.pair
    if isinstance(pair, PeakonPair):
        d = {"kind": "peakon", "period": pair.period}
        if handle.base is not None:
            d["base"] = float(handle.base)
        d["nodes"] = [{"q": nd.q, "p": nd.p, "v": nd.v} for nd in pair.nodes]
        return d
    if isinstance(pair, SampledPair):
        d = {"kind": "sampled", "period": pair.period}
        if handle.base is not None:
            d["base"] = float(handle.base)
        d["step"] = pair.step
        d["u"] = pair.u_grid.tolist()
        d["du"] = pair.du_grid.tolist()
        d["w"] = pair.w_grid.tolist()
        return d
    raise TypeError(f"cannot serialize {type(pair).__name__}")


def handle_from_dict(d: dict) -> PairHandle:
    kind = d.get("kind")
    base = d.get("base")
    if kind == "peakon":
        nodes = [(nd["q"], nd["p"], nd["v"]) for nd in d.get("nodes", [])]
        return PairHandle(PeakonPair(d["period"], nodes), base)
    if kind == "sampled":
        pair = SampledPair(d["period"], d["u"], d["du"], d["w"])
        if "step" in d and len(d["u"]) > 0:
            implied = d["period"] / len(d["u"])
            if not math.isclose(d["step"], implied, rel_tol=1e-9, abs_tol=0.0):
                raise ValueError(
                    f"step {d['step']!r} inconsistent with period/{len(d['u'])}")
        return PairHandle(pair, base)
    raise ValueError(f"unknown pair kind {kind!r}")


def dumps_pair(handle: PairHandle) -> str:
    """Canonical JSON text: compact separators, repr-roundtrip floats, newline."""
    return json.dumps(handle_to_dict(handle), separators=(",", ":")) + "\n"


def loads_pair(text: str) -> PairHandle:
    return handle_from_dict(json.loads(text))


def save_pair(path, handle: PairHandle) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_pair(handle))


def load_pair(path) -> PairHandle:
    with open(path, encoding="utf-8") as fh:
        return loads_pair(fh.read())
