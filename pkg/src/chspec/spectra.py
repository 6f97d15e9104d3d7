"""Periodic/antiperiodic and Dirichlet spectra, gaps and the kappa sequence.

The periodic (antiperiodic) spectrum is the zero set of Delta -+ 1 with
multiplicities; the Dirichlet spectrum is the zero set of s(., a + period),
always simple.  Zeros of Delta^2 - 1 are labeled lambda_i with signed indices:
on each side of 0 the count is even (with multiplicity), the smallest-modulus
zero is a simple periodic eigenvalue, and the rest follow in alternating
pairs antiperiodic/periodic.  Gaps are the closed intervals

    Gamma_i = [lambda_{2i}, lambda_{2i+1}]   (0 < i < I+),
    Gamma_{I+} = [lambda_{2 I+}, +inf),      and mirrored for i < 0;

the interval around zero is not a gap.  Each Dirichlet eigenvalue lies in a
gap; every interior gap holds exactly one and the outermost gaps at most one,
with +-inf sentinels standing in for absent outermost Dirichlet values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import LabelingConflictError, RootDeficitError
from .floquet import discriminant, monodromy
from .pairs import PeakonPair, SampledPair
from .polynomial import Poly, eval_scale, real_roots
from .shooting import discriminant_at, dirichlet_value_at, find_real_roots

__all__ = ["PERIODIC", "ANTIPERIODIC", "DIRICHLET", "LabeledEigenvalue", "Gap",
           "SpectrumReport", "periodic_antiperiodic", "dirichlet", "build_report"]

PERIODIC = "periodic"
ANTIPERIODIC = "antiperiodic"
DIRICHLET = "dirichlet"

_DOUBLE_ROOT_RTOL = 1e-8   # |Delta'(root)| below this times its scale => double
_GAP_MEMBERSHIP_RTOL = 1e-9


@dataclass(frozen=True)
class LabeledEigenvalue:
    value: float
    kind: str
    multiplicity: int = 1
    index: int = 0  # lambda_i / kappa_i index; a double keeps its lower index


@dataclass(frozen=True)
class Gap:
    """Closed maximal interval where |Delta| >= 1, indexed by nonzero integers."""

    index: int
    lower: float  # -inf on the outermost negative gap
    upper: float  # +inf on the outermost positive gap

    @property
    def closed(self) -> bool:
        return self.lower == self.upper

    def contains(self, x: float) -> bool:
        tol = _GAP_MEMBERSHIP_RTOL * max(1.0, abs(x))
        return self.lower - tol <= x <= self.upper + tol


@dataclass
class SpectrumReport:
    periodic: list[LabeledEigenvalue] = field(default_factory=list)
    antiperiodic: list[LabeledEigenvalue] = field(default_factory=list)
    dirichlet: list[LabeledEigenvalue] = field(default_factory=list)
    gaps: list[Gap] = field(default_factory=list)
    kappa: dict[int, float] = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)

    def values(self, kind: str) -> list[float]:
        """Eigenvalues of one kind, repeated per multiplicity, ascending."""
        src = {PERIODIC: self.periodic, ANTIPERIODIC: self.antiperiodic,
               DIRICHLET: self.dirichlet}[kind]
        out: list[float] = []
        for ev in sorted(src, key=lambda e: e.value):
            out.extend([float(ev.value)] * ev.multiplicity)
        return out

    def to_dict(self) -> dict:
        def num(x: float):
            if math.isinf(x):
                return "inf" if x > 0 else "-inf"
            return float(x)

        return {
            "periodic": self.values(PERIODIC),
            "antiperiodic": self.values(ANTIPERIODIC),
            "dirichlet": self.values(DIRICHLET),
            "gaps": [{"i": g.index, "lo": num(g.lower), "hi": num(g.upper)}
                     for g in self.gaps],
            "kappa": {str(i): num(v) for i, v in sorted(self.kappa.items())},
            "violations": list(self.violations),
        }


# -- root classification -------------------------------------------------------

def _classified_roots(delta: Poly, shift: float) -> list[tuple[float, int]]:
    """Roots of (delta - shift) with multiplicity from the |Delta'| criterion."""
    poly = delta - Poly([shift])
    if poly.trim(5e-14).degree == 0:
        return []
    ddelta = delta.derivative()
    out = []
    total = 0
    for r, _ in real_roots(poly, assume_all_real=True):
        double = abs(float(ddelta(r))) <= _DOUBLE_ROOT_RTOL * max(1.0, eval_scale(ddelta, r))
        mult = 2 if double else 1
        out.append((r, mult))
        total += mult
    if total != poly.trim(5e-14).degree:
        raise RootDeficitError(
            f"multiplicity classification found {total} zeros for a degree "
            f"{poly.trim(5e-14).degree} polynomial")
    return out


def _expand(roots: list[tuple[float, int]], kind: str) -> list[tuple[float, str]]:
    out = []
    for r, m in roots:
        out.extend([(r, kind)] * m)
    return out


def _expected_kind(abs_index: int) -> str:
    return PERIODIC if abs_index % 4 in (0, 1) else ANTIPERIODIC


def _label_side(entries: list[tuple[float, str]], sign: int,
                strict: bool, violations: list[str]) -> list[LabeledEigenvalue]:
    """Assign signed lambda indices on one side of zero and check the pattern."""
    if len(entries) % 2 != 0:
        msg = f"odd zero count ({len(entries)}) on the {'positive' if sign > 0 else 'negative'} side"
        if strict:
            raise LabelingConflictError(msg)
        violations.append("OddZeroCount:" + msg)
    for j, (_, kind) in enumerate(entries, start=1):
        if kind != _expected_kind(j):
            msg = (f"lambda_{sign * j} expected {_expected_kind(j)}, got {kind}")
            if strict:
                raise LabelingConflictError(msg)
            violations.append("SignPattern:" + msg)
    out = []
    j = 0
    while j < len(entries):
        value, kind = entries[j]
        k = j + 1
        while k < len(entries) and entries[k] == (value, kind):
            k += 1
        out.append(LabeledEigenvalue(value, kind, k - j, sign * (j + 1)))
        j = k
    return out


def _labeled_spectra(per: list[tuple[float, int]], anti: list[tuple[float, int]],
                     strict: bool, violations: list[str]):
    merged = _expand(per, PERIODIC) + _expand(anti, ANTIPERIODIC)
    for v, _ in merged:
        if v == 0.0:
            raise LabelingConflictError("zero eigenvalue: spectra must be nonzero")
    pos = sorted([e for e in merged if e[0] > 0])
    neg = sorted([e for e in merged if e[0] < 0], reverse=True)
    labeled = (_label_side(pos, 1, strict, violations)
               + _label_side(neg, -1, strict, violations))
    return labeled, [v for v, _ in pos], [v for v, _ in neg]


def _build_gaps(pos: list[float], neg: list[float]) -> list[Gap]:
    gaps = []
    i_plus, i_minus = len(pos) // 2, len(neg) // 2
    for i in range(1, i_minus):
        gaps.append(Gap(-i, neg[2 * i], neg[2 * i - 1]))
    if i_minus >= 1:
        gaps.append(Gap(-i_minus, -math.inf, neg[2 * i_minus - 1]))
    for i in range(1, i_plus):
        gaps.append(Gap(i, pos[2 * i - 1], pos[2 * i]))
    if i_plus >= 1:
        gaps.append(Gap(i_plus, pos[2 * i_plus - 1], math.inf))
    return sorted(gaps, key=lambda g: g.index)


def _assign_kappa(gaps: list[Gap], dirichlet_vals: list[float],
                  violations: list[str]) -> dict[int, float]:
    kappa: dict[int, float] = {}
    claimed = [False] * len(dirichlet_vals)
    i_minus = -min((g.index for g in gaps), default=0)
    i_plus = max((g.index for g in gaps), default=0)
    for g in gaps:
        inside = [k for k, v in enumerate(dirichlet_vals) if g.contains(v)]
        if len(inside) > 1:
            violations.append(f"MultipleDirichletInGap:{g.index}")
        if inside:
            kappa[g.index] = dirichlet_vals[inside[0]]
            for k in inside:
                claimed[k] = True
        elif g.index == i_plus:
            kappa[g.index] = math.inf
        elif g.index == -i_minus:
            kappa[g.index] = -math.inf
        else:
            violations.append(f"GapWithoutDirichlet:{g.index}")
    for k, v in enumerate(dirichlet_vals):
        if not claimed[k]:
            violations.append(f"DirichletOutsideGaps:{v!r}")
    return kappa


def _ordinal_indices(values: list[float]) -> list[int]:
    # positive values get 1, 2, ... ascending; negative -1, -2, ... outward
    pos = sorted(v for v in values if v > 0)
    neg = sorted((v for v in values if v < 0), reverse=True)
    index = {v: i + 1 for i, v in enumerate(pos)}
    index.update({v: -(i + 1) for i, v in enumerate(neg)})
    return [index[v] for v in values]


# -- public operations ----------------------------------------------------------

def periodic_antiperiodic(pair, base: float | None = None,
                          window: tuple[float, float] | None = None,
                          samples: int = 257, steps: int | None = None):
    """Periodic and antiperiodic eigenvalue lists.

    Exact and complete for PeakonPair.  For SampledPair a search window is
    required and only roots inside it are reported (no completeness claim).
    """
    if isinstance(pair, PeakonPair):
        delta = discriminant(pair, base)
        violations: list[str] = []
        labeled, _, _ = _labeled_spectra(_classified_roots(delta, 1.0),
                                         _classified_roots(delta, -1.0),
                                         strict=True, violations=violations)
        per = sorted([e for e in labeled if e.kind == PERIODIC], key=lambda e: e.value)
        anti = sorted([e for e in labeled if e.kind == ANTIPERIODIC], key=lambda e: e.value)
        return per, anti
    if window is None:
        raise ValueError("a search window is required for sampled pairs")
    out = []
    for shift, kind in ((1.0, PERIODIC), (-1.0, ANTIPERIODIC)):
        scan = find_real_roots(
            lambda zz, s=shift: discriminant_at(pair, zz, base, steps).real - s,
            window, samples)
        vals = [(r, 1) for r in scan.roots] + [(r, 2) for r in scan.suspected_double]
        vals.sort()
        values = [v for v, _ in vals]
        idx = _ordinal_indices(values)
        out.append([LabeledEigenvalue(v, kind, m, i)
                    for (v, m), i in zip(vals, idx)])
    return out[0], out[1]


def dirichlet(pair, base: float | None = None,
              window: tuple[float, float] | None = None,
              samples: int = 257, steps: int | None = None) -> list[LabeledEigenvalue]:
    """Dirichlet spectrum for the given base point (zeros of s(., a + period))."""
    if isinstance(pair, PeakonPair):
        s_poly = monodromy(pair, base).dirichlet_poly
        roots = real_roots(s_poly, assume_all_real=True) if s_poly.degree > 0 else []
        values = [r for r, _ in roots]
        idx = _ordinal_indices(values)
        return [LabeledEigenvalue(r, DIRICHLET, m, i)
                for (r, m), i in zip(roots, idx)]
    if window is None:
        raise ValueError("a search window is required for sampled pairs")
    scan = find_real_roots(
        lambda zz: dirichlet_value_at(pair, zz, base, steps).real, window, samples)
    idx = _ordinal_indices(scan.roots)
    return [LabeledEigenvalue(r, DIRICHLET, 1, i) for r, i in zip(scan.roots, idx)]


def build_report(pair, base: float | None = None,
                 window: tuple[float, float] | None = None,
                 samples: int = 257, steps: int | None = None) -> SpectrumReport:
    """Full labeled spectrum report: eigenvalues, gaps, kappa, violations.

    PeakonPair reports are complete and validated strictly (a broken sign
    pattern raises LabelingConflictError).  SampledPair reports cover only
    the given window, validate leniently, and carry an explicit
    WindowedSpectrumIncomplete disclaimer in ``violations``.
    """
    violations: list[str] = []
    if isinstance(pair, PeakonPair):
        delta = discriminant(pair, base)
        labeled, pos, neg = _labeled_spectra(_classified_roots(delta, 1.0),
                                             _classified_roots(delta, -1.0),
                                             strict=True, violations=violations)
        diri = dirichlet(pair, base)
    elif isinstance(pair, SampledPair):
        if window is None:
            raise ValueError("a search window is required for sampled pairs")
        violations.append("WindowedSpectrumIncomplete: eigenvalues outside "
                          f"{window!r} are not searched")
        per, anti = periodic_antiperiodic(pair, base, window, samples, steps)
        pr = [(e.value, e.multiplicity) for e in per]
        ar = [(e.value, e.multiplicity) for e in anti]
        labeled, pos, neg = _labeled_spectra(pr, ar, strict=False,
                                             violations=violations)
        diri = dirichlet(pair, base, window, samples, steps)
    else:
        raise TypeError(f"cannot build a report for {type(pair).__name__}")

    for ev in diri:
        if ev.multiplicity != 1:
            violations.append(f"DoubleDirichletRoot:{ev.value!r}")
    gaps = _build_gaps(pos, neg)
    kappa = _assign_kappa(gaps, [e.value for e in diri], violations)
    # kappa indices are the gap indices; relabel the Dirichlet list accordingly
    by_value = {v: i for i, v in kappa.items() if math.isfinite(v)}
    diri = [LabeledEigenvalue(e.value, e.kind, e.multiplicity,
                              by_value.get(e.value, e.index)) for e in diri]
    return SpectrumReport(
        periodic=sorted([e for e in labeled if e.kind == PERIODIC], key=lambda e: e.value),
        antiperiodic=sorted([e for e in labeled if e.kind == ANTIPERIODIC],
                            key=lambda e: e.value),
        dirichlet=diri,
        gaps=gaps,
        kappa=kappa,
        violations=violations,
    )
