"""Trace identities relating the spectra to integrals of the coefficients.

With I_u = int u over a period, I_mu = mu(one period), and ch, sh, cth the
half-period hyperbolics, the eigenvalue reciprocal sums satisfy

    sum 1/lambda^{+-}     = sh/(ch -+ 1) * I_u,
    sum 1/(lambda^{+-})^2 = (+-1)/(ch -+ 1) * I_u^2 + 2 sh/(ch -+ 1) * I_mu,

their periodic+antiperiodic combinations (2 cth I_u and 2/sh^2 I_u^2 +
4 cth I_mu), and for the Dirichlet spectrum

    sum 1/kappa   = cth * I_u - 2 u(a),
    sum 1/kappa^2 = I_u^2/sh^2 + 2 cth * I_mu - 8 P(a),

where P is the Green potential and +-inf sentinels contribute zero.  First
sums use the symmetric-limit ordering (decreasing |1/lambda|, ties jointly);
squared sums converge absolutely and are summed plainly.

The second formulas bound every eigenvalue (1/lambda^2 <= RHS), with equality
exactly when the respective spectrum is a single eigenvalue; same for the
first formulas when the whole spectrum is positive.  Finally the polynomials
are recovered from their roots as (ch -+ 1) prod (1 - z/lambda) and
2 sh prod (1 - z/kappa), and the three spectra determine I_u, I_mu, u(a),
P(a) explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ZeroEigenvalueError
from .floquet import discriminant, monodromy
from .pairs import green_potential
from .polynomial import Poly
from .spectra import ANTIPERIODIC, DIRICHLET, PERIODIC, SpectrumReport

__all__ = ["sum_reciprocal", "sum_reciprocal_sq", "TraceCheckResult",
           "check_periodic_traces", "check_dirichlet_traces", "BoundCheck",
           "bounds", "product_check", "poly_from_roots", "RecoveredValues",
           "recover_point_values"]


def _reciprocals(values) -> list[float]:
    out = []
    for v in values:
        if v == 0.0:
            raise ZeroEigenvalueError("eigenvalue 0 is impossible for valid spectra")
        out.append(1.0 / v)
    return out


def sum_reciprocal(values) -> float:
    """Symmetric-limit sum of 1/v: decreasing |1/v| order, ties summed jointly."""
    recs = sorted(_reciprocals(values), key=abs, reverse=True)
    groups: list[list[float]] = []
    for r in recs:
        if groups and abs(abs(r) - abs(groups[-1][-1])) <= 1e-12 * abs(r):
            groups[-1].append(r)
        else:
            groups.append([r])
    return math.fsum(math.fsum(g) for g in groups)


def sum_reciprocal_sq(values) -> float:
    return math.fsum(r * r for r in _reciprocals(values))


@dataclass
class TraceCheckResult:
    name: str
    lhs: float
    rhs: float
    rel_err: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.rel_err <= self.tol

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "rel_err": self.rel_err, "tol": self.tol, "pass": self.passed}


def _check(name: str, lhs: float, rhs: float, tol: float) -> TraceCheckResult:
    rel = abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))
    return TraceCheckResult(name, lhs, rhs, rel, tol)


def _hyp(period: float) -> tuple[float, float, float]:
    ch, sh = math.cosh(0.5 * period), math.sinh(0.5 * period)
    return ch, sh, ch / sh


def check_periodic_traces(pair, report: SpectrumReport,
                          tol: float = 1e-8) -> list[TraceCheckResult]:
    """Six identities: first/second per boundary kind, plus their sums."""
    ch, sh, cth = _hyp(pair.period)
    iu, imu = pair.integral_u(), pair.integral_mu()
    lp, la = report.values(PERIODIC), report.values(ANTIPERIODIC)
    s1p, s1a = sum_reciprocal(lp), sum_reciprocal(la)
    s2p, s2a = sum_reciprocal_sq(lp), sum_reciprocal_sq(la)
    return [
        _check("periodic_first", s1p, sh / (ch - 1.0) * iu, tol),
        _check("periodic_second", s2p,
               (iu * iu + 2.0 * sh * imu) / (ch - 1.0), tol),
        _check("antiperiodic_first", s1a, sh / (ch + 1.0) * iu, tol),
        _check("antiperiodic_second", s2a,
               (-iu * iu + 2.0 * sh * imu) / (ch + 1.0), tol),
        _check("combined_first", s1p + s1a, 2.0 * cth * iu, tol),
        _check("combined_second", s2p + s2a,
               2.0 * (iu / sh) ** 2 + 4.0 * cth * imu, tol),
    ]


def check_dirichlet_traces(pair, base: float, report: SpectrumReport,
                           tol: float = 1e-6,
                           quad_tol: float = 1e-10) -> list[TraceCheckResult]:
    """Two Dirichlet identities; infinite kappa sentinels contribute zero."""
    _, sh, cth = _hyp(pair.period)
    iu, imu = pair.integral_u(), pair.integral_mu()
    kap = report.values(DIRICHLET)
    u_a = pair.u(base)
    p_a = green_potential(pair, base, tol=quad_tol)
    return [
        _check("dirichlet_first", sum_reciprocal(kap),
               cth * iu - 2.0 * u_a, tol),
        _check("dirichlet_second", sum_reciprocal_sq(kap),
               (iu / sh) ** 2 + 2.0 * cth * imu - 8.0 * p_a, tol),
    ]


@dataclass
class BoundCheck:
    kind: str
    formula: str  # "first" | "second"
    value: float  # the eigenvalue
    lhs: float    # 1/value or 1/value^2
    rhs: float    # trace-formula bound
    slack: float
    equality: bool

    def to_dict(self) -> dict:
        return {"kind": self.kind, "formula": self.formula, "value": self.value,
                "lhs": self.lhs, "rhs": self.rhs, "slack": self.slack,
                "equality": self.equality}


def bounds(pair, report: SpectrumReport, eq_tol: float = 1e-10) -> list[BoundCheck]:
    """Per-eigenvalue slack of the sharp lower bounds on |lambda|.

    The second-formula bound applies always; the first-formula bound applies
    when the whole periodic/antiperiodic spectrum is positive.  Equality is
    flagged within ``eq_tol`` relative slack and must occur exactly for
    singleton spectra.
    """
    ch, sh, _ = _hyp(pair.period)
    iu, imu = pair.integral_u(), pair.integral_mu()
    lp, la = report.values(PERIODIC), report.values(ANTIPERIODIC)
    all_positive = bool(lp or la) and all(v > 0 for v in lp + la)
    out = []
    for kind, vals, sign in ((PERIODIC, lp, 1.0), (ANTIPERIODIC, la, -1.0)):
        b2 = (sign * iu * iu + 2.0 * sh * imu) / (ch - sign)
        b1 = sh / (ch - sign) * iu
        for v in vals:
            lhs = 1.0 / (v * v)
            slack = b2 - lhs
            out.append(BoundCheck(kind, "second", v, lhs, b2, slack,
                                  abs(slack) <= eq_tol * max(1.0, abs(b2))))
            if all_positive:
                lhs1 = 1.0 / v
                slack1 = b1 - lhs1
                out.append(BoundCheck(kind, "first", v, lhs1, b1, slack1,
                                      abs(slack1) <= eq_tol * max(1.0, abs(b1))))
    return out


def poly_from_roots(constant: float, roots) -> Poly:
    """constant * prod (1 - z/r) over the given roots (with repetition)."""
    acc = Poly([constant])
    for r in roots:
        acc = acc * Poly([1.0, -1.0 / r])
    return acc


def product_check(pair, report: SpectrumReport, base: float | None = None,
                  tol: float = 1e-8) -> list[TraceCheckResult]:
    """Rebuild Delta -+ 1 and s(., a + period) from spectra and compare.

    The reported value pair is (0, max coefficient error / coefficient scale);
    infinite kappa sentinels are omitted factors.
    """
    ch, sh, _ = _hyp(pair.period)
    mono = monodromy(pair, base)
    delta = discriminant(pair, base)
    targets = [
        ("product_periodic", delta - Poly([1.0]),
         poly_from_roots(ch - 1.0, report.values(PERIODIC))),
        ("product_antiperiodic", delta + Poly([1.0]),
         poly_from_roots(ch + 1.0, report.values(ANTIPERIODIC))),
        ("product_dirichlet", mono.dirichlet_poly,
         poly_from_roots(2.0 * sh, report.values(DIRICHLET))),
    ]
    out = []
    for name, target, recon in targets:
        n = max(len(target.coef), len(recon.coef))
        diff = 0.0
        scale = 1e-300
        for k in range(n):
            a = target.coef[k] if k < len(target.coef) else 0.0
            b = recon.coef[k] if k < len(recon.coef) else 0.0
            diff = max(diff, abs(a - b))
            scale = max(scale, abs(a), abs(b))
        out.append(TraceCheckResult(name, diff / scale, 0.0, diff / scale, tol))
    return out


@dataclass
class RecoveredValues:
    integral_u: float
    integral_mu: float
    u_base: float
    green_base: float


def recover_point_values(periodic, antiperiodic, dirichlet_vals,
                         period: float) -> RecoveredValues:
    """Invert the trace identities: three spectra determine I_u, I_mu, u(a), P(a)."""
    _, sh, cth = _hyp(period)
    s1 = sum_reciprocal(periodic) + sum_reciprocal(antiperiodic)
    s2 = sum_reciprocal_sq(periodic) + sum_reciprocal_sq(antiperiodic)
    s1d = sum_reciprocal(dirichlet_vals)
    s2d = sum_reciprocal_sq(dirichlet_vals)
    iu = 0.5 * s1 / cth
    imu = (s2 - 2.0 * (iu / sh) ** 2) / (4.0 * cth)
    u_a = 0.5 * (cth * iu - s1d)
    p_a = ((iu / sh) ** 2 + 2.0 * cth * imu - s2d) / 8.0
    return RecoveredValues(iu, imu, u_a, p_a)
