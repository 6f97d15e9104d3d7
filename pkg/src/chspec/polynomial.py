"""Real-coefficient polynomials in the spectral parameter and 2x2 matrices thereof.

Coefficients are stored ascending by degree.  Root isolation exploits the
guarantee (valid for every polynomial produced by the transfer engine) that
all roots are real: the real roots of p are bracketed by the real roots of p'
together with the Cauchy bound, so recursing down the derivative chain yields
certified brackets, refined by bisection and a safeguarded Newton polish.
No linear algebra (companion matrices) is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RootDeficitError

__all__ = ["Poly", "Mat2Poly", "real_roots", "coeffs_close", "eval_scale"]

DEGREE_CAP = 2000  # beyond this, monomial-basis conditioning degrades
_ROOT_RTOL = 1e-12       # relative refinement target for isolated roots
_CLUSTER_RTOL = 1e-8     # roots closer than this (scaled) merge into one
_RESIDUAL_RTOL = 1e-10   # |p(x)| below this times the evaluation scale counts as zero


class Poly:
    """Polynomial with real coefficients, ascending degree order."""

    __slots__ = ("coef",)

    def __init__(self, coef):
        arr = np.atleast_1d(np.asarray(coef, dtype=float))
        nz = np.nonzero(arr)[0]
        self.coef = arr[:nz[-1] + 1].copy() if nz.size else np.zeros(1)

    @property
    def degree(self) -> int:
        return len(self.coef) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coef) == 1 and self.coef[0] == 0.0

    def __call__(self, z):
        """Horner evaluation; z may be real/complex, scalar or array."""
        z = np.asarray(z)
        out = np.full(z.shape, self.coef[-1], dtype=np.result_type(z.dtype, float))
        for c in self.coef[-2::-1]:
            out = out * z + c
        return out[()] if out.ndim == 0 else out

    def derivative(self) -> "Poly":
        if self.degree == 0:
            return Poly([0.0])
        return Poly(self.coef[1:] * np.arange(1, len(self.coef)))

    def trim(self, rel_tol: float) -> "Poly":
        """Drop trailing coefficients below rel_tol times the largest one."""
        cut = rel_tol * float(np.max(np.abs(self.coef)))
        keep = np.nonzero(np.abs(self.coef) > cut)[0]
        return Poly(self.coef[:keep[-1] + 1]) if keep.size else Poly([0.0])

    def _binop(self, other, sign: float) -> "Poly":
        o = other.coef if isinstance(other, Poly) else np.atleast_1d(np.asarray(other, float))
        n = max(len(self.coef), len(o))
        out = np.zeros(n)
        out[:len(self.coef)] = self.coef
        out[:len(o)] += sign * o
        return Poly(out)

    def __add__(self, other):
        return self._binop(other, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1.0)

    def __rsub__(self, other):
        return Poly(other) - self

    def __neg__(self):
        return Poly(-self.coef)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly([0.0])
            return Poly(np.convolve(self.coef, other.coef))
        return Poly(self.coef * float(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"Poly({self.coef.tolist()})"


def coeffs_close(p: Poly, q: Poly, rel_tol: float = 1e-10) -> bool:
    """Coefficientwise agreement within rel_tol times the coefficient scale."""
    n = max(len(p.coef), len(q.coef))
    a = np.zeros(n)
    b = np.zeros(n)
    a[:len(p.coef)] = p.coef
    b[:len(q.coef)] = q.coef
    scale = max(float(np.max(np.abs(a))), float(np.max(np.abs(b))))
    if scale == 0.0:
        return True
    return float(np.max(np.abs(a - b))) <= rel_tol * scale


@dataclass(frozen=True)
class Mat2Poly:
    """2x2 matrix of polynomials; transfer factors all have det = 1."""

    a11: Poly
    a12: Poly
    a21: Poly
    a22: Poly

    @staticmethod
    def identity() -> "Mat2Poly":
        one, zero = Poly([1.0]), Poly([0.0])
        return Mat2Poly(one, zero, zero, one)

    def __matmul__(self, other: "Mat2Poly") -> "Mat2Poly":
        return Mat2Poly(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def det(self) -> Poly:
        return self.a11 * self.a22 - self.a12 * self.a21

    def trace(self) -> Poly:
        return self.a11 + self.a22

    def __call__(self, z) -> np.ndarray:
        return np.array([[self.a11(z), self.a12(z)], [self.a21(z), self.a22(z)]])


# -- real root isolation -------------------------------------------------------


def eval_scale(p: Poly, x: float) -> float:
    # Horner on |coefficients| at |x|: the roundoff scale of evaluating p(x)
    ax = abs(x)
    out = abs(p.coef[-1])
    for c in p.coef[-2::-1]:
        out = out * ax + abs(c)
    return max(out, 1e-300)


def _bisect_newton(p: Poly, dp: Poly, lo: float, hi: float, f_lo: float) -> float:
    """Refine a sign-change bracket; Newton steps stay safeguarded by the bracket."""
    for _ in range(70):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        f_mid = float(p(mid))
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= _ROOT_RTOL * max(1.0, abs(mid)):
            break
    x = 0.5 * (lo + hi)
    for _ in range(8):
        fx, dfx = float(p(x)), float(dp(x))
        if dfx == 0.0:
            break
        step = fx / dfx
        xn = x - step
        if not lo <= xn <= hi:
            break
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            return xn
        x = xn
    return x


def _cluster(points: list[float]) -> list[float]:
    if not points:
        return []
    points = sorted(points)
    out = [[points[0]]]
    for t in points[1:]:
        if t - out[-1][-1] <= _CLUSTER_RTOL * max(1.0, abs(t)):
            out[-1].append(t)
        else:
            out.append([t])
    return [float(np.mean(c)) for c in out]


def _distinct_real_roots(p: Poly, crit: list[float]) -> list[float]:
    """All distinct real roots of p, given the real roots of p'."""
    n = p.degree
    if n == 0:
        return []
    c = p.coef
    if n == 1:
        return [-c[0] / c[1]]
    bound = 1.0 + float(np.max(np.abs(c[:-1]))) / abs(c[-1])
    pts = [t for t in crit if -bound < t < bound]
    edges = [-bound] + pts + [bound]
    # analytic signs at the Cauchy bound avoid overflow for large bounds
    sign_hi = 1.0 if c[-1] > 0 else -1.0
    sign_lo = sign_hi * (1.0 if n % 2 == 0 else -1.0)
    signs = [sign_lo]
    roots: list[float] = []
    for t in pts:
        val = float(p(t))
        if abs(val) <= _RESIDUAL_RTOL * eval_scale(p, t):
            roots.append(t)  # tangency: root at a critical point
            signs.append(0.0)
        else:
            signs.append(1.0 if val > 0 else -1.0)
    signs.append(sign_hi)
    dp = p.derivative()
    for i in range(len(edges) - 1):
        if signs[i] * signs[i + 1] < 0:
            f_lo = signs[i] if abs(edges[i]) == bound else float(p(edges[i]))
            roots.append(_bisect_newton(p, dp, edges[i], edges[i + 1], f_lo))
    return _cluster(roots)


def real_roots(p: Poly, assume_all_real: bool = False) -> list[tuple[float, int]]:
    """Real roots of p in increasing order as (root, multiplicity) pairs.

    Isolation walks the derivative chain downward, then brackets each level's
    roots between the previous level's.  Multiplicity is the number of leading
    derivatives vanishing at the clustered root.  With ``assume_all_real``
    set, finding fewer roots (with multiplicity) than deg p raises
    RootDeficitError -- the all-real contract was violated upstream.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no well-defined root set")
    if p.degree > DEGREE_CAP:
        raise ValueError(
            f"degree {p.degree} exceeds cap {DEGREE_CAP}: monomial-basis "
            "coefficient conditioning is unreliable at this size")
    q = p.trim(5e-14)  # junk leading coefficients would wreck the Cauchy bound
    if q.degree == 0:
        if assume_all_real and p.degree > 0:
            raise RootDeficitError(f"expected {p.degree} real roots, found 0")
        return []
    chain = [q]
    while chain[-1].degree > 0:
        chain.append(chain[-1].derivative())
    crit: list[float] = []
    for level in reversed(chain[:-1]):
        crit = _distinct_real_roots(level, crit)
    out = []
    total = 0
    for r in crit:
        mult = 1
        for k in range(1, q.degree):
            if abs(float(chain[k](r))) <= 1e-7 * eval_scale(chain[k], r):
                mult += 1
            else:
                break
        out.append((float(r), mult))
        total += mult
    if assume_all_real and total < q.degree:
        raise RootDeficitError(
            f"expected {q.degree} real roots (with multiplicity), found {total}")
    return out
