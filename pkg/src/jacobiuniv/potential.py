"""Equilibrium densities of interval unions and polynomial inverse images.

For bands ``[a_j, b_j]`` (j = 0..N-1) with ``R(x) = prod (x - a_j)(x - b_j)``
the equilibrium density is

    omega(x) = c |q(x)| / (pi sqrt|R(x)|)

where ``q`` is monic of degree N-1 and vanishes once in every gap.  The gap
roots come from the N-1 conditions ``int_gap q / sqrt|R| = 0``; ``c`` is
fixed by normalising the total mass to 1 and comes out as 1 up to rounding.
Bands that touch are merged before solving.
"""

import json
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .errors import DomainError, NumericError, SchemaError
from .measure import Interval
from .orthopoly import weighted_rule

MAX_BANDS = 8
CHEB_NODES = 256
TOUCH_TOL = 1e-12


@dataclass(frozen=True)
class IntervalSystem:
    """Sorted bands ``a_0 < b_0 <= a_1 < b_1 <= ...``; touching bands are allowed."""

    intervals: tuple

    def __post_init__(self):
        ivs = tuple(iv if isinstance(iv, Interval) else Interval(*iv) for iv in self.intervals)
        if not ivs:
            raise SchemaError("intervals", "at least one interval is required")
        ivs = tuple(sorted(ivs, key=lambda iv: iv.lo))
        for left, right in zip(ivs, ivs[1:]):
            if right.lo < left.hi:
                raise SchemaError("intervals", "intervals overlap")
        object.__setattr__(self, "intervals", ivs)

    def merged(self):
        """Bands with touching neighbours joined."""
        out = [[self.intervals[0].lo, self.intervals[0].hi]]
        for iv in self.intervals[1:]:
            if iv.lo <= out[-1][1]:
                out[-1][1] = iv.hi
            else:
                out.append([iv.lo, iv.hi])
        return [tuple(b) for b in out]

    def to_dict(self):
        return {"intervals": [[iv.lo, iv.hi] for iv in self.intervals]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, document):
        if isinstance(document, str):
            document = json.loads(document)
        try:
            raw = document["intervals"]
        except (KeyError, TypeError):
            raise SchemaError("intervals", "missing") from None
        if not isinstance(raw, list) or not all(
                isinstance(p, (list, tuple)) and len(p) == 2 for p in raw):
            raise SchemaError("intervals", "expected a list of [lo, hi] pairs")
        return cls(tuple(Interval(float(lo), float(hi)) for lo, hi in raw))


def _cheb_nodes(lo, hi, m=CHEB_NODES):
    """Nodes for ``int_lo^hi f(t) dt / sqrt((t-lo)(hi-t)) ~ (pi/m) sum f``."""
    theta = (np.arange(m) + 0.5) * math.pi / m
    return 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(theta)


def _reduced_root(bands, x, skip):
    """sqrt|R(x)| with the two factors of band or gap ``skip`` removed."""
    out = np.ones_like(x)
    for j, (a, b) in enumerate(bands):
        for e in (a, b):
            if e not in skip:
                out = out * np.abs(x - e)
    return np.sqrt(out)


@dataclass(frozen=True, eq=False)
class EquilibriumDensity:
    system: IntervalSystem
    gap_poly: tuple  # ascending coefficients of the monic gap polynomial
    scale: float = 1.0

    @property
    def bands(self):
        return self.system.merged()

    def __call__(self, x):
        return density_at_eq(self, x)

    def raw(self, x):
        """Closed form evaluated without support checks (for quadrature)."""
        x = np.asarray(x, dtype=float)
        r = np.ones_like(x)
        for a, b in self.bands:
            r = r * (x - a) * (x - b)
        q = Polynomial(self.gap_poly)(x)
        return self.scale * np.abs(q) / (math.pi * np.sqrt(np.abs(r)))

    def gap_roots(self):
        if len(self.gap_poly) == 1:
            return np.array([])
        return np.sort(Polynomial(self.gap_poly).roots().real)

    def total_mass(self, m=CHEB_NODES):
        total = 0.0
        q = Polynomial(self.gap_poly)
        for a, b in self.bands:
            t = _cheb_nodes(a, b, m)
            f = np.abs(q(t)) / _reduced_root(self.bands, t, {a, b})
            total += math.pi / m * f.sum()
        return self.scale * total / math.pi


def equilibrium_density(system):
    """Equilibrium density of a union of at most eight intervals."""
    if not isinstance(system, IntervalSystem):
        system = IntervalSystem(tuple(system))
    bands = system.merged()
    nb = len(bands)
    if nb > MAX_BANDS:
        raise DomainError(f"at most {MAX_BANDS} bands are supported, got {nb}")
    if nb == 1:
        coeffs = np.array([1.0])
    else:
        # row j: int over gap j of t^i / sqrt|R|, columns i = 0..nb-1
        mat = np.empty((nb - 1, nb))
        for j in range(nb - 1):
            u, v = bands[j][1], bands[j + 1][0]
            t = _cheb_nodes(u, v)
            base = 1.0 / _reduced_root(bands, t, {u, v})
            for i in range(nb):
                mat[j, i] = math.pi / CHEB_NODES * np.sum(t ** i * base)
        lhs, rhs = mat[:, :-1], -mat[:, -1]
        if np.linalg.cond(lhs) > 1e12:
            raise NumericError("gap system is ill-conditioned")
        coeffs = np.append(np.linalg.solve(lhs, rhs), 1.0)
    eq = EquilibriumDensity(system, tuple(float(c) for c in coeffs))
    mass = eq.total_mass()
    eq = EquilibriumDensity(system, eq.gap_poly, 1.0 / mass)
    roots = eq.gap_roots()
    for j in range(nb - 1):
        u, v = bands[j][1], bands[j + 1][0]
        if np.count_nonzero((roots > u) & (roots < v)) != 1:
            raise NumericError(f"gap polynomial does not have one root in gap {j}")
    return eq


def density_at_eq(eq, x):
    """omega_K(x) for ``x`` strictly inside a (merged) band."""
    x = float(x)
    for a, b in eq.bands:
        if a < x < b:
            return float(eq.raw(x))
    raise DomainError(f"x={x} is not interior to a band")


def edge_constant(eq, x0):
    """``M(K, x0) = lim sqrt(2) pi |x - x0|^(1/2) omega(x)`` at a band endpoint.

    The vanishing factor ``x - x0`` of ``R`` is cancelled analytically, giving
    ``sqrt(2) c |q(x0)| / sqrt|R(x) / (x - x0)|`` at ``x0``.
    """
    x0 = float(x0)
    ends = [e for band in eq.bands for e in band]
    if x0 not in ends:
        raise DomainError(f"x0={x0} is not a band endpoint")
    rest = _reduced_root(eq.bands, np.array([x0]), {x0})[0]
    q = abs(Polynomial(eq.gap_poly)(x0))
    return math.sqrt(2.0) * eq.scale * q / rest


# -- polynomial inverse images --------------------------------------------------


@dataclass(frozen=True, eq=False)
class AdmissiblePolynomial:
    """``T_N`` with real simple zeros and every critical value of modulus >= 1.

    ``coeffs`` are ascending (``coeffs[k]`` multiplies ``x**k``).
    """

    coeffs: tuple

    def __post_init__(self):
        c = np.trim_zeros(np.asarray(self.coeffs, dtype=float), "b")
        if c.size < 2 or not np.all(np.isfinite(c)):
            raise DomainError("T must have degree at least 1 with finite coefficients")
        object.__setattr__(self, "coeffs", tuple(float(v) for v in c))
        p = self.poly
        zeros = p.roots()
        scale = max(1.0, float(np.max(np.abs(zeros))))
        if np.any(np.abs(zeros.imag) > 1e-9 * scale):
            raise DomainError("not admissible: T has non-real zeros")
        zr = np.sort(zeros.real)
        if np.any(np.diff(zr) <= 1e-12 * scale):
            raise DomainError("not admissible: T has a repeated zero")
        crit = self.critical_points()
        vals = np.abs(p(crit))
        if np.any(vals < 1.0 - TOUCH_TOL):
            raise DomainError("not admissible: a critical value has modulus below 1")

    @property
    def poly(self):
        return Polynomial(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        return self.poly(x)

    def derivative(self, x):
        return self.poly.deriv()(x)

    def zeros(self):
        return np.sort(self.poly.roots().real)

    def critical_points(self):
        if self.degree == 1:
            return np.array([])
        return np.sort(self.poly.deriv().roots().real)


def _cauchy_bound(p):
    c = p.coef
    return 1.0 + float(np.max(np.abs(c[:-1]))) / abs(c[-1])


def inverse_image(T):
    """The N bands of ``T^{-1}([-1, 1])``, in increasing order.

    On each monotone piece between critical points ``T`` crosses ``-1`` and
    ``+1`` once; a critical value of modulus exactly 1 makes two bands touch.
    """
    if not isinstance(T, AdmissiblePolynomial):
        T = AdmissiblePolynomial(tuple(T))
    p = T.poly
    crit = list(T.critical_points())
    bound = max(_cauchy_bound(p - 1.0), _cauchy_bound(p + 1.0))
    cuts = [-bound] + crit + [bound]
    bands = []
    for lo, hi in zip(cuts, cuts[1:]):
        ends = []
        for level in (-1.0, 1.0):
            f_lo, f_hi = p(lo) - level, p(hi) - level
            if abs(f_lo) <= TOUCH_TOL:
                ends.append(lo)
            elif abs(f_hi) <= TOUCH_TOL:
                ends.append(hi)
            elif f_lo * f_hi < 0:
                ends.append(brentq(lambda x: p(x) - level, lo, hi, xtol=1e-15, rtol=1e-15))
            else:
                raise NumericError(f"no crossing of level {level} on [{lo}, {hi}]")
        bands.append(Interval(float(min(ends)), float(max(ends))))
    return IntervalSystem(tuple(bands))


def inverse_image_density(T, x):
    """``|T'(x)| / (N pi sqrt(1 - T(x)^2))``."""
    if not isinstance(T, AdmissiblePolynomial):
        T = AdmissiblePolynomial(tuple(T))
    x = float(x)
    t = float(T(x))
    if abs(t) >= 1.0:
        raise DomainError(f"|T(x)| = {abs(t)} is not below 1")
    return abs(float(T.derivative(x))) / (T.degree * math.pi * math.sqrt(1.0 - t * t))


def pushforward_check(T, f, alpha=0.0, band=None, order=48):
    """Residual of ``int_{-1}^1 f |x|^alpha dx = (1/N) int_{E_N} f(T) |T|^alpha |T'| dx``.

    With ``band=k`` the right side is taken over the single band ``k``
    without the ``1/N`` factor.
    """
    if not isinstance(T, AdmissiblePolynomial):
        T = AdmissiblePolynomial(tuple(T))
    alpha = float(alpha)
    if alpha <= -1:
        raise DomainError("alpha must exceed -1")
    sing = [(0.0, alpha)] if alpha != 0.0 else []
    x, w = weighted_rule([(-1.0, 1.0)], sing, lambda t: f(t), order)
    lhs = float(np.sum(w))

    bands = [(iv.lo, iv.hi) for iv in inverse_image(T).intervals]
    if band is not None:
        bands = [bands[band]]
    zeros = T.zeros()

    def weight(t):
        val = T(t)
        out = np.asarray(f(val), dtype=float) * np.abs(T.derivative(t))
        if alpha != 0.0:
            near = np.ones_like(t)
            for z in zeros:
                near = near * np.abs(t - z)
            out = out * (np.abs(val) / near) ** alpha
        return out

    zsing = [(float(z), alpha) for z in zeros] if alpha != 0.0 else []
    x, w = weighted_rule(bands, zsing, weight, order)
    rhs = float(np.sum(w))
    if band is None:
        rhs /= T.degree
    return abs(lhs - rhs)


def chebyshev_fixture(c=0.5):
    """``(2x^2 - 1 - c)/(1 - c)``: two symmetric bands for ``0 < c < 1``."""
    return AdmissiblePolynomial(((-1.0 - c) / (1.0 - c), 0.0, 2.0 / (1.0 - c)))
