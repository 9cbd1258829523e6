"""Generalized Jacobi measures on finite unions of intervals.

A measure is ``w(x) * prod_i |x - x_i|^{gamma_i} dx`` restricted to a sorted
list of disjoint intervals, where the smooth factor ``w`` is a positive
constant or a polynomial that is positive on the support.

Measure documents are JSON::

    {"intervals": [[-1, 1]],
     "singularities": [{"x0": 0, "alpha": 1}],
     "smooth": {"const": 1}}
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, SchemaError


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise SchemaError("intervals", "endpoints must be finite")
        if not self.lo < self.hi:
            raise SchemaError("intervals", f"need lo < hi, got [{self.lo}, {self.hi}]")

    def contains(self, x, closed=True):
        if closed:
            return self.lo <= x <= self.hi
        return self.lo < x < self.hi


@dataclass(frozen=True)
class AlgebraicSingularity:
    location: float
    exponent: float

    def __post_init__(self):
        if not math.isfinite(self.location):
            raise SchemaError("singularities.x0", "location must be finite")
        if not (math.isfinite(self.exponent) and self.exponent > -1.0):
            raise SchemaError("singularities.alpha", "exponent must exceed -1")


@dataclass(frozen=True)
class GJMeasure:
    """Generalized Jacobi measure.

    ``smooth`` is ``("const", c)`` or ``("poly", (c0, c1, ...))`` with
    coefficients in increasing degree.
    """

    intervals: tuple
    singularities: tuple = ()
    smooth: tuple = ("const", 1.0)
    _poly: np.ndarray = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        ivs = tuple(iv if isinstance(iv, Interval) else Interval(*map(float, iv))
                    for iv in self.intervals)
        if not ivs:
            raise SchemaError("intervals", "at least one interval is required")
        ivs = tuple(sorted(ivs, key=lambda iv: iv.lo))
        for left, right in zip(ivs, ivs[1:]):
            if right.lo < left.hi:
                raise SchemaError("intervals", "intervals overlap")
        object.__setattr__(self, "intervals", ivs)

        sings = tuple(s if isinstance(s, AlgebraicSingularity)
                      else AlgebraicSingularity(float(s[0]), float(s[1]))
                      for s in self.singularities)
        locs = [s.location for s in sings]
        if len(set(locs)) != len(locs):
            raise SchemaError("singularities", "singularity locations must be distinct")
        for s in sings:
            if not any(iv.contains(s.location) for iv in ivs):
                raise SchemaError("singularities.x0",
                                  f"singularity at {s.location} lies off the support")
        object.__setattr__(self, "singularities", tuple(sorted(sings, key=lambda s: s.location)))

        kind, value = self.smooth
        if kind == "const":
            value = float(value)
            if not (math.isfinite(value) and value > 0):
                raise SchemaError("smooth.const", "smooth factor must be positive")
            poly = np.array([value])
        elif kind == "poly":
            poly = np.asarray(value, dtype=float)
            if poly.ndim != 1 or poly.size == 0 or not np.all(np.isfinite(poly)):
                raise SchemaError("smooth.poly", "coefficients must be a nonempty list of numbers")
            _certify_positive(poly, ivs)
            value = tuple(poly.tolist())
        else:
            raise SchemaError("smooth", f"unknown smooth factor kind {kind!r}")
        object.__setattr__(self, "smooth", (kind, value))
        object.__setattr__(self, "_poly", poly)

    # -- geometry -----------------------------------------------------------

    @property
    def hull(self):
        return self.intervals[0].lo, self.intervals[-1].hi

    def in_support(self, x):
        return any(iv.contains(x) for iv in self.intervals)

    def singularity_kind(self, sing):
        """``"edge"`` if the singularity sits at an interval endpoint, else ``"interior"``."""
        for iv in self.intervals:
            if sing.location in (iv.lo, iv.hi):
                return "edge"
        return "interior"

    def singularity_at(self, x):
        for s in self.singularities:
            if s.location == x:
                return s
        return None

    # -- weight -------------------------------------------------------------

    def smooth_factor(self, x):
        return np.polynomial.polynomial.polyval(x, self._poly)

    def weight(self, x, skip=None):
        """Density without the support check.  ``skip`` drops one singular factor."""
        x = np.asarray(x, dtype=float)
        out = self.smooth_factor(x) * np.ones_like(x)
        with np.errstate(divide="ignore"):
            for s in self.singularities:
                if skip is not None and s.location == skip:
                    continue
                out = out * np.abs(x - s.location) ** s.exponent
        return out

    def local_factor(self, x0):
        """``w(x0)``: the density at ``x0`` with the singular factor at ``x0`` removed."""
        return float(self.weight(x0, skip=x0))

    @property
    def is_symmetric(self):
        lo, hi = self.hull
        c = 0.5 * (lo + hi)
        mirrored = sorted((2 * c - iv.hi, 2 * c - iv.lo) for iv in self.intervals)
        if not np.allclose(mirrored, [(iv.lo, iv.hi) for iv in self.intervals], atol=1e-14):
            return False
        msings = sorted((2 * c - s.location, s.exponent) for s in self.singularities)
        own = [(s.location, s.exponent) for s in self.singularities]
        if own and not np.allclose(msings, own, atol=1e-14):
            return False
        shifted = np.polynomial.Polynomial(self._poly)(np.polynomial.Polynomial([c, 1.0]))
        odd = shifted.coef[1::2]
        return bool(np.all(np.abs(odd) <= 1e-14 * max(1.0, np.max(np.abs(shifted.coef)))))


def _certify_positive(poly, intervals):
    p = np.polynomial.Polynomial(poly)
    roots = p.roots() if p.degree() > 0 else np.array([])
    for r in roots:
        if abs(r.imag) <= 1e-12 * max(1.0, abs(r)):
            if any(iv.lo - 1e-12 <= r.real <= iv.hi + 1e-12 for iv in intervals):
                raise SchemaError("smooth.poly", "smooth factor vanishes on the support")
    for iv in intervals:
        if p(0.5 * (iv.lo + iv.hi)) <= 0:
            raise SchemaError("smooth.poly", "smooth factor must be positive on the support")


def density_at(mu, x):
    """Radon-Nikodym derivative of ``mu`` at a support point ``x``.

    Returns ``inf`` exactly at a singularity with negative exponent.
    """
    x = float(x)
    if not mu.in_support(x):
        raise DomainError(f"x = {x} lies outside the support")
    s = mu.singularity_at(x)
    if s is not None:
        if s.exponent < 0:
            return math.inf
        if s.exponent > 0:
            return 0.0
    return float(mu.weight(x))


def make_model_bulk(alpha):
    """``|x|^alpha dx`` on ``[-1, 1]``."""
    alpha = _check_alpha(alpha)
    sings = (AlgebraicSingularity(0.0, alpha),) if alpha != 0 else ()
    return GJMeasure(((-1.0, 1.0),), sings)


def make_model_edge(alpha):
    """``|x - 1|^alpha dx`` on ``[-1, 1]``."""
    alpha = _check_alpha(alpha)
    sings = (AlgebraicSingularity(1.0, alpha),) if alpha != 0 else ()
    return GJMeasure(((-1.0, 1.0),), sings)


def _check_alpha(alpha):
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > -1.0):
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    return alpha


# -- documents --------------------------------------------------------------


def parse_measure(document):
    """Build a :class:`GJMeasure` from a JSON string or an already-decoded dict."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError("document", f"invalid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("document", "top level must be an object")
    unknown = set(document) - {"intervals", "singularities", "smooth"}
    if unknown:
        raise SchemaError(sorted(unknown)[0], "unknown key")

    raw_ivs = document.get("intervals")
    if not isinstance(raw_ivs, list) or not raw_ivs:
        raise SchemaError("intervals", "must be a nonempty list of [lo, hi] pairs")
    ivs = []
    for item in raw_ivs:
        if not (isinstance(item, list) and len(item) == 2
                and all(_is_number(v) for v in item)):
            raise SchemaError("intervals", f"bad interval {item!r}")
        ivs.append(Interval(float(item[0]), float(item[1])))

    sings = []
    for item in document.get("singularities", []):
        if not isinstance(item, dict) or set(item) != {"x0", "alpha"}:
            raise SchemaError("singularities", f"entries need keys x0 and alpha, got {item!r}")
        if not (_is_number(item["x0"]) and _is_number(item["alpha"])):
            raise SchemaError("singularities", "x0 and alpha must be numbers")
        sings.append(AlgebraicSingularity(float(item["x0"]), float(item["alpha"])))

    smooth = document.get("smooth", {"const": 1.0})
    if not isinstance(smooth, dict) or len(smooth) != 1:
        raise SchemaError("smooth", 'must be {"const": c} or {"poly": [c0, ...]}')
    (kind, value), = smooth.items()
    if kind == "const":
        if not _is_number(value):
            raise SchemaError("smooth.const", "must be a number")
        smooth_t = ("const", float(value))
    elif kind == "poly":
        if not isinstance(value, list) or not all(_is_number(v) for v in value):
            raise SchemaError("smooth.poly", "must be a list of numbers")
        smooth_t = ("poly", tuple(float(v) for v in value))
    else:
        raise SchemaError("smooth", f"unknown smooth factor kind {kind!r}")
    return GJMeasure(tuple(ivs), tuple(sings), smooth_t)


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def measure_to_dict(mu):
    kind, value = mu.smooth
    return {
        "intervals": [[iv.lo, iv.hi] for iv in mu.intervals],
        "singularities": [{"x0": s.location, "alpha": s.exponent} for s in mu.singularities],
        "smooth": {kind: list(value) if kind == "poly" else value},
    }


def serialize_measure(mu):
    return json.dumps(measure_to_dict(mu), indent=2, sort_keys=True)


def load_measure(path):
    with open(path, encoding="utf-8") as fh:
        return parse_measure(fh.read())
