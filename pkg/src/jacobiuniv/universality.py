"""Desk-scale universality experiments.

Scans compare Christoffel functions and kernel ratios at finite ``n`` with
their Bessel-kernel limits; the constants ``omega_K(x0)`` and ``M(K, x0)``
always come from :mod:`jacobiuniv.potential`, never from the data.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cdkernel import christoffel, kernel_cd, kernel_zeros
from .errors import DomainError, NumericError, PreconditionError
from .measure import GJMeasure
from .orthopoly import weighted_rule
from .potential import density_at_eq, edge_constant
from .specfun import kernel_J, kernel_L

MODES = ("bulk_lambda", "bulk_ratio", "edge_lambda", "edge_ratio")
CSV_HEADER = ("n", "a", "b", "measured", "predicted", "abs_err", "rel_err")


def fmt(v):
    """17 significant digits, the CSV number format."""
    return f"{float(v):.17g}"


@dataclass(frozen=True)
class ScanConfig:
    measure: GJMeasure
    x0: float
    alpha: float
    a_grid: tuple
    n_list: tuple
    mode: str
    b_grid: tuple = ()
    eta: bool = False  # edge ratio mode: add the eta_n parametrisation columns

    def __post_init__(self):
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}")
        ns = tuple(int(n) for n in self.n_list)
        if not ns or any(n < 1 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
            raise DomainError("n_list must be strictly increasing positive integers")
        object.__setattr__(self, "n_list", ns)
        object.__setattr__(self, "a_grid", tuple(float(a) for a in self.a_grid))
        object.__setattr__(self, "b_grid", tuple(float(b) for b in self.b_grid))
        sing = self.measure.singularity_at(self.x0)
        expected = sing.exponent if sing is not None else 0.0
        if float(self.alpha) != expected:
            raise DomainError(
                f"alpha={self.alpha} does not match the exponent {expected} at x0={self.x0}")

    def pairs(self):
        if self.mode.endswith("lambda"):
            return [(a, a) for a in self.a_grid]
        bs = self.b_grid or self.a_grid
        return [(a, b) for a in self.a_grid for b in bs]


@dataclass
class ScanReport:
    mode: str
    rows: list
    fitted_order: object
    constants: dict
    notes: list = field(default_factory=list)
    extra_columns: tuple = ()

    def max_abs_err(self, n):
        return max(r[5] for r in self.rows if r[0] == n)

    def max_rel_err(self, n):
        return max(r[6] for r in self.rows if r[0] == n)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER + self.extra_columns)
        for r in self.rows:
            w.writerow([r[0]] + [fmt(v) for v in r[1:]])
        return buf.getvalue()

    def summary(self, passed=None):
        out = {
            "mode": self.mode,
            "fitted_order": self.fitted_order,
            "constants": self.constants,
            "pass": passed if passed is not None else self.positivity_ok(),
        }
        if self.notes:
            out["notes"] = self.notes
        return out

    def summary_json(self, passed=None):
        return json.dumps(self.summary(passed), indent=2, sort_keys=True) + "\n"

    def positivity_ok(self):
        if not self.mode.endswith("lambda"):
            return True
        return all(r[3] > 0 and r[4] > 0 for r in self.rows)


def rate_fit(errors):
    """Least-squares slope of ``log err`` against ``log n``."""
    pts = [(float(n), float(e)) for n, e in errors]
    if len(pts) < 3:
        raise DomainError("rate_fit needs at least three points")
    if any(e <= 0 or n <= 0 for n, e in pts):
        raise DomainError("rate_fit needs positive n and errors")
    x = np.log([n for n, _ in pts])
    y = np.log([e for _, e in pts])
    return float(np.polyfit(x, y, 1)[0])


def _finish(cfg, rows, constants, notes, extra=()):
    order = None
    if len(cfg.n_list) >= 3:
        errs = [(n, max(r[5] for r in rows if r[0] == n)) for n in cfg.n_list]
        if all(e > 0 for _, e in errs):
            order = rate_fit(errs)
    return ScanReport(cfg.mode, rows, order, constants, notes, extra)


def _row(n, a, b, measured, predicted):
    err = abs(measured - predicted)
    rel = err / abs(predicted) if predicted != 0 else math.inf
    return [n, a, b, float(measured), float(predicted), err, rel]


def _check_table(table, cfg):
    if table.size <= max(cfg.n_list):
        raise PreconditionError(f"table of size {table.size} is too short for n={max(cfg.n_list)}")


def scan_bulk(cfg, table, eq):
    """Bulk scan at an interior point ``x0``.

    ``bulk_lambda`` rows compare ``n^{alpha+1} lambda_n(x0 + a/n)`` with
    ``w(x0) / (pi omega)^{alpha+1} / L*(pi omega a)``; ``bulk_ratio`` rows
    compare ``K_n(x0 + a/n, x0 + b/n) / K_n(x0, x0)`` with
    ``L*(pi omega a, pi omega b) / L*(0, 0)``.
    """
    if not cfg.mode.startswith("bulk"):
        raise DomainError("scan_bulk needs a bulk mode")
    x0, alpha = float(cfg.x0), float(cfg.alpha)
    if not any(iv.lo < x0 < iv.hi for iv in cfg.measure.intervals):
        raise DomainError(f"x0={x0} is not interior to the support")
    _check_table(table, cfg)
    omega = density_at_eq(eq, x0)
    w0 = cfg.measure.local_factor(x0)
    s = math.pi * omega
    notes = []
    if alpha == 0:
        notes.append("alpha = 0: prediction is the sine kernel limit")
    rows = []
    pairs = cfg.pairs()
    a_arr = np.array([p[0] for p in pairs])
    b_arr = np.array([p[1] for p in pairs])
    if cfg.mode == "bulk_lambda":
        pred = w0 / s ** (alpha + 1) / np.asarray(kernel_L(alpha, s * a_arr))
    else:
        pred = np.asarray(kernel_L(alpha, s * a_arr, s * b_arr)) / kernel_L(alpha, 0.0, 0.0)
    for n in cfg.n_list:
        if cfg.mode == "bulk_lambda":
            meas = n ** (alpha + 1) * np.asarray(christoffel(table, n, x0 + a_arr / n))
        else:
            meas = kernel_cd(table, n, x0 + a_arr / n, x0 + b_arr / n) / kernel_cd(table, n, x0, x0)
        for (a, b), m, p in zip(pairs, np.atleast_1d(meas), pred):
            rows.append(_row(n, a, b, m, p))
    constants = {"omega": omega, "w_x0": w0, "x0": x0, "alpha": alpha}
    return _finish(cfg, rows, constants, notes)


def scan_edge(cfg, table, eq):
    """Hard-edge scan at an endpoint ``x0`` (left endpoints are reflected).

    ``edge_lambda`` rows compare ``n^{2alpha+2} lambda_n(x0 - a/(2n^2))`` with
    ``w(x0) / M^{2alpha+2} / (2^{alpha+1} J*(M^2 a))``; ``edge_ratio`` rows
    compare ``K_n`` ratios with ``J*(M^2 a, M^2 b) / J*(0, 0)``.
    """
    if not cfg.mode.startswith("edge"):
        raise DomainError("scan_edge needs an edge mode")
    x0, alpha = float(cfg.x0), float(cfg.alpha)
    rights = {iv.hi for iv in cfg.measure.intervals}
    lefts = {iv.lo for iv in cfg.measure.intervals}
    if x0 in rights:
        direction = -1.0
    elif x0 in lefts:
        direction = 1.0
    else:
        raise DomainError(f"x0={x0} is not an endpoint of the support")
    if any(a < 0 for a in cfg.a_grid + cfg.b_grid):
        raise DomainError("edge scans need a, b >= 0")
    _check_table(table, cfg)
    m_const = edge_constant(eq, x0)
    w0 = cfg.measure.local_factor(x0)
    m2 = m_const * m_const
    pairs = cfg.pairs()
    a_arr = np.array([p[0] for p in pairs])
    b_arr = np.array([p[1] for p in pairs])
    j00 = kernel_J(alpha, 0.0, 0.0)
    if cfg.mode == "edge_lambda":
        pred = w0 / m_const ** (2 * alpha + 2) / (2 ** (alpha + 1) * np.asarray(kernel_J(alpha, m2 * a_arr)))
    else:
        pred = np.asarray(kernel_J(alpha, m2 * a_arr, m2 * b_arr)) / j00
    extra = ("eta", "eta_ratio") if cfg.eta and cfg.mode == "edge_ratio" else ()
    rows = []
    for n in cfg.n_list:
        h = direction / (2.0 * n * n)
        xa, xb = x0 + h * a_arr, x0 + h * b_arr
        k00 = kernel_cd(table, n, x0, x0)
        if cfg.mode == "edge_lambda":
            meas = n ** (2 * alpha + 2) * np.asarray(christoffel(table, n, xa))
        else:
            meas = kernel_cd(table, n, xa, xb) / k00
        if extra:
            eta = (j00 / k00) ** (1.0 / (alpha + 1.0))
            eta_ratio = kernel_cd(table, n, x0 + direction * eta * a_arr,
                                  x0 + direction * eta * b_arr) / k00
        for i, ((a, b), m, p) in enumerate(zip(pairs, np.atleast_1d(meas), pred)):
            row = _row(n, a, b, m, p)
            if extra:
                row += [eta, float(eta_ratio[i])]
            rows.append(row)
    constants = {"M": m_const, "w_x0": w0, "x0": x0, "alpha": alpha}
    return _finish(cfg, rows, constants, [], extra)


# -- identities and bounds -----------------------------------------------------


def _reproducing_integral(alpha, a, b, r, order, panel):
    edges = np.linspace(0.0, r, max(2, int(math.ceil(r / panel)) + 1))
    pieces = [(-hi, -lo) for lo, hi in zip(edges[:-1], edges[1:])]
    pieces += [(lo, hi) for lo, hi in zip(edges[:-1], edges[1:])]
    sing = [(0.0, alpha)] if alpha != 0 else []

    def f(s):
        return np.asarray(kernel_L(alpha, a, s)) * np.asarray(kernel_L(alpha, s, b))

    x, w = weighted_rule(sorted(pieces), sing, f, order)
    return float(np.sum(w))


def check_reproducing(alpha, a, b, r, order=16, panel=2.0):
    """``|L*(a, b) - int_{-r}^{r} L*(a, s) L*(s, b) |s|^alpha ds|``.

    The integral uses Gauss-Jacobi panels at ``s = 0`` and Gauss-Legendre
    panels elsewhere; the panel order is doubled until two successive
    values agree.
    """
    alpha, r = float(alpha), float(r)
    if not 0 < r <= 1e3:
        raise DomainError("r must lie in (0, 1000]")
    prev = _reproducing_integral(alpha, a, b, r, order, panel)
    for _ in range(4):
        order *= 2
        cur = _reproducing_integral(alpha, a, b, r, order, panel)
        if abs(cur - prev) <= 1e-12 * max(1.0, abs(cur)):
            return abs(float(kernel_L(alpha, a, b)) - cur)
        prev = cur
    raise NumericError("reproducing-identity quadrature did not converge")


def mass_between(mu, lo, hi, order=40):
    """``mu([lo, hi])`` from singularity-aligned Gauss panels clipped to ``[lo, hi]``."""
    pieces = [(max(iv.lo, lo), min(iv.hi, hi)) for iv in mu.intervals]
    pieces = [p for p in pieces if p[1] > p[0]]
    if not pieces:
        return 0.0
    sings = [(s.location, s.exponent) for s in mu.singularities]
    x, w = weighted_rule(pieces, sings, mu.smooth_factor, order)
    return float(np.sum(w))


def check_markov_stieltjes(mu, table, n, xi, l, k):
    """Slacks of the Markov-Stieltjes sandwich between kernel zeros ``t_l < t_k``.

    Returns ``(lower, upper)`` with
    ``lower = mu[t_l, t_k] - sum_{l<j<k} lambda_n(t_j)`` and
    ``upper = sum_{l<=j<=k} lambda_n(t_j) - mu[t_l, t_k]``.
    """
    l, k = int(l), int(k)
    if not l < 0 < k:
        raise PreconditionError("need l < 0 < k")
    try:
        zs = kernel_zeros(table, n, xi, max(-l, k))
    except (NumericError, PreconditionError) as exc:
        raise PreconditionError(f"zero window unavailable: {exc}") from exc
    t = {j: zs[j] for j in range(l, k + 1)}
    lam = {j: float(christoffel(table, n, t[j])) for j in t}
    inner = sum(lam[j] for j in range(l + 1, k))
    outer = sum(lam.values())
    mass = mass_between(mu, t[l], t[k])
    return mass - inner, outer - mass


@dataclass(frozen=True)
class NevaiReport:
    regime: str
    alpha: float
    values: tuple  # (n, x, ratio)

    @property
    def min(self):
        return min(v[2] for v in self.values)

    @property
    def max(self):
        return max(v[2] for v in self.values)

    @property
    def spread(self):
        return self.max / self.min


def check_nevai_bounds(table, n_list, xs, alpha, regime, center=0.0, edge=1.0):
    """Normalised Christoffel ratios whose boundedness is the Nevai bound.

    bulk: ``lambda_n(x) n (|x - center| + 1/n)^{-alpha}``;
    edge: ``lambda_n(x) n (sqrt(edge - x) + 1/n)^{-(2 alpha + 1)}``.
    """
    if regime not in ("bulk", "edge"):
        raise DomainError("regime must be 'bulk' or 'edge'")
    alpha = float(alpha)
    vals = []
    for n in n_list:
        lam = np.atleast_1d(christoffel(table, n, np.asarray(xs, dtype=float)))
        for x, lv in zip(xs, lam):
            if regime == "bulk":
                ratio = lv * n * (abs(x - center) + 1.0 / n) ** (-alpha)
            else:
                ratio = lv * n * (math.sqrt(max(edge - x, 0.0)) + 1.0 / n) ** (-(2 * alpha + 1))
            vals.append((int(n), float(x), float(ratio)))
    return NevaiReport(regime, alpha, tuple(vals))


# single gaps of rescaled zeros must stay below this, double gaps above the next
SPACING_UPPER = 2 * math.pi
SPACING_LOWER = math.pi / 4


@dataclass(frozen=True)
class SpacingReport:
    rho: np.ndarray  # rescaled zeros, rho[window] = 0
    gaps: np.ndarray
    double_gaps: np.ndarray
    symmetry_err: float

    @property
    def max_gap(self):
        return float(np.max(self.gaps))

    @property
    def min_double_gap(self):
        return float(np.min(self.double_gaps))

    @property
    def passed(self):
        return self.max_gap <= SPACING_UPPER and self.min_double_gap >= SPACING_LOWER


def zero_spacing_report(table, n, x0, omega, window):
    """Rescaled kernel zeros ``rho_k = n pi omega (t_k - x0)`` and their gaps."""
    zs = kernel_zeros(table, n, x0, window)
    rho = n * math.pi * omega * (zs.zeros - x0)
    sym = float(np.max(np.abs(rho + rho[::-1])))
    return SpacingReport(rho, np.diff(rho), rho[2:] - rho[:-2], sym)
