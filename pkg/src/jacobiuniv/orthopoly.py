"""Orthonormal-polynomial recurrences for generalized Jacobi measures.

Three independent routes produce a :class:`RecurrenceTable`:

* :func:`jacobi_recurrence` -- closed form for ``(1-x)^a (1+x)^b`` on [-1, 1];
* :func:`symmetric_singular_recurrence` -- ``|x|^alpha`` on [-1, 1] via the
  even/odd split under ``t = x^2``;
* :func:`lanczos_recurrence` -- any measure, from a composite Gauss rule
  tridiagonalised by the RKPW algorithm.

The table convention is ``x p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1}``
with ``p_0 = 1/sqrt(mass)``.  A table of size ``N`` stores ``b_0..b_{N-1}``
and ``a_1..a_{N-1}`` and can therefore evaluate ``p_0..p_{N-1}``.

Coefficients are held in extended precision (``numpy.longdouble``).  Near
the edge of the support ``K_n(x, x)`` is sensitive to coefficient rounding
at the level of ``n * eps``; closed-form tables are therefore generated in
extended precision and the recurrence is evaluated in it as well.
"""

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import roots_jacobi

from . import _kernels
from .errors import DomainError, NumericError, PreconditionError
from .measure import GJMeasure

# extra quadrature degree on top of 2n, absorbs the smooth factor
QUAD_MARGIN = 16
EXT = np.longdouble


@dataclass(frozen=True, eq=False)
class RecurrenceTable:
    mass: float
    diag: np.ndarray
    offdiag: np.ndarray  # offdiag[0] is a placeholder 0.0; a_k = offdiag[k]

    def __post_init__(self):
        diag = np.array(self.diag, dtype=EXT)
        off = np.array(self.offdiag, dtype=EXT)
        if off.shape != diag.shape:
            raise ValueError("diag and offdiag must have the same length")
        if not self.mass > 0:
            raise ValueError("mass must be positive")
        if np.any(off[1:] <= 0):
            raise NumericError("recurrence coefficients a_k must be positive")
        off[0] = 0
        diag.setflags(write=False)
        off.setflags(write=False)
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", off)

    @property
    def size(self):
        return len(self.diag)

    @property
    def p0(self):
        return EXT(1) / np.sqrt(EXT(self.mass))

    def truncate(self, size):
        return RecurrenceTable(self.mass, self.diag[:size], self.offdiag[:size])

    def scaled(self, factor):
        """Table of the measure multiplied by a positive constant."""
        return RecurrenceTable(self.mass * factor, self.diag, self.offdiag)

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["k", "b_k", "a_k"])
        for k in range(self.size):
            writer.writerow([k, f"{float(self.diag[k]):.17g}",
                             "" if k == 0 else f"{float(self.offdiag[k]):.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, mass):
        rows = list(csv.reader(io.StringIO(text)))
        if rows[0] != ["k", "b_k", "a_k"]:
            raise ValueError("CSV header must be k,b_k,a_k")
        body = [r for r in rows[1:] if r]
        diag = [float(r[1]) for r in body]
        off = [0.0] + [float(r[2]) for r in body[1:]]
        return cls(mass, np.array(diag), np.array(off))


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    degree: int  # polynomial exactness relative to the measure's singular structure

    @property
    def mass(self):
        return float(np.sum(self.weights))

    def integrate(self, f):
        return float(np.dot(self.weights, f(self.nodes)))


# -- closed forms --------------------------------------------------------------


def _check_param(v, name):
    v = float(v)
    if not (math.isfinite(v) and v > -1.0):
        raise DomainError(f"{name} must exceed -1, got {v!r}")
    return v


def _check_size(n):
    n = int(n)
    if n < 1 or n > 100_000:
        raise DomainError(f"table size must lie in [1, 100000], got {n}")
    return n


def _jacobi_coeffs(alpha, beta, n):
    """Orthonormal Jacobi coefficients b_0..b_{n-1}, a_0(=0)..a_{n-1}."""
    alpha, beta = EXT(alpha), EXT(beta)
    k = np.arange(n, dtype=EXT)
    s = alpha + beta
    b = np.empty(n, dtype=EXT)
    b[0] = (beta - alpha) / (s + 2)
    kk = k[1:]
    b[1:] = (beta**2 - alpha**2) / ((2 * kk + s) * (2 * kk + s + 2))
    a = np.zeros(n, dtype=EXT)
    if n > 1:
        a[1] = np.sqrt(4 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s)))
    if n > 2:
        kk = k[2:]
        num = 4 * kk * (kk + alpha) * (kk + beta) * (kk + s)
        den = (2 * kk + s) ** 2 * (2 * kk + s + 1) * (2 * kk + s - 1)
        a[2:] = np.sqrt(num / den)
    return b, a


def jacobi_mass(alpha, beta):
    return math.exp((alpha + beta + 1.0) * math.log(2.0) + math.lgamma(alpha + 1.0)
                    + math.lgamma(beta + 1.0) - math.lgamma(alpha + beta + 2.0))


def jacobi_recurrence(alpha, beta, n):
    """Closed-form table for the weight ``(1-x)^alpha (1+x)^beta`` on [-1, 1]."""
    alpha = _check_param(alpha, "alpha")
    beta = _check_param(beta, "beta")
    n = _check_size(n)
    b, a = _jacobi_coeffs(alpha, beta, n)
    return RecurrenceTable(jacobi_mass(alpha, beta), b, a)


def symmetric_singular_recurrence(alpha, n):
    """Table for ``|x|^alpha`` on [-1, 1].

    With ``pi_{2k}(x) = P_k(x^2)`` and ``pi_{2k+1}(x) = x Q_k(x^2)``, the
    monic ``P_k`` are orthogonal for ``t^{(alpha-1)/2} dt`` on [0, 1].  If
    ``t P_k = P_{k+1} + c_k P_k + d_k P_{k-1}`` then the squared monic
    coefficients of the symmetric measure satisfy
    ``c_k = beta_{2k} + beta_{2k+1}`` and ``d_k = beta_{2k-1} beta_{2k}``.
    """
    alpha = _check_param(alpha, "alpha")
    n = _check_size(n)
    m = n // 2 + 2
    bj, aj = _jacobi_coeffs(0.0, 0.5 * (alpha - 1.0), m)
    c = (1 + bj) / 2
    d = aj**2 / 4
    beta = np.zeros(n + 1, dtype=EXT)
    beta[1] = c[0]
    for j in range(2, n + 1):
        k = j // 2
        if j % 2 == 0:
            beta[j] = d[k] / beta[j - 1]
        else:
            beta[j] = c[k] - beta[j - 1]
    a = np.sqrt(beta[:n])
    a[0] = 0.0
    return RecurrenceTable(2.0 / (alpha + 1.0), np.zeros(n, dtype=EXT), a)


# -- quadrature and Lanczos ----------------------------------------------------


def _panel_rule(lo, hi, left_exp, right_exp, order):
    t, w = roots_jacobi(order, right_exp, left_exp)
    half = 0.5 * (hi - lo)
    x = 0.5 * (lo + hi) + half * t
    return x, w * half ** (1.0 + left_exp + right_exp)


def weighted_rule(intervals, singularities, weight_fn, order):
    """Composite Gauss rule on ``intervals`` for ``weight_fn(x) * prod |x - s|^g``.

    Singularities inside an interval split it; a singularity at a panel end
    is absorbed into a Gauss-Jacobi rule, others are treated as smooth.
    ``intervals`` is a list of ``(lo, hi)``; ``singularities`` a list of
    ``(location, exponent)``.
    """
    xs, ws = [], []
    sing_map = dict(singularities)
    for lo, hi in intervals:
        cuts = sorted({lo, hi} | {s for s in sing_map if lo < s < hi})
        for left, right in zip(cuts, cuts[1:]):
            le = sing_map.get(left, 0.0)
            re = sing_map.get(right, 0.0)
            x, w = _panel_rule(left, right, le, re, order)
            rest = np.asarray(weight_fn(x), dtype=float) * np.ones_like(x)
            for s, g in singularities:
                if s in (left, right) or g == 0.0:
                    continue
                rest = rest * np.abs(x - s) ** g
            xs.append(x)
            ws.append(w * rest)
    return np.concatenate(xs), np.concatenate(ws)


def composite_quadrature(mu, order):
    """Singularity-aligned composite Gauss-Jacobi rule for ``mu``.

    Exact for ``polynomial * singular factor`` integrands up to degree
    ``2*order - 1`` on every panel.
    """
    if not isinstance(mu, GJMeasure):
        raise DomainError("composite_quadrature needs a GJMeasure")
    order = int(order)
    if order < 1:
        raise DomainError("order must be positive")
    sings = [(s.location, s.exponent) for s in mu.singularities]
    x, w = weighted_rule([(iv.lo, iv.hi) for iv in mu.intervals], sings,
                         mu.smooth_factor, order)
    return QuadratureRule(x, w, 2 * order - 1)


def default_rule(mu, n):
    """Rule sized for a table of size ``n`` (degree ``2n + QUAD_MARGIN``)."""
    order = (2 * n + QUAD_MARGIN) // 2 + 1
    return composite_quadrature(mu, order)


def lanczos_recurrence(mu, n, rule=None):
    """Table of size ``n`` from the discrete inner product of ``rule``."""
    n = _check_size(n)
    if rule is None:
        rule = default_rule(mu, n)
    if rule.degree < 2 * n + 1 or n > len(rule.nodes):
        raise PreconditionError(
            f"rule of degree {rule.degree} with {len(rule.nodes)} nodes "
            f"cannot resolve a table of size {n}")
    alpha, beta = _kernels.rkpw(rule.nodes, rule.weights, n)
    if np.any(beta[1:] <= 0):
        raise NumericError("Lanczos produced a non-positive coefficient")
    a = np.sqrt(beta)
    a[0] = 0.0
    return RecurrenceTable(float(beta[0]), alpha, a)


def recurrence_for(mu, n):
    """Pick the closed form when ``mu`` is a model measure, else Lanczos."""
    n = _check_size(n)
    kind, value = mu.smooth
    ivs = mu.intervals
    if kind == "const" and len(ivs) == 1 and (ivs[0].lo, ivs[0].hi) == (-1.0, 1.0):
        locs = {s.location: s.exponent for s in mu.singularities}
        if set(locs) <= {-1.0, 1.0}:
            return jacobi_recurrence(locs.get(1.0, 0.0), locs.get(-1.0, 0.0), n).scaled(value)
        if set(locs) == {0.0}:
            return symmetric_singular_recurrence(locs[0.0], n).scaled(value)
    return lanczos_recurrence(mu, n)


# -- evaluation -----------------------------------------------------------------


def _check_degree(table, n):
    n = int(n)
    if n < 0 or n >= table.size:
        raise PreconditionError(f"degree {n} needs a table of size > {n}, have {table.size}")
    return n


def eval_orthonormal(table, n, x):
    """``(p_n(x), p_{n-1}(x))`` by the forward recurrence (``p_{-1} = 0``)."""
    n = _check_degree(table, n)
    p, q, _, _, logs = _kernels.recur_eval(table.diag, table.offdiag, table.p0, n,
                                           np.asarray(x, dtype=float))
    scale = np.exp(logs)
    p, q = p * scale, q * scale
    if np.ndim(x) == 0:
        return float(p), float(q)
    return p.astype(float), q.astype(float)


def eval_with_derivative(table, n, x):
    """Raw kernel output ``(p_n, p_{n-1}, p_n', p_{n-1}', log_scale)`` in extended precision."""
    n = _check_degree(table, n)
    return _kernels.recur_eval(table.diag, table.offdiag, table.p0, n,
                               np.asarray(x, dtype=float))


def poly_zeros(table, n):
    """Zeros of ``p_n`` as eigenvalues of the leading n x n Jacobi matrix."""
    n = int(n)
    if n < 1 or n > table.size:
        raise PreconditionError(f"need 1 <= n <= {table.size}, got {n}")
    if n == 1:
        return np.array([float(table.diag[0])])
    try:
        vals = eigh_tridiagonal(table.diag[:n].astype(float), table.offdiag[1:n].astype(float),
                                eigvals_only=True)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigenvalue solver failed: {exc}") from exc
    return np.sort(vals)


def gauss_rule(table, n):
    """Gauss rule with ``n`` nodes (Golub-Welsch) for the table's measure."""
    n = int(n)
    if n < 1 or n > table.size:
        raise PreconditionError(f"need 1 <= n <= {table.size}, got {n}")
    if n == 1:
        return QuadratureRule(np.array([float(table.diag[0])]), np.array([table.mass]), 1)
    vals, vecs = eigh_tridiagonal(table.diag[:n].astype(float), table.offdiag[1:n].astype(float))
    return QuadratureRule(vals, table.mass * vecs[0] ** 2, 2 * n - 1)
