"""Christoffel-Darboux kernels, Christoffel functions and kernel zeros.

All functions take a :class:`~jacobiuniv.orthopoly.RecurrenceTable`.  The
Christoffel-Darboux formula needs ``p_n``, so ``K_n`` via :func:`kernel_cd`
requires a table of size at least ``n + 1``; :func:`kernel_direct` only
needs size ``n``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, qr, solve_triangular

from . import _kernels
from .errors import DomainError, NumericError, PreconditionError
from .measure import density_at
from .orthopoly import composite_quadrature, eval_with_derivative, poly_zeros

# |x - y| below this (relative to max(1, |x|)) uses the confluent formula
CONFLUENT_REL = 1e-8
ZERO_TOL = 1e-13


def _scalar_or_array(out, *args):
    if all(np.ndim(a) == 0 for a in args):
        return float(out)
    return out


def kernel_direct(table, n, x, y):
    """``K_n(x, y) = sum_{k<n} p_k(x) p_k(y)``."""
    n = int(n)
    if n < 1 or n > table.size:
        raise PreconditionError(f"need 1 <= n <= {table.size}, got {n}")
    out = _kernels.kernel_sum(table.diag, table.offdiag, table.p0, n, x, y)
    return _scalar_or_array(out, x, y)


def _kernel_cd_arrays(table, n, x, y):
    if n < 1 or n >= table.size:
        raise PreconditionError(f"kernel_cd with n={n} needs a table of size > {n}")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    px, qx, dpx, dqx, lx = eval_with_derivative(table, n, x)
    py, qy, _, _, ly = eval_with_derivative(table, n, y)
    a_n = table.offdiag[n]
    out = np.empty(x.shape)
    near = np.abs(x - y) < CONFLUENT_REL * np.maximum(1.0, np.abs(x))
    far = ~near
    with np.errstate(over="ignore"):
        if far.any():
            num = px[far] * qy[far] - qx[far] * py[far]
            out[far] = a_n * num / (x[far] - y[far]) * np.exp(lx[far] + ly[far])
        if near.any():
            # K is symmetric in (x, y), so the diagonal value at the midpoint is O(|x - y|^2) off
            mid = 0.5 * (x[near] + y[near])
            pm, qm, dpm, dqm, lm = eval_with_derivative(table, n, mid)
            out[near] = a_n * (dpm * qm - dqm * pm) * np.exp(2.0 * lm)
    return out


def kernel_cd(table, n, x, y):
    """``K_n(x, y)`` by the Christoffel-Darboux formula (confluent form on the diagonal)."""
    return _scalar_or_array(_kernel_cd_arrays(table, int(n), x, y), x, y)


def christoffel(table, n, x):
    """``lambda_n(x) = 1 / K_n(x, x)``."""
    return _scalar_or_array(1.0 / _kernel_cd_arrays(table, int(n), x, x), x)


def christoffel_oracle(mu, n, x):
    """Christoffel function as a constrained least-squares minimum.

    Minimises ``int |P|^2 dmu`` over ``deg P < n`` with ``P(x) = 1`` using a
    Legendre basis on the convex hull and a composite Gauss rule; it shares
    nothing with the recurrence machinery.  The Gram matrix ``G = R^T R`` is
    factored through a QR decomposition of the weighted basis matrix rather
    than formed explicitly, which keeps the conditioning at ``sqrt(cond G)``.
    """
    n = int(n)
    if n < 1 or n > 20:
        raise PreconditionError("christoffel_oracle supports 1 <= n <= 20")
    rule = composite_quadrature(mu, n + 10)
    lo, hi = mu.hull
    c, h = 0.5 * (lo + hi), 0.5 * (hi - lo)
    basis_q = np.polynomial.legendre.legvander((rule.nodes - c) / h, n - 1)
    v = np.polynomial.legendre.legvander(np.atleast_1d((float(x) - c) / h), n - 1)[0]
    try:
        r = qr(np.sqrt(rule.weights)[:, None] * basis_q, mode="r")[0][:n]
        if np.min(np.abs(np.diag(r))) <= 1e-15 * np.max(np.abs(np.diag(r))):
            raise LinAlgError("Gram matrix is numerically singular")
        z = solve_triangular(r, v, trans="T")
    except LinAlgError as exc:
        raise NumericError(f"Gram matrix factorisation failed: {exc}") from exc
    return 1.0 / float(z @ z)


def normalized_kernel(mu, table, n, x, y):
    """``sqrt(w(x) w(y)) K_n(x, y)``; ``inf`` at a negative-exponent singularity."""
    wx, wy = density_at(mu, x), density_at(mu, y)
    if math.isinf(wx) or math.isinf(wy):
        return math.inf
    return math.sqrt(wx * wy) * kernel_cd(table, n, x, y)


def f_n_ratio(table, n, x0, omega, a, b):
    """``K_n(x0 + a*/n, x0 + b*/n) / K_n(x0, x0)`` with ``a* = a / (pi omega)``.

    ``omega`` is the equilibrium density of the support at ``x0``.
    """
    if not omega > 0:
        raise DomainError("omega must be positive")
    s = 1.0 / (math.pi * omega * n)
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    num = _kernel_cd_arrays(table, n, x0 + a * s, x0 + b * s)
    den = _kernel_cd_arrays(table, n, x0, x0)
    return _scalar_or_array(num / den, a, b)


def correlation_det(mu, table, n, points):
    """``det( sqrt(w(x_i) w(x_j)) K_n(x_i, x_j) )`` for up to 12 points."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 1 or not 1 <= len(pts) <= 12:
        raise PreconditionError("correlation_det takes between 1 and 12 points")
    w = np.array([density_at(mu, p) for p in pts])
    if np.any(np.isinf(w)):
        raise DomainError("a point sits on a singularity with negative exponent")
    kmat = _kernel_cd_arrays(table, n, pts[:, None], pts[None, :])
    sw = np.sqrt(w)
    return float(np.linalg.det(sw[:, None] * kmat * sw[None, :]))


# -- zeros of psi_n(xi, .) ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class KernelZeroSet:
    """Zeros ``t_k`` of ``psi_n(xi, .)`` with ``t_0 = xi``.

    ``zeros[i]`` carries the signed index ``i - center_index``.
    """

    center: float
    zeros: np.ndarray
    center_index: int
    exterior_found: bool = True

    @property
    def k_min(self):
        return -self.center_index

    @property
    def k_max(self):
        return len(self.zeros) - 1 - self.center_index

    def __getitem__(self, k):
        if not self.k_min <= k <= self.k_max:
            raise IndexError(f"zero index {k} outside [{self.k_min}, {self.k_max}]")
        return float(self.zeros[self.center_index + k])


def _psi(table, n, pn_xi, pq_xi, y):
    """psi_n(xi, y) up to a positive factor, and its y-derivative (same factor)."""
    p, q, dp, dq, _ = eval_with_derivative(table, n, y)
    return pn_xi * q - pq_xi * p, pn_xi * dq - pq_xi * dp


def _bisect(table, n, pn_xi, pq_xi, lo, hi):
    lo, hi = np.array(lo, dtype=float), np.array(hi, dtype=float)
    f_lo = _psi(table, n, pn_xi, pq_xi, lo)[0]
    f_hi = _psi(table, n, pn_xi, pq_xi, hi)[0]
    if np.any(np.sign(f_lo) * np.sign(f_hi) > 0):
        raise NumericError("a bracket does not contain a sign change of psi_n")
    lo0, hi0 = lo.copy(), hi.copy()
    for _ in range(200):
        if np.all(hi - lo <= ZERO_TOL):
            break
        mid = 0.5 * (lo + hi)
        f_mid = _psi(table, n, pn_xi, pq_xi, mid)[0]
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi = np.where(left, hi, mid)
    root = 0.5 * (lo + hi)
    # one Newton polish, kept only if it stays inside the original bracket
    f, df = _psi(table, n, pn_xi, pq_xi, root)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(df != 0, f / df, 0.0)
    polished = root - step
    ok = (polished > lo0) & (polished < hi0) & np.isfinite(polished)
    return np.where(ok, polished, root)


def _exterior_zero(table, n, pn_xi, pq_xi, inner_lo, inner_hi):
    """Search beyond the extreme zeros of p_n for the one exterior zero."""
    span = inner_hi - inner_lo
    limit = span + 1.0
    for side in (1.0, -1.0):
        start = inner_hi if side > 0 else inner_lo
        f_start = _psi(table, n, pn_xi, pq_xi, np.array([start]))[0][0]
        step = 1e-3 * max(span, 1e-3)
        prev = start
        while step <= 2 * limit:
            cur = start + side * step
            f_cur = _psi(table, n, pn_xi, pq_xi, np.array([cur]))[0][0]
            if np.sign(f_cur) != np.sign(f_start) and f_cur != 0:
                lo, hi = (prev, cur) if side > 0 else (cur, prev)
                return float(_bisect(table, n, pn_xi, pq_xi, [lo], [hi])[0])
            prev = cur
            step *= 2.0
    return None


def kernel_zeros(table, n, xi, window):
    """Zeros of ``psi_n(xi, y) = p_n(xi) p_{n-1}(y) - p_n(y) p_{n-1}(xi)`` around ``xi``.

    Returns ``window`` zeros on each side of ``xi`` (plus ``xi`` itself).
    Zeros between consecutive zeros of ``p_n`` are found by bisection; the
    single zero outside ``[x_1n, x_nn]`` by an expanding search.
    """
    n, window, xi = int(n), int(window), float(xi)
    if window < 1 or window > n // 2:
        raise PreconditionError(f"window must lie in [1, {n // 2}]")
    pn, pq, _, _, _ = eval_with_derivative(table, n, np.array([xi]))
    pn_xi, pq_xi = float(pn[0]), float(pq[0])
    scale = math.hypot(pn_xi, pq_xi)

    if abs(pn_xi) <= 1e-13 * scale or abs(pq_xi) <= 1e-13 * scale:
        # psi_n(xi, .) is a multiple of p_n or p_{n-1}
        zeros = poly_zeros(table, n if abs(pn_xi) <= 1e-13 * scale else n - 1)
        ci = int(np.argmin(np.abs(zeros - xi)))
        zeros = zeros.copy()
        zeros[ci] = xi
        exterior = True
    else:
        xz = poly_zeros(table, n)
        j0 = int(np.searchsorted(xz, xi))  # xi in (xz[j0-1], xz[j0])
        left_idx = [j for j in range(j0 - 2, max(j0 - 2 - window, -1), -1)]
        right_idx = [j for j in range(j0, min(j0 + window, n - 1))]
        brackets = sorted(left_idx + right_idx)
        roots = []
        if brackets:
            b = np.array(brackets)
            roots = list(_bisect(table, n, pn_xi, pq_xi, xz[b], xz[b + 1]))
        exterior = True
        if 0 < j0 < n:
            need_left = len(left_idx) < window
            need_right = len(right_idx) < window
            if need_left or need_right:
                ext = _exterior_zero(table, n, pn_xi, pq_xi, xz[0], xz[-1])
                if ext is None:
                    exterior = False
                else:
                    roots.append(ext)
        zeros = np.sort(np.array(roots + [xi]))
        ci = int(np.nonzero(zeros == xi)[0][0])

    lo = ci - window
    hi = ci + window
    if lo < 0:
        raise NumericError(f"only {ci} kernel zeros available on the left side")
    if hi >= len(zeros):
        raise NumericError(f"only {len(zeros) - 1 - ci} kernel zeros available on the right side")
    return KernelZeroSet(xi, zeros[lo:hi + 1], window, exterior)
