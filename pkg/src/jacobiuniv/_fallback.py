"""Pure-Python/numpy versions of the hot kernels in ``_core.pyx``.

Signatures and results match the compiled module exactly; see
``jacobiuniv._kernels`` for how one of the two is picked.
"""

import numpy as np

_BIG = 1e150
EXT = np.longdouble


def rkpw(nodes, weights, n):
    """Monic recurrence coefficients of a discrete measure.

    Rutishauser-Kahan-Pal-Walker tridiagonalisation of ``diag(nodes)``
    against ``sqrt(weights)``, returning ``(alpha, beta)`` of length ``n``
    with ``beta[0]`` equal to the total weight.
    """
    x = [float(v) for v in nodes]
    w = [float(v) for v in weights]
    ncap = len(x)
    p0 = list(x)
    p1 = [0.0] * ncap
    p1[0] = w[0]
    for m in range(ncap - 1):
        pn = w[m + 1]
        gam = 1.0
        sig = 0.0
        t = 0.0
        xlam = x[m + 1]
        for k in range(m + 2):
            rho = p1[k] + pn
            tmp = gam * rho
            tsig = sig
            if rho <= 0.0:
                gam = 1.0
                sig = 0.0
            else:
                gam = p1[k] / rho
                sig = pn / rho
            tk = sig * (p0[k] - xlam) - gam * t
            p0[k] = p0[k] - (tk - t)
            t = tk
            if sig <= 0.0:
                pn = tsig * p1[k]
            else:
                pn = t * t / sig
            p1[k] = tmp
    return np.array(p0[:n]), np.array(p1[:n])


def recur_eval(b, a, p0, n, x):
    """Orthonormal recurrence up to degree ``n`` at the points ``x``.

    Returns ``(p_n, p_{n-1}, p_n', p_{n-1}', log_scale)`` as extended
    precision arrays; the first four are all divided by ``exp(log_scale)``,
    which is nonzero only when the values would otherwise overflow (points
    well outside the support).
    """
    b = np.asarray(b, dtype=EXT)
    a = np.asarray(a, dtype=EXT)
    x = np.asarray(x, dtype=EXT)
    prev = np.zeros_like(x)
    cur = np.full_like(x, p0)
    dprev = np.zeros_like(x)
    dcur = np.zeros_like(x)
    logs = np.zeros_like(x)
    for k in range(n):
        nxt = ((x - b[k]) * cur - a[k] * prev) / a[k + 1]
        dnxt = (cur + (x - b[k]) * dcur - a[k] * dprev) / a[k + 1]
        prev, cur, dprev, dcur = cur, nxt, dcur, dnxt
        big = np.abs(cur) > _BIG
        if big.any():
            s = np.where(big, np.abs(cur), 1.0)
            prev, cur, dprev, dcur = prev / s, cur / s, dprev / s, dcur / s
            logs = logs + np.log(s)
    return cur, prev, dcur, dprev, logs


def kernel_sum(b, a, p0, n, x, y):
    """``sum_{k<n} p_k(x) p_k(y)`` elementwise over broadcast ``x, y``."""
    b = np.asarray(b, dtype=EXT)
    a = np.asarray(a, dtype=EXT)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=EXT), np.asarray(y, dtype=EXT))
    px_prev = np.zeros_like(x)
    py_prev = np.zeros_like(y)
    px = np.full_like(x, p0)
    py = np.full_like(y, p0)
    total = px * py
    for k in range(n - 1):
        px_next = ((x - b[k]) * px - a[k] * px_prev) / a[k + 1]
        py_next = ((y - b[k]) * py - a[k] * py_prev) / a[k + 1]
        px_prev, px, py_prev, py = px, px_next, py, py_next
        total = total + px * py
    return total.astype(float)

