# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  ``_fallback.py`` holds the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabsl, logl

ctypedef long double ld
ctypedef cnp.longdouble_t ld_t

cnp.import_array()

cdef ld _BIG = 1e150


def rkpw(nodes, weights, Py_ssize_t n):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(nodes, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t ncap = x.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p0 = x.copy()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p1 = np.zeros(ncap)
    cdef double pn, gam, sig, t, xlam, rho, tmp, tsig, tk
    cdef Py_ssize_t m, k
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
    return p0[:n].copy(), p1[:n].copy()


cdef ld _as_ld(v):
    # a plain ``ld`` argument would round through a C double
    cdef cnp.ndarray[ld_t, ndim=1] box = np.asarray([v], dtype=np.longdouble)
    return box[0]


def recur_eval(b, a, p0_in, Py_ssize_t n, x):
    cdef ld p0 = _as_ld(p0_in)
    cdef cnp.ndarray[ld_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.longdouble)
    xarr = np.asarray(x, dtype=np.longdouble)
    shape = xarr.shape
    cdef cnp.ndarray[ld_t, ndim=1] xs = np.ascontiguousarray(xarr.ravel())
    cdef Py_ssize_t m = xs.shape[0], i, k
    cdef cnp.ndarray[ld_t, ndim=1] out_p = np.empty(m, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] out_q = np.empty(m, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] out_dp = np.empty(m, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] out_dq = np.empty(m, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] out_s = np.empty(m, dtype=np.longdouble)
    cdef ld xv, prev, cur, dprev, dcur, nxt, dnxt, logs, s
    for i in range(m):
        xv = xs[i]
        prev = 0.0
        cur = p0
        dprev = 0.0
        dcur = 0.0
        logs = 0.0
        for k in range(n):
            nxt = ((xv - bb[k]) * cur - aa[k] * prev) / aa[k + 1]
            dnxt = (cur + (xv - bb[k]) * dcur - aa[k] * dprev) / aa[k + 1]
            prev = cur
            cur = nxt
            dprev = dcur
            dcur = dnxt
            if fabsl(cur) > _BIG:
                s = fabsl(cur)
                prev /= s
                cur /= s
                dprev /= s
                dcur /= s
                logs += logl(s)
        out_p[i] = cur
        out_q[i] = prev
        out_dp[i] = dcur
        out_dq[i] = dprev
        out_s[i] = logs
    return (out_p.reshape(shape), out_q.reshape(shape), out_dp.reshape(shape),
            out_dq.reshape(shape), out_s.reshape(shape))


def kernel_sum(b, a, p0_in, Py_ssize_t n, x, y):
    cdef ld p0 = _as_ld(p0_in)
    xb, yb = np.broadcast_arrays(np.asarray(x, dtype=np.longdouble),
                                 np.asarray(y, dtype=np.longdouble))
    shape = xb.shape
    cdef cnp.ndarray[ld_t, ndim=1] bb = np.ascontiguousarray(b, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] aa = np.ascontiguousarray(a, dtype=np.longdouble)
    cdef cnp.ndarray[ld_t, ndim=1] xs = np.ascontiguousarray(xb.ravel())
    cdef cnp.ndarray[ld_t, ndim=1] ys = np.ascontiguousarray(yb.ravel())
    cdef Py_ssize_t m = xs.shape[0], i, k
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef ld xv, yv, px, py, pxp, pyp, pxn, pyn, total
    for i in range(m):
        xv = xs[i]
        yv = ys[i]
        pxp = 0.0
        pyp = 0.0
        px = p0
        py = p0
        total = px * py
        for k in range(n - 1):
            pxn = ((xv - bb[k]) * px - aa[k] * pxp) / aa[k + 1]
            pyn = ((yv - bb[k]) * py - aa[k] * pyp) / aa[k + 1]
            pxp = px
            px = pxn
            pyp = py
            py = pyn
            total += px * py
        out[i] = <double>total
    return out.reshape(shape)
