"""Real-order Bessel functions and the Bessel-type universality kernels.

The workhorse is the *scaled entire part* ``g_nu(z) = z**(-nu) * J_nu(z)``,
which is an even entire function of ``z``.  Every kernel below is written in
terms of ``g`` so that removable singularities at the origin and on the
diagonal are evaluated exactly instead of by dividing small quantities.

Evaluation regimes
------------------
* ``|z| <= 12``: ascending power series (real or complex ``z``).
* real ``|z| > 12``: Hankel asymptotic expansion, summed up to its smallest
  term.  The switchover value is :data:`SERIES_RADIUS`.

Kernels
-------
``kernel_L`` is the bulk kernel built from ``J_{(alpha+1)/2}`` and
``J_{(alpha-1)/2}``; it reduces to the sine kernel at ``alpha = 0``.
``kernel_J`` is the hard-edge Bessel kernel built from ``J_alpha`` and
``J_alpha'``.  Both accept ``variant="raw"`` (the unnormalised formulas) or
``variant="entire"`` (divided by ``|a|^{alpha/2} |b|^{alpha/2}``).
"""

import math

import numpy as np

from .errors import DomainError, NumericError, UnsupportedRegimeError

SERIES_RADIUS = 12.0
# |a-b| below CONFLUENT_REL * max(1, |a|) uses the diagonal expansion.
CONFLUENT_REL = 1e-4

KERNEL_VARIANTS = ("raw", "entire")

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma_fn(x):
    """Gamma function for real ``x > 0`` (Lanczos approximation, g=7)."""
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma_fn needs a finite positive argument, got {x!r}")
    if x.is_integer() and x <= 171:
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        return gamma_fn(x + 1.0) / x
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    # split the power so t**(x+0.5) cannot overflow before e**-t shrinks it
    half = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * half * (math.exp(-t) * half) * acc


def _check_order(nu):
    nu = float(nu)
    if not math.isfinite(nu) or nu <= -1.0:
        raise DomainError(f"Bessel order must exceed -1, got {nu!r}")
    return nu


def _g_series(nu, z):
    """Ascending series for g_nu on an array (real or complex)."""
    term = np.full(z.shape, 1.0 / (2.0**nu * gamma_fn(nu + 1.0)), dtype=z.dtype)
    total = term.copy()
    q = -0.25 * z * z
    k = 0
    while True:
        k += 1
        term = term * q / (k * (k + nu))
        total = total + term
        if k > 4 and np.all(np.abs(term) <= 1e-17 * np.maximum(np.abs(total), 1e-300)):
            break
        if k > 400:  # pragma: no cover - |z| <= 12 converges by k ~ 60
            raise NumericError("Bessel series failed to converge")
    return total


def _hankel_pq(nu, x):
    """Hankel asymptotic sums P, Q for real x > 0 (array)."""
    mu = 4.0 * nu * nu
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 200):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = np.abs(term)
        # stop at the smallest term of the (divergent) expansion
        active &= (mag < prev) & (mag > 0.0)
        if not active.any():
            break
        sign = -1.0 if (k // 2) % 2 else 1.0
        contrib = np.where(active, sign * term, 0.0)
        if k % 2 == 0:
            p = p + contrib
        else:
            q = q + contrib
        prev = np.where(active, mag, prev)
        if np.all(~active | (mag < 1e-17)):
            break
    return p, q


def _j_hankel(nu, x):
    p, q = _hankel_pq(nu, x)
    chi = x - (0.5 * nu + 0.25) * math.pi
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def _as_array(z):
    arr = np.asarray(z)
    if arr.dtype.kind in "biu":
        arr = arr.astype(float)
    return arr


def _out(arr, like):
    if like is True or (like is not False and np.ndim(like) == 0):
        return arr.item() if isinstance(arr, np.ndarray) else arr
    return arr


def bessel_g(nu, z):
    """Scaled entire part ``g_nu(z) = z**(-nu) J_nu(z)``.

    ``g_nu`` is even, so real negative arguments are fine.  Complex arguments
    are limited to ``|z| <= 12``.
    """
    nu = _check_order(nu)
    arr = _as_array(z)
    if np.iscomplexobj(arr):
        if np.any(np.abs(arr) > SERIES_RADIUS):
            raise UnsupportedRegimeError(
                f"complex Bessel arguments need |z| <= {SERIES_RADIUS}"
            )
        return _out(_g_series(nu, arr.astype(complex)), z)
    x = np.abs(arr.astype(float))
    out = np.empty_like(x)
    small = x <= SERIES_RADIUS
    if small.any():
        out[small] = _g_series(nu, x[small])
    if (~small).any():
        xl = x[~small]
        out[~small] = _j_hankel(nu, xl) / xl**nu
    return _out(out, z)


def bessel_j(nu, z):
    """Bessel function of the first kind ``J_nu(z)``.

    Real ``z >= 0`` gives a real result.  Negative or complex ``z`` uses the
    principal branch of ``z**nu`` and returns complex values.
    """
    nu = _check_order(nu)
    arr = _as_array(z)
    if not np.iscomplexobj(arr) and np.all(arr >= 0):
        x = arr.astype(float)
        out = np.empty_like(x)
        small = x <= SERIES_RADIUS
        if small.any():
            xs = x[small]
            out[small] = _g_series(nu, xs) * xs**nu if nu != 0 else _g_series(nu, xs)
        if (~small).any():
            out[~small] = _j_hankel(nu, x[~small])
        return _out(out, z)
    zc = arr.astype(complex)
    if np.any(np.abs(zc) > SERIES_RADIUS) and np.iscomplexobj(arr):
        raise UnsupportedRegimeError(
            f"complex Bessel arguments need |z| <= {SERIES_RADIUS}"
        )
    g = np.asarray(bessel_g(nu, arr))
    with np.errstate(divide="ignore", invalid="ignore"):
        power = np.where(zc == 0, 1.0 if nu == 0 else 0.0, zc**nu)
    return _out(g * power, z)


def bessel_jp(nu, x):
    """Derivative ``J_nu'(x)`` for real ``x > 0``."""
    nu = _check_order(nu)
    arr = _as_array(x).astype(float)
    if np.any(arr <= 0):
        raise DomainError("bessel_jp needs x > 0")
    out = nu / arr * np.asarray(bessel_j(nu, arr)) - np.asarray(bessel_j(nu + 1.0, arr))
    return _out(out, x)


def bessel_j_zeros(nu, count):
    """First ``count`` positive zeros of ``J_nu``, in increasing order."""
    nu = _check_order(nu)
    count = int(count)
    if count < 1 or count > 10_000:
        raise DomainError("count must lie in [1, 10000]")
    # zeros are spaced by roughly pi; a step of pi/20 cannot skip one
    hi = (count + 0.5 * abs(nu) + 2.0) * math.pi + 10.0
    grid = np.arange(1e-3, hi, math.pi / 20.0)
    vals = np.asarray(bessel_g(nu, grid))
    idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]
    if len(idx) < count:  # pragma: no cover - grid is sized to overshoot
        raise NumericError(f"located only {len(idx)} sign changes for {count} zeros")

    lo = grid[idx[:count]].copy()
    hi_ = grid[idx[:count] + 1].copy()
    f_lo = np.asarray(bessel_g(nu, lo))
    # vectorised bisection over all brackets at once
    for _ in range(80):
        width = hi_ - lo
        if np.all(width <= 1e-14 * np.maximum(1.0, hi_)):
            break
        mid = 0.5 * (lo + hi_)
        f_mid = np.asarray(bessel_g(nu, mid))
        left = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(left, mid, lo)
        f_lo = np.where(left, f_mid, f_lo)
        hi_ = np.where(left, hi_, mid)
    bad = np.nonzero(hi_ - lo > 1e-12 * np.maximum(1.0, hi_))[0]
    if len(bad):
        raise NumericError(f"bracket for zero index {bad[0] + 1} did not converge")
    zeros = 0.5 * (lo + hi_)
    return zeros


# --- kernels -----------------------------------------------------------------


def _check_alpha(alpha):
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= -1.0:
        raise DomainError(f"alpha must exceed -1, got {alpha!r}")
    return alpha


def _check_variant(variant):
    if variant not in KERNEL_VARIANTS:
        raise DomainError(f"variant must be one of {KERNEL_VARIANTS}, got {variant!r}")
    return variant


def _split_kernel(phi_fn, b_fn, a, b):
    """Evaluate (phi(a)B(b) - phi(b)B(a)) / (2(a-b)) with a confluent branch.

    ``phi_fn(x, order)`` and ``b_fn(x, order)`` return the ``order``-th
    derivative at ``x``.  Near the diagonal a symmetric Taylor expansion
    around the midpoint is used (exact through O(h^2)).
    """
    a, b = np.broadcast_arrays(a, b)
    dtype = np.result_type(a, b, float)
    out = np.empty(a.shape, dtype=dtype)
    near = np.abs(a - b) < CONFLUENT_REL * np.maximum(1.0, np.abs(a))
    far = ~near
    if far.any():
        af, bf = a[far], b[far]
        num = phi_fn(af, 0) * b_fn(bf, 0) - phi_fn(bf, 0) * b_fn(af, 0)
        out[far] = num / (2.0 * (af - bf))
    if near.any():
        m = 0.5 * (a[near] + b[near])
        h = 0.5 * (a[near] - b[near])
        p = [phi_fn(m, k) for k in range(4)]
        q = [b_fn(m, k) for k in range(4)]
        d0 = 0.5 * (p[1] * q[0] - p[0] * q[1])
        d2 = (p[3] * q[0] - 3.0 * p[2] * q[1] + 3.0 * p[1] * q[2] - p[0] * q[3]) / 12.0
        out[near] = d0 + h * h * d2
    return out


def _L_entire(alpha, a, b):
    nu_p = 0.5 * (alpha + 1.0)
    nu_m = 0.5 * (alpha - 1.0)

    def G(x, k):
        return np.asarray(bessel_g(nu_p + k, x))

    # derivatives of A = g_{nu+} and B = g_{nu-} via g_nu' = -x g_{nu+1}
    def phi(x, order):
        if order == 0:
            return x * G(x, 0)
        if order == 1:
            return G(x, 0) - x * x * G(x, 1)
        if order == 2:
            return -3.0 * x * G(x, 1) + x**3 * G(x, 2)
        return -3.0 * G(x, 1) + 6.0 * x * x * G(x, 2) - x**4 * G(x, 3)

    def bfun(x, order):
        if order == 0:
            return np.asarray(bessel_g(nu_m, x))
        if order == 1:
            return -x * G(x, 0)
        if order == 2:
            return -G(x, 0) + x * x * G(x, 1)
        return 3.0 * x * G(x, 1) - x**3 * G(x, 2)

    return _split_kernel(phi, bfun, a, b)


def _h(nu, a):
    """h_nu(a) = g_nu(sqrt(a)), entire in a."""
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return np.asarray(bessel_g(nu, np.sqrt(a)))
    out = np.empty(a.shape, dtype=float)
    pos = a >= 0
    if pos.any():
        out[pos] = bessel_g(nu, np.sqrt(a[pos]))
    if (~pos).any():
        root = 1j * np.sqrt(-a[~pos])
        out[~pos] = np.real(np.asarray(bessel_g(nu, root)))
    return out


def _J_entire(alpha, a, b):
    def H(x, k):
        return _h(alpha + k, x)

    # h_nu'(a) = -h_{nu+1}(a) / 2
    def phi(x, order):
        if order == 0:
            return x * H(x, 1)
        if order == 1:
            return H(x, 1) - 0.5 * x * H(x, 2)
        if order == 2:
            return -H(x, 2) + 0.25 * x * H(x, 3)
        return 0.75 * H(x, 3) - 0.125 * x * H(x, 4)

    def bfun(x, order):
        return (-0.5) ** order * H(x, order)

    return _split_kernel(phi, bfun, a, b)


def kernel_L(alpha, a, b=None, variant="entire"):
    """Bulk universality kernel L_alpha (``b=None`` gives the diagonal).

    ``variant="entire"`` accepts real arguments of any size and complex
    arguments with modulus at most 12.  ``variant="raw"`` implements the
    three-case piecewise definition and needs real arguments.
    """
    alpha = _check_alpha(alpha)
    _check_variant(variant)
    diag = b is None
    if diag:
        b = a
    aa, bb = _as_array(a), _as_array(b)
    if variant == "entire":
        return _out(_L_entire(alpha, aa, bb), aa.ndim == 0 and bb.ndim == 0)
    if np.iscomplexobj(aa) or np.iscomplexobj(bb):
        raise DomainError("raw kernel_L needs real arguments")
    return _out(_L_raw(alpha, aa.astype(float), bb.astype(float)),
                aa.ndim == 0 and bb.ndim == 0)


def _L_raw(alpha, a, b):
    a, b = np.broadcast_arrays(a, b)
    nu_p, nu_m = 0.5 * (alpha + 1.0), 0.5 * (alpha - 1.0)
    # third case of the definition: reflect into a >= 0
    flip = a < 0
    a = np.where(flip, -a, a)
    b = np.where(flip, -b, b)
    out = np.empty(a.shape)
    near = np.abs(a - b) < CONFLUENT_REL * np.maximum(1.0, np.abs(a))
    same = (b >= 0) & ~near
    cross = b < 0
    with np.errstate(divide="ignore", invalid="ignore"):
        if same.any():
            x, y = a[same], b[same]
            jp_x, jm_x = np.asarray(bessel_j(nu_p, x)), np.asarray(bessel_j(nu_m, x))
            jp_y, jm_y = np.asarray(bessel_j(nu_p, y)), np.asarray(bessel_j(nu_m, y))
            out[same] = np.sqrt(x * y) / (2.0 * (x - y)) * (jp_x * jm_y - jp_y * jm_x)
        if cross.any():
            x, y = a[cross], -b[cross]
            jp_x, jm_x = np.asarray(bessel_j(nu_p, x)), np.asarray(bessel_j(nu_m, x))
            jp_y, jm_y = np.asarray(bessel_j(nu_p, y)), np.asarray(bessel_j(nu_m, y))
            out[cross] = np.sqrt(x * y) / (2.0 * (x + y)) * (jp_x * jm_y + jp_y * jm_x)
        conf = near & (b >= 0)
        if conf.any():
            x, y = a[conf], b[conf]
            scale = np.abs(x) ** (0.5 * alpha) * np.abs(y) ** (0.5 * alpha)
            out[conf] = _L_entire(alpha, x, y) * scale
    return out


def kernel_J(alpha, a, b=None, variant="entire"):
    """Hard-edge Bessel kernel J_alpha (``b=None`` gives the diagonal).

    The entire variant is ``J_alpha(a, b) / (a^{alpha/2} b^{alpha/2})`` and is
    finite at the origin.  The raw variant needs ``a, b > 0``.
    """
    alpha = _check_alpha(alpha)
    _check_variant(variant)
    diag = b is None
    if diag:
        b = a
    aa, bb = _as_array(a), _as_array(b)
    like = aa.ndim == 0 and bb.ndim == 0
    if variant == "entire":
        if not np.iscomplexobj(aa) and not np.iscomplexobj(bb):
            if np.any(aa < -SERIES_RADIUS**2) or np.any(bb < -SERIES_RADIUS**2):
                raise UnsupportedRegimeError("kernel_J entire needs a, b >= -144")
        return _out(_J_entire(alpha, aa, bb), like)
    if np.iscomplexobj(aa) or np.iscomplexobj(bb) or np.any(aa <= 0) or np.any(bb <= 0):
        raise DomainError("raw kernel_J needs real a, b > 0")
    return _out(_J_raw(alpha, aa.astype(float), bb.astype(float)), like)


def _J_raw(alpha, a, b):
    a, b = np.broadcast_arrays(a, b)
    out = np.empty(a.shape)
    near = np.abs(a - b) < CONFLUENT_REL * np.maximum(1.0, np.abs(a))
    far = ~near
    if far.any():
        x, y = a[far], b[far]
        sx, sy = np.sqrt(x), np.sqrt(y)
        jx, jy = np.asarray(bessel_j(alpha, sx)), np.asarray(bessel_j(alpha, sy))
        dx, dy = np.asarray(bessel_jp(alpha, sx)), np.asarray(bessel_jp(alpha, sy))
        out[far] = (jx * sy * dy - jy * sx * dx) / (2.0 * (x - y))
    if near.any():
        x, y = a[near], b[near]
        out[near] = _J_entire(alpha, x, y) * x ** (0.5 * alpha) * y ** (0.5 * alpha)
    return out


def kernel_J_origin(alpha):
    """Closed form of the entire hard-edge kernel at (0, 0)."""
    alpha = _check_alpha(alpha)
    return 1.0 / (2.0 ** (2 * alpha + 2) * gamma_fn(alpha + 1.0) * gamma_fn(alpha + 2.0))


def kernel_L_origin(alpha):
    """Closed form of the entire bulk kernel at (0, 0)."""
    alpha = _check_alpha(alpha)
    return 2.0 ** (-(alpha + 1.0)) / (
        gamma_fn(0.5 * (alpha + 3.0)) * gamma_fn(0.5 * (alpha + 1.0))
    )


def cardinal_series(alpha, center, z, truncation):
    """Truncated cardinal (sampling) series of ``s -> kernel_L(alpha, center, s)``.

    The nodes are the zeros ``+-j_k`` of ``J_{(alpha-1)/2}``, ``k = 1..truncation``.
    """
    alpha = _check_alpha(alpha)
    truncation = int(truncation)
    if truncation < 1:
        raise DomainError("truncation must be a positive integer")
    j = bessel_j_zeros(0.5 * (alpha - 1.0), truncation)
    nodes = np.concatenate([-j[::-1], j])
    samples = np.asarray(kernel_L(alpha, center, nodes))
    norms = np.asarray(kernel_L(alpha, nodes))
    zz = _as_array(z)
    basis = np.asarray(kernel_L(alpha, nodes[:, None], np.atleast_1d(zz)[None, :]))
    total = (samples / norms) @ basis
    return _out(total.reshape(zz.shape) if zz.ndim else total[0], z)
