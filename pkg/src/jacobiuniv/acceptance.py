"""Named acceptance suites, shared by ``jacobiuniv verify`` and the test suite.

Every suite returns a :class:`CriterionResult`; tolerances are fixed here.
Independent oracles (``math.gamma``, ``math.sin``, quadrature-based
Christoffel minimisation) are used wherever a closed form exists.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .cdkernel import (christoffel, christoffel_oracle, kernel_cd, kernel_direct,
                       kernel_zeros)
from .measure import AlgebraicSingularity, GJMeasure, make_model_bulk, make_model_edge
from .orthopoly import (jacobi_recurrence, lanczos_recurrence, poly_zeros, recurrence_for,
                        symmetric_singular_recurrence)
from .potential import (AdmissiblePolynomial, IntervalSystem, chebyshev_fixture,
                        density_at_eq, edge_constant, equilibrium_density, inverse_image,
                        inverse_image_density)
from .specfun import kernel_J, kernel_L
from .universality import (ScanConfig, check_markov_stieltjes, check_reproducing, rate_fit,
                           scan_bulk, zero_spacing_report)

ALPHAS = (-0.5, 0.0, 0.3, 1.0, 2.5)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number:2d} {self.name} ({self.seconds:.2f}s)"

    def to_dict(self):
        return {"criterion": self.number, "name": self.name, "pass": self.passed,
                "seconds": round(self.seconds, 3), "details": _plain(self.details)}


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _timed(number, name):
    def wrap(fn):
        def run(**opts):
            t0 = time.perf_counter()
            passed, details = fn(**opts)
            return CriterionResult(number, name, bool(passed), details, time.perf_counter() - t0)
        run.number = number
        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run
    return wrap


def two_band_system():
    return inverse_image(chebyshev_fixture(0.5))


def two_band_measure(alpha):
    """``|x - x0|^alpha`` on the two-band fixture, ``x0`` the right band's midpoint."""
    system = two_band_system()
    right = system.intervals[1]
    x0 = 0.5 * (right.lo + right.hi)
    sings = (AlgebraicSingularity(x0, alpha),) if alpha != 0 else ()
    return GJMeasure(tuple((iv.lo, iv.hi) for iv in system.intervals), sings), x0


# -- criteria --------------------------------------------------------------------


@_timed(1, "sinc reduction of the bulk kernel at alpha = 0")
def sinc(**_):
    t0 = time.perf_counter()
    g = np.arange(-20.0, 20.0 + 0.25, 0.5)
    a, b = np.meshgrid(g, g, indexing="ij")
    mask = a != b
    a, b = a[mask], b[mask]
    got = np.asarray(kernel_L(0.0, a, b))
    ref = np.array([math.sin(d) / (math.pi * d) for d in (a - b)])
    err = float(np.max(np.abs(got - ref)))
    secs = time.perf_counter() - t0
    return err <= 1e-10 and secs < 1.0, {"max_err": err, "runtime": secs}


@_timed(2, "kernel origin values")
def origin(alphas=ALPHAS, **_):
    rows = {}
    ok = True
    for al in alphas:
        j_ref = 1.0 / (2.0 ** (2 * al + 2) * math.gamma(al + 1) * math.gamma(al + 2))
        l_ref = 2.0 ** (-(al + 1)) / (math.gamma((al + 3) / 2) * math.gamma((al + 1) / 2))
        ej = abs(kernel_J(al, 0.0, 0.0) - j_ref)
        el = abs(kernel_L(al, 0.0) - l_ref)
        rows[al] = {"J_err": ej, "L_err": el}
        ok &= ej <= 1e-10 and el <= 1e-10
    if 0.0 in alphas:
        ok &= abs(kernel_J(0.0, 0.0, 0.0) - 0.25) <= 1e-10
        ok &= abs(kernel_L(0.0, 0.0) - 1 / math.pi) <= 1e-10
    return ok, rows


MODEL_NS = (128, 256, 512, 1024)


@_timed(3, "model bulk kernel limit and O(1/n) rate")
def model_bulk(alphas=(-0.5, 1.0), nmax=1024, **_):
    t0 = time.perf_counter()
    ns = [n for n in MODEL_NS if n <= nmax]
    g = np.arange(-5.0, 5.0 + 0.25, 0.5)
    a, b = np.meshgrid(g, g, indexing="ij")
    a, b = a.ravel(), b.ravel()
    ok = len(ns) >= 3
    out = {}
    for al in alphas:
        table = symmetric_singular_recurrence(al, max(ns) + 1)
        target = np.asarray(kernel_L(al, a, b))
        errs = []
        for n in ns:
            kn = kernel_cd(table, n, a / n, b / n) / n ** (al + 1)
            errs.append(float(np.max(np.abs(kn - target))))
        scale = float(np.max(np.abs(target)))
        slope = rate_fit(list(zip(ns, errs))) if len(ns) >= 3 else None
        good = (errs[-1] <= 0.02 * scale and slope is not None and -1.6 <= slope <= -0.6)
        out[al] = {"n": ns, "errors": errs, "max_kernel": scale, "slope": slope, "pass": good}
        ok &= good
    secs = time.perf_counter() - t0
    out["runtime"] = secs
    return ok and secs < 60.0, out


@_timed(4, "model hard-edge Christoffel limit and Legendre anchor")
def model_edge(alphas=(-0.5, 1.0), nmax=1024, **_):
    n = nmax
    out = {}
    ok = True
    for al in alphas:
        table = jacobi_recurrence(al, 0.0, n + 1)
        devs = {}
        for a in (0.0, 0.5, 1.0, 2.0):
            lam = christoffel(table, n, 1.0 - a / (2.0 * n * n))
            devs[a] = abs(n ** (2 * al + 2) * lam * 2 ** (al + 1) * kernel_J(al, a) - 1.0)
        out[al] = devs
        ok &= max(devs.values()) <= 0.02
    leg = jacobi_recurrence(0.0, 0.0, n + 1)
    anchor = max(abs(m * m * christoffel(leg, m, 1.0) - 2.0) for m in range(1, n + 1))
    out["legendre_anchor_max_err"] = anchor
    return ok and anchor <= 1e-12, out


@_timed(5, "bulk Christoffel limit on the two-band set")
def two_band(alphas=(1.0, -0.5), n=512, **_):
    t0 = time.perf_counter()
    eq = equilibrium_density(two_band_system())
    out = {}
    ok = True
    for al in alphas:
        mu, x0 = two_band_measure(al)
        table = lanczos_recurrence(mu, n + 1)
        cfg = ScanConfig(mu, x0, al, (-2.0, -1.0, 0.0, 1.0, 2.0), (n,), "bulk_lambda")
        rep = scan_bulk(cfg, table, eq)
        rel = {r[1]: r[6] for r in rep.rows}
        good = rel[0.0] <= 0.05 and all(rel[a] <= 0.08 for a in (-2.0, -1.0, 1.0, 2.0))
        out[al] = {"x0": x0, "omega": rep.constants["omega"], "rel_err": rel, "pass": good}
        ok &= good
    secs = time.perf_counter() - t0
    out["runtime"] = secs
    return ok and secs < 120.0, out


def _band_grid(system, count):
    bands = system.merged()
    per = count // len(bands)
    pts = []
    for i, (lo, hi) in enumerate(bands):
        m = per if i < len(bands) - 1 else count - per * (len(bands) - 1)
        pts.extend(lo + (hi - lo) * (np.arange(m) + 0.5) / m)
    return pts


@_timed(6, "equilibrium density identities")
def potential(**_):
    arc = equilibrium_density(IntervalSystem(((-1.0, 1.0),)))
    e0 = abs(density_at_eq(arc, 0.0) - 1 / math.pi)
    fixtures = {"two_band": chebyshev_fixture(0.5),
                "three_band": AdmissiblePolynomial((0.0, -3.6, 0.0, 4.8))}
    cons = {}
    for name, T in fixtures.items():
        system = inverse_image(T)
        eq = equilibrium_density(system)
        cons[name] = max(abs(inverse_image_density(T, x) - density_at_eq(eq, x))
                         for x in _band_grid(system, 100))
    m1 = abs(edge_constant(arc, 1.0) - 1.0)
    t2 = AdmissiblePolynomial((-1.0, 0.0, 2.0))
    m_t2 = edge_constant(equilibrium_density(inverse_image(t2)), 1.0)
    deriv = abs(abs(t2.derivative(1.0)) - t2.degree ** 2 * m_t2 ** 2)
    ok = e0 <= 1e-14 and all(v <= 1e-8 for v in cons.values()) and m1 <= 1e-10 and deriv <= 1e-10
    return ok, {"arcsine_at_0_err": e0, "inverse_image_consistency": cons,
                "M_unit_interval_err": m1, "T2_derivative_identity_err": deriv}


@_timed(7, "reproducing identity of the bulk kernel")
def reproducing(**_):
    res = {r: check_reproducing(1.0, 0.7, -1.3, r) for r in (50.0, 100.0, 200.0)}
    vals = [res[50.0], res[100.0], res[200.0]]
    ok = vals[0] > vals[1] > vals[2] and vals[2] <= 1e-2
    return ok, {"residuals": res}


@_timed(8, "Markov-Stieltjes sandwich")
def markov_stieltjes(**_):
    cases = {
        "legendre_n8": (make_model_bulk(0.0), jacobi_recurrence(0.0, 0.0, 9), 8, 0.0, [(-2, 2), (-1, 1), (-3, 1)]),
        "bulk_alpha1_n64": (make_model_bulk(1.0), symmetric_singular_recurrence(1.0, 65), 64, 0.1,
                            [(-1, 1), (-3, 3), (-5, 2), (-8, 8)]),
    }
    out = {}
    ok = True
    for name, (mu, table, n, xi, windows) in cases.items():
        slacks = {f"{l},{k}": check_markov_stieltjes(mu, table, n, xi, l, k) for l, k in windows}
        worst = min(min(s) for s in slacks.values())
        out[name] = {"slacks": slacks, "min_slack": worst}
        ok &= worst >= -1e-10
    return ok, out


def _oracle_fixtures():
    two, _ = two_band_measure(1.0)
    return {
        "legendre": (make_model_bulk(0.0), [-0.9, -0.3, 0.0, 0.55, 1.0]),
        "bulk_alpha1": (make_model_bulk(1.0), [-0.7, 0.0, 0.3, 0.99]),
        "edge_alpha1": (make_model_edge(1.0), [-1.0, -0.2, 0.6, 0.999]),
        "two_band": (two, [-0.95, -0.8, 0.75, 0.8535533905932737, 0.97]),
    }


@_timed(9, "oracle equivalences for Christoffel functions and kernels")
def oracle(**_):
    rng = np.random.default_rng(20240611)
    out = {}
    ok = True
    for name, (mu, xs) in _oracle_fixtures().items():
        table = recurrence_for(mu, 65)
        rel = max(abs(christoffel(table, n, x) / christoffel_oracle(mu, n, x) - 1.0)
                  for n in range(1, 13) for x in xs)
        lo, hi = mu.hull
        x = rng.uniform(lo, hi, 200)
        y = np.concatenate([rng.uniform(lo, hi, 100), x[100:] + 1e-6])
        worst = 0.0
        for n in (1, 5, 16, 64):
            cd = kernel_cd(table, n, x, y)
            di = kernel_direct(table, n, x, y)
            scale = np.sqrt(kernel_direct(table, n, x, x) * kernel_direct(table, n, y, y))
            worst = max(worst, float(np.max(np.abs(cd - di) / scale)))
        out[name] = {"christoffel_rel_err": rel, "cd_vs_direct": worst}
        ok &= rel <= 1e-9 and worst <= 1e-9
    return ok, out


def _interlaces(kz, pz):
    """Exactly one zero of p_n strictly between consecutive kernel zeros."""
    counts = np.diff(np.searchsorted(pz, kz))
    hits = np.isin(kz, pz)
    return bool(np.all(counts == 1)) and not bool(np.any(hits))


@_timed(10, "kernel zero interlacing and spacing bands")
def zeros(n=512, **_):
    out = {}
    ok = True
    for al in (0.0, 1.0):
        table = symmetric_singular_recurrence(al, n + 1)
        pz = poly_zeros(table, n)
        inter = {}
        for xi in (0.0, 0.1, 0.37):
            kz = kernel_zeros(table, n, xi, 10).zeros
            inter[xi] = _interlaces(kz, pz)
        rep = zero_spacing_report(table, n, 0.0, 1 / math.pi, 10)
        entry = {"interlacing": inter, "max_gap": rep.max_gap,
                 "min_double_gap": rep.min_double_gap, "symmetry_err": rep.symmetry_err}
        good = all(inter.values()) and rep.passed and rep.symmetry_err <= 1e-9
        if al == 0.0:
            dev = float(np.max(np.abs(rep.gaps / math.pi - 1.0)))
            entry["sinc_spacing_dev"] = dev
            good &= dev <= 0.10
        entry["pass"] = good
        out[al] = entry
        ok &= good
    return ok, out


SUITES = {
    "sinc": sinc,
    "origin": origin,
    "model-bulk": model_bulk,
    "model-edge": model_edge,
    "two-band": two_band,
    "potential": potential,
    "reproducing": reproducing,
    "markov-stieltjes": markov_stieltjes,
    "oracle": oracle,
    "zeros": zeros,
}


def run_suite(name, **opts):
    """Run one suite by name, or every suite for ``"all"``; returns a list of results."""
    if name == "all":
        return [fn(**opts) for fn in SUITES.values()]
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'") from None
    return [fn(**opts)]
