"""Command-line interface: ``jacobiuniv <verb> [options]``.

Exit codes: 0 success, 2 validation error, 3 numeric failure, 4 acceptance
failure (``verify``).  Data output is deterministic; CSV output starts with
one ``#`` comment line describing the run.
"""

import argparse
import json
import re
import sys

import numpy as np

from . import __version__
from .acceptance import SUITES, run_suite
from .cdkernel import christoffel, kernel_cd, kernel_zeros
from .errors import JacobiUnivError, NumericError
from .measure import load_measure
from .orthopoly import recurrence_for
from .potential import (AdmissiblePolynomial, IntervalSystem, density_at_eq, edge_constant,
                        equilibrium_density, inverse_image, inverse_image_density)
from .specfun import kernel_J, kernel_L
from .universality import ScanConfig, fmt, scan_bulk, scan_edge

EXIT_OK, EXIT_INVALID, EXIT_NUMERIC, EXIT_FAILED = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let values such as "-1:1:0.5" or "-3,0,4" through as arguments
        self._negative_number_matcher = re.compile(r"^-\.?\d[\d.eE+\-:,]*$")

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_INVALID)


def parse_grid(text):
    """``lo:hi:step`` (inclusive) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError("grid must be lo:hi:step")
        lo, hi, step = (float(p) for p in parts)
        if step <= 0 or hi < lo:
            raise argparse.ArgumentTypeError("grid needs step > 0 and hi >= lo")
        count = int(round((hi - lo) / step)) + 1
        return tuple(float(lo + i * step) for i in range(count))
    return tuple(float(p) for p in text.split(",") if p.strip())


def parse_ints(text):
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def parse_floats(text):
    try:
        return tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None


def build_parser():
    p = _Parser(prog="jacobiuniv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"jacobiuniv {__version__}")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def common(sp, measure=True):
        if measure:
            sp.add_argument("--measure", required=True, help="measure document (JSON)")
        sp.add_argument("--out", help="output path (default: standard output)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        return sp

    sp = common(sub.add_parser("recur", help="recurrence table of a measure"))
    sp.add_argument("--n", type=int, required=True, help="table size")

    sp = common(sub.add_parser("kernel", help="Christoffel-Darboux or Bessel kernels"), measure=False)
    sp.add_argument("--measure", help="measure document; evaluates K_n(x, y)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--x", type=float)
    sp.add_argument("--y", type=float)
    sp.add_argument("--kind", choices=("cd", "L", "J"), default="cd")
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--a", type=float)
    sp.add_argument("--b", type=float)
    sp.add_argument("--variant", choices=("entire", "raw"), default="entire")

    sp = common(sub.add_parser("christoffel", help="Christoffel function lambda_n"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=float)
    sp.add_argument("--grid", type=parse_grid)

    sp = common(sub.add_parser("equilibrium", help="equilibrium density of the measure's support"))
    sp.add_argument("--at", type=float, help="evaluate omega at this point")
    sp.add_argument("--edge", type=float, help="edge constant M at this endpoint")

    sp = common(sub.add_parser("inverse-image", help="bands of T^{-1}([-1, 1])"), measure=False)
    sp.add_argument("--coeffs", type=parse_floats, required=True,
                    help="ascending coefficients of T, comma separated")
    sp.add_argument("--at", type=float, help="evaluate the equilibrium density here")

    for verb, helptext in (("scan-bulk", "bulk universality scan"),
                           ("scan-edge", "hard-edge universality scan")):
        sp = common(sub.add_parser(verb, help=helptext))
        sp.add_argument("--x", type=float, required=True, help="the point x0")
        sp.add_argument("--alpha", type=float, help="exponent at x0 (default: from the measure)")
        sp.add_argument("--n", type=parse_ints, required=True, help="comma-separated n values")
        sp.add_argument("--grid", type=parse_grid, required=True, help="a grid")
        sp.add_argument("--b-grid", type=parse_grid, help="b grid for ratio mode")
        sp.add_argument("--mode", choices=("lambda", "ratio"), default="lambda")
        if verb == "scan-edge":
            sp.add_argument("--eta", action="store_true", help="add eta_n columns (ratio mode)")

    sp = sub.add_parser("verify", help="run acceptance suites")
    sp.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--alpha", type=parse_floats, help="restrict alpha values")
    sp.add_argument("--nmax", type=int, help="largest n for the model suites")
    sp.add_argument("--out")

    sp = common(sub.add_parser("zeros", help="zeros of psi_n(xi, .) around xi"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--x", type=float, required=True, help="the centre xi")
    sp.add_argument("--window", type=int, default=5)
    return p


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _header(args):
    skip = {"verb", "out", "format"}
    opts = " ".join(f"{k}={_show(v)}" for k, v in sorted(vars(args).items())
                    if k not in skip and v is not None and v is not False)
    return f"# jacobiuniv {__version__} {args.verb} {opts}".rstrip() + "\n"


def _show(v):
    if isinstance(v, tuple):
        return ",".join(_show(x) for x in v)
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def _csv(args, header, rows):
    lines = [",".join(header)] + [",".join(_cell(c) for c in r) for r in rows]
    return _header(args) + "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return fmt(v)


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _single(args, name, value):
    if args.format == "json":
        return _json({name: float(value)})
    return fmt(value) + "\n"


def _table(mu, n):
    return recurrence_for(mu, n + 1)


def cmd_recur(args):
    mu = load_measure(args.measure)
    table = recurrence_for(mu, args.n)
    if args.format == "json":
        return _json({"mass": table.mass, "b": [float(v) for v in table.diag],
                      "a": [float(v) for v in table.offdiag[1:]]})
    return _header(args) + f"# mass={fmt(table.mass)}\n" + table.to_csv()


def cmd_kernel(args):
    if args.kind == "cd":
        if args.measure is None or args.n is None or args.x is None:
            raise JacobiUnivError("kernel --kind cd needs --measure, --n and --x")
        mu = load_measure(args.measure)
        y = args.x if args.y is None else args.y
        return _single(args, "K_n", kernel_cd(_table(mu, args.n), args.n, args.x, y))
    if args.alpha is None or args.a is None:
        raise JacobiUnivError(f"kernel --kind {args.kind} needs --alpha and --a")
    fn = kernel_L if args.kind == "L" else kernel_J
    return _single(args, args.kind, fn(args.alpha, args.a, args.b, variant=args.variant))


def cmd_christoffel(args):
    mu = load_measure(args.measure)
    table = _table(mu, args.n)
    if args.grid is None:
        if args.x is None:
            raise JacobiUnivError("christoffel needs --x or --grid")
        return _single(args, "lambda_n", christoffel(table, args.n, args.x))
    xs = np.array(args.grid)
    lam = np.atleast_1d(christoffel(table, args.n, xs))
    if args.format == "json":
        return _json({"x": list(args.grid), "lambda_n": [float(v) for v in lam]})
    return _csv(args, ("x", "lambda_n"), zip(xs, lam))


def _system_of(mu):
    return IntervalSystem(tuple((iv.lo, iv.hi) for iv in mu.intervals))


def cmd_equilibrium(args):
    eq = equilibrium_density(_system_of(load_measure(args.measure)))
    if args.at is not None:
        return _single(args, "omega", density_at_eq(eq, args.at))
    if args.edge is not None:
        return _single(args, "M", edge_constant(eq, args.edge))
    return _json({"intervals": [list(b) for b in eq.bands], "gap_poly": list(eq.gap_poly),
                  "scale": eq.scale})


def cmd_inverse_image(args):
    T = AdmissiblePolynomial(args.coeffs)
    if args.at is not None:
        return _single(args, "omega", inverse_image_density(T, args.at))
    system = inverse_image(T)
    if args.format == "json":
        return system.to_json()
    return _csv(args, ("k", "lo", "hi"),
                ((k, iv.lo, iv.hi) for k, iv in enumerate(system.intervals)))


def _scan(args, edge):
    mu = load_measure(args.measure)
    sing = mu.singularity_at(args.x)
    alpha = args.alpha if args.alpha is not None else (sing.exponent if sing else 0.0)
    prefix = "edge" if edge else "bulk"
    cfg = ScanConfig(mu, args.x, alpha, args.grid, args.n, f"{prefix}_{args.mode}",
                     b_grid=args.b_grid or (), eta=getattr(args, "eta", False))
    table = recurrence_for(mu, max(cfg.n_list) + 1)
    eq = equilibrium_density(_system_of(mu))
    report = (scan_edge if edge else scan_bulk)(cfg, table, eq)
    if args.format == "json":
        return report.summary_json()
    return _header(args) + report.to_csv()


def cmd_verify(args):
    opts = {}
    if args.alpha:
        opts["alphas"] = args.alpha
    if args.nmax:
        opts["nmax"] = args.nmax
    results = run_suite(args.suite, **opts)
    passed = all(r.passed for r in results)
    text = _json({"suite": args.suite, "pass": passed,
                  "criteria": [r.to_dict() for r in results]})
    return text, passed


def cmd_zeros(args):
    mu = load_measure(args.measure)
    zs = kernel_zeros(_table(mu, args.n), args.n, args.x, args.window)
    ks = range(zs.k_min, zs.k_max + 1)
    if args.format == "json":
        return _json({"center": zs.center, "k": list(ks), "t": [float(v) for v in zs.zeros],
                      "exterior_found": zs.exterior_found})
    return _csv(args, ("k", "t_k"), zip(ks, zs.zeros))


HANDLERS = {
    "recur": cmd_recur, "kernel": cmd_kernel, "christoffel": cmd_christoffel,
    "equilibrium": cmd_equilibrium, "inverse-image": cmd_inverse_image,
    "scan-bulk": lambda a: _scan(a, False), "scan-edge": lambda a: _scan(a, True),
    "zeros": cmd_zeros,
}


def run(argv):
    """Run the CLI on ``argv`` and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.verb == "verify":
            text, passed = cmd_verify(args)
            _emit(text, args.out)
            return EXIT_OK if passed else EXIT_FAILED
        _emit(HANDLERS[args.verb](args), args.out)
    except NumericError as exc:
        sys.stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC
    except (JacobiUnivError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INVALID
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
