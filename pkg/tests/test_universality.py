import csv
import io
import json
import math

import numpy as np
import pytest

from jacobiuniv.acceptance import two_band_measure, two_band_system
from jacobiuniv.errors import DomainError, PreconditionError
from jacobiuniv.measure import make_model_bulk, make_model_edge
from jacobiuniv.orthopoly import jacobi_recurrence, lanczos_recurrence
from jacobiuniv.potential import IntervalSystem, equilibrium_density
from jacobiuniv.universality import (CSV_HEADER, ScanConfig, check_markov_stieltjes,
                                     check_nevai_bounds, check_reproducing, mass_between,
                                     rate_fit, scan_bulk, scan_edge, zero_spacing_report)

ARCSINE = equilibrium_density(IntervalSystem(((-1.0, 1.0),)))


def test_rate_fit_exact():
    assert rate_fit([(n, 3.0 / n) for n in (10, 20, 40, 80)]) == pytest.approx(-1.0)
    with pytest.raises(DomainError):
        rate_fit([(1, 1.0), (2, 0.5)])
    with pytest.raises(DomainError):
        rate_fit([(1, 1.0), (2, 0.0), (4, 0.1)])


def test_bulk_lambda_scan(bulk1):
    mu, table = bulk1
    cfg = ScanConfig(mu, 0.0, 1.0, (-1.0, 0.0, 2.0), (128, 256, 512, 1024), "bulk_lambda")
    rep = scan_bulk(cfg, table, ARCSINE)
    assert rep.constants["omega"] == pytest.approx(1 / math.pi)
    assert rep.positivity_ok()
    assert rep.max_rel_err(1024) < rep.max_rel_err(128) and rep.max_rel_err(1024) < 0.01
    assert -1.6 <= rep.fitted_order <= -0.6
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert tuple(rows[0]) == CSV_HEADER and len(rows) == 13


def test_bulk_ratio_scan_sine_at_alpha0(legendre):
    cfg = ScanConfig(make_model_bulk(0.0), 0.0, 0.0, (0.5, 1.5), (1024,), "bulk_ratio",
                     b_grid=(-1.0,))
    rep = scan_bulk(cfg, legendre, ARCSINE)
    for r in rep.rows:
        d = r[1] - r[2]
        assert r[4] == pytest.approx(math.sin(d) / d, abs=1e-10)
        assert r[5] < 2e-3
    assert rep.summary()["notes"]


def test_edge_lambda_scan(edge1):
    mu, table = edge1
    cfg = ScanConfig(mu, 1.0, 1.0, (0.0, 1.0, 2.0), (256, 512, 1024), "edge_lambda")
    rep = scan_edge(cfg, table, ARCSINE)
    assert rep.constants["M"] == pytest.approx(1.0)
    assert rep.max_rel_err(1024) <= 0.02
    assert rep.max_rel_err(1024) < rep.max_rel_err(256)


def test_edge_ratio_scan_with_eta(edge1):
    mu, table = edge1
    cfg = ScanConfig(mu, 1.0, 1.0, (0.5, 2.0), (512, 1024), "edge_ratio", eta=True)
    rep = scan_edge(cfg, table, ARCSINE)
    assert rep.extra_columns == ("eta", "eta_ratio")
    header = rep.to_csv().splitlines()[0].split(",")
    assert header[-2:] == ["eta", "eta_ratio"]
    last = [r for r in rep.rows if r[0] == 1024]
    assert all(abs(r[3] - r[4]) < 0.01 for r in last)
    for r in last:
        assert r[7] == pytest.approx(1 / (2 * 1024**2), rel=0.05)  # eta_n ~ 1/(2 n^2) when M = 1


def test_edge_scan_left_endpoint():
    mu = make_model_edge(0.0)
    table = jacobi_recurrence(0.0, 0.0, 513)
    cfg = ScanConfig(mu, -1.0, 0.0, (0.0, 1.0), (512,), "edge_lambda")
    rep = scan_edge(cfg, table, ARCSINE)
    assert rep.max_rel_err(512) < 0.01


def test_scan_validation(bulk1):
    mu, table = bulk1
    with pytest.raises(DomainError):
        ScanConfig(mu, 0.0, 0.5, (0.0,), (8,), "bulk_lambda")
    with pytest.raises(DomainError):
        ScanConfig(mu, 0.0, 1.0, (0.0,), (8, 8), "bulk_lambda")
    with pytest.raises(DomainError):
        ScanConfig(mu, 0.0, 1.0, (0.0,), (8,), "middle")
    with pytest.raises(PreconditionError):
        scan_bulk(ScanConfig(mu, 0.0, 1.0, (0.0,), (4096,), "bulk_lambda"), table, ARCSINE)
    with pytest.raises(DomainError):
        scan_edge(ScanConfig(mu, 0.0, 1.0, (0.0,), (8,), "edge_lambda"), table, ARCSINE)


def test_two_band_bulk_improves_with_n():
    mu, x0 = two_band_measure(1.0)
    eq = equilibrium_density(two_band_system())
    table = lanczos_recurrence(mu, 513)
    cfg = ScanConfig(mu, x0, 1.0, (0.0,), (64, 128, 256, 512), "bulk_lambda")
    rep = scan_bulk(cfg, table, eq)
    errs = [rep.max_rel_err(n) for n in cfg.n_list]
    assert errs[-1] < errs[0]
    assert errs[-1] <= 0.05


def test_summary_json_is_stable(bulk1):
    mu, table = bulk1
    cfg = ScanConfig(mu, 0.0, 1.0, (0.0, 1.0), (64, 128, 256), "bulk_lambda")
    a = scan_bulk(cfg, table, ARCSINE).summary_json()
    b = scan_bulk(cfg, table, ARCSINE).summary_json()
    assert a == b
    doc = json.loads(a)
    assert doc["mode"] == "bulk_lambda" and doc["pass"] is True


@pytest.mark.parametrize("alpha", [0.0, 1.0])
def test_reproducing_residual_decreases(alpha):
    vals = [check_reproducing(alpha, 0.7, -1.3, r) for r in (25.0, 50.0, 100.0)]
    assert vals[0] > vals[2]
    assert vals[2] < 0.05


def test_markov_stieltjes_and_mass(bulk1):
    mu, table = bulk1
    assert mass_between(mu, -1.0, 1.0) == pytest.approx(1.0, abs=1e-13)
    assert mass_between(mu, 0.0, 0.5) == pytest.approx(0.125, abs=1e-13)
    assert mass_between(mu, 2.0, 3.0) == 0.0
    lower, upper = check_markov_stieltjes(mu, table, 64, 0.2, -2, 3)
    assert lower >= -1e-10 and upper >= -1e-10
    with pytest.raises(PreconditionError):
        check_markov_stieltjes(mu, table, 64, 0.2, 1, 3)


def test_nevai_bounded(bulk1, edge1):
    _, tb = bulk1
    rep = check_nevai_bounds(tb, (64, 256, 1024), np.linspace(-0.9, 0.9, 19), 1.0, "bulk")
    assert 0 < rep.min and rep.spread < 20
    _, te = edge1
    rep = check_nevai_bounds(te, (64, 256, 1024), np.linspace(0.5, 1.0, 11), 1.0, "edge")
    assert 0 < rep.min and rep.spread < 20
    with pytest.raises(DomainError):
        check_nevai_bounds(te, (8,), [0.0], 1.0, "soft")


def test_zero_spacing(legendre):
    rep = zero_spacing_report(legendre, 1024, 0.0, 1 / math.pi, 8)
    assert rep.passed
    assert rep.symmetry_err < 1e-9
    np.testing.assert_allclose(rep.gaps, math.pi, rtol=1e-3)
