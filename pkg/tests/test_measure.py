import json
import math

import numpy as np
import pytest

from jacobiuniv.errors import DomainError, SchemaError
from jacobiuniv.measure import (AlgebraicSingularity, GJMeasure, Interval, density_at,
                                load_measure, make_model_bulk, make_model_edge,
                                measure_to_dict, parse_measure, serialize_measure)


def test_model_measures():
    bulk = make_model_bulk(1.0)
    assert bulk.hull == (-1.0, 1.0)
    assert bulk.singularities == (AlgebraicSingularity(0.0, 1.0),)
    assert bulk.singularity_kind(bulk.singularities[0]) == "interior"
    assert bulk.is_symmetric
    edge = make_model_edge(-0.5)
    assert edge.singularity_kind(edge.singularities[0]) == "edge"
    assert not edge.is_symmetric
    assert make_model_bulk(0.0).singularities == ()


@pytest.mark.parametrize("alpha", [-1.0, -3.0, math.nan, math.inf])
def test_model_rejects_bad_alpha(alpha):
    with pytest.raises(DomainError):
        make_model_bulk(alpha)


def test_density_values():
    mu = make_model_bulk(1.0)
    assert density_at(mu, 0.5) == pytest.approx(0.5)
    assert density_at(mu, 0.0) == 0.0
    assert density_at(make_model_bulk(-0.5), 0.0) == math.inf
    with pytest.raises(DomainError):
        density_at(mu, 1.5)


def test_local_factor_drops_own_singularity():
    mu = GJMeasure(((-1, 1),), ((0.0, 2.0), (0.5, -0.5)), ("poly", (2.0, 1.0)))
    w = mu.local_factor(0.5)
    assert w == pytest.approx((2.0 + 0.5) * 0.5**2)


def test_poly_smooth_factor_must_be_positive():
    GJMeasure(((-1, 1),), (), ("poly", (2.0, 1.0)))
    with pytest.raises(SchemaError):
        GJMeasure(((-1, 1),), (), ("poly", (0.0, 1.0)))
    with pytest.raises(SchemaError):
        GJMeasure(((-1, 1),), (), ("poly", (-1.0, 0.0, 0.1)))


@pytest.mark.parametrize("doc, field", [
    ({"intervals": []}, "intervals"),
    ({"intervals": [[1, 0]]}, "intervals"),
    ({"intervals": [[-1, 1], [0.5, 2]]}, "intervals"),
    ({"intervals": [[-1, 1]], "singularities": [{"x0": 3, "alpha": 1}]}, "singularities.x0"),
    ({"intervals": [[-1, 1]], "singularities": [{"x0": 0, "alpha": -1}]}, "singularities.alpha"),
    ({"intervals": [[-1, 1]], "singularities": [{"x0": 0}]}, "singularities"),
    ({"intervals": [[-1, 1]], "smooth": {"const": 0}}, "smooth.const"),
    ({"intervals": [[-1, 1]], "smooth": {"spline": [1]}}, "smooth"),
    ({"intervals": [[-1, 1]], "extra": 1}, "extra"),
    ({"intervals": [[-1, True]]}, "intervals"),
])
def test_schema_errors_name_the_field(doc, field):
    with pytest.raises(SchemaError) as info:
        parse_measure(doc)
    assert info.value.field == field


def test_invalid_json():
    with pytest.raises(SchemaError):
        parse_measure("{not json")


def test_roundtrip(tmp_path):
    doc = {"intervals": [[-1, -0.5], [0.5, 1]],
           "singularities": [{"x0": 0.75, "alpha": 1.5}],
           "smooth": {"poly": [3.0, 0.5]}}
    mu = parse_measure(json.dumps(doc))
    assert measure_to_dict(mu) == {
        "intervals": [[-1.0, -0.5], [0.5, 1.0]],
        "singularities": [{"x0": 0.75, "alpha": 1.5}],
        "smooth": {"poly": [3.0, 0.5]}}
    path = tmp_path / "m.json"
    path.write_text(serialize_measure(mu))
    again = load_measure(path)
    assert again == mu
    assert not again.in_support(0.0) and again.in_support(0.5)


def test_weight_vectorised():
    mu = make_model_edge(1.0)
    x = np.linspace(-1, 1, 5)
    np.testing.assert_allclose(mu.weight(x), np.abs(x - 1))


def test_interval_contains():
    iv = Interval(0.0, 1.0)
    assert iv.contains(0.0) and not iv.contains(0.0, closed=False)
