import math
from fractions import Fraction

import pytest

import dsos


def test_normalization():
    assert dsos.normalization_constant(2) == Fraction(1, 12)
    assert dsos.normalization_constant(3) == Fraction(1, 8640)


def test_coordinates_round_trip():
    grid = [[0.1, 0.4], [0.3, 0.8]]
    lines = dsos.grid_to_lines(grid)
    assert lines == [[0.3], [0.8, 0.1], [0.4]]
    assert dsos.lines_to_grid(2, lines) == grid
    assert not dsos.validate_grid([[0.4, 0.1], [0.3, 0.8]])


def test_sampler_is_deterministic():
    a = dsos.sample_config(5, "exp", seed=3, index=7)
    b = dsos.sample_config(5, "exp", seed=3, index=7)
    assert a == b
    assert dsos.validate_grid(a)


def test_kernel_and_gap():
    ctx = dsos.KernelContext(2)
    assert ctx.density(1, 0.3) == pytest.approx(6 * 0.3 * 0.7)
    gap = ctx.gap_probability([(2, 0.7)])
    assert gap["value"] == pytest.approx(0.7 ** 4)


def test_edge_functions():
    assert dsos.airy_ai(0.0) == pytest.approx(0.355028053887817)
    assert dsos.tracy_widom_cdf(0.0) == pytest.approx(0.969372828355, abs=1e-10)
    assert dsos.shape_height(0.3, 0.7) == pytest.approx(0.5)
    frame = dsos.scaling_frame(0.5, 100)
    assert frame["sigma"] == pytest.approx(0.165225269, rel=1e-8)


def test_errors_map_to_python():
    with pytest.raises(dsos.DomainError):
        dsos.scaling_frame(1.0, 10)
    with pytest.raises(dsos.InvalidInput):
        dsos.KernelContext(0)
    assert issubclass(dsos.DomainError, dsos.Error)


def test_run_experiment():
    m = dsos.run_experiment({"kind": "corner", "n": 3, "samples": 200, "seed": 5, "workers": 1})
    assert m["summary"]["distributions"][0]["limit"] == "exponential"
    assert math.isfinite(m["summary"]["distributions"][0]["ks_limit"])
