import pytest

from zarembapi.calculations.ensemble import BuildEnsemble
from zarembapi.calculations.expsum import (
    ClassifyRegion,
    Region,
    RegionMass,
    RegionParams,
    Spectrum,
    classify,
    partition_grid,
)
from zarembapi.exceptions import ValidationError


@pytest.fixture
def params():
    return RegionParams(N=10**6, gamma=0.125, eps0=0.001, nu=1.5, Q0=10)


def test_scale_boundaries(params):
    assert params.xi1 == pytest.approx(10 ** (6 * 0.257))
    assert params.xi1 == pytest.approx(34.8, rel=1e-2)
    assert params.mid_denominator == pytest.approx(10 ** (6 * 0.13))


def test_worked_example_lands_in_region_five(params):
    assert ClassifyRegion(q=20, K=1, params=params).calculate() is Region.R5
    assert classify(20, -1, params) is Region.R5


def test_each_region_is_reachable(params):
    assert classify(50, 1, params) is Region.R2
    assert classify(20, 40, params) is Region.R1
    assert classify(20, 20, params) is Region.R3
    assert classify(20, 5, params) is Region.R4
    small_q0 = RegionParams(N=10**6, gamma=0.125, eps0=0.001, nu=1.5, Q0=2)
    assert classify(3, 6, small_q0) is Region.R6


def test_lower_boundaries_are_inclusive(params):
    assert classify(20, params.xi1 / 20, params) is Region.R4
    assert classify(20, params.xi1, params) is Region.R1


def test_points_outside_the_arcs(params):
    assert classify(10, 1, params) is Region.OUTSIDE
    assert classify(20, 0.4, params) is Region.OUTSIDE
    assert classify(1001, 0.5, params) is Region.OUTSIDE


def test_region_labels():
    assert Region.R3.label == "3"
    assert Region.OUTSIDE.label == "OUTSIDE"


def test_parameter_validation():
    with pytest.raises(ValidationError):
        RegionParams(N=10**6, gamma=0.125, eps0=0.001, nu=2.5)
    with pytest.raises(ValidationError):
        RegionParams(N=10**6, gamma=0.0, eps0=0.001)


def test_partition_grid_covers_every_point(params):
    counts = partition_grid(params, size=512)
    assert counts["OUTSIDE"] == 0
    assert sum(counts.values()) == 512 * 512
    assert all(counts[label] > 0 for label in ("1", "3", "4", "5"))


def test_region_masses_add_up():
    N = 4000
    histogram = Spectrum(ensemble=BuildEnsemble(alphabet="1,2", N=N).calculate()).calculate()
    params = RegionParams(N=N, gamma=0.1, eps0=0.001, nu=1.5, Q0=10)
    report = RegionMass(histogram=histogram, params=params).calculate()
    assert sum(report.masses.values()) == pytest.approx(report.total)
    assert report.total > 0
    assert all(0.0 <= report.share(label) <= 1.0 for label in report.masses)
    assert report.baseline == pytest.approx(2 * 100 * histogram.total**2 / N)
    assert "region" in report.summary()
