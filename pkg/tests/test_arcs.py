import math
import random

import pytest

from zarembapi.calculations.ensemble import BuildEnsemble
from zarembapi.calculations.expsum import (
    ArcCoverCheck,
    DirichletDecompose,
    DiscretizedAngle,
    LipschitzCheck,
    Spectrum,
    coprime_numerators,
    decompose,
)
from zarembapi.exceptions import ValidationError


@pytest.fixture(scope="module")
def histogram():
    ensemble = BuildEnsemble(alphabet="1,2", N=1000).calculate()
    return Spectrum(ensemble=ensemble).calculate()


def test_rational_angle_has_zero_offset():
    point = DirichletDecompose(theta=1 / 3, N=100).calculate()
    assert (point.a, point.q) == (1, 3)
    assert point.K == pytest.approx(0.0, abs=1e-9)


def test_endpoints():
    assert (decompose(0.0, 100).a, decompose(0.0, 100).q) == (0, 1)
    assert (decompose(1.0, 100).a, decompose(1.0, 100).q) == (1, 1)
    with pytest.raises(ValidationError):
        DirichletDecompose(theta=1.5, N=100)


def test_decomposition_bounds():
    rng = random.Random(7)
    N = 10**4
    root = math.sqrt(N)
    for _ in range(200):
        theta = rng.random()
        point = decompose(theta, N)
        assert math.gcd(point.a, point.q) == 1
        assert 1 <= point.q <= root
        assert abs(point.K) <= root / point.q + 1e-9
        assert point.theta == pytest.approx(theta, abs=1e-12)
        assert point.K_bar >= 1.0


def test_discretized_angle():
    point = decompose(0.123456, 10**4)
    angle = DiscretizedAngle.from_point(point, 64)
    assert 0.0 <= angle.lam < 1 / 64
    assert abs(angle.theta_grid - point.theta) <= 1 / (64 * 10**4) + 1e-15
    with pytest.raises(ValidationError):
        DiscretizedAngle.from_point(point, 0)


def test_coprime_numerators():
    assert list(coprime_numerators(1)) == [0, 1]
    assert list(coprime_numerators(6)) == [1, 5]


def test_major_arcs_dominate_l2_mass(histogram):
    result = ArcCoverCheck(histogram=histogram, N=1000).calculate()
    assert result.holds
    assert result.stabilized
    assert result.lhs == pytest.approx(sum(r * r for r in histogram.counts), rel=1e-9)


def test_lipschitz_bound_holds(histogram):
    report = LipschitzCheck(histogram=histogram, N=1000, T=64).calculate()
    assert report.samples == 256
    assert 0.0 < report.max_ratio <= 1.0


def test_lipschitz_error_vanishes_on_grid(histogram):
    report = LipschitzCheck(histogram=histogram, N=1000, T=64, offset=0.0).calculate()
    assert report.max_error == 0.0


def test_lipschitz_error_halves_with_grid(histogram):
    coarse = LipschitzCheck(histogram=histogram, N=1000, T=256, seed=3).calculate()
    fine = LipschitzCheck(histogram=histogram, N=1000, T=512, seed=3).calculate()
    assert 0.4 <= fine.max_error / coarse.max_error <= 0.6
