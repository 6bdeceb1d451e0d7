import cmath

import numpy as np
import pytest

from zarembapi.calculations.ensemble import BuildEnsemble
from zarembapi.calculations.expsum import (
    ExponentialSum,
    L2Exact,
    L2Quadrature,
    L2RatioReport,
    Spectrum,
    SpectrumHistogram,
    evaluate_sum,
    l2_trend_table,
)
from zarembapi.exceptions import ValidationError


def histogram_for(N, alphabet="1,2"):
    return Spectrum(ensemble=BuildEnsemble(alphabet=alphabet, N=N).calculate()).calculate()


def test_histogram_of_small_ensemble():
    histogram = histogram_for(10)
    assert histogram.as_mapping() == {7: 4, 8: 4, 10: 1}
    assert histogram.total == 9
    assert histogram.support == 3
    assert histogram.max_norm == 10


def test_sum_at_integers_counts_members():
    histogram = histogram_for(10)
    assert ExponentialSum(histogram=histogram, theta=0).calculate() == pytest.approx(9)
    assert ExponentialSum(histogram=histogram, theta=1).calculate() == pytest.approx(9)


def test_sum_matches_direct_evaluation():
    histogram = histogram_for(10)
    theta = 0.3
    expected = 4 * cmath.exp(2j * cmath.pi * 7 * theta) + 4 * cmath.exp(2j * cmath.pi * 8 * theta)
    expected += cmath.exp(2j * cmath.pi * 10 * theta)
    assert ExponentialSum(histogram=histogram, theta=theta).calculate() == pytest.approx(expected)


def test_sum_is_conjugate_symmetric():
    histogram = histogram_for(500)
    thetas = np.linspace(0.01, 0.49, 25)
    left = evaluate_sum(histogram, thetas)
    right = evaluate_sum(histogram, 1.0 - thetas)
    np.testing.assert_allclose(left, np.conj(right), atol=1e-8)


def test_exact_l2_mass():
    histogram = histogram_for(10)
    assert L2Exact(histogram=histogram).calculate() == 33


def test_quadrature_agrees_with_exact_mass():
    histogram = histogram_for(1000)
    exact = L2Exact(histogram=histogram).calculate()
    result = L2Quadrature(histogram=histogram).calculate()
    assert result.stabilized
    assert result.value == pytest.approx(exact, rel=5e-3)


def test_l2_ratio_report():
    histogram = histogram_for(1000)
    report = L2RatioReport(histogram=histogram, N=1000).calculate()
    assert report.size == histogram.total
    assert report.c_emp == pytest.approx(report.l2 * 1000 / report.size**2)
    assert report.baseline == pytest.approx(report.size**2 / 1000)
    assert "C_emp" in l2_trend_table([report])


@pytest.mark.slow
def test_c_emp_does_not_explode_with_horizon():
    reports = [L2RatioReport(histogram=histogram_for(N), N=N).calculate() for N in (10**3, 10**4, 10**5)]
    # Cauchy-Schwarz over at most N/2 distinct norms
    assert all(r.c_emp >= 2.0 - 1e-9 for r in reports)
    assert reports[-1].c_emp <= 10 * reports[0].c_emp


def test_empty_histogram():
    empty = SpectrumHistogram.from_norms([], 5, 10)
    assert empty.total == 0
    assert ExponentialSum(histogram=empty, theta=0.2).calculate() == 0
    with pytest.raises(ValidationError):
        L2Exact(histogram=empty)


def test_histogram_validation():
    with pytest.raises(ValidationError):
        SpectrumHistogram.from_norms([3, 12], 5, 10)
    with pytest.raises(ValidationError):
        ExponentialSum(histogram=histogram_for(10), theta=float("nan"))
