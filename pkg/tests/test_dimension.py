from fractions import Fraction

import pytest

from zarembapi.calculations.dimension import (
    CheckThresholds,
    CylinderIntervals,
    DimensionBracket,
    PressureBisection,
    ThresholdSet,
    Verdict,
    auto_depth,
    total_length,
)
from zarembapi.core import Alphabet
from zarembapi.exceptions import BudgetExceededError, ConvergenceError, ValidationError

# dim E_{1,2} = 0.5312805062...
DELTA_12 = 0.53128


def test_cylinder_lengths_are_exact():
    depth1 = CylinderIntervals(alphabet="1,2", depth=1).calculate()
    assert [c.length for c in depth1] == [Fraction(1, 2), Fraction(1, 6)]
    depth2 = CylinderIntervals(alphabet="1,2", depth=2).calculate()
    by_word = {c.word.quotients: c.length for c in depth2}
    assert by_word[(2, 2)] == Fraction(1, 35)


def test_cylinder_total_length_decreases_with_depth():
    totals = [total_length(CylinderIntervals(alphabet="1,2", depth=k).calculate()) for k in range(1, 7)]
    assert totals[0] == Fraction(2, 3)
    assert all(b <= a for a, b in zip(totals, totals[1:]))


def test_cylinder_budget():
    with pytest.raises(BudgetExceededError):
        CylinderIntervals(alphabet="1..10", depth=8)
    with pytest.raises(BudgetExceededError):
        PressureBisection(alphabet="1,2", depth=10, max_cylinders=100)


def test_bracket_contains_known_dimension():
    bracket = PressureBisection(alphabet="1,2", depth=12, tol=1e-5).calculate()
    assert bracket.contains(DELTA_12)
    assert bracket.width < 1e-2
    assert bracket.cylinder_root == pytest.approx(DELTA_12, abs=0.1)


def test_brackets_nest_across_depths():
    coarse = PressureBisection(alphabet="1,2", depth=4).calculate()
    fine = PressureBisection(alphabet="1,2", depth=8).calculate()
    assert fine.nested_in(coarse)
    assert fine.width <= coarse.width


def test_larger_alphabet_has_larger_dimension():
    small = PressureBisection(alphabet="1,2", depth=8).calculate()
    large = PressureBisection(alphabet="1,2,3", depth=8).calculate()
    assert small.upper < large.lower


def test_bisection_validation():
    with pytest.raises(ValidationError):
        PressureBisection(alphabet=Alphabet.any_size([1]), depth=4)
    with pytest.raises(ValidationError):
        PressureBisection(alphabet="1,2", depth=4, tol=0.0)
    with pytest.raises(ConvergenceError):
        PressureBisection(alphabet="1,2", depth=4, tol=1e-30).calculate()


def test_auto_depth_respects_budget():
    alphabet = Alphabet.parse("1..10")
    assert auto_depth(alphabet, 200_000) == 5
    assert auto_depth(Alphabet((1, 2)), 4096) == 12


def test_threshold_constants():
    t = ThresholdSet()
    assert t.t2 < t.t1 < t.t3
    assert ThresholdSet.truncated(t.t1) == 0.8815
    assert t.t2 == 0.875
    assert ThresholdSet.truncated(t.t3) == 0.9276
    with pytest.raises(ValidationError):
        ThresholdSet(t1=0.8, t2=0.9, t3=0.95)
    assert ThresholdSet(t1=0.9, t2=0.8, t3=0.95).t1 == 0.9


def test_verdicts_compare_whole_bracket():
    alphabet = Alphabet.parse("1..10")
    bracket = DimensionBracket(alphabet=alphabet, depth=1, lower=0.92, upper=0.93, tol=1e-6)
    report = CheckThresholds(bracket=bracket).calculate()
    assert report.verdicts["t1"] is Verdict.PASS
    assert report.verdicts["t2"] is Verdict.PASS
    assert report.verdicts["t3"] is Verdict.UNDECIDED

    low = DimensionBracket(alphabet=alphabet, depth=1, lower=0.90, upper=0.91, tol=1e-6)
    report = CheckThresholds(bracket=low).calculate()
    assert report.verdicts["t3"] is Verdict.FAIL
    assert "verdict" in report.summary()


def test_upper_end_on_threshold_fails():
    alphabet = Alphabet.parse("1..10")
    t = ThresholdSet()
    touching = DimensionBracket(alphabet=alphabet, depth=1, lower=0.9, upper=t.t3, tol=1e-6)
    report = CheckThresholds(bracket=touching).calculate()
    assert report.verdicts["t3"] is Verdict.FAIL
    assert report.verdicts["t1"] is Verdict.PASS

    on_lower = DimensionBracket(alphabet=alphabet, depth=1, lower=t.t3, upper=0.93, tol=1e-6)
    assert CheckThresholds(bracket=on_lower).calculate().verdicts["t3"] is Verdict.UNDECIDED


def test_explicit_thresholds_are_used():
    alphabet = Alphabet((1, 2))
    bracket = DimensionBracket(alphabet=alphabet, depth=1, lower=0.53, upper=0.54, tol=1e-6)
    custom = ThresholdSet(t1=0.52, t2=0.5, t3=0.535)
    report = CheckThresholds(bracket=bracket, thresholds=custom).calculate()
    assert report.thresholds is custom
    assert report.verdicts == {"t1": Verdict.PASS, "t2": Verdict.PASS, "t3": Verdict.UNDECIDED}
    with pytest.raises(ValidationError):
        CheckThresholds(bracket=bracket, thresholds=(0.5, 0.52, 0.535))


def test_invalid_bracket_is_rejected():
    with pytest.raises(ValidationError):
        DimensionBracket(alphabet=Alphabet((1, 2)), depth=1, lower=0.6, upper=0.5, tol=1e-6)
    with pytest.raises(ValidationError):
        CheckThresholds(bracket=(0.5, 0.6))


@pytest.mark.slow
def test_ten_letter_bracket():
    bracket = PressureBisection(alphabet="1..10", depth=5).calculate()
    # dim E_{1..10} truncates to 0.9257
    assert bracket.lower < 0.9258 and bracket.upper >= 0.9257
    assert bracket.width <= 5e-3
    report = CheckThresholds(bracket=bracket).calculate()
    assert report.verdicts["t1"] is Verdict.PASS
    assert report.verdicts["t2"] is Verdict.PASS
    assert report.verdicts["t3"] in (Verdict.FAIL, Verdict.UNDECIDED)


@pytest.mark.slow
def test_eleven_letter_alphabet_clears_every_threshold():
    bracket = PressureBisection(alphabet="1..11", depth=5).calculate()
    report = CheckThresholds(bracket=bracket).calculate()
    assert all(v is Verdict.PASS for v in report.verdicts.values())
