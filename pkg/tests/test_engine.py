import pytest

from zarembapi.calculations import CalculationEngine
from zarembapi.calculations.base import CalculationBase
from zarembapi.exceptions import ValidationError


def test_engine_runs_registered_calculations():
    engine = CalculationEngine()
    census = engine.calculate("enumerate_denominators", alphabet="1,2", N=10)
    assert census.to_list() == [1, 2, 3, 4, 5, 7, 8, 10]
    assert engine.calculate("CENSUS", alphabet="1,2", N=10).count == 8
    ceilings = engine.calculate("threshold_arithmetic", nu=1.5)
    assert ceilings.combined == pytest.approx(0.125)


def test_unknown_calculation():
    with pytest.raises(ValueError, match="not found in registry"):
        CalculationEngine().calculate("heat_exchanger")


def test_missing_input_is_reported():
    with pytest.raises(ValidationError, match="Missing required input: N"):
        CalculationEngine().calculate("build_ensemble", alphabet="1,2")


def test_register_custom_calculation():
    class Doubling(CalculationBase):
        def validate_inputs(self):
            self._require("x")

        def calculate(self):
            self._trace_step("doubling", "x", self.inputs["x"])
            return 2 * self.inputs["x"]

    engine = CalculationEngine()
    engine.register_calculation("Doubling", Doubling)
    assert engine.calculate("doubling", x=4) == 8


def test_to_dict_and_trace():
    from zarembapi.calculations.census import EnumerateDenominators

    calc = EnumerateDenominators(alphabet="1,2", N=10)
    data = calc.to_dict()
    assert data["inputs"]["alphabet"] == [1, 2]
    assert data["results"]["count"] == 8
    assert any(step["name"] == "count" for step in calc.trace)
