"""
Central engine for running zarembapi calculations by name.

The registry maps operation names (and a few short aliases) to their
calculation classes, so callers and the CLI can run any of them without
importing each class.
"""

from typing import Any, Dict, Type

from .census.denominators import EnumerateDenominators
from .census.oracle import CensusOracle
from .census.proportion import ProportionTable
from .dimension.cylinders import CylinderIntervals
from .dimension.pressure import PressureBisection
from .dimension.thresholds import CheckThresholds
from .ensemble.build import BuildEnsemble
from .ensemble.factorize import Factorize
from .ensemble.parameters import Ladder, Q0
from .expsum.arcs import ArcCoverCheck, LipschitzCheck
from .expsum.farey import DirichletDecompose
from .expsum.regions import ClassifyRegion, RegionMass
from .expsum.spectrum import ExponentialSum, L2Exact, L2Quadrature, L2RatioReport, Spectrum
from .expsum.subset_bound import SubsetBoundVerify
from .expsum.threshold_arithmetic import ThresholdArithmetic


class CalculationEngine:
    """
    The central hub for zarembapi calculations.

    Example:
        >>> engine = CalculationEngine()
        >>> engine.calculate("enumerate_denominators", alphabet="1,2", N=10).to_list()
        [1, 2, 3, 4, 5, 7, 8, 10]
    """

    def __init__(self):
        self.registry: Dict[str, Type] = {}
        self._load_default_calculations()

    def _load_default_calculations(self):
        self.registry = {
            "enumerate_denominators": EnumerateDenominators,
            "census": EnumerateDenominators,
            "census_oracle": CensusOracle,
            "proportion_table": ProportionTable,
            "cylinder_intervals": CylinderIntervals,
            "pressure_bisection": PressureBisection,
            "dimension": PressureBisection,
            "check_thresholds": CheckThresholds,
            "build_ensemble": BuildEnsemble,
            "factorize": Factorize,
            "q0": Q0,
            "ladder": Ladder,
            "spectrum": Spectrum,
            "s_n": ExponentialSum,
            "l2_exact": L2Exact,
            "l2_quadrature": L2Quadrature,
            "l2_ratio_report": L2RatioReport,
            "dirichlet_decompose": DirichletDecompose,
            "arc_cover_check": ArcCoverCheck,
            "lipschitz_check": LipschitzCheck,
            "classify_region": ClassifyRegion,
            "region_mass": RegionMass,
            "threshold_arithmetic": ThresholdArithmetic,
            "subset_bound_verify": SubsetBoundVerify,
        }

    def register_calculation(self, name: str, calc_class: Type):
        """Register (or replace) a calculation class under `name`."""
        self.registry[name.lower()] = calc_class

    def calculate(self, name: str, **kwargs: Any) -> Any:
        """
        Instantiate and run a registered calculation.

        Raises:
            ValueError: If `name` is not registered, or inputs are invalid.
        """
        calc_class = self.registry.get(name.lower())
        if not calc_class:
            raise ValueError(f"Calculation '{name}' not found in registry.")
        return calc_class(**kwargs).calculate()
