"""
Desk-scale property suite used by `zarembapi verify`.

Every check returns (passed, detail) and never raises for a failed
property; unexpected errors are reported as failures with the message.
"""

from __future__ import annotations

import itertools
import logging
import math
from typing import Callable, List, Tuple

import numpy as np
from tqdm import tqdm

from .calculations.census import CensusOracle, EnumerateDenominators
from .calculations.dimension import PressureBisection, ThresholdSet
from .calculations.ensemble import BuildEnsemble, Factorize, FactorizationParams, Q0
from .calculations.expsum import (
    ArcCoverCheck,
    L2Exact,
    L2Quadrature,
    LipschitzCheck,
    RegionParams,
    Spectrum,
    SubsetBoundVerify,
    ThresholdArithmetic,
    kloosterman_optimal_nu,
    optimal_nu_scan,
    partition_grid,
    random_profiles,
    subset_bound_bruteforce,
)
from .core import Alphabet
from .exceptions import ZarembaError

logger = logging.getLogger("zarembapi.verify")

Check = Tuple[bool, str]


def check_thresholds() -> Check:
    t = ThresholdSet()
    ok = ThresholdSet.truncated(t.t1) == 0.8815 and ThresholdSet.truncated(t.t3) == 0.9276
    at_three_halves = ThresholdArithmetic(nu=1.5).calculate()
    ok &= math.isclose(at_three_halves.power_offset, 0.125) and math.isclose(at_three_halves.small_offset, 0.125)
    nu, _ = optimal_nu_scan()
    ok &= abs(nu - kloosterman_optimal_nu()) <= 1e-4
    return ok, f"t1={t.t1:.6f} t3={t.t3:.6f} nu*={nu:.4f}"


def check_census_oracle(N: int = 200) -> Check:
    mismatches = []
    for size in range(2, 6):
        for letters in itertools.combinations(range(1, 6), size):
            alphabet = Alphabet(letters)
            fast = EnumerateDenominators(alphabet=alphabet, N=N).calculate().to_list()
            slow = CensusOracle(alphabet=alphabet, N=N).calculate().to_list()
            if fast != slow:
                mismatches.append(alphabet.label)
    return not mismatches, f"N={N} mismatches={mismatches}"


def check_known_census() -> Check:
    found = EnumerateDenominators(alphabet="1,2", N=10).calculate().to_list()
    return found == [1, 2, 3, 4, 5, 7, 8, 10], f"D_{{1,2}}(10)={found}"


def check_dimension_nesting() -> Check:
    coarse = PressureBisection(alphabet="1,2", depth=6).calculate()
    fine = PressureBisection(alphabet="1,2", depth=9).calculate()
    ok = fine.nested_in(coarse) and fine.contains(0.53128)
    return ok, f"[{fine.lower:.6f}, {fine.upper:.6f}] within [{coarse.lower:.6f}, {coarse.upper:.6f}]"


def check_expsum(N: int = 1000) -> Check:
    ensemble = BuildEnsemble(alphabet="1,2", N=N).calculate()
    histogram = Spectrum(ensemble=ensemble).calculate()
    exact = L2Exact(histogram=histogram).calculate()
    quad = L2Quadrature(histogram=histogram).calculate()
    arcs = ArcCoverCheck(histogram=histogram, N=N).calculate()
    lip = LipschitzCheck(histogram=histogram, N=N, T=64).calculate()
    ok = abs(quad.value - exact) <= 5e-3 * exact and arcs.holds and lip.max_ratio <= 1.0
    return ok, f"l2={exact} quad={quad.value:.6g} arcs={arcs.holds} lipschitz={lip.max_ratio:.3g}"


def check_partition() -> Check:
    params = RegionParams(N=10**6, gamma=0.125, eps0=0.001, nu=1.5, Q0=10)
    counts = partition_grid(params, size=128)
    return counts["OUTSIDE"] == 0, f"counts={counts}"


def check_subset_bound(seed: int) -> Check:
    worst = 0.0
    for values, C1, C2 in random_profiles(200, seed=seed):
        result = SubsetBoundVerify(values=values, C1=C1, C2=C2).calculate()
        if not result.hypothesis_ok:
            return False, "generated profile violates the hypothesis"
        worst = max(worst, result.constant)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        values = list(rng.uniform(0, 2, 12))
        C1, C2 = float(rng.uniform(0.5, 3)), float(rng.uniform(0, 2))
        prefix = SubsetBoundVerify(values=values, C1=C1, C2=C2).calculate().hypothesis_ok
        if prefix != subset_bound_bruteforce(values, C1, C2):
            return False, "prefix check disagrees with exhaustive check"
    return worst <= 4.0, f"max c={worst:.4f}"


def check_factorization(N: int = 5000) -> Check:
    ensemble = BuildEnsemble(alphabet="1,2", N=N).calculate()
    q0 = Q0(A=2, eps0=1e-4).calculate()
    params = FactorizationParams(M1=20, M3=20, eps0=1e-4, Q0=q0.value, Q0_override=10)
    report = Factorize(ensemble=ensemble, params=params).calculate()
    return report.reconstructed_all, f"split={len(report.splits)} window_fraction={report.window_fraction:.3f}"


def run_suite(seed: int = 0, progress: bool = False) -> List[Tuple[str, bool, str]]:
    checks: List[Tuple[str, Callable[[], Check]]] = [
        ("thresholds", check_thresholds),
        ("census_known", check_known_census),
        ("census_oracle", check_census_oracle),
        ("dimension_nesting", check_dimension_nesting),
        ("expsum", check_expsum),
        ("region_partition", check_partition),
        ("subset_bound", lambda: check_subset_bound(seed)),
        ("factorization", check_factorization),
    ]
    results = []
    for name, check in tqdm(checks, desc="verify", disable=not progress):
        try:
            ok, detail = check()
        except (ZarembaError, ArithmeticError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        logger.info(f"[verify] {name}: {'PASS' if ok else 'FAIL'} {detail}")
        results.append((name, bool(ok), detail))
    return results
