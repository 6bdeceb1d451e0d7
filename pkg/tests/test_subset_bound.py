import math
import random

import pytest

from zarembapi.calculations.expsum import SubsetBoundVerify, random_profiles, subset_bound_bruteforce
from zarembapi.exceptions import ValidationError


def test_constant_profile():
    result = SubsetBoundVerify(values=[1.0] * 16, C1=4, C2=0).calculate()
    assert result.hypothesis_ok
    assert result.constant == pytest.approx(1 / math.log(16))
    assert result.constant == pytest.approx(0.3607, abs=1e-4)


def test_single_atom_is_tight():
    result = SubsetBoundVerify(values=[7.0] + [0.0] * 10, C1=0, C2=7.0).calculate()
    assert result.hypothesis_ok
    assert result.constant == pytest.approx(1.0)


def test_violation_reports_first_prefix():
    result = SubsetBoundVerify(values=[10.0] * 11, C1=1, C2=0).calculate()
    assert not result.hypothesis_ok
    assert result.violating_k == 1


def test_input_validation():
    with pytest.raises(ValidationError):
        SubsetBoundVerify(values=[1.0] * 10, C1=1, C2=0)
    with pytest.raises(ValidationError):
        SubsetBoundVerify(values=[1.0] * 10 + [-1.0], C1=1, C2=0)
    with pytest.raises(ValidationError):
        subset_bound_bruteforce([1.0] * 17, 1, 0)


def test_prefix_check_agrees_with_exhaustive_search():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(11, 13)
        values = [rng.uniform(0, 2) for _ in range(n)]
        C1, C2 = rng.uniform(0.5, 3), rng.uniform(0, 2)
        fast = SubsetBoundVerify(values=values, C1=C1, C2=C2).calculate().hypothesis_ok
        assert fast == subset_bound_bruteforce(values, C1, C2)


def test_random_profiles_satisfy_the_hypothesis():
    for values, C1, C2 in random_profiles(1000, seed=5):
        result = SubsetBoundVerify(values=values, C1=C1, C2=C2).calculate()
        assert result.hypothesis_ok
        assert 0.0 < result.constant <= 4.0
