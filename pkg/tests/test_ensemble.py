from collections import Counter

import pytest

from zarembapi.calculations.ensemble import (
    BuildEnsemble,
    Ensemble,
    FactorizationParams,
    Factorize,
    Ladder,
    Q0,
    q0_branches,
    q0_crossover,
    split_word,
)
from zarembapi.core import Alphabet, continuant
from zarembapi.exceptions import BudgetExceededError, ValidationError


def test_small_ensemble_norm_counts():
    ensemble = BuildEnsemble(alphabet="1,2", N=10, window_ratio=2).calculate()
    assert len(ensemble) == 9
    assert Counter(ensemble.norms) == {7: 4, 8: 4, 10: 1}
    assert ensemble.words == sorted(ensemble.words)
    assert (2, 2, 1) in ensemble.words and (1, 2, 2, 1) in ensemble.words


def test_members_are_distinct_unimodular_matrices():
    ensemble = BuildEnsemble(alphabet="1,2,3", N=200).calculate()
    members = ensemble.members
    assert len(set(members)) == len(members)
    for m, norm in zip(members, ensemble.norms):
        assert m.det in (1, -1)
        assert m.norm == norm
        assert ensemble.lower < norm <= 200


def test_horizon_one_ensemble():
    ensemble = BuildEnsemble(alphabet="1,2", N=1).calculate()
    assert ensemble.words == [(1,)]


def test_ensemble_validation_and_cap():
    with pytest.raises(ValidationError):
        BuildEnsemble(alphabet="1,2", N=10, window_ratio=1.0)
    with pytest.raises(ValidationError):
        BuildEnsemble(alphabet="1,2", N=10, window_ratio=11)
    with pytest.raises(ValidationError):
        BuildEnsemble(alphabet="1,2", N=0)
    with pytest.raises(BudgetExceededError):
        BuildEnsemble(alphabet="1,2", N=10, max_members=3).calculate()


def test_member_file_round_trip(tmp_path):
    ensemble = BuildEnsemble(alphabet="1,2", N=50).calculate()
    path = ensemble.write(tmp_path / "members.txt")
    loaded = Ensemble.from_lines(ensemble.alphabet, 50, 2.0, path.read_text().splitlines())
    assert loaded.words == ensemble.words
    assert loaded.norms == ensemble.norms
    with pytest.raises(ValidationError):
        Ensemble.from_lines(Alphabet((1, 2)), 50, 2.0, ["3 3"])


def test_growth_exponent_tracks_dimension():
    ensemble = BuildEnsemble(alphabet="1,2", N=10**4).calculate()
    # twice dim E_{1,2} is about 1.06
    assert 0.8 < ensemble.growth_exponent() < 1.1


def test_q0_branches():
    alphabet_branch, eps_branch = q0_branches(2, 1 / 2500)
    assert max(alphabet_branch, eps_branch) == pytest.approx(9.765625e16, rel=1e-12)
    value = Q0(alphabet="1,2", eps0=1e-4).calculate()
    assert value.branch == "eps0"
    assert value.value == pytest.approx(1e20, rel=1e-12)
    crossover = q0_crossover(2)
    a, b = q0_branches(2, crossover)
    assert a == pytest.approx(b, rel=1e-9)


def test_eps0_range():
    with pytest.raises(ValidationError):
        Q0(A=2, eps0=0.01)
    with pytest.raises(ValidationError):
        Q0(A=2, eps0=0.0)


def test_ladder_with_override():
    ladder = Ladder(N=1e6, eps0=0.01, A=2, J_override=10).calculate()
    assert ladder.value(1) == pytest.approx(10 ** (6 / 1.99), rel=1e-9)
    assert ladder.value(1) == pytest.approx(1035.3, rel=1e-4)
    assert ladder.value(0) == pytest.approx(10 ** (6 * 0.99 / 1.99), rel=1e-9)
    assert ladder.value(11) == pytest.approx(1e6)
    indices = ladder.indices()
    assert indices == list(range(-11, 12))
    values = [ladder.exponents[j] for j in indices]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert ladder.covering_violations() == []


def test_ladder_depth_too_small_without_override():
    with pytest.raises(ValidationError, match="log10 N"):
        Ladder(N=1e6, eps0=0.01, A=2)
    with pytest.raises(ValidationError):
        Ladder(N=1e6, eps0=0.01, A=2, J_override=0)
    with pytest.raises(ValidationError):
        Ladder(N=1e6, eps0=1.0, A=2, J_override=10)
    assert Ladder(N=1e6, eps0=0.5, A=2, J_override=3).calculate().J == 3


def test_split_word_cases():
    assert split_word((2, 2), 2, 2) == ((2,), (), (2,), False)
    assert split_word((3, 1, 3), 4, 4) == ((3, 1), (), (3,), True)
    assert split_word((1, 1), 5, 2) is None
    g1, g2, g3, overlap = split_word((1, 2, 1, 2, 2, 1, 2), 4, 4)
    assert g1 + g2 + g3 == (1, 2, 1, 2, 2, 1, 2)
    assert not overlap


def test_factorization_params_constraints():
    params = FactorizationParams(M1=20, M3=20, eps0=1e-4, Q0=1e20, Q0_override=10)
    assert params.effective_q0 == 10
    params.validate_for(10**4)
    with pytest.raises(ValidationError):
        FactorizationParams(M1=20, M3=20, eps0=1e-4, Q0=1e20, Q0_override=30).validate_for(10**4)
    with pytest.raises(ValidationError):
        FactorizationParams(M1=20, M3=20, eps0=1e-4, Q0=1e20).validate_for(10**4)
    with pytest.raises(ValidationError):
        FactorizationParams(M1=200, M3=200, eps0=1e-4, Q0=1e20, Q0_override=10).validate_for(10**4)


def test_factorization_reconstructs_and_fits_windows():
    ensemble = BuildEnsemble(alphabet="1,2", N=10**4).calculate()
    params = FactorizationParams(M1=20, M3=20, eps0=1e-4, Q0=1e20, Q0_override=10)
    report = Factorize(ensemble=ensemble, params=params, slack=100).calculate()
    assert report.unsplittable == []
    assert len(report.splits) == len(ensemble)
    assert report.reconstructed_all
    assert report.overlaps == 0
    assert report.window_fraction == 1.0
    worst, median = report.slack_stats()
    assert 1.0 <= median <= worst <= 100


def test_factorization_default_slack():
    ensemble = BuildEnsemble(alphabet="1,2", N=2000).calculate()
    params = FactorizationParams(M1=10, M3=10, eps0=1e-4, Q0=1e20, Q0_override=10)
    report = Factorize(ensemble=ensemble, params=params).calculate()
    assert report.slack == 3.0
    assert 0.0 <= report.window_fraction <= 1.0
    omega1, _, omega3 = report.factor_sets()
    assert all(continuant(g) >= 10 for g in omega1 | omega3)
    assert "window_fraction" in report.summary()


def test_window_fraction_on_two_letter_ensemble():
    ensemble = BuildEnsemble(alphabet="1,2", N=10**4).calculate()
    params = FactorizationParams(M1=20, M3=20, eps0=1e-4, Q0=1e20, Q0_override=10)
    report = Factorize(ensemble=ensemble, params=params).calculate()
    assert report.slack == 3.0
    assert report.unsplittable == []
    # the first step past 20 over {1, 2} lands at most at 2*19 + 19
    assert all(s.norms[0] <= 57 and s.norms[2] <= 57 for s in report.splits)
    assert all(s.norms[1] <= 25 for s in report.splits)
    # so only the lower middle window N / (M1 M3)^(1 + 2 eps0) / 3 can fail
    expected = sum(1 for s in report.splits if s.norms[1] >= 9) / len(report.splits)
    assert report.window_fraction == pytest.approx(expected)
    again = Factorize(ensemble=ensemble, params=params).calculate()
    assert again.window_fraction == report.window_fraction
    assert Factorize(ensemble=ensemble, params=params, slack=25).calculate().window_fraction == 1.0
