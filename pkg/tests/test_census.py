import itertools

import pytest

from zarembapi.calculations.census import CensusOracle, EnumerateDenominators, ProportionTable
from zarembapi.core import Alphabet, continuant
from zarembapi.exceptions import BudgetExceededError, ValidationError


def census(alphabet, N, **kwargs):
    return EnumerateDenominators(alphabet=alphabet, N=N, **kwargs).calculate()


def test_known_census_over_one_two():
    result = census("1,2", 10)
    assert result.to_list() == [1, 2, 3, 4, 5, 7, 8, 10]
    assert result.count == 8
    assert result.ratio == pytest.approx(0.8)
    assert 6 not in result and 10 in result


def test_single_letter_alphabet():
    assert census(Alphabet.any_size([2]), 5).to_list() == [2, 5]


def test_horizon_one():
    assert census("1,2", 1).to_list() == [1]


def test_letters_above_horizon_never_wrap():
    alphabet = Alphabet((1, 10**17))
    result = census(alphabet, 1000, witnesses=True)
    # only words of ones fit, whose continuants are Fibonacci numbers
    assert result.to_list() == [1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987]
    assert result.to_list() == CensusOracle(alphabet=alphabet, N=1000).calculate().to_list()
    assert result.witness(987).quotients == (1,) * 15
    assert census(Alphabet((3, 2**40)), 50, workers=2).to_list() == [3, 10, 33]


def test_census_agrees_with_oracle_on_small_alphabets():
    for size in range(2, 6):
        for letters in itertools.combinations(range(1, 6), size):
            alphabet = Alphabet(letters)
            fast = census(alphabet, 300)
            slow = CensusOracle(alphabet=alphabet, N=300).calculate()
            assert fast.to_list() == slow.to_list(), alphabet


def test_witnesses_rebuild_their_denominators():
    alphabet = Alphabet((1, 3))
    result = census(alphabet, 500, witnesses=True)
    for d in result.to_list():
        word = result.witness(d)
        assert word.over(alphabet)
        assert continuant(word) == d
    assert result.witness_lines()[0] == "1: 1"


def test_parallel_census_matches_sequential():
    serial = census("1,2,3", 2000, witnesses=True)
    parallel = census("1,2,3", 2000, witnesses=True, workers=2)
    assert serial.to_list() == parallel.to_list()
    assert (serial.tails == parallel.tails).all()


def test_census_is_monotone_in_alphabet_and_horizon():
    small = census("1,2", 400)
    large = census("1,2,3", 400)
    assert small.issubset(large)
    assert census("1,2", 1000).restrict(400).to_list() == small.to_list()


def test_all_denominators_admissible_with_five_letters():
    result = census("1..5", 2000)
    assert result.count == 2000


def test_census_guards():
    with pytest.raises(ValidationError):
        census("1,2", 0)
    with pytest.raises(ValidationError):
        census("1,2", 10**9 + 1)
    with pytest.raises(BudgetExceededError):
        census("1,2", 10**6, max_bytes=1000)
    with pytest.raises(ValidationError):
        CensusOracle(alphabet="1,2", N=10**5 + 1)


def test_proportion_table_rows():
    result = ProportionTable(alphabet="1,2", horizons=[10, 100, 1000]).calculate()
    assert [r.N for r in result.rows] == [10, 100, 1000]
    assert result.rows[0].count == 8
    counts = [r.count for r in result.rows]
    assert counts == sorted(counts)
    assert "ratio" in result.summary()


def test_proportion_table_validation():
    with pytest.raises(ValidationError):
        ProportionTable(alphabet="1,2", horizons=[100, 10])
    with pytest.raises(ValidationError):
        ProportionTable(alphabet=Alphabet.any_size([1]), horizons=[10])


@pytest.mark.slow
def test_five_letter_proportion_is_stable():
    result = ProportionTable(alphabet="1..5", horizons=[10**3, 10**4, 10**5]).calculate()
    assert result.relative_spread() <= 0.05
