import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esskit.errors import UsageError, ValidationError
from esskit.game import (
    MixedStrategy,
    SymmetricGame,
    best_response_set,
    is_symmetric_nash,
    payoff_mixed,
    payoff_pure,
    strategy_payoffs,
    unique_best_response_witness,
)
from helpers import random_game, random_point


def test_game_validation():
    with pytest.raises(ValidationError):
        SymmetricGame.from_rows(("a", "a"), [[1, 0], [0, 1]])
    with pytest.raises(ValidationError):
        SymmetricGame.from_rows(("a", "b"), [[1, 0]])
    with pytest.raises(ValidationError):
        SymmetricGame.from_rows((), [])
    with pytest.raises(ValidationError):
        SymmetricGame.from_rows(("a",), [[0.5]])


def test_mixed_strategy_validation():
    with pytest.raises(ValidationError):
        MixedStrategy((Fraction(1, 2), Fraction(1, 3)))
    with pytest.raises(ValidationError):
        MixedStrategy((Fraction(3, 2), Fraction(-1, 2)))
    assert MixedStrategy((Fraction(1),)).support() == {0}


def test_hawk_dove_pure_payoffs(hawk_dove):
    assert payoff_pure(hawk_dove, 0, 1) == 0  # (Dove, Hawk)
    assert payoff_pure(hawk_dove, 1, 0) == 2  # (Hawk, Dove)
    assert payoff_pure(hawk_dove, 1, 1) == -1
    with pytest.raises(UsageError):
        payoff_pure(hawk_dove, 0, 2)


def test_hawk_dove_mixed_payoffs(hawk_dove, hd_mixed):
    assert payoff_mixed(hawk_dove, hd_mixed, hd_mixed) == Fraction(1, 2)
    # u(sigma, sigma') = 1.5 sigma'(Dove) - 0.5 sigma'(Hawk), at sigma' = Dove
    assert payoff_mixed(hawk_dove, hd_mixed, MixedStrategy.pure(2, 0)) == Fraction(3, 2)


def test_mixed_degenerates_to_pure(hawk_dove):
    for s in range(2):
        for t in range(2):
            assert payoff_mixed(
                hawk_dove, MixedStrategy.pure(2, s), MixedStrategy.pure(2, t)
            ) == payoff_pure(hawk_dove, s, t)


def test_dimension_mismatch_rejected(hawk_dove):
    with pytest.raises(UsageError):
        payoff_mixed(hawk_dove, MixedStrategy((Fraction(1),)), MixedStrategy.pure(2, 0))


def test_best_response_set_hawk_dove(hawk_dove, hd_mixed):
    assert best_response_set(hawk_dove, hd_mixed) == {0, 1}


def test_best_response_strictly_dominant():
    game = SymmetricGame.from_rows(("a", "b"), [[0, 0], [1, 1]])
    rng = random.Random(3)
    for _ in range(10):
        sigma = random_point(rng, 2)
        assert best_response_set(game, sigma) == {1}


def test_is_symmetric_nash_hawk_dove(hawk_dove, hd_mixed):
    assert is_symmetric_nash(hawk_dove, hd_mixed) == (True, None)
    ok, witness = is_symmetric_nash(hawk_dove, MixedStrategy.pure(2, 0))
    assert not ok and witness == 1  # Hawk earns 2 > 1 against Dove


def test_mass_off_best_responses_is_not_nash():
    rng = random.Random(5)
    for _ in range(40):
        game = random_game(rng, rng.randint(2, 5))
        sigma = random_point(rng, game.size)
        best = best_response_set(game, sigma)
        if sigma.support() - best:
            ok, witness = is_symmetric_nash(game, sigma)
            assert not ok
            against = strategy_payoffs(game, sigma)
            value = payoff_mixed(game, sigma, sigma)
            assert against[witness] > value


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_bilinearity_in_first_argument(data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    n = rng.randint(2, 4)
    game = random_game(rng, n)
    s1, s2, tau = (random_point(rng, n) for _ in range(3))
    alpha = Fraction(rng.randint(0, 8), 8)
    blend = MixedStrategy(
        tuple(alpha * a + (1 - alpha) * b for a, b in zip(s1.probs, s2.probs))
    )
    assert payoff_mixed(game, blend, tau) == alpha * payoff_mixed(
        game, s1, tau
    ) + (1 - alpha) * payoff_mixed(game, s2, tau)


def test_strategy_payoffs_matches_rows():
    rng = random.Random(9)
    game = random_game(rng, 4)
    tau = random_point(rng, 4)
    against = strategy_payoffs(game, tau)
    for s in range(4):
        assert against[s] == payoff_mixed(game, MixedStrategy.pure(4, s), tau)


def test_best_response_payoff_structure():
    rng = random.Random(13)
    for _ in range(30):
        game = random_game(rng, rng.randint(2, 5))
        sigma = random_point(rng, game.size)
        against = strategy_payoffs(game, sigma)
        best = best_response_set(game, sigma)
        top = max(against)
        for s in range(game.size):
            if s in best:
                assert against[s] == top
            else:
                assert against[s] < top


# -- unique best response auditor ----------------------------------------

def test_ubr_dominant_strategy():
    game = SymmetricGame.from_rows(("a", "b"), [[1, 1], [0, 0]])
    witness = unique_best_response_witness(game, 0)
    assert witness is not None
    assert unique_best_response_witness(game, 1) is None


def test_ubr_duplicate_never_unique():
    game = SymmetricGame.from_rows(("a", "b", "c"), [[1, 2, 0], [1, 2, 0], [0, 0, 1]])
    assert unique_best_response_witness(game, 0) is None
    assert unique_best_response_witness(game, 1) is None
    assert unique_best_response_witness(game, 2) is not None


def test_ubr_single_strategy_game():
    game = SymmetricGame.from_rows(("only",), [[0]])
    assert unique_best_response_witness(game, 0) is not None


def test_ubr_witness_rechecks_exactly():
    rng = random.Random(21)
    found = 0
    for _ in range(25):
        game = random_game(rng, rng.randint(2, 5))
        for s in range(game.size):
            witness = unique_best_response_witness(game, s)
            if witness is None:
                continue
            found += 1
            against = strategy_payoffs(game, witness)
            assert all(against[s] > against[t] for t in range(game.size) if t != s)
    assert found > 10


def test_rock_paper_scissors_every_strategy_unique_br(rps_game):
    for s in range(3):
        witness = unique_best_response_witness(rps_game, s)
        assert witness is not None


def test_restrict_subgame(hawk_dove):
    sub = hawk_dove.restrict([1])
    assert sub.strategy_names == ("Hawk",)
    assert sub.payoff == ((Fraction(-1),),)
    with pytest.raises(UsageError):
        hawk_dove.restrict([])
