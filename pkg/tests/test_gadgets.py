import random
from fractions import Fraction

import pytest

from esskit.errors import UsageError
from esskit.ess import find_ess, verify_ess
from esskit.game import MixedStrategy, SymmetricGame, payoff_mixed, strategy_payoffs
from esskit.gadgets import (
    RPS_MATRIX,
    duplicate_transform,
    interchangeable_block_check,
    no_ess_mass_on_block,
    rps_transform,
    uniform_lift,
)
from esskit.reduction import reduce_instance
from helpers import random_game, random_point


@pytest.fixture
def fig1_reduced(figure1):
    return reduce_instance(figure1)


def test_rho_matrix_shape():
    for i in range(3):
        assert RPS_MATRIX[i][i] == 0
        assert RPS_MATRIX[i][(i + 1) % 3] == 1
        assert RPS_MATRIX[(i + 1) % 3][i] == -1
        for j in range(3):
            assert RPS_MATRIX[i][j] == -RPS_MATRIX[j][i]


def test_rho_zero_self_payoff_for_random_mixtures():
    rng = random.Random(2)
    game = SymmetricGame.from_rows(("1", "2", "3"), RPS_MATRIX)
    for _ in range(30):
        sigma = random_point(rng, 3)
        assert payoff_mixed(game, sigma, sigma) == 0


# -- duplication ---------------------------------------------------------

def test_duplicate_transform_shape_and_equalities(fig1_reduced):
    out = duplicate_transform(fig1_reduced.game, fig1_reduced.target)
    assert out.game.size == 14  # 9 strategies, 5 outside the target
    pay = out.game.payoff
    for orig in range(fig1_reduced.game.size):
        copies = out.copies_of(orig)
        if len(copies) == 1:
            continue
        c1, c2 = copies
        for x in range(out.game.size):
            assert pay[c1][x] == pay[c2][x]
            assert pay[x][c1] == pay[x][c2]


def test_duplicate_transform_target_everything_is_identity(hawk_dove):
    out = duplicate_transform(hawk_dove, {0, 1})
    assert out.game == hawk_dove
    assert out.preserved_target == {0, 1}


def test_duplicated_game_ess_stays_inside_target(fig1_reduced):
    out = duplicate_transform(fig1_reduced.game, fig1_reduced.target)
    results = find_ess(out.game, proofs=False)
    assert results, "duplication must not destroy the ESS"
    for sigma, _ in results:
        assert sigma.support() <= out.preserved_target


def test_lemma2_random_games_with_forced_duplicates():
    rng = random.Random(19)
    for _ in range(20):
        base = random_game(rng, rng.randint(2, 4))
        out = duplicate_transform(base, frozenset(range(1, base.size)))
        # strategy 0 was duplicated; no ESS may touch either copy
        pair = set(out.copies_of(0))
        assert len(pair) == 2
        for sigma, _ in find_ess(out.game, proofs=False):
            assert not (sigma.support() & pair)


# -- rock-paper-scissors triplication --------------------------------------

def test_rps_block_of_zero_diagonal_strategy_is_rho():
    game = SymmetricGame.from_rows(("keep", "drop"), [[1, 2], [3, 0]])
    out = rps_transform(game, {0})
    assert out.game.size == 4
    triple = out.copies_of(1)
    pay = out.game.payoff
    # u(drop, drop) = 0, so the block equals rho itself
    for a, i in enumerate(triple):
        for b, j in enumerate(triple):
            assert pay[i][j] == RPS_MATRIX[a][b]
    assert pay[triple[0]][triple[1]] == 1
    assert pay[triple[1]][triple[0]] == -1


def test_rps_block_offsets_diagonal(fig1_reduced):
    out = rps_transform(fig1_reduced.game, fig1_reduced.target)
    assert out.game.size == 4 + 3 * 5  # 19
    pay = out.game.payoff
    for orig in range(fig1_reduced.game.size):
        copies = out.copies_of(orig)
        if len(copies) == 1:
            continue
        ss = fig1_reduced.game.payoff[orig][orig]
        for a, i in enumerate(copies):
            for b, j in enumerate(copies):
                assert pay[i][j] == ss + RPS_MATRIX[a][b]
        for x in range(out.game.size):
            if x in copies:
                continue
            xo = out.origins[x][0]
            for i in copies:
                assert pay[i][x] == fig1_reduced.game.payoff[orig][xo]
                assert pay[x][i] == fig1_reduced.game.payoff[xo][orig]


def test_uniform_triple_mixture_earns_original_self_payoff(fig1_reduced):
    out = rps_transform(fig1_reduced.game, fig1_reduced.target)
    for orig in range(fig1_reduced.game.size):
        copies = out.copies_of(orig)
        if len(copies) != 3:
            continue
        mix = MixedStrategy.uniform_over(out.game.size, copies)
        assert payoff_mixed(out.game, mix, mix) == fig1_reduced.game.payoff[orig][orig]


def test_uniform_lift_preserves_outside_payoffs(fig1_reduced):
    rng = random.Random(23)
    out = rps_transform(fig1_reduced.game, fig1_reduced.target)
    n = fig1_reduced.game.size
    for _ in range(10):
        sigma = random_point(rng, n)
        tau = random_point(rng, n)
        lifted_s = uniform_lift(out, n, sigma)
        lifted_t = uniform_lift(out, n, tau)
        assert payoff_mixed(out.game, lifted_s, lifted_t) == payoff_mixed(
            fig1_reduced.game, sigma, tau
        )


def test_rps_game_keeps_the_ess(fig1_reduced):
    out = rps_transform(fig1_reduced.game, fig1_reduced.target)
    results = find_ess(out.game, proofs=False, stop_after=1)
    assert results
    sigma, verdict = results[0]
    assert verdict.status == "ESS"
    assert sigma.support() <= out.preserved_target


# -- interchangeable blocks -------------------------------------------------

def test_interchangeable_rps_triples(fig1_reduced):
    out = rps_transform(fig1_reduced.game, fig1_reduced.target)
    for orig in range(fig1_reduced.game.size):
        copies = out.copies_of(orig)
        if len(copies) == 3:
            assert interchangeable_block_check(out.game, copies)


def test_interchangeable_vacuous_when_no_outsiders(hawk_dove):
    assert interchangeable_block_check(hawk_dove, {0, 1})


def test_interchangeable_fails_on_cell_block(fig1_reduced):
    game = fig1_reduced.game
    s11, s12 = game.index("s11"), game.index("s12")
    v11 = game.index("s_v11")
    assert game.payoff[s11][v11] == Fraction(3, 2)
    assert game.payoff[s12][v11] == Fraction(3, 2)
    # rows differ at column s11 itself? no: those are inside the block.
    # they differ against the outside strategy s_v11 on the column side:
    assert game.payoff[v11][s11] != game.payoff[v11][s12]
    assert not interchangeable_block_check(game, {s11, s12})


def test_no_ess_mass_on_rps_triples(fig1_reduced):
    out = rps_transform(fig1_reduced.game, fig1_reduced.target)
    triple = out.copies_of(fig1_reduced.game.index("s0"))
    assert no_ess_mass_on_block(out.game, triple)


def test_no_ess_mass_on_duplicate_pair(fig1_reduced):
    out = duplicate_transform(fig1_reduced.game, fig1_reduced.target)
    pair = out.copies_of(fig1_reduced.game.index("s0"))
    assert no_ess_mass_on_block(out.game, pair)


def test_no_ess_mass_refuses_when_block_has_ess():
    game = SymmetricGame.from_rows(
        ("a", "b", "c"),
        [[1, 0, 0], [0, 1, 0], [0, 0, 5]],
    )
    # block {a, b} is a coordination game: it has an ESS, so the lemma
    # does not apply and the oracle must refuse.
    with pytest.raises(UsageError):
        no_ess_mass_on_block(game, {0, 1})


def test_no_ess_mass_refuses_non_interchangeable(fig1_reduced):
    game = fig1_reduced.game
    with pytest.raises(UsageError):
        no_ess_mass_on_block(game, {game.index("s11"), game.index("s12")})


# -- the paper's explicit epsilon witnesses at epsilon = 1/100 ---------------

EPS = Fraction(1, 100)


def _assert_strict_unique_best(game, target, mu):
    against = strategy_payoffs(game, mu)
    for t in range(game.size):
        if t != target:
            assert against[target] > against[t]


def test_epsilon_witness_for_cell_strategies(figure1):
    # Heavy part: the other rows' cells (every row-i strategy earns 2
    # against them, nothing else reaches 2).  Tie-break part: epsilon on
    # the target cell itself; within row i only the diagonal earns 1.
    out = reduce_instance(figure1)
    game = out.game
    for i in ("1", "2"):
        for j in ("1", "2"):
            target = out.cell_strategy(i, j)
            probs = [Fraction(0)] * game.size
            others = [
                out.cell_strategy(i2, j2)
                for i2 in ("1", "2")
                for j2 in ("1", "2")
                if i2 != i
            ]
            for s in others:
                probs[s] = (1 - EPS) / len(others)
            probs[target] = EPS
            _assert_strict_unique_best(game, target, MixedStrategy(tuple(probs)))


def test_epsilon_witness_for_vertex_strategies(figure1):
    out = reduce_instance(figure1)
    game = out.game
    ni, nj = 2, 2
    for v in figure1.vertices:
        (i, j) = figure1.cell_of(v)
        target = out.vertex_strategy(v)
        probs = [Fraction(0)] * game.size
        probs[out.cell_strategy(i, j)] = Fraction(1, ni) * (1 - EPS)
        for i2 in ("1", "2"):
            if i2 == i:
                continue
            for j2 in ("1", "2"):
                probs[out.cell_strategy(i2, j2)] = Fraction(1, ni * nj) * (1 - EPS)
        neighbors = sorted(figure1.neighbors(v))
        assert neighbors, "appendix-restricted instances have no isolated vertices"
        for w in neighbors:
            probs[out.vertex_strategy(w)] += EPS / len(neighbors)
        _assert_strict_unique_best(game, target, MixedStrategy(tuple(probs)))


def test_exact_witness_for_sentinel(figure1):
    out = reduce_instance(figure1)
    game = out.game
    cells = [out.cell_strategy(i, j) for i in ("1", "2") for j in ("1", "2")]
    mu = MixedStrategy.uniform_over(game.size, cells)
    _assert_strict_unique_best(game, out.sentinel_index, mu)
