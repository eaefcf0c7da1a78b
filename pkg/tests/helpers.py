"""Independent oracles and generators used across the test suite.

Everything here deliberately avoids the package's decision machinery:
the clique oracle enumerates subsets, the falsifier probes the simplex
with random exact rationals, and game generators only build data.  That
keeps the differential tests honest.
"""

from fractions import Fraction
from itertools import combinations, product

from esskit.clique import MinmaxCliqueInstance
from esskit.game import MixedStrategy, SymmetricGame, payoff_mixed, strategy_payoffs


def doubly_exhaustive_solve(instance: MinmaxCliqueInstance) -> bool:
    """Ground-truth MINMAX-CLIQUE decision: try all selectors, all subsets."""
    for choices in product(instance.j_labels, repeat=len(instance.i_labels)):
        chosen = dict(zip(instance.i_labels, choices))
        active = [
            v
            for x, v in enumerate(instance.vertices)
            if chosen[instance.cells[x][0]] == instance.cells[x][1]
        ]
        found = False
        for subset in combinations(active, instance.k):
            if all(
                frozenset((a, b)) in instance.edges
                for a, b in combinations(subset, 2)
            ):
                found = True
                break
        if not found:
            return False
    return True


def random_game(rng, n, lo=-3, hi=3, denominators=(1, 1, 1, 2, 3)):
    """A random n x n game with small exact-rational payoffs."""
    rows = [
        [Fraction(rng.randint(lo, hi), rng.choice(denominators)) for _ in range(n)]
        for _ in range(n)
    ]
    names = tuple(f"s{i}" for i in range(n))
    return SymmetricGame.from_rows(names, rows)


def random_point(rng, n, support=None, max_weight=6) -> MixedStrategy:
    """A random exact-rational distribution, optionally on a given support."""
    idx = sorted(support) if support is not None else list(range(n))
    while True:
        weights = [rng.randint(0, max_weight) for _ in idx]
        if any(weights):
            break
    total = sum(weights)
    probs = [Fraction(0)] * n
    for i, w in zip(idx, weights):
        probs[i] = Fraction(w, total)
    return MixedStrategy(tuple(probs))


def find_invader_randomized(game, sigma, rng, tries=120):
    """Randomized exact falsifier over the best-response simplex.

    Probes random rational points of Delta(B) plus greedy coordinate
    moves, checking the invasion conditions with plain payoff evaluation.
    Returns an invader or None.  One-sided: never claims an invader that
    is not one.
    """
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    best = sorted(i for i, v in enumerate(payoffs) if v == max(payoffs))

    def invades(tau):
        if tau.probs == sigma.probs:
            return False
        vs_sigma = payoff_mixed(game, tau, sigma)
        if vs_sigma > value:
            return True
        if vs_sigma < value:
            return False
        return payoff_mixed(game, tau, tau) >= payoff_mixed(game, sigma, tau)

    n = game.size
    for _ in range(tries):
        tau = random_point(rng, n, support=best)
        if invades(tau):
            return tau
        # Greedy improvement of u(tau, tau) - u(sigma, tau) by shifting
        # 1/8 of mass between pairs of best responses.
        step = Fraction(1, 8)
        for _move in range(6):
            gap = payoff_mixed(game, tau, tau) - payoff_mixed(game, sigma, tau)
            improved = None
            for a in best:
                if tau.probs[a] < step:
                    continue
                for b in best:
                    if a == b:
                        continue
                    probs = list(tau.probs)
                    probs[a] -= step
                    probs[b] += step
                    cand = MixedStrategy(tuple(probs))
                    cand_gap = payoff_mixed(game, cand, cand) - payoff_mixed(
                        game, sigma, cand
                    )
                    if cand_gap > gap:
                        improved = cand
                        gap = cand_gap
                        break
                if improved is not None:
                    break
            if improved is None:
                break
            tau = improved
            if invades(tau):
                return tau
    return None


def random_instance(rng, max_vertices=5, i_labels=("1", "2"), j_labels=("1", "2"), ks=(2, 3)):
    cells = [(i, j) for i in i_labels for j in j_labels]
    nv = rng.randint(0, max_vertices)
    partition = {f"v{x + 1}": rng.choice(cells) for x in range(nv)}
    vertices = sorted(partition)
    edges = [pair for pair in combinations(vertices, 2) if rng.random() < 0.5]
    return MinmaxCliqueInstance.build(i_labels, j_labels, partition, edges, rng.choice(ks))
