"""Symmetric two-player games over exact rationals.

A game is an n x n matrix of Fractions; entry (s, t) is the payoff the row
player earns playing s against t.  The matrix itself need not be symmetric.
Strategy names are metadata only: every algorithm works on indices, so the
systematic names emitted by the reduction pipeline carry no semantics.

All values are immutable after construction and all operations are pure,
so everything here is safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import lp
from .errors import UsageError, ValidationError

SupportSet = frozenset[int]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise ValidationError(f"payoffs must be exact rationals, got {value!r}")


@dataclass(frozen=True)
class SymmetricGame:
    strategy_names: tuple[str, ...]
    payoff: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.strategy_names)
        if n < 1:
            raise ValidationError("a game needs at least one strategy")
        if len(set(self.strategy_names)) != n:
            raise ValidationError("strategy names must be distinct")
        if len(self.payoff) != n or any(len(row) != n for row in self.payoff):
            raise ValidationError("payoff matrix must be square and match the strategy list")

    @classmethod
    def from_rows(cls, names, rows) -> "SymmetricGame":
        payoff = tuple(tuple(_as_fraction(v) for v in row) for row in rows)
        return cls(tuple(names), payoff)

    @property
    def size(self) -> int:
        return len(self.strategy_names)

    def index(self, name: str) -> int:
        try:
            return self.strategy_names.index(name)
        except ValueError:
            raise UsageError(f"unknown strategy name {name!r}") from None

    def scaled_ints(self):
        """(scale L, L*payoff as int rows, L*(payoff+payoff^T) as int rows).

        Cached; the integer forms feed the fraction-free solvers on the
        hot paths.
        """
        cached = getattr(self, "_int_cache", None)
        if cached is None:
            scale = 1
            for row in self.payoff:
                for v in row:
                    scale = scale * v.denominator // gcd(scale, v.denominator)
            ia = [[int(v * scale) for v in row] for row in self.payoff]
            n = self.size
            sa = [[ia[i][j] + ia[j][i] for j in range(n)] for i in range(n)]
            cached = (scale, ia, sa)
            object.__setattr__(self, "_int_cache", cached)
        return cached

    def restrict(self, indices) -> "SymmetricGame":
        """Subgame on the given strategy indices (sorted)."""
        idx = sorted(set(indices))
        if not idx or not all(0 <= i < self.size for i in idx):
            raise UsageError(f"invalid restriction {indices!r}")
        names = tuple(self.strategy_names[i] for i in idx)
        rows = tuple(tuple(self.payoff[i][j] for j in idx) for i in idx)
        return SymmetricGame(names, rows)


@dataclass(frozen=True)
class MixedStrategy:
    probs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.probs:
            raise ValidationError("empty strategy vector")
        if any(not isinstance(p, Fraction) for p in self.probs):
            object.__setattr__(self, "probs", tuple(_as_fraction(p) for p in self.probs))
        if any(p < 0 for p in self.probs):
            raise ValidationError("strategy probabilities must be nonnegative")
        if sum(self.probs) != 1:
            raise ValidationError("strategy probabilities must sum to exactly 1")

    @classmethod
    def pure(cls, n: int, index: int) -> "MixedStrategy":
        if not 0 <= index < n:
            raise UsageError(f"pure strategy index {index} out of range")
        return cls(tuple(Fraction(1 if i == index else 0) for i in range(n)))

    @classmethod
    def uniform_over(cls, n: int, indices) -> "MixedStrategy":
        idx = set(indices)
        if not idx:
            raise UsageError("uniform mixture needs a nonempty index set")
        w = Fraction(1, len(idx))
        return cls(tuple(w if i in idx else Fraction(0) for i in range(n)))

    @classmethod
    def from_weights(cls, weights) -> "MixedStrategy":
        """Normalize nonnegative weights to a distribution."""
        ws = [_as_fraction(w) for w in weights]
        total = sum(ws)
        if total <= 0:
            raise ValidationError("weights must have positive sum")
        return cls(tuple(w / total for w in ws))

    def support(self) -> SupportSet:
        return frozenset(i for i, p in enumerate(self.probs) if p > 0)

    def __len__(self):
        return len(self.probs)


def _check_dim(game: SymmetricGame, sigma: MixedStrategy):
    if len(sigma) != game.size:
        raise UsageError(
            f"strategy vector has length {len(sigma)}, game has {game.size} strategies"
        )


def payoff_pure(game: SymmetricGame, s: int, t: int) -> Fraction:
    """u(s, t) for pure strategies."""
    n = game.size
    if not (0 <= s < n and 0 <= t < n):
        raise UsageError(f"strategy index out of range: ({s}, {t}) for n={n}")
    return game.payoff[s][t]


def strategy_payoffs(game: SymmetricGame, tau: MixedStrategy) -> tuple[Fraction, ...]:
    """u(s, tau) for every pure s, as one exact vector."""
    _check_dim(game, tau)
    probs = tau.probs
    support = [j for j, p in enumerate(probs) if p]
    return tuple(
        sum(row[j] * probs[j] for j in support) for row in game.payoff
    )


def payoff_mixed(game: SymmetricGame, sigma: MixedStrategy, tau: MixedStrategy) -> Fraction:
    """u(sigma, tau) = sum over (s, t) of sigma(s) tau(t) u(s, t)."""
    _check_dim(game, sigma)
    against = strategy_payoffs(game, tau)
    return sum(sigma.probs[i] * against[i] for i in sigma.support())


def best_response_set(game: SymmetricGame, sigma: MixedStrategy) -> SupportSet:
    """Pure strategies maximizing u(s, sigma).

    Payoff is linear in the first argument, so this set characterizes all
    mixed best responses: sigma' is a best response iff its support lies
    inside the returned set.
    """
    payoffs = strategy_payoffs(game, sigma)
    best = max(payoffs)
    return frozenset(i for i, v in enumerate(payoffs) if v == best)


def is_symmetric_nash(game: SymmetricGame, sigma: MixedStrategy):
    """(True, None) if u(s, sigma) <= u(sigma, sigma) for every pure s.

    Otherwise (False, s) for the smallest-index violating pure strategy.
    """
    payoffs = strategy_payoffs(game, sigma)
    value = sum(sigma.probs[i] * payoffs[i] for i in sigma.support())
    for s, v in enumerate(payoffs):
        if v > value:
            return False, s
    return True, None


def unique_best_response_witness(game: SymmetricGame, s: int) -> MixedStrategy | None:
    """A mixed mu against which s strictly beats every other pure strategy.

    Decided exactly by one linear program: maximize the minimum margin
    m subject to u(s, mu) - u(s', mu) >= m over the simplex; a witness
    exists iff the optimum is positive.  The returned witness is
    re-checked in exact arithmetic before being reported.
    """
    n = game.size
    if not 0 <= s < n:
        raise UsageError(f"strategy index {s} out of range")
    if n == 1:
        # No rival strategies; the single pure strategy witnesses itself.
        return MixedStrategy.pure(1, 0)

    # Variables: mu_0..mu_{n-1} >= 0, then the free margin m.
    objective = [Fraction(0)] * n + [Fraction(1)]
    ge = []
    for t in range(n):
        if t == s:
            continue
        coeffs = [game.payoff[s][j] - game.payoff[t][j] for j in range(n)]
        ge.append((coeffs + [Fraction(-1)], Fraction(0)))
    eq = [([Fraction(1)] * n + [Fraction(0)], Fraction(1))]
    res = lp.maximize(objective, eq=eq, ge=ge, free={n})
    if res.status != "optimal" or res.value <= 0:
        return None
    mu = MixedStrategy(tuple(res.x[:n]))
    against = strategy_payoffs(game, mu)
    assert all(against[s] > against[t] for t in range(n) if t != s), (
        "LP produced a witness that fails the exact margin recheck"
    )
    return mu


def dominance_masks(game: SymmetricGame):
    """Per ordered pair (a, b): column bitmasks where a's row is < / > b's.

    Used by the support enumerator to discard supports that contain a
    strategy weakly dominated (with at least one strict column inside the
    support) by some other strategy.  Cached on the game.
    """
    cached = getattr(game, "_dominance_cache", None)
    if cached is None:
        n = game.size
        pay = game.payoff
        lt = [[0] * n for _ in range(n)]
        gt = [[0] * n for _ in range(n)]
        for a in range(n):
            ra = pay[a]
            for b in range(n):
                if a == b:
                    continue
                rb = pay[b]
                ltm = 0
                gtm = 0
                for c in range(n):
                    if ra[c] < rb[c]:
                        ltm |= 1 << c
                    elif ra[c] > rb[c]:
                        gtm |= 1 << c
                lt[a][b] = ltm
                gt[a][b] = gtm
        # For each b, the list of candidate dominators a with some strict column.
        dominators = [
            tuple((a, lt[a][b], gt[a][b]) for a in range(n) if a != b and gt[a][b])
            for b in range(n)
        ]
        cached = dominators
        object.__setattr__(game, "_dominance_cache", cached)
    return cached
