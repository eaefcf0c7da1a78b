"""Support-restriction-removal transforms.

Two ways to forbid strategies outside a target set T from appearing in
any ESS without changing whether one exists:

* duplication - add an exact copy of every non-target strategy.  A
  strategy with a twin can always be invaded by shifting mass between
  the copies, so no ESS touches either copy.
* rock-paper-scissors triplication - replace every non-target strategy
  by three copies whose mutual payoffs are offset by the RPS matrix.
  The triple is interchangeable toward outsiders, the restricted game on
  a triple has no ESS, and (unlike duplication) every copy remains the
  unique best response to some mixed strategy.

Both keep the original strategies' payoff behavior bit-exact, so ESS
existence transfers in both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError
from .game import MixedStrategy, SymmetricGame
from . import ess as _ess

# rho: copy i beats copy i+1 (mod 3); +1 win, 0 tie, -1 loss.
RPS_MATRIX: tuple[tuple[Fraction, ...], ...] = tuple(
    tuple(Fraction(v) for v in row)
    for row in ((0, 1, -1), (-1, 0, 1), (1, -1, 0))
)


@dataclass(frozen=True)
class TransformOutput:
    game: SymmetricGame
    origins: tuple[tuple[int, int], ...]  # new index -> (original index, copy number)
    preserved_target: frozenset[int]

    def copies_of(self, original: int) -> tuple[int, ...]:
        return tuple(x for x, (o, _c) in enumerate(self.origins) if o == original)


def _expand(game: SymmetricGame, target, copies: int, namer):
    n = game.size
    tset = frozenset(target)
    if not all(0 <= i < n for i in tset):
        raise UsageError(f"target set out of range: {sorted(tset)!r}")
    origins: list[tuple[int, int]] = []
    names: list[str] = []
    for s in range(n):
        if s in tset:
            origins.append((s, 0))
            names.append(game.strategy_names[s])
        else:
            for c in range(1, copies + 1):
                origins.append((s, c))
                names.append(namer(game.strategy_names[s], c))
    return origins, names, tset


def duplicate_transform(game: SymmetricGame, target) -> TransformOutput:
    """One extra exact copy of every strategy outside the target set.

    Copies agree with their original on both sides: u(copy, x) = u(s, x)
    and u(x, copy) = u(x, s) for every x.
    """
    origins, names, tset = _expand(game, target, 2, lambda s, c: f"{s}#{c}")
    pay = game.payoff
    rows = tuple(
        tuple(pay[os][ot] for (ot, _ct) in origins) for (os, _cs) in origins
    )
    out = SymmetricGame(tuple(names), rows)
    new_target = frozenset(x for x, (o, c) in enumerate(origins) if o in tset)
    return TransformOutput(out, tuple(origins), new_target)


def rps_transform(game: SymmetricGame, target) -> TransformOutput:
    """Replace each non-target strategy by three RPS-offset copies.

    Copies of the same original s get u(s^i, s^j) = u(s, s) + rho(i, j);
    against anything else they behave exactly like s.
    """
    origins, names, tset = _expand(game, target, 3, lambda s, c: f"{s}^{c}")
    pay = game.payoff
    rows = []
    for (os, cs) in origins:
        row = []
        for (ot, ct) in origins:
            v = pay[os][ot]
            if cs and ct and os == ot:
                v = v + RPS_MATRIX[cs - 1][ct - 1]
            row.append(v)
        rows.append(tuple(row))
    out = SymmetricGame(tuple(names), tuple(rows))
    new_target = frozenset(x for x, (o, c) in enumerate(origins) if o in tset)
    return TransformOutput(out, tuple(origins), new_target)


def interchangeable_block_check(game: SymmetricGame, block) -> bool:
    """Do all block members look identical to every outside strategy?

    Checks both sides: equal rows against each outside column, and equal
    columns under each outside row (the transforms guarantee both).
    """
    members = sorted(set(block))
    if not members:
        raise UsageError("block must be nonempty")
    if not all(0 <= i < game.size for i in members):
        raise UsageError(f"block out of range: {members!r}")
    outside = [s for s in range(game.size) if s not in set(members)]
    pay = game.payoff
    first = members[0]
    for other in members[1:]:
        for s in outside:
            if pay[first][s] != pay[other][s] or pay[s][first] != pay[s][other]:
                return False
    return True


def no_ess_mass_on_block(game: SymmetricGame, block) -> bool:
    """Property oracle: no ESS of the full game touches the block.

    Preconditions (refused otherwise): the block is interchangeable
    toward outsiders and its restricted game has no ESS.  Under those,
    any strategy using the block is invadable by swapping in the
    restricted game's invader, so the full enumeration must come back
    block-free; returns whether it actually does.
    """
    members = sorted(set(block))
    if not interchangeable_block_check(game, members):
        raise UsageError("block members are not interchangeable toward outside strategies")
    restricted = game.restrict(members)
    if _ess.find_ess(restricted, proofs=False, stop_after=1):
        raise UsageError("the restricted game on the block has an ESS; the lemma does not apply")
    mset = set(members)
    for sigma, _verdict in _ess.find_ess(game, proofs=False):
        if sigma.support() & mset:
            return False
    return True


def uniform_lift(transform: TransformOutput, original_n: int, sigma: MixedStrategy) -> MixedStrategy:
    """Lift a strategy of the original game through a transform.

    Mass on an untouched strategy moves to its sole image; mass on a
    replaced strategy is split uniformly over its copies, which keeps all
    payoffs against outsiders unchanged.
    """
    if len(sigma) != original_n:
        raise UsageError("strategy length does not match the original game")
    groups: dict[int, list[int]] = {}
    for x, (o, _c) in enumerate(transform.origins):
        groups.setdefault(o, []).append(x)
    probs = [Fraction(0)] * len(transform.origins)
    for o, p in enumerate(sigma.probs):
        if p:
            copies = groups[o]
            share = p / len(copies)
            for x in copies:
                probs[x] = share
    return MixedStrategy(tuple(probs))
