"""Game construction from MINMAX-CLIQUE instances.

Builds the symmetric game whose restricted-support ESS question inverts
the instance's answer: one strategy per (i, j) cell, one per vertex, and
one sentinel strategy, with payoffs driven by the two constants
2 - 1/|I| and (k/(k-1)) (2 - 1/|I|), both exact rationals.

The strategy layout is pinned: the cell block first (row-major over I x
J), then vertex strategies in label order, then the sentinel last, so
regenerating a published table is a straight entrywise comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .clique import MinmaxCliqueInstance, Selector
from .errors import UsageError, ValidationError
from .game import MixedStrategy, SymmetricGame


@dataclass(frozen=True)
class ReductionOutput:
    game: SymmetricGame
    target: frozenset[int]
    cell_index: tuple[tuple[tuple[str, str], int], ...]
    vertex_index: tuple[tuple[str, int], ...]
    sentinel_index: int

    def cell_strategy(self, i: str, j: str) -> int:
        for cell, idx in self.cell_index:
            if cell == (i, j):
                return idx
        raise UsageError(f"no cell ({i!r}, {j!r}) in this reduction")

    def vertex_strategy(self, v: str) -> int:
        for name, idx in self.vertex_index:
            if name == v:
                return idx
        raise UsageError(f"no vertex {v!r} in this reduction")


def _layout(instance: MinmaxCliqueInstance):
    cells = [(i, j) for i in instance.i_labels for j in instance.j_labels]
    names = [f"s{i}{j}" for (i, j) in cells]
    names += [f"s_{v}" for v in instance.vertices]
    names.append("s0")
    return cells, names


def reduce_instance(instance: MinmaxCliqueInstance) -> ReductionOutput:
    """Apply the fourteen payoff rules to one instance."""
    ni = len(instance.i_labels)
    if ni < 1:
        raise ValidationError("the reduction needs at least one row index")
    nj = len(instance.j_labels)
    nv = len(instance.vertices)
    k = instance.k

    base = 2 - Fraction(1, ni)                  # 2 - 1/|I|
    edge_pay = Fraction(k, k - 1) * base        # (k/(k-1)) (2 - 1/|I|)

    cells, names = _layout(instance)
    n = ni * nj + nv + 1
    sent = n - 1
    cell_at = {cell: idx for idx, cell in enumerate(cells)}
    vert_at = {v: ni * nj + x for x, v in enumerate(instance.vertices)}
    vertex_cell = {v: instance.cells[x] for x, v in enumerate(instance.vertices)}

    zero = Fraction(0)
    one = Fraction(1)
    two = Fraction(2)

    rows = [[zero] * n for _ in range(n)]
    for (i, j), s in cell_at.items():
        row = rows[s]
        for (i2, j2), t in cell_at.items():
            if i == i2:
                row[t] = one if j == j2 else zero
            else:
                row[t] = two
        for v, t in vert_at.items():
            row[t] = base
        row[sent] = base
    for v, s in vert_at.items():
        row = rows[s]
        (vi, vj) = vertex_cell[v]
        for (i2, j2), t in cell_at.items():
            if vi == i2 and vj != j2:
                row[t] = zero
            else:
                row[t] = base
        for w, t in vert_at.items():
            if v != w and frozenset((v, w)) in instance.edges:
                row[t] = edge_pay
            else:
                row[t] = zero
        row[sent] = zero
    row = rows[sent]
    for _cell, t in cell_at.items():
        row[t] = base
    # vertex columns and the sentinel diagonal stay 0

    game = SymmetricGame(tuple(names), tuple(tuple(r) for r in rows))
    return ReductionOutput(
        game,
        frozenset(range(ni * nj)),
        tuple((cell, cell_at[cell]) for cell in cells),
        tuple((v, vert_at[v]) for v in instance.vertices),
        sent,
    )


def expected_ess_profile(instance: MinmaxCliqueInstance, selector: Selector) -> MixedStrategy:
    """The uniform 1/|I| profile on the selected cell strategies.

    This is the candidate stable strategy associated with a selector; it
    is an actual ESS of the reduced game exactly when the selector's
    induced subgraph has no clique of size k.  Aligned with the layout of
    reduce_instance(instance).
    """
    ni = len(instance.i_labels)
    if len(selector.choices) != ni:
        raise UsageError("selector does not cover every row index")
    cells, names = _layout(instance)
    n = len(names)
    cell_at = {cell: idx for idx, cell in enumerate(cells)}
    probs = [Fraction(0)] * n
    for i, j in zip(instance.i_labels, selector.choices):
        if (i, j) not in cell_at:
            raise UsageError(f"selector picks unknown cell ({i!r}, {j!r})")
        probs[cell_at[(i, j)]] = Fraction(1, ni)
    return MixedStrategy(tuple(probs))


def clique_invader(instance: MinmaxCliqueInstance, selector: Selector, clique) -> MixedStrategy:
    """Uniform mixture over a clique's vertex strategies.

    Requires the clique to live inside the selector's cells, have size at
    least k, and be pairwise adjacent; it then invades the selector's
    profile with exact payoff equalities.
    """
    clique = sorted(set(clique))
    if len(clique) < instance.k:
        raise UsageError(f"clique of size {len(clique)} is below the threshold k={instance.k}")
    chosen = dict(zip(instance.i_labels, selector.choices))
    for v in clique:
        if v not in instance.vertices:
            raise UsageError(f"unknown vertex {v!r}")
        (i, j) = instance.cell_of(v)
        if chosen.get(i) != j:
            raise UsageError(f"vertex {v!r} is outside the selected cells")
    for a in range(len(clique)):
        for b in range(a + 1, len(clique)):
            if frozenset((clique[a], clique[b])) not in instance.edges:
                raise UsageError(f"{clique[a]!r} and {clique[b]!r} are not adjacent")

    ni = len(instance.i_labels)
    nj = len(instance.j_labels)
    cells, names = _layout(instance)
    n = len(names)
    vert_at = {v: ni * nj + x for x, v in enumerate(instance.vertices)}
    w = Fraction(1, len(clique))
    probs = [Fraction(0)] * n
    for v in clique:
        probs[vert_at[v]] = w
    return MixedStrategy(tuple(probs))
