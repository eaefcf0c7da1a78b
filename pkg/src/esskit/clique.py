"""MINMAX-CLIQUE instances and their exact decision procedure.

An instance partitions a graph's vertices into cells indexed by I x J and
asks whether every selector t: I -> J leaves a clique of size at least k
in the subgraph induced on the union of the selected cells.  Decided by
exhausting selectors in lexicographic order, with the inner clique
question answered by branch and bound under a greedy-coloring bound.

Vertex sets are handled as bitmasks throughout; instances at desk scale
have at most a few dozen vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import UsageError, ValidationError


@dataclass(frozen=True)
class MinmaxCliqueInstance:
    i_labels: tuple[str, ...]
    j_labels: tuple[str, ...]
    vertices: tuple[str, ...]            # sorted; defines vertex order everywhere
    cells: tuple[tuple[str, str], ...]   # cells[x] = (i, j) of vertices[x]
    edges: frozenset[frozenset[str]]
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k <= 1:
            raise ValidationError(f"threshold k must be an integer greater than 1, got {self.k!r}")
        if len(set(self.i_labels)) != len(self.i_labels) or len(set(self.j_labels)) != len(self.j_labels):
            raise ValidationError("I and J labels must be distinct")
        if tuple(sorted(self.vertices)) != self.vertices or len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("vertices must be sorted and distinct")
        if len(self.cells) != len(self.vertices):
            raise ValidationError("every vertex needs exactly one partition cell")
        iset, jset = set(self.i_labels), set(self.j_labels)
        for (i, j) in self.cells:
            if i not in iset or j not in jset:
                raise ValidationError(f"partition cell ({i!r}, {j!r}) is not in I x J")
        vset = set(self.vertices)
        for edge in self.edges:
            pair = tuple(edge)
            if len(pair) != 2:
                raise ValidationError(f"self-loop or malformed edge: {sorted(edge)!r}")
            if pair[0] not in vset or pair[1] not in vset:
                raise ValidationError(f"edge references unknown vertex: {sorted(edge)!r}")

    @classmethod
    def build(cls, i_labels, j_labels, partition: dict, edges, k: int) -> "MinmaxCliqueInstance":
        """Construct from a vertex -> (i, j) mapping and an edge list."""
        vertices = tuple(sorted(partition))
        cells = tuple((str(partition[v][0]), str(partition[v][1])) for v in vertices)
        edge_set = set()
        for a, b in edges:
            if a == b:
                raise ValidationError(f"self-loop on {a!r}")
            edge_set.add(frozenset((str(a), str(b))))
        return cls(
            tuple(str(x) for x in i_labels),
            tuple(str(x) for x in j_labels),
            vertices,
            cells,
            frozenset(edge_set),
            k,
        )

    def _bitmaps(self):
        """(adjacency masks per vertex, cell -> vertex mask).  Cached."""
        cached = getattr(self, "_bit_cache", None)
        if cached is None:
            index = {v: x for x, v in enumerate(self.vertices)}
            adj = [0] * len(self.vertices)
            for edge in self.edges:
                a, b = tuple(edge)
                adj[index[a]] |= 1 << index[b]
                adj[index[b]] |= 1 << index[a]
            cell_mask: dict[tuple[str, str], int] = {}
            for i in self.i_labels:
                for j in self.j_labels:
                    cell_mask[(i, j)] = 0
            for x, cell in enumerate(self.cells):
                cell_mask[cell] |= 1 << x
            cached = (adj, cell_mask)
            object.__setattr__(self, "_bit_cache", cached)
        return cached

    def neighbors(self, v: str) -> frozenset[str]:
        adj, _ = self._bitmaps()
        x = self.vertices.index(v)
        return frozenset(self.vertices[y] for y in range(len(self.vertices)) if adj[x] >> y & 1)

    def cell_of(self, v: str) -> tuple[str, str]:
        return self.cells[self.vertices.index(v)]


@dataclass(frozen=True)
class Selector:
    """One choice of column j for every row index i, in i_labels order."""

    choices: tuple[str, ...]

    def as_dict(self, instance: MinmaxCliqueInstance) -> dict[str, str]:
        return dict(zip(instance.i_labels, self.choices))


@dataclass(frozen=True)
class MinmaxResult:
    answer: bool
    failing_selector: Selector | None = None
    cliques: tuple[tuple[Selector, tuple[str, ...]], ...] = ()


def enumerate_selectors(instance: MinmaxCliqueInstance):
    """All |J|^|I| selectors, lexicographic in the given J label order."""
    for combo in product(instance.j_labels, repeat=len(instance.i_labels)):
        yield Selector(combo)


def _color_bound(adj, cand):
    """Greedy coloring of the candidate set; returns (order, bounds).

    bounds[i] is the number of colors among order[:i+1], an upper bound on
    any clique inside that prefix.
    """
    order = []
    bounds = []
    color_classes = []
    m = cand
    while m:
        v = (m & -m).bit_length() - 1
        m -= 1 << v
        placed = False
        for ci, cmask in enumerate(color_classes):
            if not (adj[v] & cmask):
                color_classes[ci] = cmask | (1 << v)
                placed = True
                break
        if not placed:
            color_classes.append(1 << v)
    for ci, cmask in enumerate(color_classes):
        mm = cmask
        while mm:
            v = (mm & -mm).bit_length() - 1
            mm -= 1 << v
            order.append(v)
            bounds.append(ci + 1)
    return order, bounds


def _max_clique_masks(adj, cand, stop_at: int | None = None):
    """Exact maximum clique in the induced subgraph, as (size, mask).

    Branch and bound in the classic style: candidates are ordered by a
    greedy coloring whose class count bounds the clique size of each
    prefix.  When ``stop_at`` is given the search returns as soon as a
    clique of that size is found.
    """
    best_size = 0
    best_mask = 0

    def expand(rsize, rmask, p):
        nonlocal best_size, best_mask
        order, bounds = _color_bound(adj, p)
        for idx in range(len(order) - 1, -1, -1):
            if stop_at is not None and best_size >= stop_at:
                return
            if rsize + bounds[idx] <= best_size:
                return
            v = order[idx]
            vbit = 1 << v
            if rsize + 1 > best_size:
                best_size = rsize + 1
                best_mask = rmask | vbit
            nxt = p & adj[v]
            if nxt and (stop_at is None or best_size < stop_at):
                expand(rsize + 1, rmask | vbit, nxt)
            p &= ~vbit

    if cand:
        expand(0, 0, cand)
    return best_size, best_mask


def max_clique(instance: MinmaxCliqueInstance, active_vertices=None):
    """(size, vertex set) of one maximum clique among the active vertices."""
    adj, _ = instance._bitmaps()
    names = instance.vertices
    if active_vertices is None:
        mask = (1 << len(names)) - 1
    else:
        active = set(active_vertices)
        unknown = active - set(names)
        if unknown:
            raise UsageError(f"active vertices not in instance: {sorted(unknown)!r}")
        mask = 0
        for x, v in enumerate(names):
            if v in active:
                mask |= 1 << x
    size, cmask = _max_clique_masks(adj, mask)
    clique = frozenset(names[x] for x in range(len(names)) if cmask >> x & 1)
    return size, clique


def _selector_mask(instance, selector):
    _, cell_mask = instance._bitmaps()
    mask = 0
    for i, j in zip(instance.i_labels, selector.choices):
        mask |= cell_mask[(i, j)]
    return mask


def solve(instance: MinmaxCliqueInstance, collect_cliques: bool = True) -> MinmaxResult:
    """Decide the instance: does every selector keep a clique of size >= k?

    On "no", the reported witness is the lexicographically first failing
    selector.  On "yes", one clique of size >= k per selector is reported
    when ``collect_cliques`` is set.
    """
    adj, _ = instance._bitmaps()
    names = instance.vertices
    k = instance.k
    found = []
    for selector in enumerate_selectors(instance):
        mask = _selector_mask(instance, selector)
        size, cmask = _max_clique_masks(adj, mask, stop_at=k)
        if size < k:
            return MinmaxResult(False, failing_selector=selector)
        if collect_cliques:
            clique = tuple(names[x] for x in range(len(names)) if cmask >> x & 1)
            found.append((selector, clique))
    return MinmaxResult(True, cliques=tuple(found))


@dataclass(frozen=True)
class RemovalRecord:
    removed: str
    dominator: str


def dominates(instance: MinmaxCliqueInstance, v: str, w: str) -> bool:
    """v dominates w: same cell, not adjacent, and N(v) contains N(w)."""
    if v == w:
        return False
    if instance.cell_of(v) != instance.cell_of(w):
        return False
    if frozenset((v, w)) in instance.edges:
        return False
    return instance.neighbors(w) <= instance.neighbors(v)


def remove_dominated(instance: MinmaxCliqueInstance):
    """Strip dominated vertices to a fixpoint; answer-preserving.

    Any clique using a dominated vertex can use its dominator instead, so
    removal never changes the decision.  Vertices are scanned in label
    order and the scan restarts after every removal, which pins the log.
    """
    current = instance
    log: list[RemovalRecord] = []
    changed = True
    while changed:
        changed = False
        for w in current.vertices:
            dominator = next((v for v in current.vertices if dominates(current, v, w)), None)
            if dominator is None:
                continue
            keep = [v for v in current.vertices if v != w]
            partition = {v: current.cell_of(v) for v in keep}
            edges = [tuple(e) for e in current.edges if w not in e]
            current = MinmaxCliqueInstance.build(
                current.i_labels, current.j_labels, partition, edges, current.k
            )
            log.append(RemovalRecord(w, dominator))
            changed = True
            break
    return current, tuple(log)
