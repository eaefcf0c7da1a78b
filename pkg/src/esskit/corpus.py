"""Instance corpora for the equivalence harness.

The exhaustive family covers, up to vertex relabeling, every MINMAX-CLIQUE
instance with |I| = |J| = 2 and at most ``max_vertices`` vertices: all
distributions of vertex counts over the four cells (vertex names are
canonical, so distinct assignments with equal cell sizes are isomorphic)
crossed with every edge set and every threshold.  The random family adds
seeded larger instances.
"""

from __future__ import annotations

import random
from itertools import combinations
from pathlib import Path

from .clique import MinmaxCliqueInstance, remove_dominated
from . import formats


def compositions(total: int, parts: int):
    """All ordered splits of ``total`` into ``parts`` nonnegative ints."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _canonical_instance(sizes, edge_bits, k, i_labels=("1", "2"), j_labels=("1", "2")):
    cells = [(i, j) for i in i_labels for j in j_labels]
    partition = {}
    x = 0
    for cell, count in zip(cells, sizes):
        for _ in range(count):
            x += 1
            partition[f"v{x}"] = cell
    vertices = sorted(partition)
    pairs = list(combinations(vertices, 2))
    edges = [pairs[p] for p in range(len(pairs)) if edge_bits >> p & 1]
    return MinmaxCliqueInstance.build(i_labels, j_labels, partition, edges, k)


def exhaustive_corpus(max_vertices: int = 4, ks=(2, 3)):
    """Yield (name, instance) for the exhaustive |I|=|J|=2 family."""
    for v in range(max_vertices + 1):
        npairs = v * (v - 1) // 2
        for ci, sizes in enumerate(compositions(v, 4)):
            for edge_bits in range(1 << npairs):
                for k in ks:
                    name = f"ex_v{v}_p{ci:02d}_e{edge_bits:03d}_k{k}"
                    yield name, _canonical_instance(sizes, edge_bits, k)


def random_corpus(count: int, seed: int, max_vertices: int = 5, ks=(2, 3)):
    """Yield ``count`` seeded random |I|=|J|=2 instances."""
    rng = random.Random(seed)
    cells = [(i, j) for i in ("1", "2") for j in ("1", "2")]
    for idx in range(count):
        nv = rng.randint(0, max_vertices)
        partition = {f"v{x + 1}": rng.choice(cells) for x in range(nv)}
        vertices = sorted(partition)
        edges = [pair for pair in combinations(vertices, 2) if rng.random() < 0.5]
        k = rng.choice(ks)
        name = f"rand_{seed}_{idx:04d}"
        yield name, MinmaxCliqueInstance.build(("1", "2"), ("1", "2"), partition, edges, k)


def satisfies_appendix_restrictions(instance: MinmaxCliqueInstance) -> bool:
    """|I| >= 2, |J| >= 2, no dominated vertices, no isolated vertices."""
    if len(instance.i_labels) < 2 or len(instance.j_labels) < 2:
        return False
    touched = set()
    for edge in instance.edges:
        touched |= set(edge)
    if set(instance.vertices) - touched:
        return False
    _reduced, log = remove_dominated(instance)
    return not log


def appendix_corpus(max_vertices: int = 4, ks=(2,)):
    """The exhaustive family filtered to the appendix-restricted instances."""
    for name, instance in exhaustive_corpus(max_vertices, ks):
        if instance.vertices and satisfies_appendix_restrictions(instance):
            yield name, instance


def write_corpus(directory, named_instances) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, instance in named_instances:
        path = out / f"{name}.json"
        formats.save_instance(path, instance)
        paths.append(path)
    return paths


def iter_corpus_dir(directory):
    """(name, instance) for every .json in the directory, sorted by name."""
    for path in sorted(Path(directory).glob("*.json")):
        yield path.stem, formats.load_instance(path)
