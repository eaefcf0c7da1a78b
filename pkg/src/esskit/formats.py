"""JSON file formats: games, instances, target sets, origin maps.

All payoff and probability values are rational strings ("3/2", "-1") or
JSON integers.  Any floating-point literal anywhere in a document makes
parsing fail, by design: file data feeds exact decision procedures.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .clique import MinmaxCliqueInstance
from .errors import ValidationError
from .game import SymmetricGame
from .rational import format_rational, parse_rational


def _reject_float(text):
    raise ValidationError(
        f"floating-point literal {text!r} rejected: use 'p' or 'p/q' rational strings"
    )


def loads_strict(text: str):
    try:
        return json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}") from exc


def load_json(path) -> dict:
    return loads_strict(Path(path).read_text())


def dump_json(path, document) -> None:
    Path(path).write_text(json.dumps(document, indent=2, sort_keys=False) + "\n")


# -- games -------------------------------------------------------------

def game_to_dict(game: SymmetricGame) -> dict:
    return {
        "strategies": list(game.strategy_names),
        "payoffs": [[format_rational(v) for v in row] for row in game.payoff],
    }


def game_from_dict(doc) -> SymmetricGame:
    if not isinstance(doc, dict) or "strategies" not in doc or "payoffs" not in doc:
        raise ValidationError("game document needs 'strategies' and 'payoffs'")
    names = doc["strategies"]
    if not isinstance(names, list) or not all(isinstance(s, str) for s in names):
        raise ValidationError("'strategies' must be a list of strings")
    payoffs = doc["payoffs"]
    if not isinstance(payoffs, list):
        raise ValidationError("'payoffs' must be a matrix")
    rows = []
    for row in payoffs:
        if not isinstance(row, list):
            raise ValidationError("'payoffs' must be a matrix")
        rows.append(tuple(parse_rational(v) for v in row))
    return SymmetricGame(tuple(names), tuple(rows))


def game_sha256(game: SymmetricGame) -> str:
    canonical = json.dumps(game_to_dict(game), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def load_game(path) -> SymmetricGame:
    return game_from_dict(load_json(path))


def save_game(path, game: SymmetricGame) -> None:
    dump_json(path, game_to_dict(game))


# -- instances ---------------------------------------------------------

def instance_to_dict(instance: MinmaxCliqueInstance) -> dict:
    return {
        "I": list(instance.i_labels),
        "J": list(instance.j_labels),
        "partition": {
            v: list(instance.cells[x]) for x, v in enumerate(instance.vertices)
        },
        "edges": sorted(sorted(edge) for edge in instance.edges),
        "k": instance.k,
    }


def instance_from_dict(doc) -> MinmaxCliqueInstance:
    if not isinstance(doc, dict):
        raise ValidationError("instance document must be an object")
    missing = {"I", "J", "partition", "k"} - set(doc)
    if missing:
        raise ValidationError(f"instance document lacks {sorted(missing)}")
    partition = doc["partition"]
    if not isinstance(partition, dict):
        raise ValidationError("'partition' must map vertices to [i, j] cells")
    cells = {}
    for v, cell in partition.items():
        if not isinstance(cell, (list, tuple)) or len(cell) != 2:
            raise ValidationError(f"partition cell for {v!r} must be an [i, j] pair")
        cells[str(v)] = (str(cell[0]), str(cell[1]))
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise ValidationError("'edges' must be a list of vertex pairs")
    pairs = []
    for edge in edges:
        if not isinstance(edge, (list, tuple)) or len(edge) != 2:
            raise ValidationError(f"malformed edge {edge!r}")
        pairs.append((str(edge[0]), str(edge[1])))
    k = doc["k"]
    if isinstance(k, bool) or not isinstance(k, int):
        raise ValidationError(f"'k' must be an integer, got {k!r}")
    return MinmaxCliqueInstance.build(
        [str(x) for x in doc["I"]],
        [str(x) for x in doc["J"]],
        cells,
        pairs,
        k,
    )


def load_instance(path) -> MinmaxCliqueInstance:
    return instance_from_dict(load_json(path))


def save_instance(path, instance: MinmaxCliqueInstance) -> None:
    dump_json(path, instance_to_dict(instance))


# -- target sets and origin maps ----------------------------------------

def target_to_dict(game: SymmetricGame, target) -> dict:
    return {"target": [game.strategy_names[i] for i in sorted(target)]}


def target_from_dict(doc, game: SymmetricGame) -> frozenset[int]:
    if not isinstance(doc, dict) or "target" not in doc or not isinstance(doc["target"], list):
        raise ValidationError("target document needs a 'target' list of strategy names")
    return frozenset(game.index(name) for name in doc["target"])


def origins_to_dict(game_out: SymmetricGame, origins, original: SymmetricGame) -> dict:
    return {
        "origin_map": {
            game_out.strategy_names[x]: [original.strategy_names[o], c]
            for x, (o, c) in enumerate(origins)
        }
    }
