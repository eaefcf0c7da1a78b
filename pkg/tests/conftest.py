import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from esskit.clique import MinmaxCliqueInstance
from esskit.game import MixedStrategy, SymmetricGame


@pytest.fixture
def hawk_dove() -> SymmetricGame:
    return SymmetricGame.from_rows(("Dove", "Hawk"), [[1, 0], [2, -1]])


@pytest.fixture
def hd_mixed() -> MixedStrategy:
    return MixedStrategy((Fraction(1, 2), Fraction(1, 2)))


@pytest.fixture
def rps_game() -> SymmetricGame:
    return SymmetricGame.from_rows(
        ("Rock", "Paper", "Scissors"), [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
    )


@pytest.fixture
def figure1() -> MinmaxCliqueInstance:
    """The worked tiny instance: four singleton cells, three edges, k=2."""
    return MinmaxCliqueInstance.build(
        ["1", "2"],
        ["1", "2"],
        {"v11": ("1", "1"), "v12": ("1", "2"), "v21": ("2", "1"), "v22": ("2", "2")},
        [("v11", "v21"), ("v11", "v22"), ("v12", "v22")],
        2,
    )


# The published 9x9 payoff table for the figure-1 instance, frozen verbatim.
FIGURE1_TABLE = [
    ["1", "0", "2", "2", "3/2", "3/2", "3/2", "3/2", "3/2"],
    ["0", "1", "2", "2", "3/2", "3/2", "3/2", "3/2", "3/2"],
    ["2", "2", "1", "0", "3/2", "3/2", "3/2", "3/2", "3/2"],
    ["2", "2", "0", "1", "3/2", "3/2", "3/2", "3/2", "3/2"],
    ["3/2", "0", "3/2", "3/2", "0", "0", "3", "3", "0"],
    ["0", "3/2", "3/2", "3/2", "0", "0", "0", "3", "0"],
    ["3/2", "3/2", "3/2", "0", "3", "0", "0", "0", "0"],
    ["3/2", "3/2", "0", "3/2", "3", "3", "0", "0", "0"],
    ["3/2", "3/2", "3/2", "3/2", "0", "0", "0", "0", "0"],
]

FIGURE1_NAMES = ("s11", "s12", "s21", "s22", "s_v11", "s_v12", "s_v21", "s_v22", "s0")
