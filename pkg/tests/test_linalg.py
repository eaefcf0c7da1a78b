import random
from fractions import Fraction

from esskit.linalg import solve_fraction_system, solve_int_system


def residual(a, b, x):
    return [sum(Fraction(v) * x[j] for j, v in enumerate(row)) - b[i] for i, row in enumerate(a)]


def test_unique_solution():
    a = [[2, 1], [1, -1]]
    b = [3, 0]
    sol = solve_int_system(a, b)
    assert sol.kind == "unique"
    assert sol.solution == (Fraction(1), Fraction(1))


def test_inconsistent():
    sol = solve_int_system([[1, 1], [2, 2]], [1, 3])
    assert sol.kind == "none"


def test_family_has_valid_nullspace():
    a = [[1, 1, 1], [0, 1, 1]]
    b = [4, 1]
    sol = solve_int_system(a, b)
    assert sol.kind == "multi"
    assert all(v == 0 for v in residual(a, b, sol.solution))
    assert len(sol.nullspace) == 1
    for vec in sol.nullspace:
        assert all(v == 0 for v in residual(a, [0, 0], vec))


def test_wide_and_tall_systems():
    sol = solve_int_system([[1, 2, 3]], [6])
    assert sol.kind == "multi" and len(sol.nullspace) == 2
    sol = solve_int_system([[1], [2], [3]], [1, 2, 3])
    assert sol.kind == "unique" and sol.solution == (Fraction(1),)
    sol = solve_int_system([[1], [2], [3]], [1, 2, 4])
    assert sol.kind == "none"


def test_random_systems_verified_by_substitution():
    rng = random.Random(7)
    for _ in range(300):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(-4, 4) for _ in range(m)]
        sol = solve_int_system(a, b)
        if sol.kind == "none":
            # no x may satisfy the system; spot-check a few random candidates
            for _ in range(10):
                x = [Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n)]
                assert any(v != 0 for v in residual(a, b, x))
        else:
            assert all(v == 0 for v in residual(a, b, sol.solution))
            for vec in sol.nullspace:
                assert all(v == 0 for v in residual(a, [0] * m, vec))
                assert any(v != 0 for v in vec)
            if sol.kind == "unique":
                assert not sol.nullspace


def test_fraction_entries_are_scaled_exactly():
    a = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(2), Fraction(-1, 6)]]
    b = [Fraction(5, 6), Fraction(11, 6)]
    sol = solve_fraction_system(a, b)
    assert sol.kind == "unique"
    assert all(v == 0 for v in residual(a, b, sol.solution))
