from __future__ import annotations

import random

import sympy
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from hibinccr.intlattice import (angle_key, convex_hull, cross,
                                 find_unimodular_match, invariant_factors,
                                 lattice_contains, lattice_rank, primitive,
                                 rational_rank, smith_normal_form,
                                 solve_integer)


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def _det(m):
    return sympy.Matrix(m).det()


def test_snf_transforms_random():
    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 5)
        d = rng.randint(1, 5)
        a = [[rng.randint(-6, 6) for _ in range(d)] for _ in range(n)]
        dd, u, v = smith_normal_form(a)
        assert _matmul(_matmul(u, a), v) == dd
        assert abs(_det(u)) == 1
        assert abs(_det(v)) == 1
        for i in range(n):
            for j in range(d):
                if i != j:
                    assert dd[i][j] == 0
        diag = [dd[i][i] for i in range(min(n, d))]
        for x, y in zip(diag, diag[1:]):
            if x != 0:
                assert y % x == 0
        expected = sympy_snf(sympy.Matrix(a), domain=sympy.ZZ)
        exp_diag = [abs(expected[i, i]) for i in range(min(n, d))]
        assert [abs(x) for x in diag] == exp_diag


def test_invariant_factors_example():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[2, 0], [0, 4]]) == [2, 4]


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank([[1, 0], [0, 1]]) == 2


def test_solve_integer():
    assert solve_integer([[2, 0], [0, 3], [1, 1]], [4, 6, 4]) == [2, 2]
    assert solve_integer([[2]], [3]) is None  # non-integral
    assert solve_integer([[1, 0], [0, 1], [1, 1]], [1, 1, 3]) is None  # inconsistent


def test_lattice_contains():
    assert lattice_contains([(2, 0), (0, 2)], (4, -6))
    assert not lattice_contains([(2, 0), (0, 2)], (1, 0))
    assert lattice_contains([(1, 1), (1, -1)], (2, 0))
    assert not lattice_contains([(1, 1), (1, -1)], (1, 0))
    assert lattice_contains([], (0, 0))
    assert not lattice_contains([], (1, 0))


def test_lattice_rank():
    assert lattice_rank([(1, 2), (2, 4)]) == 1
    assert lattice_rank([(1, 0), (0, 1)]) == 2
    assert lattice_rank([]) == 0


def test_unimodular_match_swap():
    src = [(1, 1), (-1, 0), (0, -1)]
    tgt = [(1, 1), (0, -1), (-1, 0)]
    u = find_unimodular_match(src, tgt)
    assert u is not None
    assert abs(u[0][0] * u[1][1] - u[0][1] * u[1][0]) == 1


def test_unimodular_match_negation():
    src = [(1, 0), (0, 1), (-1, -1)]
    tgt = [(-1, 0), (0, -1), (1, 1)]
    assert find_unimodular_match(src, tgt) is not None


def test_unimodular_no_match():
    assert find_unimodular_match([(1, 0), (0, 1)], [(1, 0), (0, 2)]) is None


def test_unimodular_match_rank1():
    assert find_unimodular_match([(1,), (-2,)], [(-1,), (2,)]) == [[-1]]
    assert find_unimodular_match([(1,), (2,)], [(1,), (3,)]) is None


def test_angle_key_orders_counterclockwise():
    vecs = [(1, 0), (2, 1), (0, 1), (-1, 1), (-1, 0), (-2, -1), (0, -1), (1, -1)]
    assert sorted(vecs, key=angle_key) == vecs


def test_convex_hull_square():
    pts = [(x, y) for x in range(3) for y in range(3)]
    hull = convex_hull(pts)
    assert set(hull) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    # counterclockwise orientation
    area2 = sum(cross(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull)))
    assert area2 > 0


def test_primitive():
    assert primitive((4, -6)) == (2, -3)
    assert primitive((0, 5)) == (0, 1)
    assert primitive((0, 0)) == (0, 0)
