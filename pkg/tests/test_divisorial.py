from __future__ import annotations

import pytest

from hibinccr import (TypeParams, chordless_circuits, class_group, conic_classes,
                      conic_polytope, enumerate_conic, expected_weight_table,
                      is_conic, parse_poset, sigma_matrix, spanning_tree)
from hibinccr.divisorial import UnboundedPolytopeError, ConicPolytope
from hibinccr.families import generate_family

from conftest import EXAMPLE_TREE_HINT, load_corpus


def _poset_conic(p, hint=None):
    tree = spanning_tree(p, hint=hint)
    cgd = class_group(sigma_matrix(p), tree)
    cp = conic_polytope(chordless_circuits(p), tree, cgd)
    return cp, enumerate_conic(cp), cgd


def test_running_example_polytope(running_example):
    cp, points, _ = _poset_conic(running_example, hint=EXAMPLE_TREE_HINT)
    assert set(cp.ineqs) == {((1, 0), -2, 2), ((0, 1), -1, 1), ((1, -1), -2, 2)}
    # oracle: direct enumeration over the box with the difference constraint
    expected = sorted((z1, z8) for z1 in range(-2, 3) for z8 in range(-1, 2)
                      if -2 <= z1 - z8 <= 2)
    assert points == expected
    assert len(points) == 13


CLOSED_FORMS = {
    ("I", (0, 1)): lambda c: abs(c[0]) <= 2 and abs(c[1]) <= 1 and abs(c[0] - c[1]) <= 2,
    ("I", (1, 1)): lambda c: abs(c[0]) <= 3 and abs(c[1]) <= 1 and abs(c[0] - c[1]) <= 3,
    ("I", (2, 3)): lambda c: abs(c[0]) <= 6 and abs(c[1]) <= 3 and abs(c[0] - c[1]) <= 6,
    ("II", (1, 1, 1)): lambda c: abs(c[0]) <= 2 and abs(c[1]) <= 2 and abs(c[0] - c[1]) <= 4,
    ("III", (0, 2, 0)): lambda c: abs(c[0]) <= 3 and abs(c[1]) <= 1 and abs(c[0] - c[1]) <= 3,
    ("III", (1, 2, 1)): lambda c: abs(c[0]) <= 5 and abs(c[1]) <= 1 and abs(c[0] - c[1]) <= 5,
    ("IV", (1, 1)): lambda c: abs(c[0]) <= 1 and abs(c[1]) <= 1,
    ("IV", (2, 3)): lambda c: abs(c[0]) <= 2 and abs(c[1]) <= 3,
    ("V", (0,)): lambda c: abs(c[0]) <= 1 and abs(c[1]) <= 1 and abs(c[0] - c[1]) <= 1,
    ("V", (1,)): lambda c: abs(c[0]) <= 2 and abs(c[1]) <= 2 and abs(c[0] - c[1]) <= 2,
    ("V", (2,)): lambda c: abs(c[0]) <= 3 and abs(c[1]) <= 3 and abs(c[0] - c[1]) <= 3,
}


def _closed_form_points(key, bound=20):
    pred = CLOSED_FORMS[key]
    return sorted((x, y) for x in range(-bound, bound + 1)
                  for y in range(-bound, bound + 1) if pred((x, y)))


@pytest.mark.parametrize("tag,params", sorted(CLOSED_FORMS))
def test_family_conic_polytopes(tag, params):
    fam = generate_family(tag, params)
    cgd = class_group(sigma_matrix(fam.poset), fam.figure_tree)
    cp = conic_polytope(chordless_circuits(fam.poset), fam.figure_tree, cgd)
    assert enumerate_conic(cp) == _closed_form_points((tag, params))


@pytest.mark.parametrize("tag,params", sorted(CLOSED_FORMS))
def test_family_conic_by_critical_characters(tag, params):
    # basis-free route: the table weights alone determine the conic classes
    table = expected_weight_table(TypeParams(tag, params, "as-given"))
    assert conic_classes(table) == _closed_form_points((tag, params))


def test_enumerate_rank_zero():
    p = parse_poset("elements: a\n")
    cp, points, _ = _poset_conic(p)
    assert points == [()]


def test_enumerate_unbounded_rejected():
    cp = ConicPolytope(ineqs=(((1, 0), -2, 2),), rank=2)
    with pytest.raises(UnboundedPolytopeError):
        enumerate_conic(cp)


def test_type4_small_rectangle():
    fam = generate_family("IV", (1, 1))
    cgd = class_group(sigma_matrix(fam.poset), fam.figure_tree)
    cp = conic_polytope(chordless_circuits(fam.poset), fam.figure_tree, cgd)
    assert enumerate_conic(cp) == [(x, y) for x in (-1, 0, 1) for y in (-1, 0, 1)]


# ---------------------------------------------------------------------------
# the critical-character test


def test_zero_is_always_conic():
    for name in ["running_example.poset", "type2_l1_m1_n1.poset", "type5_n1.poset"]:
        p = parse_poset(load_corpus(name))
        cgd = class_group(sigma_matrix(p), spanning_tree(p))
        assert is_conic((0,) * cgd.rank, cgd)


def test_critical_character_examples():
    table = expected_weight_table(TypeParams("I", (0, 1), "as-given"))
    assert not is_conic((3, 0), table)
    assert is_conic((2, 1), table)
    assert is_conic((0, 0), table)
    assert is_conic((2, -1), table) is False  # outside the difference bound


def test_rank1_interval_by_critical_characters():
    weights = [(1,), (-2,), (4,), (-3,)]
    points = conic_classes(weights)
    assert points == [(a,) for a in range(-4, 5)]


CORPUS_POSETS = [
    "running_example.poset", "type1_m0_n1.poset", "type1_m1_n1.poset", "type1_m2_n3.poset",
    "type2_l1_m1_n1.poset", "type3_l0_m2_n0.poset", "type3_l1_m2_n1.poset",
    "type4_m1_n1.poset", "type4_m2_n3.poset", "type5_n0.poset", "type5_n1.poset",
    "type5_n2.poset", "segre_m1.poset", "segre_m2.poset", "segre_m3.poset",
]


@pytest.mark.parametrize("name", CORPUS_POSETS)
def test_oracle_agreement_on_doubled_box(name):
    """The circuit polytope and the critical-character test are independent
    characterizations; they must agree on every class near the polytope."""
    p = parse_poset(load_corpus(name))
    tree = spanning_tree(p)
    cgd = class_group(sigma_matrix(p), tree)
    cp = conic_polytope(chordless_circuits(p), tree, cgd)
    points = set(enumerate_conic(cp))
    if cgd.rank == 0:
        assert points == {()}
        return
    spans = []
    for k in range(cgd.rank):
        hi = max(abs(pt[k]) for pt in points)
        spans.append(2 * hi)
    if cgd.rank == 1:
        box = [(a,) for a in range(-spans[0], spans[0] + 1)]
    else:
        box = [(a, b) for a in range(-spans[0], spans[0] + 1)
               for b in range(-spans[1], spans[1] + 1)]
    for chi in box:
        assert is_conic(chi, cgd) == (chi in points), chi


@pytest.mark.parametrize("name", CORPUS_POSETS)
def test_central_symmetry_on_pure_corpus(name):
    p = parse_poset(load_corpus(name))
    tree = spanning_tree(p)
    cgd = class_group(sigma_matrix(p), tree)
    cp = conic_polytope(chordless_circuits(p), tree, cgd)
    points = set(enumerate_conic(cp))
    assert points == {tuple(-c for c in pt) for pt in points}


def test_conic_count_tree_invariant(running_example):
    _, defaults, _ = _poset_conic(running_example)
    _, hinted, _ = _poset_conic(running_example, hint=EXAMPLE_TREE_HINT)
    assert len(defaults) == len(hinted) == 13


def test_rank3_both_routes_agree():
    # four parallel two-edge chains: rank-3 class group; the circuit route
    # and the critical-character route must still coincide
    p = parse_poset("elements: a b c d\n")
    tree = spanning_tree(p)
    cgd = class_group(sigma_matrix(p), tree)
    assert cgd.rank == 3
    cp = conic_polytope(chordless_circuits(p), tree, cgd)
    assert sorted(enumerate_conic(cp)) == conic_classes(cgd)


def test_duplicate_circuits_merge(running_example):
    tree = spanning_tree(running_example, hint=EXAMPLE_TREE_HINT)
    cgd = class_group(sigma_matrix(running_example), tree)
    circuits = chordless_circuits(running_example)
    doubled = conic_polytope(circuits + circuits, tree, cgd)
    single = conic_polytope(circuits, tree, cgd)
    assert doubled == single
