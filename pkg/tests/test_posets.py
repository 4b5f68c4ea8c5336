from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hibinccr import (BOTTOM, TOP, PosetError, build_poset, chordless_circuits,
                      flip, is_pure, parse_poset, polynomial_extension_edge,
                      serialize_poset, spanning_tree)
from hibinccr.posets import relabel

from conftest import EXAMPLE_TREE_HINT, load_corpus


# ---------------------------------------------------------------------------
# parsing


def test_running_example_shape(running_example):
    assert running_example.elements == ("bot", "p1", "p2", "p3", "p4", "p5", "top")
    assert running_example.n_edges == 8
    assert running_example.edges == (
        ("bot", "p1"), ("p1", "p2"), ("p2", "top"), ("bot", "p3"),
        ("p3", "p4"), ("p4", "top"), ("p3", "p5"), ("p5", "top"))


def test_empty_poset():
    p = parse_poset("elements:\n")
    assert p.elements == (BOTTOM, TOP)
    assert p.edges == ((BOTTOM, TOP),)
    assert is_pure(p).pure and is_pure(p).chain_length == 1


def test_redundant_cover_rejected():
    text = "elements: a b c\ncover: a < b\ncover: b < c\ncover: a < c\n"
    with pytest.raises(PosetError, match="transitivity"):
        parse_poset(text)


def test_cyclic_cover_rejected():
    with pytest.raises(PosetError, match="cyclic"):
        parse_poset("elements: a b\ncover: a < b\ncover: b < a\n")


def test_unknown_element_rejected():
    with pytest.raises(PosetError, match="unknown"):
        parse_poset("elements: a\ncover: a < b\n")


def test_reserved_names_rejected():
    with pytest.raises(PosetError, match="reserved"):
        parse_poset("elements: bot x\n")


def test_duplicate_cover_rejected():
    with pytest.raises(PosetError, match="duplicate"):
        parse_poset("elements: a b\ncover: a < b\ncover: a < b\n")


# ---------------------------------------------------------------------------
# purity


def test_running_example_pure(running_example):
    report = is_pure(running_example)
    assert report.pure and report.chain_length == 3


def test_unequal_chains_not_pure():
    p = parse_poset("elements: a b c\ncover: b < c\n")  # chains of length 2 and 3
    assert not is_pure(p).pure


def test_three_parallel_two_edge_chains_pure():
    p = parse_poset("elements: a b c\n")
    assert is_pure(p).pure and is_pure(p).chain_length == 2


# ---------------------------------------------------------------------------
# circuits, with an independent exhaustive oracle


def _oracle_chordless_cycles(p):
    g = nx.Graph()
    g.add_edges_from(p.edges)
    out = []
    for cyc in nx.simple_cycles(g):
        n = len(cyc)
        chordless = True
        for i in range(n):
            for j in range(i + 1, n):
                if (j - i) % n in (1, n - 1):
                    continue
                if g.has_edge(cyc[i], cyc[j]):
                    chordless = False
        if chordless:
            out.append(frozenset(cyc))
    return sorted(out, key=sorted)


def test_running_example_circuits(running_example):
    circuits = chordless_circuits(running_example)
    assert len(circuits) == 3
    assert sorted((frozenset(c.vertex_cycle) for c in circuits), key=sorted) == \
        _oracle_chordless_cycles(running_example)
    by_edges = {(c.x_plus, c.x_minus) for c in circuits}
    assert ((4, 5), (6, 7)) in by_edges          # inner square
    assert ((0, 1, 2), (3, 4, 5)) in by_edges    # outer hexagon
    assert ((0, 1, 2), (3, 6, 7)) in by_edges    # long left-right hexagon


def test_tree_poset_has_no_circuits():
    p = parse_poset("elements: a b c\ncover: a < b\ncover: b < c\n")
    assert chordless_circuits(p) == []


def test_type4_small_circuits():
    p = parse_poset(load_corpus("type4_m1_n1.poset"))
    circuits = chordless_circuits(p)
    # the degree-4 vertex is a cut vertex, so only the two squares are cycles;
    # confirmed by the exhaustive oracle
    assert len(circuits) == 2
    assert len(_oracle_chordless_cycles(p)) == 2


@pytest.mark.parametrize("name", ["type1_m1_n1.poset", "type2_l1_m1_n1.poset",
                                  "type3_l1_m2_n1.poset", "type5_n1.poset"])
def test_circuits_match_oracle(name):
    p = parse_poset(load_corpus(name))
    circuits = chordless_circuits(p)
    assert sorted((frozenset(c.vertex_cycle) for c in circuits), key=sorted) == \
        _oracle_chordless_cycles(p)


def test_pure_circuits_balance():
    for name in ["running_example.poset", "type1_m2_n3.poset", "type3_l0_m2_n0.poset",
                 "type4_m2_n3.poset", "type5_n2.poset"]:
        p = parse_poset(load_corpus(name))
        for c in chordless_circuits(p):
            assert len(c.x_plus) == len(c.x_minus)


# ---------------------------------------------------------------------------
# spanning trees


def test_running_example_tree_hint(running_example):
    tree = spanning_tree(running_example, hint=EXAMPLE_TREE_HINT)
    assert tree.cotree_edges == (0, 7)


def test_chain_tree_is_everything():
    p = parse_poset("elements: a b\ncover: a < b\n")
    tree = spanning_tree(p)
    assert tree.cotree_edges == ()
    assert tree.tree_edges == frozenset(range(p.n_edges))


def test_default_tree_spans(running_example):
    tree = spanning_tree(running_example)
    assert len(tree.tree_edges) == len(running_example.elements) - 1
    assert len(tree.cotree_edges) == 2


def test_bad_hints_rejected(running_example):
    with pytest.raises(PosetError):
        spanning_tree(running_example, hint=[0, 1, 2, 3, 4, 5])  # contains a cycle? no: wrong count ok
    with pytest.raises(PosetError):
        spanning_tree(running_example, hint=[0, 1, 2, 3, 4, 5, 6, 7])
    with pytest.raises(PosetError):
        # right count but contains the square 4,5,6,7
        spanning_tree(running_example, hint=[4, 5, 6, 7, 0, 1])


# ---------------------------------------------------------------------------
# polynomial extension edges


def test_chain_every_edge_qualifies():
    p = parse_poset("elements: a b c\ncover: a < b\ncover: b < c\n")
    assert polynomial_extension_edge(p) == 0


def test_running_example_has_none(running_example):
    assert polynomial_extension_edge(running_example) is None


def test_type1_families_have_none():
    for name in ["type1_m0_n1.poset", "type1_m2_n3.poset"]:
        p = parse_poset(load_corpus(name))
        assert polynomial_extension_edge(p) is None


def test_bridge_edge_detected():
    # two diamonds joined by a bridge: the bridge lies on every maximal chain
    text = ("elements: a b v w c d\n"
            "cover: a < v\ncover: b < v\ncover: v < w\n"
            "cover: w < c\ncover: w < d\n")
    p = parse_poset(text)
    k = polynomial_extension_edge(p)
    assert k is not None
    assert set(p.edges[k]) == {"v", "w"}


# ---------------------------------------------------------------------------
# serialization and canonicity


@pytest.mark.parametrize("name", ["running_example.poset", "type2_l1_m1_n1.poset",
                                  "type5_n0.poset", "segre_m2.poset"])
def test_serialize_round_trip(name):
    p = parse_poset(load_corpus(name))
    assert parse_poset(serialize_poset(p)) == p


def test_parse_ignores_declaration_order():
    a = parse_poset("elements: x y z\ncover: x < y\ncover: x < z\n")
    b = parse_poset("elements: z y x\ncover: x < z\ncover: x < y\n")
    assert a == b


# ---------------------------------------------------------------------------
# property tests on random posets


@st.composite
def random_posets(draw):
    size = draw(st.integers(min_value=0, max_value=6))
    names = [f"v{i}" for i in range(size)]
    rels = set()
    for i in range(size):
        for j in range(i + 1, size):
            if draw(st.booleans()):
                rels.add((i, j))
    # transitive closure, then covers only
    closure = set(rels)
    for k, i, j in itertools.product(range(size), repeat=3):
        if (i, k) in closure and (k, j) in closure:
            closure.add((i, j))
    covers = [(names[i], names[j]) for (i, j) in closure
              if not any((i, k) in closure and (k, j) in closure for k in range(size))]
    return build_poset(names, covers)


@settings(max_examples=60, deadline=None, derandomize=True)
@given(random_posets())
def test_roundtrip_random(p):
    assert parse_poset(serialize_poset(p)) == p


@settings(max_examples=40, deadline=None, derandomize=True)
@given(random_posets())
def test_circuit_count_invariant_under_relabel(p):
    mapping = {el: f"w{i:02d}" for i, el in enumerate(reversed(p.interior))}
    q = relabel(p, mapping)
    circs_p = chordless_circuits(p)
    circs_q = chordless_circuits(q)
    assert len(circs_p) == len(circs_q)
    as_sets_p = sorted(sorted(mapping[v] for v in c.vertex_cycle if v in mapping)
                       for c in circs_p)
    as_sets_q = sorted(sorted(v for v in c.vertex_cycle if v not in (BOTTOM, TOP))
                       for c in circs_q)
    assert as_sets_p == as_sets_q


@settings(max_examples=40, deadline=None, derandomize=True)
@given(random_posets())
def test_flip_involution(p):
    assert flip(flip(p)) == relabel(p, {el: el for el in p.interior})


@settings(max_examples=40, deadline=None, derandomize=True)
@given(random_posets())
def test_pure_random_posets_have_balanced_circuits(p):
    if not is_pure(p).pure:
        return
    for c in chordless_circuits(p):
        assert len(c.x_plus) == len(c.x_minus)
