"""The five families of pure bounded posets with class group of rank two.

A pure poset whose Hasse graph has one more edge than vertices (and no
degree-one vertex, no edge shared by all maximal chains) falls into exactly
one of five shapes, read off from its degree profile:

  I    one endpoint and one interior vertex of degree 3
  II   two interior degree-3 vertices on different maximal chains,
       joined by a cross chain
  III  two interior degree-3 vertices on the same chain, joined by a
       pair of parallel chains (a diamond)
  IV   a single interior vertex of degree 4
  V    degree 3 at both endpoints (three parallel chains)

Each family carries a weight table for its divisor classes and a box of
characters whose covariants assemble into a splitting NCCR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .intlattice import Vec
from .posets import (BOTTOM, TOP, BoundedPoset, TreeSelection, build_poset, is_pure,
                     polynomial_extension_edge, rank_function, spanning_tree)

AS_GIVEN = "as-given"
FLIPPED = "flipped"


@dataclass(frozen=True)
class TypeParams:
    type_tag: str            # "I" .. "V"
    params: tuple[int, ...]  # (m, n) / (l, m, n) / (n,)
    orientation: str         # AS_GIVEN or FLIPPED


@dataclass(frozen=True)
class Rejection:
    code: str     # "rank" | "degree" | "polynomial-extension" | "not-gorenstein"
    message: str


ClassifyResult = Union[TypeParams, Rejection]

_PARAM_RANGES = {
    "I": ((0, 1), ("m", "n")),
    "II": ((0, 1, 0), ("l", "m", "n")),
    "III": ((0, 2, 0), ("l", "m", "n")),
    "IV": ((1, 1), ("m", "n")),
    "V": ((0,), ("n",)),
}


def validate_params(type_tag: str, params: Sequence[int]) -> tuple[int, ...]:
    if type_tag not in _PARAM_RANGES:
        raise ValueError(f"unknown type {type_tag!r}")
    minima, names = _PARAM_RANGES[type_tag]
    params = tuple(int(v) for v in params)
    if len(params) != len(minima):
        raise ValueError(f"type {type_tag} takes parameters {names}")
    for value, least, name in zip(params, minima, names):
        if value < least:
            raise ValueError(f"type {type_tag} needs {name} >= {least}")
    return params


# ---------------------------------------------------------------------------
# classification


def classify(p: BoundedPoset) -> ClassifyResult:
    """Match a bounded poset against the five rank-two families.

    All failures are typed rejections, never exceptions.  Parameters are
    canonical under turning the diagram upside down: of the two readings the
    lexicographically smaller parameter tuple is reported, with the
    orientation recording which reading produced it.
    """
    n_edges, n_vertices = p.n_edges, len(p.elements)
    if n_edges - n_vertices != 1:
        return Rejection("rank", f"class group rank is {n_edges - n_vertices + 2}, not 2")
    if p.degree(BOTTOM) == 1 or p.degree(TOP) == 1:
        return Rejection("degree", "an endpoint has degree 1: polynomial extension")
    poly = polynomial_extension_edge(p)
    if poly is not None:
        l, u = p.edges[poly]
        return Rejection("polynomial-extension",
                         f"edge e{poly + 1} = {{{l}, {u}}} lies on every maximal chain")
    purity = is_pure(p)
    if not purity.pure:
        return Rejection("not-gorenstein", "poset is not pure, the ring is not Gorenstein")

    rank = rank_function(p)
    assert rank is not None and purity.chain_length is not None
    length = purity.chain_length
    deg3 = [el for el in p.elements if p.degree(el) == 3]
    deg4 = [el for el in p.elements if p.degree(el) == 4]
    assert (len(deg3), len(deg4)) in ((2, 0), (0, 1)), "degree profile is forced"

    if deg4:
        v = deg4[0]
        m, n = rank[v] - 1, length - rank[v] - 1
        return _canonical("IV", (m, n), (n, m))

    a, b = deg3
    special = [el for el in (a, b) if el in (BOTTOM, TOP)]
    if len(special) == 2:
        return TypeParams("V", (length - 2,), AS_GIVEN)
    if len(special) == 1:
        w = a if b in (BOTTOM, TOP) else b
        if special[0] == TOP:
            return TypeParams("I", (rank[w] - 1, length - rank[w] - 1), AS_GIVEN)
        return TypeParams("I", (length - rank[w] - 1, rank[w] - 1), FLIPPED)

    # both interior: II or III, split at the up/down valencies
    splitter = next(el for el in (a, b) if len(p.up_neighbors(el)) == 2)
    merger = next(el for el in (a, b) if len(p.down_neighbors(el)) == 2)
    assert splitter != merger
    arms = [_walk_up(p, u, {splitter, merger}) for u in p.up_neighbors(splitter)]
    into_merger = [end for end, steps in arms if end == merger]
    l = rank[splitter] - 1
    n = length - rank[merger] - 1
    if len(into_merger) == 2:
        m = rank[merger] - rank[splitter]
        return _canonical("III", (l, m, n), (n, m, l))
    if len(into_merger) == 1:
        m = rank[merger] - rank[splitter]
        return _canonical("II", (l, m, n), (n, m, l))
    raise AssertionError("splitter arms reach neither pattern")  # poly-ext caught above


def _walk_up(p: BoundedPoset, start: str, stops: set[str]) -> tuple[str, int]:
    cur, steps = start, 1
    while cur not in stops and cur != TOP:
        ups = p.up_neighbors(cur)
        assert len(ups) == 1, "walk must follow a plain chain"
        cur = ups[0]
        steps += 1
    return cur, steps


def _canonical(tag: str, as_given: tuple[int, ...], flipped: tuple[int, ...]) -> TypeParams:
    if as_given <= flipped:
        return TypeParams(tag, as_given, AS_GIVEN)
    return TypeParams(tag, flipped, FLIPPED)


# ---------------------------------------------------------------------------
# weight tables


def expected_weight_table(tp: TypeParams) -> list[Vec]:
    """The divisor class multiset of a family member, in the basis attached
    to its two designated cotree edges."""
    params = validate_params(tp.type_tag, tp.params)
    if tp.type_tag == "I":
        m, n = params
        table = [((1, 0), m + n + 2), ((0, 1), n + 1), ((-1, 0), m + 1),
                 ((-1, -1), n + 1)]
    elif tp.type_tag == "II":
        l, m, n = params
        table = [((1, 0), l + m + 1), ((0, 1), m + n + 1), ((-1, 0), l + 1),
                 ((0, -1), n + 1), ((-1, -1), m)]
    elif tp.type_tag == "III":
        l, m, n = params
        table = [((1, 0), l + m + n + 2), ((0, 1), m), ((-1, 0), l + n + 2),
                 ((-1, -1), m)]
    elif tp.type_tag == "IV":
        m, n = params
        table = [((1, 0), m + 1), ((0, 1), n + 1), ((-1, 0), m + 1),
                 ((0, -1), n + 1)]
    else:
        n, = params
        table = [((1, 0), n + 2), ((0, 1), n + 2), ((-1, -1), n + 2)]
    out: list[Vec] = []
    for vec, mult in table:
        out += [vec] * mult
    return out


# ---------------------------------------------------------------------------
# family generators


@dataclass(frozen=True)
class GeneratedFamily:
    poset: BoundedPoset
    params: TypeParams
    figure_tree: TreeSelection  # the spanning tree whose cotree matches the table


def _chain_names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i:02d}" for i in range(1, count + 1)]


def _chain_covers(names: Sequence[str]) -> list[tuple[str, str]]:
    return [(names[i], names[i + 1]) for i in range(len(names) - 1)]


def generate_family(type_tag: str, params: Sequence[int]) -> GeneratedFamily:
    """Build the family member with the given parameters, plus the spanning
    tree that realizes the documented weight table."""
    params = validate_params(type_tag, params)
    covers: list[tuple[str, str]]
    chains: list[list[str]]
    if type_tag == "I":
        m, n = params
        left = _chain_names("l", m + n + 1)
        leg = _chain_names("r", m) + ["w"]
        arm_s = ["w"] + _chain_names("s", n)
        arm_t = ["w"] + _chain_names("t", n)
        chains = [left, leg, arm_s, arm_t]
        cotree_ends = ((BOTTOM, left[0]), (arm_t[-1], TOP))
    elif type_tag == "II":
        l, m, n = params
        left = _chain_names("a", l + m) + ["y"] + _chain_names("c", n)
        right = _chain_names("b", l) + ["x"] + _chain_names("d", m + n)
        middle = ["x"] + _chain_names("m", m - 1) + ["y"]
        chains = [left, right, middle]
        cotree_ends = ((BOTTOM, left[0]), (right[-1], TOP))
    elif type_tag == "III":
        l, m, n = params
        left = _chain_names("a", l + m + n + 1)
        lower = _chain_names("b", l) + ["x"]
        arm_u = ["x"] + _chain_names("u", m - 1) + ["y"]
        arm_v = ["x"] + _chain_names("v", m - 1) + ["y"]
        upper = ["y"] + _chain_names("c", n)
        chains = [left, lower, arm_u, arm_v, upper]
        cotree_ends = ((BOTTOM, left[0]), (arm_v[-2], "y"))
    elif type_tag == "IV":
        m, n = params
        low_p = _chain_names("p", m) + ["v"]
        low_q = _chain_names("q", m) + ["v"]
        up_s = ["v"] + _chain_names("s", n)
        up_t = ["v"] + _chain_names("t", n)
        chains = [low_p, low_q, up_s, up_t]
        cotree_ends = ((BOTTOM, low_p[0]), (up_t[-1], TOP))
    else:
        n, = params
        chains = [_chain_names("a", n + 1), _chain_names("b", n + 1),
                  _chain_names("c", n + 1)]
        cotree_ends = ((BOTTOM, chains[0][0]), (BOTTOM, chains[1][0]))

    covers = [pair for chain in chains for pair in _chain_covers(chain)]
    interior = sorted({el for chain in chains for el in chain})
    poset = build_poset(interior, covers)
    cot = [poset.edge_index(*pair) for pair in cotree_ends]
    assert all(k is not None for k in cot)
    tree = spanning_tree(poset, hint=[k for k in range(poset.n_edges)
                                      if k not in cot])
    tp = classify(poset)
    assert isinstance(tp, TypeParams) and tp.type_tag == type_tag
    return GeneratedFamily(poset=poset, params=TypeParams(type_tag, params, AS_GIVEN),
                           figure_tree=tree)


def segre_poset(m: int) -> BoundedPoset:
    """Two parallel chains with m+1 edges each: the rank-one family."""
    if m < 1:
        raise ValueError("need m >= 1")
    chain_a = _chain_names("a", m)
    chain_b = _chain_names("b", m)
    return build_poset(chain_a + chain_b, _chain_covers(chain_a) + _chain_covers(chain_b))
