"""Rank-one maximal Cohen-Macaulay classes via the one-parameter-subgroup
criterion.

The unit ball of one-parameter subgroups is cut into chambers on which the
set of negatively-pairing divisor weights is constant.  Every chamber that
contains both of its boundary rays, and every open sector, contributes an
affine semigroup of non-MCM characters; a class is MCM iff it avoids all of
them (half-open chambers never matter).
All decisions are exact integer arithmetic; semigroup membership is a finite
search guided by a strictly positive linear functional.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Optional, Sequence

from . import intlattice
from .divisorial import WeightsLike, weight_list
from .intlattice import Vec, angle_key, cross, dot, primitive

CLOSED = "closed"        # contains both boundary rays (lone ray or closed cone)
HALF_OPEN = "half_open"  # contains exactly one boundary ray
OPEN = "open"            # open sector


class NotGorensteinError(ValueError):
    """MCM classification is only run for weight systems summing to zero."""


class CriterionHypothesisError(ValueError):
    """The chamber sizes violate the applicability hypothesis of the MCM
    criterion; results would be meaningless, so we refuse instead."""


@dataclass(frozen=True)
class Chamber:
    t_set: tuple[int, ...]          # divisor indices pairing strictly negatively
    kind: str                       # CLOSED / HALF_OPEN / OPEN
    witness: Vec                    # an integer direction inside the chamber
    boundary_rays_included: int     # 2 / 1 / 0 matching kind


@dataclass(frozen=True)
class ChamberDecomposition:
    chambers: tuple[Chamber, ...]
    hypothesis_failures: tuple[tuple[int, int, int], ...]  # (index, size, needed)

    @property
    def hypothesis_ok(self) -> bool:
        return not self.hypothesis_failures


@dataclass(frozen=True)
class NonMcmCone:
    """Characters offset + (non-negative combination of generators) are the
    non-MCM classes detected by one chamber."""

    offset: Vec
    generators: tuple[Vec, ...]


def _pairing_t_set(direction: Vec, ws: Sequence[Vec]) -> tuple[int, ...]:
    return tuple(i for i, w in enumerate(ws) if dot(direction, w) < 0)


def chamber_decomposition(weights: WeightsLike) -> ChamberDecomposition:
    """Split the nonzero directions into maximal classes with constant
    negative-pairing set; classes are ordered counterclockwise starting with
    the sector just past the first critical ray."""
    ws = weight_list(weights)
    if not ws:
        raise ValueError("empty weight system")
    rank = len(ws[0])
    if rank == 1:
        chambers = tuple(
            Chamber(t_set=_pairing_t_set(lam, ws), kind=CLOSED, witness=lam,
                    boundary_rays_included=2)
            for lam in ((1,), (-1,)))
        return _with_hypothesis(chambers)
    if rank != 2:
        raise ValueError("chamber decomposition implemented for rank 1 and 2")

    rays: set[Vec] = set()
    for w in ws:
        if w == (0, 0):
            continue
        n = primitive((-w[1], w[0]))
        rays.add(n)
        rays.add((-n[0], -n[1]))
    if not rays:
        raise ValueError("all weights are zero")
    ordered = sorted(rays, key=angle_key)

    # atomic pieces, counterclockwise: sector after ray i, then ray i+1; the
    # list ends with the first ray itself
    pieces: list[tuple[str, Vec]] = []
    m = len(ordered)
    for i in range(m):
        a = ordered[i]
        b = ordered[(i + 1) % m]
        if cross(a, b) > 0:
            mid: Vec = (a[0] + b[0], a[1] + b[1])
        else:  # opposite rays: the gap is half a turn
            mid = (-a[1], a[0])
        pieces.append(("sector", primitive(mid)))
        pieces.append(("ray", b))

    t_sets = [_pairing_t_set(wit, ws) for _, wit in pieces]

    runs: list[list[int]] = []
    for idx in range(len(pieces)):
        if runs and t_sets[runs[-1][-1]] == t_sets[idx]:
            runs[-1].append(idx)
        else:
            runs.append([idx])
    if len(runs) > 1 and t_sets[runs[0][0]] == t_sets[runs[-1][-1]]:
        runs[0] = runs[-1] + runs[0]
        runs.pop()
    assert len(runs) >= 2, "degenerate decomposition: constant pairing sets"

    chambers = []
    for run in runs:
        starts_with_ray = pieces[run[0]][0] == "ray"
        ends_with_ray = pieces[run[-1]][0] == "ray"
        included = int(starts_with_ray) + int(ends_with_ray)
        if len(run) == 1 and starts_with_ray:
            included = 2  # a lone ray is its own closed boundary
        kind = {2: CLOSED, 1: HALF_OPEN, 0: OPEN}[included]
        chambers.append(Chamber(t_set=t_sets[run[0]], kind=kind,
                                witness=pieces[run[0]][1],
                                boundary_rays_included=included))
    return _with_hypothesis(tuple(chambers))


def _with_hypothesis(chambers: tuple[Chamber, ...]) -> ChamberDecomposition:
    failures = []
    for i, c in enumerate(chambers):
        needed = {CLOSED: 2, OPEN: 3}.get(c.kind)
        if needed is not None and len(c.t_set) < needed:
            failures.append((i, len(c.t_set), needed))
    return ChamberDecomposition(chambers=chambers,
                                hypothesis_failures=tuple(failures))


def non_mcm_cone(chamber: Chamber, weights: WeightsLike) -> NonMcmCone:
    """The affine semigroup of non-MCM characters attached to a chamber:
    spend one unit of every weight outside the T-set (that is the offset),
    then move freely by negated outside weights and plain T weights."""
    if chamber.kind == HALF_OPEN:
        raise ValueError("half-open chambers never contribute non-MCM cones")
    ws = weight_list(weights)
    rank = len(ws[0])
    t = set(chamber.t_set)
    offset = [0] * rank
    gens: set[Vec] = set()
    for i, w in enumerate(ws):
        if i in t:
            gens.add(w)
        else:
            for k in range(rank):
                offset[k] -= w[k]
            gens.add(tuple(-c for c in w))
    gens.discard((0,) * rank)
    return NonMcmCone(offset=tuple(offset), generators=tuple(sorted(gens)))


# ---------------------------------------------------------------------------
# exact membership in a finitely generated affine semigroup (rank <= 2)


def semigroup_member(target: Vec, generators: Sequence[Vec]) -> bool:
    """Is the target a non-negative integer combination of the generators?

    Exact for arbitrary generator sets in rank 1 or 2.  Generators whose
    negative lies in the rational cone of the whole set act invertibly, so
    they collapse into a sublattice; the remaining generators admit a
    strictly positive integer functional, which makes the leftover search
    finite.
    """
    rank = len(target)
    gens = sorted({tuple(g) for g in generators if any(c != 0 for c in g)})
    if all(c == 0 for c in target):
        return True
    if not gens:
        return False
    if rank == 1:
        return _member_1d(target[0], [g[0] for g in gens])
    if rank != 2:
        raise ValueError("semigroup membership implemented for rank 1 and 2")

    units = [g for g in gens if _in_cone_2d((-g[0], -g[1]), gens)]
    rest = [g for g in gens if g not in units]
    if not rest:
        return intlattice.lattice_contains(units, target)

    lat = _lattice_line(units)
    phi = _positive_functional(rest, lat)
    if dot(phi, target) < 0:
        return False
    stack = [target]
    seen = {target}
    while stack:
        x = stack.pop()
        if _in_line_lattice(x, lat):
            return True
        for g in rest:
            nxt = (x[0] - g[0], x[1] - g[1])
            if nxt in seen or dot(phi, nxt) < 0:
                continue
            seen.add(nxt)
            stack.append(nxt)
    return False


def _member_1d(t: int, vals: list[int]) -> bool:
    if any(v > 0 for v in vals) and any(v < 0 for v in vals):
        g = 0
        for v in vals:
            g = gcd(g, abs(v))
        return t % g == 0
    if all(v > 0 for v in vals):
        if t < 0:
            return False
        return _coin_reachable(t, vals)
    if t > 0:
        return False
    return _coin_reachable(-t, [-v for v in vals])


def _coin_reachable(t: int, vals: list[int]) -> bool:
    reach = [False] * (t + 1)
    reach[0] = True
    for s in range(1, t + 1):
        reach[s] = any(v <= s and reach[s - v] for v in vals)
    return reach[t]


def _in_cone_2d(p: Vec, gens: Sequence[Vec]) -> bool:
    """Rational cone membership in the plane; two generators suffice for any
    conic combination, so pairs are enough to test."""
    if p == (0, 0):
        return True
    for g in gens:
        if cross(g, p) == 0 and dot(g, p) > 0:
            return True
    for g, h in combinations(gens, 2):
        det = cross(g, h)
        if det == 0:
            continue
        a_num = cross(p, h)
        b_num = cross(g, p)
        if det < 0:
            a_num, b_num = -a_num, -b_num
        if a_num >= 0 and b_num >= 0:
            return True
    return False


def _positive_functional(rest: Sequence[Vec], lat: Optional[Vec]) -> Vec:
    """Integer functional vanishing on the unit line (if any) and strictly
    positive on the remaining generators."""
    if lat is not None:
        for phi in ((-lat[1], lat[0]), (lat[1], -lat[0])):
            if all(dot(phi, g) > 0 for g in rest):
                return phi
        raise AssertionError("generators not separated from the unit line")
    dirs = sorted({primitive(g) for g in rest})
    if len(dirs) == 1:
        return dirs[0]
    for u, v in ((u, v) for u in dirs for v in dirs if u != v):
        if cross(u, v) <= 0:
            continue
        if all(cross(u, g) >= 0 and cross(g, v) >= 0 for g in dirs):
            phi = (v[1] - u[1], u[0] - v[0])
            assert all(dot(phi, g) > 0 for g in rest)
            return phi
    raise AssertionError("generator cone is not pointed")


def _lattice_line(units: Sequence[Vec]) -> Optional[Vec]:
    """Generator of the rank-1 sublattice spanned by the unit directions."""
    if not units:
        return None
    direction = primitive(units[0])
    comp = 0 if direction[0] != 0 else 1
    g = 0
    for u in units:
        assert cross(direction, u) == 0, "unit directions must be collinear"
        g = gcd(g, abs(u[comp]))
    scale = g // abs(direction[comp])
    return (direction[0] * scale, direction[1] * scale)


def _in_line_lattice(x: Vec, lat: Optional[Vec]) -> bool:
    if lat is None:
        return x == (0, 0)
    if cross(lat, x) != 0:
        return False
    comp = 0 if lat[0] != 0 else 1
    return x[comp] % lat[comp] == 0


def _canon_mod_line(x: Vec, lat: Optional[Vec]) -> Vec:
    if lat is None:
        return x
    comp = 0 if lat[0] != 0 else 1
    k = x[comp] // lat[comp]
    return (x[0] - k * lat[0], x[1] - k * lat[1])


# ---------------------------------------------------------------------------
# the MCM test and regions


def _check_gorenstein(ws: Sequence[Vec]) -> None:
    rank = len(ws[0]) if ws else 0
    if any(sum(w[k] for w in ws) != 0 for k in range(rank)):
        raise NotGorensteinError("weight system does not sum to zero")


def rank1_mcm_interval(ws: Sequence[Vec]) -> tuple[int, int]:
    beta = -sum(w[0] for w in ws if w[0] < 0)
    return (-beta + 1, beta - 1)


def is_mcm(chi: Vec, weights: WeightsLike,
           decomposition: Optional[ChamberDecomposition] = None) -> bool:
    """Is the rank-one class MCM?  Rank 1 reduces to an interval test; rank 2
    runs the chamber criterion (whose hypothesis must hold)."""
    ws = weight_list(weights)
    _check_gorenstein(ws)
    rank = len(ws[0])
    if rank == 1:
        lo, hi = rank1_mcm_interval(ws)
        return lo <= chi[0] <= hi
    if decomposition is None:
        decomposition = chamber_decomposition(ws)
    if not decomposition.hypothesis_ok:
        raise CriterionHypothesisError(
            f"criterion hypothesis fails on chambers {decomposition.hypothesis_failures}")
    for chamber in decomposition.chambers:
        if chamber.kind == HALF_OPEN:
            continue
        cone = non_mcm_cone(chamber, ws)
        shifted = tuple(c - o for c, o in zip(chi, cone.offset))
        if semigroup_member(shifted, cone.generators):
            return False
    return True


def mcm_region(weights: WeightsLike, box: Sequence[tuple[int, int]]) -> set[Vec]:
    """All MCM classes inside the box (inclusive coordinate ranges).

    Equivalent to running :func:`is_mcm` pointwise, but each chamber's
    non-MCM semigroup is closed off once for the whole box.
    """
    ws = weight_list(weights)
    _check_gorenstein(ws)
    rank = len(ws[0])
    if rank == 1:
        lo, hi = rank1_mcm_interval(ws)
        (b_lo, b_hi), = box
        return {(v,) for v in range(max(lo, b_lo), min(hi, b_hi) + 1)}
    decomposition = chamber_decomposition(ws)
    if not decomposition.hypothesis_ok:
        raise CriterionHypothesisError(
            f"criterion hypothesis fails on chambers {decomposition.hypothesis_failures}")
    (x_lo, x_hi), (y_lo, y_hi) = box
    points = {(x, y) for x in range(x_lo, x_hi + 1) for y in range(y_lo, y_hi + 1)}
    bad: set[Vec] = set()
    for chamber in decomposition.chambers:
        if chamber.kind == HALF_OPEN:
            continue
        bad |= _cone_points_in_box(non_mcm_cone(chamber, ws), box)
    return points - bad


def _cone_points_in_box(cone: NonMcmCone, box: Sequence[tuple[int, int]]) -> set[Vec]:
    (x_lo, x_hi), (y_lo, y_hi) = box
    pts = [(x, y) for x in range(x_lo, x_hi + 1) for y in range(y_lo, y_hi + 1)]
    gens = sorted({g for g in cone.generators if g != (0, 0)})
    off = cone.offset
    if not gens:
        return {off} & set(pts)
    units = [g for g in gens if _in_cone_2d((-g[0], -g[1]), gens)]
    rest = [g for g in gens if g not in units]
    if not rest:
        return {p for p in pts
                if intlattice.lattice_contains(units, (p[0] - off[0], p[1] - off[1]))}
    lat = _lattice_line(units)
    phi = _positive_functional(rest, lat)
    budget = max(dot(phi, (p[0] - off[0], p[1] - off[1])) for p in pts)
    if budget < 0:
        return set()
    start = _canon_mod_line((0, 0), lat)
    reach = {start}
    frontier = [start]
    while frontier:
        x = frontier.pop()
        for g in rest:
            nxt = _canon_mod_line((x[0] + g[0], x[1] + g[1]), lat)
            if nxt in reach or dot(phi, nxt) > budget:
                continue
            reach.add(nxt)
            frontier.append(nxt)
    return {p for p in pts
            if _canon_mod_line((p[0] - off[0], p[1] - off[1]), lat) in reach}
