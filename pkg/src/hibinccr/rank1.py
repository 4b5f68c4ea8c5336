"""Gorenstein toric rings with infinite cyclic class group.

The divisor weights are integers summing to zero; minus the sum of the
negative ones bounds everything: rank-one MCM classes form the symmetric
interval it cuts out, every basic module giving a splitting NCCR is a window
of consecutive classes of exactly that length, and in dimension three the
windows are connected by mutations at their end summands, giving a path as
the exchange graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from . import divisorial, mcm
from .classgroup import ClassGroupData
from .intlattice import Vec


class Rank1InputError(ValueError):
    """Weight system outside the supported shape (needs two weights of each
    sign, total zero, coprime)."""


@dataclass(frozen=True)
class Rank1Weights:
    """Divisor weights of a rank-one class group, sorted ascending."""

    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        ws = self.weights
        if any(w == 0 for w in ws):
            raise Rank1InputError("zero weights are not allowed")
        if sum(ws) != 0:
            raise Rank1InputError("weights must sum to zero (Gorenstein)")
        if sum(1 for w in ws if w > 0) < 2 or sum(1 for w in ws if w < 0) < 2:
            raise Rank1InputError("need at least two weights of each sign")
        g = 0
        for w in ws:
            g = gcd(g, abs(w))
        if g != 1:
            raise Rank1InputError("weights must be coprime")
        if tuple(sorted(ws)) != ws:
            object.__setattr__(self, "weights", tuple(sorted(ws)))

    @staticmethod
    def from_class_group(cgd: ClassGroupData) -> "Rank1Weights":
        if cgd.rank != 1:
            raise Rank1InputError(f"class group rank is {cgd.rank}, not 1")
        return Rank1Weights(weights=tuple(sorted(w[0] for w in cgd.weights)))

    @property
    def negative_count(self) -> int:
        return sum(1 for w in self.weights if w < 0)

    @property
    def negatives(self) -> tuple[int, ...]:
        return tuple(w for w in self.weights if w < 0)

    @property
    def positives(self) -> tuple[int, ...]:
        return tuple(w for w in self.weights if w > 0)

    @property
    def dimension(self) -> int:
        """Krull dimension of the ring: one less than the weight count."""
        return len(self.weights) - 1

    def as_vectors(self) -> list[Vec]:
        return [(w,) for w in self.weights]


@dataclass(frozen=True)
class McmBound:
    """Number of NCCR summands and the interval of MCM classes."""

    summands: int
    interval: tuple[int, int]


def mcm_bound(w: Rank1Weights) -> McmBound:
    """Minus the sum of the negative weights; MCM classes are the symmetric
    open interval it bounds.  Cross-checked against the conic test on a
    doubled window."""
    beta = -sum(w.negatives)
    lo, hi = -beta + 1, beta - 1
    vectors = w.as_vectors()
    for a in range(-2 * beta, 2 * beta + 1):
        in_interval = lo <= a <= hi
        if divisorial.is_conic((a,), vectors) != in_interval:
            raise AssertionError(
                f"conic test disagrees with the interval at {a}")
        if mcm.is_mcm((a,), vectors) != in_interval:
            raise AssertionError(
                f"MCM interval test disagrees with the chamber data at {a}")
    return McmBound(summands=beta, interval=(lo, hi))


@dataclass(frozen=True)
class Window:
    """Consecutive divisorial-ideal classes T(lo), ..., T(lo+size-1)."""

    lo: int
    size: int

    @property
    def hi(self) -> int:
        return self.lo + self.size - 1

    @property
    def classes(self) -> tuple[int, ...]:
        return tuple(range(self.lo, self.lo + self.size))

    def label(self) -> str:
        return f"T[{self.lo}..{self.hi}]"


def base_window(w: Rank1Weights) -> Window:
    """The window starting at 0; all windows of this length, and only those,
    are the basic modules giving splitting NCCRs."""
    return Window(lo=0, size=mcm_bound(w).summands)


@dataclass(frozen=True)
class MutationResult:
    window: Window
    mutated_class: int
    kernel_class: int
    middle_classes: tuple[int, int]


def mutate_window(win: Window, end: str, w: Rank1Weights) -> MutationResult:
    """Mutation at an end summand (dimension three only).

    Replacing the low-end summand shifts the window up by one; the defining
    short exact sequence has middle terms shifted by the negative weight
    magnitudes and kernel shifted by the full summand count.  The high end
    mirrors this through the positive weights.
    """
    if w.dimension != 3:
        raise Rank1InputError("end mutations are defined for dimension 3 "
                              "(exactly four weights)")
    beta = mcm_bound(w).summands
    if win.size != beta:
        raise ValueError(f"window size {win.size} does not give an NCCR "
                         f"(needs {beta})")
    if end == "low":
        c = win.lo
        shifts = tuple(sorted(-v for v in w.negatives))
        result = Window(lo=win.lo + 1, size=win.size)
        kernel = c + beta
        middles = (c + shifts[0], c + shifts[1])
    elif end == "high":
        c = win.hi
        shifts = tuple(sorted(w.positives))
        result = Window(lo=win.lo - 1, size=win.size)
        kernel = c - beta
        middles = (c - shifts[1], c - shifts[0])
    else:
        raise ValueError("end must be 'low' or 'high'")
    for cls in (kernel, *middles):
        assert result.lo <= cls <= result.hi, "approximation data left the window"
    return MutationResult(window=result, mutated_class=c, kernel_class=kernel,
                          middle_classes=middles)


@dataclass(frozen=True)
class ExchangeGraph:
    vertices: tuple[Window, ...]
    edges: tuple[tuple[int, int, int], ...]  # (index, index, mutated T-class)
    edge_error: Optional[str] = None


def exchange_graph(w: Rank1Weights, generators_only: bool = True,
                   radius: Optional[int] = None) -> ExchangeGraph:
    """The mutation graph on windows: a path.

    With ``generators_only`` the vertices are the windows containing class 0;
    otherwise all windows with |lo| up to the radius.  Edges need dimension
    three; for other dimensions the vertex list is still returned, with the
    error recorded.
    """
    beta = mcm_bound(w).summands
    if generators_only:
        los = range(-beta + 1, 1)
    else:
        r = beta if radius is None else radius
        los = range(-r, r + 1)
    vertices = tuple(Window(lo=lo, size=beta) for lo in los)
    if w.dimension != 3:
        return ExchangeGraph(vertices=vertices, edges=(),
                             edge_error="mutation edges need dimension 3 "
                                        "(exactly four weights)")
    edges = []
    for i in range(len(vertices) - 1):
        # vertices[i+1] is vertices[i] shifted up; the move between them
        # mutates the low end of the lower window
        edges.append((i, i + 1, vertices[i].lo))
    for i, j, cls in edges:
        res = mutate_window(vertices[i], "low", w)
        assert res.window == vertices[j] and res.mutated_class == cls
        back = mutate_window(vertices[j], "high", w)
        assert back.window == vertices[i], "double mutation must return"
    return ExchangeGraph(vertices=vertices, edges=tuple(edges))


def exchange_graph_dot(graph: ExchangeGraph, generators_only: bool = True) -> str:
    """Render as DOT; generator windows also carry their module label."""
    lines = ["graph exchange {", "  rankdir=LR;"]
    for i, v in enumerate(graph.vertices):
        label = v.label()
        if generators_only:
            label = f"M({-v.lo}) = {label}"
        lines.append(f'  w{i} [label="{label}"];')
    for i, j, cls in graph.edges:
        lines.append(f'  w{i} -- w{j} [label="T({cls})"];')
    if graph.edge_error:
        lines.append(f"  // edges omitted: {graph.edge_error}")
    lines.append("}")
    return "\n".join(lines) + "\n"
