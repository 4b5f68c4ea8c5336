"""Splitting NCCR construction and verification.

For each family a box of characters is distinguished; its module of
covariants gives a splitting NCCR.  Verifying that claim computationally has
two halves: every pairwise difference of box characters must be MCM, and the
endomorphism ring must have finite global dimension.  The second half is
certified by an inductive log: a character outside the box is discharged by
a direction that strictly separates it from the box and whose Koszul-type
term shifts land on already-discharged characters.  The certificate replays
independently of the search that produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import divisorial, families, mcm, rank1 as rank1_mod
from .classgroup import class_group, sigma_matrix
from .divisorial import WeightsLike, weight_list
from .intlattice import Vec, convex_hull, dot, find_unimodular_match, primitive
from .posets import BoundedPoset, is_pure, polynomial_extension_edge, spanning_tree


class UnusableDirectionError(ValueError):
    """No weight pairs strictly positively with the direction."""


@dataclass(frozen=True)
class CharacterSet:
    chars: tuple[Vec, ...]
    provenance: str = "user"

    def __contains__(self, chi: Vec) -> bool:
        return chi in self._index()

    def _index(self) -> frozenset[Vec]:
        return frozenset(self.chars)


def nccr_characters(type_tag: str, params: Sequence[int]) -> CharacterSet:
    """The box of characters whose covariants sum to a splitting NCCR."""
    params = families.validate_params(type_tag, params)
    if type_tag == "I":
        m, n = params
        hi = (m + n + 1, n)
    elif type_tag == "II":
        l, m, n = params
        hi = (l + m, m + n)
    elif type_tag == "III":
        l, m, n = params
        hi = (l + m + n + 1, m - 1)
    elif type_tag == "IV":
        hi = params
    else:
        n, = params
        hi = (n + 1, n + 1)
    chars = tuple((c1, c2) for c1 in range(hi[0] + 1) for c2 in range(hi[1] + 1))
    label = ",".join(str(v) for v in params)
    return CharacterSet(chars=chars, provenance=f"type {type_tag} ({label})")


def character_window(chars: Sequence[int]) -> CharacterSet:
    """Rank-one character sets (consecutive integers as 1-vectors)."""
    return CharacterSet(chars=tuple((c,) for c in chars), provenance="window")


@dataclass(frozen=True)
class EndMcmReport:
    ok: bool
    checked: int
    first_failure: Optional[tuple[Vec, Vec, Vec]] = None  # (chi, chi', diff)


def endomorphism_is_mcm(chars: CharacterSet, weights: WeightsLike) -> EndMcmReport:
    """Hom between two covariants is the covariant of the difference, so the
    endomorphism ring is MCM iff every ordered difference of characters is."""
    ws = weight_list(weights)
    rank = len(ws[0])
    if rank == 2:
        decomposition = mcm.chamber_decomposition(ws)
    else:
        decomposition = None
    ordered = sorted(chars.chars)
    checked = 0
    seen: dict[Vec, bool] = {}
    for chi in ordered:
        for chi2 in ordered:
            diff = tuple(b - a for a, b in zip(chi, chi2))
            checked += 1
            if diff not in seen:
                seen[diff] = mcm.is_mcm(diff, ws, decomposition)
            if not seen[diff]:
                return EndMcmReport(ok=False, checked=checked,
                                    first_failure=(chi, chi2, diff))
    return EndMcmReport(ok=True, checked=checked)


def is_separated(chi: Vec, chars: CharacterSet, direction: Vec) -> bool:
    """Strictly smaller pairing with the direction than every set member."""
    val = dot(direction, chi)
    return all(val < dot(direction, nu) for nu in chars.chars)


def koszul_terms(chi: Vec, direction: Vec, weights: WeightsLike) -> tuple[Vec, ...]:
    """All shifts of chi by sums of distinct positively-pairing weights.

    Weights are grouped by value; picking distinct indices is the same as
    capping each value's coefficient at its multiplicity.  Terms are
    deduplicated and sorted; chi itself never appears (every shift pairs
    strictly positively with the direction).
    """
    ws = weight_list(weights)
    positive: dict[Vec, int] = {}
    for w in ws:
        if dot(direction, w) > 0:
            positive[w] = positive.get(w, 0) + 1
    if not positive:
        raise UnusableDirectionError(f"no weight pairs positively with {direction}")
    terms = {chi}
    for value, mult in sorted(positive.items()):
        terms = {tuple(t[k] + c * value[k] for k in range(len(chi)))
                 for t in terms for c in range(mult + 1)}
    terms.discard(chi)
    return tuple(sorted(terms))


@dataclass(frozen=True)
class CertStep:
    chi: Vec
    direction: Vec
    deps: tuple[Vec, ...]


@dataclass(frozen=True)
class GldimCertificate:
    steps: tuple[CertStep, ...]
    goal: tuple[Vec, ...]

    def to_json_lines(self) -> str:
        lines = []
        for s in self.steps:
            lines.append(json.dumps({"chi": list(s.chi),
                                     "direction": list(s.direction),
                                     "deps": [list(d) for d in s.deps]}))
        return "\n".join(lines) + ("\n" if lines else "")

    @staticmethod
    def from_json_lines(text: str, goal: Sequence[Vec]) -> "GldimCertificate":
        steps = []
        for line in text.splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            steps.append(CertStep(chi=tuple(obj["chi"]),
                                  direction=tuple(obj["direction"]),
                                  deps=tuple(tuple(d) for d in obj["deps"])))
        return GldimCertificate(steps=tuple(steps), goal=tuple(tuple(g) for g in goal))


@dataclass(frozen=True)
class GldimResult:
    ok: bool
    certificate: Optional[GldimCertificate]
    uncovered: tuple[Vec, ...] = ()
    reasons: tuple[tuple[Vec, str], ...] = ()


def default_directions(chars: CharacterSet) -> list[Vec]:
    """Axis and diagonal directions plus the outward edge normals of the
    character set's convex hull."""
    rank = len(chars.chars[0])
    if rank == 1:
        return [(1,), (-1,)]
    dirs: list[Vec] = [(0, 1), (1, 0), (0, -1), (-1, 0),
                       (1, 1), (1, -1), (-1, 1), (-1, -1)]
    hull = convex_hull(list(chars.chars))
    if len(hull) >= 3:
        for i in range(len(hull)):
            a = hull[i]
            b = hull[(i + 1) % len(hull)]
            normal = primitive((b[1] - a[1], a[0] - b[0]))  # outward for ccw hull
            inward = (-normal[0], -normal[1])
            if inward not in dirs:
                dirs.append(inward)
    return dirs


def certify_gldim(chars: CharacterSet, weights: WeightsLike,
                  goal: Optional[Iterable[Vec]] = None,
                  directions: Optional[Sequence[Vec]] = None) -> GldimResult:
    """Worklist fixpoint discharging the goal characters.

    A character is admitted once some candidate direction strictly separates
    it from the character set and all its Koszul terms are already admitted
    (or in the set).  The certificate lists admissions in order and replays
    independently; on failure the uncovered residue is reported instead.
    """
    ws = weight_list(weights)
    rank = len(ws[0])
    base = frozenset(chars.chars)
    if goal is None:
        goal_set = sorted(set(divisorial.conic_classes(ws)) - base)
    else:
        goal_set = sorted(set(tuple(g) for g in goal) - base)
    if directions is None:
        directions = default_directions(chars)

    window = _working_window(goal_set, chars, ws, rank)
    covered: set[Vec] = set(base)
    steps: list[CertStep] = []
    reasons: dict[Vec, str] = {}

    def admission_order(chi: Vec) -> tuple:
        return (_box_distance(chi, chars), *chi)

    # two phases: first a fixpoint over the goal characters alone (the usual
    # strip induction never leaves them), then over the whole window for any
    # stragglers that need auxiliary characters
    for pool in (goal_set, window):
        pending = sorted((chi for chi in pool if chi not in covered),
                         key=admission_order)
        changed = True
        while changed:
            changed = False
            still = []
            for chi in pending:
                step = _try_admit(chi, chars, covered, ws, directions, reasons)
                if step is None:
                    still.append(chi)
                else:
                    steps.append(step)
                    covered.add(chi)
                    changed = True
            pending = still
        if all(chi in covered for chi in goal_set):
            break

    uncovered = tuple(chi for chi in goal_set if chi not in covered)
    if uncovered:
        return GldimResult(ok=False, certificate=None, uncovered=uncovered,
                           reasons=tuple((chi, reasons.get(chi, "not in window"))
                                         for chi in uncovered))
    cert = GldimCertificate(steps=_prune_steps(steps, goal_set, base),
                            goal=tuple(goal_set))
    return GldimResult(ok=True, certificate=cert)


def _prune_steps(steps: list[CertStep], goal: Sequence[Vec],
                 base: frozenset[Vec]) -> tuple[CertStep, ...]:
    """Drop admissions the goal never depends on; every dependency of a kept
    step is either in the base set or the target of an earlier kept step, so
    the pruned log still replays."""
    needed = set(goal)
    kept = []
    for step in reversed(steps):
        if step.chi in needed:
            kept.append(step)
            needed |= {d for d in step.deps if d not in base}
    kept.reverse()
    return tuple(kept)


def _try_admit(chi: Vec, chars: CharacterSet, covered: set[Vec], ws: list[Vec],
               directions: Sequence[Vec], reasons: dict[Vec, str]) -> Optional[CertStep]:
    blocked = []
    for direction in directions:
        if not is_separated(chi, chars, direction):
            continue
        try:
            terms = koszul_terms(chi, direction, ws)
        except UnusableDirectionError:
            continue
        missing = [t for t in terms if t not in covered]
        if not missing:
            return CertStep(chi=chi, direction=direction, deps=terms)
        blocked.append((direction, missing[0]))
    if blocked:
        reasons[chi] = f"separating directions blocked on dependencies: {blocked[:2]}"
    else:
        reasons[chi] = "no separating direction with usable weights"
    return None


def _box_distance(chi: Vec, chars: CharacterSet) -> int:
    dist = 0
    for k in range(len(chi)):
        lo = min(nu[k] for nu in chars.chars)
        hi = max(nu[k] for nu in chars.chars)
        dist += max(0, lo - chi[k], chi[k] - hi)
    return dist


def _working_window(goal: Sequence[Vec], chars: CharacterSet, ws: list[Vec],
                    rank: int) -> list[Vec]:
    pts = list(goal) + list(chars.chars)
    margin = [sum(abs(w[k]) for w in ws) for k in range(rank)]
    lo = [min(p[k] for p in pts) - margin[k] for k in range(rank)]
    hi = [max(p[k] for p in pts) + margin[k] for k in range(rank)]
    if rank == 1:
        return [(v,) for v in range(lo[0], hi[0] + 1)]
    return [(x, y) for x in range(lo[0], hi[0] + 1) for y in range(lo[1], hi[1] + 1)]


def replay_certificate(cert: GldimCertificate, chars: CharacterSet,
                       weights: WeightsLike) -> tuple[bool, str]:
    """Independent check of a certificate: separation, exact Koszul term
    sets, dependency availability, and goal coverage.  Shares only
    :func:`is_separated` and :func:`koszul_terms` with the producer."""
    ws = weight_list(weights)
    base = frozenset(chars.chars)
    admitted: set[Vec] = set()
    for i, step in enumerate(cert.steps):
        if step.chi in base or step.chi in admitted:
            return False, f"step {i}: {step.chi} already available"
        if not is_separated(step.chi, chars, step.direction):
            return False, f"step {i}: {step.direction} does not separate {step.chi}"
        try:
            terms = koszul_terms(step.chi, step.direction, ws)
        except UnusableDirectionError:
            return False, f"step {i}: direction {step.direction} is unusable"
        if set(terms) != set(step.deps):
            return False, f"step {i}: dependency list does not match the Koszul terms"
        if step.chi in terms:
            return False, f"step {i}: self-dependency"
        for t in terms:
            if t not in base and t not in admitted:
                return False, f"step {i}: dependency {t} not available"
        admitted.add(step.chi)
    for g in cert.goal:
        if g not in base and g not in admitted:
            return False, f"goal {g} is not covered"
    return True, "certificate replays"


# ---------------------------------------------------------------------------
# end-to-end verification


@dataclass(frozen=True)
class NccrReport:
    verdict: str  # "verified" | "rejected" | "failed"
    reason: str
    classification: Optional[families.ClassifyResult] = None
    weights: Optional[tuple[Vec, ...]] = None
    characters: Optional[CharacterSet] = None
    conic_count: Optional[int] = None
    end_mcm: Optional[EndMcmReport] = None
    gldim: Optional[GldimResult] = None

    @property
    def ok(self) -> bool:
        return self.verdict == "verified"


def verify_nccr(p: BoundedPoset) -> NccrReport:
    """Full pipeline: classify, build the character box, check the
    endomorphism ring is MCM, certify finite global dimension on the conic
    classes, and replay the certificate."""
    purity = is_pure(p)
    if not purity.pure:
        return NccrReport(verdict="rejected",
                          reason="not Gorenstein: the poset is not pure, and only "
                                 "Gorenstein rings can admit an NCCR here")
    poly = polynomial_extension_edge(p)
    if poly is not None:
        l, u = p.edges[poly]
        return NccrReport(verdict="rejected",
                          reason=f"polynomial extension: edge e{poly + 1} = "
                                 f"{{{l}, {u}}} lies on every maximal chain")
    rank = p.n_edges - len(p.elements) + 1
    if rank == 1:
        return _verify_rank1(p)
    if rank != 2:
        return NccrReport(verdict="rejected",
                          reason=f"class group rank {rank} is out of scope (1 or 2)")

    result = families.classify(p)
    if isinstance(result, families.Rejection):
        return NccrReport(verdict="rejected", reason=result.message,
                          classification=result)
    table = tuple(families.expected_weight_table(result))
    computed = class_group(sigma_matrix(p), spanning_tree(p))
    if find_unimodular_match(computed.weights, table) is None:
        return NccrReport(verdict="failed", classification=result,
                          reason="computed divisor classes do not match the "
                                 "family weight table up to a basis change")
    chars = nccr_characters(result.type_tag, result.params)
    return _verify_with_weights(table, chars, result)


def _verify_rank1(p: BoundedPoset) -> NccrReport:
    cgd = class_group(sigma_matrix(p), spanning_tree(p))
    line = rank1_mod.Rank1Weights.from_class_group(cgd)
    bound = rank1_mod.mcm_bound(line)
    window = rank1_mod.base_window(line)
    chars = character_window([-c for c in window.classes])
    table = tuple((w,) for w in line.weights)
    return _verify_with_weights(table, chars, None)


def _verify_with_weights(table: tuple[Vec, ...], chars: CharacterSet,
                         classification: Optional[families.TypeParams]) -> NccrReport:
    conic = divisorial.conic_classes(table)
    end_report = endomorphism_is_mcm(chars, table)
    if not end_report.ok:
        return NccrReport(verdict="failed", classification=classification,
                          weights=table, characters=chars, conic_count=len(conic),
                          end_mcm=end_report,
                          reason=f"endomorphism ring is not MCM: difference "
                                 f"{end_report.first_failure[2]} fails")
    gres = certify_gldim(chars, table, goal=conic)
    if not gres.ok:
        return NccrReport(verdict="failed", classification=classification,
                          weights=table, characters=chars, conic_count=len(conic),
                          end_mcm=end_report, gldim=gres,
                          reason=f"finite global dimension not certified; "
                                 f"uncovered {list(gres.uncovered)[:4]}")
    assert gres.certificate is not None
    ok, why = replay_certificate(gres.certificate, chars, table)
    if not ok:
        return NccrReport(verdict="failed", classification=classification,
                          weights=table, characters=chars, conic_count=len(conic),
                          end_mcm=end_report, gldim=gres,
                          reason=f"certificate replay failed: {why}")
    return NccrReport(verdict="verified", classification=classification,
                      weights=table, characters=chars, conic_count=len(conic),
                      end_mcm=end_report, gldim=gres,
                      reason="endomorphism ring is MCM and the finite global "
                             "dimension certificate replays on all conic classes")
