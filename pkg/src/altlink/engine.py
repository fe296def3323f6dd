"""Decide whether two alternating diagrams represent the same link.

For connected prime reduced diagrams the procedure is:

1. compare crossing numbers;
2. find the characteristic squares of each diagram and the tree of regions
   they cut the sphere into;
3. orient the tree towards its center, so every square has a side facing
   away from the center, at a height given by the longest path below it;
4. working upwards by height, collapse each away-side tangle into a colored
   bead, where two tangles share a color when flypes inside the square and
   the dihedral symmetries of the square relate them.  The per-color counts
   must agree after every level;
5. compare the central fragment on the whole sphere.

General inputs are first reduced and split into prime factors.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field

from .isotopy import Bead, ColorRegistry, Stats, plane_isotopy
from .model import Diagram, PreconditionError, is_alternating, validate
from .oracle import tangle_ends
from .squares import characteristic_collection
from .structure import Fragment, chain_directions, normal_form, product_chain


class Answer(str, enum.Enum):
    YES = "YES"
    NO = "NO"
    YES_QUALIFIED = "YES_QUALIFIED"


class Reason(str, enum.Enum):
    CROSSING_COUNT = "crossing-count mismatch"
    CENSUS = "color-census mismatch"
    PRODUCT = "product-region mismatch"
    TOP_LEVEL = "top-level isotopy failure"
    FACTORS = "factor-structure mismatch"
    SUCCESS = "success"


@dataclass
class Verdict:
    answer: Answer
    reason: Reason
    level: int | None = None
    witness: list | None = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.reason is Reason.SUCCESS) == (self.answer is Answer.NO):
            raise ValueError(f"reason {self.reason.value} inconsistent with {self.answer.value}")

    @property
    def yes(self) -> bool:
        return self.answer is not Answer.NO

    def as_json(self) -> dict:
        out = {"answer": self.answer.value, "reason": self.reason.value}
        if self.level is not None:
            out["level"] = self.level
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def _no(reason: Reason, level=None, **detail) -> Verdict:
    return Verdict(Answer.NO, reason, level, detail=detail)


@dataclass
class _Plan:
    """The square tree of one diagram, oriented towards its center."""

    diagram: Diagram
    center: tuple
    tangles: list  # (level, square, away node, crossing set); children first
    children: dict  # (square, node) -> squares hanging below that tangle
    tree: object


def _plan(d: Diagram) -> _Plan:
    coll = characteristic_collection(d)
    tree = coll.tree
    center = tree.center()
    memo: dict = {}
    tangles = []
    children = {}
    if center[0] == "node":
        roots = [(s, tree.other_node(s, center[1])) for s in tree.node_squares[center[1]]]
    else:
        s = center[1]
        roots = [(s, tree.ends[s][0]), (s, tree.ends[s][1])]
    stack = list(roots)
    while stack:
        s, w = stack.pop()
        below = [t for t in tree.node_squares[w] if t != s]
        children[(s, w)] = [(t, tree.other_node(t, w)) for t in below]
        side = tree.side_facing(s, w)
        tangles.append((tree.height(s, w, memo), s, w, tree.squares[s].partition[side]))
        stack.extend(children[(s, w)])
    tangles.sort(key=lambda t: t[0])
    return _Plan(d, center, tangles, children, tree)


def _fragment(plan: _Plan, s: int, w: int, beads: dict) -> tuple[Fragment, list]:
    d = plan.diagram
    side = plan.tree.side_facing(s, w)
    tangle = plan.tree.squares[s].partition[side]
    order = [d.edge_of[t] for t in tangle_ends(d, tangle)]
    ends = {e: i for i, e in enumerate(order)}
    inner = [beads[k] for k in plan.children[(s, w)]]
    return Fragment(d, plan.tree.node_crossings[w], inner, frozenset(tangle), ends), order


def _top_fragment(plan: _Plan, beads: dict) -> Fragment:
    d = plan.diagram
    kind, x = plan.center
    if kind == "node":
        inner = [beads[(s, plan.tree.other_node(s, x))] for s in plan.tree.node_squares[x]]
        return Fragment(d, plan.tree.node_crossings[x], inner)
    a, b = plan.tree.ends[x]
    return Fragment(d, frozenset(), [beads[(x, a)], beads[(x, b)]])


def _compare_top(g1, g2, full_check: bool, stats: Stats):
    p1, p2 = product_chain(g1), product_chain(g2)
    if (p1 is None) != (p2 is None):
        return Reason.PRODUCT
    if p1 is not None and p1.weight:
        if (p1.weight, p1.free_crossings) != (p2.weight, p2.free_crossings):
            return Reason.PRODUCT
        if sorted(p1.bead_sequence) != sorted(p2.bead_sequence):
            return Reason.PRODUCT
        n1 = normal_form(g1)
        for x in chain_directions(g2):
            n2 = normal_form(g2, x)
            if plane_isotopy(n1, n2, full_check=full_check, allow_flip=True, stats=stats) is not None:
                return None
        return Reason.TOP_LEVEL
    if plane_isotopy(g1, g2, full_check=full_check, allow_flip=True, stats=stats) is None:
        return Reason.TOP_LEVEL
    return None


def equivalent_connected_prime(d1: Diagram, d2: Diagram, *, full_check: bool = False,
                               stats: Stats | None = None) -> Verdict:
    """Verdict for two connected, prime, reduced alternating diagrams."""
    for name, d in (("first", d1), ("second", d2)):
        rep = validate(d)
        if not rep.ok:
            raise PreconditionError(f"{name} diagram is not connected prime reduced alternating: {rep.as_dict()}")
    if d1.n != d2.n:
        return _no(Reason.CROSSING_COUNT, first=d1.n, second=d2.n)
    stats = stats if stats is not None else Stats()
    plans = (_plan(d1), _plan(d2))
    registry = ColorRegistry(full_check=full_check, stats=stats)
    beads = ({}, {})
    levels = sorted({t[0] for p in plans for t in p.tangles})
    for level in levels:
        census = []
        for k, plan in enumerate(plans):
            counts = Counter()
            for lev, s, w, tangle in plan.tangles:
                if lev != level:
                    continue
                frag, order = _fragment(plan, s, w, beads[k])
                color, labs = registry.classify(frag.graph(), order, level, key=(k, s, w))
                # labellings are recorded by edge id, which is how parent fragments see the bead
                beads[k][(s, w)] = Bead((s, w), frozenset(tangle), color,
                                        frozenset(frozenset(lab) for lab in labs))
                counts[color] += 1
            census.append(counts)
        if census[0] != census[1]:
            return _no(Reason.CENSUS, level)
    if plans[0].center[0] != plans[1].center[0]:
        return _no(Reason.TOP_LEVEL, center=[plans[0].center[0], plans[1].center[0]])
    g1 = _top_fragment(plans[0], beads[0]).graph()
    g2 = _top_fragment(plans[1], beads[1]).graph()
    failure = _compare_top(g1, g2, full_check, stats)
    if failure is not None:
        return _no(failure)
    return Verdict(Answer.YES, Reason.SUCCESS, detail={"colors": len(registry.classes)})


def equivalent(d1: Diagram, d2: Diagram, *, full_check: bool = False) -> Verdict:
    """Verdict for arbitrary alternating diagrams (reduced and split into factors first)."""
    from .normalize import normalize_factors

    for d in (d1, d2):
        if not is_alternating(d):
            raise PreconditionError("diagram is not alternating; recognising alternating links "
                                    "from other diagrams is not supported")
    f1 = normalize_factors(d1)
    f2 = normalize_factors(d2)
    n1, n2 = (sum(f.n for f in fz.factors) for fz in (f1, f2))
    if n1 != n2:
        return _no(Reason.CROSSING_COUNT, first=n1, second=n2)
    if f1.loops != f2.loops or f1.shape() != f2.shape():
        return _no(Reason.FACTORS, first=f1.summary(), second=f2.summary())
    if len(f1.factors) == 1 and not f1.loops:
        return equivalent_connected_prime(f1.factors[0], f2.factors[0], full_check=full_check)
    if not _match_groups(f1, f2, full_check):
        return _no(Reason.FACTORS, first=f1.summary(), second=f2.summary())
    if any(len(p.factors) > 1 and p.link_components > 1 for p in f1.pieces + f2.pieces):
        return Verdict(Answer.YES_QUALIFIED, Reason.SUCCESS,
                       detail={"note": "composite link: factor multisets match"})
    return Verdict(Answer.YES, Reason.SUCCESS)


def _match_multiset(a: list, b: list, full_check: bool) -> bool:
    left = list(b)
    for x in a:
        for i, y in enumerate(left):
            if x.n == y.n and equivalent_connected_prime(x, y, full_check=full_check).yes:
                del left[i]
                break
        else:
            return False
    return not left


def _match_groups(f1, f2, full_check: bool) -> bool:
    """Split components (each a multiset of prime summands) matched as a multiset."""
    left = list(f2.groups)
    for g in f1.groups:
        for i, h in enumerate(left):
            if len(g) == len(h) and _match_multiset(g, h, full_check):
                del left[i]
                break
        else:
            return False
    return not left
