"""Reduction and prime decomposition of alternating diagrams.

Nugatory crossings are untwisted away, the diagram is split into its
connected pieces, and every piece is cut along pairs of edges that share two
faces.  Each cut is capped on both sides without adding crossings, so the
factors of a piece are the summands of a connected sum.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import (Diagram, PreconditionError, crossing_components, is_alternating,
                    nugatory_crossings, two_edge_cuts)


def _restrict(d: Diagram, crossings, alpha=None) -> Diagram:
    """Sub-map on ``crossings`` (closed under ``alpha``), crossings renumbered in order."""
    alpha = d.alpha if alpha is None else alpha
    keep = sorted(crossings)
    new_id = {c: i for i, c in enumerate(keep)}
    perm = {}
    for c in keep:
        for k in range(4):
            perm[4 * c + k] = 4 * new_id[c] + k
    m = 4 * len(keep)
    sigma = [0] * m
    al = [0] * m
    over = [False] * m
    for x, y in perm.items():
        sigma[y] = perm[d.sigma[x]]
        al[y] = perm[alpha[x]]
        over[y] = d.over[x]
    return Diagram.from_lists(sigma, al, over)


def _side_pairs(d: Diagram, c: int):
    """Split the darts of nugatory crossing ``c`` into two consecutive pairs, one per side."""
    darts = [4 * c, d.sigma[4 * c], d.sigma[d.sigma[4 * c]], d.sigma_inv[4 * c]]
    others = [x for x in range(d.n) if x != c]
    comp = {}
    for i, part in enumerate(crossing_components(d, others, ())):
        for y in part:
            comp[y] = i

    def where(x):
        y = d.alpha[x]
        return ("self", min(x, y)) if y // 4 == c else ("comp", comp[y // 4])

    tags = [where(x) for x in darts]
    for i in range(4):
        a, b = tags[i], tags[(i + 1) % 4]
        cc, dd = tags[(i + 2) % 4], tags[(i + 3) % 4]
        if a == b and cc == dd and a != cc:
            return darts[i], darts[(i + 1) % 4], darts[(i + 2) % 4], darts[(i + 3) % 4]
    # a loop on each side that touches the same component cannot happen; fall back to faces
    raise PreconditionError(f"crossing {c} does not separate the diagram")


def remove_crossing(d: Diagram, c: int) -> Diagram:
    """Untwist nugatory crossing ``c``."""
    x0, x1, x2, x3 = _side_pairs(d, c)
    through = {x1: x2, x2: x1, x3: x0, x0: x3}
    alpha = list(d.alpha)
    loops = d.loops
    seen = set()
    for o in [d.alpha[x] for x in (x0, x1, x2, x3)]:
        if o // 4 == c or o in seen:
            continue
        # follow the strand from outside dart ``o`` through the vanished crossing
        x = d.alpha[o]
        while True:
            y = through[x]
            seen.update((x, y))
            z = d.alpha[y]
            if z // 4 != c:
                break
            x = z
        seen.update((o, z))
        alpha[o], alpha[z] = z, o
    for x in (x0, x1, x2, x3):
        if x in seen:
            continue
        loops += 1
        while x not in seen:
            seen.update((x, through[x]))
            x = d.alpha[through[x]]
    rest = [k for k in range(d.n) if k != c]
    out = _restrict(d, rest, alpha)
    return Diagram.from_lists(out.sigma, out.alpha, out.over, loops)


def remove_nugatory(d: Diagram, order=None) -> Diagram:
    """Remove nugatory crossings until none remain.

    ``order`` optionally picks which nugatory crossing to remove next (given the
    current list); used to test that the result does not depend on it.
    """
    if not is_alternating(d):
        raise PreconditionError("remove_nugatory needs an alternating diagram")
    while True:
        bad = nugatory_crossings(d)
        if not bad:
            return d
        c = bad[0] if order is None else order(bad)
        d = remove_crossing(d, c)
        if d.n == 0 and d.loops == 0:
            d = Diagram.unknot(1)


def _cut_and_cap(d: Diagram, e: int, f: int, side_a) -> Diagram:
    u1, u2 = d.edges[e]
    v1, v2 = d.edges[f]
    if u1 // 4 not in side_a:
        u1, u2 = u2, u1
    if v1 // 4 not in side_a:
        v1, v2 = v2, v1
    alpha = list(d.alpha)
    alpha[u1], alpha[v1] = v1, u1
    alpha[u2], alpha[v2] = v2, u2
    return Diagram.from_lists(d.sigma, alpha, d.over, d.loops)


@dataclass
class Attachment:
    """How the factors of one connected piece were joined."""

    factors: list  # indices into Factorization.factors
    joins: list = field(default_factory=list)  # (factor index, factor index) per cut
    link_components: int = 1

    def as_json(self) -> dict:
        return {"factors": self.factors, "joins": [list(j) for j in self.joins],
                "link_components": self.link_components}


@dataclass
class Factorization:
    factors: list
    pieces: list  # one Attachment per connected piece with crossings
    loops: int = 0

    @property
    def groups(self) -> list:
        return [[self.factors[i] for i in p.factors] for p in self.pieces]

    def shape(self) -> tuple:
        return tuple(sorted(tuple(sorted(self.factors[i].n for i in p.factors)) for p in self.pieces))

    def summary(self) -> dict:
        return {"loops": self.loops, "pieces": [list(s) for s in self.shape()]}

    @property
    def num_link_components(self) -> int:
        return self.loops + sum(p.link_components for p in self.pieces)


def _factor_piece(d: Diagram, out: list, orig=None) -> Attachment:
    """Decompose a connected diagram; appends factors to ``out``.

    ``orig`` maps crossings of ``d`` to the ids used in join records.
    """
    comps = d.num_link_components
    pending = [(d, list(range(d.n)) if orig is None else list(orig))]
    owner = {}
    cut_ends = []
    indices = []
    while pending:
        cur, ids = pending.pop()
        cuts = two_edge_cuts(cur)
        if not cuts:
            for c in ids:
                owner[c] = len(out)
            indices.append(len(out))
            out.append(cur)
            continue
        e, f, side_a, side_b = cuts[0]
        u1, u2 = cur.edges[e]
        cut_ends.append((ids[u1 // 4], ids[u2 // 4]))
        capped = _cut_and_cap(cur, e, f, side_a)
        for side in (side_a, side_b):
            pending.append((_restrict(capped, side), [ids[c] for c in sorted(side)]))
    joins = sorted(tuple(sorted((owner[a], owner[b]))) for a, b in cut_ends)
    return Attachment(sorted(indices), joins, comps)


def decompose(d: Diagram) -> list:
    """Prime factors of a reduced alternating diagram with their attachment record.

    Returns ``(factor, attachment)`` pairs; factors of the same connected piece
    share an attachment.  Crossingless components are returned as ``UNKNOT``
    markers with an empty attachment.
    """
    fz = factorize(d)
    out = []
    for piece in fz.pieces:
        for i in piece.factors:
            out.append((fz.factors[i], piece))
    for _ in range(fz.loops):
        out.append((Diagram.unknot(1), Attachment([])))
    return out


def factorize(d: Diagram) -> Factorization:
    factors: list = []
    pieces = []
    for comp in d.components:
        pieces.append(_factor_piece(_restrict(d, comp), factors, sorted(comp)))
    return Factorization(factors, pieces, d.loops)


def normalize_factors(d: Diagram) -> Factorization:
    """Reduce then factor ``d``; each factor is connected, prime and reduced."""
    return factorize(remove_nugatory(d))
