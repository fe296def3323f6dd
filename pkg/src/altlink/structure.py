"""Product regions: crossings and beads strung along two parallel strands.

A fragment is a product region when its units (crossings, beads, and the
outer boundary taken as a single unit) form a cycle in which consecutive
units are joined by exactly two edges.  Within such a cycle the free crossings
can be slid past beads by flypes, each slide turning the bead over.  The
normal form used for comparison slides every free crossing into one gap.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .isotopy import Bead, TangleGraph, tangle_graph
from .model import Diagram

BOUNDARY = "B"


@dataclass
class Fragment:
    """Crossings and colored beads between an outer square and its inner squares.

    ``tangle`` is the crossing set inside the outer square, or ``None`` for the
    top-level fragment that fills the sphere.
    """

    diagram: Diagram
    crossings: frozenset
    beads: list = field(default_factory=list)
    tangle: frozenset | None = None
    ends: dict | None = None  # edge id -> N/W/S/E label

    def graph(self) -> TangleGraph:
        return tangle_graph(self.diagram, self.crossings, self.beads, self.tangle, self.ends)


@dataclass
class ProductRegionProfile:
    weight: int
    free_crossings: int
    gaps: tuple  # crossings between consecutive separators (beads and the boundary)
    bead_sequence: tuple  # colors in chain order
    sample_parity: bool | None
    units: list  # chain order; vertex ids plus BOUNDARY
    boundary: bool

    def as_json(self) -> dict:
        return {"weight": self.weight, "free_crossings": self.free_crossings,
                "gaps": list(self.gaps), "bead_sequence": list(self.bead_sequence),
                "sample_parity": self.sample_parity}


def _unit_of(g: TangleGraph) -> list:
    return [BOUNDARY if g.kind[g.vert[x]] == "e" else g.vert[x] for x in range(g.num_darts)]


def product_chain(g: TangleGraph, direction: int | None = None) -> ProductRegionProfile | None:
    """Profile of ``g`` if it is a product region, else ``None``.

    The chain starts at the boundary (or, on the sphere, at the unit owning
    ``direction``, by default the lowest bead) and leaves through the dart
    ``direction`` (by default the N end, or the start's first dart).
    """
    unit = _unit_of(g)
    nbr: dict = {}
    for x in range(g.num_darts):
        u, w = unit[x], unit[g.alpha[x]]
        if u == w:
            return None
        nbr.setdefault(u, {}).setdefault(w, []).append(x)
    if len(nbr) < 3:
        return None
    for u, nb in nbr.items():
        if len(nb) != 2 or any(len(v) != 2 for v in nb.values()):
            return None
        for x1, x2 in nb.values():
            if u == BOUNDARY:
                l1, l2 = g.end_label[g.vert[x1]], g.end_label[g.vert[x2]]
                if l1 is not None and (l1 - l2) % 4 not in (1, 3):
                    return None
            elif g.sigma[x1] != x2 and g.sigma[x2] != x1:
                return None
    has_b = BOUNDARY in nbr
    if direction is None:
        if has_b:
            direction = g.boundary_dart(0)
        else:
            beads = [v for v in range(g.num_vertices) if g.kind[v] == "b"]
            direction = g.first_dart[min(beads) if beads else 0]
    start = unit[direction]
    order = [start]
    prev, cur = start, unit[g.alpha[direction]]
    while cur != start:
        order.append(cur)
        if len(order) > len(nbr):
            return None
        nxt = [w for w in nbr[cur] if w != prev]
        prev, cur = cur, nxt[0]
    if len(order) != len(nbr):
        return None
    gaps = []
    count = 0
    beads_seq = []
    sample = None
    for i, u in enumerate(order):
        if u != BOUNDARY and g.kind[u] == "x":
            count += 1
            if sample is None:
                back = nbr[u][order[i - 1]]
                sample = bool(g.over[min(back)])
            continue
        if i:
            gaps.append(count)
        count = 0
        if u != BOUNDARY:
            beads_seq.append(g.color[u])
    gaps.append(count)
    free = sum(gaps)
    return ProductRegionProfile(len(beads_seq), free, tuple(gaps), tuple(beads_seq),
                                sample, order, has_b)


def flype_bead(g: TangleGraph, y: int, c: int) -> TangleGraph:
    """Slide crossing ``c`` across bead ``y``, turning the bead over."""
    ends = g.darts_of(y)
    for i in range(4):
        t_b, t_a = ends[i], ends[(i + 1) % 4]
        a, b = g.alpha[t_a], g.alpha[t_b]
        if g.vert[a] == c and g.vert[b] == c and g.sigma[a] == b:
            break
    else:
        raise ValueError(f"crossing {c} is not attached to bead {y} across a bigon")
    t_c, t_d = ends[(i + 2) % 4], ends[(i + 3) % 4]
    p = g.sigma[b]
    q = g.sigma[p]
    out = g.copy()
    alpha = out.alpha
    alpha[a], alpha[t_c] = t_c, a
    alpha[b], alpha[t_d] = t_d, b
    remap = {p: t_a, q: t_b, t_c: p, t_d: q}
    for o in (p, q, t_c, t_d):
        s = g.alpha[o]
        if s in remap:
            alpha[remap[o]] = remap[s]
        else:
            alpha[remap[o]] = s
            alpha[s] = remap[o]
    inv = g.sigma_inv()
    for x in ends:
        out.sigma[x] = inv[x]
    return out


def normal_form(g: TangleGraph, direction: int | None = None) -> TangleGraph:
    """Slide all free crossings into the gap right after the chain's start.

    Beads are never reordered; each one is turned over once per crossing
    that passes it.  Returns ``g`` unchanged if it is not a product region.
    """
    while True:
        prof = product_chain(g, direction)
        if prof is None:
            return g
        order = prof.units
        for p in range(2, len(order)):
            u, y = order[p], order[p - 1]
            if y != BOUNDARY and u != BOUNDARY and g.kind[u] == "x" and g.kind[y] == "b":
                g = flype_bead(g, y, u)
                break
        else:
            return g


def chain_directions(g: TangleGraph) -> list[int]:
    """Start darts for every bead and both directions around a sphere chain."""
    unit = _unit_of(g)
    out = []
    for v in range(g.num_vertices):
        if g.kind[v] != "b":
            continue
        seen = set()
        for x in g.darts_of(v):
            w = unit[g.alpha[x]]
            if w not in seen:
                seen.add(w)
                out.append(x)
    return out


def detect_product_region(f: Fragment) -> ProductRegionProfile | None:
    return product_chain(f.graph())


def region_fragment(d: Diagram, tree, node: int) -> Fragment:
    """The region ``node`` of the square tree seen on the whole sphere, squares as beads."""
    beads = []
    for t in tree.node_squares[node]:
        away = tree.squares[t].partition[1 - tree.side_facing(t, node)]
        beads.append(Bead(t, frozenset(away), None, frozenset()))
    return Fragment(d, tree.node_crossings[node], beads)


def region_of_square(d: Diagram, tree, square) -> int | None:
    """Region of the tree that ``square`` splits, if it avoids every tree square."""
    a_mask, b_mask = square.masks
    for node in tree.node_squares:
        units = [1 << c for c in tree.node_crossings[node]]
        for t in tree.node_squares[node]:
            away = tree.squares[t].partition[1 - tree.side_facing(t, node)]
            units.append(sum(1 << c for c in away))
        sides = set()
        for u in units:
            if u & ~a_mask == 0:
                sides.add(0)
            elif u & ~b_mask == 0:
                sides.add(1)
            else:
                break
        else:
            if sides == {0, 1}:
                return node
    return None


def in_product_region(d: Diagram, collection, square) -> bool:
    """True when ``square`` sits inside a region of the collection that is a product region."""
    node = region_of_square(d, collection.tree, square)
    if node is None:
        return False
    return detect_product_region(region_fragment(d, collection.tree, node)) is not None


__all__ = ["Bead", "BOUNDARY", "Fragment", "ProductRegionProfile", "product_chain",
           "flype_bead", "normal_form", "chain_directions", "detect_product_region",
           "region_fragment", "region_of_square", "in_product_region"]
