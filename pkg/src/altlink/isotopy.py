"""Colored plane pseudographs and their isotopy test.

A :class:`TangleGraph` is a rotation system on darts with three vertex kinds:

``"x"``  a crossing of the diagram (valence 4, over/under per dart),
``"b"``  a bead: a tangle already compared at a lower level, collapsed to a
         colored valence-4 vertex.  Its end labels say how the bead sits
         relative to the representative of its color class,
``"e"``  a boundary end of the enclosing square (valence 1, labelled
         N=0, W=1, S=2, E=3 counterclockwise).

A bead labelling is a map from the bead's darts to the representative's end
labels.  When the map reverses cyclic order the bead is its representative
turned over (planar reflection with all crossings switched).  Each bead keeps
the full set of labellings that are valid for it, which is a coset of the
representative's symmetry group.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import Diagram



@dataclass
class Stats:
    """Counters for the propagation search."""

    extensions: int = 0
    roots: int = 0
    calls: int = 0
    worst_ratio: float = 0.0  # max over calls of extensions / |V|^2
    worst_size: int = 0

    def record(self, vertices: int, steps: int) -> None:
        self.calls += 1
        ratio = steps / max(1, vertices) ** 2
        if ratio > self.worst_ratio:
            self.worst_ratio = ratio
            self.worst_size = vertices


@dataclass
class TangleGraph:
    sigma: list
    alpha: list
    vert: list  # dart -> vertex
    kind: list  # vertex -> "x" | "b" | "e"
    over: list  # dart -> bool (crossing darts) or None
    color: list = field(default_factory=list)  # vertex -> color id or None
    labelings: list = field(default_factory=list)  # vertex -> frozenset of labelings or None
    end_label: list = field(default_factory=list)  # vertex -> 0..3 for boundary ends
    origin: list = field(default_factory=list)  # vertex -> source key (crossing id / bead key / edge)

    @property
    def num_darts(self) -> int:
        return len(self.sigma)

    @property
    def num_vertices(self) -> int:
        return len(self.kind)

    def sigma_inv(self) -> list:
        inv = [0] * len(self.sigma)
        for d, s in enumerate(self.sigma):
            inv[s] = d
        return inv

    def darts_of(self, v: int) -> list[int]:
        start = self.first_dart[v]
        out = [start]
        x = self.sigma[start]
        while x != start:
            out.append(x)
            x = self.sigma[x]
        return out

    @property
    def first_dart(self) -> list[int]:
        fd = [-1] * self.num_vertices
        for d in range(self.num_darts - 1, -1, -1):
            fd[self.vert[d]] = d
        return fd

    def has_boundary(self) -> bool:
        return "e" in self.kind

    def boundary_dart(self, label: int) -> int:
        for d in range(self.num_darts):
            v = self.vert[d]
            if self.kind[v] == "e" and self.end_label[v] == label:
                return d
        raise KeyError(label)

    def count(self, kind: str) -> int:
        return self.kind.count(kind)

    def copy(self) -> "TangleGraph":
        return TangleGraph(list(self.sigma), list(self.alpha), list(self.vert), list(self.kind),
                           list(self.over), list(self.color), list(self.labelings),
                           list(self.end_label), list(self.origin))

    def flipped(self) -> "TangleGraph":
        """The graph turned over: rotations reversed, crossings switched."""
        g = self.copy()
        g.sigma = self.sigma_inv()
        g.over = [None if o is None else not o for o in self.over]
        return g

    def relabel_ends(self, labels: dict) -> "TangleGraph":
        """Replace boundary labels; ``labels`` maps boundary vertex origin -> label."""
        g = self.copy()
        for v in range(g.num_vertices):
            if g.kind[v] == "e":
                g.end_label[v] = labels[g.origin[v]]
        return g

    def boundary_order(self) -> list:
        """Origins of the boundary vertices in their stored label order."""
        ends = [(self.end_label[v], self.origin[v]) for v in range(self.num_vertices) if self.kind[v] == "e"]
        return [o for _, o in sorted(ends)]

    def signature(self, v: int):
        k = self.kind[v]
        if k == "b":
            return ("b", self.color[v])
        if k == "e":
            return ("e", self.end_label[v])
        return ("x",)

    def check(self) -> None:
        m = self.num_darts
        for d in range(m):
            assert self.alpha[self.alpha[d]] == d and self.alpha[d] != d, "alpha"
            assert self.vert[self.sigma[d]] == self.vert[d], "sigma leaves vertex"
        for v in range(self.num_vertices):
            val = len(self.darts_of(v))
            assert val == (1 if self.kind[v] == "e" else 4), f"valence {val} at {v}"


@dataclass
class Bead:
    """A collapsed tangle: crossings on one side of a square plus its class data."""

    key: object
    crossings: frozenset
    color: int
    labelings: frozenset  # of frozenset((edge, label))


def tangle_graph(d: Diagram, crossings, beads=(), tangle=None, ends=None) -> TangleGraph:
    """Pseudograph of a fragment of ``d``.

    ``crossings`` are the plain crossings of the fragment, ``beads`` the
    collapsed subtangles.  If ``tangle`` (the crossing set inside the outer
    square) is given, each edge leaving it gets a boundary vertex; ``ends``
    maps those edge ids to N/W/S/E labels.
    """
    from .oracle import tangle_ends

    region = set(crossings)
    bead_of = {}
    for i, b in enumerate(beads):
        for c in b.crossings:
            if c in region or c in bead_of:
                raise ValueError(f"crossing {c} assigned twice")
            bead_of[c] = i
    inside = None if tangle is None else set(tangle)
    if inside is not None and not (region | set(bead_of)) <= inside:
        raise ValueError("bead or crossing outside the enclosing square")

    keys = []
    index = {}
    kind, origin, color, labelings, end_label = [], [], [], [], []
    vert = []
    sigma_pairs = []

    def add_vertex(k, org, darts, col=None, labs=None, lab=None):
        v = len(kind)
        kind.append(k)
        origin.append(org)
        color.append(col)
        labelings.append(labs)
        end_label.append(lab)
        ids = []
        for key in darts:
            index[key] = len(keys)
            keys.append(key)
            vert.append(v)
            ids.append(index[key])
        for i, x in enumerate(ids):
            sigma_pairs.append((x, ids[(i + 1) % len(ids)]))

    for c in sorted(region):
        x0 = 4 * c
        order = [x0, d.sigma[x0], d.sigma[d.sigma[x0]], d.sigma[d.sigma[d.sigma[x0]]]]
        darts = [("x", x) for x in order]
        add_vertex("x", c, darts)
    for i, b in enumerate(beads):
        bends = tangle_ends(d, b.crossings)
        add_vertex("b", b.key, [("b", i, d.edge_of[t]) for t in bends], b.color,
                   frozenset(frozenset((("b", i, e), lab) for e, lab in lab_map) for lab_map in b.labelings))
    if inside is not None:
        for t in tangle_ends(d, inside):
            e = d.edge_of[t]
            add_vertex("e", e, [("e", e)], lab=None if ends is None else ends[e])

    def image(x):
        """Hybrid dart key for diagram dart ``x`` seen from the fragment."""
        c = x // 4
        if c in region:
            return ("x", x)
        if c in bead_of:
            return ("b", bead_of[c], d.edge_of[x])
        return ("e", d.edge_of[x])

    m = len(keys)
    alpha = [None] * m
    for key in keys:
        if key[0] == "x":
            y = d.alpha[key[1]]
        elif key[0] == "b":
            e = key[2]
            u, w = d.edges[e]
            y = w if u // 4 in beads[key[1]].crossings else u
        else:
            u, w = d.edges[key[1]]
            y = u if u // 4 in inside else w
        alpha[index[key]] = index[image(y)]
    sigma = [0] * m
    for a, b in sigma_pairs:
        sigma[a] = b
    over = [d.over[k[1]] if k[0] == "x" else None for k in keys]
    # bead labelings refer to dart keys; convert to dart ids
    labelings = [None if labs is None else frozenset(frozenset((index[k], l) for k, l in lab) for lab in labs)
                 for labs in labelings]
    g = TangleGraph(sigma, alpha, vert, kind, over, color, labelings, end_label, origin)
    g.check()
    return g


# -- isotopy ------------------------------------------------------------------

def _extend(g1: TangleGraph, g2: TangleGraph, roots, reverse: bool,
            full_check: bool, stats: Stats, sig2_inv=None):
    """Propagate the dart correspondence from the ``(dart1, dart2)`` pairs in ``roots``."""
    rot2 = sig2_inv if reverse else g2.sigma
    fwd = {}
    back = {}
    for r1, r2 in roots:
        if fwd.get(r1, r2) != r2 or back.get(r2, r1) != r1:
            return None
        fwd[r1] = r2
        back[r2] = r1
    stack = list(fwd)
    while stack:
        x1 = stack.pop()
        x2 = fwd[x1]
        for y1, y2 in ((g1.sigma[x1], rot2[x2]), (g1.alpha[x1], g2.alpha[x2])):
            stats.extensions += 1
            got = fwd.get(y1)
            if got is not None:
                if got != y2:
                    return None
                continue
            if y2 in back:
                return None
            fwd[y1] = y2
            back[y2] = y1
            stack.append(y1)
    if len(fwd) != g1.num_darts:
        return None
    checked_crossing = False
    fd = g1.first_dart
    for v1 in range(g1.num_vertices):
        x1 = fd[v1]
        x2 = fwd[x1]
        v2 = g2.vert[x2]
        k = g1.kind[v1]
        if k != g2.kind[v2]:
            return None
        if k == "e":
            if g1.end_label[v1] != g2.end_label[v2]:
                return None
        elif k == "b":
            if g1.color[v1] != g2.color[v2]:
                return None
            some = next(iter(g1.labelings[v1] or ()), None)
            if some is None:
                return None
            moved = frozenset((fwd[x], lab) for x, lab in some)
            if moved not in g2.labelings[v2]:
                return None
        elif full_check or not checked_crossing:
            checked_crossing = True
            for x in g1.darts_of(v1):
                if (g1.over[x] != reverse) != g2.over[fwd[x]]:
                    return None
    return fwd


def _fingerprint(g: TangleGraph):
    out = {}
    for v in range(g.num_vertices):
        s = g.signature(v)
        out[s] = out.get(s, 0) + 1
    return out


def plane_isotopy(g1: TangleGraph, g2: TangleGraph, *, full_check: bool = False,
                  allow_flip: bool = False, stats: Stats | None = None):
    """Dart correspondence realising an isotopy ``g1 -> g2``, or ``None``.

    With boundary ends present the root is pinned at N and orientation is
    fixed.  Without them every root dart of ``g2`` is tried; ``allow_flip``
    also admits the turned-over embedding (rotations reversed, crossings
    switched).
    """
    stats = stats if stats is not None else Stats()
    before = stats.extensions
    try:
        return _search(g1, g2, full_check, allow_flip, stats)
    finally:
        stats.record(g1.num_vertices, stats.extensions - before)


def _search(g1, g2, full_check, allow_flip, stats):
    if g1.num_darts != g2.num_darts or _fingerprint(g1) != _fingerprint(g2):
        return None
    if g1.num_darts == 0:
        return {}
    if g1.has_boundary():
        # every end is pinned, which also covers pieces that do not meet N
        stats.roots += 1
        roots = [(g1.boundary_dart(k), g2.boundary_dart(k)) for k in range(4)]
        return _extend(g1, g2, roots, False, full_check, stats)
    fp = _fingerprint(g1)
    # root at the rarest vertex signature
    v1 = min(range(g1.num_vertices), key=lambda v: (fp[g1.signature(v)], str(g1.signature(v)), v))
    r1 = g1.first_dart[v1]
    sig = g1.signature(v1)
    inv2 = g2.sigma_inv()
    for reverse in ((False, True) if allow_flip else (False,)):
        for r2 in range(g2.num_darts):
            if g2.signature(g2.vert[r2]) != sig:
                continue
            stats.roots += 1
            got = _extend(g1, g2, [(r1, r2)], reverse, full_check, stats, inv2)
            if got is not None:
                return got
    return None


# -- tangle comparison ----------------------------------------------------------

def dihedral_labelings(order) -> list[dict]:
    """The 8 ways to label ends listed counterclockwise with N, W, S, E."""
    out = []
    for flip in (False, True):
        for r in range(4):
            out.append({e: ((r - i) % 4 if flip else (i + r) % 4) for i, e in enumerate(order)})
    return out


def is_reversing(order, labels: dict) -> bool:
    return (labels[order[1]] - labels[order[0]]) % 4 == 3


def orient(g: TangleGraph, order, labels: dict) -> TangleGraph:
    """Apply an end labelling; reversing labellings turn the tangle over first."""
    if is_reversing(order, labels):
        g = g.flipped()
    return g.relabel_ends(labels)


def compare_tangles(g1: TangleGraph, g2: TangleGraph, *, full_check: bool = False,
                    stats: Stats | None = None):
    """Flype equivalence rel boundary of two labelled tangle graphs.

    Product regions are first pushed to their normal form (all free crossings
    gathered next to the N side of the boundary), everything else is compared
    rigidly.  Returns the dart correspondence or ``None``.
    """
    from .structure import product_chain, normal_form

    c1 = product_chain(g1)
    c2 = product_chain(g2)
    if (c1 is None) != (c2 is None):
        return None
    if c1 is not None:
        if (c1.weight, c1.free_crossings) != (c2.weight, c2.free_crossings):
            return None
        g1 = normal_form(g1)
        g2 = normal_form(g2)
    return plane_isotopy(g1, g2, full_check=full_check, stats=stats)


@dataclass
class ColorClass:
    color: int
    level: int
    rep: TangleGraph  # boundary labelled by its own reference labelling
    members: list = field(default_factory=list)


class ColorRegistry:
    """Colors for tangle classes, shared by both diagrams being compared.

    Single writer: ``classify`` mutates the registry and must not run
    concurrently.
    """

    def __init__(self, full_check: bool = False, stats: Stats | None = None):
        self.classes: list[ColorClass] = []
        self.full_check = full_check
        self.stats = stats if stats is not None else Stats()
        self.comparisons = 0

    def classify(self, g: TangleGraph, order, level: int, key=None):
        """Color of tangle ``g`` (ends listed counterclockwise in ``order``).

        Returns ``(color, labelings)`` where each labelling maps end -> label
        of the class representative.
        """
        candidates = dihedral_labelings(order)
        oriented = [orient(g, order, lab) for lab in candidates]
        for cls in self.classes:
            if cls.level != level:
                continue
            valid = []
            for lab, og in zip(candidates, oriented):
                self.comparisons += 1
                if compare_tangles(cls.rep, og, full_check=self.full_check, stats=self.stats) is not None:
                    valid.append(lab)
            if valid:
                cls.members.append(key)
                return cls.color, frozenset(frozenset(v.items()) for v in valid)
        color = len(self.classes)
        rep = oriented[0]
        cls = ColorClass(color, level, rep, [key])
        self.classes.append(cls)
        valid = [lab for lab, og in zip(candidates, oriented)
                 if compare_tangles(rep, og, full_check=self.full_check, stats=self.stats) is not None]
        return color, frozenset(frozenset(v.items()) for v in valid)
