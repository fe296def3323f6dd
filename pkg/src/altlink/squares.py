"""Essential squares, the characteristic collection and its side labels.

A square is a simple closed curve meeting the diagram in four points.  On a
connected diagram such curves through four distinct edges are exactly the
4-cycles of the dual graph with distinct faces, so they are enumerated by
walking face adjacencies rather than by testing every edge quartet.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .model import Diagram, crossing_components


def _mask(crossings) -> int:
    m = 0
    for c in crossings:
        m |= 1 << c
    return m


@dataclass(frozen=True)
class SquareClass:
    incidences: tuple  # ((edge, face), ...) -- cross edge i, then travel through face i
    partition: tuple  # (A, A') as frozensets of crossings; A holds the lowest crossing
    canonical_key: tuple

    @property
    def edges(self) -> tuple:
        return tuple(e for e, _ in self.incidences)

    @cached_property
    def masks(self) -> tuple[int, int]:
        return _mask(self.partition[0]), _mask(self.partition[1])

    @property
    def sizes(self) -> tuple[int, int]:
        return tuple(sorted(len(p) for p in self.partition))

    def side_of(self, crossing: int) -> int:
        return 0 if crossing in self.partition[0] else 1

    def as_json(self) -> dict:
        return {"incidences": [list(x) for x in self.incidences],
                "partition": [sorted(p) for p in self.partition]}


def _canonical_key(inc: tuple) -> tuple:
    seqs = []
    for seq in (list(inc), [(e, f) for e, f in reversed(inc)]):
        for r in range(4):
            seqs.append(tuple(seq[r:] + seq[:r]))
    return min(seqs)


def _make_square(d: Diagram, inc: tuple, parts) -> SquareClass:
    a, b = parts
    if min(b) < min(a):
        a, b = b, a
    return SquareClass(inc, (a, b), _canonical_key(inc))


def dual_four_cycles(d: Diagram):
    """Yield ``((e0, f0), ..., (e3, f3))``: cross ``e_i`` into face ``f_i``."""
    fo = d.face_of
    adj = [[] for _ in d.faces]
    for x in range(d.num_darts):
        adj[fo[x]].append((d.edge_of[x], fo[d.alpha[x]]))
    nf = len(d.faces)
    seen = set()
    for f0 in range(nf):
        for e0, f1 in adj[f0]:
            if f1 <= f0:
                continue
            for e1, f2 in adj[f1]:
                if f2 <= f0 or f2 == f1 or e1 == e0:
                    continue
                for e2, f3 in adj[f2]:
                    if f3 <= f0 or f3 in (f1, f2) or e2 in (e0, e1):
                        continue
                    for e3, g in adj[f3]:
                        if g != f0 or e3 in (e0, e1, e2):
                            continue
                        key = frozenset((e0, e1, e2, e3))
                        inc = ((e0, f1), (e1, f2), (e2, f3), (e3, f0))
                        ck = _canonical_key(inc)
                        if (key, ck) in seen:
                            continue
                        seen.add((key, ck))
                        yield inc


def enumerate_squares(d: Diagram, essential_only: bool = True) -> list[SquareClass]:
    out = {}
    everything = range(d.n)
    for inc in dual_four_cycles(d):
        parts = crossing_components(d, everything, [e for e, _ in inc])
        if len(parts) != 2:
            continue
        if essential_only and min(len(p) for p in parts) < 2:
            continue
        sq = _make_square(d, inc, parts)
        out.setdefault(sq.canonical_key, sq)
    return [out[k] for k in sorted(out)]


def enumerate_essential_squares(d: Diagram) -> list[SquareClass]:
    """Squares on four distinct edges with at least two crossings per side."""
    return enumerate_squares(d, essential_only=True)


def interleave(s1: SquareClass, s2: SquareClass) -> bool:
    """True iff the crossing partitions cannot be nested."""
    a1, b1 = s1.masks
    a2, b2 = s2.masks
    for x in (a1, b1):
        for y in (a2, b2):
            if x & ~y == 0:
                return False
    return True


@dataclass
class RegionTree:
    """Regions of the sphere cut along the collection, joined by squares.

    Node ``-1`` is the region containing crossing 0; node ``i`` is the region
    just across square ``i`` from its parent.
    """

    squares: list
    parent: dict  # square index -> parent square index or None
    ends: dict  # square index -> (node on side 0, node on side 1)
    node_squares: dict  # node -> list of incident square indices
    node_crossings: dict  # node -> frozenset of crossings

    def other_node(self, s: int, node: int) -> int:
        a, b = self.ends[s]
        return b if node == a else a

    def side_facing(self, s: int, node: int) -> int:
        """Index into ``squares[s].partition`` of the side containing ``node``."""
        return 0 if self.ends[s][0] == node else 1

    def height(self, s: int, node: int, _memo=None) -> int:
        """Level of the tangle on the ``node`` side of square ``s``."""
        memo = {} if _memo is None else _memo
        key = (s, node)
        if key not in memo:
            best = 0
            for t in self.node_squares[node]:
                if t != s:
                    best = max(best, self.height(t, self.other_node(t, node), memo))
            memo[key] = best + 1
        return memo[key]

    def center(self):
        """``("node", v)`` or ``("square", s)`` at the middle of the tree."""
        nodes = set(self.node_squares)
        if len(nodes) == 1:
            return ("node", next(iter(nodes)))
        degree = {v: len(self.node_squares[v]) for v in nodes}
        alive_sq = set(range(len(self.squares)))
        layer = [v for v in nodes if degree[v] <= 1]
        remaining = set(nodes)
        while len(remaining) > 2:
            nxt = []
            for v in layer:
                remaining.discard(v)
                for s in self.node_squares[v]:
                    if s in alive_sq:
                        alive_sq.discard(s)
                        w = self.other_node(s, v)
                        degree[w] -= 1
                        if degree[w] == 1:
                            nxt.append(w)
            layer = nxt
        if len(remaining) == 1:
            return ("node", next(iter(remaining)))
        (s,) = alive_sq
        return ("square", s)


@dataclass
class CharacteristicCollection:
    squares: list
    nesting: dict = field(default_factory=dict)  # square -> enclosing square or None
    theta: dict = field(default_factory=dict)  # (square, side) -> level
    tree: RegionTree | None = None

    def __len__(self) -> int:
        return len(self.squares)

    def as_json(self) -> list:
        out = []
        for i, sq in enumerate(self.squares):
            obj = sq.as_json()
            obj["theta"] = [self.theta[(i, 0)], self.theta[(i, 1)]]
            obj["nested_in"] = self.nesting.get(i)
            out.append(obj)
        return out


def build_tree(d: Diagram, squares: list) -> RegionTree:
    root_crossing = 0
    inside = []
    for sq in squares:
        a, b = sq.masks
        inside.append(b if (a >> root_crossing) & 1 else a)
    parent = {}
    for i, m in enumerate(inside):
        best = None
        for j, mj in enumerate(inside):
            if j != i and m & ~mj == 0 and mj != m:
                if best is None or bin(mj).count("1") < bin(inside[best]).count("1"):
                    best = j
        parent[i] = best
    ends = {}
    node_squares = {-1: []}
    for i in range(len(squares)):
        node_squares.setdefault(i, [])
    for i, sq in enumerate(squares):
        outer = -1 if parent[i] is None else parent[i]
        inner = i
        a_mask = sq.masks[0]
        # side 0 holds the root crossing exactly when the inner region is side 1
        ends[i] = (outer, inner) if (a_mask >> root_crossing) & 1 else (inner, outer)
        node_squares[outer].append(i)
        node_squares[inner].append(i)
    node_crossings = {}
    everything = (1 << d.n) - 1
    for v in node_squares:
        region = everything if v == -1 else inside[v]
        for i in range(len(squares)):
            if (-1 if parent[i] is None else parent[i]) == v:
                region &= ~inside[i]
        node_crossings[v] = frozenset(c for c in range(d.n) if (region >> c) & 1)
    return RegionTree(squares, parent, ends, node_squares, node_crossings)


def characteristic_collection(d: Diagram) -> CharacteristicCollection:
    essential = enumerate_essential_squares(d)
    chosen = {}
    for s in essential:
        if any(interleave(s, t) for t in essential):
            continue
        key = frozenset(s.partition)
        if key not in chosen or s.canonical_key < chosen[key].canonical_key:
            chosen[key] = s
    squares = sorted(chosen.values(), key=lambda s: s.canonical_key)
    tree = build_tree(d, squares)
    theta = {}
    memo = {}
    for i in range(len(squares)):
        for side in (0, 1):
            theta[(i, side)] = tree.height(i, tree.ends[i][side], memo)
    return CharacteristicCollection(squares, dict(tree.parent), theta, tree)
