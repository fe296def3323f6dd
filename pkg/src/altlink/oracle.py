"""Brute-force ground truth for small diagrams.

Two diagrams of a prime alternating link are related by flypes and isotopy of
the sphere.  This module enumerates flypes directly on the map (every
4-edge cut with a crossing attached to its tangle), keys states by a
canonical code, and explores orbits breadth first.  None of it depends on
the square/product-region machinery used by :mod:`altlink.engine`; the only
shared notion is the ambient symmetry group of :func:`canonical_form`.
"""
from __future__ import annotations

import itertools
import os
from array import array
from collections import deque
from dataclasses import dataclass, field

from .generators import generate_pretzel  # noqa: F401  (re-exported)
from .model import Diagram, PreconditionError, crossing_components, is_alternating

DEFAULT_EXHAUSTIVE_CAP = 8
DEFAULT_WITNESS_CAP = 10
DEFAULT_MAX_STATES = 10 ** 6


class MoveError(ValueError):
    """The requested flype cannot be applied."""


class OracleRefusal(RuntimeError):
    """The input is larger than the oracle is allowed to handle."""


def oracle_cap(default: int = DEFAULT_EXHAUSTIVE_CAP) -> int:
    value = os.environ.get("ALTLINK_ORACLE_CAP")
    return int(value) if value else default


# -- canonical form -----------------------------------------------------------

def _traversal_code(d: Diagram, root: int, reverse: bool) -> array:
    rot = d.sigma_inv if reverse else d.sigma
    number = {root // 4: 0}
    start = {0: root}
    queue = deque([root])
    code = array("H")
    nxt = 1
    while queue:
        s = queue.popleft()
        code.append(int(d.over[s] != reverse))
        x = s
        for _ in range(4):
            y = d.alpha[x]
            c = y // 4
            if c not in number:
                number[c] = nxt
                start[nxt] = y
                nxt += 1
                queue.append(y)
            # position of y counted from its crossing's start dart
            z, pos = start[number[c]], 0
            while z != y:
                z = rot[z]
                pos += 1
            code.append(number[c])
            code.append(pos)
            x = rot[x]
    return code


def _component_code(d: Diagram, darts) -> bytes:
    best = None
    for root in darts:
        for reverse in (False, True):
            code = _traversal_code(d, root, reverse)
            if best is None or code < best:
                best = code
    return best.tobytes()


def canonical_form(d: Diagram) -> bytes:
    """Minimum traversal code over roots, rotations and the flip-over symmetry.

    The flip-over variant reverses every rotation and swaps every crossing;
    plain mirroring is not a symmetry.
    """
    parts = sorted(_component_code(d, [4 * c + k for c in comp for k in range(4)])
                   for comp in d.components)
    head = array("H", [d.loops, len(parts)]).tobytes()
    return head + b"|".join(parts)


# -- flypes -------------------------------------------------------------------

def tangle_ends(d: Diagram, tangle) -> list[int]:
    """Darts of ``tangle`` leading out of it, counterclockwise around its boundary."""
    inside = set(tangle)
    ends = [x for c in sorted(inside) for x in range(4 * c, 4 * c + 4) if d.alpha[x] // 4 not in inside]
    if not ends:
        return []
    endset = set(ends)
    start = min(ends, key=lambda x: d.edge_of[x])
    order = [start]
    x = start
    while True:
        y = d.sigma[x]
        while y not in endset:
            y = d.sigma[d.alpha[y]]
        if y == start:
            break
        order.append(y)
        x = y
        if len(order) > len(ends):
            raise MoveError("tangle boundary is not a single circle")
    if len(order) != len(ends):
        raise MoveError("tangle boundary is not a single circle")
    return order


@dataclass(frozen=True)
class FlypeMove:
    """Rotate ``tangle`` by a half turn across the crossing attached on ``side``.

    ``side`` indexes the consecutive end pair ``(ends[side], ends[side+1])``
    of the tangle, ends ordered counterclockwise from the lowest edge id.
    """

    tangle: frozenset
    side: int
    edges: tuple = field(default=(), compare=False)
    crossing: int = field(default=-1, compare=False)

    def as_json(self) -> dict:
        return {"edges": list(self.edges), "tangle": sorted(self.tangle),
                "crossing": self.crossing, "direction": self.side}


def _attachment(d: Diagram, ends: list[int], side: int):
    t_b, t_a = ends[side % 4], ends[(side + 1) % 4]
    a, b = d.alpha[t_a], d.alpha[t_b]
    if a // 4 != b // 4 or d.sigma[a] != b:
        return None
    return a, b


def make_move(d: Diagram, tangle, side: int) -> FlypeMove:
    ends = tangle_ends(d, tangle)
    if len(ends) != 4:
        raise MoveError("tangle does not have four ends")
    att = _attachment(d, ends, side)
    if att is None:
        raise MoveError(f"no crossing attached on side {side} of the tangle")
    return FlypeMove(frozenset(tangle), side % 4, tuple(d.edge_of[x] for x in ends), att[0] // 4)


def apply_flype(d: Diagram, move: FlypeMove) -> Diagram:
    tangle = set(move.tangle)
    ends = tangle_ends(d, tangle)
    if len(ends) != 4:
        raise MoveError("tangle does not have four ends")
    att = _attachment(d, ends, move.side)
    if att is None:
        raise MoveError(f"no crossing attached on side {move.side} of the tangle")
    a, b = att
    i = move.side
    t_b, t_a, t_c, t_d = (ends[(i + k) % 4] for k in range(4))
    p = d.sigma[b]
    q = d.sigma[p]
    outward = (p, q, t_c, t_d)
    remap = {p: t_a, q: t_b, t_c: p, t_d: q}

    alpha = list(d.alpha)
    sigma = list(d.sigma)
    over = list(d.over)
    alpha[a], alpha[t_c] = t_c, a
    alpha[b], alpha[t_d] = t_d, b
    for o in outward:
        s = d.alpha[o]
        if s in remap:
            alpha[remap[o]] = remap[s]
        else:
            alpha[remap[o]] = s
            alpha[s] = remap[o]
    for c in tangle:
        for x in range(4 * c, 4 * c + 4):
            sigma[x] = d.sigma_inv[x]
            over[x] = not d.over[x]
    over[a] = over[p] = not over[t_c]
    over[b] = over[q] = over[t_c]
    out = Diagram.from_lists(sigma, alpha, over, d.loops)
    if not is_alternating(out):
        raise MoveError("flype produced a non-alternating diagram")
    return out


def all_flypes(d: Diagram) -> list[FlypeMove]:
    """Every flype of a tangle with at least two crossings, by 4-edge cut search."""
    moves = []
    seen = set()
    everything = range(d.n)
    for quad in itertools.combinations(range(d.num_edges), 4):
        parts = crossing_components(d, everything, quad)
        if len(parts) != 2:
            continue
        for tangle in parts:
            if len(tangle) < 2 or len(tangle) == d.n:
                continue
            try:
                ends = tangle_ends(d, tangle)
            except MoveError:
                continue
            if len(ends) != 4:
                continue
            for side in range(4):
                att = _attachment(d, ends, side)
                if att is None:
                    continue
                key = (tangle, side)
                if key in seen:
                    continue
                seen.add(key)
                moves.append(FlypeMove(tangle, side, tuple(d.edge_of[x] for x in ends), att[0] // 4))
    return moves


def simple_flypes(d: Diagram) -> list[FlypeMove]:
    """Flypes whose tangle is one side of a characteristic square."""
    from .squares import characteristic_collection

    moves = []
    for sq in characteristic_collection(d).squares:
        for tangle in sq.partition:
            try:
                ends = tangle_ends(d, tangle)
            except MoveError:
                continue
            if len(ends) != 4:
                continue
            for side in range(4):
                att = _attachment(d, ends, side)
                if att is not None:
                    moves.append(FlypeMove(frozenset(tangle), side,
                                           tuple(d.edge_of[x] for x in ends), att[0] // 4))
    return moves


# -- orbits -------------------------------------------------------------------

@dataclass
class Orbit:
    codes: set
    diameter: int
    truncated: bool
    states: dict = field(repr=False, default_factory=dict)
    parent: dict = field(repr=False, default_factory=dict)

    def path_to(self, code: bytes) -> list[FlypeMove]:
        moves = []
        while self.parent.get(code) is not None:
            code, move = self.parent[code]
            moves.append(move)
        return moves[::-1]


def _check_prime_input(d: Diagram) -> None:
    from .model import validate

    rep = validate(d)
    if not rep.ok:
        raise PreconditionError(f"oracle needs a connected prime reduced alternating diagram: {rep.as_dict()}")


def orbit(d: Diagram, max_states: int = DEFAULT_MAX_STATES, moves: str = "all",
          target: bytes | None = None) -> Orbit:
    """Breadth-first search over flypes starting at ``d``.

    ``moves`` is ``"all"`` (every flype found by cut search) or ``"simple"``
    (tangles bounded by characteristic squares).  With ``target`` the search
    stops as soon as that code is reached.
    """
    _check_prime_input(d)
    gen = all_flypes if moves == "all" else simple_flypes
    root = canonical_form(d)
    states = {root: d}
    parent = {root: None}
    depth = {root: 0}
    queue = deque([root])
    truncated = False
    while queue and root != target:
        code = queue.popleft()
        cur = states[code]
        for m in gen(cur):
            nd = apply_flype(cur, m)
            nc = canonical_form(nd)
            if nc in states:
                continue
            if len(states) >= max_states:
                truncated = True
                break
            states[nc] = nd
            parent[nc] = (code, m)
            depth[nc] = depth[code] + 1
            queue.append(nc)
            if nc == target:
                queue.clear()
                break
        if truncated:
            break
    return Orbit(set(states), max(depth.values()), truncated, states, parent)


@dataclass
class OracleResult:
    equivalent: bool
    witness: list = field(default_factory=list)


def oracle_equivalent(d1: Diagram, d2: Diagram, cap: int | None = None,
                      max_states: int = DEFAULT_MAX_STATES) -> OracleResult:
    cap = oracle_cap() if cap is None else cap
    if max(d1.n, d2.n) > cap:
        raise OracleRefusal(f"oracle crossing cap {cap} exceeded (n = {max(d1.n, d2.n)})")
    if d1.n != d2.n:
        return OracleResult(False)
    _check_prime_input(d1)
    _check_prime_input(d2)
    target = canonical_form(d2)
    orb = orbit(d1, max_states=max_states, target=target)
    if target in orb.codes:
        return OracleResult(True, orb.path_to(target))
    if orb.truncated:
        raise OracleRefusal("orbit search truncated before a verdict")
    return OracleResult(False)
