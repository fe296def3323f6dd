"""Link diagrams as combinatorial maps on the sphere.

A diagram with ``n`` crossings has ``4n`` darts; crossing ``i`` owns darts
``4i .. 4i+3``.  Three arrays describe it:

* ``sigma`` -- counterclockwise successor of a dart around its crossing,
* ``alpha`` -- the fixed-point-free involution pairing the two darts of an edge,
* ``over``  -- whether the strand through the dart passes over at its crossing.

Faces are the orbits of ``phi = sigma o alpha``.  The map carries no outer
face, so two diagrams that differ by an isotopy of the sphere are the same
object up to dart relabelling.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class StructureError(ValueError):
    """Raised when permutation data does not describe a valid diagram."""


class PreconditionError(ValueError):
    """Raised when a diagram is valid but unsuitable for an operation."""


@dataclass(frozen=True, eq=True)
class Diagram:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    over: tuple[bool, ...]
    # crossingless unknotted components (the 0-crossing marker has loops=1)
    loops: int = 0

    def __post_init__(self):
        _check_structure(self.sigma, self.alpha, self.over)
        if self.loops < 0:
            raise StructureError("negative loop count")

    @classmethod
    def from_lists(cls, sigma: Sequence[int], alpha: Sequence[int],
                   over: Sequence[bool], loops: int = 0) -> "Diagram":
        return cls(tuple(int(x) for x in sigma), tuple(int(x) for x in alpha),
                   tuple(bool(x) for x in over), loops)

    @classmethod
    def standard(cls, alpha: Sequence[int], over: Sequence[bool],
                 loops: int = 0) -> "Diagram":
        """Diagram whose rotation is ``4i+k -> 4i+(k+1)%4``."""
        return cls.from_lists(standard_sigma(len(alpha) // 4), alpha, over, loops)

    @classmethod
    def unknot(cls, loops: int = 1) -> "Diagram":
        return cls((), (), (), loops)

    @property
    def n(self) -> int:
        return len(self.sigma) // 4

    @property
    def num_darts(self) -> int:
        return len(self.sigma)

    @property
    def num_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def is_unknot_marker(self) -> bool:
        return self.n == 0

    @cached_property
    def sigma_inv(self) -> tuple[int, ...]:
        inv = [0] * len(self.sigma)
        for d, s in enumerate(self.sigma):
            inv[s] = d
        return tuple(inv)

    def phi(self, d: int) -> int:
        return self.sigma[self.alpha[d]]

    def opposite(self, d: int) -> int:
        """The dart across the crossing on the same strand."""
        return self.sigma[self.sigma[d]]

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(f) for f in _orbits(self.num_darts, self.phi))

    @cached_property
    def face_of(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for i, f in enumerate(self.faces):
            for d in f:
                out[d] = i
        return tuple(out)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(d, alpha(d))`` with ``d < alpha(d)``, sorted."""
        return tuple((d, a) for d, a in enumerate(self.alpha) if d < a)

    @cached_property
    def edge_of(self) -> tuple[int, ...]:
        out = [0] * self.num_darts
        for i, (a, b) in enumerate(self.edges):
            out[a] = out[b] = i
        return tuple(out)

    @cached_property
    def components(self) -> tuple[frozenset[int], ...]:
        """Connected components of the projection, as crossing sets."""
        return tuple(crossing_components(self, range(self.n), ()))

    @property
    def connected(self) -> bool:
        return len(self.components) + self.loops <= 1

    @cached_property
    def strands(self) -> tuple[tuple[int, ...], ...]:
        """Link components as dart cycles, following each strand."""
        seen = [False] * self.num_darts
        out = []
        for start in range(self.num_darts):
            if seen[start]:
                continue
            cyc = []
            d = start
            while not seen[d]:
                seen[d] = True
                seen[self.opposite(d)] = True
                cyc.append(d)
                d = self.alpha[self.opposite(d)]
            out.append(tuple(cyc))
        return tuple(out)

    @property
    def num_link_components(self) -> int:
        return len(self.strands) + self.loops

    def component_labels(self) -> tuple[int, ...]:
        labels = [0] * self.num_darts
        for i, cyc in enumerate(self.strands):
            for d in cyc:
                labels[d] = labels[self.opposite(d)] = labels[self.alpha[d]] = i
        return tuple(labels)

    def mirror(self) -> "Diagram":
        return Diagram(self.sigma, self.alpha, tuple(not o for o in self.over), self.loops)

    def relabel(self, perm: Sequence[int]) -> "Diagram":
        """Rename dart ``d`` to ``perm[d]``; crossing blocks must map to blocks."""
        m = len(perm)
        sigma = [0] * m
        alpha = [0] * m
        over = [False] * m
        for d in range(m):
            sigma[perm[d]] = perm[self.sigma[d]]
            alpha[perm[d]] = perm[self.alpha[d]]
            over[perm[d]] = self.over[d]
        return Diagram.from_lists(sigma, alpha, over, self.loops)

    def standardized(self) -> "Diagram":
        """Relabel darts so that ``sigma`` is the standard rotation."""
        perm = [0] * self.num_darts
        for c in range(self.n):
            d = 4 * c
            for k in range(4):
                perm[d] = 4 * c + k
                d = self.sigma[d]
        return self.relabel(perm)

    def crossing(self, d: int) -> int:
        return d // 4


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    alternating: bool
    reduced: bool
    prime: bool
    n: int
    faces: int

    @property
    def ok(self) -> bool:
        return self.connected and self.alternating and self.reduced and self.prime

    def as_dict(self) -> dict:
        return {"connected": self.connected, "alternating": self.alternating,
                "reduced": self.reduced, "prime": self.prime,
                "n": self.n, "faces": self.faces}


def standard_sigma(n: int) -> list[int]:
    return [4 * (d // 4) + (d + 1) % 4 for d in range(4 * n)]


def _orbits(size: int, f) -> list[list[int]]:
    seen = [False] * size
    out = []
    for start in range(size):
        if seen[start]:
            continue
        orb = []
        d = start
        while not seen[d]:
            seen[d] = True
            orb.append(d)
            d = f(d)
        out.append(orb)
    return out


def _check_structure(sigma, alpha, over) -> None:
    m = len(sigma)
    if len(alpha) != m or len(over) != m:
        raise StructureError("sigma, alpha and over must have equal length")
    if m % 4:
        raise StructureError(f"dart count {m} is not a multiple of 4")
    for arr, name in ((sigma, "sigma"), (alpha, "alpha")):
        if sorted(arr) != list(range(m)):
            raise StructureError(f"{name} is not a permutation of 0..{m - 1}")
    for c in range(m // 4):
        d = 4 * c
        cyc = []
        for _ in range(4):
            if d // 4 != c:
                raise StructureError(f"sigma leaves crossing {c} at dart {d}")
            cyc.append(d)
            d = sigma[d]
        if d != 4 * c or len(set(cyc)) != 4:
            raise StructureError(f"sigma is not a 4-cycle on crossing {c}")
        ov = [over[x] for x in cyc]
        if sum(ov) != 2 or ov[0] != ov[2]:
            raise StructureError(f"crossing {c} needs two opposite over-darts")
    for d in range(m):
        if alpha[d] == d or alpha[alpha[d]] != d:
            raise StructureError(f"alpha is not a fixed-point-free involution at dart {d}")


def crossing_components(d: Diagram, crossings: Iterable[int],
                        cut_edges: Iterable[int]) -> list[frozenset[int]]:
    """Components of the shadow restricted to ``crossings`` with edges removed."""
    allowed = set(crossings)
    cut = set(cut_edges)
    seen: set[int] = set()
    out = []
    for start in sorted(allowed):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            c = queue.popleft()
            for k in range(4):
                dart = 4 * c + k
                if d.edge_of[dart] in cut:
                    continue
                nb = d.alpha[dart] // 4
                if nb in allowed and nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        out.append(frozenset(comp))
    return out


def is_alternating(d: Diagram) -> bool:
    return all(d.over[x] != d.over[d.alpha[x]] for x in range(d.num_darts))


def nugatory_crossings(d: Diagram) -> list[int]:
    """Crossings met twice by a single face."""
    bad = set()
    for face in d.faces:
        seen = set()
        for x in face:
            c = x // 4
            if c in seen:
                bad.add(c)
            seen.add(c)
    return sorted(bad)


def two_edge_cuts(d: Diagram) -> list[tuple[int, int, frozenset[int], frozenset[int]]]:
    """Edge pairs sharing two distinct faces whose removal leaves crossings on both sides.

    Returns ``(e, f, side_a, side_b)`` tuples; the sides partition the
    crossings of the component containing the edges.
    """
    fo = d.face_of
    faces_of_edge = [frozenset((fo[a], fo[b])) for a, b in d.edges]
    out = []
    comp_of = {}
    for comp in d.components:
        for c in comp:
            comp_of[c] = comp
    for e in range(len(d.edges)):
        fe = faces_of_edge[e]
        if len(fe) != 2:
            continue
        for f in range(e + 1, len(d.edges)):
            if faces_of_edge[f] != fe:
                continue
            comp = comp_of[d.edges[e][0] // 4]
            parts = crossing_components(d, comp, (e, f))
            if len(parts) == 2:
                out.append((e, f, parts[0], parts[1]))
    return out


def euler_characteristic(d: Diagram) -> int:
    return d.n - d.num_edges + len(d.faces)


def validate(d: Diagram) -> ValidationReport:
    if d.is_unknot_marker:
        return ValidationReport(d.loops <= 1, True, True, True, 0, 0)
    alternating = is_alternating(d)
    reduced = not nugatory_crossings(d)
    prime = not two_edge_cuts(d)
    return ValidationReport(connected=d.connected and d.loops == 0,
                            alternating=alternating, reduced=reduced, prime=prime,
                            n=d.n, faces=len(d.faces))


def is_spherical(d: Diagram) -> bool:
    """Every component embeds in the sphere."""
    if d.n == 0:
        return True
    faces_per_comp: dict[int, int] = {}
    comp_index = {}
    for i, comp in enumerate(d.components):
        for c in comp:
            comp_index[c] = i
    for face in d.faces:
        k = comp_index[face[0] // 4]
        faces_per_comp[k] = faces_per_comp.get(k, 0) + 1
    for i, comp in enumerate(d.components):
        v = len(comp)
        if v - 2 * v + faces_per_comp.get(i, 0) != 2:
            return False
    return True


def alternate(sigma: Sequence[int], alpha: Sequence[int], seed_over: bool = True) -> list[bool]:
    """Over flags making the map alternating, fixed by one dart per component.

    Raises StructureError if the map admits no alternating assignment.
    """
    m = len(sigma)
    over: list[bool | None] = [None] * m
    for start in range(0, m, 4):
        if over[start] is not None:
            continue
        over[start] = seed_over
        queue = deque([start])
        while queue:
            x = queue.popleft()
            s = sigma[x]
            for y, val in ((s, not over[x]), (alpha[x], not over[x])):
                if over[y] is None:
                    over[y] = val
                    queue.append(y)
                elif over[y] != val:
                    raise StructureError("map admits no alternating crossing data")
    return [bool(o) for o in over]
