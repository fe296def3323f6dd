"""Diagram generators for test corpora: pretzels, Montesinos sums and twist chains.

Diagrams are assembled from Conway tangles.  Only the planar map is built;
crossing data is filled in afterwards so the result is alternating.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import Diagram, PreconditionError, alternate, standard_sigma


@dataclass
class _Tangle:
    nw: object
    ne: object
    sw: object
    se: object


class TangleBuilder:
    """Accumulates crossings and wires; ``finish`` resolves wires into edges.

    Wire ends are either darts (ints) or arc terminals ``("a", i, side)`` of
    crossingless arcs.  Crossing darts run NE, NW, SW, SE counterclockwise.
    """

    def __init__(self):
        self.n = 0
        self.link: dict = {}
        self.arcs = 0

    def crossing(self) -> _Tangle:
        c = self.n
        self.n += 1
        return _Tangle(nw=4 * c + 1, ne=4 * c, sw=4 * c + 2, se=4 * c + 3)

    def _arc(self):
        i = self.arcs
        self.arcs += 1
        return ("a", i, 0), ("a", i, 1)

    def zero(self) -> _Tangle:
        a0, a1 = self._arc()
        b0, b1 = self._arc()
        return _Tangle(nw=a0, ne=a1, sw=b0, se=b1)

    def infinity(self) -> _Tangle:
        a0, a1 = self._arc()
        b0, b1 = self._arc()
        return _Tangle(nw=a0, sw=a1, ne=b0, se=b1)

    def join(self, x, y) -> None:
        if x in self.link or y in self.link:
            raise ValueError("wire end already joined")
        self.link[x] = y
        self.link[y] = x

    def add(self, t1: _Tangle, t2: _Tangle) -> _Tangle:
        self.join(t1.ne, t2.nw)
        self.join(t1.se, t2.sw)
        return _Tangle(nw=t1.nw, ne=t2.ne, sw=t1.sw, se=t2.se)

    def stack(self, t1: _Tangle, t2: _Tangle) -> _Tangle:
        """``t2`` placed below ``t1``."""
        self.join(t1.sw, t2.nw)
        self.join(t1.se, t2.ne)
        return _Tangle(nw=t1.nw, ne=t1.ne, sw=t2.sw, se=t2.se)

    def vertical_twist(self, p: int) -> _Tangle:
        t = self.crossing()
        for _ in range(p - 1):
            t = self.stack(t, self.crossing())
        return t

    def horizontal_twist(self, p: int) -> _Tangle:
        t = self.crossing()
        for _ in range(p - 1):
            t = self.add(t, self.crossing())
        return t

    def numerator(self, t: _Tangle) -> None:
        self.join(t.nw, t.ne)
        self.join(t.sw, t.se)

    def denominator(self, t: _Tangle) -> None:
        self.join(t.nw, t.sw)
        self.join(t.ne, t.se)

    def finish(self, seed_over: bool = True) -> Diagram:
        m = 4 * self.n
        alpha = [0] * m
        used_arcs = set()
        for d in range(m):
            t = self.link[d]
            while not isinstance(t, int):
                _, i, side = t
                used_arcs.add(i)
                t = self.link[("a", i, 1 - side)]
            alpha[d] = t
        loops = 0
        seen = set(used_arcs)
        for i in range(self.arcs):
            if i in seen:
                continue
            loops += 1
            t = ("a", i, 0)
            while True:
                seen.add(t[1])
                t = self.link[("a", t[1], 1 - t[2])]
                if not isinstance(t, tuple) or t[1] == i:
                    break
        sigma = standard_sigma(self.n)
        over = alternate(sigma, alpha, seed_over)
        return Diagram.from_lists(sigma, alpha, over, loops)


def _signed(values, what: str) -> tuple[list[int], bool]:
    if any(v == 0 for v in values):
        raise PreconditionError(f"{what} entries must be non-zero")
    if all(v > 0 for v in values):
        return list(values), False
    if all(v < 0 for v in values):
        return [-v for v in values], True
    raise PreconditionError(f"mixed signs in {what} {list(values)} give a non-alternating diagram")


def generate_pretzel(ps) -> Diagram:
    """Standard pretzel diagram ``P(p1, ..., pk)`` with uniform sign."""
    ps = list(ps)
    if len(ps) < 2:
        raise PreconditionError("pretzel needs at least two bands")
    ps, mirrored = _signed(ps, "pretzel")
    b = TangleBuilder()
    t = b.vertical_twist(ps[0])
    for p in ps[1:]:
        t = b.add(t, b.vertical_twist(p))
    b.numerator(t)
    d = b.finish()
    return d.mirror() if mirrored else d


def rational_tangle(b: TangleBuilder, seq) -> tuple[_Tangle, bool]:
    """Twist tangle ``seq[0]`` vertical, then alternately horizontal/vertical.

    Returns the tangle and whether the last twist was horizontal.
    """
    t = b.vertical_twist(seq[0])
    horizontal = False
    for i, a in enumerate(seq[1:]):
        horizontal = i % 2 == 0
        if horizontal:
            t = b.add(t, b.horizontal_twist(a))
        else:
            t = b.stack(t, b.vertical_twist(a))
    return t, horizontal


def generate_twist_chain(seq) -> Diagram:
    """Closure of a chain of twists (a 2-bridge diagram)."""
    seq, mirrored = _signed(list(seq), "twist chain")
    b = TangleBuilder()
    t, horizontal = rational_tangle(b, seq)
    if horizontal:
        b.numerator(t)
    else:
        b.denominator(t)
    d = b.finish()
    return d.mirror() if mirrored else d


def generate_montesinos(bands) -> Diagram:
    """Numerator closure of a sum of twist-chain tangles, one per band."""
    bands = [list(x) for x in bands]
    if len(bands) < 2:
        raise PreconditionError("need at least two bands")
    flat, mirrored = _signed([a for band in bands for a in band], "Montesinos")
    it = iter(flat)
    bands = [[next(it) for _ in band] for band in bands]
    b = TangleBuilder()
    t, _ = rational_tangle(b, bands[0])
    for band in bands[1:]:
        t = b.add(t, rational_tangle(b, band)[0])
    b.numerator(t)
    d = b.finish()
    return d.mirror() if mirrored else d


def disjoint_union(*ds: Diagram) -> Diagram:
    sigma, alpha, over = [], [], []
    off = 0
    loops = 0
    for d in ds:
        sigma += [x + off for x in d.sigma]
        alpha += [x + off for x in d.alpha]
        over += list(d.over)
        off += d.num_darts
        loops += d.loops
    return Diagram.from_lists(sigma, alpha, over, loops)


def connected_sum(d1: Diagram, d2: Diagram, dart1: int = 0, dart2: int | None = None) -> Diagram:
    """Splice ``d2`` into the edge of ``d1`` at ``dart1``.

    The edge of ``d2`` is chosen so that the result stays alternating.
    """
    u = disjoint_union(d1, d2)
    off = d1.num_darts
    a1, b1 = dart1, d1.alpha[dart1]
    candidates = [dart2] if dart2 is not None else range(d2.num_darts)
    for x in candidates:
        a2, b2 = x + off, d2.alpha[x] + off
        alpha = list(u.alpha)
        alpha[a1], alpha[b2] = b2, a1
        alpha[a2], alpha[b1] = b1, a2
        if u.over[a1] != u.over[b2] and u.over[a2] != u.over[b1]:
            return Diagram.from_lists(u.sigma, alpha, u.over, u.loops)
    raise PreconditionError("no alternating splice found")


def add_kink(d: Diagram, dart: int = 0) -> Diagram:
    """Insert a Reidemeister-I loop on the edge at ``dart``; stays alternating."""
    n = d.n
    c = 4 * n
    sigma = list(d.sigma) + [c + 1, c + 2, c + 3, c]
    alpha = list(d.alpha) + [0, 0, 0, 0]
    a, b = dart, d.alpha[dart]
    # darts c, c+1 form the loop; c+2 and c+3 take the two ends of the cut edge
    alpha[c], alpha[c + 1] = c + 1, c
    alpha[a], alpha[c + 2] = c + 2, a
    alpha[b], alpha[c + 3] = c + 3, b
    over = list(d.over) + [False] * 4
    ov2 = not d.over[a]
    over[c + 2] = ov2
    over[c] = ov2
    over[c + 1] = over[c + 3] = not ov2
    if over[c + 3] == d.over[b]:
        raise PreconditionError("kink would break alternation")
    return Diagram.from_lists(sigma, alpha, over, d.loops)


def _insert_crossing(sigma: list, alpha: list, rng, tries: int = 20):
    """Put a new crossing across two edges of one face, keeping the map planar."""
    d = Diagram.from_lists(sigma, alpha, alternate(sigma, alpha))
    faces = [f for f in d.faces if len(f) >= 2]
    for _ in range(tries):
        face = rng.choice(faces)
        x, y = rng.sample(face, 2)
        ends = [x, alpha[x], y, alpha[y]]
        rng.shuffle(ends)
        c = len(sigma) // 4
        new_sigma = sigma + [4 * c + 1, 4 * c + 2, 4 * c + 3, 4 * c]
        new_alpha = alpha + [0, 0, 0, 0]
        for k, e in enumerate(ends):
            new_alpha[4 * c + k] = e
            new_alpha[e] = 4 * c + k
        try:
            over = alternate(new_sigma, new_alpha)
        except ValueError:
            continue
        nd = Diagram.from_lists(new_sigma, new_alpha, over)
        if nd.n - nd.num_edges + len(nd.faces) == 2:
            return new_sigma, new_alpha
    return None


def random_diagram(n: int, rng, attempts: int = 200) -> Diagram:
    """A random connected prime reduced alternating diagram with ``n`` crossings.

    Grows a planar 4-valent map from the Hopf projection by dropping crossings
    across pairs of edges of a face, then rejects until the result is prime and
    reduced.
    """
    from .model import validate

    if n < 2:
        raise PreconditionError("need at least two crossings")
    for _ in range(attempts):
        sigma = standard_sigma(2)
        alpha = [7, 6, 5, 4, 3, 2, 1, 0]
        ok = True
        while len(sigma) // 4 < n:
            step = _insert_crossing(sigma, alpha, rng)
            if step is None:
                ok = False
                break
            sigma, alpha = step
        if not ok:
            continue
        d = Diagram.from_lists(sigma, alpha, alternate(sigma, alpha, rng.random() < 0.5))
        if validate(d).ok:
            return d
    raise PreconditionError(f"no prime reduced diagram found with n = {n}")
