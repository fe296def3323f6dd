"""Reading and writing diagrams.

Two text formats are supported:

``pd``
    ``PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`` -- one tuple per crossing, edge
    labels listed counterclockwise from the incoming under-strand.
``json``
    ``{"n": 3, "sigma": [...], "alpha": [...], "over": [...]}`` -- the map
    itself, darts ``4i..4i+3`` belonging to crossing ``i``.  This is the
    authoritative store and round-trips exactly.

The 0-crossing marker is written as the bare token ``UNKNOT``.
"""
from __future__ import annotations

import json
import re

from .model import Diagram, StructureError, is_spherical

UNKNOT_TOKEN = "UNKNOT"


class ParseError(ValueError):
    """Input text could not be turned into a diagram.

    ``code`` is one of ``empty``, ``syntax``, ``arity``, ``label-count``,
    ``label-range``, ``non-spherical``, ``structure``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


_TUPLE_RE = re.compile(r"X\s*\[([^\]]*)\]")


def parse(text: str, format_hint: str = "auto", *, clockwise: bool = False) -> Diagram:
    body = text.strip()
    if not body:
        raise ParseError("empty", "empty input")
    if format_hint == "auto":
        format_hint = "json" if body.startswith("{") else "pd"
    if body == UNKNOT_TOKEN:
        return Diagram.unknot()
    if format_hint == "json":
        return _parse_json(body)
    if format_hint == "pd":
        return parse_pd(body, clockwise=clockwise)
    raise ValueError(f"unknown format {format_hint!r}")


def _parse_json(body: str) -> Diagram:
    try:
        obj = json.loads(body)
    except json.JSONDecodeError as exc:
        raise ParseError("syntax", f"invalid JSON: {exc}") from exc
    try:
        n = int(obj["n"])
        sigma, alpha, over = obj["sigma"], obj["alpha"], obj["over"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("syntax", f"missing field in native map: {exc}") from exc
    if n == 0 and not sigma:
        return Diagram.unknot(int(obj.get("loops", 1)))
    if len(sigma) != 4 * n:
        raise ParseError("structure", f"expected {4 * n} darts, got {len(sigma)}")
    try:
        d = Diagram.from_lists(sigma, alpha, over, int(obj.get("loops", 0)))
    except StructureError as exc:
        raise ParseError("structure", str(exc)) from exc
    if not is_spherical(d):
        raise ParseError("non-spherical", "map is not planar (Euler characteristic != 2)")
    return d


def parse_pd(text: str, *, clockwise: bool = False) -> Diagram:
    body = text.strip()
    m = re.fullmatch(r"PD\s*\[(.*)\]", body, re.S)
    if m is None:
        raise ParseError("syntax", "expected PD[...]")
    inner = m.group(1).strip()
    if not inner:
        raise ParseError("empty", "empty diagram")
    tuples = []
    pos = 0
    for tm in _TUPLE_RE.finditer(inner):
        if inner[pos:tm.start()].strip(" ,\n\t"):
            raise ParseError("syntax", f"unexpected text {inner[pos:tm.start()]!r}")
        pos = tm.end()
        fields = [f.strip() for f in tm.group(1).split(",") if f.strip()]
        try:
            labels = [int(f) for f in fields]
        except ValueError as exc:
            raise ParseError("syntax", f"non-integer label in X[{tm.group(1)}]") from exc
        if len(labels) != 4:
            raise ParseError("arity", f"crossing X[{tm.group(1)}] has {len(labels)} labels, expected 4")
        tuples.append(labels[::-1] if clockwise else labels)
    if inner[pos:].strip(" ,\n\t"):
        raise ParseError("syntax", f"unexpected text {inner[pos:]!r}")
    if clockwise:
        # reversing keeps the incoming under-strand first
        tuples = [[t[-1]] + t[:-1] for t in tuples]
    n = len(tuples)
    where: dict[int, list[int]] = {}
    for c, t in enumerate(tuples):
        for k, lab in enumerate(t):
            if lab < 1 or lab > 2 * n:
                raise ParseError("label-range", f"label {lab} outside 1..{2 * n}")
            where.setdefault(lab, []).append(4 * c + k)
    for lab in range(1, 2 * n + 1):
        cnt = len(where.get(lab, ()))
        if cnt != 2:
            raise ParseError("label-count", f"label {lab} appears {cnt} times, expected 2")
    alpha = [0] * (4 * n)
    for a, b in where.values():
        alpha[a], alpha[b] = b, a
    over = [k % 2 == 1 for _ in range(n) for k in range(4)]
    try:
        d = Diagram.standard(alpha, over)
    except StructureError as exc:
        raise ParseError("structure", str(exc)) from exc
    if not is_spherical(d):
        raise ParseError("non-spherical", "PD code is not planar (Euler characteristic != 2)")
    return d


def serialize(d: Diagram, fmt: str = "json") -> str:
    if d.is_unknot_marker and d.loops == 1 and fmt != "json":
        return UNKNOT_TOKEN
    if fmt == "json":
        if d.is_unknot_marker and d.loops == 1:
            return UNKNOT_TOKEN
        obj = {"n": d.n, "sigma": list(d.sigma), "alpha": list(d.alpha), "over": list(d.over)}
        if d.loops:
            obj["loops"] = d.loops
        return json.dumps(obj, separators=(",", ":"))
    if fmt == "pd":
        return to_pd(d)
    if fmt == "dot":
        return to_dot(d)
    raise ValueError(f"unknown format {fmt!r}")


def pd_tuples(d: Diagram) -> list[tuple[int, int, int, int]]:
    """PD tuples with edges numbered consecutively along each strand."""
    if d.loops:
        raise ValueError("PD code cannot express crossingless components")
    label = {}
    incoming = set()
    nxt = 1
    for cyc in d.strands:
        for x in cyc:
            incoming.add(x)
            out = d.opposite(x)
            label[out] = label[d.alpha[out]] = nxt
            nxt += 1
    out = []
    for c in range(d.n):
        start = next(x for x in range(4 * c, 4 * c + 4) if not d.over[x] and x in incoming)
        row = []
        x = start
        for _ in range(4):
            row.append(label[x])
            x = d.sigma[x]
        out.append(tuple(row))
    return out


def to_pd(d: Diagram) -> str:
    return "PD[" + ",".join("X[%d,%d,%d,%d]" % t for t in pd_tuples(d)) + "]"


def to_dot(d: Diagram) -> str:
    lines = ["graph diagram {"]
    for c in range(d.n):
        lines.append(f"  c{c} [label=\"{c}\"];")
    for e, (a, b) in enumerate(d.edges):
        lines.append(f"  c{a // 4} -- c{b // 4} [label=\"e{e}\", "
                     f"tailover={str(d.over[a]).lower()}, headover={str(d.over[b]).lower()}];")
    lines.append("}")
    return "\n".join(lines)
