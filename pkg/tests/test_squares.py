import itertools

import pytest

from altlink.codec import parse
from altlink.generators import generate_pretzel, generate_twist_chain
from altlink.model import crossing_components
from altlink.squares import (characteristic_collection, enumerate_essential_squares,
                             enumerate_squares, interleave)
from corpus import FIG8_PD, HOPF_PD, TREFOIL_PD, base_corpus


def quartet_brute_force(d):
    """Partitions cut out by curves through four distinct edges, by edge subsets."""
    fo = d.face_of
    out = set()
    for quad in itertools.combinations(range(d.num_edges), 4):
        parts = crossing_components(d, range(d.n), quad)
        if len(parts) != 2 or min(len(p) for p in parts) < 2:
            continue
        # a simple closed curve through the four edges crosses the dual graph in a 4-cycle
        faces = [frozenset((fo[a], fo[b])) for a, b in (d.edges[e] for e in quad)]
        if any(len(f) != 2 for f in faces):
            continue
        if all(sum(1 for g in faces if f in g) == 2 for g in faces for f in g):
            out.add(frozenset(parts))
    return out


def test_trefoil_has_no_squares():
    assert enumerate_essential_squares(parse(TREFOIL_PD)) == []
    assert len(characteristic_collection(parse(TREFOIL_PD))) == 0


def test_hopf_has_no_squares():
    assert len(characteristic_collection(parse(HOPF_PD))) == 0


def test_figure_eight_squares():
    squares = enumerate_essential_squares(parse(FIG8_PD))
    assert squares
    assert all(s.sizes == (2, 2) for s in squares)


def test_pretzel_333():
    d = generate_pretzel((3, 3, 3))
    coll = characteristic_collection(d)
    assert len(coll) == 3
    bands = sorted(sorted(min(s.partition, key=len)) for s in coll.squares)
    assert all(len(b) == 3 for b in bands)
    assert len(set().union(*map(set, bands))) == 9
    for i, s in enumerate(coll.squares):
        band_side = s.partition.index(min(s.partition, key=len))
        assert coll.theta[(i, band_side)] == 1
        assert coll.theta[(i, 1 - band_side)] == 2


@pytest.mark.parametrize("name,d", base_corpus())
def test_enumeration_matches_quartets(name, d):
    found = {frozenset(s.partition) for s in enumerate_essential_squares(d)}
    assert found == quartet_brute_force(d)


def test_interleave_examples():
    d = generate_pretzel((3, 3, 3))
    coll = characteristic_collection(d)
    s1, s2 = coll.squares[0], coll.squares[1]
    assert not interleave(s1, s1)
    assert not interleave(s1, s2)


def test_overlapping_squares_on_twist():
    d = generate_twist_chain((4, 4))
    assert d.n == 8
    pairs = [s for s in enumerate_essential_squares(d) if s.sizes[0] == 2]
    found = [(a, b) for a, b in itertools.combinations(pairs, 2)
             if len(min(a.partition, key=len) & min(b.partition, key=len)) == 1]
    assert found
    assert all(interleave(a, b) for a, b in found)


@pytest.mark.parametrize("name,d", base_corpus())
def test_collection_invariants(name, d):
    coll = characteristic_collection(d)
    assert len(coll) <= d.n
    for a, b in itertools.combinations(coll.squares, 2):
        assert not interleave(a, b)
    for s in coll.squares:
        assert min(len(p) for p in s.partition) >= 2
        assert len(set(s.edges)) == 4
    assert len(enumerate_squares(d, essential_only=False)) >= len(enumerate_essential_squares(d))
