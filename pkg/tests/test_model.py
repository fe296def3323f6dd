import random

import pytest
from hypothesis import given, settings, strategies as st

from altlink.generators import add_kink, generate_pretzel, random_diagram
from altlink.model import (Diagram, StructureError, euler_characteristic, is_alternating,
                           is_spherical, nugatory_crossings, two_edge_cuts, validate)
from altlink.oracle import canonical_form
from corpus import base_corpus


def test_pretzel_324_counts():
    d = generate_pretzel((3, 2, 4))
    assert (d.n, d.num_edges, len(d.faces)) == (9, 18, 11)
    assert validate(d).ok


def test_structure_errors():
    with pytest.raises(StructureError):
        Diagram.from_lists([1, 2, 3, 0], [1, 0, 2, 3], [True, False, True, False])
    with pytest.raises(StructureError):
        Diagram.from_lists([1, 2, 3, 0], [1, 0, 3, 2], [True, True, False, False])
    with pytest.raises(StructureError):
        Diagram.from_lists([1, 2, 3], [1, 0, 2], [True, False, True])


def test_unknot_marker():
    u = Diagram.unknot()
    assert u.is_unknot_marker and u.loops == 1
    assert validate(u).ok


@pytest.mark.parametrize("name,d", base_corpus())
def test_corpus_structure(name, d):
    assert is_alternating(d)
    assert is_spherical(d)
    assert euler_characteristic(d) == 2
    assert not nugatory_crossings(d)
    assert not two_edge_cuts(d)
    assert d.num_link_components == len(d.strands)


def test_kink_is_nugatory():
    d = add_kink(generate_pretzel((1, 1, 1)))
    rep = validate(d)
    assert rep.alternating and not rep.reduced and rep.connected


def test_mirror_changes_only_flags():
    d = generate_pretzel((2, 1, 2))
    m = d.mirror()
    assert m.sigma == d.sigma and m.alpha == d.alpha
    assert all(a != b for a, b in zip(m.over, d.over))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=3, max_value=9), st.integers(min_value=0, max_value=10 ** 6))
def test_relabel_invariance(n, seed):
    rng = random.Random(seed)
    d = random_diagram(n, rng)
    blocks = list(range(d.n))
    rng.shuffle(blocks)
    perm = []
    for c in range(d.n):
        shift = rng.randrange(4)
        perm += [4 * blocks[c] + (k + shift) % 4 for k in range(4)]
    e = d.relabel(perm)
    assert validate(e) == validate(d)
    assert canonical_form(e) == canonical_form(d)
    assert canonical_form(d.standardized()) == canonical_form(d)
