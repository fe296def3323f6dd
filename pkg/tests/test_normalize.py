import random

from hypothesis import given, settings, strategies as st

from altlink.codec import parse
from altlink.generators import add_kink, connected_sum, disjoint_union, generate_pretzel, random_diagram
from altlink.model import Diagram, validate
from altlink.normalize import decompose, factorize, remove_nugatory
from altlink.oracle import canonical_form
from corpus import TREFOIL_PD

TREFOIL = parse(TREFOIL_PD)
HOPF = generate_pretzel((1, 1))


def one_crossing_unknot():
    return Diagram.from_lists([1, 2, 3, 0], [1, 0, 3, 2], [True, False, True, False])


def test_kinked_trefoil():
    k = add_kink(TREFOIL)
    assert k.n == 4
    r = remove_nugatory(k)
    assert r.n == 3 and validate(r).ok
    assert canonical_form(r) == canonical_form(TREFOIL)


def test_reduced_is_fixpoint():
    assert remove_nugatory(TREFOIL) == TREFOIL


def test_kink_chain_is_unknot():
    d = add_kink(add_kink(one_crossing_unknot(), 2), 2)
    assert d.n == 3
    assert remove_nugatory(d) == Diagram.unknot()


def test_trefoil_sum():
    parts = decompose(connected_sum(TREFOIL, TREFOIL))
    assert len(parts) == 2
    assert all(canonical_form(f) == canonical_form(TREFOIL) for f, _ in parts)
    assert parts[0][1].joins == [(0, 1)]


def test_prime_is_singleton():
    parts = decompose(TREFOIL)
    assert len(parts) == 1 and canonical_form(parts[0][0]) == canonical_form(TREFOIL)


def test_split_union():
    parts = decompose(disjoint_union(TREFOIL, HOPF))
    assert sorted(f.n for f, _ in parts) == [2, 3]
    assert all(not rec.joins for _, rec in parts)


def test_triple_sum_record():
    d = connected_sum(connected_sum(TREFOIL, HOPF), generate_pretzel((2, 2)))
    fz = factorize(d)
    assert sorted(f.n for f in fz.factors) == [2, 3, 4]
    assert len(fz.pieces[0].joins) == 2
    assert fz.num_link_components == d.num_link_components


def _messy(seed):
    rng = random.Random(seed)
    d = connected_sum(random_diagram(rng.randint(3, 6), rng), random_diagram(rng.randint(2, 5), rng))
    for _ in range(rng.randint(1, 3)):
        d = add_kink(d, rng.randrange(d.num_darts))
    return d, rng


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=10 ** 6))
def test_confluence_and_conservation(seed):
    d, rng = _messy(seed)
    results = {canonical_form(remove_nugatory(d, order=lambda bad: rng.choice(bad))) for _ in range(4)}
    assert len(results) == 1
    reduced = remove_nugatory(d)
    assert d.n - reduced.n <= d.n
    fz = factorize(reduced)
    assert sum(f.n for f in fz.factors) == reduced.n
    for f in fz.factors:
        assert validate(f).ok
