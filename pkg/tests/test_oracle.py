import random

import pytest

from altlink.codec import parse
from altlink.generators import generate_pretzel
from altlink.model import validate
from altlink.oracle import (MoveError, OracleRefusal, all_flypes, apply_flype, canonical_form,
                            make_move, oracle_equivalent, orbit, simple_flypes, tangle_ends)
from altlink.squares import characteristic_collection
from corpus import FIG8_PD, TREFOIL_PD, base_corpus


def size_pairs(d):
    return sorted(s.sizes for s in characteristic_collection(d).squares)


def test_trefoil_orbit_trivial():
    orb = orbit(parse(TREFOIL_PD))
    assert len(orb.codes) == 1 and orb.diameter == 0


def test_mirror_codes():
    t, f = parse(TREFOIL_PD), parse(FIG8_PD)
    assert canonical_form(t) != canonical_form(t.mirror())
    assert canonical_form(f.mirror()) in orbit(f).codes


def test_pretzel_324_orbit():
    d = generate_pretzel((3, 2, 4))
    orb = orbit(d)
    assert canonical_form(generate_pretzel((2, 4, 3))) in orb.codes
    assert canonical_form(generate_pretzel((4, 3, 2))) in orb.codes
    assert orb.diameter <= 2 * 9 ** 2


def test_pretzel_2345_orbit_excludes_2435():
    orb = orbit(generate_pretzel((2, 3, 4, 5)))
    assert canonical_form(generate_pretzel((2, 4, 3, 5))) not in orb.codes
    other = orbit(generate_pretzel((2, 4, 3, 5)))
    assert not orb.codes & other.codes


def test_oracle_equivalent_examples():
    t = parse(TREFOIL_PD)
    assert not oracle_equivalent(t, t.mirror()).equivalent
    assert oracle_equivalent(generate_pretzel((3, 2, 4)), generate_pretzel((3, 4, 2)), cap=10).equivalent


def test_cap_refusal(monkeypatch):
    d = generate_pretzel((3, 3, 3))
    with pytest.raises(OracleRefusal):
        oracle_equivalent(d, d)
    monkeypatch.setenv("ALTLINK_ORACLE_CAP", "9")
    assert oracle_equivalent(d, d).equivalent


def test_single_flype_witness():
    d = generate_pretzel((2, 1, 2, 1))
    moves = [m for m in all_flypes(d) if canonical_form(apply_flype(d, m)) != canonical_form(d)]
    assert moves
    e = apply_flype(d, moves[0])
    res = oracle_equivalent(d, e)
    assert res.equivalent and len(res.witness) == 1
    assert set(res.witness[0].as_json()) == {"edges", "tangle", "crossing", "direction"}


def test_no_free_crossing_is_an_error():
    d = generate_pretzel((3, 2, 4))
    band = characteristic_collection(d).squares[0].partition[0]
    for side in range(4):
        with pytest.raises(MoveError):
            make_move(d, band, side)


@pytest.mark.parametrize("name,d", base_corpus()[:30])
def test_flypes_preserve_structure_and_reverse(name, d):
    code = canonical_form(d)
    for m in all_flypes(d):
        e = apply_flype(d, m)
        assert e.n == d.n and validate(e).ok
        assert size_pairs(e) == size_pairs(d)
        back = [apply_flype(e, r) for r in all_flypes(e) if r.tangle == m.tangle]
        assert any(canonical_form(b) == code for b in back)


@pytest.mark.parametrize("name,d", base_corpus())
def test_simple_flypes_match_collection(name, d):
    moves = simple_flypes(d)
    expected = 0
    for sq in characteristic_collection(d).squares:
        for tangle in sq.partition:
            ends = tangle_ends(d, tangle)
            expected += sum(1 for side in range(4)
                            if d.alpha[ends[(side + 1) % 4]] // 4 == d.alpha[ends[side]] // 4
                            and d.sigma[d.alpha[ends[(side + 1) % 4]]] == d.alpha[ends[side]])
    assert len(moves) == expected
    assert orbit(d, moves="simple").codes == orbit(d).codes


def test_bracket_invariant_under_flypes():
    from bracket import normalized_bracket

    rng = random.Random(11)
    for name, d in base_corpus()[:20]:
        ref = normalized_bracket(d)
        x = d
        for _ in range(6):
            moves = all_flypes(x)
            if not moves:
                break
            x = apply_flype(x, rng.choice(moves))
            assert normalized_bracket(x) == ref, name
