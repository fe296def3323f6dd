import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from altlink.codec import ParseError, parse, serialize
from altlink.generators import generate_pretzel, random_diagram
from altlink.model import Diagram, validate
from altlink.oracle import canonical_form
from corpus import FIG8_PD, HOPF_PD, TREFOIL_PD


def test_trefoil_pd():
    d = parse(TREFOIL_PD)
    assert d.n == 3 and d.num_edges == 6
    assert validate(d).ok


@pytest.mark.parametrize("text,n", [(FIG8_PD, 4), (HOPF_PD, 2)])
def test_other_pd(text, n):
    d = parse(text)
    assert d.n == n and validate(d).ok


@pytest.mark.parametrize("text,code", [
    ("PD[]", "empty"),
    ("", "empty"),
    ("PD[X[1,2,3]]", "arity"),
    ("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,9]]", "label-range"),
    ("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,6]]", "label-count"),
    ("PD[X[1,2,a,4]]", "syntax"),
    ("{not json", "syntax"),
])
def test_parse_errors(text, code):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.code == code


def test_label_named_in_error():
    with pytest.raises(ParseError, match="label 3 appears 1 times"):
        parse("PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,6]]")


def test_non_spherical_native():
    # one crossing whose opposite darts are paired: a torus map
    text = json.dumps({"n": 1, "sigma": [1, 2, 3, 0], "alpha": [2, 3, 0, 1], "over": [True, False, True, False]})
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.code == "non-spherical"


def test_clockwise_flag():
    ccw = parse(TREFOIL_PD)
    rows = TREFOIL_PD[3:-1].split("],")
    tuples = [r.strip("X[]").split(",") for r in rows]
    # clockwise listing, still starting at the incoming under-strand
    cw_text = "PD[" + ",".join("X[" + ",".join([t[0]] + t[:0:-1]) + "]" for t in tuples) + "]"
    cw = parse(cw_text, clockwise=True)
    assert canonical_form(cw) == canonical_form(ccw)


def test_unknot_token():
    assert serialize(Diagram.unknot(), "json") == "UNKNOT"
    assert serialize(Diagram.unknot(), "pd") == "UNKNOT"
    assert parse("UNKNOT") == Diagram.unknot()


def test_trefoil_pd_round_trip():
    d = parse(TREFOIL_PD)
    text = serialize(d, "pd")
    assert text.count("X[") == 3
    assert canonical_form(parse(text)) == canonical_form(d)


def test_pretzel_333_native_exact():
    d = generate_pretzel((3, 3, 3))
    text = serialize(d, "json")
    obj = json.loads(text)
    assert len(obj["sigma"]) == len(obj["alpha"]) == len(obj["over"]) == 36
    assert parse(text) == d


def test_dot_output():
    dot = serialize(parse(TREFOIL_PD), "dot")
    assert dot.startswith("graph") and dot.count("--") == 6


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=12), st.integers(min_value=0, max_value=10 ** 6))
def test_round_trips(n, seed):
    d = random_diagram(n, random.Random(seed))
    assert parse(serialize(d, "json")) == d
    assert canonical_form(parse(serialize(d, "pd"))) == canonical_form(d)
