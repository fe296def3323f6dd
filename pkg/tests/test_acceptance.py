"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the report lines are written
straight to the terminal even when output capture is on.
"""
import math
import random
import statistics
import time

import pytest

from altlink.engine import Answer, equivalent, equivalent_connected_prime
from altlink.generators import generate_pretzel, generate_twist_chain
from altlink.isotopy import Stats
from altlink.oracle import canonical_form, oracle_equivalent, orbit
from altlink.squares import characteristic_collection, enumerate_essential_squares
from altlink.structure import in_product_region
from corpus import TREFOIL_PD, FIG8_PD, base_corpus, perturb, perturbed_corpus
from altlink.codec import parse

# flag extensions per call are bounded by 2 variants x 4|V| roots x 8|V| steps
ISOTOPY_CONSTANT = 64
SCALING_SIZES = (8, 16, 32, 64)
MAX_SLOPE = 8.0
N64_BUDGET_S = 600.0


def _report(capsys, k, ok, detail):
    with capsys.disabled():
        print(f"\nCRITERION {k}: {'PASS' if ok else 'FAIL'} -- {detail}")


@pytest.fixture(scope="module")
def corpus():
    return list(base_corpus()) + list(perturbed_corpus())


@pytest.fixture(scope="module")
def orbits(corpus):
    return {name: orbit(d) for name, d in corpus}


def test_criterion_1_oracle_agreement(capsys, corpus, orbits):
    stats = Stats()
    mismatches = []
    pairs = yes = 0
    codes = {name: canonical_form(d) for name, d in corpus}
    for i, (n1, d1) in enumerate(corpus):
        for n2, d2 in corpus[i:]:
            truth = codes[n2] in orbits[n1].codes
            verdict = equivalent(d1, d2) if d1.n != d2.n else \
                equivalent_connected_prime(d1, d2, stats=stats)
            pairs += 1
            yes += truth
            if verdict.yes != truth:
                mismatches.append((n1, n2, truth, verdict.answer.value))
    assert not any(o.truncated for o in orbits.values())
    ok = not mismatches and len(base_corpus()) >= 40 and len(perturbed_corpus()) >= 200
    _report(capsys, 1, ok, f"{pairs} pairs over {len(corpus)} diagrams "
                           f"({len(base_corpus())} base + {len(perturbed_corpus())} perturbed), "
                           f"{yes} equivalent, {len(mismatches)} mismatches")
    assert ok, mismatches[:10]


def test_criterion_2_flype_bound(capsys, corpus):
    worst = 0.0
    violations = []
    for name, d in corpus:
        orb = orbit(d, moves="simple")
        assert not orb.truncated
        bound = 2 * d.n ** 2
        worst = max(worst, orb.diameter / bound)
        if orb.diameter > bound:
            violations.append((name, orb.diameter))
    ok = not violations
    _report(capsys, 2, ok, f"max diameter/2n^2 = {worst:.4f} over {len(corpus)} diagrams")
    assert ok, violations


def test_criterion_3_structural_counts(capsys, corpus):
    bad = []
    for name, d in corpus:
        coll = characteristic_collection(d)
        if d.num_edges != 2 * d.n or len(d.faces) != d.n + 2 or len(coll) > d.n:
            bad.append((name, d.n, d.num_edges, len(d.faces), len(coll)))
    ok = not bad
    _report(capsys, 3, ok, f"E = 2n, F = n + 2, |C| <= n on {len(corpus)} diagrams, {len(bad)} violations")
    assert ok, bad


def test_criterion_4_metamorphic_flypes(capsys):
    rng = random.Random(4)
    base = base_corpus()
    failures = []
    longest = 0
    for trial in range(1000):
        name, d = base[rng.randrange(len(base))]
        length = rng.randint(1, 2 * d.n ** 2)
        longest = max(longest, length)
        e = perturb(d, rng, length)
        if equivalent(d, e).answer is not Answer.YES:
            failures.append((trial, name, length))
    ok = not failures
    _report(capsys, 4, ok, f"1000 trials, sequences up to {longest} simple flypes, {len(failures)} failures")
    assert ok, failures[:10]


def test_criterion_5_chirality(capsys):
    trefoil, fig8 = parse(TREFOIL_PD), parse(FIG8_PD)
    e_tref = equivalent(trefoil, trefoil.mirror()).answer
    e_fig8 = equivalent(fig8, fig8.mirror()).answer
    o_tref = oracle_equivalent(trefoil, trefoil.mirror()).equivalent
    o_fig8 = oracle_equivalent(fig8, fig8.mirror()).equivalent
    ok = e_tref is Answer.NO and not o_tref and e_fig8 is Answer.YES and o_fig8
    _report(capsys, 5, ok, f"trefoil/mirror engine {e_tref.value} oracle {o_tref}; "
                           f"figure-eight/mirror engine {e_fig8.value} oracle {o_fig8}")
    assert ok


def test_criterion_6_characterization(capsys, corpus):
    checked = 0
    violations = []
    for name, d in corpus:
        coll = characteristic_collection(d)
        members = {frozenset(s.partition) for s in coll.squares}
        for sq in enumerate_essential_squares(d):
            if frozenset(sq.partition) in members:
                continue
            checked += 1
            if not in_product_region(d, coll, sq):
                violations.append((name, sq.partition))
    ok = not violations
    _report(capsys, 6, ok, f"{checked} non-characteristic essential squares checked, "
                           f"{len(violations)} outside a product region")
    assert ok, violations[:5]


def _scaling_family(n):
    k = n // 8
    return [generate_pretzel((3, 1, 2, 2) * k), generate_twist_chain((2, 1, 2, 3) * k)]


def test_criterion_7_scaling(capsys):
    rng = random.Random(7)
    times = {}
    for n in SCALING_SIZES:
        worst = 0.0
        for d in _scaling_family(n):
            assert d.n == n
            e = perturb(d, rng, 2 * n)
            start = time.perf_counter()
            verdict = equivalent_connected_prime(d, e)
            worst = max(worst, time.perf_counter() - start)
            assert verdict.answer is Answer.YES
        times[n] = max(worst, 1e-4)
    xs = [math.log(n) for n in SCALING_SIZES]
    ys = [math.log(times[n]) for n in SCALING_SIZES]
    slope = statistics.linear_regression(xs, ys).slope
    ok = slope <= MAX_SLOPE and times[64] < N64_BUDGET_S
    detail = ", ".join(f"n={n}: {times[n]:.3f}s" for n in SCALING_SIZES)
    _report(capsys, 7, ok, f"{detail}; log-log slope {slope:.2f} (limit {MAX_SLOPE})")
    assert ok


def test_criterion_8_isotopy_steps(capsys, corpus):
    stats = Stats()
    rng = random.Random(8)
    for name, d in corpus:
        equivalent_connected_prime(d, perturb(d, rng, 3), stats=stats)
        equivalent_connected_prime(d, d.mirror(), stats=stats)
    for n in SCALING_SIZES:
        for d in _scaling_family(n):
            equivalent_connected_prime(d, perturb(d, rng, n), stats=stats)
    ok = stats.worst_ratio <= ISOTOPY_CONSTANT
    _report(capsys, 8, ok, f"{stats.calls} isotopy searches, max extensions/|V|^2 = "
                           f"{stats.worst_ratio:.2f} (at |V| = {stats.worst_size}), c = {ISOTOPY_CONSTANT}")
    assert ok
