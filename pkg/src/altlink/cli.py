"""Command-line interface.

Machine-readable JSON goes to stdout, human-readable messages to stderr.
Exit codes: 0 yes/success, 1 no, 2 invalid input, 3 precondition unmet,
4 qualified yes, 5 oracle refusal.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .codec import ParseError, parse, serialize
from .engine import Answer, equivalent
from .model import Diagram, PreconditionError, StructureError, validate

EXIT_YES, EXIT_NO, EXIT_INVALID, EXIT_PRECONDITION, EXIT_QUALIFIED, EXIT_REFUSED = range(6)

log = logging.getLogger("altlink")


def _read(path: str, clockwise: bool) -> Diagram:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return parse(text, clockwise=clockwise)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def cmd_validate(args) -> int:
    d = _read(args.file, args.cw)
    rep = validate(d)
    _emit(rep.as_dict())
    if not rep.ok:
        bad = [k for k in ("connected", "alternating", "reduced", "prime") if not getattr(rep, k)]
        log.warning("diagram is not %s", ", ".join(bad))
    return EXIT_YES if rep.ok else EXIT_PRECONDITION


def cmd_normalize(args) -> int:
    from .normalize import normalize_factors

    d = _read(args.file, args.cw)
    fz = normalize_factors(d)
    doc = {"loops": fz.loops,
           "factors": [json.loads(serialize(f, "json")) for f in fz.factors],
           "pieces": [p.as_json() for p in fz.pieces]}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            if len(fz.factors) == 1 and not fz.loops:
                fh.write(serialize(fz.factors[0], "json") + "\n")
            elif not fz.factors and fz.loops == 1:
                fh.write("UNKNOT\n")
            else:
                json.dump(doc, fh, sort_keys=True)
                fh.write("\n")
        log.info("wrote %s", args.output)
    _emit(doc)
    return EXIT_YES


def cmd_squares(args) -> int:
    from .squares import characteristic_collection

    d = _read(args.file, args.cw)
    rep = validate(d)
    if not rep.ok:
        raise PreconditionError(f"squares need a connected prime reduced alternating diagram: {rep.as_dict()}")
    coll = characteristic_collection(d)
    _emit({"n": d.n, "squares": coll.as_json()})
    return EXIT_YES


def cmd_compare(args) -> int:
    from .oracle import (DEFAULT_EXHAUSTIVE_CAP, DEFAULT_WITNESS_CAP, OracleRefusal, oracle_cap,
                         oracle_equivalent)

    d1 = _read(args.first, args.cw)
    d2 = _read(args.second, args.cw)
    verdict = equivalent(d1, d2, full_check=args.full_crossing_check)
    out = verdict.as_json()
    if args.oracle or args.witness:
        cap = oracle_cap(DEFAULT_WITNESS_CAP if args.witness else DEFAULT_EXHAUSTIVE_CAP)
        try:
            res = oracle_equivalent(d1, d2, cap=cap)
        except OracleRefusal as exc:
            log.error("oracle refused: %s", exc)
            _emit(out)
            return EXIT_REFUSED
        except PreconditionError as exc:
            log.error("oracle needs prime reduced inputs: %s", exc)
            _emit(out)
            return EXIT_PRECONDITION
        if args.oracle:
            out["oracle"] = res.equivalent
            if res.equivalent != verdict.yes:
                log.error("engine and oracle disagree")
        if args.witness and res.equivalent:
            out["witness"] = [m.as_json() for m in res.witness]
    _emit(out)
    log.info("%s (%s)", verdict.answer.value, verdict.reason.value)
    if verdict.answer is Answer.YES:
        return EXIT_YES
    if verdict.answer is Answer.YES_QUALIFIED:
        return EXIT_QUALIFIED
    return EXIT_NO


def cmd_orbit(args) -> int:
    from .oracle import OracleRefusal, oracle_cap, orbit

    d = _read(args.file, args.cw)
    cap = oracle_cap()
    if d.n > cap:
        raise OracleRefusal(f"oracle crossing cap {cap} exceeded (n = {d.n})")
    orb = orbit(d, max_states=args.max, moves=args.moves)
    _emit({"n": d.n, "size": len(orb.codes), "diameter": orb.diameter, "truncated": orb.truncated})
    return EXIT_YES


def cmd_gen(args) -> int:
    from . import generators as g

    params = [int(x) for x in args.params.split(",") if x.strip()] if args.params else []
    if args.family == "pretzel":
        d = g.generate_pretzel(params)
    elif args.family == "twist":
        d = g.generate_twist_chain(params)
    else:
        if len(params) != 1:
            raise PreconditionError("random takes a single crossing count")
        d = g.random_diagram(params[0], random.Random(args.seed))
    sys.stdout.write(serialize(d, args.format) + "\n")
    return EXIT_YES


def _selftest_pair(item):
    from .engine import equivalent_connected_prime
    from .oracle import canonical_form

    a, b, codes = item
    return equivalent_connected_prime(a, b).yes == (canonical_form(b) in codes)


def cmd_selftest(args) -> int:
    from . import generators as g
    from .oracle import all_flypes, apply_flype, canonical_form, orbit

    rng = random.Random(args.seed)
    corpus = [g.generate_pretzel(p) for p in ((1, 1, 1), (2, 2), (2, 1, 2), (3, 1, 2), (2, 1, 2, 1))]
    corpus += [g.random_diagram(rng.randint(4, 7), rng) for _ in range(args.size)]
    failures = 0
    for d in corpus:
        if parse(serialize(d, "json")) != d:
            failures += 1
            log.error("json round trip failed")
        if canonical_form(parse(serialize(d, "pd"))) != canonical_form(d):
            failures += 1
            log.error("pd round trip failed")
    work = []
    for d in corpus:
        x = d
        for _ in range(3):
            moves = all_flypes(x)
            if moves:
                x = apply_flype(x, rng.choice(moves))
        codes = orbit(d).codes
        for other in (d, x, d.mirror()):
            work.append((d, other, codes))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_selftest_pair, work))
    else:
        results = [_selftest_pair(w) for w in work]
    failures += results.count(False)
    _emit({"checks": len(results) + 2 * len(corpus), "failures": failures})
    log.info("selftest: %d failures", failures)
    return EXIT_YES if failures == 0 else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="altlink", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--cw", action="store_true", help="PD tuples list edges clockwise")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (used by selftest)")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check connected/alternating/reduced/prime")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("normalize", help="remove nugatory crossings and split into prime factors")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("squares", help="print the characteristic squares")
    s.add_argument("file")
    s.set_defaults(func=cmd_squares)

    s = sub.add_parser("compare", help="decide whether two diagrams represent the same link")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--witness", action="store_true", help="flype sequence from the oracle (small n)")
    s.add_argument("--oracle", action="store_true", help="cross-check with the brute-force oracle")
    s.add_argument("--full-crossing-check", action="store_true",
                   help="compare every crossing instead of one sample per fragment")
    s.set_defaults(func=cmd_compare)

    s = sub.add_parser("orbit", help="size and diameter of the flype orbit")
    s.add_argument("file")
    s.add_argument("--max", type=int, default=10 ** 6, help="state limit")
    s.add_argument("--moves", choices=("all", "simple"), default="all")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("gen", help="generate a diagram")
    s.add_argument("family", choices=("pretzel", "twist", "random"))
    s.add_argument("params", help="comma separated integers")
    s.add_argument("--format", choices=("json", "pd", "dot"), default="pd")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("selftest", help="run the built-in invariant checks")
    s.add_argument("--size", type=int, default=12)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    from .oracle import OracleRefusal

    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="altlink: %(message)s", stream=sys.stderr)
    if args.jobs < 1:
        args.jobs = os.cpu_count() or 1
    try:
        return args.func(args)
    except (ParseError, StructureError, OSError) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INVALID
    except PreconditionError as exc:
        log.error("precondition: %s", exc)
        return EXIT_PRECONDITION
    except OracleRefusal as exc:
        log.error("oracle refused: %s", exc)
        return EXIT_REFUSED


if __name__ == "__main__":
    sys.exit(main())
