"""Command-line front end: ``arboreal <verb> [flags]``.

Output is JSON on standard output (``--tsv`` for tabular verbs) with big
integers as decimal strings.  Exit status is 0 on success, 1 on usage errors
and 2 on domain errors, which are reported as a record with ``error`` and
``reason`` fields.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import automorphism as A
from . import padic, verify
from .dynamics import (RationalPolynomial, classify_overgroup, detect_pcf, discriminant,
                       iterate, resultant)
from .errors import ArborealError, OutOfRange
from .group_structure import (abelianization_invariants, chief_series, chief_series_table,
                              find_generating_set, find_inverting_conjugator, is_cyclic,
                              materialize, normalize_tuple)
from .overgroups import OvergroupSpec, enumerate_members, is_member, order, orbit_of_leaf, random_member
from .signs import parse_variant
from .tree_index import TreeShape

DEFAULT_ELEMENT_BUDGET = 10 ** 6
DEFAULT_DEGREE_BUDGET = 27


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _poly(text):
    try:
        return RationalPolynomial.parse(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _spec(text):
    try:
        return OvergroupSpec.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _json_arg(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise argparse.ArgumentTypeError(f"bad JSON: {e}") from None


def _element(args, d, n):
    """``--element`` is a nested record or a flat leaf permutation list."""
    if args.element is None:
        raise UsageError("--element is required")
    data = args.element
    if isinstance(data, list):
        return A.from_leaf_permutation(tuple(int(x) for x in data), TreeShape(d, n))
    a = A.from_record(data, d)
    if a.depth != n:
        raise OutOfRange(f"element has depth {a.depth}, expected {n}")
    return a


def _fill_spec(args):
    # --d/--m/--mp/--family stand in for --spec
    if getattr(args, "spec", None) is None and args.d is not None and (
            args.m is not None or args.family == "Aut"):
        if args.family == "Aut":
            args.spec = OvergroupSpec("Aut", args.d)
        else:
            args.spec = OvergroupSpec(args.family, args.d, args.m, args.mp)


def _need(args, *names):
    if "spec" in names:
        _fill_spec(args)
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join(missing))


def _budget(args, default):
    return default if args.budget is None else args.budget


def _degree_guard(f, n, budget):
    if f.degree ** n > budget:
        from .errors import DegreeOverflow
        raise DegreeOverflow(f"degree {f.degree}**{n} exceeds the budget {budget}")


def _spec_record(spec):
    rec = {"family": spec.family, "d": spec.degree}
    if spec.family != "Aut":
        rec["m"] = spec.m
        if spec.mp is not None:
            rec["mp"] = spec.mp
    return rec


# verbs

def cmd_sign(args):
    _need(args, "d", "n")
    a = _element(args, args.d, args.n)
    return {"sign": parse_variant(args.variant)(a)}


def cmd_member(args):
    _need(args, "spec", "n")
    return {"member": is_member(_element(args, args.spec.degree, args.n), args.spec)}


def cmd_order(args):
    _need(args, "spec", "n")
    return {"order": str(order(args.spec, args.n))}


def cmd_enumerate(args):
    _need(args, "spec", "n")
    elements = enumerate_members(args.spec, args.n, _budget(args, DEFAULT_ELEMENT_BUDGET))
    rows = [A.to_leaf_permutation(a) for a in elements]
    return {"count": str(len(rows)), "elements": [list(r) for r in rows]}


def cmd_sample(args):
    _need(args, "spec", "n")
    import random
    rng = random.Random(args.seed)
    rows = [list(A.to_leaf_permutation(random_member(args.spec, args.n, rng)))
            for _ in range(args.count)]
    return {"seed": args.seed, "elements": rows}


def cmd_orbit(args):
    _need(args, "spec", "n")
    return {"leaf": args.leaf, "orbit": sorted(orbit_of_leaf(args.spec, args.n, args.leaf))}


def _group(args):
    _need(args, "spec", "n")
    return materialize(args.spec, args.n, _budget(args, DEFAULT_ELEMENT_BUDGET))


def cmd_chief_series(args):
    G = _group(args)
    series, unique = chief_series(G)
    return {"orders": [str(x) for x in series.orders], "unique": unique,
            "rows": chief_series_table(G, series, unique)}


def cmd_rank(args):
    G = _group(args)
    if len(G) == 1:
        return {"rank": 0, "generators": []}
    for k in range(1, len(G).bit_length() + 1):
        gens = find_generating_set(G, k, trials=1000, seed=args.seed)
        if gens is not None:
            return {"rank": k, "exact": k <= 2 or None, "cyclic": is_cyclic(G),
                    "generators": [list(G.element(i)) for i in gens]}
    raise ArborealError("no generating set found")


def cmd_abelianization(args):
    return {"invariants": abelianization_invariants(_group(args))}


def cmd_normalize_tuple(args):
    _need(args, "tuple")
    try:
        t = tuple(int(x) for x in args.tuple.split(","))
    except ValueError:
        raise UsageError(f"bad tuple {args.tuple!r}") from None
    result, moves = normalize_tuple(t)
    return {"result": list(result), "moves": moves, "steps": len(moves)}


def cmd_invert_conj(args):
    _need(args, "d", "n")
    a = _element(args, args.d, args.n)
    t = find_inverting_conjugator(a)
    ok = A.compose(A.compose(t, a), A.invert(t)) == A.invert(a)
    return {"conjugator": A.to_record(t), "leaf_permutation": list(A.to_leaf_permutation(t)),
            "verified": ok}


def cmd_iterate(args):
    _need(args, "poly")
    n = 1 if args.n is None else args.n
    _degree_guard(args.poly[0], n, _budget(args, DEFAULT_DEGREE_BUDGET))
    g = iterate(args.poly[0], n)
    return {"degree": g.degree, "polynomial": str(g), "coefficients": g.to_text()}


def cmd_pcf(args):
    _need(args, "poly")
    return detect_pcf(args.poly[0], max_steps=args.max_steps).to_record()


def cmd_classify(args):
    _need(args, "poly")
    f = args.poly[0]
    orbit = detect_pcf(f, max_steps=args.max_steps)
    spec, flags = classify_overgroup(f, args.alpha, orbit)
    rec = _spec_record(spec)
    rec.update({"L": orbit.L, "O": orbit.O, "flags": flags})
    return rec


def cmd_disc(args):
    _need(args, "poly", "alpha")
    n = 1 if args.n is None else args.n
    return discriminant(args.poly[0], args.alpha, n,
                        max_degree=_budget(args, DEFAULT_DEGREE_BUDGET)).to_record()


def cmd_resultant(args):
    if not args.poly or len(args.poly) != 2:
        raise UsageError("resultant needs exactly two --poly")
    return {"resultant": str(resultant(*args.poly))}


def cmd_newton(args):
    _need(args, "poly", "prime")
    return padic.newton_polygon(args.poly[0], args.prime).to_record()


def cmd_eisenstein(args):
    """With ``--n``, search an iterate of ``--poly`` minus ``--alpha`` for a
    certificate; otherwise test ``--poly`` at ``--shift``."""
    _need(args, "poly", "prime") if args.n is None else _need(args, "poly")
    f = args.poly[0]
    if args.n is not None:
        alpha = args.alpha or 0
        primes = padic.CONDITION_PRIMES if args.prime is None else (args.prime,)
        cert = padic.iterate_irreducibility_certificate(
            f, alpha, args.n, primes=primes, max_degree=_budget(args, DEFAULT_DEGREE_BUDGET))
        return {"certificate": cert.to_record() if cert else None,
                "status": "certified" if cert else "unknown"}
    shift = args.shift or 0
    return {"prime": args.prime, "shift": str(shift),
            "eisenstein": padic.eisenstein_after_shift(f, args.prime, shift)}


def cmd_condition(args):
    _need(args, "alpha")
    holds, witness = padic.condition_check(args.alpha)
    return {"alpha": str(args.alpha), "holds": holds,
            "witness": {str(p): w for p, w in witness.items()}}


def cmd_verify(args):
    try:
        keys = verify.SUITES[args.suite]
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}") from None
    ok = True
    for key in keys:
        t = time.perf_counter()
        out = verify.CRITERIA[key]()
        for line in out.lines:
            print(f"  {line}")
        print(out.headline)
        print(f"{key}: {time.perf_counter() - t:.2f} s", file=sys.stderr)
        ok &= out.passed
    print(f"suite {args.suite}: {'PASS' if ok else 'FAIL'}")
    return ok


VERBS = {
    "sign": cmd_sign, "member": cmd_member, "order": cmd_order, "enumerate": cmd_enumerate,
    "sample": cmd_sample, "orbit": cmd_orbit, "chief-series": cmd_chief_series,
    "rank": cmd_rank, "abelianization": cmd_abelianization,
    "normalize-tuple": cmd_normalize_tuple, "invert-conj": cmd_invert_conj,
    "iterate": cmd_iterate, "pcf": cmd_pcf, "classify": cmd_classify, "disc": cmd_disc,
    "resultant": cmd_resultant, "newton": cmd_newton, "eisenstein": cmd_eisenstein,
    "condition": cmd_condition, "verify": cmd_verify,
}

TABULAR = {"enumerate", "sample", "chief-series"}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--d", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--mp", type=int)
    common.add_argument("--family", choices=("E", "F", "Aut"), default="E",
                        help="family used with --d/--m/--mp when --spec is absent")
    common.add_argument("--spec", type=_spec, help='e.g. "E:d=3,m=2", "F:d=3,m=3,mp=1", "Aut:d=2"')
    common.add_argument("--poly", type=_poly, action="append",
                        help='coefficients constant term first, e.g. "1,0,-3,2"')
    common.add_argument("--alpha", type=_fraction)
    common.add_argument("--prime", type=int)
    common.add_argument("--shift", type=_fraction)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int,
                        help="element cap (default 10**6) or degree cap (default 27)")
    common.add_argument("--tsv", action="store_true")

    parser = _Parser(prog="arboreal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in VERBS:
        p = sub.add_parser(verb, parents=[common])
        if verb in ("sign", "member", "invert-conj"):
            p.add_argument("--element", type=_json_arg,
                           help='nested {"perm": [...], "children": [...]} or a leaf permutation list')
        if verb == "sign":
            p.add_argument("--variant", default="sgn",
                           help="sgn, m:k, upper:k, sgn1:m,mp or sgn2:m,mp")
        if verb == "sample":
            p.add_argument("--count", type=int, default=1)
        if verb == "orbit":
            p.add_argument("--leaf", type=int, default=0)
        if verb == "normalize-tuple":
            p.add_argument("--tuple", help='comma separated signs, e.g. "1,-1,-1"')
        if verb in ("pcf", "classify"):
            p.add_argument("--max-steps", type=int, default=64)
        if verb == "verify":
            p.add_argument("--suite", default="all", help=", ".join(verify.SUITES))
    return parser


def _tsv(verb, result):
    if verb in ("enumerate", "sample"):
        return "\n".join("\t".join(map(str, row)) for row in result["elements"])
    header = "step\torder\tfactor_order\tfactor\tunique"
    lines = [header]
    for r in result["rows"]:
        factor = r["factor"] if isinstance(r["factor"], str) else ",".join(map(str, r["factor"]))
        lines.append(f"{r['step']}\t{r['order']}\t{r['factor_order']}\t{factor}\t{str(r['unique']).lower()}")
    return "\n".join(lines)


def _emit(obj):
    print(json.dumps(obj, ensure_ascii=False))


_VALUE_FLAGS = {"--poly", "--alpha", "--shift", "--tuple"}


def _glue_negative_values(argv):
    # "--poly -2,0,1" would otherwise read the value as an option
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and not nxt.startswith("--"):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        result = VERBS[args.verb](args)
    except UsageError as e:
        _emit({"error": "usage", "reason": "usage", "message": str(e)})
        return 1
    except ArborealError as e:
        _emit(e.record())
        return 2
    except (ValueError, ZeroDivisionError) as e:
        _emit({"error": "usage", "reason": type(e).__name__, "message": str(e)})
        return 1
    if args.verb == "verify":
        return 0 if result else 2
    if args.tsv and args.verb in TABULAR:
        print(_tsv(args.verb, result))
    else:
        _emit(result)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
