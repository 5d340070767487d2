"""Command-line front end: ``arborkit <command> [flags]``.

Exit status is 0 when a result was produced (whatever its verdict), 2 for
usage errors and refused inputs, 3 when a size cap stops the computation, and
1 when ``selftest`` reports a failing check.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .arboreal import DEFAULT_SAMPLES, ProfileStore, check_profile, constant_candidates, frobenius_samples
from .arith.factor import DEFAULT_SEED
from .arith.poly import rational_json, to_rational
from .cache import JsonlCache
from .criterion import RunConfig, criterion_report, frattini_depth
from .dynamics import CriticalOrbit, UnicriticalMap, collision_condition, critical_orbit, good_reduction_primes
from .errors import ArborError, CapExceeded
from .selftest import run_selftest
from .tower import DEGREE_CAP
from .treegroup import (WreathDescriptor, brute_force_frattini, free_group_index_p_normal_count, group_order,
                        maximal_subgroup_count, verify_free_group_count)

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _map(text):
    return UnicriticalMap.parse(text)


def _rational(text):
    try:
        return to_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _samples(text):
    return tuple(_rational(t) for t in text.split(",") if t.strip())


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--degree-cap", type=int, default=DEGREE_CAP)
    common.add_argument("--cache", help="append-only JSONL cache of computed towers")

    parser = _Parser(prog="arborkit", description="Arboreal Galois data for unicritical PCF maps.")
    parser.add_argument("--version", action="version", version=f"arborkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orbit", parents=[common], help="critical orbit or escape certificate")
    p.add_argument("--map", type=_map, required=True)
    p.add_argument("--bound", type=int, default=50, help="prime bound for the good-reduction screen")

    p = sub.add_parser("wreath", parents=[common], help="iterated wreath product orders and Frattini data")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--no-bruteforce", action="store_true")

    p = sub.add_parser("freegroup", parents=[common], help="index-p normal subgroups of a free group")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--p", type=int, default=2)

    p = sub.add_parser("profile", parents=[common], help="level degrees of the specialized tower")
    p.add_argument("--map", type=_map, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--depth", type=int, default=2)

    p = sub.add_parser("frobenius", parents=[common], help="factor-degree samples modulo good primes")
    p.add_argument("--map", type=_map, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--primes", type=int, default=25)

    p = sub.add_parser("constants", parents=[common], help="constant-field candidate ledger")
    p.add_argument("--map", type=_map, required=True)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--samples", type=_samples, default=DEFAULT_SAMPLES)

    p = sub.add_parser("criterion", parents=[common], help="full hypothesis-conditional report")
    p.add_argument("--map", type=_map, required=True)
    p.add_argument("--alpha", type=_rational, required=True)
    p.add_argument("--depth", type=int, default=3, help="depth of the constant-field search")
    p.add_argument("--samples", type=_samples, default=DEFAULT_SAMPLES)
    p.add_argument("--primes", type=int, default=25)

    sub.add_parser("selftest", parents=[common], help="run the built-in acceptance checks")
    return parser


def _store(args):
    cache = JsonlCache(args.cache) if args.cache else None
    return ProfileStore(degree_cap=args.degree_cap, seed=args.seed, cache=cache)


def cmd_orbit(args):
    f = args.map
    orb = critical_orbit(f)
    out = {"map": f.to_json(), **orb.to_json()}
    if isinstance(orb, CriticalOrbit):
        w = collision_condition(f)
        out["collision"] = None if w is None else [rational_json(x) if not isinstance(x, str) else x for x in w]
        out["frattini_depth"] = frattini_depth(f)
    out["bad_primes"] = sorted(good_reduction_primes(f, args.bound))
    return out, EXIT_OK


def cmd_wreath(args):
    w = WreathDescriptor(args.p, args.n, args.depth)
    out = {"p": args.p, "n": args.n, "depth": args.depth, "order": group_order(w),
           "maximal": maximal_subgroup_count(args.p, args.n, args.depth)}
    if not args.no_bruteforce:
        rank, count = brute_force_frattini(w)
        out["bruteforce"] = {"rank": rank, "maximal": count}
    return out, EXIT_OK


def cmd_freegroup(args):
    return {"rank": args.rank, "p": args.p,
            "count": free_group_index_p_normal_count(args.rank, args.p),
            "bruteforce": verify_free_group_count(args.rank, args.p)}, EXIT_OK


def cmd_profile(args):
    prof = _store(args).get(args.map, args.alpha, args.depth)
    check_profile(prof)
    return prof.to_json(), EXIT_OK


def cmd_frobenius(args):
    samples = frobenius_samples(args.map, args.alpha, args.depth, args.primes, seed=args.seed)
    return {"map": args.map.to_json(), "alpha": rational_json(args.alpha), "n": args.depth,
            "samples": [s.to_json() for s in samples]}, EXIT_OK


def cmd_constants(args):
    cands = constant_candidates(args.map, args.depth, args.samples, store=_store(args), seed=args.seed)
    return {"map": args.map.to_json(), "depth": args.depth,
            "samples": [rational_json(a) for a in args.samples],
            "constants": cands.to_json()}, EXIT_OK


def cmd_criterion(args):
    cfg = RunConfig(samples=args.samples, constants_depth=args.depth, prime_budget=args.primes,
                    seed=args.seed, degree_cap=args.degree_cap, cache=args.cache, json=args.json)
    return criterion_report(args.map, args.alpha, cfg).to_json(), EXIT_OK


def cmd_selftest(args):
    out = run_selftest(args.seed)
    return out, EXIT_OK if out["passed"] else EXIT_FAILED


COMMANDS = {
    "orbit": cmd_orbit,
    "wreath": cmd_wreath,
    "freegroup": cmd_freegroup,
    "profile": cmd_profile,
    "frobenius": cmd_frobenius,
    "constants": cmd_constants,
    "criterion": cmd_criterion,
    "selftest": cmd_selftest,
}


def _render_text(value, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                       (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}-")
                lines.append(_render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(item)}")
    else:
        lines.append(pad + _inline(value))
    return "\n".join(lines)


def _inline(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return "-"
    return str(v)


def emit(payload, as_json: bool, stream=None):
    stream = stream or sys.stdout
    if as_json:
        stream.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        stream.write(_render_text(payload) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        payload, code = COMMANDS[args.command](args)
    except CapExceeded as exc:
        emit(exc.to_dict(), args.json, sys.stderr)
        return EXIT_CAP
    except ArborError as exc:
        emit(exc.to_dict(), args.json, sys.stderr)
        return EXIT_USAGE
    emit(payload, args.json)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
