"""Command-line interface.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 ok/valid,
1 invalid, 2 paper/empirical disagreement, 3 non-terminating extraction,
4 no contraction, 64 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import oracle
from .algebra import format_rat
from .errors import (
    HyperradixError,
    InvalidBase,
    IterationLimit,
    NoContraction,
    NonTerminating,
    ParseError,
)
from .numsys import (
    Family,
    Mode,
    cycle_representative,
    decode,
    digit_set,
    encode,
    encode_proof_mode,
    rotate_cycle,
    validate_base,
)
from .radix import cloud_to_csv, cloud_to_pgm, contraction, error_bound, expand_point, fd_sample
from .textio import (
    format_digit,
    format_digits,
    format_point,
    parse_base,
    parse_digits,
    parse_element,
    parse_point,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DISAGREE = 2
EXIT_NONTERMINATING = 3
EXIT_NO_CONTRACTION = 4
EXIT_USAGE = 64

# Values such as "-1-j", "-j" or "-1/3" must not be mistaken for flags.
_NEGATIVE_VALUE = re.compile(r"^-(\d|\(|[je](\d|$|[+-])|h\()")


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = _NEGATIVE_VALUE

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _cycle_text(base, cycle) -> str:
    cycle = rotate_cycle(cycle, cycle_representative(base, cycle))
    parts = [format_point(v, base) for v in cycle]
    return " -> ".join(parts + parts[:1])


# --------------------------------------------------------------------------
# Subcommands


def cmd_validate(args) -> int:
    base = parse_base(args.base)
    mode = Mode(args.mode)
    v = validate_base(base, mode, args.box)
    if mode is Mode.PAPER:
        print(f"{'valid' if v.is_ns else 'invalid'} (paper: {v.reason.value})")
        return EXIT_OK if v.is_ns else EXIT_INVALID
    if v.disagreement:
        print(f"disagreement: paper {'valid' if v.paper_is_ns else 'invalid'}, empirical {'valid' if v.is_ns else 'invalid'} ({v.reason.value})")
        if v.witness is not None:
            print(f"witness {format_point(v.witness, base)}")
        if v.cycle:
            print(f"cycle {_cycle_text(base, v.cycle)}")
        if v.detail:
            _err(v.detail)
        return EXIT_DISAGREE
    status = "valid" if v.is_ns else "invalid"
    print(f"{status} (empirical: {v.reason.value}, {v.elements_tested} elements)")
    if v.witness is not None:
        print(f"witness {format_point(v.witness, base)}")
    if v.cycle:
        print(f"cycle {_cycle_text(base, v.cycle)}")
    return EXIT_OK if v.is_ns else EXIT_INVALID


def cmd_encode(args) -> int:
    base = parse_base(args.base)
    v = parse_element(args.value, base)
    try:
        if args.strategy == "proof":
            if base.family is not Family.HYPER_CANONICAL:
                _err("the proof strategy applies to hC bases only")
                return EXIT_USAGE
            ds = encode_proof_mode(v, base)
        else:
            ds = encode(v, base)
    except NonTerminating as exc:
        print(f"non-terminating: cycle {_cycle_text(base, exc.cycle)}")
        if exc.sigma is not None:
            _err(f"coefficient sum plateaus at {exc.sigma}")
        return EXIT_NONTERMINATING
    except IterationLimit as exc:
        print(f"non-terminating: {exc}")
        return EXIT_NONTERMINATING
    except InvalidBase as exc:
        _err(str(exc))
        return EXIT_INVALID
    print(format_digits(ds))
    return EXIT_OK


def cmd_decode(args) -> int:
    base = parse_base(args.base)
    ds = parse_digits(args.digits, base)
    print(format_point(decode(ds), base))
    return EXIT_OK


def _bound_text(bound) -> str:
    if isinstance(bound, Fraction):
        return format_rat(bound)
    return f"{bound:.12g}"


def cmd_expand(args) -> int:
    base = parse_base(args.base)
    z = parse_point(args.point, base)
    try:
        ds = expand_point(z, base, args.depth)
    except NoContraction as exc:
        print("no contraction")
        _err(str(exc))
        return EXIT_NO_CONTRACTION
    except NonTerminating as exc:
        print(f"non-terminating: cycle {_cycle_text(base, exc.cycle)}")
        return EXIT_NONTERMINATING
    print(format_digits(ds))
    if ds.exact:
        print("err = 0 (exact)")
    else:
        print(f"err <= {_bound_text(error_bound(base, args.depth))}")
    return EXIT_OK


def cmd_domain(args) -> int:
    base = parse_base(args.base)
    rep = contraction(base)
    if not rep.ok:
        print("no contraction")
        return EXIT_NO_CONTRACTION
    cloud = fd_sample(base, args.depth, cap=args.cap, seed=args.seed, samples=args.samples, workers=args.workers)
    if args.format == "csv":
        data = cloud_to_csv(cloud, exact=not args.float).encode("ascii")
    else:
        data = cloud_to_pgm(cloud, args.width, args.height)
    if args.out and args.out != "-":
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.flush()
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    mode = f"sampled seed={cloud.seed}" if cloud.sampled else "enumerated"
    _err(f"{len(cloud)} points ({mode}), inside bbox: {str(cloud.inside_bbox()).lower()}")
    return EXIT_OK


def cmd_residues(args) -> int:
    base = parse_base(args.base)
    digits = digit_set(base)
    for d in digits:
        print(format_digit(d))
    ok = oracle.verify_residue_bruteforce(base)
    print(f"complete {str(ok).lower()} ({len(digits)} digits, |N(q)| = {abs(base.norm)})")
    return EXIT_OK if ok else EXIT_INVALID


_SWEEP_RANGE = range(-6, 2)


def cmd_verify(args) -> int:
    suite = args.suite
    code = EXIT_OK
    if suite in ("sweep", "all"):
        for fam in Family:
            reports = oracle.theorem_sweep(fam, _SWEEP_RANGE, args.box, args.workers)
            sys.stdout.write(oracle.reports_to_jsonl(reports))
    if suite in ("residues", "all"):
        for fam in Family:
            for base in oracle.sweep_shapes(fam, _SWEEP_RANGE):
                rec = {"base": base.descriptor, "complete": oracle.verify_residue_bruteforce(base), "digits": len(digit_set(base))}
                print(json.dumps(rec, separators=(",", ":")))
    if suite in ("identities", "all"):
        for name, (passed, total) in oracle.identity_suite().items():
            print(json.dumps({"identity": name, "passed": passed, "total": total}, separators=(",", ":")))
            if passed != total:
                code = EXIT_INVALID
    if suite in ("norm-a", "all"):
        dev = oracle.norm_A_grid_check(args.samples, args.grid, args.seed)
        ok = dev <= 1e-6
        print(json.dumps({"check": "norm_A_grid", "samples": args.samples, "grid": args.grid, "max_rel_dev": float(f"{dev:.3e}"), "ok": ok}, separators=(",", ":")))
        if not ok:
            code = EXIT_INVALID
    return code


# --------------------------------------------------------------------------
# Entry point


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperradix", description="Number systems in hyperbolic and dual integers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check a base against the theorems or empirically")
    s.add_argument("base")
    s.add_argument("--mode", choices=["paper", "empirical"], default="paper")
    s.add_argument("--box", type=int, default=50, help="box bound B for empirical mode")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("encode", help="digits of a lattice element")
    s.add_argument("base")
    s.add_argument("value")
    s.add_argument("--strategy", choices=["direct", "proof"], default="direct")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", help="value of a digit string")
    s.add_argument("base")
    s.add_argument("digits")
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("expand", help="radix expansion of a rational plane point")
    s.add_argument("base")
    s.add_argument("point")
    s.add_argument("--depth", type=int, default=8)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("domain", help="fundamental domain point cloud")
    s.add_argument("base")
    s.add_argument("--depth", type=int, default=8)
    s.add_argument("--cap", type=int, default=10**7)
    s.add_argument("--samples", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=["csv", "pgm"], default="csv")
    s.add_argument("--float", action="store_true", help="binary64 coordinates instead of exact rationals")
    s.add_argument("--width", type=int, default=256)
    s.add_argument("--height", type=int, default=256)
    s.add_argument("--out", default="-")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_domain)

    s = sub.add_parser("residues", help="digit set and residue-system check")
    s.add_argument("base")
    s.set_defaults(func=cmd_residues)

    s = sub.add_parser("verify", help="run oracle suites")
    s.add_argument("suite", choices=["sweep", "residues", "identities", "norm-a", "all"])
    s.add_argument("--box", type=int, default=25)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--grid", type=int, default=4096)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _err(f"parse error: {exc}")
        return EXIT_USAGE
    except HyperradixError as exc:
        _err(f"error: {exc}")
        return EXIT_INVALID
    except ValueError as exc:
        _err(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
