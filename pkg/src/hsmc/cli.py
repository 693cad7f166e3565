"""hs-mc: check models against HS formulas, contract traces, generate tiling structures."""

import argparse
import json
import sys

from .bisim import contract_counted, sampling_word
from .checker import CheckerConfig, FragmentError, model_check
from .errors import InvariantViolation, ParseError
from .hsformula import parse_formula, to_pnf
from .kripke import parse_model, serialize_model
from .oracle import Oracle
from .relang import parse_regex
from .summary import SpecSet, SummaryTable
from .tiling import gen_kripke, parse_instance

EXIT_SAT, EXIT_UNSAT, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _formula_text(text):
    lines = [ln.split("#", 1)[0] for ln in text.splitlines()]
    return " ".join(ln.strip() for ln in lines if ln.strip())


def read_spec(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(parse_regex(line))
    return out


def cmd_check(args):
    k = parse_model(_read(args.model))
    phi = to_pnf(parse_formula(_formula_text(_read(args.formula))))
    if args.max_trace is not None and args.max_trace < 1:
        raise ValueError("--max-trace must be positive")
    stats = None
    if args.mode == "oracle":
        if args.max_trace is None:
            raise ValueError("oracle mode needs an explicit --max-trace")
        cex = Oracle(k, args.max_trace).counterexample(phi)
        complete = False
    else:
        v = model_check(k, phi, CheckerConfig(max_cert_len=args.max_trace))
        cex, complete, stats = v.trace, v.complete, v.stats
        if cex is not None and not complete:
            # the capped checker decides the length-bounded semantics; re-check it
            if Oracle(k, args.max_trace).holds(cex, phi):
                raise InvariantViolation("counterexample is not confirmed by the oracle")
    sat = cex is None
    cex_names = k.names(cex) if cex is not None else None
    if args.json:
        out = {"result": "SAT" if sat else "UNSAT", "complete": complete,
               "witness": cex_names, "mode": args.mode,
               "stats": stats.as_dict() if stats is not None else None}
        print(json.dumps(out, sort_keys=True))
    else:
        print(f"RESULT: {'SAT' if sat else 'UNSAT'}")
        print(f"COMPLETE: {'yes' if complete else 'no'}")
        if cex_names is not None:
            print(f"COUNTEREXAMPLE: {' '.join(cex_names)}")
        elif args.witness:
            print("WITNESS: none (the property is universal over initial traces)")
        if args.stats and stats is not None:
            print("STATS:")
            for key, val in stats.as_dict().items():
                print(f"  {key}: {val}")
            print(f"  max_certificate_length: {stats.max_certificate_length}")
    return EXIT_SAT if sat else EXIT_UNSAT


def cmd_contract(args):
    k = parse_model(_read(args.model))
    spec = SpecSet(read_spec(_read(args.spec)))
    if args.h < 0:
        raise ValueError("--h must be non-negative")
    t = k.trace(args.trace)
    table = SummaryTable(k, spec)
    c, steps = contract_counted(table, t, args.h)
    same = sampling_word(k, spec, t, args.h, table) == sampling_word(k, spec, c, args.h, table)
    print(f"TRACE: {' '.join(k.names(c))}")
    print(f"LENGTH: {len(t)} -> {len(c)}")
    print(f"STEPS: {steps}")
    print(f"SAMPLING-WORD-EQUAL: {'yes' if same else 'no'}")
    return 0


def cmd_gen_tiling(args):
    inst = parse_instance(_read(args.instance))
    text = serialize_model(gen_kripke(inst))
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="hs-mc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide K |= phi")
    c.add_argument("--model", required=True)
    c.add_argument("--formula", required=True)
    c.add_argument("--mode", choices=("checker", "oracle"), default="checker")
    c.add_argument("--max-trace", type=int, default=None,
                   help="cap on certificate / trace length (required for the oracle)")
    c.add_argument("--stats", action="store_true")
    c.add_argument("--witness", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("contract", help="contract a trace preserving h-prefix bisimilarity")
    t.add_argument("--model", required=True)
    t.add_argument("--spec", required=True, help="one regular expression per line")
    t.add_argument("--trace", required=True, help='space-separated states, e.g. "s0 s1 s0"')
    t.add_argument("--h", type=int, required=True)
    t.set_defaults(func=cmd_contract)

    g = sub.add_parser("gen-tiling", help="write the Kripke structure of a tiling instance")
    g.add_argument("--instance", required=True)
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen_tiling)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, ParseError, FragmentError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
