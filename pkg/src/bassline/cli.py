"""Command line front end.

Exit status: 0 on success, 1 when a validation or check fails (the report
is still printed), 2 on unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .classification import (
    ClassificationError,
    canonicalize,
    classification_table,
    classify_top_dimension,
    diagram_check,
)
from .functions import BassError, enumerate_n_bass, validate_bass
from .io import (
    FormatError,
    dumps,
    function_to_json,
    load_function,
    load_sequence,
    read_json,
    read_poset,
    sequence_to_json,
)
from .poset import PosetError, emit_dot, structure_report
from .profiles import WitnessGenerator
from .sequences import fct_from_seq, seq_from_fct, smallest_ke_pair, validate_sequence

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

CHAIN_NOTE = """\
note: on a bare chain a < b < c, (B2) forbids f(b) = 1 when f(a) = inf,
because b is then minimal in the domain. Inside a larger spectrum b may sit
above other domain elements, in which case that value is legal; model those
elements explicitly in the poset file to enumerate such functions.
"""


class _Failed(Exception):
    def __init__(self, payload):
        self.payload = payload


def _generator(name: str) -> WitnessGenerator:
    return WitnessGenerator(name)


def _parse_set(raw: str) -> list[str]:
    raw = raw.strip()
    if raw.startswith("["):
        try:
            items = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise FormatError(f"--set: invalid JSON list: {exc}") from exc
        if not isinstance(items, list) or not all(isinstance(e, str) for e in items):
            raise FormatError("--set: expected a JSON list of element names")
        return items
    return [e.strip() for e in raw.split(",") if e.strip()]


def cmd_validate(args, P):
    out = {"poset": P.name, "structure": structure_report(P).as_dict(P)}
    ok = True
    if args.fn:
        f = load_function(read_json(args.fn), P)
        report = validate_bass(f)
        out["function"] = report.as_dict()
        ok = ok and report.ok and (args.level is None or report.level <= args.level)
        if report.ok and args.level is not None and report.level > args.level:
            out["function"]["level_exceeded"] = args.level
    if args.seq:
        s = load_sequence(read_json(args.seq), P)
        report = validate_sequence(s, args.level)
        out["sequence"] = report.as_dict()
        ok = ok and report.ok
    if not ok:
        raise _Failed(out)
    return out


def cmd_enumerate(args, P):
    fs = enumerate_n_bass(P, args.level)
    return {
        "poset": P.name,
        "level": args.level,
        "count": len(fs),
        "functions": [
            {"values": function_to_json(f)["values"], "level": f.level, "sequence": seq_from_fct(f).as_lists()}
            for f in fs
        ],
    }


def cmd_classify(args, P):
    table = classification_table(P)
    return table.as_dict() if args.json else table.format()


def cmd_canonicalize(args, P):
    h = load_function(read_json(args.fn), P)
    return function_to_json(canonicalize(h, args.mode, _generator(args.generator)), role="function")


def cmd_seq(args, P):
    f = load_function(read_json(args.fn), P)
    report = validate_bass(f)
    if not report.ok:
        raise _Failed({"poset": P.name, "function": report.as_dict()})
    return sequence_to_json(seq_from_fct(f))


def cmd_fct(args, P):
    s = load_sequence(read_json(args.seq), P)
    report = validate_sequence(s)
    if not report.ok:
        raise _Failed({"poset": P.name, "sequence": report.as_dict()})
    return function_to_json(fct_from_seq(s))


def cmd_smallest_ke(args, P):
    pair = smallest_ke_pair(P, _parse_set(args.set))
    return {"poset": P.name, **pair.as_dict()}


def cmd_top_classes(args, P):
    pairs = classify_top_dimension(P)
    return {
        "poset": P.name,
        "height": P.poset_height,
        "count": len(pairs),
        "classes": [{"assh_subset": P.sorted(k), "values": function_to_json(f)["values"]} for k, f in pairs],
    }


def cmd_diagram_check(args, P):
    report = diagram_check(P, _generator(args.generator))
    out = report.as_dict()
    if not report.passed:
        raise _Failed(out)
    return out


def cmd_dot(args, P):
    f = load_function(read_json(args.fn), P) if args.fn else None
    return emit_dot(P, f)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bassline",
        description="Bass functions, Bass sequences and subcategory classifiers on finite posets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-o", "--output", help="write output here instead of standard output")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, **kw):
        p = sub.add_parser(name, help=help_text, description=help_text, **kw)
        p.add_argument("poset", help="poset JSON file")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "validate a poset, and optionally a function or sequence on it")
    p.add_argument("--fn", help="function JSON file to check against (B1)-(B3)")
    p.add_argument("--seq", help="sequence JSON file to check against the sequence axioms")
    p.add_argument("--level", type=int, help="also require the function/sequence to be LEVEL-Bass")

    p = add(
        "enumerate",
        cmd_enumerate,
        "list every n-Bass function",
        epilog=CHAIN_NOTE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--level", type=int, required=True, help="n (0 Serre, 1 torsion-free, 2 KE-closed, or any n)")

    p = add("classify", cmd_classify, "count classifiers at levels 0, 1 and 2")
    p.add_argument("--json", action="store_true", help="emit the full table as JSON")

    p = add("canonicalize", cmd_canonicalize, "canonical classifier of a function with values in {0,1,2,inf}")
    p.add_argument("--fn", required=True, help="function JSON file")
    p.add_argument("--mode", choices=["brute", "witness", "propagate"], default="brute")
    p.add_argument("--generator", choices=["s1", "s2"], default="s2", help="witness generator for --mode witness")

    p = add("seq", cmd_seq, "Bass function to Bass sequence")
    p.add_argument("--fn", required=True, help="function JSON file")

    p = add("fct", cmd_fct, "Bass sequence to Bass function")
    p.add_argument("--seq", required=True, help="sequence JSON file")

    p = add("smallest-ke", cmd_smallest_ke, "smallest 2-Bass pair (phi, psi) with the given phi")
    p.add_argument("--set", required=True, help="elements of phi: comma separated, or a JSON list")

    add("top-classes", cmd_top_classes, "classify top-dimensional Bass functions by subsets of assh")

    p = add("diagram-check", cmd_diagram_check, "verify the classifier correspondences on the poset")
    p.add_argument("--generator", choices=["s1", "s2"], default="s2")

    p = add("dot", cmd_dot, "render the Hasse diagram as DOT")
    p.add_argument("--fn", help="function JSON file whose values label the nodes")

    return parser


def _emit(text: str, output):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        P = read_poset(args.poset)
        try:
            result = args.func(args, P)
            status = EXIT_OK
        except _Failed as exc:
            result, status = exc.payload, EXIT_FAIL
        except (BassError, ClassificationError) as exc:
            result, status = {"error": str(exc)}, EXIT_FAIL
        text = result if isinstance(result, str) else dumps(result)
        _emit(text, args.output)
        return status
    except (FormatError, PosetError, ValueError, OSError) as exc:
        print(f"bassline: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
