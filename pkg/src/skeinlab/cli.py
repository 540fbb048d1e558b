"""Command-line surface: validate | invariants | blocks | glue | compare |
eval | actions, over a category JSON file.

Exit codes: 0 success, 1 validation/computation failure, 2 usage error.
Output is JSON by default (``--format text`` for aligned text); errors go to
stderr as one-line JSON objects.  SKEINLAB_MAX_DIM caps intermediate tensor
dimensions (default 4096).
"""

import argparse
import json
import sys

from .backends import (
    FusionData,
    HopfData,
    category_from_dict,
    validate_fusion,
    validate_hopf,
)
from .blocks import BlockEngine, HandlebodySig, parse_mcg_word
from .coend import invariants_report
from .diagrams import evaluate, load_morphisms, parse
from .errors import SkeinError


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="skeinlab",
        description="exact block-space and skein computations for presented "
                    "finite ribbon categories")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_sig=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("category", help="category JSON file")
        p.add_argument("--format", choices=("json", "text"), default="json")
        if needs_sig:
            p.add_argument("--genus", type=int, default=0)
            p.add_argument("--labels", default="",
                           help="comma-separated module names; '_' is a "
                                "fresh slot")
        return p

    add("validate", "run all axiom checks and report each one")
    add("invariants", "canonical end, alpha, unimodularity, traces, integrals")
    add("blocks", "block space dimension of a handlebody signature",
        needs_sig=True)
    p = add("glue", "sew two fresh slots by the generator coend",
            needs_sig=True)
    p.add_argument("--sew", nargs=2, type=int, required=True,
                   metavar=("I", "J"), help="0-based slots to sew")
    add("compare", "direct / glued / ball routes with an explicit iso",
        needs_sig=True)
    p = add("eval", "evaluate a ribbon diagram file")
    p.add_argument("--diagram", required=True)
    p.add_argument("--morphisms", help="sidecar coupon JSON file")
    p = add("actions", "mapping-class generator word on a block space",
            needs_sig=True)
    p.add_argument("--word", default="",
                   help="e.g. braid(0),twist(1),meridian_twist(0)")
    return ap


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _sig(args):
    labels = []
    if args.labels:
        for part in args.labels.split(","):
            part = part.strip()
            labels.append(None if part == "_" else part)
    return HandlebodySig(args.genus, tuple(labels))


def _emit(payload, fmt):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in _text_lines(payload, ""):
            print(line)


def _text_lines(value, indent):
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{indent}{k}:")
                out.extend(_text_lines(v, indent + "  "))
            else:
                out.append(f"{indent}{k}: {_text_atom(v)}")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, (dict, list)):
                out.extend(_text_lines(v, indent + "  "))
            else:
                out.append(f"{indent}- {_text_atom(v)}")
        return out
    return [f"{indent}{_text_atom(value)}"]


def _text_atom(v):
    if v is None:
        return "null"
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return str(v)


def _word_json(word):
    return [f"{n}{'-' if s < 0 else ''}" for n, s in word]


def run(argv):
    """Run one subcommand; returns the process exit code."""
    ap = _build_parser()
    args = ap.parse_args(argv)
    raw = _load(args.category)

    if args.command == "validate":
        kind = raw.get("kind")
        if kind == "hopf":
            rep = validate_hopf(HopfData.from_dict(raw))
        elif kind == "fusion":
            rep = validate_fusion(FusionData.from_dict(raw))
        else:
            raise SkeinError(f"unknown category kind {kind!r}")
        _emit(rep.to_json(), args.format)
        return 0 if rep.ok else 1

    cat = category_from_dict(raw)

    if args.command == "invariants":
        _emit(invariants_report(cat), args.format)
        return 0

    engine = BlockEngine(cat)

    if args.command == "blocks":
        sig = _sig(args)
        space = engine.blocks(sig)
        _emit({"sig": sig.to_json(), "dim_direct": space.dimension},
              args.format)
        return 0

    if args.command == "glue":
        sig = _sig(args)
        i, j = args.sew
        glued = engine.glue(sig, i, j)
        _emit({"sig": sig.to_json(), "sew": [i, j],
               "dim_glued": glued.dimension}, args.format)
        return 0

    if args.command == "compare":
        sig = _sig(args)
        report = engine.compare(sig)
        _emit(report, args.format)
        return 0 if report["agree"] else 1

    if args.command == "eval":
        with open(args.diagram, "r", encoding="utf-8") as fh:
            source = fh.read()
        coupons = load_morphisms(args.morphisms, cat) if args.morphisms else {}
        diagram = parse(source, cat, coupons)
        mor = evaluate(diagram)
        payload = {
            "input": _word_json(diagram.input_word),
            "output": _word_json(diagram.output_word),
            "matrix": mor.matrix.to_lists(),
        }
        if mor.matrix.rows == 1 and mor.matrix.cols == 1:
            payload["scalar"] = cat.field.encode(mor.matrix[0, 0])
        _emit(payload, args.format)
        return 0

    assert args.command == "actions"
    sig = _sig(args)
    word = parse_mcg_word(args.word)
    act = engine.mcg_action(sig, word)
    _emit({"sig": sig.to_json(), "word": args.word,
           "dim": act.source.dimension,
           "matrix": act.matrix.to_lists()}, args.format)
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        return run(argv)
    except SkeinError as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}),
              file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": "FileNotFound", "detail": str(exc)}),
              file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(json.dumps({"error": "JSONDecodeError", "detail": str(exc)}),
              file=sys.stderr)
        return 1
    except ValueError as exc:
        print(json.dumps({"error": "ValueError", "detail": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
