"""Command-line front end.

Exit codes: 0 on success (a failed invariance *check* is a result, not an
error), 1 on domain errors, 2 on usage or parse errors (with character
positions where available).  Output is deterministic: identical inputs
give byte-identical documents.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import finite
from .braiding import braiding_number, braiding_polynomial
from .johnson import johnson_level, johnson_tau, parse_endo
from .magnus import magnus_expand, series_to_json
from .presented import (GroupHom, Presentation, build_truncated_quotient,
                        dimension_depth, invariants_basis, is_invariant, pair,
                        parse_presentation, pullback)
from .rings import ring_from_flag
from .tensors import format_tensor, parse_tensor, tensor_to_json
from .words import Alphabet, ParseError, format_word, parse_word


def _emit(doc):
    sys.stdout.write(json.dumps(doc, separators=(", ", ": ")) + "\n")


def _load_presentation(args, parser):
    if getattr(args, "presentation", None):
        with open(args.presentation, "r", encoding="utf-8") as fh:
            return parse_presentation(fh.read())
    if getattr(args, "gens", None):
        return Presentation.free(Alphabet.parse(args.gens))
    parser.error(f"'{args.command}' needs --presentation or --gens")


def _split_map(text, target_alphabet):
    """Parse 'a -> word, b -> word' against a target alphabet; returns the
    left-hand names in order and the mapping."""
    from .johnson import split_assignments
    names, mapping = [], {}
    for chunk in split_assignments(text):
        if "->" not in chunk:
            raise ValueError(f"expected 'gen -> word' in {chunk!r}")
        name, expr = chunk.split("->", 1)
        name = name.strip()
        if name in mapping:
            raise ValueError(f"duplicate image for {name!r}")
        names.append(name)
        mapping[name] = parse_word(expr, target_alphabet)
    return names, mapping


def _cmd_magnus(args, ring, P):
    w = parse_word(args.word, P.alphabet)
    series = magnus_expand(w, args.order, ring)
    terms = series_to_json(series)
    if args.format == "json":
        _emit({"order": args.order, "terms": terms})
    else:
        for t in terms:
            print(f"{t['coeff']}  {' '.join(t['key']) if t['key'] else '1'}")
    return 0


def _cmd_braid(args, ring, P):
    T = parse_tensor(args.tensor, P.alphabet, ring)
    w = parse_word(args.word, P.alphabet)
    poly = braiding_polynomial(T, w)
    number = braiding_number(T, w)
    if args.format == "json":
        _emit({"polynomial": poly.to_strings(), "number": ring.format(number)})
    else:
        print(f"polynomial coefficients: {poly.to_strings()}")
        print(f"braiding number: {ring.format(number)}")
        print("convention: the leftmost tensor factor pairs with the "
              "earliest letter of the word")
    return 0


def _cmd_pair(args, ring, P):
    T = parse_tensor(args.tensor, P.alphabet, ring)
    order = args.order or T.weight + 1
    Q = build_truncated_quotient(P, order, ring)
    w = parse_word(args.word, P.alphabet)
    value = pair(Q, T, w)
    if args.format == "json":
        _emit({"value": ring.format(value)})
    else:
        print(ring.format(value))
    return 0


def _cmd_invariants(args, ring, P):
    basis = invariants_basis(P, args.weight + 1, ring)
    if args.format == "json":
        elements = [dict(weight=w, **tensor_to_json(e))
                    for e, w in zip(basis.elements, basis.weights)]
        doc = {"max_weight": basis.max_weight, "elements": elements}
        if basis.elementary_divisors is not None:
            doc["elementary_divisors"] = list(basis.elementary_divisors)
        _emit(doc)
    elif args.format == "latex":
        print(r"\begin{tabular}{rl}")
        print(r"weight & invariant \\ \hline")
        for e, w in zip(basis.elements, basis.weights):
            body = format_tensor(e).replace("|", r" \otimes ")
            print(f"{w} & ${body}$ " + r"\\")
        print(r"\end{tabular}")
    else:
        for e, w in zip(basis.elements, basis.weights):
            print(f"[weight {w}] {format_tensor(e)}")
        if basis.elementary_divisors is not None and any(
                d not in (0, 1) for d in basis.elementary_divisors):
            print("elementary divisors: "
                  + " ".join(str(d) for d in basis.elementary_divisors))
    return 0


def _cmd_check(args, ring, P):
    T = parse_tensor(args.tensor, P.alphabet, ring)
    ok, witness = is_invariant(P, T)
    if args.format == "json":
        if ok:
            _emit({"invariant": True})
        else:
            _emit({"invariant": False, "witness": {
                "left": [P.alphabet.names[g] for g in witness.left],
                "relator": format_word(witness.relator),
                "right": [P.alphabet.names[g] for g in witness.right],
                "value": ring.format(witness.value)}})
    elif ok:
        print("invariant")
    else:
        left = " ".join(P.alphabet.names[g] for g in witness.left) or "1"
        right = " ".join(P.alphabet.names[g] for g in witness.right) or "1"
        print("not invariant:"
              f" sandwich ({left}) * (relator {format_word(witness.relator)} - 1)"
              f" * ({right}) pairs to {ring.format(witness.value)}")
    return 0


def _cmd_depth(args, ring, P):
    Q = build_truncated_quotient(P, args.order, ring)
    w = parse_word(args.word, P.alphabet)
    report = dimension_depth(Q, w)
    if args.format == "json":
        _emit({"depth": report.json_value()})
    else:
        print(str(report))
    return 0


def _cmd_pullback(args, ring, P):
    names, mapping = _split_map(args.endo, P.alphabet)
    source = Alphabet(names)
    hom = GroupHom.from_mapping(source, mapping, target=P.alphabet)
    T = parse_tensor(args.tensor, P.alphabet, ring)
    order = args.order or T.weight + 1
    Q = build_truncated_quotient(P, order, ring)
    result = pullback(hom, T, Q)
    if args.format == "json":
        _emit(dict(gens=list(source.names), **tensor_to_json(result)))
    else:
        print(format_tensor(result))
    return 0


def _cmd_johnson(args, ring, P):
    endo = parse_endo(args.endo, P)
    order = args.order or 4
    level = johnson_level(P, endo, ring, order)
    stage = args.weight
    if stage is None and not level.is_lower_bound:
        stage = level.value
    doc = {"level": level.json_value()}
    if stage is not None and stage >= 1:
        report = johnson_tau(P, endo, stage, ring)
        doc["tau"] = {"stage": report.stage,
                      "rows": report.row_labels,
                      "cols": report.col_labels,
                      "matrix": [[ring.format(v) for v in row] for row in report.matrix]}
    if args.format == "json":
        _emit(doc)
    else:
        print(f"level: {level}")
        if "tau" in doc:
            print(f"tau at stage {doc['tau']['stage']} "
                  f"(columns: {', '.join(doc['tau']['cols']) or 'none'})")
            for label, row in zip(doc["tau"]["rows"], doc["tau"]["matrix"]):
                print(f"  {label}: [{', '.join(row)}]")
    return 0


def _cmd_oracle(args, ring, _P):
    with open(args.table, "r", encoding="utf-8") as fh:
        table = finite.FiniteGroupTable.from_json(json.load(fh))
    doc = {}
    if args.order:
        dims = finite.ideal_power_dims(table, ring, args.order)
        if ring.is_field:
            doc["dims"] = dims
        else:
            doc["dims"] = [{"rank": r, "divisors": list(d)} for r, d in dims]
    if args.word:
        alphabet = Alphabet(sorted(table.gens))
        w = parse_word(args.word, alphabet)
        doc["word_image"] = finite.word_image(table, w)
    if not doc:
        raise ValueError("oracle needs --order and/or --word")
    if args.format == "json":
        _emit(doc)
    else:
        for k, v in doc.items():
            print(f"{k}: {v}")
    return 0


_COMMANDS = {
    "magnus": (_cmd_magnus, {"word", "order"}, {"gens-or-presentation"}),
    "braid": (_cmd_braid, {"tensor", "word"}, {"gens-or-presentation"}),
    "pair": (_cmd_pair, {"tensor", "word"}, {"gens-or-presentation"}),
    "invariants": (_cmd_invariants, {"weight"}, {"gens-or-presentation"}),
    "check": (_cmd_check, {"tensor"}, {"gens-or-presentation"}),
    "depth": (_cmd_depth, {"word", "order"}, {"gens-or-presentation"}),
    "pullback": (_cmd_pullback, {"tensor", "endo"}, {"gens-or-presentation"}),
    "johnson": (_cmd_johnson, {"endo"}, {"gens-or-presentation"}),
    "oracle": (_cmd_oracle, {"table"}, set()),
}

_FLAGS = {
    "word": dict(help="word expression, e.g. '[x,y] x^2'"),
    "tensor": dict(help="tensor expression, e.g. 'x|y + z'"),
    "order": dict(type=int, help="truncation order N"),
    "weight": dict(type=int, help="weight bound (invariants) or tau stage (johnson)"),
    "endo": dict(help="generator map, e.g. 'x -> x, y -> x y x^-1'"),
    "table": dict(help="path to a finite group table JSON"),
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lb", description="letter-braiding invariants, exactly")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_fn, flags, _) in _COMMANDS.items():
        p = sub.add_parser(name)
        p.add_argument("--ring", default="z", help="z | q | fp:<p>")
        p.add_argument("--format", default="json", choices=["text", "json", "latex"])
        p.add_argument("--gens", help="inline free-group generators, e.g. 'x y'")
        p.add_argument("--presentation", help="path to a presentation file")
        for flag in ("word", "tensor", "order", "weight", "endo", "table"):
            if flag in flags or (name == "johnson" and flag in ("order", "weight")) \
                    or (name in ("pair", "pullback") and flag == "order") \
                    or (name == "oracle" and flag in ("order", "word")):
                p.add_argument(f"--{flag}", **_FLAGS[flag])
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        fn, required, context = _COMMANDS[args.command]
        ring = ring_from_flag(args.ring)
        for flag in required:
            if getattr(args, flag, None) is None:
                parser.error(f"--{flag} is required for '{args.command}'")
        P = _load_presentation(args, parser) if "gens-or-presentation" in context else None
        return fn(args, ring, P)
    except SystemExit as exc:  # argparse usage errors carry code 2
        return exc.code
    except ParseError as exc:
        print(f"lb: parse error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, ZeroDivisionError) as exc:
        print(f"lb: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
