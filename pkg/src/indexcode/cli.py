"""Command-line front end.

Subcommands: classify, rate, bounds, oracle, construct, verify, reduce.
JSON output is deterministic (sorted keys, two-space indent, trailing
newline) so identical inputs give byte-identical bytes.

Exit codes: 0 success; 1 validation error (bad input file, invalid
instance or code, failed verification); 2 search budget exceeded;
3 no closed-form rule applies to the request.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

import jsonschema

from .builder import BuildRefused, construct
from .graphs import interaction_digraph, reduce_noncycle_edges
from .gf2 import BitMatrix
from .instance import (
    InstanceValidationError,
    ValidatedInstance,
    build_digraph,
    load_instance,
    part_key_str,
    partition,
    validate,
)
from .oracle import DEFAULT_ORACLE_MESSAGE_LIMIT, SenderCode, oracle_rate
from .rates import (
    NoApplicableRule,
    RateReport,
    bounds,
    classify,
    multi_rate,
    two_sender_report,
)
from .solver import DEFAULT_COMPONENT_LIMIT, SearchBudgetExceeded
from .verify import verify_exhaustive, verify_linear

__all__ = ["main", "code_from_dict", "code_to_dict", "CODE_SCHEMA"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2
EXIT_NO_RULE = 3

CODE_SCHEMA = {
    "type": "object",
    "required": ["blocks"],
    "properties": {
        "blocks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["sender", "rows"],
                "additionalProperties": False,
                "properties": {
                    "sender": {"type": "integer", "minimum": 1},
                    "rows": {
                        "type": "array",
                        "items": {"type": "string", "pattern": "^[01]+$"},
                    },
                },
            },
        }
    },
}


def code_to_dict(code: SenderCode) -> dict:
    return {
        "blocks": [
            {"sender": sender, "rows": mat.row_strings()}
            for sender, mat in code.blocks
        ]
    }


def code_from_dict(doc: dict, cols: int) -> SenderCode:
    """Parse a code file; extra top-level keys are tolerated so that
    construct/oracle output feeds straight back into verify."""
    try:
        jsonschema.validate(doc, CODE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InstanceValidationError([f"code schema: {exc.message}"]) from exc
    blocks = []
    for entry in doc["blocks"]:
        rows = entry["rows"]
        for row in rows:
            if len(row) != cols:
                raise InstanceValidationError(
                    [f"code row {row!r} has {len(row)} columns, expected {cols}"]
                )
        if rows:
            blocks.append((entry["sender"], BitMatrix.from_rows(rows)))
    return SenderCode(blocks=tuple(blocks))


def _num(x):
    if x is None:
        return None
    f = Fraction(x)
    return int(f) if f.denominator == 1 else str(f)


def _expr(mask: int) -> str:
    terms = [f"x{j + 1}" for j in range(mask.bit_length()) if mask >> j & 1]
    return "+".join(terms) if terms else "0"


def _expressions(code: SenderCode) -> list[dict]:
    return [
        {"sender": sender, "rows": [_expr(m) for m in mat.to_masks()]}
        for sender, mat in code.blocks
    ]


def _emit(payload, fmt: str, render_text) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_text(payload) + "\n")


def _fail(message: str, fmt: str, details: Optional[list] = None) -> None:
    if fmt == "json":
        doc = {"error": message}
        if details:
            doc["details"] = details
        sys.stderr.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"error: {message}\n")
        for line in details or ():
            sys.stderr.write(f"  {line}\n")


def _load(path: str) -> ValidatedInstance:
    return validate(load_instance(path))


def _edge_sort_key(edge):
    (a, b) = edge
    return (len(a), a, len(b), b)


def _classify_payload(validated: ValidatedInstance) -> dict:
    d = build_digraph(validated)
    parts = partition(validated)
    h = interaction_digraph(d, parts)
    label = None
    if validated.instance.num_senders <= 2:
        label = classify(h)
    edges = [
        {
            "from": part_key_str(a),
            "to": part_key_str(b),
            "fully_participated": h.is_fully_participated(a, b),
        }
        for (a, b) in sorted(h.edges, key=_edge_sort_key)
    ]
    return {
        "case": str(label.case) if label else None,
        "all_interactions_fully_participated": all(
            h.is_fully_participated(a, b) for (a, b) in h.edges
        ),
        "required_interactions_fully_participated": (
            label.required_interactions_fully_participated if label else None
        ),
        "missing_required": [
            [part_key_str(a), part_key_str(b)] for (a, b) in label.missing_required
        ]
        if label
        else [],
        "parts": {
            part_key_str(k): sorted(parts.part(k)) for k in parts.nonempty_keys()
        },
        "edges": edges,
        "warnings": list(validated.warnings),
    }


def _classify_text(doc: dict) -> str:
    lines = []
    for key, msgs in doc["parts"].items():
        lines.append(f"part {key}: messages {', '.join(map(str, msgs))}")
    lines.append("interactions:")
    for e in doc["edges"]:
        tag = "fully participated" if e["fully_participated"] else "partial"
        lines.append(f"  {e['from']} -> {e['to']} ({tag})")
    if not doc["edges"]:
        lines.append("  (none)")
    lines.append(f"case: {doc['case'] or 'n/a (more than two senders)'}")
    if doc["missing_required"]:
        missing = ", ".join(f"{a} -> {b}" for a, b in doc["missing_required"])
        lines.append(f"missing required interactions: {missing}")
    lines.extend(f"warning: {w}" for w in doc["warnings"])
    return "\n".join(lines)


def _rate_payload(report: RateReport) -> dict:
    label = report.case
    return {
        "rule": report.rule,
        "case": str(label.case) if label else None,
        "all_interactions_fully_participated": (
            label.all_interactions_fully_participated if label else None
        ),
        "required_interactions_fully_participated": (
            label.required_interactions_fully_participated if label else None
        ),
        "missing_required": [
            [part_key_str(a), part_key_str(b)] for (a, b) in label.missing_required
        ]
        if label
        else [],
        "sub_rates": {part_key_str(k): _num(v) for k, v in report.sub_rates.items()},
        "formula_rate": _num(report.formula_rate),
        "exact": report.exact,
        "upper_bound": _num(report.upper_bound),
        "lower_bounds": [
            {"name": b.name, "value": _num(b.value), "is_max": b.is_max}
            for b in report.lower_bounds
        ],
        "oracle_rate": report.oracle_rate,
        "consistent": report.consistent,
        "warnings": list(report.warnings),
    }


def _rate_text(doc: dict) -> str:
    lines = [f"rule: {doc['rule']}"]
    if doc["case"]:
        lines.append(f"case: {doc['case']}")
    subs = ", ".join(f"{k}: {v}" for k, v in sorted(doc["sub_rates"].items()))
    lines.append(f"sub-rates: {subs}")
    if doc["formula_rate"] is None:
        lines.append("formula rate: none (no closed-form rule applies)")
    else:
        tag = "exact" if doc["exact"] else "lower bound (partial participation)"
        lines.append(f"formula rate: {doc['formula_rate']} ({tag})")
    lines.append(f"upper bound: {doc['upper_bound']}")
    for b in doc["lower_bounds"]:
        star = " *" if b["is_max"] else ""
        lines.append(f"lower bound {b['name']}: {b['value']}{star}")
    if doc["oracle_rate"] is not None:
        ok = "consistent" if doc["consistent"] else "INCONSISTENT"
        lines.append(f"oracle rate: {doc['oracle_rate']} ({ok})")
    if doc["missing_required"]:
        missing = ", ".join(f"{a} -> {b}" for a, b in doc["missing_required"])
        lines.append(f"missing required interactions: {missing}")
    lines.extend(f"warning: {w}" for w in doc["warnings"])
    return "\n".join(lines)


def _code_text(doc: dict) -> str:
    lines = []
    for block in doc["expressions"]:
        for row in block["rows"]:
            lines.append(f"S{block['sender']}: {row}")
    return "\n".join(lines) if lines else "(empty code)"


def _cmd_classify(args) -> int:
    validated = _load(args.instance)
    _emit(_classify_payload(validated), args.format, _classify_text)
    return EXIT_OK


def _cmd_rate(args) -> int:
    validated = _load(args.instance)
    kwargs = dict(
        check_oracle=args.check_oracle,
        limit_m=args.limit_m,
        component_limit=args.solver_limit,
    )
    if validated.instance.num_senders == 2:
        report = two_sender_report(validated, **kwargs)
    else:
        report = multi_rate(validated, **kwargs)
    _emit(_rate_payload(report), args.format, _rate_text)
    return EXIT_OK if report.formula_rate is not None else EXIT_NO_RULE


def _cmd_bounds(args) -> int:
    validated = _load(args.instance)
    payload = {
        "lower_bounds": [
            {"name": b.name, "value": _num(b.value), "is_max": b.is_max}
            for b in bounds(validated, component_limit=args.solver_limit)
        ],
        "warnings": list(validated.warnings),
    }

    def text(doc):
        lines = []
        for b in doc["lower_bounds"]:
            star = " *" if b["is_max"] else ""
            lines.append(f"{b['name']}: {b['value']}{star}")
        lines.extend(f"warning: {w}" for w in doc["warnings"])
        return "\n".join(lines)

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    validated = _load(args.instance)
    rate, witness = oracle_rate(validated, limit_m=args.limit_m)
    payload = {
        "oracle_rate": rate,
        "blocks": code_to_dict(witness)["blocks"],
        "expressions": _expressions(witness),
        "warnings": list(validated.warnings),
    }

    def text(doc):
        return "\n".join([f"oracle rate: {doc['oracle_rate']}", _code_text(doc)])

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_construct(args) -> int:
    validated = _load(args.instance)
    code, how, rate = construct(
        validated,
        component_limit=args.solver_limit,
        oracle_limit_m=args.limit_m,
    )
    payload = {
        "blocks": code_to_dict(code)["blocks"],
        "expressions": _expressions(code),
        "length": rate,
        "obtained_by": how,
        "warnings": list(validated.warnings),
    }

    def text(doc):
        return "\n".join(
            [
                f"length: {doc['length']} (obtained by {doc['obtained_by']})",
                _code_text(doc),
            ]
        )

    _emit(payload, args.format, text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    validated = _load(args.instance)
    with open(args.code, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceValidationError([f"invalid code JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise InstanceValidationError(["code file must hold a JSON object"])
    cols = validated.instance.num_messages * validated.instance.t
    code = code_from_dict(doc, cols)
    checker = verify_linear if args.method == "linear" else verify_exhaustive
    report = checker(code, validated)
    payload = {
        "ok": report.ok,
        "method": report.method,
        "failures": [
            {"receiver": r, "reason": reason} for r, reason in report.failures
        ],
    }

    def text(doc):
        if doc["ok"]:
            return f"ok ({doc['method']})"
        lines = [f"FAILED ({doc['method']})"]
        for f in doc["failures"]:
            lines.append(f"  receiver {f['receiver']}: {f['reason']}")
        return "\n".join(lines)

    _emit(payload, args.format, text)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _cmd_reduce(args) -> int:
    validated = _load(args.instance)
    d = build_digraph(validated)
    reduced = reduce_noncycle_edges(d)
    removed = sorted(d.edges - reduced.edges)
    payload = {
        "num_messages": validated.instance.num_messages,
        "kept_edges": [list(e) for e in sorted(reduced.edges)],
        "removed_edges": [list(e) for e in removed],
        "warnings": list(validated.warnings),
    }

    def text(doc):
        lines = [f"messages: {doc['num_messages']}"]
        lines.append("kept edges (on some cycle):")
        for i, j in doc["kept_edges"]:
            lines.append(f"  {i} -> {j}")
        lines.append("removed edges (on no cycle):")
        for i, j in doc["removed_edges"]:
            lines.append(f"  {i} -> {j}")
        return "\n".join(lines)

    _emit(payload, args.format, text)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; keep 2 reserved for
    # budget overruns and treat bad usage as a validation error.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "text"), default="json",
        help="output format (default json)",
    )
    common.add_argument(
        "--seed", type=int, default=None,
        help="seed for random instance generation in the test harness; "
        "accepted here for interface parity and otherwise unused",
    )
    parser = _Parser(prog="indexcode", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, help_text, *, code_arg=False, oracle=False, solver=False,
            check=False, method=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("instance", help="instance JSON file")
        if code_arg:
            p.add_argument("code", help="code JSON file ({\"blocks\": [...]})")
        if check:
            p.add_argument(
                "--check-oracle", action="store_true",
                help="cross-check the formula against the brute-force oracle",
            )
        if oracle:
            p.add_argument(
                "--limit-m", type=int, default=DEFAULT_ORACLE_MESSAGE_LIMIT,
                help="largest message count the oracle will attempt",
            )
        if solver:
            p.add_argument(
                "--solver-limit", type=int, default=DEFAULT_COMPONENT_LIMIT,
                help="largest strongly connected component the minrank solver "
                "will search",
            )
        if method:
            p.add_argument(
                "--method", choices=("linear", "exhaustive"), default="linear",
                help="verification method (default linear)",
            )
        p.set_defaults(func=func)
        return p

    add("classify", _cmd_classify,
        "print the interaction digraph and its case label")
    add("rate", _cmd_rate,
        "print sub-rates, the closed-form rate, and all bounds",
        oracle=True, solver=True, check=True)
    add("bounds", _cmd_bounds, "print every applicable lower bound",
        solver=True)
    add("oracle", _cmd_oracle,
        "print the exhaustive-search optimum and a witness code",
        oracle=True)
    add("construct", _cmd_construct, "build an optimal code",
        oracle=True, solver=True)
    add("verify", _cmd_verify, "check a code file against an instance",
        code_arg=True, method=True)
    add("reduce", _cmd_reduce,
        "print the side-information digraph with non-cycle edges removed")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "json")
    for limit_name in ("limit_m", "solver_limit"):
        value = getattr(args, limit_name, None)
        if value is not None and value <= 0:
            _fail(f"--{limit_name.replace('_', '-')} must be positive", fmt)
            return EXIT_VALIDATION
    try:
        return args.func(args)
    except InstanceValidationError as exc:
        _fail("invalid input", fmt, details=exc.errors)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        _fail(f"cannot read {exc.filename}", fmt)
        return EXIT_VALIDATION
    except SearchBudgetExceeded as exc:
        _fail(str(exc), fmt)
        return EXIT_BUDGET
    except (NoApplicableRule, BuildRefused) as exc:
        _fail(str(exc), fmt)
        return EXIT_NO_RULE
    except ValueError as exc:
        _fail(str(exc), fmt)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
