"""Command line interface.

    orbit-tiebreak orbits example:condorcet
    orbit-tiebreak tiebreak input.json --default-completion --format json

Exit codes: 0 success, 1 a verify check failed, 2 invalid input,
3 a resource cap was hit, 64 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import oracle
from .checks import verify_input
from .corpus import UnknownExample, builtin_example
from .orders import indifference_partition
from .perm import DEFAULT_CLOSURE_CAP, ResourceCapError, orbits_of
from .serialize import (
    SCHEMA,
    completion_to_doc,
    dump_input,
    dumps,
    input_to_doc,
    parse_completion,
    parse_input,
    parse_ranking,
    partition_to_doc,
    permutation_to_doc,
    ranking_to_doc,
)
from .stabilizer import Input, ValidationError, joint_stabilizer, symmetric_witness
from .tiebreak import (
    CompletionError,
    comparison_provenance,
    count_consistent_rules,
    default_completion,
    extract_completion,
    lift,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_INVALID, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


@dataclass
class RunReport:
    command: str
    inp: Input | None = None
    sections: dict[str, Any] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)
    ok: bool = True

    def to_doc(self) -> dict:
        doc: dict[str, Any] = {"schema": SCHEMA, "command": self.command}
        if self.inp is not None:
            doc["input"] = input_to_doc(self.inp)
        doc.update(self.sections)
        return doc


def _env_int(name: str, default: int) -> int:
    return int(os.environ.get(name, default))


def load_input(ref: str) -> Input:
    if ref.startswith("example:"):
        return builtin_example(ref[len("example:"):])
    data = sys.stdin.buffer.read() if ref == "-" else Path(ref).read_bytes()
    return parse_input(data)


def _fmt_partition(p, labels) -> str:
    return "{" + ", ".join("{" + ",".join(labels[x] for x in b) + "}" for b in p.blocks) + "}"


def _structure(inp: Input, args, report: RunReport):
    group = joint_stabilizer(inp, args.node_cap)
    omega = orbits_of(group)
    labels = inp.labels
    wit = symmetric_witness(inp, group)
    part = indifference_partition(inp.standings)
    report.sections.update({
        "stabilizer": {
            "generators": [permutation_to_doc(g, labels) for g in group.generators],
            "order": group.order(args.closure_cap),
        },
        "orbit_partition": partition_to_doc(omega, labels),
        "indifference_partition": partition_to_doc(part, labels),
        "symmetric_witness": None if wit is None else {
            "x": labels[wit.x], "y": labels[wit.y], "sigma": permutation_to_doc(wit.sigma, labels),
        },
        "counts": {"consistent_rules": count_consistent_rules(inp, omega), "orbit_blocks": len(omega.blocks)},
    })
    return group, omega, wit


def cmd_orbits(inp, args, report):
    group, omega, wit = _structure(inp, args, report)
    labels = inp.labels
    report.lines.append(f"orbit partition: {_fmt_partition(omega, labels)}")
    report.lines.append(f"standings classes: {_fmt_partition(indifference_partition(inp.standings), labels)}")
    if wit is None:
        report.lines.append("symmetric witness: none (every orbit is a singleton)")
    else:
        report.lines.append(f"symmetric witness: {wit.sigma.format(labels)} sends {labels[wit.x]} to {labels[wit.y]}")


def cmd_stabilizer(inp, args, report):
    group, _, _ = _structure(inp, args, report)
    labels = inp.labels
    gens = ", ".join(g.format(labels) for g in group.generators) or "(identity only)"
    report.lines.append(f"generators: {gens}")
    report.lines.append(f"order: {group.order(args.closure_cap)}")


def cmd_count(inp, args, report):
    _, omega, _ = _structure(inp, args, report)
    report.lines.append(str(count_consistent_rules(inp, omega)))
    if args.oracle:
        brute = oracle.brute_consistent_rule_count(inp, args.oracle_cap)
        report.sections["counts"]["brute_force"] = brute
        report.lines.append(f"brute force: {brute}")
        report.ok = brute == count_consistent_rules(inp, omega)


def cmd_tiebreak(inp, args, report):
    _, omega, _ = _structure(inp, args, report)
    labels = inp.labels
    if args.completion:
        comp = parse_completion(Path(args.completion).read_bytes(), labels)
    elif args.default_completion:
        comp = default_completion(inp, omega)
    else:
        raise UsageError("tiebreak needs --completion FILE or --default-completion")
    order = lift(comp, inp, omega)
    prov = comparison_provenance(order, inp, omega)
    report.sections["completion"] = completion_to_doc(comp, labels)
    report.sections["ranking"] = ranking_to_doc(order, labels)
    report.sections["provenance"] = [{"upper": labels[x], "lower": labels[y], "tag": tag} for x, y, tag in prov]
    report.lines.append("ranking: " + " > ".join(labels[x] for x in order.ranking))
    arbitrary = [f"{labels[x]}>{labels[y]} ({tag})" for x, y, tag in prov if tag != "standings"]
    forced = sum(1 for *_, tag in prov if tag == "standings")
    report.lines.append(f"{forced} comparisons forced by the standings")
    if arbitrary:
        source = "alphabetical default" if args.default_completion else "supplied completion"
        report.lines.append(f"notice: {len(arbitrary)} comparisons decided by the {source}, not by the data:")
        report.lines.extend("  " + a for a in arbitrary)


def cmd_extract(inp, args, report):
    _, omega, _ = _structure(inp, args, report)
    order = parse_ranking(Path(args.ranking).read_bytes(), inp.labels)
    comp = extract_completion(order, inp, omega)
    report.sections["completion"] = completion_to_doc(comp, inp.labels)
    report.lines.append(dumps(completion_to_doc(comp, inp.labels)).rstrip())


def cmd_verify(inp, args, report):
    results = verify_input(
        inp,
        use_oracle=args.oracle,
        seed=args.seed,
        trials=args.trials,
        node_cap=args.node_cap,
        closure_cap=args.closure_cap,
        oracle_cap=args.oracle_cap,
    )
    report.sections["checks"] = [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]
    for r in results:
        report.lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f": {r.detail}" if r.detail else ""))
    report.ok = all(r.passed for r in results)


COMMANDS = {
    "orbits": cmd_orbits,
    "stabilizer": cmd_stabilizer,
    "count": cmd_count,
    "tiebreak": cmd_tiebreak,
    "extract": cmd_extract,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--node-cap", type=int, default=_env_int("ORBIT_TIEBREAK_NODE_CAP", 10**6),
                        help="stabilizer search node limit")
    common.add_argument("--closure-cap", type=int, default=_env_int("ORBIT_TIEBREAK_CLOSURE_CAP", DEFAULT_CLOSURE_CAP),
                        help="group closure element limit")
    common.add_argument("--oracle-cap", type=int, default=_env_int("ORBIT_TIEBREAK_ORACLE_CAP", oracle.DEFAULT_ORACLE_CAP),
                        help="largest n for brute-force checks")

    parser = _Parser(prog="orbit-tiebreak", description="Forced and arbitrary parts of a tie-break.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "orbits": "orbit partition and a symmetric witness",
        "stabilizer": "generators of the joint stabilizer",
        "count": "number of partition-consistent strict rankings",
        "tiebreak": "lift a completion to a strict ranking",
        "extract": "read the completion off a strict ranking",
        "verify": "run the invariant suite on the input",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("input", help="input file, '-' for stdin, or example:NAME")
        if name == "tiebreak":
            g = p.add_mutually_exclusive_group()
            g.add_argument("--completion", metavar="FILE")
            g.add_argument("--default-completion", action="store_true")
        if name == "extract":
            p.add_argument("--ranking", metavar="FILE", required=True)
        if name in ("verify", "count"):
            p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
        if name == "verify":
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--trials", type=int, default=20)
    p = sub.add_parser("example", parents=[common], help="print a built-in input document")
    p.add_argument("name")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = RunReport(args.command)
    try:
        if args.command == "example":
            inp = builtin_example(args.name)
            report.inp = inp
            report.lines.append(dump_input(inp).rstrip())
        else:
            inp = load_input(args.input)
            report.inp = inp
            COMMANDS[args.command](inp, args, report)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"orbit-tiebreak: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    except UnknownExample as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE, None
    except (ValidationError, CompletionError) as exc:
        print("invalid input:", file=sys.stderr)
        for msg in getattr(exc, "violations", [str(exc)]):
            print(f"  {msg}", file=sys.stderr)
        return EXIT_INVALID, None
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID, None
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP, None

    if args.format == "json":
        if args.command == "example":
            sys.stdout.write(dump_input(report.inp))
        else:
            sys.stdout.write(dumps(report.to_doc()))
    else:
        print("\n".join(report.lines))
    return (EXIT_OK if report.ok else EXIT_CHECK_FAILED), report


def main(argv: list[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
