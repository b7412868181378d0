"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 property or verification
failure, 3 negative box-conjecture finding, 4 internal guard tripped.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .commutator_oracle import DEFAULT_SAMPLES, DEFAULT_SEED, generic_commuting_type, verify_q
from .errors import CommJordanError, InternalGuardError, PartitionParseError, ResourceLimitError
from .exactlinalg import DEFAULT_PRIME, FieldSpec
from .fibers import DEFAULT_MAX_N, check_box, enumerate_partitions, reports_to_json
from .oblak import check_properties, oblak_process, q_map
from .partitions import Partition, parse_partition
from .poset import build_dp, to_dot, to_json, u_chain

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PROPERTY = 2
EXIT_CONJECTURE = 3
EXIT_INTERNAL = 4

SCHEMA = "commjordan.cli/1"


@dataclass(frozen=True)
class RunConfig:
    prime: int = DEFAULT_PRIME
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    max_n: int = DEFAULT_MAX_N
    output: str = "text"

    def field_for(self, n: int) -> FieldSpec:
        """Validated prime field for oracle work on n x n matrices."""
        field = FieldSpec(self.prime)
        field.check_characteristic(n)
        if self.samples < 1:
            raise CommJordanError("--samples must be at least 1")
        return field


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw, 0)
    except ValueError:
        raise SystemExit(f"commjordan: error: {name}={raw!r} is not an integer") from None


def _partition_arg(text: str) -> Partition:
    try:
        return parse_partition(text)
    except PartitionParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(doc: dict) -> None:
    print(json.dumps({"schema": SCHEMA, **doc}, sort_keys=True))


def cmd_q(args, cfg: RunConfig) -> int:
    Q = q_map(args.partition)
    if cfg.output == "json":
        _emit({"command": "q", "partition": list(args.partition), "q": list(Q)})
    else:
        print(Q.to_text())
    return EXIT_OK


def cmd_trace(args, cfg: RunConfig) -> int:
    trace = oblak_process(args.partition)
    if cfg.output == "json":
        _emit({"command": "trace", **trace.to_dict()})
    else:
        print(trace.narrative())
    return EXIT_OK


def cmd_poset(args, cfg: RunConfig) -> int:
    D = build_dp(args.partition)
    chain = u_chain(args.partition, args.highlight) if args.highlight else None
    if cfg.output == "json":
        print(to_json(D, chain))
    else:
        sys.stdout.write(to_dot(D, chain))
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    failures = []
    partitions = enumerate_partitions(args.n, cfg.max_n)
    for P in partitions:
        failures.extend(check_properties(P, ties=not args.no_ties))
    if cfg.output == "json":
        _emit({"command": "verify", "n": args.n, "checked": len(partitions), "failures": failures})
    else:
        for line in failures:
            print(f"FAIL {line}")
        status = "pass" if not failures else f"{len(failures)} failures"
        print(f"n={args.n}: {len(partitions)} partitions checked, {status}")
    return EXIT_PROPERTY if failures else EXIT_OK


def cmd_oracle(args, cfg: RunConfig) -> int:
    P = args.partition
    field = cfg.field_for(P.n)
    report = verify_q(P, field, cfg.samples, cfg.seed, escalate=args.escalate)
    if cfg.output == "json":
        _emit({"command": "oracle", **report.to_dict()})
    else:
        print(f"P      = {P}")
        print(f"oblak  = {report.oblak}")
        print(f"oracle = {report.oracle}  ({len(report.samples)} samples over {field})")
        for seed, t in report.samples:
            print(f"  seed {seed}: {t}")
        for esc in report.escalations:
            print(f"  escalated: {esc}")
        for seed, t in report.undominated:
            print(f"  NOT DOMINATED seed {seed}: {t}")
        print("agree" if report.ok else "DISAGREE")
    return EXIT_OK if report.ok else EXIT_PROPERTY


def cmd_box(args, cfg: RunConfig) -> int:
    qfunc = q_map
    if args.oracle:
        field = cfg.field_for(args.n)
        qfunc = lambda P: generic_commuting_type(P, field, cfg.samples, cfg.seed)  # noqa: E731
    reports = check_box(args.n, cfg.max_n, qfunc)
    if cfg.output == "json":
        print(reports_to_json(args.n, reports))
    else:
        print(f"{'Q':<20} {'dims':<16} {'pred':>5} {'obs':>5}  status")
        for r in reports:
            status = "pass" if r.ok else "FAIL"
            print(f"{r.q.to_text():<20} {'x'.join(map(str, r.dims)):<16} {r.predicted:>5} {len(r.fiber):>5}  {status}")
            if not r.ok:
                for P in r.fiber:
                    print(f"    {P.to_text()}  ({len(P)} parts)")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_CONJECTURE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json", help="machine-readable output")
    fmt.add_argument("--dot", dest="output", action="store_const", const="dot", help="DOT output (poset only)")
    common.add_argument("--prime", type=int, default=None, help=f"field modulus (default {DEFAULT_PRIME}, env COMMJORDAN_PRIME)")
    common.add_argument("--samples", type=int, default=None, help=f"oracle samples (default {DEFAULT_SAMPLES}, env COMMJORDAN_SAMPLES)")
    common.add_argument("--seed", type=lambda s: int(s, 0), default=None, help=f"master seed (default {DEFAULT_SEED:#x}, env COMMJORDAN_SEED)")
    common.add_argument("--max-n", type=int, default=None, help=f"enumeration bound (default {DEFAULT_MAX_N}, env COMMJORDAN_MAX_N)")

    parser = _Parser(prog="commjordan", description="Generic commuting Jordan types via the Oblak process.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("q", parents=[common], help="print Q(P)")
    p.add_argument("partition", type=_partition_arg)
    p.set_defaults(func=cmd_q)

    p = sub.add_parser("trace", parents=[common], help="step-by-step Oblak process")
    p.add_argument("partition", type=_partition_arg)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("poset", parents=[common], help="D_P as DOT (default) or JSON")
    p.add_argument("partition", type=_partition_arg)
    p.add_argument("--highlight", type=int, default=None, metavar="P", help="box the U-chain U_P(P)")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("verify", parents=[common], help="theorem suite over all partitions of n")
    p.add_argument("n", type=int)
    p.add_argument("--no-ties", action="store_true", help="skip exhaustive tie exploration")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", parents=[common], help="compare Q(P) with the sampling oracle")
    p.add_argument("partition", type=_partition_arg)
    p.add_argument("--escalate", action="store_true", help="retry disagreements with more samples and a larger prime")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("box", parents=[common], help="box conjecture check for all stable Q of n")
    p.add_argument("n", type=int)
    p.add_argument("--oracle", action="store_true", help="compute fibers through the sampling oracle")
    p.set_defaults(func=cmd_box)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(
        prime=args.prime if args.prime is not None else _env_int("COMMJORDAN_PRIME", DEFAULT_PRIME),
        samples=args.samples if args.samples is not None else _env_int("COMMJORDAN_SAMPLES", DEFAULT_SAMPLES),
        seed=args.seed if args.seed is not None else _env_int("COMMJORDAN_SEED", DEFAULT_SEED),
        max_n=args.max_n if args.max_n is not None else _env_int("COMMJORDAN_MAX_N", DEFAULT_MAX_N),
        output=args.output or "text",
    )
    if cfg.output == "dot" and args.command != "poset":
        parser.error("--dot applies to the poset command only")
    if getattr(args, "partition", None) is not None and not args.partition:
        parser.error("partition must be nonempty")
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("n must be positive")
    try:
        return args.func(args, cfg)
    except InternalGuardError as exc:
        print(f"commjordan: internal guard tripped: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (CommJordanError, ResourceLimitError) as exc:
        print(f"commjordan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
