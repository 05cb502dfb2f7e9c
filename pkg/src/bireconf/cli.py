"""Command-line front end.

Exit codes: 0 ok, 2 parse error, 3 cap exceeded, 4 precondition violated,
5 invalid sequence.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidSourceSequence, ReconfError
from .explorer import DEFAULT_CAP, enumerate_configs, reachability_classes, reachable
from .formats import (
    format_ids,
    read_certificate,
    read_instance,
    read_sequence,
    write_certificate,
    write_instance,
    write_sequence,
)
from .graph_core import read_graph
from .properties import MoveRule, parse_property, parse_rule
from .reductions import pad_clr, reduce_bbr_to_ccr, reduce_clr_to_bbr
from .suites import run_suite, selftest_suites
from .translate import lift_clique_sequence, project_biclique_sequence, verify_sequence

log = logging.getLogger("bireconf")


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_CAP
    strict: bool = True
    autopad: bool = False
    out_dir: Path = Path(".")

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be >= 1")


def _config(args) -> RunConfig:
    return RunConfig(
        cap=args.cap,
        strict=args.strict,
        autopad=getattr(args, "autopad", False),
        out_dir=Path(args.out_dir),
    )


def _stem(path: str) -> str:
    name = Path(path).name
    for suffix in (".yaml", ".yml", ".txt", ".seq", ".witness"):
        if name.endswith(suffix):
            return name[: -len(suffix)]
    return name


def cmd_solve(args) -> int:
    cfg = _config(args)
    inst = read_instance(args.instance)
    ok, witness = reachable(inst, cfg.cap)
    print("YES" if ok else "NO")
    if ok:
        out = Path(args.output) if args.output else cfg.out_dir / f"{_stem(args.instance)}.witness"
        out.parent.mkdir(parents=True, exist_ok=True)
        write_sequence(witness, out)
        log.info("witness (%d configs) written to %s", len(witness), out)
    return 0


def cmd_reduce(args) -> int:
    cfg = _config(args)
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    inst = read_instance(args.instance)
    stem = _stem(args.instance)
    if args.kind == "bbr2ccr":
        rule = parse_rule(args.rule) if args.rule else MoveRule.CS
        produced = reduce_bbr_to_ccr(inst, rule)
        out = cfg.out_dir / f"{stem}.ccr-{rule}.yaml"
        write_instance(produced, out)
        print(out)
        return 0
    source_path = Path(args.instance)
    if cfg.autopad:
        padded = pad_clr(inst)
        if padded.graph.n != inst.graph.n:
            source_path = cfg.out_dir / f"{stem}.padded.yaml"
            write_instance(padded, source_path)
            log.info("padded %d -> %d vertices", inst.graph.n, padded.graph.n)
        inst = padded
    cert = reduce_clr_to_bbr(inst)
    produced_path = cfg.out_dir / f"{stem}.bbr.yaml"
    cert_path = cfg.out_dir / f"{stem}.cert"
    write_instance(cert.produced, produced_path)
    write_certificate(
        cert,
        cert_path,
        os.path.relpath(source_path, cfg.out_dir),
        produced_path.name,
    )
    print(produced_path)
    print(cert_path)
    return 0


def cmd_translate(args) -> int:
    cfg = _config(args)
    cert = read_certificate(args.certificate)
    seq = read_sequence(args.sequence)
    if args.direction == "lift":
        out_seq, trace = lift_clique_sequence(cert, seq)
        check_against = cert.produced
    else:
        out_seq, trace = project_biclique_sequence(cert, seq), None
        check_against = cert.source
    bad = verify_sequence(check_against, out_seq)
    if bad is not None:
        raise InvalidSourceSequence(f"translated sequence failed verification: {bad.reason}", bad.index)
    out = Path(args.output) if args.output else cfg.out_dir / f"{_stem(args.sequence)}.{args.direction}.seq"
    out.parent.mkdir(parents=True, exist_ok=True)
    write_sequence(out_seq, out)
    if trace is not None and args.trace:
        Path(args.trace).write_text(trace.format())
    print(out)
    return 0


def cmd_verify(args) -> int:
    inst = read_instance(args.instance)
    seq = read_sequence(args.sequence)
    bad = verify_sequence(inst, seq)
    if bad is None:
        print(f"OK ({len(seq)} configs, {len(seq) - 1} moves)")
        return 0
    print(f"INVALID at {bad}")
    return InvalidSourceSequence.exit_code


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    if args.instance:
        inst = read_instance(args.instance)
        g, spec, rule = inst.graph, inst.spec, inst.rule
    else:
        if not (args.graph and args.property):
            raise ReconfError("enumerate needs an instance file or --graph with --property")
        g, spec = read_graph(args.graph), parse_property(args.property)
        rule = parse_rule(args.rule or "tj")
    if args.classes:
        for i, cls in enumerate(reachability_classes(g, spec, rule, cfg.cap)):
            if i:
                print()
            for s in cls:
                print(format_ids(s))
    else:
        for s in enumerate_configs(g, spec, cfg.cap):
            print(format_ids(s))
    return 0


def cmd_selftest(args) -> int:
    cfg = _config(args)
    failed = False
    for name, thunk in selftest_suites(cfg.cap, full=args.full):
        res = run_suite(thunk)
        if res.skipped:
            res.name = name
            print(f"WARNING {res.summary()}")
            continue
        print(res.summary())
        for example in res.counterexamples:
            print(f"  counterexample: {example}")
        failed |= not res.ok
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="explorer state cap (default 2^22)")
    common.add_argument(
        "--strict", action="store_true", default=True,
        help="deterministic output (always on: the explorer is single-threaded)",
    )
    common.add_argument("--out-dir", default=".", help="directory for output files")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="bireconf",
        description="Clique, balanced-biclique and connected-components reconfiguration toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="decide reachability and write a shortest witness")
    p.add_argument("instance")
    p.add_argument("-o", "--output", help="witness file (default <out-dir>/<stem>.witness)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", parents=[common], help="clr2bbr or bbr2ccr instance reduction")
    p.add_argument("kind", choices=["clr2bbr", "bbr2ccr"])
    p.add_argument("instance")
    p.add_argument("--autopad", action="store_true", help="pad with isolated vertices before clr2bbr")
    p.add_argument("--rule", choices=[r.value for r in MoveRule], help="target rule for bbr2ccr (default cs)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("translate", parents=[common], help="lift a clique sequence or project a biclique sequence")
    p.add_argument("direction", choices=["lift", "project"])
    p.add_argument("certificate")
    p.add_argument("sequence")
    p.add_argument("-o", "--output")
    p.add_argument("--trace", help="write the per-step lift trace here")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("verify", parents=[common], help="check a sequence against an instance")
    p.add_argument("instance")
    p.add_argument("sequence")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", parents=[common], help="list all configurations (or reachability classes)")
    p.add_argument("instance", nargs="?")
    p.add_argument("--graph")
    p.add_argument("--property")
    p.add_argument("--rule", choices=[r.value for r in MoveRule])
    p.add_argument("--classes", action="store_true", help="group by reachability class, blank-line separated")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", parents=[common], help="run the exhaustive property suites")
    p.add_argument("--full", action="store_true", help="acceptance-scale families (slower)")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except ReconfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
