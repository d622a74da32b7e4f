"""Command-line front end: graph files, an operation script DSL, reports.

Graph text format::

    # comment
    graph <n>
    edge <u> <v>      # 0-based; u == v declares a self-loop

Repeated ``edge`` lines toggle (XOR semantics): declaring the same edge
twice removes it again, mirroring edge complementation.  This is
deliberate and means a graph file is a list of complementations applied
to the empty graph.

Script DSL, one command per line::

    op cz u v | op cnot a b | op fx a b | op fxw a b | op x|y|z v
    op localcomp v | op iac {0,1} {2} | op iec {0,1,2} | op addvertex
    op delete v blind|corrected
    assert verify
    measure euler|odd
    compare <graphfile>
    automorphism (0 1)(2 3)
    vcompare a b
    readout

Exit codes: 0 success, 2 parse error, 3 runtime precondition error,
4 resource exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import __version__
from .gf2 import ShapeError
from .graphmodel import Graph, GraphError
from .graphstate import GraphRegister, PreconditionError
from .protocols import (
    TrialRecord,
    automorphism_test,
    degree_parity_test,
    equality_test,
    vertex_compare,
)
from .readout import CopyFactory, ResourceExhausted, readout
from .tableau import GateError

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_RUNTIME = 3
EXIT_RESOURCE = 4


class ParseError(ValueError):
    """Malformed graph or script input; carries file and line."""

    def __init__(self, filename: str, line: int, message: str):
        super().__init__(f"{filename}:{line}: {message}")
        self.filename = filename
        self.line = line


class ScriptRuntimeError(RuntimeError):
    """A script command failed its runtime precondition."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# -- graph text format ------------------------------------------------


def parse_graph(text: str, filename: str = "<graph>") -> Graph:
    n = None
    graph = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if tokens[0] == "graph":
            if graph is not None:
                raise ParseError(filename, lineno, "duplicate graph header")
            if len(tokens) != 2:
                raise ParseError(filename, lineno, "expected: graph <n>")
            try:
                n = int(tokens[1])
            except ValueError:
                raise ParseError(filename, lineno, f"bad vertex count {tokens[1]!r}")
            if n < 0:
                raise ParseError(filename, lineno, "negative vertex count")
            graph = Graph.empty(n)
        elif tokens[0] == "edge":
            if graph is None:
                raise ParseError(filename, lineno, "edge before graph header")
            if len(tokens) != 3:
                raise ParseError(filename, lineno, "expected: edge <u> <v>")
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError(filename, lineno, "edge endpoints must be integers")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(
                    filename, lineno, f"edge ({u},{v}) out of range for n={n}"
                )
            graph.toggle_edge(u, v)
        else:
            raise ParseError(filename, lineno, f"unknown directive {tokens[0]!r}")
    if graph is None:
        raise ParseError(filename, 1, "missing 'graph <n>' header")
    return graph


def serialize_graph(g: Graph) -> str:
    lines = [f"graph {g.n}"]
    for u, v in g.edges():
        lines.append(f"edge {u} {v}")
    return "\n".join(lines) + "\n"


# -- script DSL -------------------------------------------------------


@dataclass
class Command:
    line: int
    kind: str
    args: tuple


_OP_ARITY = {
    "cz": 2,
    "cnot": 2,
    "fx": 2,
    "fxw": 2,
    "x": 1,
    "y": 1,
    "z": 1,
    "localcomp": 1,
}


def _parse_set(token: str, filename: str, lineno: int) -> Tuple[int, ...]:
    if not (token.startswith("{") and token.endswith("}")):
        raise ParseError(filename, lineno, f"malformed set {token!r}")
    inner = token[1:-1].strip()
    if not inner:
        return ()
    try:
        return tuple(int(x) for x in inner.split(","))
    except ValueError:
        raise ParseError(filename, lineno, f"malformed set {token!r}")


def _parse_cycles(text: str, filename: str, lineno: int) -> List[Tuple[int, ...]]:
    if text.count("(") != text.count(")") or not text.startswith("("):
        raise ParseError(filename, lineno, f"malformed permutation {text!r}")
    cycles = []
    for chunk in text.replace(")(", ")|(").split("|"):
        chunk = chunk.strip()
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ParseError(filename, lineno, f"malformed cycle {chunk!r}")
        try:
            cycles.append(tuple(int(x) for x in chunk[1:-1].split()))
        except ValueError:
            raise ParseError(filename, lineno, f"malformed cycle {chunk!r}")
    return cycles


def parse_script(text: str, filename: str = "<script>", n: Optional[int] = None):
    """Parse the DSL; vertex references are checked against the running
    vertex count when a starting size is supplied."""
    commands: List[Command] = []
    size = n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        head = tokens[0]

        def fail(msg: str):
            raise ParseError(filename, lineno, msg)

        def check_vertices(*vs: int):
            if size is None:
                return
            for v in vs:
                if not 0 <= v < size:
                    fail(f"vertex {v} out of range for current size {size}")

        if head == "op":
            if len(tokens) < 2:
                fail("missing operation name")
            op = tokens[1]
            if op in _OP_ARITY:
                arity = _OP_ARITY[op]
                if len(tokens) != 2 + arity:
                    fail(f"op {op} takes {arity} vertex argument(s)")
                try:
                    vs = tuple(int(t) for t in tokens[2:])
                except ValueError:
                    fail(f"op {op}: vertex arguments must be integers")
                check_vertices(*vs)
                commands.append(Command(lineno, op, vs))
            elif op == "iac":
                if len(tokens) != 4:
                    fail("op iac takes two sets")
                s1 = _parse_set(tokens[2], filename, lineno)
                s2 = _parse_set(tokens[3], filename, lineno)
                check_vertices(*s1, *s2)
                commands.append(Command(lineno, "iac", (s1, s2)))
            elif op == "iec":
                if len(tokens) != 3:
                    fail("op iec takes one set")
                s = _parse_set(tokens[2], filename, lineno)
                check_vertices(*s)
                commands.append(Command(lineno, "iec", (s,)))
            elif op == "addvertex":
                if len(tokens) != 2:
                    fail("op addvertex takes no arguments")
                commands.append(Command(lineno, "addvertex", ()))
                if size is not None:
                    size += 1
            elif op == "delete":
                if len(tokens) != 4 or tokens[3] not in ("blind", "corrected"):
                    fail("expected: op delete <v> blind|corrected")
                try:
                    v = int(tokens[2])
                except ValueError:
                    fail("op delete: vertex must be an integer")
                check_vertices(v)
                commands.append(Command(lineno, "delete", (v, tokens[3])))
                if size is not None:
                    size -= 1
            else:
                fail(f"unknown operation {op!r}")
        elif head == "assert":
            if len(tokens) != 2 or tokens[1] != "verify":
                fail("expected: assert verify")
            commands.append(Command(lineno, "assert_verify", ()))
        elif head == "measure":
            if len(tokens) != 2 or tokens[1] not in ("euler", "odd"):
                fail("expected: measure euler|odd")
            commands.append(Command(lineno, "measure", (tokens[1],)))
        elif head == "compare":
            if len(tokens) != 2:
                fail("expected: compare <graphfile>")
            commands.append(Command(lineno, "compare", (tokens[1],)))
        elif head == "automorphism":
            if len(tokens) < 2:
                fail("expected: automorphism <cycles>")
            cycles = _parse_cycles(" ".join(tokens[1:]), filename, lineno)
            for cyc in cycles:
                check_vertices(*cyc)
            commands.append(Command(lineno, "automorphism", (tuple(cycles),)))
        elif head == "vcompare":
            if len(tokens) != 3:
                fail("expected: vcompare <a> <b>")
            try:
                a, b = int(tokens[1]), int(tokens[2])
            except ValueError:
                fail("vcompare arguments must be integers")
            check_vertices(a, b)
            commands.append(Command(lineno, "vcompare", (a, b)))
        elif head == "readout":
            if len(tokens) != 1:
                fail("readout takes no arguments")
            commands.append(Command(lineno, "readout", ()))
        else:
            fail(f"unknown command {head!r}")
    return commands


def cycles_to_permutation(cycles: Sequence[Tuple[int, ...]], n: int) -> List[int]:
    perm = list(range(n))
    for cyc in cycles:
        for v in cyc:
            if not 0 <= v < n:
                raise GraphError(f"cycle vertex {v} out of range for n={n}")
        for i, v in enumerate(cyc):
            perm[v] = cyc[(i + 1) % len(cyc)]
    if sorted(perm) != list(range(n)):
        raise GraphError("cycles overlap; not a permutation")
    return perm


# -- execution --------------------------------------------------------


def _fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _trial_to_dict(t: TrialRecord) -> dict:
    return {
        "protocol": t.protocol,
        "outcome": t.outcome,
        "probabilities": {k: _fraction_str(v) for k, v in sorted(t.probabilities.items())},
        "deterministic": t.deterministic,
        "seed": t.seed,
        "copies": t.copies,
    }


def run_script(
    graph: Graph,
    commands: List[Command],
    seed: int,
    trials: int,
    script_dir: str = ".",
) -> dict:
    register = GraphRegister.prepare(graph, seed=seed)
    results: List[dict] = []
    all_trials: List[dict] = []

    def derived_seed(command_index: int, trial: int) -> int:
        return seed + 1000003 * (command_index + 1) + trial

    for ci, cmd in enumerate(commands):
        entry: dict = {"line": cmd.line, "command": cmd.kind}
        try:
            if cmd.kind == "cz":
                register.cz(*cmd.args)
            elif cmd.kind == "cnot":
                register.cnot(*cmd.args)
            elif cmd.kind == "fx":
                register.fx(*cmd.args)
            elif cmd.kind == "fxw":
                register.fx_wrapped(*cmd.args)
            elif cmd.kind in ("x", "y", "z"):
                register.apply_pauli(cmd.kind.upper(), cmd.args[0])
            elif cmd.kind == "localcomp":
                register.local_complement(cmd.args[0])
            elif cmd.kind == "iac":
                register.interset_complement(*cmd.args)
            elif cmd.kind == "iec":
                register.intraset_complement(cmd.args[0])
            elif cmd.kind == "addvertex":
                entry["vertex"] = register.add_vertex()
            elif cmd.kind == "delete":
                v, mode = cmd.args
                entry["outcome"] = register.delete_vertex(v, mode)
                entry["index_mapping"] = {
                    str(old): old if old < v else old - 1
                    for old in range(register.n + 1)
                    if old != v
                }
            elif cmd.kind == "assert_verify":
                if not register.verify():
                    raise ScriptRuntimeError(
                        cmd.line, "verify failed: tableau and shadow diverged"
                    )
                entry["verified"] = True
            elif cmd.kind == "measure":
                kind = cmd.args[0]
                kind = "even" if kind == "euler" else "odd"
                records = []
                for t in range(trials):
                    s = derived_seed(ci, t)
                    r1 = GraphRegister.prepare(register.shadow, seed=s)
                    r2 = GraphRegister.prepare(register.shadow, seed=s + 1)
                    records.append(degree_parity_test(r1, r2, kind, s))
                entry["trials"] = [_trial_to_dict(t) for t in records]
                all_trials.extend(entry["trials"])
            elif cmd.kind == "compare":
                path = os.path.join(script_dir, cmd.args[0])
                try:
                    with open(path) as fh:
                        other_graph = parse_graph(fh.read(), filename=path)
                except OSError as exc:
                    raise ScriptRuntimeError(cmd.line, f"cannot read {path}: {exc}")
                records = []
                for t in range(trials):
                    s = derived_seed(ci, t)
                    r1 = GraphRegister.prepare(register.shadow, seed=s)
                    r2 = GraphRegister.prepare(other_graph, seed=s + 1)
                    records.append(equality_test(r1, r2, s))
                entry["trials"] = [_trial_to_dict(t) for t in records]
                all_trials.extend(entry["trials"])
            elif cmd.kind == "automorphism":
                perm = cycles_to_permutation(cmd.args[0], register.n)
                records = []
                for t in range(trials):
                    s = derived_seed(ci, t)
                    r = GraphRegister.prepare(register.shadow, seed=s)
                    records.append(automorphism_test(r, perm, s))
                entry["trials"] = [_trial_to_dict(t) for t in records]
                all_trials.extend(entry["trials"])
            elif cmd.kind == "vcompare":
                a, b = cmd.args
                records = []
                for t in range(trials):
                    s = derived_seed(ci, t)
                    r = GraphRegister.prepare(register.shadow, seed=s)
                    records.append(vertex_compare(r, a, b, s))
                entry["trials"] = [_trial_to_dict(t) for t in records]
                all_trials.extend(entry["trials"])
            elif cmd.kind == "readout":
                factory = CopyFactory(register.shadow, seed=derived_seed(ci, 0))
                run = readout(
                    factory,
                    seed=derived_seed(ci, 1),
                    max_rounds=50 * max(register.n, 1),
                )
                entry["copies_used"] = run.copies_used
                entry["loop_iterations"] = run.loop_iterations
                entry["recovered_graph"] = serialize_graph(run.recovered)
                entry["matches"] = run.recovered == register.shadow
            else:  # pragma: no cover - parser guarantees coverage
                raise AssertionError(f"unhandled command {cmd.kind}")
        except (PreconditionError, GraphError, GateError, ShapeError) as exc:
            raise ScriptRuntimeError(cmd.line, str(exc)) from exc
        results.append(entry)

    return {
        "version": __version__,
        "seed": seed,
        "final_graph": serialize_graph(register.shadow),
        "counters": register.counters.as_dict(),
        "commands": results,
        "trials": all_trials,
    }


def format_report_text(report: dict) -> str:
    lines = [f"graphstates {report['version']}, seed {report['seed']}"]
    lines.append("final graph:")
    lines.extend("  " + ln for ln in report["final_graph"].strip().splitlines())
    lines.append("counters: " + ", ".join(f"{k}={v}" for k, v in report["counters"].items()))
    for entry in report["commands"]:
        desc = f"line {entry['line']}: {entry['command']}"
        extra = {k: v for k, v in entry.items() if k not in ("line", "command", "trials")}
        if extra:
            desc += " " + json.dumps(extra, sort_keys=True)
        if "trials" in entry:
            outcomes: dict = {}
            for t in entry["trials"]:
                outcomes[t["outcome"]] = outcomes.get(t["outcome"], 0) + 1
            desc += " outcomes " + json.dumps(outcomes, sort_keys=True)
        lines.append(desc)
    return "\n".join(lines) + "\n"


# -- bench harness ----------------------------------------------------

BENCH_WORKLOADS = (
    "prepare_constructive",
    "prepare_complete_iec",
    "iac_sweep",
    "readout_copies",
)

CSV_HEADER = "workload,n,param,one_qubit_gates,two_qubit_gates,measurements,copies"


def bench_rows(workload: str, sizes: Sequence[int], trials: int, seed: int = 0) -> List[str]:
    rows = []
    for n in sizes:
        if workload == "prepare_constructive":
            r = GraphRegister.prepare(Graph.complete(n), seed=seed)
            c = r.counters
            rows.append(f"{workload},{n},{n * (n - 1) // 2},{c.one_qubit_gates},{c.two_qubit_gates},{c.measurements},0")
        elif workload == "prepare_complete_iec":
            r = GraphRegister.prepare_complete(n, seed=seed)
            c = r.counters
            rows.append(f"{workload},{n},{n},{c.one_qubit_gates},{c.two_qubit_gates},{c.measurements},0")
        elif workload == "iac_sweep":
            half = n // 2
            r = GraphRegister.prepare(Graph.empty(n), seed=seed)
            r.interset_complement(range(half), range(half, n))
            c = r.counters
            rows.append(f"{workload},{n},{n},{c.one_qubit_gates},{c.two_qubit_gates},{c.measurements},0")
        elif workload == "readout_copies":
            import random as _random

            rng = _random.Random(seed + n)
            total_copies = 0
            for t in range(trials):
                g = Graph.random(n, rng)
                factory = CopyFactory(g, seed=rng.getrandbits(32))
                run = readout(factory, seed=rng.getrandbits(32), max_rounds=50 * n)
                total_copies += run.copies_used
            mean = total_copies / trials if trials else 0.0
            rows.append(f"{workload},{n},{trials},0,0,0,{mean:.3f}")
        else:
            raise ValueError(f"unknown workload {workload!r}")
    return rows


def write_bench_csv(path: str, rows: List[str]) -> None:
    with open(path, "w") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")


# -- entry point ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphstates",
        description="Graph manipulation on simulated graph states.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run_p = sub.add_parser("run", help="execute an operation script against a graph")
    run_p.add_argument("--graph", required=True, help="graph file")
    run_p.add_argument("--script", required=True, help="operation script file")
    run_p.add_argument("--seed", type=int, default=0, help="decimal u64 seed")
    run_p.add_argument("--trials", type=int, default=1, help="repetitions per protocol command")
    run_p.add_argument("--format", choices=("json", "text"), default="json")

    bench_p = sub.add_parser("bench", help="gate-count and copy-count benchmark")
    bench_p.add_argument("--workload", required=True, choices=BENCH_WORKLOADS)
    bench_p.add_argument("--n", required=True, help="comma-separated list of sizes")
    bench_p.add_argument("--trials", type=int, default=20)
    bench_p.add_argument("--seed", type=int, default=0)
    bench_p.add_argument("--out", required=True, help="CSV output path")
    bench_p.add_argument(
        "--no-figures",
        action="store_true",
        help="skip rendering the companion figures next to the CSV",
    )
    bench_p.add_argument(
        "--figures",
        default=None,
        help="directory for rendered figures (default: alongside the CSV)",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.subcommand == "run":
        try:
            with open(args.graph) as fh:
                graph = parse_graph(fh.read(), filename=args.graph)
            with open(args.script) as fh:
                commands = parse_script(fh.read(), filename=args.script, n=graph.n)
        except ParseError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
        try:
            report = run_script(
                graph,
                commands,
                seed=args.seed,
                trials=args.trials,
                script_dir=os.path.dirname(os.path.abspath(args.script)),
            )
        except ScriptRuntimeError as exc:
            print(f"error: {args.script}:{exc}", file=sys.stderr)
            return EXIT_RUNTIME
        except ResourceExhausted as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RESOURCE
        if args.format == "json":
            print(json.dumps(report, indent=2, sort_keys=True))
        else:
            print(format_report_text(report), end="")
        return EXIT_OK

    if args.subcommand == "bench":
        try:
            sizes = [int(x) for x in args.n.split(",") if x.strip()]
        except ValueError:
            print(f"error: bad size list {args.n!r}", file=sys.stderr)
            return EXIT_PARSE
        try:
            rows = bench_rows(args.workload, sizes, args.trials, seed=args.seed)
        except ResourceExhausted as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_RESOURCE
        write_bench_csv(args.out, rows)
        if not args.no_figures:
            from .plotting import render_bench_figures

            out_dir = args.figures or (os.path.dirname(os.path.abspath(args.out)))
            paths = render_bench_figures(args.out, out_dir)
            for p in paths:
                print(p)
        return EXIT_OK

    return EXIT_PARSE  # pragma: no cover


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
