"""
Command-line driver.

Every subcommand prints ``key: value`` lines on stdout. ``dump --out FILE
<subcommand ...>`` runs a subcommand against a recording backend and
writes the byte-code instead of simulating it.
"""
from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from typing import Optional

from . import algorithms
from .backend import Recorder
from .circuit import Operator, TimeSlice, HADAMARD
from .errors import QlangError
from .session import Session, default_capacity
from .simplify import auto_simplify, simplify_with_stats

Lines = list[tuple[str, object]]


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="measurement RNG seed (default 0)")
    common.add_argument("--capacity", type=int, default=None,
                        help="device size in qubits (default: $QLANG_CAPACITY or 20)")
    common.add_argument("--no-simplify", action="store_true",
                        help="do not simplify operators while composing them")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="qlang", description="QRAM-model quantum programs on a simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("adder", parents=[common], help="three-input quantum adder")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--stats", action="store_true", help="print simplifier statistics")

    p = sub.add_parser("grover", parents=[common], help="Grover search for one marked element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--marked", type=int, required=True)
    p.add_argument("--iters", type=int, default=None, help="iterations (default floor(sqrt(2^n)))")

    p = sub.add_parser("order", parents=[common], help="order finding by phase estimation")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--max-attempts", type=int, default=10)

    sub.add_parser("simplify-demo", parents=[common], help="simplify a Hadamard ladder")

    p = sub.add_parser("dump", help="write byte-code of a subcommand instead of running it")
    p.add_argument("--out", required=True, help="byte-code output file ('-' for stdout)")
    p.add_argument("rest", nargs=argparse.REMAINDER, metavar="SUBCOMMAND ...")
    return parser


# -- subcommands ----------------------------------------------------------------------


def _cmd_adder(args, session: Session, simulate: bool) -> Lines:
    size = args.size
    if size < 1:
        raise ValueError("--size must be at least 1")
    for name in ("x", "y", "z"):
        value = getattr(args, name)
        if not 0 <= value < 1 << size:
            raise ValueError(f"--{name} must lie in [0, {1 << size})")
    adder = algorithms.build_three_adder(size)
    out: Lines = [("size", size), ("x", args.x), ("y", args.y), ("z", args.z)]
    result = algorithms.run_adder(size, args.x, args.y, args.z, session, adder=adder)
    if simulate:
        out.append(("sum", result))
    out.append(("slices", len(adder)))
    if args.stats:
        with auto_simplify(False):
            raw = algorithms.build_three_adder(size)
        _, stats = simplify_with_stats(raw)
        out += [
            ("slices_before", stats.slices_before),
            ("slices_after", stats.slices_after),
            ("gates_before", stats.gates_before),
            ("gates_after", stats.gates_after),
            ("passes", stats.passes),
        ]
    return out


def _cmd_grover(args, session: Session, simulate: bool) -> Lines:
    n, marked = args.n, args.marked
    if n < 1:
        raise ValueError("--n must be at least 1")
    if not 0 <= marked < 1 << n:
        raise ValueError(f"--marked must lie in [0, {1 << n})")
    iterations = algorithms.grover_repetitions(n) if args.iters is None else args.iters
    table = [x == marked for x in range(1 << n)]
    out: Lines = [("n", n), ("marked", marked), ("iterations", iterations)]
    reg = algorithms.prepare_grover(table, n, session, iterations)
    if simulate:
        out.append(("success_probability", f"{session.probability_of(reg, marked):.6f}"))
    outcome = reg.measure()
    reg.release()
    if simulate:
        out += [("outcome", int(outcome)), ("found", "yes" if int(outcome) == marked else "no")]
    return out


def _cmd_order(args, session: Session, simulate: bool) -> Lines:
    x, N = args.x, args.N
    t = algorithms.phase_register_size(args.n, args.eps)
    out: Lines = [("x", x), ("N", N), ("t", t)]
    attempts = args.max_attempts if simulate else 1
    if attempts < 1:
        raise ValueError("--max-attempts must be at least 1")
    for attempt in range(1, attempts + 1):
        result = algorithms.run_order_finding(x, N, args.n, args.eps, session)
        if result.order is not None:
            break
    if not simulate:
        return out
    convergents = algorithms.continued_fractions(result.outcome, 1 << t)
    out += [
        ("attempts", attempt),
        ("outcome", result.outcome),
        ("phase_bits", str(result.phase_bits)),
        ("convergents", " ".join(str(f) for f in convergents)),
        ("estimate", str(result.estimate)),
        ("order", result.order if result.order is not None else "none"),
    ]
    return out


def hadamard_ladder() -> Operator:
    """Five two-qubit H slices on (0,1), (1,2), ..., (4,5)."""
    return Operator([TimeSlice(HADAMARD, ((i, i + 1),)) for i in range(5)])


def _cmd_simplify_demo(args, session: Session, simulate: bool) -> Lines:
    ladder = hadamard_ladder()
    result, stats = simplify_with_stats(ladder)
    out: Lines = [("before", " ".join(repr(s) for s in ladder.slices))]
    out.append(("after", " ".join(repr(s) for s in result.slices)))
    out += [
        ("slices_before", stats.slices_before),
        ("slices_after", stats.slices_after),
        ("gates_before", stats.gates_before),
        ("gates_after", stats.gates_after),
    ]
    return out


COMMANDS = {
    "adder": _cmd_adder,
    "grover": _cmd_grover,
    "order": _cmd_order,
    "simplify-demo": _cmd_simplify_demo,
}


# -- driver ---------------------------------------------------------------------------


def _run(args, recorder: Optional[Recorder] = None) -> Lines:
    capacity = default_capacity() if args.capacity is None else args.capacity
    if capacity < 1:
        raise ValueError("--capacity must be positive")
    session = Session(capacity=capacity, seed=args.seed, backend=recorder)
    with auto_simplify(not args.no_simplify):
        out = COMMANDS[args.command](args, session, recorder is None)
    session.flush()
    return out


def _print(lines: Lines, stream) -> None:
    for key, value in lines:
        stream.write(f"{key}: {value}\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        inner = None
        if args.command == "dump":
            if not args.rest or args.rest[0] == "dump":
                parser.error("dump needs a subcommand other than dump")
            inner = parser.parse_args(args.rest)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if inner is None:
            _print(_run(args), sys.stdout)
            return 0
        recorder = Recorder()
        _run(inner, recorder)
        text = recorder.program.dumps()
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text)
            _print([("command", inner.command), ("instructions", len(recorder.program)),
                    ("depth", recorder.depth), ("out", args.out)], sys.stdout)
        return 0
    except (QlangError, ValueError, OSError) as exc:
        print(f"qlang: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
