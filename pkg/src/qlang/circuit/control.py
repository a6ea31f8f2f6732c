"""
Controlled-operator synthesis.

``controlled(U, c)`` puts the c control lines on 0..c-1 and shifts U up by
c. The generated circuit:

    1. ANDs the controls into one ancilla with a tree of c-1 Toffolis
       (depth ~ log c; skipped for c = 1);
    2. fans that qubit out into m copies, m being the widest slice of U
       (the GHZ-style "copy", depth ~ log m; skipped for m = 1);
    3. replaces every gate of slice j by its controlled form, gate i of a
       slice taking copy i as its control, so parallelism survives;
    4. undoes 2 and 1.

Controlled R_k is C_{R_k}; controlled H and controlled C_{R_k} use the
constant-depth circuits from `library`. Classical swaps are first lowered
to CNOTs. Oracle slices are controlled natively by the original control
lines and need no ancillae.
"""
from __future__ import annotations

from ..errors import OperatorError
from .. import simplify as _simplify
from .library import (
    cnot_slices,
    controlled_h_slices,
    cr_slice,
    doubly_controlled_phase_slices,
    lower_swaps,
    toffoli_slices,
)
from .operator import Operator
from .slices import TimeSlice


def _adjoint_slices(slices: list[TimeSlice]) -> list[TimeSlice]:
    return [s.adjoint() for s in reversed(slices)]


def _controlled_slice(s: TimeSlice, copies: list[int]) -> list[TimeSlice]:
    gates = s.gates()
    ctl = copies[: len(gates)]
    op = s.kind.opcode
    if op == "H":
        return controlled_h_slices(ctl, [g[0] for g in gates])
    if op == "R":
        return [cr_slice(s.kind.k, ctl, [g[0] for g in gates])]
    if op == "CR":
        return doubly_controlled_phase_slices(
            s.kind.k, [g[0] for g in gates], ctl, [g[1] for g in gates]
        )
    raise OperatorError(f"no controlled form for {s.kind!r}")  # pragma: no cover


def controlled(op: Operator, c: int) -> Operator:
    """U applied to lines c.. when lines 0..c-1 are all |1>."""
    if c < 1:
        raise OperatorError("a controlled operator needs at least one control")
    body = [
        s.remap(lambda i: i + c if i >= 0 else i) for s in lower_swaps(op).slices
    ]
    m = max((s.size for s in body if not s.kind.is_oracle), default=0)

    next_ancilla = op.ancillae

    def fresh(count: int) -> list[int]:
        nonlocal next_ancilla
        out = [-(next_ancilla + 1 + j) for j in range(count)]
        next_ancilla += count
        return out

    controls = list(range(c))
    and_tree: list[TimeSlice] = []
    fan_out: list[TimeSlice] = []
    copies: list[int] = []
    if m:
        level = controls
        while len(level) > 1:
            pairs = len(level) // 2
            results = fresh(pairs)
            and_tree += toffoli_slices(level[0:2 * pairs:2], level[1:2 * pairs:2], results)
            level = results + level[2 * pairs:]
        copies = [level[0]]
        while len(copies) < m:
            k = min(len(copies), m - len(copies))
            new = fresh(k)
            fan_out += cnot_slices(copies[:k], new)
            copies += new

    middle: list[TimeSlice] = []
    for s in body:
        if s.kind.is_oracle:
            middle.append(s.with_controls(controls + list(s.controls)))
        else:
            middle += _controlled_slice(s, copies)

    slices = and_tree + fan_out + middle + _adjoint_slices(fan_out) + _adjoint_slices(and_tree)
    result = Operator(slices)
    if _simplify.embedding_enabled():
        result.slices, _ = _simplify.simplify_slices(result.slices)
    return result


def controlled_hadamard_circuit() -> Operator:
    """C_H with the control on line 0 and the target on line 1."""
    return Operator(controlled_h_slices([0], [1]))


def doubly_controlled_phase_circuit(k: int) -> Operator:
    """C_{C_{R_k}} with controls on lines 0 and 1, target on line 2."""
    return Operator(doubly_controlled_phase_slices(k, [0], [1], [2]))
