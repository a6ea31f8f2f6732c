"""
Peephole simplification over time-slice sequences.

Rules only ever look at two adjacent slices, and are applied to a fixed
point. Each pass runs, in order:

    - cancellation: gates in adjacent slices of the same opcode whose
      parameters are mutually adjoint and whose lines (unordered pairs
      for two-line gates) coincide are deleted from both slices. This
      covers full and partial cancellation; emptied slices disappear and
      cancellation keeps proceeding inward across the hole.
    - parallel merge: adjacent slices of identical kind acting on
      disjoint lines become one slice.

Cancelling before merging matters: a merge can otherwise glue a gate to
a neighbour and hide an inverse pair that straddles a junction.
Oracle slices are barriers. No commutation analysis is attempted.
"""
from __future__ import annotations

import contextlib
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .circuit.slices import TimeSlice

if TYPE_CHECKING:
    from .circuit.operator import Operator

_embedded = True


def embedding_enabled() -> bool:
    return _embedded


@contextlib.contextmanager
def auto_simplify(enabled: bool) -> Iterator[None]:
    """Turn simplification inside composition primitives on or off."""
    global _embedded
    previous, _embedded = _embedded, enabled
    try:
        yield
    finally:
        _embedded = previous


@dataclass(frozen=True)
class SimplifyStats:
    slices_before: int
    slices_after: int
    gates_before: int
    gates_after: int
    passes: int


def gate_count(slices: Sequence[TimeSlice]) -> int:
    return sum(s.size for s in slices)


def _gate_key(kind_opcode: str, gate: tuple[int, ...]):
    if kind_opcode in ("CR", "SWAP"):
        return frozenset(gate)
    return gate[0]


def _mutually_adjoint(a: TimeSlice, b: TimeSlice) -> bool:
    ka, kb = a.kind, b.kind
    if ka.opcode != kb.opcode or ka.is_oracle:
        return False
    if ka.opcode in ("H", "SWAP"):
        return True
    # phi_1 = phi_-1 = -1, so R_1 is its own inverse
    return ka.k == -kb.k or abs(ka.k) == abs(kb.k) == 1


def _drop(s: TimeSlice, keys: set) -> TimeSlice | None:
    kept = [g for g in s.gates() if _gate_key(s.kind.opcode, g) not in keys]
    if not kept:
        return None
    return TimeSlice.from_gates(s.kind, kept)


def _cancel_pair(first: TimeSlice, second: TimeSlice):
    """Remove matching inverse gates from two adjacent slices.

    Returns (first', second', hit) where an emptied slice becomes None.
    """
    if not _mutually_adjoint(first, second):
        return first, second, False
    op = first.kind.opcode
    common = {_gate_key(op, g) for g in first.gates()} & {_gate_key(op, g) for g in second.gates()}
    if not common:
        return first, second, False
    return _drop(first, common), _drop(second, common), True


def _cancel_pass(slices: Sequence[TimeSlice]) -> tuple[list[TimeSlice], bool]:
    stack: list[TimeSlice] = []
    changed = False
    for s in slices:
        cur: TimeSlice | None = s
        while cur is not None and stack:
            top, rest, hit = _cancel_pair(stack[-1], cur)
            if not hit:
                break
            changed = True
            cur = rest
            if top is None:
                stack.pop()
            else:
                stack[-1] = top
                break
        if cur is not None:
            stack.append(cur)
    return stack, changed


def _can_merge(a: TimeSlice, b: TimeSlice) -> bool:
    if a.kind != b.kind or a.kind.is_oracle:
        return False
    return not set(a.indices()) & set(b.indices())


def _merge_pass(slices: Sequence[TimeSlice]) -> tuple[list[TimeSlice], bool]:
    out: list[TimeSlice] = []
    changed = False
    for s in slices:
        if out and _can_merge(out[-1], s):
            out[-1] = TimeSlice.from_gates(s.kind, out[-1].gates() + s.gates())
            changed = True
        else:
            out.append(s)
    return out, changed


def simplify_slices(slices: Sequence[TimeSlice]) -> tuple[list[TimeSlice], int]:
    """Run passes until nothing changes; returns (slices, pass count)."""
    current = list(slices)
    passes = 0
    while True:
        passes += 1
        current, cancelled = _cancel_pass(current)
        current, merged = _merge_pass(current)
        if not (cancelled or merged):
            return current, passes


def simplify_with_stats(op: Operator) -> tuple[Operator, SimplifyStats]:
    from .circuit.operator import Operator

    result, passes = simplify_slices(op.slices)
    stats = SimplifyStats(
        slices_before=len(op.slices),
        slices_after=len(result),
        gates_before=gate_count(op.slices),
        gates_after=gate_count(result),
        passes=passes,
    )
    return Operator(result), stats


def simplify(op: Operator) -> Operator:
    return simplify_with_stats(op)[0]
