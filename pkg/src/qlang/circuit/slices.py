"""Gate kinds and time slices, the storage unit of every operator.

A time slice is one layer of homogeneous gates acting on disjoint lines.
It holds `arity` index lists of common length s; gate j acts on
``(lists[0][j], ..., lists[arity-1][j])``. Oracle slices hold a single
ordered list and may carry native control lines.

Line indexes are non-negative for the operator's visible lines. Negative
indexes name ancilla lines (-1 is the first ancilla) which are supplied
at application time and must be returned to |0>.
"""
from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass

from ..errors import OperatorError

GATE_OPCODES = ("H", "R", "CR", "SWAP")
ORACLE_OPCODES = ("ORACLE", "PERM", "PORACLE")


@dataclass(frozen=True)
class GateKind:
    """What a slice does. `k` parametrises R/CR; `n`, `m`, `table` describe oracles."""

    opcode: str
    k: int = 0
    n: int = 0
    m: int = 0
    table: tuple[int, ...] = ()

    @property
    def arity(self) -> int:
        return 2 if self.opcode in ("CR", "SWAP") else 1

    @property
    def is_oracle(self) -> bool:
        return self.opcode in ORACLE_OPCODES

    @property
    def oracle_width(self) -> int:
        return self.n + self.m

    def adjoint(self) -> GateKind:
        if self.opcode in ("R", "CR"):
            return GateKind(self.opcode, k=-self.k)
        if self.opcode == "PERM":
            inverse = [0] * len(self.table)
            for i, v in enumerate(self.table):
                inverse[v] = i
            return GateKind("PERM", n=self.n, table=tuple(inverse))
        # H, classical swaps, xor oracles and phase oracles are self-adjoint
        return self

    def __repr__(self) -> str:
        if self.opcode in ("R", "CR"):
            return f"{self.opcode}({self.k})"
        if self.opcode == "ORACLE":
            return f"ORACLE(n={self.n}, m={self.m})"
        if self.is_oracle:
            return f"{self.opcode}(n={self.n})"
        return self.opcode


HADAMARD = GateKind("H")
CLASSICAL_SWAP = GateKind("SWAP")


def Phase(k: int) -> GateKind:
    if k == 0:
        raise OperatorError("phase shift parameter k must be non-zero")
    return GateKind("R", k=k)


def CondPhase(k: int) -> GateKind:
    if k == 0:
        raise OperatorError("phase shift parameter k must be non-zero")
    return GateKind("CR", k=k)


def XorOracle(n: int, m: int, table: Sequence[int]) -> GateKind:
    table = tuple(int(v) for v in table)
    if n < 1 or m < 1:
        raise OperatorError("oracle registers need at least one qubit each")
    if len(table) != 1 << n:
        raise OperatorError(f"xor oracle table needs {1 << n} entries, got {len(table)}")
    if any(v < 0 or v >> m for v in table):
        raise OperatorError(f"xor oracle values must fit in {m} bits")
    return GateKind("ORACLE", n=n, m=m, table=table)


def PermOracle(width: int, table: Sequence[int]) -> GateKind:
    table = tuple(int(v) for v in table)
    if width < 1:
        raise OperatorError("permutation oracle needs at least one qubit")
    if len(table) != 1 << width:
        raise OperatorError(f"permutation table needs {1 << width} entries, got {len(table)}")
    if sorted(table) != list(range(1 << width)):
        raise OperatorError("permutation table is not a bijection")
    return GateKind("PERM", n=width, table=table)


def PhaseOracle(n: int, table: Sequence[bool]) -> GateKind:
    table = tuple(1 if v else 0 for v in table)
    if n < 1:
        raise OperatorError("phase oracle needs at least one qubit")
    if len(table) != 1 << n:
        raise OperatorError(f"phase oracle table needs {1 << n} entries, got {len(table)}")
    return GateKind("PORACLE", n=n, table=table)


@dataclass(frozen=True)
class TimeSlice:
    kind: GateKind
    lists: tuple[tuple[int, ...], ...]
    controls: tuple[int, ...] = ()

    def __post_init__(self):
        lists = tuple(tuple(int(i) for i in lst) for lst in self.lists)
        controls = tuple(int(i) for i in self.controls)
        object.__setattr__(self, "lists", lists)
        object.__setattr__(self, "controls", controls)
        kind = self.kind
        if kind.is_oracle:
            if len(lists) != 1 or len(lists[0]) != kind.oracle_width:
                raise OperatorError(f"{kind!r} needs one list of {kind.oracle_width} lines")
        else:
            if len(lists) != kind.arity:
                raise OperatorError(f"{kind!r} needs {kind.arity} index lists, got {len(lists)}")
            if controls:
                raise OperatorError("only oracle slices carry native controls")
            if not lists[0]:
                raise OperatorError("empty index list")
            if any(len(lst) != len(lists[0]) for lst in lists):
                raise OperatorError("index lists of one slice must have equal length")
        flat = [i for lst in lists for i in lst] + list(controls)
        if len(set(flat)) != len(flat):
            raise OperatorError(f"indexes of a slice must be distinct: {lists} {controls}")

    @classmethod
    def from_gates(cls, kind: GateKind, gates: Sequence[tuple[int, ...]]) -> TimeSlice:
        """Build from per-gate tuples, e.g. [(c0, t0), (c1, t1)]."""
        return cls(kind, tuple(zip(*gates)))

    @property
    def size(self) -> int:
        """Number of parallel gates (1 for an oracle)."""
        return 1 if self.kind.is_oracle else len(self.lists[0])

    def gates(self) -> list[tuple[int, ...]]:
        if self.kind.is_oracle:
            return [self.controls + self.lists[0]]
        return list(zip(*self.lists))

    def indices(self) -> tuple[int, ...]:
        return tuple(i for lst in self.lists for i in lst) + self.controls

    def remap(self, fn: Callable[[int], int]) -> TimeSlice:
        return TimeSlice(
            self.kind,
            tuple(tuple(fn(i) for i in lst) for lst in self.lists),
            tuple(fn(i) for i in self.controls),
        )

    def adjoint(self) -> TimeSlice:
        return TimeSlice(self.kind.adjoint(), self.lists, self.controls)

    def with_controls(self, controls: Sequence[int]) -> TimeSlice:
        return TimeSlice(self.kind, self.lists, tuple(controls))

    def __repr__(self) -> str:
        body = " ".join(str(list(lst)) for lst in self.lists)
        ctl = f" ctl={list(self.controls)}" if self.controls else ""
        return f"<{self.kind!r} {body}{ctl}>"
