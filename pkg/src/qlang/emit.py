"""
Byte-code generation.

Two list translations turn a slice into device locations. For an index
list l and a register's address list r, ``translate(l, r)`` picks r[l[i]];
the addresses then go through the permutation table p, which maps each
logical address to its current physical location. Classical swap slices
emit nothing: they transpose entries of p, which is visible through every
register sharing those addresses.

Text format, one instruction per line::

    TABLE tid v0 v1 ...            (hex entries, header section)
    H l1 l2 ...
    R k l1 l2 ...
    CR k c1 t1 c2 t2 ...
    ORACLE tid n m c l1 ... l(c+n+m)
    PERM tid w c l1 ... l(c+w)
    PORACLE tid n c l1 ... l(c+n)
    INIT bits l1 ...               (bits least significant first)
    MEASURE id l1 ...

where c counts the leading control locations of an oracle.
"""
from __future__ import annotations

import io
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, TextIO

from .circuit.slices import TimeSlice
from .errors import BackendError
from .memory import BitSet

if TYPE_CHECKING:
    from .backend import Backend

OPCODES = ("H", "R", "CR", "ORACLE", "PERM", "PORACLE", "INIT", "MEASURE")


def translate(indices: Sequence[int], addresses: Sequence[int]) -> tuple[int, ...]:
    """T_l(r): element i of the result is addresses[indices[i]]."""
    out = []
    for i in indices:
        if not 0 <= i < len(addresses):
            raise IndexError(f"index {i} out of range for {len(addresses)} addresses")
        out.append(addresses[i])
    return tuple(out)


class PermutationTable:
    """p[a] is the physical location currently holding logical address a."""

    def __init__(self, size: int):
        self.p = list(range(size))

    def __len__(self) -> int:
        return len(self.p)

    def locate(self, addresses: Sequence[int]) -> tuple[int, ...]:
        return translate(addresses, self.p)

    def transpose(self, a: int, b: int) -> None:
        self.p[a], self.p[b] = self.p[b], self.p[a]

    def is_permutation(self) -> bool:
        return sorted(self.p) == list(range(len(self.p)))


@dataclass(frozen=True)
class Instruction:
    opcode: str
    params: tuple[int, ...]
    locations: tuple[int, ...]
    table: Optional[tuple[int, ...]] = field(default=None, repr=False)

    def __post_init__(self):
        if self.opcode not in OPCODES:
            raise ValueError(f"unknown opcode {self.opcode}")
        if len(set(self.locations)) != len(self.locations):
            raise BackendError(f"duplicate locations in {self.opcode} {self.locations}")

    def to_text(self) -> str:
        if self.opcode == "INIT":
            head = ["INIT", "".join(str(b) for b in self.params)]
        else:
            head = [self.opcode, *map(str, self.params)]
        return " ".join(head + [str(x) for x in self.locations])


_PARAM_COUNT = {"H": 0, "R": 1, "CR": 1, "ORACLE": 4, "PERM": 3, "PORACLE": 3, "MEASURE": 1}


def _parse_instruction(line: str, tables: dict[int, tuple[int, ...]]) -> Instruction:
    words = line.split()
    opcode = words[0]
    if opcode == "INIT":
        params = tuple(int(b) for b in words[1])
        rest = words[2:]
    else:
        count = _PARAM_COUNT[opcode]
        params = tuple(int(w) for w in words[1:1 + count])
        rest = words[1 + count:]
    table = tables[params[0]] if opcode in ("ORACLE", "PERM", "PORACLE") else None
    return Instruction(opcode, params, tuple(int(w) for w in rest), table)


class ByteCodeProgram:
    """An ordered instruction buffer plus the oracle tables it references."""

    def __init__(self, instructions: Iterable[Instruction] = ()):
        self.instructions: list[Instruction] = []
        self.tables: dict[int, tuple[int, ...]] = {}
        for ins in instructions:
            self.append(ins)

    def append(self, ins: Instruction) -> None:
        if ins.table is not None:
            self.tables.setdefault(ins.params[0], ins.table)
        self.instructions.append(ins)

    def clear(self) -> None:
        self.instructions.clear()
        self.tables.clear()

    def __len__(self) -> int:
        return len(self.instructions)

    def __iter__(self):
        return iter(self.instructions)

    def __eq__(self, other) -> bool:
        if isinstance(other, ByteCodeProgram):
            return self.instructions == other.instructions
        return NotImplemented

    def dump(self, sink: TextIO) -> None:
        for tid in sorted(self.tables):
            sink.write(" ".join(["TABLE", str(tid)] + [format(v, "x") for v in self.tables[tid]]) + "\n")
        for ins in self.instructions:
            sink.write(ins.to_text() + "\n")

    def dumps(self) -> str:
        buf = io.StringIO()
        self.dump(buf)
        return buf.getvalue()

    @classmethod
    def parse(cls, text: str) -> ByteCodeProgram:
        tables: dict[int, tuple[int, ...]] = {}
        program = cls()
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("TABLE"):
                words = line.split()
                tables[int(words[1])] = tuple(int(w, 16) for w in words[2:])
            else:
                program.append(_parse_instruction(line, tables))
        return program


class Emitter:
    """Turns time slices on concrete address lists into instructions."""

    def __init__(self, capacity: int):
        self.permutation = PermutationTable(capacity)
        self.program = ByteCodeProgram()
        self._table_ids: dict[tuple, int] = {}

    def _table_id(self, opcode: str, table: tuple[int, ...]) -> int:
        return self._table_ids.setdefault((opcode, table), len(self._table_ids))

    def emit(self, ins: Instruction) -> None:
        self.program.append(ins)

    def emit_slice(self, s: TimeSlice, addresses: Sequence[int]) -> None:
        """Emit one slice whose line i lives at logical address addresses[i]."""
        kind = s.kind
        rbar = [translate(lst, addresses) for lst in s.lists]
        if kind.opcode == "SWAP":
            for a, b in zip(*rbar):
                self.permutation.transpose(a, b)
            return
        locs = [self.permutation.locate(lst) for lst in rbar]
        if kind.is_oracle:
            ctl = self.permutation.locate(translate(s.controls, addresses))
            tid = self._table_id(kind.opcode, kind.table)
            if kind.opcode == "ORACLE":
                params = (tid, kind.n, kind.m, len(ctl))
            else:
                params = (tid, kind.n, len(ctl))
            self.emit(Instruction(kind.opcode, params, ctl + locs[0], kind.table))
            return
        params = (kind.k,) if kind.opcode in ("R", "CR") else ()
        flat = tuple(x for gate in zip(*locs) for x in gate)
        self.emit(Instruction(kind.opcode, params, flat))

    def init(self, addresses: Sequence[int], bits: BitSet) -> None:
        self.emit(Instruction("INIT", tuple(int(b) for b in bits), self.permutation.locate(addresses)))

    def measure(self, addresses: Sequence[int], mid: int) -> None:
        self.emit(Instruction("MEASURE", (mid,), self.permutation.locate(addresses)))

    def flush(self, backend: Backend) -> dict[int, BitSet]:
        return flush(self.program, backend)


def flush(program: ByteCodeProgram, backend: Backend) -> dict[int, BitSet]:
    """Feed `program` to the backend in order and clear it; returns outcomes by MEASURE id."""
    outcomes = {}
    for ins in program:
        result = backend.execute(ins)
        if ins.opcode == "MEASURE":
            outcomes[ins.params[0]] = result
    program.clear()
    return outcomes


def dump(program: ByteCodeProgram, sink: TextIO) -> str:
    text = program.dumps()
    sink.write(text)
    return text
