from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlang import Recorder, Session
from qlang.backend import StateVectorBackend
from qlang.circuit import CLASSICAL_SWAP, HADAMARD, TimeSlice, hadamard, oracle_perm, oracle_xor, phase, swap
from qlang.circuit.library import cr_slice
from qlang.emit import ByteCodeProgram, Emitter, Instruction, PermutationTable, dump, flush, translate
from qlang.errors import BackendError


def test_translate():
    r = (20, 21, 22, 23, 24)
    assert translate((0, 2, 3), r) == (20, 22, 23)
    assert translate(range(5), r) == r
    assert translate((3, 0), (10, 11, 12, 13)) == (13, 10)
    with pytest.raises(IndexError):
        translate((4,), (1, 2))


def test_emit_hadamard_slice():
    e = Emitter(8)
    e.emit_slice(TimeSlice(HADAMARD, ((0, 2, 3),)), (4, 5, 6, 7))
    (ins,) = list(e.program)
    assert ins.to_text() == "H 4 6 7"


def test_emit_swap_transposes():
    e = Emitter(8)
    r = (1, 3, 5, 7)
    e.emit_slice(TimeSlice(CLASSICAL_SWAP, ((0, 1), (3, 2))), r)
    assert len(e.program) == 0
    p = e.permutation.p
    assert (p[1], p[7], p[3], p[5]) == (7, 1, 5, 3)
    assert e.permutation.is_permutation()


def test_overlapping_registers_see_swap():
    s = Session(capacity=4)
    a = s.allocate(4)
    b = a.subrange(2, 2)
    swap(4)(a)
    hadamard(1)(b)
    (ins,) = list(s.program)
    assert ins.locations == (1,)


def test_cr_and_oracle_text():
    e = Emitter(6)
    e.emit_slice(cr_slice(-3, (0, 2), (1, 3)), range(6))
    op = oracle_xor([1, 0], 1, 1)
    e.emit_slice(op.slices[0].with_controls((4,)), range(6))
    perm = oracle_perm([1, 0, 3, 2], 2)
    e.emit_slice(perm.slices[0], (5, 4))
    text = e.program.dumps()
    assert text.splitlines() == [
        "TABLE 0 1 0",
        "TABLE 1 1 0 3 2",
        "CR -3 0 1 2 3",
        "ORACLE 0 1 1 1 4 0 1",
        "PERM 1 2 0 5 4",
    ]


def test_instruction_rejects_duplicates():
    with pytest.raises(BackendError):
        Instruction("H", (), (1, 1))
    with pytest.raises(ValueError):
        Instruction("NOPE", (), (1,))


def test_flush_and_dump():
    program = ByteCodeProgram()
    assert program.dumps() == ""
    program.append(Instruction("H", (), (0,)))
    sink = io.StringIO()
    assert dump(program, sink) == "H 0\n" and sink.getvalue() == "H 0\n"
    rec = Recorder()
    flush(program, rec)
    flush(program, rec)
    assert len(rec.program) == 1 and len(program) == 0


def test_parse_round_trip():
    s = Session(capacity=6, backend=Recorder())
    r = s.allocate(4, 5)
    (phase(2, 3) & hadamard(3))(r)
    oracle_perm([2, 0, 1, 3], 2)(r)
    oracle_xor(lambda x: x, 2, 2)(r)
    from qlang.circuit import controlled

    controlled(oracle_xor(lambda x: x, 1, 1), 1)(r)
    r.measure()
    text = s.backend.program.dumps()
    again = ByteCodeProgram.parse(text)
    assert again.dumps() == text
    assert again == s.backend.program


def test_dump_is_deterministic():
    def run():
        s = Session(capacity=5, backend=Recorder())
        r = s.allocate(5, 9)
        (hadamard(5) & swap(5) & phase(2, -2))(r)
        r.measure()
        return s.backend.program.dumps()

    assert run() == run()


@settings(max_examples=50, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 15), st.integers(0, 15)), max_size=200))
def test_permutation_stays_permutation(pairs):
    table = PermutationTable(16)
    for a, b in pairs:
        table.transpose(a, b)
    assert table.is_permutation()


def test_emitted_locations_distinct():
    rng = np.random.default_rng(3)
    s = Session(capacity=6, backend=Recorder())
    regs = [s.allocate(3), s.allocate(3)]
    regs.append(regs[0].subrange(1, 2) & regs[1].subrange(0, 1))
    for _ in range(200):
        reg = regs[rng.integers(3)]
        choice = rng.integers(3)
        op = [swap(3), hadamard(3), phase(2, 1)][choice]
        op(reg)
    s.flush()
    for ins in s.backend.program:
        assert len(set(ins.locations)) == len(ins.locations)


def test_swap_then_simulator_state():
    sim = StateVectorBackend(2)
    e = Emitter(2)
    e.emit_slice(TimeSlice(HADAMARD, ((0,),)), (0, 1))
    e.emit_slice(TimeSlice(CLASSICAL_SWAP, ((0,), (1,))), (0, 1))
    e.emit_slice(TimeSlice(HADAMARD, ((1,),)), (0, 1))
    e.flush(sim)
    assert np.allclose(sim.snapshot(), [1, 0, 0, 0], atol=1e-12)
