from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlang import AddressManager, BitSet, Register, Session, allocate_register
from qlang.errors import CapacityError, RegisterError, SessionError


def test_bitset_round_trip():
    for width in (1, 5, 64):
        for value in (0, 1, (1 << width) - 1):
            assert int(BitSet.from_int(value, width)) == value
    assert str(BitSet.from_int(3, 5)) == "11000"
    assert list(BitSet.from_int(6, 3)) == [False, True, True]


def test_bitset_errors_beyond_word():
    wide = BitSet([1] * 65)
    with pytest.raises(OverflowError):
        int(wide)
    with pytest.raises(ValueError):
        BitSet.from_int(8, 3)
    with pytest.raises(ValueError):
        BitSet.coerce([1, 0], 3)


@given(st.integers(min_value=1, max_value=64).flatmap(
    lambda w: st.tuples(st.just(w), st.integers(0, (1 << w) - 1))))
def test_bitset_conversion_property(case):
    width, value = case
    bits = BitSet.from_int(value, width)
    assert len(bits) == width and int(bits) == value
    assert BitSet.coerce(bits, width) == bits


def test_allocate_large_register():
    m = AddressManager(96)
    a = allocate_register(m, 36)
    assert a.addresses == tuple(range(36))
    assert allocate_register(AddressManager(4), 1).addresses == (0,)


def test_allocate_with_value_emits_init():
    s = Session(capacity=6)
    r = s.allocate(5, 3)
    (ins,) = list(s.program)
    assert ins.opcode == "INIT" and ins.locations == (0, 1, 2, 3, 4)
    assert ins.to_text() == "INIT 11000 0 1 2 3 4"
    assert int(r.measure()) == 3


def test_allocate_errors():
    m = AddressManager(4)
    with pytest.raises(CapacityError):
        allocate_register(m, 5)
    with pytest.raises(RegisterError):
        allocate_register(m, 0)
    with pytest.raises(SessionError):
        allocate_register(m, 2, 1)
    assert m.free_pool == [0, 1, 2, 3]
    s = Session(capacity=4)
    with pytest.raises(ValueError):
        s.allocate(2, 4)


def _register(m, addresses):
    # a register over chosen addresses: reserve the pool, share, give the pool back
    filler = Register(m, m.take(len(m.free_pool)), _owned=True) if m.free_pool else None
    r = Register(m, addresses)
    if filler is not None:
        filler.release()
    return r


def test_subrange_and_qubit_at():
    m = AddressManager(20)
    r = _register(m, range(10, 17))
    assert r.subrange(2, 5).addresses == (12, 13, 14, 15, 16)
    assert r(2, 5).addresses == (12, 13, 14, 15, 16)
    assert r.qubit_at(3).addresses == (13,)
    assert r[3].addresses == (13,)
    assert r[1:3].addresses == (11, 12)
    short = _register(m, range(10, 15))
    with pytest.raises(RegisterError):
        short.subrange(2, 5)
    with pytest.raises(RegisterError):
        short.qubit_at(5)


def test_concatenate():
    m = AddressManager(64)
    a = _register(m, [12])
    b = _register(m, [48, 49])
    assert (a & b).addresses == (12, 48, 49)
    with pytest.raises(RegisterError):
        _register(m, [12, 13]) & _register(m, [13])


def test_concatenate_phase_and_eigen():
    m = AddressManager(12)
    phase = allocate_register(m, 5)
    eigen = allocate_register(m, 4)
    joined = phase[2] & eigen
    assert joined.addresses == (2, 5, 6, 7, 8)


def test_resize():
    m = AddressManager(20)
    r = allocate_register(m, 4)
    r += 5
    assert len(r) == 9 and r.addresses == tuple(range(9))
    r -= 3
    assert len(r) == 6 and r.addresses == tuple(range(3, 9))
    assert m.usage[:3] == [0, 0, 0]
    one = allocate_register(m, 1)
    with pytest.raises(RegisterError):
        one.shrink(1)
    with pytest.raises(CapacityError):
        r.grow(100)


def test_release_and_sharing():
    m = AddressManager(50)
    r = allocate_register(m, 5)
    r.release()
    assert m.free_pool == list(range(50))
    again = allocate_register(m, 5)
    assert again.addresses == tuple(range(5))
    b = _register(m, [47, 48, 49])
    d = _register(m, [48])
    b.release()
    assert m.usage[48] == 1 and 48 not in m.free_pool and 47 in m.free_pool
    d.release()
    assert 48 in m.free_pool


def test_released_register_is_dead():
    m = AddressManager(4)
    r = allocate_register(m, 2)
    r.release()
    r.release()
    with pytest.raises(RegisterError):
        r.addresses


def test_measure_basis_state_deterministic():
    s = Session(capacity=5)
    r = s.allocate(5, 7)
    assert int(r.measure()) == 7
    assert int(r.measure()) == 7
    r.assign(7)
    assert int(r.measure()) == 7
    r.assign(BitSet.from_int(18, 5))
    assert int(r.measure()) == 18
    with pytest.raises(ValueError):
        r.assign(32)


def test_measure_without_session():
    r = allocate_register(AddressManager(3), 2)
    with pytest.raises(SessionError):
        r.measure()


def test_reset_on_free():
    s = Session(capacity=3)
    r = s.allocate(2, 3)
    r.release()
    fresh = s.allocate(2)
    assert int(fresh.measure()) == 0


# -- random register programs ----------------------------------------------------------

ops = st.lists(st.tuples(st.sampled_from("asclrg"), st.integers(0, 10**6), st.integers(0, 10**6)),
               max_size=40)


def _run_program(program, capacity=16):
    m = AddressManager(capacity)
    live: list[Register] = []
    log = []
    for op, u, v in program:
        try:
            if op == "a":
                live.append(allocate_register(m, 1 + u % 4))
            elif not live:
                continue
            elif op == "s":
                r = live[u % len(live)]
                start = v % len(r)
                live.append(r.subrange(start, 1 + (u // 7) % (len(r) - start)))
            elif op == "c":
                live.append(live[u % len(live)] & live[v % len(live)])
            elif op == "l":
                live.pop(u % len(live)).release()
            elif op == "r":
                live[u % len(live)].shrink(v % 3)
            elif op == "g":
                live[u % len(live)].grow(1 + v % 2)
        except (RegisterError, CapacityError):
            log.append("err")
        log.append([r.addresses for r in live])
        # usage conservation and distinctness
        counts = [0] * capacity
        for r in live:
            assert len(set(r.addresses)) == len(r.addresses) >= 1
            for a in r.addresses:
                counts[a] += 1
        assert counts == m.usage
        assert m.free_pool == [a for a in range(capacity) if counts[a] == 0]
    return log


@settings(max_examples=200, deadline=None)
@given(ops)
def test_register_program_invariants(program):
    assert _run_program(program) == _run_program(program)
