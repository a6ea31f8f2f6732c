"""
Execution session: the classical master driving one quantum device.

A session owns the address manager, the byte-code emitter and the
backend. Gate instructions are buffered and only reach the backend when
a measurement (the single blocking primitive) or an explicit flush
happens.
"""
from __future__ import annotations

import os
from collections.abc import Sequence
from typing import Optional, Union

import numpy as np

from .backend import Recorder, StateVectorBackend
from .circuit.operator import Operator
from .emit import Emitter
from .errors import BackendError, OperatorError
from .memory import AddressManager, BitSet, Register, allocate_register

DEFAULT_CAPACITY = 20
CAPACITY_ENV = "QLANG_CAPACITY"


def default_capacity() -> int:
    raw = os.environ.get(CAPACITY_ENV)
    if raw is None:
        return DEFAULT_CAPACITY
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{CAPACITY_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{CAPACITY_ENV} must be positive")
    return value


class Session:
    """One device of `capacity` qubits plus its address space.

    `backend` defaults to a state-vector simulator seeded with `seed`;
    pass ``Recorder()`` to collect byte-code without simulating.
    """

    def __init__(
        self,
        capacity: Optional[int] = None,
        seed: int = 0,
        backend=None,
        sampling: str = "random",
    ):
        self.capacity = default_capacity() if capacity is None else capacity
        self.manager = AddressManager(self.capacity, session=self)
        self.emitter = Emitter(self.capacity)
        if backend is None:
            backend = StateVectorBackend(self.capacity, seed=seed, sampling=sampling)
        self.backend = backend
        self._next_mid = 0

    @property
    def permutation(self) -> list[int]:
        return list(self.emitter.permutation.p)

    @property
    def program(self):
        return self.emitter.program

    def allocate(self, size: int, value: Union[BitSet, int, None] = None) -> Register:
        return allocate_register(self.manager, size, value)

    # -- gate application ----------------------------------------------------

    def run(self, op: Operator, register: Register) -> None:
        """Emit `op` on `register`, borrowing ancillae for negative lines."""
        addresses = list(register.addresses)
        if len(addresses) < op.width:
            raise OperatorError(
                f"operator of width {op.width} does not fit a register of {len(addresses)}"
            )
        if not op.slices:
            return
        anc = self.manager.take(op.ancillae) if op.ancillae else []
        try:
            base = len(addresses)
            lines = addresses + anc
            for s in op.slices:
                if anc:
                    s = s.remap(lambda i: i if i >= 0 else base - i - 1)
                self.emitter.emit_slice(s, lines)
        finally:
            if anc:
                self.manager.release(anc)

    # -- preparation and measurement -------------------------------------------

    def init(self, addresses: Sequence[int], bits: BitSet) -> None:
        self.emitter.init(addresses, bits)

    def reset_freed(self, addresses: Sequence[int]) -> None:
        """Freed qubits go back to |0> so the next owner finds them clean."""
        self.emitter.init(addresses, BitSet.from_int(0, len(addresses)))

    def measure(self, addresses: Sequence[int]) -> BitSet:
        mid = self._next_mid
        self._next_mid += 1
        self.emitter.measure(addresses, mid)
        return self.flush()[mid]

    def flush(self) -> dict[int, BitSet]:
        return self.emitter.flush(self.backend)

    # -- testing hooks -----------------------------------------------------------

    def _simulator(self) -> StateVectorBackend:
        if not isinstance(self.backend, StateVectorBackend):
            raise BackendError("this backend keeps no state vector")
        return self.backend

    def locations(self, register: Union[Register, Sequence[int]]) -> tuple[int, ...]:
        addresses = register.addresses if isinstance(register, Register) else tuple(register)
        return self.emitter.permutation.locate(addresses)

    def probability_of(self, register: Union[Register, Sequence[int]], value) -> float:
        """Exact probability that measuring `register` would give `value`, without collapse."""
        sim = self._simulator()
        self.flush()
        return sim.probability_of(value, self.locations(register))

    def distribution(self, register: Union[Register, Sequence[int]]) -> np.ndarray:
        sim = self._simulator()
        self.flush()
        return sim._marginal(self.locations(register))

    def snapshot(self) -> np.ndarray:
        """State vector indexed by physical locations."""
        sim = self._simulator()
        self.flush()
        return sim.snapshot()

    def logical_snapshot(self) -> np.ndarray:
        """State vector with bit a of the index describing logical address a."""
        phys = self.snapshot()
        idx = np.arange(phys.size)
        where = np.zeros_like(idx)
        for a, loc in enumerate(self.emitter.permutation.p):
            where |= ((idx >> a) & 1) << loc
        return phys[where]

    @property
    def depth(self) -> int:
        return self.backend.depth


__all__ = ["Session", "Recorder", "default_capacity", "DEFAULT_CAPACITY", "CAPACITY_ENV"]
