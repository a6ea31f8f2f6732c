"""
State-vector device standing in for a quantum device driver.

Amplitudes are double precision complex; qubit q contributes bit q of the
basis index. Gates of one instruction act on disjoint qubits and are
applied one after the other, while `depth` counts each gate instruction
as a single parallel step.
"""
from __future__ import annotations

from typing import Optional, Protocol

import numpy as np

from .emit import ByteCodeProgram, Instruction
from .errors import BackendError
from .memory import BitSet

_SQRT1_2 = 1 / np.sqrt(2)
_CERTAIN = 1 - 1e-12


def phase_factor(k: int) -> complex:
    """phi_k = exp(2 pi i / 2^k), conjugated for negative k."""
    sign = 1 if k > 0 else -1
    return complex(np.exp(sign * 2j * np.pi / 2 ** abs(k)))


class Backend(Protocol):
    def execute(self, ins: Instruction) -> Optional[BitSet]: ...


class StateVectorBackend:
    def __init__(self, num_qubits: int, seed: int = 0, sampling: str = "random"):
        if sampling not in ("random", "argmax"):
            raise ValueError("sampling must be 'random' or 'argmax'")
        self.num_qubits = num_qubits
        self.sampling = sampling
        self.rng = np.random.default_rng(seed)
        self.state = np.zeros(1 << num_qubits, dtype=complex)
        self.state[0] = 1
        self.depth = 0
        self._idx = np.arange(1 << num_qubits)
        self._pair_cache: dict[tuple[int, int], np.ndarray] = {}

    # -- testing hooks -----------------------------------------------------------

    def snapshot(self) -> np.ndarray:
        return self.state.copy()

    def restore(self, state: np.ndarray) -> None:
        state = np.asarray(state, dtype=complex)
        if state.shape != self.state.shape:
            raise BackendError(f"state must have {self.state.size} amplitudes")
        self.state = state.copy()

    def probability_of(self, outcome, locations) -> float:
        locations = tuple(locations)
        self._check(locations)
        value = int(outcome) if not isinstance(outcome, int) else outcome
        return float(self._marginal(locations)[value])

    # -- helpers -----------------------------------------------------------------

    def _check(self, locations) -> None:
        for q in locations:
            if not 0 <= q < self.num_qubits:
                raise BackendError(f"location {q} outside device of {self.num_qubits} qubits")
        if len(set(locations)) != len(locations):
            raise BackendError(f"duplicate locations {locations}")

    def _sub_index(self, locations) -> np.ndarray:
        sub = np.zeros_like(self._idx)
        for j, q in enumerate(locations):
            sub |= ((self._idx >> q) & 1) << j
        return sub

    def _controls_on(self, controls) -> np.ndarray | bool:
        if not controls:
            return True
        mask = sum(1 << q for q in controls)
        return (self._idx & mask) == mask

    def _marginal(self, locations) -> np.ndarray:
        weights = np.abs(self.state) ** 2
        return np.bincount(self._sub_index(locations), weights=weights, minlength=1 << len(locations))

    def _both_set(self, c: int, t: int) -> np.ndarray:
        key = (min(c, t), max(c, t))
        hit = self._pair_cache.get(key)
        if hit is None:
            mask = (1 << c) | (1 << t)
            hit = np.flatnonzero((self._idx & mask) == mask)
            self._pair_cache[key] = hit
        return hit

    def _hadamard(self, q: int) -> None:
        v = self.state.reshape(-1, 2, 1 << q)
        a = v[:, 0, :].copy()
        b = v[:, 1, :]
        v[:, 0, :] = (a + b) * _SQRT1_2
        v[:, 1, :] = (a - b) * _SQRT1_2

    def _phase(self, q: int, factor: complex) -> None:
        self.state.reshape(-1, 2, 1 << q)[:, 1, :] *= factor

    def _relabel(self, new_index: np.ndarray) -> None:
        out = np.empty_like(self.state)
        out[new_index] = self.state
        self.state = out

    def _sample(self, probs: np.ndarray) -> int:
        probs = probs / probs.sum()
        best = int(np.argmax(probs))
        if self.sampling == "argmax" or probs[best] > _CERTAIN:
            return best
        u = self.rng.random()
        return min(int(np.searchsorted(np.cumsum(probs), u, side="right")), len(probs) - 1)

    def _measure(self, locations) -> int:
        probs = self._marginal(locations)
        outcome = self._sample(probs)
        keep = self._sub_index(locations) == outcome
        self.state[~keep] = 0
        self.state /= np.sqrt(probs[outcome])
        return outcome

    # -- instruction set ---------------------------------------------------------

    def execute(self, ins: Instruction) -> Optional[BitSet]:
        locs = ins.locations
        self._check(locs)
        op = ins.opcode
        if op == "H":
            for q in locs:
                self._hadamard(q)
        elif op == "R":
            f = phase_factor(ins.params[0])
            for q in locs:
                self._phase(q, f)
        elif op == "CR":
            f = phase_factor(ins.params[0])
            for c, t in zip(locs[0::2], locs[1::2]):
                self.state[self._both_set(c, t)] *= f
        elif op in ("ORACLE", "PERM", "PORACLE"):
            self._oracle(ins)
        elif op == "INIT":
            outcome = self._measure(locs)
            want = sum(b << j for j, b in enumerate(ins.params))
            flip = sum(1 << q for j, q in enumerate(locs) if ((outcome ^ want) >> j) & 1)
            if flip:
                self.state = self.state[self._idx ^ flip]
            return None
        elif op == "MEASURE":
            return BitSet.from_int(self._measure(locs), len(locs))
        self.depth += 1
        return None

    def _oracle(self, ins: Instruction) -> None:
        table = np.asarray(ins.table, dtype=np.int64)
        nctl = ins.params[-1]
        controls, data = ins.locations[:nctl], ins.locations[nctl:]
        on = self._controls_on(controls)
        sub = self._sub_index(data)
        if ins.opcode == "PORACLE":
            flip = on & (table[sub] == 1)
            self.state[flip] *= -1
            return
        if ins.opcode == "ORACLE":
            n = ins.params[1]
            x = sub & ((1 << n) - 1)
            new_sub = sub ^ (table[x] << n)
        else:
            new_sub = table[sub]
        changed = new_sub ^ sub
        delta = np.zeros_like(self._idx)
        for j, q in enumerate(data):
            delta |= ((changed >> j) & 1) << q
        self._relabel(np.where(on, self._idx ^ delta, self._idx))


class Recorder:
    """No-op device: records the instruction stream, measurements read as 0."""

    def __init__(self):
        self.program = ByteCodeProgram()
        self.depth = 0

    def execute(self, ins: Instruction) -> Optional[BitSet]:
        self.program.append(ins)
        if ins.opcode == "MEASURE":
            return BitSet.from_int(0, len(ins.locations))
        if ins.opcode != "INIT":
            self.depth += 1
        return None
