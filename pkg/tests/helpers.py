"""Random operator generators shared by the property tests."""
from __future__ import annotations

import numpy as np

from qlang.circuit import (
    CLASSICAL_SWAP,
    HADAMARD,
    CondPhase,
    Operator,
    Phase,
    PermOracle,
    PhaseOracle,
    TimeSlice,
    XorOracle,
)

GATE_KINDS = ("H", "R", "CR", "SWAP")


def random_slice(rng: np.random.Generator, width: int, kinds=GATE_KINDS, oracles: bool = False) -> TimeSlice:
    choices = list(kinds)
    if oracles and width >= 2:
        choices += ["PERM", "PORACLE", "ORACLE"]
    kind = choices[rng.integers(len(choices))]
    if kind in ("CR", "SWAP") and width < 2:
        kind = "H"
    lines = [int(v) for v in rng.permutation(width)]
    k = int(rng.choice([-4, -3, -2, -1, 1, 2, 3, 4]))
    if kind in ("H", "R"):
        count = int(rng.integers(1, width + 1))
        lst = (tuple(lines[:count]),)
        return TimeSlice(HADAMARD if kind == "H" else Phase(k), lst)
    if kind in ("CR", "SWAP"):
        pairs = int(rng.integers(1, width // 2 + 1))
        first, second = tuple(lines[:pairs]), tuple(lines[pairs:2 * pairs])
        return TimeSlice(CondPhase(k) if kind == "CR" else CLASSICAL_SWAP, (first, second))
    w = int(rng.integers(1, min(width, 3) + 1))
    data = tuple(lines[:w])
    if kind == "PERM":
        return TimeSlice(PermOracle(w, [int(v) for v in rng.permutation(1 << w)]), (data,))
    if kind == "PORACLE":
        return TimeSlice(PhaseOracle(w, [bool(v) for v in rng.integers(0, 2, 1 << w)]), (data,))
    if w < 2:
        data = tuple(lines[:2])
        w = 2
    n = int(rng.integers(1, w))
    table = [int(v) for v in rng.integers(0, 1 << (w - n), 1 << n)]
    return TimeSlice(XorOracle(n, w - n, table), (data,))


def random_operator(rng: np.random.Generator, width: int, count: int, kinds=GATE_KINDS,
                    oracles: bool = False) -> Operator:
    return Operator([random_slice(rng, width, kinds, oracles) for _ in range(count)])


def cancelling_operator(rng: np.random.Generator, width: int, count: int) -> Operator:
    """Random operator biased towards adjacent inverse pairs and mergeable slices."""
    slices = []
    while len(slices) < count:
        s = random_slice(rng, width)
        slices.append(s)
        roll = rng.random()
        if roll < 0.3:
            slices.append(s.adjoint())
        elif roll < 0.45 and s.size > 1:
            gates = s.gates()
            keep = gates[: int(rng.integers(1, len(gates)))]
            slices.append(TimeSlice.from_gates(s.kind.adjoint(), keep))
    return Operator(slices[:count])
