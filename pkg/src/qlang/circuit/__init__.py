"""Time slices, operators, constructors and controlled-circuit synthesis."""
from .control import controlled, controlled_hadamard_circuit, doubly_controlled_phase_circuit
from .library import (
    cnot,
    cond_phase,
    fourier,
    hadamard,
    lower_swaps,
    oracle_perm,
    oracle_phase,
    oracle_xor,
    phase,
    swap,
    toffoli,
)
from .operator import Operator, apply, identity
from .slices import (
    CLASSICAL_SWAP,
    HADAMARD,
    CondPhase,
    GateKind,
    Phase,
    PermOracle,
    PhaseOracle,
    TimeSlice,
    XorOracle,
)

__all__ = [
    "CLASSICAL_SWAP",
    "HADAMARD",
    "CondPhase",
    "GateKind",
    "Operator",
    "Phase",
    "PermOracle",
    "PhaseOracle",
    "TimeSlice",
    "XorOracle",
    "apply",
    "cnot",
    "cond_phase",
    "controlled",
    "controlled_hadamard_circuit",
    "doubly_controlled_phase_circuit",
    "fourier",
    "hadamard",
    "identity",
    "lower_swaps",
    "oracle_perm",
    "oracle_phase",
    "oracle_xor",
    "phase",
    "swap",
    "toffoli",
]
