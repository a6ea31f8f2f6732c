"""A quantum programming toolkit for the QRAM model: registers, operators, byte-code, simulator."""
from .circuit import (
    Operator,
    TimeSlice,
    apply,
    cnot,
    cond_phase,
    controlled,
    fourier,
    hadamard,
    identity,
    oracle_perm,
    oracle_phase,
    oracle_xor,
    phase,
    swap,
    toffoli,
)
from .emit import ByteCodeProgram, Instruction, translate
from .errors import (
    BackendError,
    CapacityError,
    OperatorError,
    QlangError,
    RegisterError,
    SessionError,
)
from .memory import AddressManager, BitSet, Register, allocate_register
from .session import Session
from .simplify import auto_simplify, simplify, simplify_with_stats
from .backend import Recorder, StateVectorBackend

__all__ = [
    "AddressManager",
    "BackendError",
    "BitSet",
    "ByteCodeProgram",
    "CapacityError",
    "Instruction",
    "Operator",
    "OperatorError",
    "QlangError",
    "Recorder",
    "Register",
    "RegisterError",
    "Session",
    "SessionError",
    "StateVectorBackend",
    "TimeSlice",
    "allocate_register",
    "apply",
    "auto_simplify",
    "cnot",
    "cond_phase",
    "controlled",
    "fourier",
    "hadamard",
    "identity",
    "oracle_perm",
    "oracle_phase",
    "oracle_xor",
    "phase",
    "simplify",
    "simplify_with_stats",
    "swap",
    "toffoli",
    "translate",
]
