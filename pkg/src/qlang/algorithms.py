"""
Example programs: the three-input adder, order finding and Grover search.

Register values are little-endian (bit i lives on qubit i). The adder and
the Fourier transform count line 0 as the most significant bit, so they
are applied to reversed registers.
"""
from __future__ import annotations

import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .circuit import (
    Operator,
    controlled,
    cond_phase,
    fourier,
    hadamard,
    identity,
    oracle_perm,
    oracle_phase,
    swap,
)
from .memory import BitSet, Register
from .session import Session

Predicate = Union[Sequence[bool], Callable[[int], bool]]


# -- three-input adder -----------------------------------------------------------


def build_three_adder(size: int) -> Operator:
    """z += x + y (mod 2^size) with x on lines [0, size), y next, z last."""
    if size < 1:
        raise ValueError("adder size must be at least 1")
    phase_shifts = identity()
    for i in range(size):
        phase_shifts << cond_phase(size - i, i + 1).offset(i)
    transform = (fourier(size) & swap(size)).offset(size)
    adder_2 = transform & phase_shifts & ~transform
    adder_3 = adder_2 >> size
    adder_3 << adder_2.split(size, size)
    return adder_3


def adder_lines(x: Register, y: Register, z: Register) -> Register:
    """The register an adder built by `build_three_adder` expects."""
    return Register(x.manager, x.addresses[::-1] + y.addresses[::-1] + z.addresses[::-1])


def run_adder(size: int, x: int, y: int, z: int, session: Session,
              adder: Optional[Operator] = None) -> int:
    """Prepare |z>|y>|x>, run the adder and measure z (now x + y + z mod 2^size)."""
    adder = build_three_adder(size) if adder is None else adder
    rx = session.allocate(size, x)
    ry = session.allocate(size, y)
    rz = session.allocate(size, z)
    with adder_lines(rx, ry, rz) as lines:
        adder(lines)
    result = int(rz.measure())
    for r in (rx, ry, rz):
        r.release()
    return result


# -- continued fractions and order recovery -------------------------------------------


def continued_fractions(numerator: int, denominator: int) -> list[Fraction]:
    """All convergents of numerator/denominator, ascending denominators."""
    if denominator <= 0 or not 0 <= numerator < denominator:
        raise ValueError("need 0 <= numerator < denominator")
    convergents = []
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    a, b = numerator, denominator
    while b:
        digit, rem = divmod(a, b)
        p_prev, p = p, digit * p + p_prev
        q_prev, q = q, digit * q + q_prev
        convergents.append(Fraction(p, q))
        a, b = b, rem
    return convergents


def _reduce_order(x: int, N: int, r: int) -> int:
    # the true order divides any exponent that gives 1
    return next(d for d in range(1, r + 1) if r % d == 0 and pow(x, d, N) == 1)


def order_from_phase(outcome: int, t: int, x: int, N: int) -> tuple[Fraction, Optional[int]]:
    """Turn a phase outcome y ~ s 2^t / r into (estimate of s/r, order or None).

    Convergent denominators q <= N are tried first as they are, then with
    their multiples, since s and r may share a factor. Integer estimates
    (0 or 1) carry no information about r.
    """
    candidates = [
        f for f in continued_fractions(outcome, 1 << t)
        if f.denominator > 1 and f.denominator <= N
    ]
    for f in candidates:
        if pow(x, f.denominator, N) == 1:
            return f, _reduce_order(x, N, f.denominator)
    for f in candidates:
        for r in range(2 * f.denominator, N + 1, f.denominator):
            if pow(x, r, N) == 1:
                return f, _reduce_order(x, N, r)
    return Fraction(outcome, 1 << t).limit_denominator(N), None


def multiplier_table(q: int, N: int, width: int) -> list[int]:
    """M(q)|i> = |i q mod N> for i < N, identity above."""
    return [(i * q) % N if i < N else i for i in range(1 << width)]


# -- order finding --------------------------------------------------------------------


@dataclass(frozen=True)
class OrderFindingResult:
    phase_bits: BitSet
    estimate: Fraction
    order: Optional[int]

    @property
    def outcome(self) -> int:
        return int(self.phase_bits)


def phase_register_size(n: int, epsilon: float) -> int:
    return n + math.ceil(math.log2(1 + 1 / (2 * epsilon)))


def _check_order_inputs(x: int, N: int) -> None:
    if not 1 < x < N:
        raise ValueError("order finding needs 1 < x < N")
    if math.gcd(x, N) != 1:
        raise ValueError(f"x={x} and N={N} are not coprime")


def prepare_order_finding(x: int, N: int, n: int, epsilon: float,
                          session: Session) -> tuple[Register, Register]:
    """Run the phase-estimation circuit up to, not including, the measurement.

    Returns the (phase, eigen) registers. Phase qubit i controls
    M(x^(2^i)) and so carries weight 2^i. The inverse Fourier transform
    is applied to the phase register so that it reads s 2^t / r directly.
    """
    _check_order_inputs(x, N)
    t = phase_register_size(n, epsilon)
    m = math.ceil(math.log2(N))
    controlled_multiply = []
    q = x
    for _ in range(t):
        controlled_multiply.append(controlled(oracle_perm(multiplier_table(q, N, m), m), 1))
        q = (q * q) % N
    mixer = hadamard(t)
    phase = session.allocate(t)
    eigen = session.allocate(m, 1)
    mixer(phase)
    for i in range(t):
        with phase[i] as control, control & eigen as lines:
            controlled_multiply[i](lines)
    readout = phase.reversed()
    fourier(t).adjoint()(readout)
    readout.release()
    return phase, eigen


def run_order_finding(x: int, N: int, n: int, epsilon: float,
                      session: Session) -> OrderFindingResult:
    phase, eigen = prepare_order_finding(x, N, n, epsilon, session)
    bits = phase.measure()
    phase.release()
    eigen.release()
    estimate, order = order_from_phase(int(bits), len(bits), x, N)
    return OrderFindingResult(bits, estimate, order)


# -- Grover search --------------------------------------------------------------------


def grover_repetitions(n: int) -> int:
    # floor(sqrt(2^n)) rather than the optimal floor(pi/4 sqrt(2^n))
    return math.isqrt(1 << n)


def grover_step(p_table: Predicate, n: int) -> Operator:
    """Phase oracle followed by the inversion about the mean."""
    phase_oracle = oracle_phase(p_table, n)
    invert_zero = oracle_phase(lambda v: v == 0, n)
    mixer = hadamard(n)
    invert_mean = mixer & invert_zero & mixer
    return phase_oracle & invert_mean


def prepare_grover(p_table: Predicate, n: int, session: Session,
                   iterations: Optional[int] = None) -> Register:
    """Everything up to the final measurement; returns the input register."""
    if not callable(p_table) and len(p_table) != 1 << n:
        raise ValueError(f"predicate table needs {1 << n} entries, got {len(p_table)}")
    repetitions = grover_repetitions(n) if iterations is None else iterations
    if repetitions < 0:
        raise ValueError("iteration count must be non-negative")
    step = grover_step(p_table, n)
    mixer = hadamard(n)
    reg = session.allocate(n)
    mixer(reg)
    for _ in range(repetitions):
        step(reg)
    return reg


def run_grover(p_table: Predicate, n: int, session: Session,
               iterations: Optional[int] = None) -> BitSet:
    reg = prepare_grover(p_table, n, session, iterations)
    result = reg.measure()
    reg.release()
    return result

