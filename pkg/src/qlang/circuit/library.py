"""
Primitive and macro operator constructors, and the pseudo-classical oracles.

Gate circuits are expressed over the elementary set {H, R_k, C_{R_k}}
with R_k = diag(1, exp(2 pi i / 2^k)) (conjugated for negative k).
Constructors return raw slice sequences; simplification only kicks in
when operators are composed.
"""
from __future__ import annotations

from collections.abc import Callable, Sequence

from ..errors import OperatorError
from .operator import Operator
from .slices import (
    CLASSICAL_SWAP,
    HADAMARD,
    CondPhase,
    Phase,
    PermOracle,
    PhaseOracle,
    TimeSlice,
    XorOracle,
)


def _lines(n: int) -> tuple[int, ...]:
    if n < 1:
        raise OperatorError("operators act on at least one line")
    return tuple(range(n))


def _same_length(*lists: Sequence[int]) -> None:
    if len({len(lst) for lst in lists}) != 1:
        raise OperatorError("index lists must have the same length")


# -- slice-level building blocks (shared with the controlled-circuit code) ----


def h_slice(lines: Sequence[int]) -> TimeSlice:
    return TimeSlice(HADAMARD, (tuple(lines),))


def r_slice(k: int, lines: Sequence[int]) -> TimeSlice:
    return TimeSlice(Phase(k), (tuple(lines),))


def cr_slice(k: int, controls: Sequence[int], targets: Sequence[int]) -> TimeSlice:
    return TimeSlice(CondPhase(k), (tuple(controls), tuple(targets)))


def cnot_slices(controls: Sequence[int], targets: Sequence[int]) -> list[TimeSlice]:
    """X = H R_1 H on the targets, with the R_1 controlled."""
    _same_length(controls, targets)
    return [h_slice(targets), cr_slice(1, controls, targets), h_slice(targets)]


def controlled_h_slices(controls: Sequence[int], targets: Sequence[int]) -> list[TimeSlice]:
    """Phase-exact controlled Hadamard, six slices.

    H = exp(-i pi/4) R_2 H R_2 H R_2: the three R_2 become controlled and
    the global phase goes onto the control line as R_3 adjoint.
    """
    _same_length(controls, targets)
    return [
        cr_slice(2, controls, targets),
        h_slice(targets),
        cr_slice(2, controls, targets),
        h_slice(targets),
        cr_slice(2, controls, targets),
        r_slice(-3, controls),
    ]


def doubly_controlled_phase_slices(
    k: int, c1: Sequence[int], c2: Sequence[int], targets: Sequence[int]
) -> list[TimeSlice]:
    """C_{C_{R_k}} in 17 slices of constant depth.

    On the target line, H C_{R_1} H is a NOT controlled by c1 (or c2); the
    sequence X R_{k+2}^dag X R_{k+2} leaves phi_{k+2}^* R_{k+1}, whose square
    times phi_{k+1} is R_k. The last C_{R_{k+1}} between the two controls
    supplies that phi_{k+1}. Negative k conjugates every parameter.
    """
    if k == 0:
        raise OperatorError("phase shift parameter k must be non-zero")
    _same_length(c1, c2, targets)
    sign, mag = (1 if k > 0 else -1), abs(k)
    out: list[TimeSlice] = []
    for ctl, rot in ((c1, -1), (c2, 1), (c1, -1), (c2, 1)):
        out += [
            h_slice(targets),
            cr_slice(1, ctl, targets),
            h_slice(targets),
            r_slice(rot * sign * (mag + 2), targets),
        ]
    out.append(cr_slice(sign * (mag + 1), c1, c2))
    return out


def toffoli_slices(c1: Sequence[int], c2: Sequence[int], targets: Sequence[int]) -> list[TimeSlice]:
    return [h_slice(targets)] + doubly_controlled_phase_slices(1, c1, c2, targets) + [h_slice(targets)]


def swap_as_cnots(first: Sequence[int], second: Sequence[int]) -> list[TimeSlice]:
    """The hardware form of a line exchange: three CNOTs."""
    return cnot_slices(first, second) + cnot_slices(second, first) + cnot_slices(first, second)


# -- public constructors ----------------------------------------------------------


def hadamard(n: int) -> Operator:
    return Operator([h_slice(_lines(n))])


def phase(n: int, k: int) -> Operator:
    return Operator([r_slice(k, _lines(n))])


def cond_phase(count: int, k: int) -> Operator:
    """`count` parallel C_{R_k}, line j paired with line j + count.

    The gate is diagonal so which end counts as control is immaterial; the
    slice lists the upper line first.
    """
    lower = _lines(count)
    return Operator([cr_slice(k, [j + count for j in lower], lower)])


def cnot(controls: Sequence[int], targets: Sequence[int]) -> Operator:
    return Operator(cnot_slices(controls, targets))


def toffoli(c1: Sequence[int], c2: Sequence[int], targets: Sequence[int]) -> Operator:
    return Operator(toffoli_slices(c1, c2, targets))


def swap(n: int) -> Operator:
    """Reverse the first n lines. Executed classically, no gates reach the device."""
    if n < 1:
        raise OperatorError("operators act on at least one line")
    half = n // 2
    if half == 0:
        return Operator()
    return Operator([TimeSlice(CLASSICAL_SWAP, (tuple(range(half)), tuple(n - 1 - i for i in range(half))))])


def fourier_core(n: int) -> list[TimeSlice]:
    """H and C_{R_2}..C_{R_{j+1}} cascade, line 0 first; no final reversal."""
    out = []
    for a in _lines(n):
        out.append(h_slice([a]))
        for b in range(a + 1, n):
            out.append(cr_slice(b - a + 1, [a], [b]))
    return out


def fourier(n: int) -> Operator:
    """Quantum Fourier transform on n lines, line 0 the most significant.

    The cascade is followed by a classical line reversal, so composing
    with ``swap(n)`` leaves only the cascade after simplification.
    """
    return Operator(fourier_core(n) + swap(n).slices)


def lower_swaps(op: Operator) -> Operator:
    """Replace classical swap slices by their 3-CNOT hardware expansion."""
    out: list[TimeSlice] = []
    for s in op.slices:
        if s.kind.opcode == "SWAP":
            out += swap_as_cnots(*s.lists)
        else:
            out.append(s)
    return Operator(out)


# -- oracles --------------------------------------------------------------------


def _table(f, size: int) -> list:
    return [f(x) for x in range(size)] if callable(f) else list(f)


def oracle_xor(f_table: Sequence[int] | Callable[[int], int], n: int, m: int) -> Operator:
    """|x>|y> -> |x>|y xor f(x)>: x on lines 0..n-1, y on lines n..n+m-1 (LSB first)."""
    kind = XorOracle(n, m, _table(f_table, 1 << n))
    return Operator([TimeSlice(kind, (tuple(range(n + m)),))])


def oracle_phase(p_table: Sequence[bool] | Callable[[int], bool], n: int) -> Operator:
    """|x> -> (-1)^f(x) |x>."""
    kind = PhaseOracle(n, _table(p_table, 1 << n))
    return Operator([TimeSlice(kind, (tuple(range(n)),))])


def oracle_perm(bijection: Sequence[int] | Callable[[int], int], width: int) -> Operator:
    """|i> -> |table[i]> for a bijective table over 2**width basis states."""
    kind = PermOracle(width, _table(bijection, 1 << width))
    return Operator([TimeSlice(kind, (tuple(range(width)),))])
