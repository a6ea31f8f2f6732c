"""The quantum operator: a circuit stored as an ordered list of time slices."""
from __future__ import annotations

from collections.abc import Callable, Iterable
from typing import TYPE_CHECKING

from .. import simplify as _simplify
from ..errors import OperatorError
from .slices import TimeSlice

if TYPE_CHECKING:
    from ..memory import Register


class Operator:
    """A circuit definition that can be composed, permuted and applied.

    Composition follows circuit order: in ``a & b`` the slices of `a` run
    first. Mutating methods return ``self`` so they chain like
    ``op.offset(2).invert(2, 3).split(2, 3)``.
    """

    def __init__(self, slices: Iterable[TimeSlice] = ()):
        self.slices: list[TimeSlice] = list(slices)

    # -- shape ---------------------------------------------------------------

    @property
    def width(self) -> int:
        """1 + the largest visible line index (0 for the identity)."""
        return 1 + max((i for s in self.slices for i in s.indices() if i >= 0), default=-1)

    @property
    def ancillae(self) -> int:
        """Number of ancilla lines the operator borrows while it runs."""
        return max((-i for s in self.slices for i in s.indices() if i < 0), default=0)

    @property
    def depth(self) -> int:
        return len(self.slices)

    def gate_count(self) -> int:
        return _simplify.gate_count(self.slices)

    def is_identity(self) -> bool:
        return not self.slices

    def copy(self) -> Operator:
        return Operator(self.slices)

    def __len__(self) -> int:
        return len(self.slices)

    def __iter__(self):
        return iter(self.slices)

    def __eq__(self, other) -> bool:
        if isinstance(other, Operator):
            return self.slices == other.slices
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"Operator(width={self.width}, slices={len(self.slices)})"

    # -- composition -----------------------------------------------------------

    def _settle(self) -> Operator:
        if _simplify.embedding_enabled():
            self.slices, _ = _simplify.simplify_slices(self.slices)
        return self

    def compose(self, other: Operator) -> Operator:
        """New operator running `self` then `other`; both stay untouched."""
        return Operator(self.slices + other.slices)._settle()

    def augment(self, other: Operator) -> Operator:
        self.slices = self.slices + other.slices
        return self._settle()

    def splice(self, other: Operator) -> Operator:
        """Move every slice of `other` to the end of `self`; `other` becomes the identity."""
        if other is self:
            raise OperatorError("cannot splice an operator into itself")
        moved, other.slices = other.slices, []
        self.slices.extend(moved)
        return self._settle()

    __and__ = compose
    __iand__ = augment
    __lshift__ = splice

    # -- conjugation -------------------------------------------------------------

    def adjoin(self) -> Operator:
        self.slices = [s.adjoint() for s in reversed(self.slices)]
        return self

    def adjoint(self) -> Operator:
        return self.copy().adjoin()

    __invert__ = adjoint

    # -- line permutations -------------------------------------------------------

    def _remap(self, fn: Callable[[int], int]) -> Operator:
        # ancilla lines (negative) are never moved
        self.slices = [s.remap(lambda i: fn(i) if i >= 0 else i) for s in self.slices]
        return self

    def split(self, head: int, jump: int) -> Operator:
        """Keep lines below `head`, shift the others down by `jump`."""
        if head < 0 or jump < 0:
            raise OperatorError("split arguments must be non-negative")
        return self._remap(lambda i: i if i < head else i + jump)

    def invert(self, head: int, size: int) -> Operator:
        """Reverse the `size` lines starting at `head`."""
        if head < 0 or size < 0:
            raise OperatorError("invert arguments must be non-negative")
        return self._remap(lambda i: 2 * head + size - 1 - i if head <= i < head + size else i)

    def offset(self, jump: int) -> Operator:
        return self.split(0, jump)

    def with_split(self, head: int, jump: int) -> Operator:
        return self.copy().split(head, jump)

    def with_invert(self, head: int, size: int) -> Operator:
        return self.copy().invert(head, size)

    def with_offset(self, jump: int) -> Operator:
        return self.copy().offset(jump)

    __rshift__ = with_offset

    # -- execution ---------------------------------------------------------------

    def __call__(self, register: Register) -> None:
        apply(self, register)


def identity() -> Operator:
    return Operator()


def apply(op: Operator, register: Register) -> None:
    """Emit byte-code for `op` acting on `register`'s qubits."""
    register._session().run(op, register)
