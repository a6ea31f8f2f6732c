"""
Qubit address space management.

The address manager keeps a usage count per qubit address of a fixed
capacity device. A Register is an ordered list of distinct addresses;
several registers may reference the same address, and an address goes
back to the free pool only when its last referencing register lets go.

Allocation is lowest-address-first so that identical programs produce
identical address assignments (and identical byte-code).
"""
from __future__ import annotations

import heapq
from collections.abc import Iterable, Sequence
from typing import TYPE_CHECKING, Union

from .errors import CapacityError, RegisterError, SessionError

if TYPE_CHECKING:
    from .session import Session

WORD_BITS = 64


class BitSet(Sequence):
    """Ordered bits, index 0 is the least significant one."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[Union[bool, int]] = ()):
        self._bits = tuple(bool(b) for b in bits)

    @classmethod
    def from_int(cls, value: int, width: int) -> BitSet:
        if width < 1:
            raise ValueError("a bit set needs at least one bit")
        if value < 0 or value >> width:
            raise ValueError(f"value {value} does not fit in {width} bits")
        return cls((value >> i) & 1 for i in range(width))

    @classmethod
    def coerce(cls, value: Union[BitSet, int, Iterable], width: int) -> BitSet:
        """Turn an int or a bit sequence into a BitSet of exactly `width` bits."""
        if isinstance(value, int):
            return cls.from_int(value, width)
        bits = value if isinstance(value, BitSet) else cls(value)
        if len(bits) != width:
            raise ValueError(f"expected {width} bits, got {len(bits)}")
        return bits

    def __int__(self) -> int:
        if len(self._bits) > WORD_BITS:
            raise OverflowError(f"{len(self._bits)} bits do not fit in a {WORD_BITS}-bit word")
        return sum(1 << i for i, b in enumerate(self._bits) if b)

    __index__ = __int__

    def __len__(self) -> int:
        return len(self._bits)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return BitSet(self._bits[i])
        return self._bits[i]

    def __eq__(self, other) -> bool:
        if isinstance(other, BitSet):
            return self._bits == other._bits
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._bits)

    def __str__(self) -> str:
        # least significant bit first, same as the INIT byte-code field
        return "".join("1" if b else "0" for b in self._bits)

    def __repr__(self) -> str:
        return f"BitSet('{self}')"


class AddressManager:
    """Usage counts and the free pool of a device with `capacity` qubits."""

    def __init__(self, capacity: int, session: Session | None = None):
        if capacity < 1:
            raise ValueError("device capacity must be positive")
        self.capacity = capacity
        self.session = session
        self.usage = [0] * capacity
        self._free = list(range(capacity))  # min-heap

    @property
    def free_pool(self) -> list[int]:
        return sorted(self._free)

    def take(self, size: int) -> list[int]:
        """Reserve `size` free addresses (ascending) with usage count 1."""
        if size < 1:
            raise RegisterError("a register has at least one qubit")
        if size > len(self._free):
            raise CapacityError(f"requested {size} qubits, only {len(self._free)} free")
        taken = [heapq.heappop(self._free) for _ in range(size)]
        for a in taken:
            self.usage[a] = 1
        return taken

    def acquire(self, addresses: Iterable[int]) -> None:
        for a in addresses:
            if self.usage[a] == 0:
                raise RegisterError(f"address {a} is not allocated")
            self.usage[a] += 1

    def release(self, addresses: Iterable[int]) -> list[int]:
        """Drop one reference per address; returns the addresses that became free."""
        freed = []
        for a in addresses:
            if self.usage[a] == 0:
                raise RegisterError(f"address {a} released more times than referenced")
            self.usage[a] -= 1
            if self.usage[a] == 0:
                heapq.heappush(self._free, a)
                freed.append(a)
        if freed and self.session is not None:
            self.session.reset_freed(freed)
        return freed


class Register:
    """An interface to a portion of the device: distinct addresses in order.

    Registers built by selection or concatenation share addresses with
    their sources. Call `release()` (or use the register as a context
    manager) to give the addresses back.
    """

    def __init__(self, manager: AddressManager, addresses: Sequence[int], *, _owned: bool = False):
        addresses = tuple(int(a) for a in addresses)
        if not addresses:
            raise RegisterError("a register has at least one qubit")
        if len(set(addresses)) != len(addresses):
            raise RegisterError(f"duplicate address in register {addresses}")
        for a in addresses:
            if not 0 <= a < manager.capacity:
                raise RegisterError(f"address {a} outside device of {manager.capacity} qubits")
        if not _owned:
            manager.acquire(addresses)
        self.manager = manager
        self._addresses = addresses
        self._live = True

    @property
    def addresses(self) -> tuple[int, ...]:
        self._check_live()
        return self._addresses

    @property
    def live(self) -> bool:
        return self._live

    def _check_live(self) -> None:
        if not self._live:
            raise RegisterError("register has been released")

    def size(self) -> int:
        return len(self.addresses)

    def __len__(self) -> int:
        return len(self.addresses)

    def __iter__(self):
        return iter(self.addresses)

    def __repr__(self) -> str:
        state = "" if self._live else ", released"
        return f"Register({list(self._addresses)}{state})"

    # -- addressing and concatenation -------------------------------------

    def qubit_at(self, i: int) -> Register:
        addrs = self.addresses
        if not 0 <= i < len(addrs):
            raise RegisterError(f"qubit index {i} out of range for register of {len(addrs)}")
        return Register(self.manager, (addrs[i],))

    def subrange(self, start: int, count: int) -> Register:
        addrs = self.addresses
        if count < 1 or start < 0 or start + count > len(addrs):
            raise RegisterError(f"range ({start}, {count}) invalid for register of {len(addrs)}")
        return Register(self.manager, addrs[start:start + count])

    def __getitem__(self, i):
        if isinstance(i, slice):
            start, stop, step = i.indices(len(self))
            if step != 1:
                raise RegisterError("register slices must be contiguous")
            return self.subrange(start, stop - start)
        return self.qubit_at(i)

    def __call__(self, start: int, count: int) -> Register:
        return self.subrange(start, count)

    def concatenate(self, other: Register) -> Register:
        if other.manager is not self.manager:
            raise RegisterError("cannot join registers of different devices")
        return Register(self.manager, self.addresses + other.addresses)

    __and__ = concatenate

    def reversed(self) -> Register:
        """Same qubits, opposite order (an "inverted" register)."""
        return Register(self.manager, self.addresses[::-1])

    # -- resizing and release ---------------------------------------------

    def grow(self, delta: int) -> Register:
        """Append `delta` fresh qubits at the end."""
        self._check_live()
        fresh = self.manager.take(delta)
        self._addresses = self._addresses + tuple(fresh)
        return self

    def shrink(self, delta: int) -> Register:
        """Drop `delta` qubits from the front; at least one must remain."""
        self._check_live()
        if delta < 0:
            raise RegisterError("cannot shrink by a negative amount")
        if delta >= len(self._addresses):
            raise RegisterError("shrinking would leave an empty register")
        dropped, self._addresses = self._addresses[:delta], self._addresses[delta:]
        self.manager.release(dropped)
        return self

    def __iadd__(self, delta: int) -> Register:
        return self.grow(delta)

    def __isub__(self, delta: int) -> Register:
        return self.shrink(delta)

    def release(self) -> None:
        if not self._live:
            return
        self._live = False
        self.manager.release(self._addresses)

    def __enter__(self) -> Register:
        return self

    def __exit__(self, *exc) -> None:
        self.release()

    # -- device interaction -----------------------------------------------

    def _session(self) -> Session:
        self._check_live()
        if self.manager.session is None:
            raise SessionError("register is not attached to an execution session")
        return self.manager.session

    def assign(self, value: Union[BitSet, int, Iterable]) -> None:
        """Re-prepare the register in the computational basis state `value`."""
        session = self._session()
        session.init(self._addresses, BitSet.coerce(value, len(self._addresses)))

    def measure(self) -> BitSet:
        """Blocking: flush pending byte-code and measure (bit i = qubit i)."""
        return self._session().measure(self._addresses)


def allocate_register(
    manager: AddressManager, size: int, initial_value: Union[BitSet, int, None] = None
) -> Register:
    if initial_value is not None:
        bits = BitSet.coerce(initial_value, size)
        if manager.session is None:
            raise SessionError("initialising a register needs an execution session")
    reg = Register(manager, manager.take(size), _owned=True)
    if initial_value is not None:
        reg.assign(bits)
    return reg
