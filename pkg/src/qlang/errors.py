"""Exception hierarchy shared by every qlang module."""


class QlangError(Exception):
    """Base class for all errors raised by qlang."""


class CapacityError(QlangError):
    """The device has fewer free qubits than requested."""


class RegisterError(QlangError, ValueError):
    """Malformed register: duplicate addresses, bad ranges, dead handles."""


class OperatorError(QlangError, ValueError):
    """Malformed time slice or operator construction arguments."""


class SessionError(QlangError):
    """An operation needed an execution session and none was attached."""


class BackendError(QlangError):
    """The device (or simulator) rejected an instruction."""
