"""Exception hierarchy shared by all modules; the CLI maps each to an exit code."""


class QlieError(Exception):
    exit_code = 1


class InputError(QlieError, ValueError):
    """Malformed or out-of-domain input."""

    exit_code = 2


class ResourceError(QlieError):
    """A configured size bound (dimension, field size) was exceeded."""

    exit_code = 3


class ValidationError(QlieError):
    """A checked identity failed."""

    exit_code = 1


class InternalError(QlieError, RuntimeError):
    exit_code = 1
