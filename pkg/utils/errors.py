"""
╔══════════════════════════════════════════╗
║       ROTDIFF — Utilities: Errors        ║
╚══════════════════════════════════════════╝

Exception hierarchy. Every error carries the CLI exit code
it maps to (2 usage, 3 precision/horizon, 4 internal).
"""


INTERNAL_ERROR_EXIT = 4


class RotdiffError(Exception):
    """Base class for all rotdiff failures."""

    exit_code = 2

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context

    def to_dict(self):
        return {"error": type(self).__name__, "message": str(self), **self.context}


class UsageError(RotdiffError):
    """Malformed command line or configuration."""


class ConfigError(RotdiffError):
    """Configuration violates a standing hypothesis (e.g. mean(psi) != 0)."""


class QuotientsExhaustedError(RotdiffError):
    """An explicit partial-quotient list is shorter than the requested index."""

    def __init__(self, requested, available):
        super().__init__(
            f"index {requested} exceeds the {available} provided partial quotients",
            requested=requested, available=available,
        )


class InsufficientPrecisionError(RotdiffError):
    """A certified comparison could not be decided at the given precision."""

    exit_code = 3

    def __init__(self, message, required_order=None, required_bits=None):
        super().__init__(message, required_order=required_order, required_bits=required_bits)
        self.required_order = required_order
        self.required_bits = required_bits


class ShadowNotCertifiedError(RotdiffError):
    """An iterate count exceeds the horizon the shadow rational was certified for."""

    exit_code = 3

    def __init__(self, requested, horizon):
        super().__init__(
            f"shadow not certified: {requested} iterates requested, horizon is {horizon}",
            required_horizon=requested, horizon=horizon,
        )
        self.required_horizon = requested


class HorizonExhaustedError(RotdiffError):
    """A search ran past the certified horizon before finding what it needed."""

    exit_code = 3
