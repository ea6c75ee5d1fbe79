"""Exception types shared across the package (the CLI maps them to exit codes)."""


class BugTrap(AssertionError):
    """An exactness assertion failed: formula misuse or an internal bug."""


class BadPoint(ArithmeticError):
    """An evaluation node hit a vanishing denominator."""


class VerificationError(ArithmeticError):
    """An interpolant disagreed with a direct evaluation."""
