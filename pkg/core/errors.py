"""
Workbench Errors

Exception types shared by the engines and mapped to exit codes by the cli.
"""


class WorkbenchError(Exception):
    """Base class for workbench failures."""


class ResourceCapExceeded(WorkbenchError):
    """A configured resource cap (partitions, slice dimension, weights) was exceeded."""

    def __init__(self, what: str, value: int, cap: int):
        self.what = what
        self.value = value
        self.cap = cap
        super().__init__(f"{what}: {value} exceeds cap {cap}")


class TruncationError(WorkbenchError):
    """A module operation would leave the truncated range of degrees."""

    def __init__(self, degree: int, truncation: int):
        self.degree = degree
        self.truncation = truncation
        super().__init__(f"degree {degree} exceeds truncation N={truncation}")


class VerificationFailure(WorkbenchError):
    """An identity checked by a verifier did not hold."""
