"""Error types carrying a module tag, a remediation hint and a CLI exit code."""
from __future__ import annotations


class TranslatticeError(Exception):
    exit_code = 1
    module = "translattice"

    def __init__(self, message: str, *, module: str | None = None, hint: str | None = None):
        super().__init__(message)
        if module is not None:
            self.module = module
        self.hint = hint

    def describe(self) -> str:
        text = f"[{self.module}] {self}"
        if self.hint:
            text += f"\n  hint: {self.hint}"
        return text


class InputError(TranslatticeError):
    exit_code = 1


class CertificateError(TranslatticeError):
    """A numerical certificate could not be established."""

    exit_code = 2


class AssumptionViolation(TranslatticeError):
    """The input violates a hypothesis of the method (e.g. a non-ordinary critical fiber)."""

    exit_code = 3


class PlannerError(CertificateError):
    module = "geometry"


class TrackingError(CertificateError):
    module = "geometry"
