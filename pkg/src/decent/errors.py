"""Shared exception types and validation diagnostics."""

from __future__ import annotations

from dataclasses import dataclass


class DesignCalcError(Exception):
    """Base class for every domain error raised by this package."""


@dataclass(frozen=True)
class Violation:
    """One validation finding: a stable code, a human message, a location."""

    code: str
    message: str
    where: str | None = None

    def __str__(self) -> str:
        if self.where:
            return f"{self.code} at {self.where}: {self.message}"
        return f"{self.code}: {self.message}"


class ValidationError(DesignCalcError):
    """Carries every violation found, not just the first."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


class ParseError(DesignCalcError):
    """Malformed input text; message carries line/field when known."""


class IndexOutOfRange(DesignCalcError):
    pass


class ShapeMismatch(DesignCalcError):
    pass


class InputNotInDomain(DesignCalcError):
    pass


class MissingProgramEntry(DesignCalcError):
    pass


class FanInTooLarge(DesignCalcError):
    pass


class BadWeights(DesignCalcError):
    pass


class NonInjectiveCoding(DesignCalcError):
    pass


class LengthOverflow(DesignCalcError):
    pass


class NoImplementingDesignWithinBounds(DesignCalcError):
    pass


class CandidateCapExceeded(DesignCalcError):
    pass


class LagExceedsHorizon(DesignCalcError):
    pass
