"""Exception types shared across the workbench."""

from __future__ import annotations


class OracleBenchError(Exception):
    """Base class for all workbench errors."""


class ContradictorySample(OracleBenchError):
    """A sample labels the same point both 0 and 1."""


class NonRealizable(OracleBenchError):
    """No hypothesis in the class is consistent with the sample."""


class OracleFailure(OracleBenchError):
    """The consistent oracle could not answer; the opponent played illegally."""


class EmptyClass(OracleBenchError):
    """A hypothesis class must contain at least one hypothesis."""


class EmptyVersionSpace(OracleBenchError):
    """The version space ran empty; the label history was not realizable."""


class IllegalLabel(OracleBenchError):
    """A label was revealed that no remaining hypothesis can produce."""


class SizeLimitExceeded(OracleBenchError):
    """Input exceeds the guard for an exponential-time check."""


class InsufficientAgreement(OracleBenchError):
    """Fewer voters agree with the majority prediction than the vote rule
    guarantees; indicates an internal bug, not bad input."""


class ScheduleViolation(OracleBenchError):
    """A voting procedure was entered with fewer active functions than its
    vote width; indicates an internal bug in the procedure schedule."""


class RepeatedActiveFunction(OracleBenchError):
    """An oracle answer extensionally equals a function already on the
    active list."""


class IllegalAdversaryFunction(OracleBenchError):
    """The adversary revealed a function inconsistent with the game history."""


class DimensionViolation(OracleBenchError):
    """The adversary's revealed functions exceed the declared dimension bound."""


class InconsistentOracleClass(OracleBenchError):
    """Observed labels contradict every function in the assumed class."""


class ClassFileError(OracleBenchError):
    """A hypothesis-class file is malformed."""
