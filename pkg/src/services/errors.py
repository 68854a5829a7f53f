"""
Engine Errors
Exception hierarchy shared by the diagram, skein and invariant services
"""


class LinkEngineError(Exception):
    """Base error; `code` is the stable name reported by the CLI."""

    code = "LinkEngineError"


class InputError(LinkEngineError):
    """Caller supplied something the engine cannot accept (exit code 2)."""

    code = "InputError"


class InternalError(LinkEngineError):
    code = "InternalError"


# ============================================================================
# PARSING AND VALIDATION
# ============================================================================

class EmptyInput(InputError):
    code = "EmptyInput"


class MalformedTerm(InputError):
    code = "MalformedTerm"


class DuplicateArcUse(InputError):
    """An arc label does not occur exactly twice."""
    code = "DuplicateArcUse"


class BrokenCycle(InputError):
    """Arc successor relation is not a permutation."""
    code = "BrokenCycle"


class OrientationConflict(InputError):
    """Crossing tags disagree with the slot rotation."""
    code = "OrientationConflict"


# ============================================================================
# SURGERY
# ============================================================================

class NoSuchCrossing(InputError):
    code = "NoSuchCrossing"


class SingularMixedCrossing(InputError):
    code = "SingularMixedCrossing"


class EmptyKeepSet(InputError):
    code = "EmptyKeepSet"


class SingularBoundary(InputError):
    code = "SingularBoundary"


class IndexOutOfRange(InputError):
    code = "IndexOutOfRange"


class BadSite(InputError):
    code = "BadSite"


class UnsupportedN(InputError):
    code = "UnsupportedN"


# ============================================================================
# INVARIANTS
# ============================================================================

class SingularInput(InputError):
    code = "SingularInput"


class SingleComponent(InputError):
    code = "SingleComponent"


class TruncationTooSmall(InputError):
    code = "TruncationTooSmall"


class WrongComponentCount(InputError):
    code = "WrongComponentCount"


class BadSingularity(InputError):
    """Double point is not a self-intersection of component 1."""
    code = "BadSingularity"


class ConstraintViolated(InputError):
    code = "ConstraintViolated"


# ============================================================================
# CORPUS AND SAMPLING
# ============================================================================

class UnknownName(InputError):
    code = "UnknownName"


class ParamOutOfRange(InputError):
    code = "ParamOutOfRange"


class SamplerExhausted(InputError):
    code = "SamplerExhausted"


class InternalMismatch(InternalError):
    """Two evaluation paths disagree; a convention bug, not a user error."""
    code = "InternalMismatch"


class EvaluatorFailure(InternalError):
    code = "EvaluatorFailure"
