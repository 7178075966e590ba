"""Exception hierarchy for unitary-branching.

Every error raised by the library derives from BranchingError so the CLI can
report it uniformly. Intermediate classes group errors by concern.
"""


class BranchingError(Exception):
    """Base class for all library errors."""


# Parameters


class ParameterError(BranchingError):
    """Invalid field or run parameters."""


class EvenResidualChar(ParameterError):
    """Residual characteristic 2 is not supported."""


class EpsilonIsSquare(ParameterError):
    """The chosen epsilon is a square modulo p."""


class InvalidParameter(ParameterError):
    """A parameter is outside its admissible range."""


# Arithmetic


class ArithmeticFailure(BranchingError):
    """Ring arithmetic could not be carried out."""


class NonUnit(ArithmeticFailure):
    """Inversion of an element of positive valuation."""


class NotRational(ArithmeticFailure):
    """An element expected to lie in F has a nonzero omega component."""


class PrecisionExceeded(ArithmeticFailure):
    """A shifted product leaves the precision window of the truncation level."""


class ValuationViolation(ArithmeticFailure):
    """Input data violates a valuation precondition."""


# Levels and budgets


class LevelError(BranchingError):
    """The truncation level cannot support the request."""


class LevelTooLow(LevelError):
    """The object is not faithfully visible at the working level."""


class BudgetExceeded(LevelError):
    """The predicted enumeration exceeds the configured budget."""


class DepthTooLow(LevelError):
    """A truncation index is at or below the depth of the character."""


# Groups


class GroupError(BranchingError):
    """Structural problem with an enumerated group."""


class NotSubgroup(GroupError):
    """A table is not contained in the expected ambient group."""


class NotAbelian(GroupError):
    """An abelian structure was requested for a non-abelian group."""


class GroupMismatch(GroupError):
    """Two class functions live on different groups."""


class DomainNotNormal(GroupError):
    """The domain of a character is not normalized by the ambient group."""


# Characters


class CharacterError(BranchingError):
    """A character could not be constructed."""


class TrueDepthTooBig(CharacterError):
    """The character is nontrivial on the split torus filtration step."""


class IncompatibleOnIntersection(CharacterError):
    """Two characters disagree where a common extension needs them to agree."""


class NotRealizable(CharacterError):
    """No Lie algebra element realizes the character."""


# Decompositions


class DecompositionError(BranchingError):
    """A decomposition check failed."""


class BasisNotOrthonormal(DecompositionError):
    """Basis characters are not pairwise orthonormal."""


class DecompositionResidual(DecompositionError):
    """A decomposition leaves a residual above tolerance."""


class IrreducibilityFailed(DecompositionError):
    """A class function expected to be irreducible is not."""


class IdentificationFailed(DecompositionError):
    """Two constructions expected to agree do not."""


class ExpansionMismatch(DecompositionError):
    """The near-identity expansion does not hold at the tested level."""


# Lifting


class LiftError(BranchingError):
    """Hensel lifting could not be carried out."""


class PreconditionViolated(LiftError):
    """The element to lift does not satisfy the congruence hypotheses."""


class SystemInconsistent(LiftError):
    """The residue-field linear system has no solution."""


# Storage


class CacheError(BranchingError):
    """A cache file is corrupted or does not match the requested parameters."""
