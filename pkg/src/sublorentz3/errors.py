"""Exception types shared across the package."""


class SubLorentzError(Exception):
    """Base class for all errors raised by this package."""


class SingularMatrix(SubLorentzError):
    """Basis-change matrix is singular or violates the conditioning guard."""


class NotInvariantSubspace(SubLorentzError):
    """ad_x does not map the given subspace into itself."""


class NotALieAlgebra(SubLorentzError):
    """Jacobi defect exceeds the tolerance on a classification path."""


class SignatureMismatch(SubLorentzError):
    """Metric on the distribution does not have signature (-, +)."""


class DegenerateDistribution(SubLorentzError):
    """The two distribution vectors are linearly dependent."""


class ContactViolation(SubLorentzError):
    """[X1, X2] lies in the distribution, so it is not contact."""


class ReebSolveFailure(SubLorentzError):
    """The linear system defining the Reeb vector is singular or inconsistent."""


class NotDefined(SubLorentzError):
    """Requested invariant is undefined for this structure (precondition fails)."""


class BadParameter(SubLorentzError):
    """Canonical-model parameter outside its admissible range."""


class InfeasibleParameters(SubLorentzError):
    """Requested invariants violate the constraints of the chosen solution branch."""


class JacobiViolation(NotALieAlgebra):
    """Classification was asked for a bracket tensor that is not a Lie algebra."""


class NotContact(ContactViolation):
    """Classification was asked for a structure without a contact distribution."""


class DocumentError(SubLorentzError):
    """A structure document is malformed."""
