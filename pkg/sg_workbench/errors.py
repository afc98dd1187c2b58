"""Exceptions raised by the workbench.

Input errors map to exit code 2, invariant breaches to exit code 3.
Search outcomes (budget, inconclusive decomposition, finite pd) are
ordinary exceptions that callers are expected to handle.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class InputError(WorkbenchError, ValueError):
    """Malformed or inconsistent input data."""


class NonAdmissible(InputError):
    """A relation involves a path of length < 2."""


class NotFiniteDimensional(InputError):
    """J^N != 0 under the declared nilpotency bound."""


class NotAssociative(InputError):
    """Structure constants fail associativity."""


class BadIdempotents(InputError):
    """Idempotents are not orthogonal, complete or homogeneous."""


class SplitFailure(InputError):
    """The semisimple part is not a subalgebra or J is not an ideal."""


class NonBasicUnsupported(InputError):
    """The semisimple part is a matrix algebra of size > 1."""


class CutoffTooSmall(InputError):
    """A cutoff does not leave room for the stabilization window."""


class InvalidDocument(InputError):
    """A JSON document does not follow the expected schema."""


class BudgetExceeded(WorkbenchError):
    """Randomized search was inconclusive and no fallback was allowed."""


class DecompositionInconclusive(WorkbenchError):
    """No splitting endomorphism found within the eigenvalue scan."""


class RejectFinitePd(WorkbenchError):
    """The module has finite projective dimension."""

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class StageTooLarge(WorkbenchError):
    """A stable Hom stage exceeds the configured cell guard."""


class InvariantBreach(WorkbenchError):
    """An internal invariant failed; indicates a bug."""


class TransportFailure(InvariantBreach):
    """Re-verification of a transported closure certificate failed."""


class ConfluenceFailure(InvariantBreach):
    """A critical pair of the rewriting system does not resolve."""

    def __init__(self, message, critical_pair=None):
        super().__init__(message)
        self.critical_pair = critical_pair


class RewriteBudget(InvariantBreach):
    """Normal form computation exceeded its step budget."""


class AxiomFailure(InvariantBreach):
    """A dg axiom or structural identity does not hold."""

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class TheoremViolation(InvariantBreach):
    """A certified Gamma entry vanishes for a virtually periodic module."""


class CrosscheckMismatch(InvariantBreach):
    """Exact cohomology disagrees with a certified Gamma entry."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
