"""Exception taxonomy.

Two branches: ValidationError for inputs that are malformed or outside the
supported parameter space (CLI exit code 1), and NumericalError for
computations that started from valid inputs but could not be completed
reliably (CLI exit code 2).
"""


class XFeketeError(Exception):
    """Base class for all package errors."""


class ValidationError(XFeketeError):
    """Invalid input or unsupported parameter combination."""


class InvalidFamily(ValidationError):
    """Unknown polynomial family tag."""


class DegreeCollapse(ValidationError):
    """A polynomial whose leading coefficient vanishes at the requested
    parameters, so it does not have the nominal degree."""


class NumericalError(XFeketeError):
    """A numerical procedure failed to meet its reliability contract."""


class NoSignChange(NumericalError):
    """A bracketing scan found no sign change in the search window."""


class SeriesDivergence(NumericalError):
    """A power series failed to converge within the term cap."""


class SingularEvaluation(NumericalError):
    """Evaluation requested too close to a zero of the denominator."""


class PoleEvaluation(NumericalError):
    """Weight or potential evaluation at a pole of the log-derivative."""


class NullspaceDefect(NumericalError):
    """The linear system defining the polynomial is rank deficient beyond
    the expected one-dimensional solution space, or the computed solution
    leaves an unexpectedly large residual."""


class RepresentationOverflow(NumericalError):
    """The coefficient vector spans more orders of magnitude than binary64
    can hold under the requested normalization."""


class CountMismatch(NumericalError):
    """Root finding produced the wrong number of zeros, or zeros landed
    inside the classification margin around the orthogonality interval."""


class DeflationInstability(NumericalError):
    """Deflating known roots perturbed the quotient beyond tolerance."""


class CoincidentNodes(NumericalError):
    """Two nodes closer than resolution allows."""


class NonConvergence(NumericalError):
    """Iteration budget exhausted.  Carries the iteration trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace if trace is not None else []


class DomainEscape(NumericalError):
    """Step-size control could not keep the iterate feasible."""
