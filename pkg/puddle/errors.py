"""
Exceptions raised by puddle.

Every exception derives from :class:`PuddleError` and also from the built-in
exception that best describes it, so callers who only care about
:obj:`ValueError` (for example) can keep catching that.
"""

from typing import Any, Optional, Tuple

class PuddleError(Exception):
    """Base class for all errors raised by this package."""

class ParameterError(PuddleError, ValueError):
    """
    An argument is outside the documented domain of an operation or a
    curve constructor. The message names the violated inequality.
    """

class CurveError(PuddleError, ValueError):
    """
    A curve failed validation.

    :param invariant: Which invariant was violated: one of ``'format'``,
      ``'segment'``, ``'finite'``, ``'closure'``, ``'turning'`` or
      ``'simple'``.
    :param index: The offending segment, where there is one.
    """
    def __init__(self, message: str, invariant: str, index: Optional[int] = None):
        if index is not None:
            message = f'{message} (segment {index})'
        super().__init__(f'{invariant}: {message}')
        self.invariant = invariant
        self.index = index

class BoundaryPointError(PuddleError, ValueError):
    """An interior test was asked about a point lying on the curve."""

class UnboundedIncircleError(PuddleError, ArithmeticError):
    """
    The incircle search grew past the bounding box of the curve. This only
    happens for a non-simple curve or one with the wrong orientation.
    """

class InvalidSpanError(PuddleError, ValueError):
    """The arc given to the lemma procedure touches the base circle inside."""

class NumericalFailure(PuddleError, ArithmeticError):
    """
    An iterative construction did not reach its target even at the relaxed
    tolerance.

    :param span: The final ``(t_lo, t_hi)`` span, for diagnostics.
    """
    def __init__(self, message: str, span: Optional[Tuple[float, float]] = None):
        super().__init__(message)
        self.span = span

class HypothesisError(PuddleError, ValueError):
    """
    A curve does not meet the hypotheses of the two-disk construction.

    :param hypothesis: ``'curvature'`` or ``'diameter'``.
    """
    def __init__(self, message: str, hypothesis: str):
        super().__init__(f'{hypothesis}: {message}')
        self.hypothesis = hypothesis

class CounterexampleAlert(PuddleError, RuntimeError):
    """
    A verified curve contradicts the two-disk theorem or the conjectured
    length/diameter implication. This is either a bug or a discovery, and is
    never silently accepted.

    :param audit: The audit record of the offending curve, if one was made.
    """
    def __init__(self, message: str, audit: Any = None):
        super().__init__(message)
        self.audit = audit

class GenerationError(PuddleError, RuntimeError):
    """Random curve generation exhausted its retry budget."""
