"""Exception types shared across the toolkit."""


class SSUError(Exception):
    """Base class for all toolkit errors."""


class ParseError(SSUError):
    """Malformed instance document or expression."""


class UniverseMismatch(SSUError):
    """Operands belong to different vertex universes."""


class RegularityViolation(SSUError):
    """A vertex receives zero or infinitely many edges."""

    def __init__(self, vertex, message=None):
        self.vertex = vertex
        super().__init__(message or f"regularity violated at vertex {vertex!r}")


class SourceViolation(SSUError):
    """A vertex emits no edge (strict-mode check only)."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex!r} emits no edge")


class NonSingletonRange(SSUError):
    """An edge was declared with a non-singleton range."""


class InfiniteAnswer(SSUError):
    """The requested enumeration is infinite and not family-expressible."""


class ConstraintError(SSUError):
    """Quadruple violates the semigroup membership constraint."""


class NotIdempotent(SSUError):
    """An idempotent-only operation received a non-idempotent."""


class DomainError(SSUError):
    """Filter lies outside the domain of the requested partial map."""


class Unsupported(SSUError):
    """Operation not available for this universe or representation."""


class NontrivialCocycle(SSUError):
    """Crossed-product operations require the trivial cocycle."""


class ShapeMismatch(SSUError):
    """System does not structurally match the required example shape."""


class UnknownExample(SSUError):
    """No bundled example with that name."""


class ValidationError(SSUError):
    """A component failed its structural validation at load time."""
