"""Error types shared across the package.

DomainError and its subclasses signal mathematically degenerate inputs
(excluded loci, singular frames, pole hits).  Parse/shape problems stay
plain ValueError / TypeError.  The CLI maps DomainError to exit code 1 and
parse failures to exit code 2.
"""


class DomainError(Exception):
    """Input is syntactically fine but lies on an excluded locus."""


class DegenerateConfigError(DomainError):
    """Configuration hit a degeneracy; `prefix` holds the word prefix applied so far."""

    def __init__(self, message, prefix=()):
        super().__init__(message)
        self.prefix = tuple(prefix)


class SolveError(DomainError):
    """Projective solve failed: degenerate frame or inconsistent correspondences."""


class PoleError(DomainError):
    """Evaluation requested at (or too near) a pole."""
