"""Exception hierarchy shared by all modules and mapped to CLI exit codes."""


class MangleError(Exception):
    """Base class for every error raised by the package."""


class DomainError(MangleError):
    """A mathematical precondition failed; ``witness`` carries the evidence."""

    def __init__(self, message: str, witness: object = None) -> None:
        super().__init__(message)
        self.witness = witness


class RankDeficiencyError(DomainError):
    """The normal vectors of a presentation do not span the ambient space."""


class SizeCapError(DomainError):
    """A brute-force routine was asked to scan more than the configured cap."""


class InternalInvariantError(MangleError):
    """A proven identity failed to hold; this always signals a bug."""


class InputError(MangleError):
    """Malformed, unreadable, or schema-violating input."""
