"""
Error types raised by catcover.

All of them are ValueError subclasses so callers that only know about bad input
can keep catching ValueError.
"""


class CatCoverError(ValueError):
    """Base class for every input error raised by the library."""


class MalformedInputError(CatCoverError):
    """An object or file violates a structural invariant.

    The message always names the first invariant that failed.
    """


class UnsupportedInputError(CatCoverError):
    """Input is well formed but outside what an operation supports."""


class NoTrivializationError(CatCoverError):
    """A mapping-torus base piece spans every layer interface."""
