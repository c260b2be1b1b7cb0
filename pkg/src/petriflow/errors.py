"""Exception hierarchy shared by all petriflow modules."""

from __future__ import annotations


class PetriError(Exception):
    """Base class for every error raised by petriflow."""


class UnknownIdentifierError(PetriError, KeyError):
    def __init__(self, kind: str, ident: str):
        self.kind = kind
        self.ident = ident
        super().__init__(f"unknown {kind} {ident!r}")

    def __str__(self) -> str:
        return self.args[0]


class DimensionError(PetriError, ValueError):
    pass


class NotEnabledError(PetriError, ValueError):
    """Raised when firing a transition whose preconditions do not hold."""

    def __init__(self, transition: str, place: str, have: int, need: int):
        self.transition = transition
        self.place = place
        self.have = have
        self.need = need
        super().__init__(
            f"transition {transition!r} is not enabled: place {place!r} "
            f"holds {have} token(s), needs {need}"
        )


class NotASemiflowError(PetriError, ValueError):
    pass


class ParseError(PetriError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class FixtureError(PetriError):
    """A bundled net failed validation against its reference semiflows."""


class ResourceCapError(PetriError):
    """A computation hit its configured resource cap before completing."""
