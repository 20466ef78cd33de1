"""Exception hierarchy.

Every error raised for bad input or an inapplicable operation derives from
:class:`DomainError`; the CLI maps those to exit code 1.
"""

from __future__ import annotations


class DomainError(Exception):
    """Base class for all domain-level failures."""


class UnsupportedRank(DomainError):
    pass


class ParseError(DomainError):
    pass


class CompactGroup(DomainError):
    pass


class NotSimple(DomainError):
    pass


class UnknownForm(DomainError):
    pass


class NotAdmissible(DomainError):
    pass


class NotGoodRoot(DomainError):
    pass


class BadIndex(DomainError):
    pass


class MissingMultiplicities(DomainError):
    pass


class ExponentOutOfRange(DomainError):
    pass


class DegreeOutOfRange(DomainError):
    pass


class NotLowDegree(DomainError):
    pass


class DatabaseError(DomainError):
    """Raised when a multiplicity database file fails validation."""
