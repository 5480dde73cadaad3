"""Exception hierarchy.

Every rejection carries a human-readable message and, where it helps,
the offending elements by name.
"""

from __future__ import annotations


class LatticeLabError(Exception):
    """Base class for all library errors."""


class EmptyLatticeError(LatticeLabError):
    """A lattice specification declared no elements."""


class NotAPosetError(LatticeLabError):
    """The cover relation has a cycle (or a malformed pair)."""


class NotALatticeError(LatticeLabError):
    """Some pair of elements lacks a least upper or greatest lower bound."""


class NotComparableError(LatticeLabError):
    """Interval endpoints are not ordered."""


class NotModularError(LatticeLabError):
    """An operation that requires modularity was given a non-modular lattice."""


class NotAComplementError(LatticeLabError):
    """The supplied element is not a complement of the target."""


class SizeLimitExceededError(LatticeLabError):
    """A configurable size cap was exceeded."""


class DomainMismatchError(LatticeLabError):
    """Morphism composition with incompatible domain/codomain."""


class LinearValidationError(LatticeLabError):
    """A map failed linear-morphism certification."""


class NoKernelError(LinearValidationError):
    """No kernel candidate works: the first defining clause fails."""


class NotIntervalIsoError(LinearValidationError):
    """The restriction above the kernel is not an order isomorphism."""


class NotClosedError(LatticeLabError):
    """An explicit member set is not a submonoid with zero."""


class MissingProjectionsError(LatticeLabError):
    """The check requires a monoid containing every projection."""


class GiveUpError(LatticeLabError):
    """Random generation exhausted its retry budget."""


class ConsistencyError(LatticeLabError):
    """Two independent computation routes disagreed: an implementation bug."""
