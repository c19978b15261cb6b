"""Shared exception types."""


class BudgetExceededError(RuntimeError):
    """A configured search or enumeration budget ran out before completion."""


class SubgroupError(ValueError):
    """The given elements do not form a subgroup, or lie outside the group."""


class MultiedgeError(ValueError):
    """A construction that must yield a simple graph produced parallel edges."""


class LcfError(ValueError):
    """Malformed or inconsistent LCF code."""


class Graph6Error(ValueError):
    """Malformed graph6 data."""


class InvalidRootError(ValueError):
    """The chosen residue does not have the required multiplicative order."""


class AbelianizationMismatchError(ValueError):
    """The base group's abelianization is not cyclic of order 2*valency."""


class CharacterConflictError(RuntimeError):
    """Propagating generator images over the Cayley graph hit a conflict."""
