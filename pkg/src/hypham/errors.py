"""Exception types shared across the package."""


class HypHamError(Exception):
    """Base class for all hypham errors."""


class QueryError(HypHamError):
    """A query against a hypergraph was malformed (wrong set size, vertex out of range)."""


class ContractViolation(HypHamError):
    """A documented precondition of an operation was broken by the caller."""
