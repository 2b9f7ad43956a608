"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed FCIDUMP or config input."""


class ConsistencyError(ValueError):
    """Data violates a declared invariant (duplicate conflicts, bad metadata)."""


class SectorError(ValueError):
    """Requested particle-number sector is empty or impossible."""


class InvalidTerm(ValueError):
    """Operator term not representable (e.g. identity passed to a ladder builder)."""


class ContractError(ValueError):
    """Caller violated an operation's precondition (e.g. non-Hermitian observable)."""
