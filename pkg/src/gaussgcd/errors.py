"""Exception taxonomy shared across the package.

The CLI maps these onto exit codes: domain/usage problems exit 2, range and
overflow guards exit 3, I/O and cache problems exit 4.
"""


class GaussgcdError(Exception):
    """Base class for all package errors."""


class DomainError(GaussgcdError, ValueError):
    """Input outside the mathematical domain of an operation (zero ideal,
    moment order out of range, argument below a series' convergence bound)."""


class TableRangeError(GaussgcdError):
    """A query exceeded the bound the sieve tables were built for."""


class ScaleError(GaussgcdError):
    """A guarded slow path was asked to run beyond its size limit."""


class OverflowGuardError(GaussgcdError):
    """An exact accumulation would leave the certified fixed-width envelope."""


class CacheError(GaussgcdError):
    """Base class for sieve-cache serialization problems."""


class CacheFormatError(CacheError):
    """Cache file has wrong magic bytes or inconsistent layout."""


class CacheVersionError(CacheError):
    """Cache file was written by an incompatible format version."""


class CacheTruncatedError(CacheError):
    """Cache file ends before the declared payload is complete."""
