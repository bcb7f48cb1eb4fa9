"""Error types raised by the verification engine.

Every error below marks a *mathematical* failure condition (a solve that
should have a unique answer does not, a bracket fails Jacobi, ...) or a
misconfiguration.  Numerical fallback is never attempted: callers either
get an exact result or one of these exceptions.
"""

__all__ = [
    "AqsymError",
    "ConfigError",
    "ZeroDenominator",
    "NonUniqueSolution",
    "JacobiFailure",
    "NotClosed",
    "AnsatzInsufficient",
    "CertificateError",
    "MatchFailure",
    "NoEquivariantIso",
]


class AqsymError(Exception):
    """Base class for all package errors."""


class ConfigError(AqsymError):
    """Invalid configuration (e.g. n < 2, nonpositive degree bounds)."""


class ZeroDenominator(AqsymError):
    """Evaluation of a rational function on the zero set of its denominator."""


class NonUniqueSolution(AqsymError):
    """A solve contracted to return a unique solution found 0 or >= 2."""


class JacobiFailure(AqsymError):
    """A candidate bracket violates the Jacobi identity."""


class NotClosed(AqsymError):
    """A vector space expected to close under a bracket does not."""


class AnsatzInsufficient(AqsymError):
    """A function-space ansatz failed to stabilize against sampling."""


class CertificateError(AqsymError):
    """An internal exactness certificate failed (modular fast path)."""


class MatchFailure(AqsymError):
    """A structural comparison of algebras/modules failed a component."""


class NoEquivariantIso(AqsymError):
    """No invertible equivariant map exists between two modules."""
