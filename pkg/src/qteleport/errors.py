"""Exception types shared across the package."""


class QTeleportError(Exception):
    """Base class for all qteleport errors."""


class ShapeMismatch(QTeleportError):
    """Vector length does not factor as the requested bipartite shape."""


class DimensionMismatch(QTeleportError):
    """Simulation inputs disagree on d, n or outcome count."""


class InfeasibleSpectrum(QTeleportError):
    """Some Schmidt probability exceeds 1/d, so faithful teleportation is impossible."""


class NoPartition(QTeleportError):
    """No assignment of probabilities into equal-sum subgroups exists."""


class PhaseFactorsNotFound(QTeleportError):
    """Every phase-factor strategy failed; carries the best residual seen."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


class DegenerateColumns(QTeleportError):
    """The defined unitary columns are not orthonormal (coefficient table is invalid)."""


class RankOrder(QTeleportError):
    """Schmidt ranks passed in the wrong order (n1 < n2)."""
