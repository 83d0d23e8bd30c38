"""Exception types shared across the package."""


class CrystalTopoError(Exception):
    """Base class for all errors raised by crystaltopo."""


class DegenerateGeneratorsError(CrystalTopoError):
    """Lattice generators are linearly dependent (within tolerance)."""


class DefectLocusError(CrystalTopoError):
    """A defect refers to indices outside the lattice index set."""


class ComplexBuildError(CrystalTopoError):
    """A complex cannot be assembled from the given data."""


class DimensionError(CrystalTopoError):
    """A chain, cochain or operation has an out-of-range dimension."""


class UnsupportedConfigurationError(CrystalTopoError):
    """The requested combination is representable but not evaluable."""


class AmbiguousSamplingError(CrystalTopoError):
    """Field samples are too coarse to classify unambiguously."""


class CoverageError(CrystalTopoError):
    """An order field does not cover the vertex set exactly once."""


class InternalInconsistencyError(CrystalTopoError):
    """An internal cross-check failed; indicates a bug, not bad input."""


class DocumentError(CrystalTopoError):
    """A JSON document is malformed or violates its schema."""
