"""Error taxonomy shared across the package."""


class DegenerateSpectrum(ValueError):
    """Eigenvalues inside the forbidden band around zero; spectral projection ill-posed."""


class NearSingular(ValueError):
    """A restricted operator is numerically non-invertible (point outside the chart)."""


class OutOfChart(ValueError):
    """A base point lies outside the domain of the requested trivialization."""


class CoverageError(RuntimeError):
    """No chart in the cover is valid on some required stencil."""


class VortexOnLink(ValueError):
    """A normalized link overlap has near-zero modulus; holonomy undefined."""


class GridDomainError(IndexError):
    """A stencil stepped over the boundary of a non-periodic axis."""
