"""Exact certification of space-tiling zonotopes and their Voronoi forms."""

__version__ = "0.1.0"

from .linalg import Matrix  # noqa: E402
from .matroid import GeneratorSet  # noqa: E402
from .zonotope import Zonotope  # noqa: E402

__all__ = ["GeneratorSet", "Matrix", "Zonotope", "__version__"]
