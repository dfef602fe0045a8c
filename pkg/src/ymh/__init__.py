"""ymh: exact-arithmetic homology engine for Yang-Mills algebras.

The package builds the Yang-Mills Lie algebra and its enveloping algebra
degree by degree over exact rationals, assembles the small standard complexes
computing Lie/Hochschild homology with various graded coefficient modules,
and checks every computed dimension table against closed-form Hilbert series.
"""

from ._accel import backend_name

__version__ = "0.1.0"

__all__ = ["backend_name", "__version__"]
