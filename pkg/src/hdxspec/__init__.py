"""Weighted simplicial complexes, their Laplacians, and numerical checks of local-to-global spectral bounds."""
from .complex import Partition, SimplicialComplex, build_complex, detect_partition
from .weights import WeightFunction, extend_top_weight, homogeneous_weight

__all__ = [
    "Partition", "SimplicialComplex", "WeightFunction", "build_complex", "detect_partition",
    "extend_top_weight", "homogeneous_weight",
]
__version__ = "0.1.0"
