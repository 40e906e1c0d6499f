"""Extreme rays of the polytope of l-infinity nearest ultrametrics."""
from .cone import NotInConeError, build_exterior, check_membership, homogenize, normalize
from .estimators import ExtremeRays, NearestUltrametric
from .extend import build_counterexample, extend_instance
from .extremes import enumerate_extremes
from .hypergraph import is_extreme, scc_decomposition, tangent_hypergraph
from .nearest import nearest_ultrametric
from .sliding import bernstein_candidates
from .trees import (
    DissimilarityError,
    DissimilarityMap,
    Ultrametric,
    UltrametricError,
    to_newick,
    tree_from_ultrametric,
)

__all__ = [
    "DissimilarityError", "DissimilarityMap", "ExtremeRays", "NearestUltrametric", "NotInConeError",
    "Ultrametric", "UltrametricError", "bernstein_candidates", "build_counterexample", "build_exterior",
    "check_membership", "enumerate_extremes", "extend_instance", "homogenize", "is_extreme",
    "nearest_ultrametric", "normalize", "scc_decomposition", "tangent_hypergraph", "to_newick",
    "tree_from_ultrametric",
]
__version__ = "0.1.0"
