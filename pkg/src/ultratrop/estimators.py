"""Estimator front end over precomputed dissimilarity matrices.

Both estimators follow the scikit-learn conventions: hyperparameters are
set in ``__init__`` and exposed through ``get_params``, ``fit`` returns
``self``, and learned state lives in attributes with a trailing underscore.
``X`` is always a square dissimilarity matrix, as with
``metric="precomputed"`` elsewhere in the ecosystem.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .cone import NotInConeError, homogenize
from .extremes import certify, enumerate_extremes, polytope_probe
from .hypergraph import is_extreme
from .nearest import nearest_ultrametric
from .sliding import analyze
from .trees import (
    DissimilarityMap,
    Ultrametric,
    linf_distance,
    to_newick,
    tree_from_ultrametric,
)
from .validation import check_dissimilarity, check_quantifier


def _to_array(m: DissimilarityMap, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty((m.n, m.n), dtype=object)
        for i, row in enumerate(m.entries):
            for j, x in enumerate(row):
                out[i, j] = x
        return out
    return np.array([[float(x) for x in row] for row in m.entries], dtype=float)


def _as_candidate(x, n: int) -> Ultrametric:
    """A candidate given as a square matrix, a pair vector, or an Ultrametric."""
    if isinstance(x, Ultrametric):
        return x
    if isinstance(x, DissimilarityMap):
        return Ultrametric(x.entries, x.labels)
    arr = x.tolist() if hasattr(x, "tolist") else x
    if arr and isinstance(arr[0], (list, tuple)):
        return Ultrametric(tuple(map(tuple, arr)))
    return Ultrametric(DissimilarityMap.from_vector(arr, n).entries)


class NearestUltrametric(BaseEstimator):
    """Fit one l-infinity nearest ultrametric to a dissimilarity matrix.

    Parameters
    ----------
    exact : bool, default=True
        Return object arrays of ``Fraction`` from ``fit_transform``; with
        ``False`` the result is cast to float64.

    Attributes
    ----------
    ultrametric_ : Ultrametric
    q_ : Fraction
        Optimal l-infinity distance.
    subdominant_ : Ultrametric
        Bottleneck map over the minimum spanning tree.
    mst_edges_ : tuple of (i, j, weight), 0-based
    tree_ : WeightedRootedTree
    """

    def __init__(self, exact: bool = True):
        self.exact = exact

    def fit(self, X, y=None):
        d = check_dissimilarity(X)
        if d.n < 2:
            raise ValueError("need at least two items")
        res = nearest_ultrametric(d)
        self.dissimilarity_ = d
        self.ultrametric_ = res.delta_star
        self.q_ = res.q
        self.subdominant_ = res.d_star
        self.mst_edges_ = res.mst_edges
        self.tree_ = tree_from_ultrametric(res.delta_star)
        self.n_features_in_ = d.n
        return self

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    def transform(self, X=None):
        """The fitted ultrametric as an ``n x n`` array (``X`` is ignored)."""
        check_is_fitted(self, "ultrametric_")
        return _to_array(self.ultrametric_, self.exact)

    def newick(self, branch_lengths: bool = False) -> str:
        check_is_fitted(self, "tree_")
        return to_newick(self.tree_, self.dissimilarity_.labels, branch_lengths)


class ExtremeRays(BaseEstimator):
    """Enumerate the extreme rays of the nearest-ultrametric polytope.

    Parameters
    ----------
    quantifier : {"all-resolutions", "per-resolution"}
        How node mobility is counted when filtering candidates.
    oracle : bool, default=True
        Cross-check every verdict with the residuation oracle.
    """

    def __init__(self, quantifier: str = "all-resolutions", oracle: bool = True):
        self.quantifier = quantifier
        self.oracle = oracle

    def fit(self, X, y=None):
        check_quantifier(self.quantifier)
        d = check_dissimilarity(X)
        report = enumerate_extremes(d, self.quantifier, self.oracle)
        self.report_ = report
        self.dissimilarity_ = d
        self.q_ = report.q
        self.system_ = report.system
        self.extremes_ = [c.ultrametric for c in report.extremes]
        self.nonextremes_ = [c.ultrametric for c in report.satisfying_nonextremes]
        self.n_extremes_ = len(self.extremes_)
        self.n_features_in_ = d.n
        return self

    def predict(self, candidates) -> np.ndarray:
        """Extremality of each candidate ultrametric in the fitted polytope.

        Raises ``NotInConeError`` if a candidate is not a nearest ultrametric.
        """
        check_is_fitted(self, "system_")
        n = self.dissimilarity_.n
        out = []
        for x in candidates:
            delta = _as_candidate(x, n)
            if linf_distance(delta, self.dissimilarity_) > self.q_:
                raise NotInConeError(f"candidate is farther than q={self.q_} from the data")
            out.append(is_extreme(self.system_, homogenize(delta))[0])
        return np.array(out, dtype=bool)

    def certify(self, candidate):
        """Verdict plus SCC certificate and mobility data for one candidate."""
        check_is_fitted(self, "system_")
        delta = _as_candidate(candidate, self.dissimilarity_.n)
        state = analyze(delta, self.dissimilarity_, self.q_)
        return certify(self.system_, state)

    def probe(self, trials: int = 100, seed: int = 0) -> bool:
        check_is_fitted(self, "report_")
        return polytope_probe(self.dissimilarity_, self.report_, trials, seed)
