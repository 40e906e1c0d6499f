"""Input checks shared by the estimators and the command line."""
from __future__ import annotations

from fractions import Fraction

from .sliding import QUANTIFIERS
from .trees import DissimilarityError, DissimilarityMap, validate_dissimilarity
from .tropical import scalar


def check_dissimilarity(X, labels=None) -> DissimilarityMap:
    """Accept a DissimilarityMap, nested sequence, ndarray or DataFrame.

    Floats are converted through their shortest decimal repr, so ``0.1``
    becomes ``1/10`` rather than the binary approximation.
    """
    if isinstance(X, DissimilarityMap):
        return validate_dissimilarity(X, labels)
    if hasattr(X, "columns") and hasattr(X, "to_numpy"):
        if labels is None:
            labels = [str(c) for c in X.columns]
        X = X.to_numpy()
    if hasattr(X, "tolist"):
        X = X.tolist()
    if not isinstance(X, (list, tuple)) or not all(isinstance(r, (list, tuple)) for r in X):
        raise DissimilarityError("expected a square 2-d matrix")
    return validate_dissimilarity(X, labels)


def check_rational(x, name: str = "value", positive: bool = False) -> Fraction:
    try:
        v = scalar(x)
    except (ValueError, TypeError, ZeroDivisionError):
        raise ValueError(f"{name} must be a rational number, got {x!r}") from None
    if not isinstance(v, Fraction):
        raise ValueError(f"{name} must be finite")
    if positive and v <= 0:
        raise ValueError(f"{name} must be positive, got {v}")
    return v


def check_quantifier(quantifier: str) -> str:
    if quantifier not in QUANTIFIERS:
        raise ValueError(f"quantifier must be one of {QUANTIFIERS}, got {quantifier!r}")
    return quantifier
