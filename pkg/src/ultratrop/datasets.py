"""Built-in instances and their published extreme rays.

Extreme-ray tables are stored column-major: one column per ray, one row per
pair in lexicographic order.
"""
from __future__ import annotations

from .trees import DissimilarityMap, validate_dissimilarity

_MATRICES = {
    "paper-n3": [
        [0, 2, 4],
        [2, 0, 8],
        [4, 8, 0],
    ],
    "paper-n4": [
        [0, 6, 6, 5],
        [6, 0, 14, 12],
        [6, 14, 0, 9],
        [5, 12, 9, 0],
    ],
    "paper-n8": [
        [0, 32, 48, 51, 50, 48, 98, 148],
        [32, 0, 26, 34, 29, 33, 84, 136],
        [48, 26, 0, 42, 44, 44, 92, 152],
        [51, 34, 42, 0, 44, 38, 86, 142],
        [50, 29, 44, 44, 0, 24, 89, 142],
        [48, 33, 44, 38, 24, 0, 90, 142],
        [98, 84, 92, 86, 89, 90, 0, 148],
        [148, 136, 152, 142, 142, 142, 148, 0],
    ],
}

_LABELS = {
    "paper-n8": ("dog", "bear", "raccoon", "weasel", "seal", "sea_lion", "cat", "monkey"),
}

NEAREST = {
    "paper-n3": {
        "q": 2,
        "delta_star": [
            [0, 4, 6],
            [4, 0, 6],
            [6, 6, 0],
        ],
    },
    "paper-n4": {
        "q": 4,
        "delta_star": [
            [0, 10, 10, 9],
            [10, 0, 10, 10],
            [10, 10, 0, 10],
            [9, 10, 10, 0],
        ],
    },
    "paper-n8": {
        "q": 9,
        "delta_star": [
            [0, 41, 41, 43, 41, 41, 93, 145],
            [41, 0, 35, 43, 38, 38, 93, 145],
            [41, 35, 0, 43, 38, 38, 93, 145],
            [43, 43, 43, 0, 43, 43, 93, 145],
            [41, 38, 38, 43, 0, 33, 93, 145],
            [41, 38, 38, 43, 33, 0, 93, 145],
            [93, 93, 93, 93, 93, 93, 0, 145],
            [145, 145, 145, 145, 145, 145, 145, 0],
        ],
    },
}

PUBLISHED_EXTREMES = {
    "paper-n3": [
        [0, 4],
        [6, 6],
        [6, 6],
    ],
    "paper-n4": [
        [10, 10, 8, 2, 2, 10, 10, 9],
        [5, 2, 10, 10, 10, 9, 2, 10],
        [1, 5, 1, 8, 9, 9, 9, 9],
        [10, 10, 10, 10, 10, 10, 10, 10],
        [10, 10, 8, 8, 9, 10, 10, 8],
        [5, 5, 10, 10, 10, 5, 9, 10],
    ],
    "paper-n8": [
        [41] * 16,
        [41] * 16,
        [42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 42],
        [41] * 16,
        [41] * 16,
        [89, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
        [35, 35, 17, 35, 35, 35, 35, 35, 35, 35, 35, 17, 17, 17, 17, 17],
        [42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 42],
        [24, 20, 35, 24, 24, 33, 24, 20, 20, 20, 20, 35, 35, 38, 35, 35],
        [24, 24, 35, 24, 24, 24, 24, 24, 24, 33, 24, 35, 35, 38, 35, 35],
        [89, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
        [42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 42],
        [35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 38, 35, 35],
        [35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 35, 38, 35, 35],
        [89, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
        [42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 42],
        [42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 43, 42, 42, 42, 42],
        [89, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
        [15, 24, 15, 15, 15, 33, 15, 24, 24, 33, 24, 15, 15, 15, 33, 15],
        [89, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
        [89, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89, 93, 89, 89, 89],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
        [143, 143, 143, 143, 143, 143, 145, 143, 143, 143, 145, 143, 143, 143, 143, 145],
    ],
}

# reference numbering of the n=8 trees, per published column
LISTING_NUMBERS = {
    "paper-n8": [1, 3, 4, 5, 6, 7, 8, 11, 12, 13, 14, 15, 17, 18, 19, 20],
}

NAMES = tuple(_MATRICES)


def load(name: str) -> DissimilarityMap:
    try:
        raw = _MATRICES[name]
    except KeyError:
        raise KeyError(f"unknown dataset {name!r}; available: {', '.join(NAMES)}") from None
    return validate_dissimilarity(raw, _LABELS.get(name))


def published_rays(name: str) -> list[tuple]:
    """Published extreme rays as row vectors (one tuple per ray)."""
    cols = PUBLISHED_EXTREMES[name]
    return [tuple(row[k] for row in cols) for k in range(len(cols[0]))]


def cross_reference(name: str, vectors) -> list[dict]:
    """Match computed ray vectors to published columns (1-based).

    Entries carry ``None`` where a vector has no published counterpart.
    """
    published = published_rays(name) if name in PUBLISHED_EXTREMES else []
    numbers = LISTING_NUMBERS.get(name)
    out = []
    for v in vectors:
        key = tuple(v)
        col = next((k for k, p in enumerate(published) if tuple(p) == key), None)
        entry = {"published_column": None if col is None else col + 1}
        if numbers is not None:
            entry["listing_number"] = None if col is None else numbers[col]
        out.append(entry)
    return out
