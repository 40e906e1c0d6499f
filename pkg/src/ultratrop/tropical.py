"""Exact max-plus arithmetic over the rationals extended by a bottom element.

Scalars are :class:`fractions.Fraction` (ints are accepted and promoted) or
the singleton :data:`BOTTOM`, which stands for minus infinity.  ``BOTTOM``
deliberately supports no arithmetic, so mixing it into ordinary sums raises
``TypeError`` instead of silently producing garbage.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


class _Bottom:
    """Minus infinity, the additive identity of the max-plus semiring."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "-inf"

    __str__ = __repr__

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()

TropScalar = Union[Fraction, _Bottom]
TropVector = tuple  # tuple[TropScalar, ...]


def is_bottom(x) -> bool:
    return x is BOTTOM


def scalar(x) -> TropScalar:
    """Coerce ints, Fractions, strings like ``"3/2"`` or ``"-inf"`` to a scalar."""
    if x is BOTTOM:
        return BOTTOM
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("-inf", "-infinity", "bottom"):
            return BOTTOM
        return Fraction(s)
    if isinstance(x, float):
        if x == float("-inf"):
            return BOTTOM
        # floats go through their shortest repr so 0.1 becomes 1/10
        return Fraction(repr(x))
    return Fraction(x)


def vector(entries: Iterable) -> TropVector:
    v = tuple(scalar(x) for x in entries)
    if not v:
        raise ValueError("tropical vectors need at least one entry")
    return v


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    if a is BOTTOM:
        return b
    if b is BOTTOM:
        return a
    return a if a >= b else b


def otimes(a: TropScalar, b: TropScalar) -> TropScalar:
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    return a + b


def leq(a: TropScalar, b: TropScalar) -> bool:
    if a is BOTTOM:
        return True
    if b is BOTTOM:
        return False
    return a <= b


def trop_dot(x: Sequence[TropScalar], y: Sequence[TropScalar]) -> tuple[TropScalar, frozenset[int]]:
    """Tropical inner product ``max_i (x_i + y_i)`` and the 0-based argmax set.

    The argmax is empty exactly when the value is bottom.
    """
    if len(x) != len(y):
        raise ValueError(f"dimension mismatch: {len(x)} != {len(y)}")
    best: TropScalar = BOTTOM
    arg: list[int] = []
    for i, (a, b) in enumerate(zip(x, y)):
        s = otimes(a, b)
        if s is BOTTOM:
            continue
        if best is BOTTOM or s > best:
            best = s
            arg = [i]
        elif s == best:
            arg.append(i)
    return best, frozenset(arg)


@dataclass(frozen=True)
class TropMatrix:
    """Row-major max-plus matrix."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(scalar(x) for x in row) for row in self.entries)
        if rows:
            width = len(rows[0])
            for k, row in enumerate(rows):
                if len(row) != width:
                    raise ValueError(f"row {k} has {len(row)} entries, expected {width}")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, k: int) -> TropVector:
        return self.entries[k]

    def __getitem__(self, idx):
        k, i = idx
        return self.entries[k][i]

    @classmethod
    def identity(cls, size: int) -> "TropMatrix":
        return cls(tuple(tuple(Fraction(0) if i == j else BOTTOM for j in range(size))
                         for i in range(size)))


def trop_mat_vec(A: TropMatrix, x: Sequence[TropScalar]) -> TropVector:
    if A.cols != len(x):
        raise ValueError(f"dimension mismatch: matrix has {A.cols} columns, vector {len(x)}")
    return tuple(trop_dot(row, x)[0] for row in A.entries)


def trop_combine(generators: Sequence[Sequence[TropScalar]],
                 coeffs: Sequence[TropScalar]) -> TropVector:
    """Entrywise ``max_i (coeffs_i + generators_i)``."""
    if not generators:
        raise ValueError("cannot combine an empty generator list")
    if len(generators) != len(coeffs):
        raise ValueError(f"{len(generators)} generators but {len(coeffs)} coefficients")
    dim = len(generators[0])
    out: list[TropScalar] = [BOTTOM] * dim
    for g, lam in zip(generators, coeffs):
        if len(g) != dim:
            raise ValueError("generators do not share one dimension")
        for j in range(dim):
            out[j] = oplus(out[j], otimes(lam, g[j]))
    return tuple(out)


def residuate(v: Sequence[TropScalar], u: Sequence[TropScalar]) -> TropScalar:
    """Greatest ``lam`` with ``lam + u <= v`` entrywise.

    Returns bottom when ``u`` is finite somewhere ``v`` is bottom, or when
    ``u`` contributes nothing on the support of ``v``.
    """
    lam: TropScalar | None = None
    for vj, uj in zip(v, u):
        if uj is BOTTOM:
            continue
        if vj is BOTTOM:
            return BOTTOM
        c = vj - uj
        if lam is None or c < lam:
            lam = c
    return BOTTOM if lam is None else lam


def span_membership(v: Sequence[TropScalar],
                    generators: Sequence[Sequence[TropScalar]]) -> tuple[bool, TropVector]:
    """Decide whether ``v`` is a max-plus combination of ``generators``.

    Uses residuation: the coefficients ``witness`` are the largest for which
    the combination stays below ``v``, so ``v`` is in the span iff that
    combination reaches ``v`` exactly.  An empty generator list spans only the
    all-bottom vector, so the answer is always ``False`` there.
    """
    if all(x is BOTTOM for x in v):
        raise ValueError("v must have at least one finite entry")
    if not generators:
        return False, ()
    for g in generators:
        if len(g) != len(v):
            raise ValueError("dimension mismatch between v and a generator")
    witness = tuple(residuate(v, g) for g in generators)
    combo = trop_combine(generators, witness)
    return tuple(combo) == tuple(v), witness


def vec_leq(x: Sequence[TropScalar], y: Sequence[TropScalar]) -> bool:
    return all(leq(a, b) for a, b in zip(x, y))


def fmt_scalar(x: TropScalar) -> str:
    return "-inf" if x is BOTTOM else str(x)
