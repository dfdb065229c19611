"""Dense boolean relations over a fixed, finite vertex universe.

A universe is just its size ``n``; vertices are the indices ``0..n-1``.
Relations are ``n x n`` boolean matrices (row = source, column = target) and
vertex subsets are length-``n`` boolean vectors.  Both wrap read-only numpy
arrays, so values can be shared freely.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

__all__ = [
    "UniverseMismatch",
    "VertexSubset",
    "Relation",
    "compose",
    "converse",
    "union",
    "intersect",
    "complement",
    "diagonal",
    "identity",
    "is_subset",
    "equals",
    "is_empty",
    "transitive_closure",
    "reflexive_transitive_closure",
    "foreset",
    "afterset",
]


class UniverseMismatch(ValueError):
    """Raised when operands live in universes of different sizes."""


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=bool, copy=True)
    arr.flags.writeable = False
    return arr


def _check(a: int, b: int) -> None:
    if a != b:
        raise UniverseMismatch(f"universe sizes differ: {a} != {b}")


class VertexSubset:
    __slots__ = ("_mask",)

    def __init__(self, mask) -> None:
        mask = np.asarray(mask, dtype=bool)
        if mask.ndim != 1:
            raise ValueError("a vertex subset is a 1-d boolean vector")
        self._mask = _frozen(mask)

    @classmethod
    def empty(cls, n: int) -> VertexSubset:
        return cls(np.zeros(n, dtype=bool))

    @classmethod
    def full(cls, n: int) -> VertexSubset:
        return cls(np.ones(n, dtype=bool))

    @classmethod
    def of(cls, n: int, members: Iterable[int]) -> VertexSubset:
        mask = np.zeros(n, dtype=bool)
        for v in members:
            if not 0 <= v < n:
                raise IndexError(f"vertex {v} outside universe of size {n}")
            mask[v] = True
        return cls(mask)

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def size(self) -> int:
        """Size of the universe (not the number of members)."""
        return self._mask.shape[0]

    def members(self) -> list[int]:
        return np.flatnonzero(self._mask).tolist()

    def __contains__(self, v: int) -> bool:
        return bool(self._mask[v])

    def __iter__(self):
        return iter(self.members())

    def __len__(self) -> int:
        return int(self._mask.sum())

    def __bool__(self) -> bool:
        return bool(self._mask.any())

    def complement(self) -> VertexSubset:
        return VertexSubset(~self._mask)

    __invert__ = complement

    def __or__(self, other: VertexSubset) -> VertexSubset:
        _check(self.size, other.size)
        return VertexSubset(self._mask | other._mask)

    def __and__(self, other: VertexSubset) -> VertexSubset:
        _check(self.size, other.size)
        return VertexSubset(self._mask & other._mask)

    def __sub__(self, other: VertexSubset) -> VertexSubset:
        _check(self.size, other.size)
        return VertexSubset(self._mask & ~other._mask)

    def __le__(self, other: VertexSubset) -> bool:
        _check(self.size, other.size)
        return not bool((self._mask & ~other._mask).any())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VertexSubset):
            return NotImplemented
        return self.size == other.size and bool(np.array_equal(self._mask, other._mask))

    def __hash__(self) -> int:
        return hash((self.size, self._mask.tobytes()))

    def __repr__(self) -> str:
        return f"VertexSubset({self.members()}, n={self.size})"


class Relation:
    """A binary relation on ``{0..n-1}`` stored as a boolean matrix.

    Operators: ``R @ S`` composes (``b R d`` and ``d S c``), ``R | S`` and
    ``R & S`` are union and intersection, ``~R`` is the complement, ``R.T``
    the converse and ``R <= S`` inclusion.
    """

    __slots__ = ("_m",)

    def __init__(self, matrix) -> None:
        matrix = np.asarray(matrix, dtype=bool)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"relation matrix must be square, got shape {matrix.shape}")
        self._m = _frozen(matrix)

    @classmethod
    def empty(cls, n: int) -> Relation:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def full(cls, n: int) -> Relation:
        return cls(np.ones((n, n), dtype=bool))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Relation:
        m = np.zeros((n, n), dtype=bool)
        for b, c in pairs:
            m[b, c] = True
        return cls(m)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def size(self) -> int:
        return self._m.shape[0]

    def pairs(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(self._m)
        return list(zip(rows.tolist(), cols.tolist()))

    def __contains__(self, pair: tuple[int, int]) -> bool:
        b, c = pair
        return bool(self._m[b, c])

    def __len__(self) -> int:
        return int(self._m.sum())

    def __bool__(self) -> bool:
        return bool(self._m.any())

    def successors(self, b: int) -> list[int]:
        return np.flatnonzero(self._m[b]).tolist()

    def predecessors(self, c: int) -> list[int]:
        return np.flatnonzero(self._m[:, c]).tolist()

    # algebra

    def __matmul__(self, other: Relation) -> Relation:
        _check(self.size, other.size)
        # float32 goes through BLAS and counts exactly up to 2**24
        prod = self._m.astype(np.float32) @ other._m.astype(np.float32)
        return Relation(prod > 0)

    @property
    def T(self) -> Relation:
        return Relation(self._m.T)

    def __or__(self, other: Relation) -> Relation:
        _check(self.size, other.size)
        return Relation(self._m | other._m)

    def __and__(self, other: Relation) -> Relation:
        _check(self.size, other.size)
        return Relation(self._m & other._m)

    def __sub__(self, other: Relation) -> Relation:
        _check(self.size, other.size)
        return Relation(self._m & ~other._m)

    def __invert__(self) -> Relation:
        return Relation(~self._m)

    def __le__(self, other: Relation) -> bool:
        _check(self.size, other.size)
        return not bool((self._m & ~other._m).any())

    def __ge__(self, other: Relation) -> bool:
        return other <= self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.size == other.size and bool(np.array_equal(self._m, other._m))

    def __hash__(self) -> int:
        return hash((self.size, self._m.tobytes()))

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self._m, self._m.T))

    def is_transitive(self) -> bool:
        return (self @ self) <= self

    def plus(self) -> Relation:
        """Transitive closure."""
        m = self._m.copy()
        for k in range(m.shape[0]):
            col = m[:, k]
            if col.any():
                m[col] |= m[k]
        return Relation(m)

    def star(self) -> Relation:
        """Reflexive and transitive closure."""
        m = self.plus()._m.copy()
        np.fill_diagonal(m, True)
        return Relation(m)

    def restrict(self, subset: VertexSubset) -> Relation:
        """Keep only pairs with both ends in ``subset``."""
        _check(self.size, subset.size)
        mask = subset.mask
        return Relation(self._m & mask[:, None] & mask[None, :])

    def foreset(self, subset: VertexSubset) -> VertexSubset:
        """``{b : b R c for some c in subset}``."""
        _check(self.size, subset.size)
        return VertexSubset(self._m[:, subset.mask].any(axis=1))

    def afterset(self, subset: VertexSubset) -> VertexSubset:
        """``{c : b R c for some b in subset}``."""
        _check(self.size, subset.size)
        return VertexSubset(self._m[subset.mask, :].any(axis=0))

    def __repr__(self) -> str:
        return f"Relation({self.pairs()}, n={self.size})"


def compose(r: Relation, s: Relation) -> Relation:
    return r @ s


def converse(r: Relation) -> Relation:
    return r.T


def union(r: Relation, s: Relation) -> Relation:
    return r | s


def intersect(r: Relation, s: Relation) -> Relation:
    return r & s


def complement(r: Relation) -> Relation:
    return ~r


def diagonal(subset: VertexSubset) -> Relation:
    """The subdiagonal relation ``{(b, b) : b in subset}``."""
    return Relation(np.diag(subset.mask))


def identity(n: int) -> Relation:
    return Relation(np.eye(n, dtype=bool))


def is_subset(r: Relation, s: Relation) -> bool:
    return r <= s


def equals(r: Relation, s: Relation) -> bool:
    _check(r.size, s.size)
    return r == s


def is_empty(r: Relation) -> bool:
    return not r


def transitive_closure(r: Relation) -> Relation:
    return r.plus()


def reflexive_transitive_closure(r: Relation) -> Relation:
    return r.star()


def foreset(r: Relation, subset: VertexSubset) -> VertexSubset:
    return r.foreset(subset)


def afterset(r: Relation, subset: VertexSubset) -> VertexSubset:
    return r.afterset(subset)
