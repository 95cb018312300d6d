"""
Sparse vector representations and the sign-splitting transform.

``SparseVector`` is the universal data carrier: a nominal dimension plus sorted
int64 indices and float64 values, zeros implicit. Instances are immutable (the
backing arrays are flagged read-only) and canonical, so any permutation of the
same entries builds an identical vector.
"""

from __future__ import annotations

from typing import Iterable, List, Tuple

import numpy as np

from gcwsnet.core.errors import CorruptInputError, EmptyVectorError, InvalidParameterError


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class SparseVector:
    """Indexed real-valued vector of nominal dimensionality ``dim``."""

    __slots__ = ("dim", "indices", "values")

    def __init__(self, dim: int, indices, values, *, _trusted: bool = False):
        dim = int(dim)
        if dim < 1:
            raise InvalidParameterError(f"dim must be positive, got {dim}")
        idx = np.array(indices, dtype=np.int64).ravel()
        val = np.array(values, dtype=np.float64).ravel()
        if idx.shape != val.shape:
            raise CorruptInputError(f"{idx.size} indices but {val.size} values")
        if not _trusted:
            idx, val = self._canonicalize(dim, idx, val)
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "indices", _frozen(idx))
        object.__setattr__(self, "values", _frozen(val))

    @staticmethod
    def _canonicalize(dim: int, idx: np.ndarray, val: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if idx.size and (idx.min() < 0 or idx.max() >= dim):
            raise CorruptInputError(f"index out of range [0, {dim})")
        if not np.all(np.isfinite(val)):
            raise CorruptInputError("non-finite value")
        order = np.argsort(idx, kind="stable")
        idx, val = idx[order], val[order]
        if idx.size > 1 and np.any(idx[1:] == idx[:-1]):
            raise CorruptInputError("duplicate index")
        keep = val != 0.0
        return idx[keep], val[keep]

    def __setattr__(self, name, value):
        raise AttributeError("SparseVector is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_pairs(cls, dim: int, pairs: Iterable[Tuple[int, float]]) -> "SparseVector":
        pairs = list(pairs)
        return cls(dim, [i for i, _ in pairs], [v for _, v in pairs])

    @classmethod
    def from_dense(cls, dense) -> "SparseVector":
        arr = np.asarray(dense, dtype=np.float64).ravel()
        nz = np.flatnonzero(arr)
        return cls(arr.size, nz, arr[nz])

    # -- accessors -----------------------------------------------------------

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    @property
    def entries(self) -> List[Tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.float64)
        out[self.indices] = self.values
        return out

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.values))

    def require_nonzero(self) -> "SparseVector":
        if self.nnz == 0:
            raise EmptyVectorError()
        return self

    def normalized(self) -> "SparseVector":
        """Unit l2 norm copy."""
        norm = self.require_nonzero().l2_norm()
        return type(self)(self.dim, self.indices, self.values / norm, _trusted=True)

    def scaled(self, c: float) -> "SparseVector":
        if c == 0:
            raise InvalidParameterError("scale factor must be nonzero")
        return SparseVector(self.dim, self.indices, self.values * c, _trusted=True)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dim == other.dim
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.indices.tobytes(), self.values.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(dim={self.dim}, entries={self.entries})"


class TransformedVector(SparseVector):
    """Output of ``sign_split``: dimension 2D, every stored value strictly positive."""

    __slots__ = ()

    def __init__(self, dim: int, indices, values, *, _trusted: bool = False):
        super().__init__(dim, indices, values, _trusted=_trusted)
        if self.dim % 2:
            raise CorruptInputError(f"transformed dimension must be even, got {self.dim}")
        if self.nnz and self.values.min() <= 0:
            raise CorruptInputError("transformed values must be strictly positive")
        if self.nnz > 1 and np.any(np.diff(self.indices // 2) == 0):
            raise CorruptInputError("both halves of a source coordinate are nonzero")


def sign_split(u: SparseVector) -> TransformedVector:
    """Map a real vector of dimension D to a nonnegative one of dimension 2D.

    Positive u_i lands at 2i, negative u_i lands as -u_i at 2i+1.
    """
    if isinstance(u, TransformedVector):
        raise InvalidParameterError("vector is already sign-split")
    u.require_nonzero()
    negative = u.values < 0
    indices = 2 * u.indices + negative.astype(np.int64)
    return TransformedVector(2 * u.dim, indices, np.abs(u.values), _trusted=True)


def sign_merge(t: TransformedVector) -> SparseVector:
    """Exact inverse of ``sign_split``."""
    sign = np.where(t.indices % 2 == 1, -1.0, 1.0)
    return SparseVector(t.dim // 2, t.indices // 2, sign * t.values, _trusted=True)


__all__ = ["SparseVector", "TransformedVector", "sign_split", "sign_merge"]
