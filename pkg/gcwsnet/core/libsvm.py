"""
LIBSVM text format reader/writer.

``<label> <index>:<value> ...`` with 1-based indices on disk and 0-based indices in
memory. Parsing is delegated to scikit-learn's svmlight loader; when it rejects a
file we rescan the text once to point at the offending row.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import scipy.sparse as sp
from sklearn.datasets import dump_svmlight_file, load_svmlight_file

from gcwsnet.core.errors import CorruptInputError
from gcwsnet.core.vectors import SparseVector

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_TOKEN = re.compile(r"^[1-9]\d*:[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")
_LABEL = re.compile(r"^[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?$")


@dataclass
class LabeledDataset:
    """Rows of a LIBSVM file: vectors, class ids in [0, C), original label values."""

    vectors: List[SparseVector]
    labels: np.ndarray
    classes: np.ndarray
    dim: int
    source: Optional[str] = None
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def n_classes(self) -> int:
        return int(self.classes.size)

    def to_csr(self) -> sp.csr_matrix:
        indptr = np.zeros(len(self.vectors) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([v.nnz for v in self.vectors])
        indices = (
            np.concatenate([v.indices for v in self.vectors])
            if self.vectors
            else np.zeros(0, np.int64)
        )
        data = (
            np.concatenate([v.values for v in self.vectors]) if self.vectors else np.zeros(0)
        )
        return sp.csr_matrix((data, indices, indptr), shape=(len(self.vectors), self.dim))


def _locate_bad_row(path: Path) -> Optional[int]:
    with open(path, "r", encoding="utf-8", errors="replace") as f:
        for lineno, line in enumerate(f, start=1):
            body = line.split("#", 1)[0].split()
            if not body:
                continue
            if not _LABEL.match(body[0]):
                return lineno
            last = 0
            for tok in body[1:]:
                if not _TOKEN.match(tok):
                    return lineno
                idx = int(tok.split(":", 1)[0])
                if idx <= last:
                    return lineno
                last = idx
    return None


def encode_labels(
    y: np.ndarray,
    classes: Optional[Sequence[float]] = None,
    path: Optional[PathLike] = None,
    first_row: int = 1,
) -> Tuple[np.ndarray, np.ndarray]:
    """Map label values to class ids; returns ``(ids, class_values)``."""
    y = np.asarray(y, dtype=np.float64)
    if classes is None:
        class_values, labels = np.unique(y, return_inverse=True)
        return labels.astype(np.int64), class_values
    class_values = np.asarray(classes, dtype=np.float64)
    labels = np.searchsorted(class_values, y)
    bad = (labels >= class_values.size) | (
        class_values[np.minimum(labels, class_values.size - 1)] != y
    )
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        row = i + first_row
        raise CorruptInputError(
            f"unknown label {y[i]!r}", path=str(path) if path else None, row=row
        )
    return labels.astype(np.int64), class_values


def read_libsvm(
    path: PathLike,
    n_features: Optional[int] = None,
    classes: Optional[Sequence[float]] = None,
) -> LabeledDataset:
    """Load a LIBSVM file.

    ``classes`` pins the label -> class-id mapping (use the training set's when
    loading a test set); unknown labels are then a data error.
    """
    path = Path(path)
    try:
        X, y = load_svmlight_file(
            str(path), n_features=n_features, dtype=np.float64, zero_based=False
        )
    except ValueError as exc:
        raise CorruptInputError(str(exc), path=str(path), row=_locate_bad_row(path)) from exc

    X = sp.csr_matrix(X)
    X.sum_duplicates()
    X.eliminate_zeros()
    X.sort_indices()

    labels, class_values = encode_labels(y, classes, path)

    dim = int(X.shape[1])
    vectors = [
        SparseVector(dim, X.indices[X.indptr[r] : X.indptr[r + 1]],
                     X.data[X.indptr[r] : X.indptr[r + 1]], _trusted=True)
        for r in range(X.shape[0])
    ]
    logger.info("loaded %s: %d rows, dim %d, %d classes", path, len(vectors), dim,
                class_values.size)
    return LabeledDataset(
        vectors=vectors,
        labels=np.asarray(labels, dtype=np.int64),
        classes=class_values,
        dim=dim,
        source=str(path),
    )


def write_libsvm(path: PathLike, dataset: LabeledDataset) -> None:
    """Write with 1-based indices and the original label values."""
    y = dataset.classes[dataset.labels] if dataset.n_classes else dataset.labels
    dump_svmlight_file(dataset.to_csr(), y, str(path), zero_based=False)


__all__ = ["LabeledDataset", "encode_labels", "read_libsvm", "write_libsvm"]
