"""Dataset loading, synthetic generators, and embedding persistence."""

import csv
import json
import math
from dataclasses import dataclass, field

import numpy as np


class CsvFormatError(ValueError):
    """Input CSV cannot be parsed into a point cloud."""


class EmbeddingSchemaError(ValueError):
    """Stored embedding file does not match the expected schema."""


REQUIRED_METADATA = ("sigma", "seed", "tol_conv", "max_iters", "r0")

# cluster geometry shared by the synthetic generators below: an equilateral
# triangle of side 4 with isotropic spread 0.5
_CLUSTER_CENTERS = np.array([[0.0, 0.0], [4.0, 0.0], [2.0, 2.0 * np.sqrt(3.0)]])
_CLUSTER_SPREAD = 0.5


@dataclass
class Dataset:
    """A point cloud with optional integer labels and per-point ids."""

    points: np.ndarray
    labels: np.ndarray | None = None
    ids: list = field(default_factory=list)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2:
            raise ValueError("points must be a 2-d array of shape (N, d)")
        n, d = self.points.shape
        if n < 1 or d < 1:
            raise ValueError(f"need N >= 1 and d >= 1, got shape {(n, d)}")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("points contain non-finite entries")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=int)
            if self.labels.shape != (n,):
                raise ValueError("labels must have one entry per point")
        if not self.ids:
            self.ids = [str(i) for i in range(n)]
        elif len(self.ids) != n:
            raise ValueError("ids must have one entry per point")

    @property
    def n_points(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]


def load_csv(path, has_header=False, label_column=None):
    """Load a comma-separated point cloud.

    Cells must parse as finite reals (except in ``label_column``, parsed as
    integers); rows must all have the same number of cells.  Row order is
    preserved.  Row/column positions in error messages are 1-based and count
    the header row if present.
    """
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if has_header:
        rows = rows[1:]
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    arity = len(rows[0])
    offset = 2 if has_header else 1
    points, labels = [], []
    for i, row in enumerate(rows):
        if len(row) != arity:
            raise CsvFormatError(
                f"{path}: row {i + offset} has {len(row)} cells, expected {arity}"
            )
        values = []
        for j, cell in enumerate(row):
            if label_column is not None and j == label_column:
                continue
            try:
                value = float(cell)
            except ValueError:
                raise CsvFormatError(
                    f"{path}: row {i + offset}, column {j + 1}: "
                    f"cannot parse {cell!r} as a real number"
                ) from None
            if not math.isfinite(value):
                raise CsvFormatError(
                    f"{path}: row {i + offset}, column {j + 1}: non-finite value {cell!r}"
                )
            values.append(value)
        if label_column is not None:
            try:
                labels.append(int(float(row[label_column])))
            except ValueError:
                raise CsvFormatError(
                    f"{path}: row {i + offset}, column {label_column + 1}: "
                    f"cannot parse label {row[label_column]!r}"
                ) from None
        points.append(values)
    return Dataset(
        points=np.asarray(points, dtype=float),
        labels=np.asarray(labels, dtype=int) if label_column is not None else None,
    )


def save_csv(ds, path):
    """Write the points of ``ds`` (no labels, no header) as CSV."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in ds.points:
            writer.writerow([repr(float(v)) for v in row])


def standardize(ds):
    """Center each column and scale it to unit sample standard deviation.

    Columns with zero variance are centered only.  Requires N >= 2.
    """
    if ds.n_points < 2:
        raise ValueError("standardize needs at least two points")
    mean = ds.points.mean(axis=0)
    std = ds.points.std(axis=0, ddof=1)
    scale = np.where(std > 0, std, 1.0)
    return Dataset((ds.points - mean) / scale, labels=ds.labels, ids=list(ds.ids))


def gen_three_clusters(n_per_cluster, n_outliers, seed):
    """Three isotropic Gaussian blobs in the plane plus uniform outliers.

    Cluster points get labels 0/1/2, outliers label 3.  Outliers are drawn
    uniformly from the bounding box of the cluster points inflated by 50%
    (box of the centers when there are no cluster points).  Deterministic
    given ``seed``.
    """
    if n_per_cluster < 0 or n_outliers < 0 or 3 * n_per_cluster + n_outliers < 1:
        raise ValueError("need nonnegative counts with at least one point in total")
    rng = np.random.default_rng(seed)
    blocks, labels = [], []
    for c, center in enumerate(_CLUSTER_CENTERS):
        blocks.append(center + _CLUSTER_SPREAD * rng.standard_normal((n_per_cluster, 2)))
        labels.extend([c] * n_per_cluster)
    cluster_points = np.vstack(blocks) if n_per_cluster else _CLUSTER_CENTERS
    if n_outliers:
        lo, hi = cluster_points.min(axis=0), cluster_points.max(axis=0)
        center, half = (lo + hi) / 2.0, 1.5 * (hi - lo) / 2.0
        blocks.append(rng.uniform(center - half, center + half, (n_outliers, 2)))
        labels.extend([3] * n_outliers)
    return Dataset(np.vstack(blocks), labels=np.asarray(labels, dtype=int))


def gen_interval_grid(n):
    """``n`` equally spaced points on [-1, 1], endpoints included (d = 1)."""
    if n < 2:
        raise ValueError("need n >= 2 grid points")
    return Dataset(np.linspace(-1.0, 1.0, n)[:, None])


def gen_swiss_roll(n, seed):
    """Sample ``n`` points from a 3-d swiss roll, uniform in the unrolled
    parameters (angle t in [1.5pi, 4.5pi), height in [0, 21))."""
    if n < 1:
        raise ValueError("need n >= 1 points")
    rng = np.random.default_rng(seed)
    t = 1.5 * np.pi * (1.0 + 2.0 * rng.uniform(size=n))
    height = 21.0 * rng.uniform(size=n)
    points = np.column_stack([t * np.cos(t), height, t * np.sin(t)])
    return Dataset(points)


@dataclass
class EmbeddingFile:
    """On-disk form of an embedding: ids, coordinates, kept singular values,
    and the run metadata needed to reproduce and extend it."""

    ids: list
    coordinates: np.ndarray
    singular_values: np.ndarray
    metadata: dict

    def __post_init__(self):
        self.coordinates = np.asarray(self.coordinates, dtype=float)
        self.singular_values = np.asarray(self.singular_values, dtype=float)
        if self.coordinates.ndim != 2 or self.coordinates.shape[1] < 1:
            raise EmbeddingSchemaError("coordinates must be a 2-d array with r >= 1")
        if len(self.ids) != self.coordinates.shape[0]:
            raise EmbeddingSchemaError("ids and coordinates disagree on N")
        if not np.all(np.isfinite(self.coordinates)):
            raise EmbeddingSchemaError("coordinates contain non-finite entries")
        missing = [k for k in REQUIRED_METADATA if k not in self.metadata]
        if missing:
            raise EmbeddingSchemaError(f"metadata is missing keys {missing}")


def save_embedding(embedding_file, path):
    """Write an :class:`EmbeddingFile` as JSON.

    Floats are serialized via ``repr`` (shortest exact decimal), so a
    save/load round trip is bit-exact.
    """
    doc = {
        "ids": [str(i) for i in embedding_file.ids],
        "coordinates": embedding_file.coordinates.tolist(),
        "singular_values": embedding_file.singular_values.tolist(),
        "metadata": _jsonable(embedding_file.metadata),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_embedding(path):
    """Read an :class:`EmbeddingFile` written by :func:`save_embedding`."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise EmbeddingSchemaError(f"{path}: not a valid embedding file ({exc})") from None
    for key in ("ids", "coordinates", "singular_values", "metadata"):
        if key not in doc:
            raise EmbeddingSchemaError(f"{path}: missing field {key!r}")
    rows = doc["coordinates"]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise EmbeddingSchemaError(f"{path}: coordinates are empty or ragged")
    return EmbeddingFile(
        ids=[str(i) for i in doc["ids"]],
        coordinates=np.asarray(rows, dtype=float),
        singular_values=np.asarray(doc["singular_values"], dtype=float),
        metadata=doc["metadata"],
    )


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value
