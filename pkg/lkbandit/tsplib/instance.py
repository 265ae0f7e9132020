"""Symmetric TSP instances and the TSPLIB integer distance functions."""

import math
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from lkbandit.errors import UsageError

logger = logging.getLogger(__name__)

WEIGHT_KINDS = ("EUC_2D", "CEIL_2D", "ATT", "GEO", "EXPLICIT")

# Coordinate instances up to this size keep a full distance matrix in memory
MATRIX_CACHE_LIMIT = 5000

# Constants fixed by the TSPLIB GEO definition
GEO_PI = 3.141592
GEO_RADIUS = 6378.388


def _nint(values: np.ndarray) -> np.ndarray:
    return np.floor(values + 0.5)


def _geo_radians(coords: np.ndarray) -> np.ndarray:
    """Convert DDD.MM coordinates to radians the way TSPLIB does."""
    degrees = np.trunc(coords)
    minutes = coords - degrees
    return GEO_PI * (degrees + 5.0 * minutes / 3.0) / 180.0


@dataclass(frozen=True, eq=False)
class Instance:
    """An immutable symmetric TSP instance.

    Cities are numbered ``0..n-1``; TSPLIB files number them from 1.
    """

    name: str
    n: int
    weight_kind: str
    coords: Optional[np.ndarray] = None
    matrix: Optional[np.ndarray] = None
    known_optimum: Optional[int] = None
    comment: str = ""
    _geo: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        if self.n < 3:
            raise UsageError(f"An instance needs at least 3 cities, got {self.n}")
        if self.weight_kind not in WEIGHT_KINDS:
            raise UsageError(f"Unsupported weight kind {self.weight_kind}")
        if self.weight_kind == "EXPLICIT":
            if self.matrix is None or self.coords is not None:
                raise UsageError("EXPLICIT instances carry a matrix and no coordinates")
            matrix = np.asarray(self.matrix, dtype=np.int64)
            if matrix.shape != (self.n, self.n):
                raise UsageError(f"Matrix shape {matrix.shape} does not match n={self.n}")
            matrix = matrix.copy()
            np.fill_diagonal(matrix, 0)
            matrix.setflags(write=False)
            object.__setattr__(self, "matrix", matrix)
        else:
            if self.coords is None or self.matrix is not None:
                raise UsageError(f"{self.weight_kind} instances carry coordinates and no matrix")
            coords = np.asarray(self.coords, dtype=np.float64)
            if coords.shape != (self.n, 2):
                raise UsageError(f"Coordinate shape {coords.shape} does not match n={self.n}")
            coords = coords.copy()
            coords.setflags(write=False)
            object.__setattr__(self, "coords", coords)
            if self.weight_kind == "GEO":
                object.__setattr__(self, "_geo", _geo_radians(coords))

    @classmethod
    def from_coords(cls, name: str, coords: Sequence, weight_kind: str = "EUC_2D", **kwargs) -> "Instance":
        coords = np.asarray(coords, dtype=np.float64)
        return cls(name=name, n=len(coords), weight_kind=weight_kind, coords=coords, **kwargs)

    @classmethod
    def from_matrix(cls, name: str, matrix: Sequence, **kwargs) -> "Instance":
        matrix = np.asarray(matrix, dtype=np.int64)
        return cls(name=name, n=len(matrix), weight_kind="EXPLICIT", matrix=matrix, **kwargs)

    def _row_from_coords(self, i: int, js) -> np.ndarray:
        """Integer costs from city i to cities js, computed from coordinates."""
        if self.weight_kind == "GEO":
            lat_i, lon_i = self._geo[i]
            lat, lon = self._geo[js, 0], self._geo[js, 1]
            q1 = np.cos(lon_i - lon)
            q2 = np.cos(lat_i - lat)
            q3 = np.cos(lat_i + lat)
            inner = np.clip(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3), -1.0, 1.0)
            return np.trunc(GEO_RADIUS * np.arccos(inner) + 1.0)

        dx = self.coords[js, 0] - self.coords[i, 0]
        dy = self.coords[js, 1] - self.coords[i, 1]
        squared = dx * dx + dy * dy
        if self.weight_kind == "EUC_2D":
            return _nint(np.sqrt(squared))
        if self.weight_kind == "CEIL_2D":
            return np.ceil(np.sqrt(squared))
        # ATT: pseudo-Euclidean, rounded up whenever nint falls short
        r = np.sqrt(squared / 10.0)
        t = _nint(r)
        return np.where(t < r, t + 1.0, t)

    @cached_property
    def distance_matrix(self) -> Optional[np.ndarray]:
        """Full n x n cost matrix, or None for coordinate instances above the cache limit."""
        if self.matrix is not None:
            return self.matrix
        if self.n > MATRIX_CACHE_LIMIT:
            return None
        logger.debug(f"Caching {self.n}x{self.n} distance matrix for {self.name}")
        everyone = np.arange(self.n)
        dist = np.empty((self.n, self.n), dtype=np.int64)
        for i in range(self.n):
            dist[i] = self._row_from_coords(i, everyone)
        np.fill_diagonal(dist, 0)
        dist.setflags(write=False)
        return dist

    @cached_property
    def _rows(self) -> Optional[list]:
        # Python lists make scalar lookups in the k-opt search cheap
        if self.distance_matrix is None:
            return None
        return self.distance_matrix.tolist()

    def cost(self, i: int, j: int) -> int:
        """Integer distance between two different cities.

        Args:
            i: First city (0-based).
            j: Second city (0-based).

        Returns:
            The TSPLIB cost d(i, j).

        Raises:
            UsageError: if i == j or either city is out of range.
        """
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise UsageError(f"cost({i}, {j}) is undefined for n={self.n}")
        return self.dist(i, j)

    def dist(self, i: int, j: int) -> int:
        """Unchecked cost lookup used on the hot path."""
        rows = self._rows
        if rows is not None:
            return rows[i][j]
        if i == j:
            return 0
        kind = self.weight_kind
        if kind == "GEO":
            return int(self._row_from_coords(i, np.array([j]))[0])
        xi, yi = self.coords[i]
        xj, yj = self.coords[j]
        dx, dy = float(xj - xi), float(yj - yi)
        squared = dx * dx + dy * dy
        if kind == "EUC_2D":
            return int(math.floor(math.sqrt(squared) + 0.5))
        if kind == "CEIL_2D":
            return int(math.ceil(math.sqrt(squared)))
        r = math.sqrt(squared / 10.0)
        t = math.floor(r + 0.5)
        return int(t + 1 if t < r else t)

    def cost_row(self, i: int) -> np.ndarray:
        """Costs from city i to every city as an int64 array (entry i is 0)."""
        if self.distance_matrix is not None:
            return self.distance_matrix[i]
        row = self._row_from_coords(i, np.arange(self.n)).astype(np.int64)
        row[i] = 0
        return row

    def nearest(self, i: int, k: int) -> np.ndarray:
        """The k cities closest to i, ties broken by index."""
        row = self.cost_row(i).astype(np.float64)
        row[i] = math.inf
        k = min(k, self.n - 1)
        return np.lexsort((np.arange(self.n), row))[:k]

    def with_optimum(self, optimum: Optional[int]) -> "Instance":
        """Copy of this instance carrying a known optimum."""
        if optimum is None:
            return self
        return Instance(
            name=self.name,
            n=self.n,
            weight_kind=self.weight_kind,
            coords=self.coords,
            matrix=self.matrix if self.weight_kind == "EXPLICIT" else None,
            known_optimum=int(optimum),
            comment=self.comment,
        )


def tour_length(inst: Instance, order: Sequence[int]) -> int:
    """Recompute the length of a closed tour from scratch."""
    total = 0
    n = len(order)
    for idx in range(n):
        total += inst.dist(order[idx], order[(idx + 1) % n])
    return int(total)


def is_permutation(order: Sequence[int], n: int) -> bool:
    return len(order) == n and sorted(order) == list(range(n))


__all__ = ['Instance', 'WEIGHT_KINDS', 'MATRIX_CACHE_LIMIT', 'tour_length', 'is_permutation']
