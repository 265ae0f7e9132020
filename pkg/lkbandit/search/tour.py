"""Array tour with an inverse position index."""

import logging
from typing import List, Sequence

import numpy as np

from lkbandit.errors import InternalError
from lkbandit.tsplib import Instance, is_permutation, tour_length

logger = logging.getLogger(__name__)


class Tour:
    """A Hamiltonian cycle stored as ``order`` plus ``pos`` (pos[order[i]] == i).

    ``length`` is kept in step with every change made through this class.
    """

    def __init__(self, order: Sequence[int], length: int):
        self.order: List[int] = list(order)
        self.pos: List[int] = [0] * len(self.order)
        for idx, city in enumerate(self.order):
            self.pos[city] = idx
        self.length = int(length)

    @classmethod
    def from_order(cls, inst: Instance, order: Sequence[int]) -> "Tour":
        if not is_permutation(order, inst.n):
            raise InternalError(f"Tour of {len(order)} cities is not a permutation of {inst.n}")
        return cls(order, tour_length(inst, order))

    @property
    def n(self) -> int:
        return len(self.order)

    def next(self, city: int) -> int:
        idx = self.pos[city] + 1
        return self.order[0] if idx == len(self.order) else self.order[idx]

    def prev(self, city: int) -> int:
        return self.order[self.pos[city] - 1]

    def adjacent(self, a: int, b: int) -> bool:
        return self.next(a) == b or self.prev(a) == b

    def segment(self, start: int, end: int) -> List[int]:
        """Cities at positions start..end going forward, wrapping around."""
        if start <= end:
            return self.order[start:end + 1]
        return self.order[start:] + self.order[:end + 1]

    def reverse(self, start: int, end: int) -> None:
        """Reverse the cities at positions start..end (forward, wrapping) in place."""
        n = len(self.order)
        order, pos = self.order, self.pos
        for _ in range(((end - start) % n + 1) // 2):
            a, b = order[start], order[end]
            order[start], order[end] = b, a
            pos[b], pos[a] = start, end
            start = start + 1 if start + 1 < n else 0
            end = end - 1 if end > 0 else n - 1

    def replace_order(self, order: List[int]) -> None:
        self.order = order
        pos = np.empty(len(order), dtype=np.int64)
        pos[np.asarray(order, dtype=np.int64)] = np.arange(len(order))
        self.pos = pos.tolist()

    def validate(self, inst: Instance) -> None:
        """Check the permutation and recompute the length.

        Raises:
            InternalError: if either check fails.
        """
        if not is_permutation(self.order, inst.n):
            raise InternalError("Tour order is not a permutation")
        if any(self.pos[city] != idx for idx, city in enumerate(self.order)):
            raise InternalError("Tour position index is out of step with the order")
        actual = tour_length(inst, self.order)
        if actual != self.length:
            raise InternalError(f"Cached tour length {self.length} differs from recomputed {actual}")

    def copy(self) -> "Tour":
        clone = Tour.__new__(Tour)
        clone.order = list(self.order)
        clone.pos = list(self.pos)
        clone.length = self.length
        return clone

    def __repr__(self) -> str:
        return f"Tour(n={self.n}, length={self.length})"


__all__ = ['Tour']
