"""Permutations on ``{1, ..., n}`` and the index bookkeeping of partial composition.

Everything here is 1-indexed: ``Permutation((2, 3, 1))`` sends 1 to 2, 2 to 3
and 3 to 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{1, ..., n}`` in one-line notation."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        image = tuple(int(k) for k in self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: tuple[int, ...]) -> Permutation:
        image = list(range(1, n + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                image[a - 1] = b
        return cls(tuple(image))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, k: int) -> int:
        if not 1 <= k <= len(self.image):
            raise IndexError(f"{k} outside 1..{len(self.image)}")
        return self.image[k - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # (self * other)(k) = self(other(k))
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(self.image[k - 1] for k in other.image))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for k, v in enumerate(self.image, start=1):
            inv[v - 1] = k
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == k for k, v in enumerate(self.image, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for start in range(1, self.degree + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            k = self(start)
            while k != start:
                cycle.append(k)
                seen.add(k)
                k = self(k)
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + "".join(str(k) for k in c) + ")" for c in cyc)


def all_permutations(n: int) -> Iterator[Permutation]:
    for image in itertools.permutations(range(1, n + 1)):
        yield Permutation(image)


def collapse(n: int, m: int, i: int, k: int) -> int:
    """The i-collapse ``{1..n+m-1} -> {1..n}`` squashing the block ``i..i+m-1`` onto ``i``."""
    if not 1 <= i <= n:
        raise IndexError(f"composition position {i} outside 1..{n}")
    if not 1 <= k <= n + m - 1:
        raise IndexError(f"{k} outside 1..{n + m - 1}")
    if k < i:
        return k
    if k <= i + m - 1:
        return i
    return k - m + 1


def shift(i: int, m: int, k: int) -> int:
    """The i-th shift ``{i..i+m-1} -> {1..m}``."""
    if not i <= k <= i + m - 1:
        raise IndexError(f"{k} outside the block {i}..{i + m - 1}")
    return k - i + 1


def perm_partial_composition(sigma: Permutation, i: int, tau: Permutation) -> Permutation:
    """Expand position ``i`` of ``sigma`` into a block of size ``tau.degree`` permuted by ``tau``.

    ``tau`` may have degree 0, in which case position ``i`` is deleted.
    """
    n, m = sigma.degree, tau.degree
    if not 1 <= i <= n:
        raise IndexError(f"composition position {i} outside 1..{n}")
    si = sigma(i)
    image = []
    for k in range(1, n + m):
        if i <= k <= i + m - 1:
            image.append(tau(k - i + 1) + si - 1)
            continue
        s = sigma(k) if k < i else sigma(k - m + 1)
        image.append(s if s < si else s + m - 1)
    return Permutation(tuple(image))
