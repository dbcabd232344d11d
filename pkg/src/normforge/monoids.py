"""Intersection monoids: a monoid with a reflexive, symmetric "intersects" relation.

Three concrete instances are provided, all with exact equality:

* ``DyadicMonoid``: words over ``{a, b}`` under concatenation; two words are
  disjoint when they differ somewhere in their common prefix length.
* ``EmbeddingMonoid``: affine maps ``z -> a z + b`` of the unit interval with
  rational coefficients, composed as functions; two maps intersect when the
  open images overlap.
* ``FatDyadicMonoid``: the discrete shadow of the fat dyadic monoid, letters
  paired with rational weights, where weight-0 letters vanish.

``TrivialMonoid`` has everything intersecting and serves as the degenerate case.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Sequence


class TrivialMonoidError(ValueError):
    """Raised when disjoint elements are requested from a trivial monoid."""


class IntersectionMonoid:
    """Interface shared by the concrete monoids.

    Subclasses set ``name`` and ``unit`` and implement ``mul``, ``intersects``,
    ``witness`` (a disjoint pair, or ``None``) and ``pool`` (finitely many
    values used by the randomized suites and bounded searches).
    """

    name: str = "abstract"
    unit: Any = None

    def mul(self, x, y):
        raise NotImplementedError

    def intersects(self, x, y) -> bool:
        raise NotImplementedError

    def disjoint(self, x, y) -> bool:
        return not self.intersects(x, y)

    def witness(self) -> tuple[Any, Any] | None:
        return None

    def is_trivial(self) -> bool:
        return self.witness() is None

    def pool(self, max_length: int) -> list:
        raise NotImplementedError

    def random_value(self, rng: random.Random, max_length: int = 3):
        return rng.choice(self.pool(max_length))

    def encode(self, x) -> Any:
        return x

    def decode(self, data) -> Any:
        return data

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"


def disjoint_family(monoid: IntersectionMonoid, n: int) -> list:
    """``n`` pairwise disjoint values, by repeatedly splitting the last one.

    From a disjoint family ``x1..xn`` the family ``x1..x(n-1), xn*x1, xn*x2`` is
    again pairwise disjoint.
    """
    if n < 1:
        raise ValueError("family size must be positive")
    pair = monoid.witness()
    if pair is None:
        raise TrivialMonoidError(f"the {monoid.name} monoid has no disjoint pair")
    family = list(pair)
    if n == 1:
        return family[:1]
    while len(family) < n:
        first, second = family[0], family[1]
        last = family.pop()
        family.extend([monoid.mul(last, first), monoid.mul(last, second)])
    return family


# dyadic words ----------------------------------------------------------------


def _check_word(w: str) -> str:
    if not isinstance(w, str) or set(w) - {"a", "b"}:
        raise ValueError(f"not a word over 'ab': {w!r}")
    return w


def dyadic_mul(w1: str, w2: str) -> str:
    return _check_word(w1) + _check_word(w2)


def dyadic_intersects(w1: str, w2: str) -> bool:
    """True unless the words differ at some position within both lengths."""
    return all(x == y for x, y in zip(w1, w2))


def dyadic_words(max_length: int, min_length: int = 0) -> list[str]:
    out = []
    for k in range(min_length, max_length + 1):
        out.extend("".join(p) for p in itertools.product("ab", repeat=k))
    return out


class DyadicMonoid(IntersectionMonoid):
    name = "dyadic"
    unit = ""

    def mul(self, x: str, y: str) -> str:
        return x + y

    def intersects(self, x: str, y: str) -> bool:
        return dyadic_intersects(x, y)

    def witness(self) -> tuple[str, str]:
        return ("a", "b")

    def pool(self, max_length: int) -> list[str]:
        return dyadic_words(max_length)


# rational affine embeddings ---------------------------------------------------


@dataclass(frozen=True, order=True)
class RationalEmbedding:
    """The map ``z -> scale * z + offset`` on ``[0, 1]``."""

    scale: Fraction
    offset: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        a, b = Fraction(self.scale), Fraction(self.offset)
        if a <= 0 or b < 0 or a + b > 1:
            raise ValueError(f"z -> {a} z + {b} does not embed [0,1] in itself")
        object.__setattr__(self, "scale", a)
        object.__setattr__(self, "offset", b)

    def __call__(self, z: Fraction) -> Fraction:
        return self.scale * z + self.offset

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.offset, self.offset + self.scale)

    def __str__(self) -> str:
        return f"{self.scale}z+{self.offset}"


IDENTITY_EMBEDDING = RationalEmbedding(Fraction(1), Fraction(0))


def embedding_mul(x: RationalEmbedding, y: RationalEmbedding) -> RationalEmbedding:
    """Composite ``x after y``."""
    return RationalEmbedding(x.scale * y.scale, x.scale * y.offset + x.offset)


def embedding_intersects(x: RationalEmbedding, y: RationalEmbedding) -> bool:
    (a0, a1), (b0, b1) = x.interval, y.interval
    return max(a0, b0) < min(a1, b1)


_HALF = RationalEmbedding(Fraction(1, 2), Fraction(0))
_HALF_UP = RationalEmbedding(Fraction(1, 2), Fraction(1, 2))


def word_to_embedding(w: str) -> RationalEmbedding:
    """Send ``a`` to ``z/2`` and ``b`` to ``z/2 + 1/2``, extended multiplicatively."""
    out = IDENTITY_EMBEDDING
    for letter in _check_word(w):
        out = embedding_mul(out, _HALF if letter == "a" else _HALF_UP)
    return out


class EmbeddingMonoid(IntersectionMonoid):
    name = "rational-embedding"
    unit = IDENTITY_EMBEDDING

    def mul(self, x, y):
        return embedding_mul(x, y)

    def intersects(self, x, y) -> bool:
        return embedding_intersects(x, y)

    def witness(self):
        return (_HALF, _HALF_UP)

    def pool(self, max_length: int) -> list[RationalEmbedding]:
        # dyadic images plus quarter-scale maps at eighth offsets
        out = {word_to_embedding(w) for w in dyadic_words(max_length)}
        out |= {RationalEmbedding(Fraction(1, 4), Fraction(k, 8)) for k in range(7)}
        return sorted(out)

    def encode(self, x: RationalEmbedding) -> dict:
        return {
            "a": [x.scale.numerator, x.scale.denominator],
            "b": [x.offset.numerator, x.offset.denominator],
        }

    def decode(self, data: dict) -> RationalEmbedding:
        return RationalEmbedding(Fraction(*data["a"]), Fraction(*data["b"]))


# fat dyadic points --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FatDyadicPoint:
    """A representative ``(letters; weights)``; equality is on reduced forms."""

    letters: str
    weights: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        _check_word(self.letters)
        weights = tuple(Fraction(t) for t in self.weights)
        if len(weights) != len(self.letters):
            raise ValueError("one weight per letter")
        if any(t < 0 or t > 1 for t in weights):
            raise ValueError("weights live in [0, 1]")
        object.__setattr__(self, "weights", weights)

    def reduced(self) -> FatDyadicPoint:
        return fat_reduce(self)

    def _key(self) -> tuple[str, tuple[Fraction, ...]]:
        r = fat_reduce(self)
        return (r.letters, r.weights)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FatDyadicPoint):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __lt__(self, other: FatDyadicPoint) -> bool:
        return self._key() < other._key()

    def __str__(self) -> str:
        ws = ",".join(str(t) for t in self.weights)
        return f"[({self.letters};{ws})]"


def fat_reduce(p: FatDyadicPoint) -> FatDyadicPoint:
    keep = [(l, t) for l, t in zip(p.letters, p.weights) if t != 0]
    if len(keep) == len(p.letters):
        return p
    return FatDyadicPoint("".join(l for l, _ in keep), tuple(t for _, t in keep))


def fat_omega(p: FatDyadicPoint) -> str:
    return fat_reduce(p).letters


def fat_mul(p: FatDyadicPoint, q: FatDyadicPoint) -> FatDyadicPoint:
    return fat_reduce(FatDyadicPoint(p.letters + q.letters, p.weights + q.weights))


def fat_intersects(p: FatDyadicPoint, q: FatDyadicPoint) -> bool:
    return dyadic_intersects(fat_omega(p), fat_omega(q))


def fat_from_word(w: str) -> FatDyadicPoint:
    return FatDyadicPoint(w, tuple(Fraction(1) for _ in w))


FAT_UNIT = FatDyadicPoint("", ())


class FatDyadicMonoid(IntersectionMonoid):
    name = "fat-dyadic"
    unit = FAT_UNIT

    def mul(self, x, y):
        return fat_mul(x, y)

    def intersects(self, x, y) -> bool:
        return fat_intersects(x, y)

    def witness(self):
        return (fat_from_word("a"), fat_from_word("b"))

    def pool(self, max_length: int) -> list[FatDyadicPoint]:
        weights = (Fraction(0), Fraction(1, 2), Fraction(1))
        out = set()
        for w in dyadic_words(max_length):
            for ts in itertools.product(weights, repeat=len(w)):
                out.add(fat_reduce(FatDyadicPoint(w, ts)))
        return sorted(out)

    def encode(self, x: FatDyadicPoint) -> dict:
        return {
            "letters": x.letters,
            "weights": [[t.numerator, t.denominator] for t in x.weights],
        }

    def decode(self, data: dict) -> FatDyadicPoint:
        return FatDyadicPoint(data["letters"], tuple(Fraction(*t) for t in data["weights"]))


class TrivialMonoid(IntersectionMonoid):
    """The one-element monoid; every pair intersects."""

    name = "trivial"
    unit = ()

    def mul(self, x, y):
        return ()

    def intersects(self, x, y) -> bool:
        return True

    def pool(self, max_length: int) -> list:
        return [()]


DYADIC = DyadicMonoid()
EMBEDDING = EmbeddingMonoid()
FAT_DYADIC = FatDyadicMonoid()
TRIVIAL = TrivialMonoid()

MONOIDS: dict[str, IntersectionMonoid] = {
    m.name: m for m in (DYADIC, EMBEDDING, FAT_DYADIC, TRIVIAL)
}


def get_monoid(name: str) -> IntersectionMonoid:
    try:
        return MONOIDS[name]
    except KeyError:
        raise ValueError(f"unknown monoid {name!r}; choose from {sorted(MONOIDS)}") from None


def axiom_violations(monoid: IntersectionMonoid, values: Sequence[Hashable]) -> list[str]:
    """Check the monoid and intersection axioms exhaustively on ``values``.

    Conditions checked: unit, associativity, reflexivity, symmetry,
    ``x1 y1 ^ x2 y2 => x1 ^ x2`` and ``x y1 ^ x y2 => y1 ^ y2``.
    """
    mul, meets = monoid.mul, monoid.intersects
    out = []
    for x in values:
        if mul(monoid.unit, x) != x or mul(x, monoid.unit) != x:
            out.append(f"unit fails at {x}")
        if not meets(x, x):
            out.append(f"reflexivity fails at {x}")
    for x, y in itertools.product(values, repeat=2):
        if meets(x, y) != meets(y, x):
            out.append(f"symmetry fails at {x}, {y}")
        for z in values:
            if mul(mul(x, y), z) != mul(x, mul(y, z)):
                out.append(f"associativity fails at {x}, {y}, {z}")
            if meets(mul(x, y), mul(x, z)) and not meets(y, z):
                out.append(f"left cancellation fails at {x}; {y}, {z}")
    for x1, x2, y1, y2 in itertools.product(values, repeat=4):
        if meets(mul(x1, y1), mul(x2, y2)) and not meets(x1, x2):
            out.append(f"right invariance fails at {x1}, {x2}; {y1}, {y2}")
    return out
