"""Finite groups as multiplication tables, with their subgroup lattices.

Elements are the integers ``0..order-1`` and element ``0`` is always the
identity.  Groups are meant for desk-scale work (order at most ``MAX_ORDER``
unless the caller says otherwise).
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .permutations import Permutation, all_permutations

MAX_ORDER = 16


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(
        self,
        mul: Sequence[Sequence[int]],
        name: str = "G",
        labels: Sequence[str] | None = None,
        max_order: int = MAX_ORDER,
    ):
        order = len(mul)
        if order < 1:
            raise GroupError("a group has at least one element")
        if order > max_order:
            raise GroupError(f"order {order} exceeds the configured cap {max_order}")
        self.mul: tuple[tuple[int, ...], ...] = tuple(tuple(int(v) for v in row) for row in mul)
        if any(len(row) != order for row in self.mul):
            raise GroupError("multiplication table is not square")
        self.order = order
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(
            ["e"] + [f"g{k}" for k in range(1, order)]
        )
        if len(self.labels) != order:
            raise GroupError("one label per element is required")
        self._validate()
        inv = [0] * order
        for g in range(order):
            inv[g] = self.mul[g].index(0)
        self.inv: tuple[int, ...] = tuple(inv)

    def _validate(self) -> None:
        n = self.order
        for row in self.mul:
            if sorted(row) != list(range(n)):
                raise GroupError("multiplication table is not a Latin square")
        for g in range(n):
            if self.mul[0][g] != g or self.mul[g][0] != g:
                raise GroupError("element 0 must be the two-sided identity")
        m = self.mul
        for a in range(n):
            ma = m[a]
            for b in range(n):
                mab = m[ma[b]]
                mb = m[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise GroupError(f"not associative at ({a}, {b}, {c})")

    identity = 0

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self) -> int:
        return hash(self.mul)

    @property
    def elements(self) -> range:
        return range(self.order)

    def op(self, a: int, b: int) -> int:
        return self.mul[a][b]

    def conj(self, h: int, g: int) -> int:
        """``g^-1 h g``."""
        return self.mul[self.mul[self.inv[g]][h]][g]

    def label(self, g: int) -> str:
        return self.labels[g]

    def element_from_label(self, text: str) -> int:
        text = text.strip()
        if text in ("e", "1", "id"):
            return 0
        try:
            return self.labels.index(text)
        except ValueError:
            raise GroupError(f"unknown element {text!r} in {self.name}") from None

    def is_abelian(self) -> bool:
        return all(self.mul[a][b] == self.mul[b][a] for a in self.elements for b in self.elements)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != 0:
            x = self.mul[x][g]
            k += 1
        return k

    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        elems = {0}
        frontier = [0]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    @cached_property
    def subgroups(self) -> list[Subgroup]:
        return enumerate_subgroups(self)

    @cached_property
    def subgroup_sets(self) -> list[frozenset[int]]:
        return [frozenset(s.elements) for s in self.subgroups]

    @cached_property
    def _subgroup_index(self) -> dict[frozenset[int], int]:
        return {s: k for k, s in enumerate(self.subgroup_sets)}

    def subgroup_index(self, elements: Iterable[int]) -> int:
        key = frozenset(elements)
        try:
            return self._subgroup_index[key]
        except KeyError:
            raise GroupError(f"{sorted(key)} is not a subgroup of {self.name}") from None

    @cached_property
    def leq(self) -> list[list[bool]]:
        """``leq[a][b]`` iff subgroup ``a`` is contained in subgroup ``b``."""
        sets = self.subgroup_sets
        return [[sa <= sb for sb in sets] for sa in sets]

    @cached_property
    def conj_table(self) -> list[list[int]]:
        """``conj_table[k][g]`` is the index of ``g^-1 H_k g``."""
        out = []
        for s in self.subgroup_sets:
            out.append([self.subgroup_index(self.conj(h, g) for h in s) for g in self.elements])
        return out

    @cached_property
    def meet_table(self) -> list[list[int]]:
        sets = self.subgroup_sets
        return [[self.subgroup_index(a & b) for b in sets] for a in sets]

    def subgroups_inside(self, subset: frozenset[int]) -> list[int]:
        """Indices of inclusion-maximal subgroups contained in ``subset``."""
        return _maximal_inside(self, subset)

    def subgroup_name(self, k: int) -> str:
        """Short name, falling back to generators when the short name is shared."""
        return self._display_names[k]

    @cached_property
    def _display_names(self) -> list[str]:
        names = [s.name() for s in self.subgroups]
        return [n if names.count(n) == 1 else s.generator_name() for n, s in zip(names, self.subgroups)]


@lru_cache(maxsize=None)
def _maximal_inside_cached(group: FiniteGroup, subset: frozenset[int]) -> tuple[int, ...]:
    sets = group.subgroup_sets
    inside = [k for k, s in enumerate(sets) if s <= subset]
    maximal = [k for k in inside if not any(sets[k] < sets[j] for j in inside)]
    return tuple(maximal)


def _maximal_inside(group: FiniteGroup, subset: frozenset[int]) -> list[int]:
    return list(_maximal_inside_cached(group, subset))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup in canonical form: its sorted element list."""

    elements: tuple[int, ...]
    parent: FiniteGroup = field(compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements)))
        object.__setattr__(self, "elements", elems)
        g = self.parent
        if 0 not in elems:
            raise GroupError("a subgroup contains the identity")
        s = set(elems)
        for a in elems:
            if g.inv[a] not in s:
                raise GroupError("not closed under inverses")
            for b in elems:
                if g.mul[a][b] not in s:
                    raise GroupError("not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.elements

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.elements), self.elements)

    @property
    def index(self) -> int:
        return self.parent.subgroup_index(self.elements)

    def is_subgroup_of(self, other: Subgroup) -> bool:
        return set(self.elements) <= set(other.elements)

    def is_cyclic(self) -> bool:
        return any(self.parent.element_order(g) == self.order for g in self.elements)

    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by element index."""
        gens: list[int] = []
        span = frozenset([0])
        for g in self.elements:
            if g not in span:
                gens.append(g)
                span = self.parent.closure(gens)
            if len(span) == self.order:
                break
        return gens

    def name(self) -> str:
        g = self.parent
        if self.order == 1:
            return "e"
        if self.is_cyclic():
            return f"C{self.order}"
        if self.order == g.order:
            return "G"
        return "<" + ",".join(g.label(x) for x in self.generators()) + ">"

    def generator_name(self) -> str:
        if self.order == 1:
            return "e"
        return "<" + ",".join(self.parent.label(x) for x in self.generators()) + ">"


def enumerate_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All subgroups, sorted by ``(size, elements)``.

    Every subgroup is generated by at most ``log2 |G|`` elements, so closing
    the trivial group under one extra generator at a time reaches them all.
    """
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for s in frontier:
            for g in group.elements:
                if g in s:
                    continue
                t = group.closure(set(s) | {g})
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    subs = [Subgroup(tuple(sorted(s)), group) for s in found]
    subs.sort(key=Subgroup.sort_key)
    return subs


def conjugate_subgroup(h: Subgroup, g: int) -> Subgroup:
    """``g^-1 H g``."""
    grp = h.parent
    return Subgroup(tuple(grp.conj(x, g) for x in h.elements), grp)


def _power_labels(gen: str, n: int) -> list[str]:
    return ["e"] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, n)]


def make_cyclic(n: int, gen: str = "s", max_order: int = MAX_ORDER) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(mul, name=f"C{n}", labels=_power_labels(gen, n), max_order=max_order)


def direct_product(g1: FiniteGroup, g2: FiniteGroup, max_order: int = MAX_ORDER) -> FiniteGroup:
    """Componentwise product; element ``(a, b)`` is numbered ``a * |G2| + b``."""
    n2 = g2.order
    pairs = [(a, b) for a in g1.elements for b in g2.elements]
    mul = [[g1.mul[a][c] * n2 + g2.mul[b][d] for (c, d) in pairs] for (a, b) in pairs]

    def lab(a: int, b: int) -> str:
        if a == 0:
            return g2.label(b)
        if b == 0:
            return g1.label(a)
        return g1.label(a) + g2.label(b)

    labels = [lab(a, b) for (a, b) in pairs]
    if len(set(labels)) != len(labels):
        labels = [f"({g1.label(a)},{g2.label(b)})" for (a, b) in pairs]
        labels[0] = "e"
    return FiniteGroup(mul, name=f"{g1.name}x{g2.name}", labels=labels, max_order=max_order)


def symmetric_group(n: int, max_order: int = MAX_ORDER) -> FiniteGroup:
    perms = sorted(all_permutations(n), key=lambda p: (not p.is_identity(), p.image))
    index = {p: k for k, p in enumerate(perms)}
    mul = [[index[p * q] for q in perms] for p in perms]
    labels = ["e" if p.is_identity() else str(p) for p in perms]
    return FiniteGroup(mul, name=f"S{n}", labels=labels, max_order=max_order)


def preset_group(name: str, max_order: int = MAX_ORDER) -> FiniteGroup:
    """Groups by name: ``C4``, ``C2xC3``, ``C2xC2xC2``, ``S3``."""
    text = name.strip()
    m = re.fullmatch(r"S(\d+)", text)
    if m:
        return symmetric_group(int(m.group(1)), max_order=max_order)
    factors = text.split("x")
    groups = []
    for k, part in enumerate(factors):
        m = re.fullmatch(r"C(\d+)", part)
        if not m:
            raise GroupError(f"unknown group preset {name!r}")
        # single factor generated by s; products by t, s, u, ... (C2<t> x C3<s>)
        gen = "s" if len(factors) == 1 else "tsuvw"[k]
        groups.append(make_cyclic(int(m.group(1)), gen=gen, max_order=max_order))
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g, max_order=max_order)
    out.name = text
    return out


def group_to_json(group: FiniteGroup) -> dict:
    return {"name": group.name, "order": group.order, "mul": [list(r) for r in group.mul]}


def group_from_json(data: dict, max_order: int = MAX_ORDER) -> FiniteGroup:
    mul = data["mul"]
    if "order" in data and data["order"] != len(mul):
        raise GroupError("declared order does not match the table")
    return FiniteGroup(mul, name=data.get("name", "G"), labels=data.get("labels"), max_order=max_order)


def load_group(spec: str, max_order: int = MAX_ORDER) -> FiniteGroup:
    """A preset name or a path to a JSON group file."""
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        return group_from_json(json.loads(path.read_text()), max_order=max_order)
    return preset_group(spec, max_order=max_order)


def find_isomorphism(g1: FiniteGroup, g2: FiniteGroup) -> dict[int, int] | None:
    """Brute-force search for an isomorphism, fixing the identity."""
    if g1.order != g2.order:
        return None
    n = g1.order
    orders1 = [g1.element_order(g) for g in g1.elements]
    orders2 = [g2.element_order(g) for g in g2.elements]
    if sorted(orders1) != sorted(orders2):
        return None
    for perm in itertools.permutations(range(1, n)):
        f = (0,) + perm
        if any(orders1[a] != orders2[f[a]] for a in range(n)):
            continue
        if all(f[g1.mul[a][b]] == g2.mul[f[a]][f[b]] for a in range(n) for b in range(n)):
            return dict(enumerate(f))
    return None


def subgroup_from_name(group: FiniteGroup, text: str) -> int:
    """Resolve ``e``, ``G``, ``C2``, ``<s^2>`` or ``#3`` to a subgroup index."""
    text = text.strip()
    subs = group.subgroups
    if text.startswith("#"):
        k = int(text[1:])
        if not 0 <= k < len(subs):
            raise GroupError(f"subgroup index {k} out of range")
        return k
    if text == "e":
        return 0
    if text in ("G", group.name):
        return len(subs) - 1
    if text.startswith("<") and text.endswith(">"):
        gens = [group.element_from_label(t) for t in text[1:-1].split(",") if t.strip()]
        return group.subgroup_index(group.closure(gens))
    matches = [k for k, s in enumerate(subs) if s.name() == text]
    if not matches:
        raise GroupError(f"no subgroup named {text!r} in {group.name}")
    if len(matches) > 1:
        alts = ", ".join(subs[k].generator_name() for k in matches)
        raise GroupError(f"{text!r} is ambiguous in {group.name}; use one of {alts}")
    return matches[0]
