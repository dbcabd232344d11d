"""Transfer systems and indexing systems on a finite group.

Subgroups are referred to by their index in ``group.subgroups``.  A transfer
system stores only its non-reflexive pairs ``(K, H)`` with ``K < H``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .groups import FiniteGroup, GroupError, subgroup_from_name

Pair = tuple[int, int]

# up to this many comparable pairs, enumeration filters every subset
SUBSET_FILTER_LIMIT = 8


class TransferError(ValueError):
    pass


def comparable_pairs(group: FiniteGroup) -> list[Pair]:
    leq = group.leq
    n = len(group.subgroups)
    return [(k, h) for h in range(n) for k in range(n) if k != h and leq[k][h]]


def _check_pairs(group: FiniteGroup, pairs: Iterable[Pair]) -> frozenset[Pair]:
    leq = group.leq
    out = set()
    for k, h in pairs:
        if not leq[k][h]:
            raise TransferError(
                f"{group.subgroup_name(k)} is not a subgroup of {group.subgroup_name(h)}"
            )
        if k != h:
            out.add((k, h))
    return frozenset(out)


@dataclass(frozen=True)
class TransferSystem:
    group: FiniteGroup
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", frozenset(self.pairs))

    def __contains__(self, pair: Pair) -> bool:
        k, h = pair
        return k == h or (k, h) in self.pairs

    def related(self, k: int, h: int) -> bool:
        return k == h or (k, h) in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def sort_key(self) -> tuple[int, list[Pair]]:
        return (len(self.pairs), self.sorted_pairs())

    def __le__(self, other: TransferSystem) -> bool:
        return self.pairs <= other.pairs

    def __lt__(self, other: TransferSystem) -> bool:
        return self.pairs < other.pairs

    def describe(self) -> str:
        if not self.pairs:
            return "{}"
        name = self.group.subgroup_name
        return "{" + ", ".join(f"{name(k)}->{name(h)}" for k, h in self.sorted_pairs()) + "}"

    def to_json(self) -> dict:
        return {"group": self.group.name, "pairs": [list(p) for p in self.sorted_pairs()]}


def is_transfer_system(group: FiniteGroup, pairs: Iterable[Pair]) -> bool:
    rel = _check_pairs(group, pairs)
    n = len(group.subgroups)
    leq, conj, meet = group.leq, group.conj_table, group.meet_table

    def has(k: int, h: int) -> bool:
        return k == h or (k, h) in rel

    for k, h in rel:
        for g in group.elements:
            if not has(conj[k][g], conj[h][g]):
                return False
        for l in range(n):
            if (h, l) in rel and not has(k, l):
                return False
        for h2 in range(n):
            if leq[h2][h] and not has(meet[k][h2], h2):
                return False
    return True


def _saturate(group: FiniteGroup, pairs: set[Pair]) -> frozenset[Pair]:
    n = len(group.subgroups)
    leq, conj, meet = group.leq, group.conj_table, group.meet_table
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        new: set[Pair] = set()
        for k, h in rel:
            for g in group.elements:
                new.add((conj[k][g], conj[h][g]))
            for h2 in range(n):
                if leq[h2][h]:
                    new.add((meet[k][h2], h2))
            for k2, h2 in rel:
                if k2 == h:
                    new.add((k, h2))
        new = {(a, b) for a, b in new if a != b} - rel
        if new:
            rel |= new
            changed = True
    return frozenset(rel)


def generate_transfer_system(group: FiniteGroup, seed_pairs: Iterable[Pair] = ()) -> TransferSystem:
    """The least transfer system containing the seeds."""
    return TransferSystem(group, _saturate(group, set(_check_pairs(group, seed_pairs))))


def trivial_transfer_system(group: FiniteGroup) -> TransferSystem:
    return TransferSystem(group, frozenset())


def complete_transfer_system(group: FiniteGroup) -> TransferSystem:
    return TransferSystem(group, frozenset(comparable_pairs(group)))


def _by_subset_filter(group: FiniteGroup) -> list[frozenset[Pair]]:
    cands = comparable_pairs(group)
    out = []
    for r in range(len(cands) + 1):
        for subset in itertools.combinations(cands, r):
            if is_transfer_system(group, subset):
                out.append(frozenset(subset))
    return out


def _by_saturation(group: FiniteGroup) -> list[frozenset[Pair]]:
    # every transfer system is the join of its pairs, so closing upward
    # from the trivial system one generator at a time reaches all of them
    cands = comparable_pairs(group)
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for rel in frontier:
            for p in cands:
                if p in rel:
                    continue
                t = _saturate(group, set(rel) | {p})
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        frontier = nxt
    return list(seen)


def enumerate_transfer_systems(group: FiniteGroup, strategy: str = "auto") -> list[TransferSystem]:
    """All transfer systems, sorted by pair count then lexicographically."""
    if strategy == "auto":
        strategy = "filter" if len(comparable_pairs(group)) <= SUBSET_FILTER_LIMIT else "saturate"
    if strategy == "filter":
        rels = _by_subset_filter(group)
    elif strategy == "saturate":
        rels = _by_saturation(group)
    else:
        raise ValueError(f"unknown enumeration strategy {strategy!r}")
    systems = [TransferSystem(group, r) for r in set(rels)]
    systems.sort(key=TransferSystem.sort_key)
    return systems


def _same_group(t1: TransferSystem, t2: TransferSystem) -> None:
    if t1.group != t2.group:
        raise TransferError("transfer systems live on different groups")


def meet(t1: TransferSystem, t2: TransferSystem) -> TransferSystem:
    _same_group(t1, t2)
    return TransferSystem(t1.group, t1.pairs & t2.pairs)


def join(t1: TransferSystem, t2: TransferSystem) -> TransferSystem:
    _same_group(t1, t2)
    return generate_transfer_system(t1.group, t1.pairs | t2.pairs)


def covering_relations(systems: list[TransferSystem]) -> list[tuple[int, int]]:
    """Hasse diagram edges ``(a, b)`` with ``systems[a]`` covered by ``systems[b]``."""
    edges = []
    for a, s in enumerate(systems):
        for b, t in enumerate(systems):
            if s < t and not any(s < u < t for u in systems):
                edges.append((a, b))
    return edges


def hasse_dot(systems: list[TransferSystem]) -> str:
    lines = ["digraph transfer_systems {", "  rankdir=BT;", "  node [shape=box];"]
    for k, s in enumerate(systems):
        label = s.describe().replace('"', '\\"')
        lines.append(f'  t{k} [label="{label}"];')
    for a, b in covering_relations(systems):
        lines.append(f"  t{a} -> t{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_SUBGROUP_TOKEN = r"(?:<[^<>]*>|#?[\w^]+)"
_PAIR_RE = re.compile(rf"\s*({_SUBGROUP_TOKEN})\s*->\s*({_SUBGROUP_TOKEN})\s*(?:,|;|$)")


def parse_transfer_pairs(group: FiniteGroup, text: str) -> list[Pair]:
    """Parse ``"e->C2, C2->C4"`` into subgroup index pairs."""
    pairs = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _PAIR_RE.match(text, pos)
        if not m or m.end() == pos:
            raise TransferError(f"cannot parse transfer list at {text[pos:]!r}")
        try:
            pairs.append((subgroup_from_name(group, m.group(1)), subgroup_from_name(group, m.group(2))))
        except GroupError as exc:
            raise TransferError(str(exc)) from None
        pos = m.end()
    return pairs


def transfer_system_from_json(group: FiniteGroup, data: dict) -> TransferSystem:
    pairs = [tuple(p) for p in data["pairs"]]
    if not is_transfer_system(group, pairs):
        raise TransferError("pairs do not form a transfer system")
    return TransferSystem(group, frozenset(pairs))


# indexing systems -----------------------------------------------------------


@dataclass(frozen=True)
class HSet:
    """A finite H-set recorded as the multiset of its orbit stabilizers."""

    group: FiniteGroup
    acting: int
    stabilizers: tuple[int, ...]

    def __post_init__(self) -> None:
        leq = self.group.leq
        for k in self.stabilizers:
            if not leq[k][self.acting]:
                raise TransferError("stabilizer is not a subgroup of the acting group")
        object.__setattr__(self, "stabilizers", tuple(sorted(self.stabilizers)))

    @property
    def size(self) -> int:
        h = len(self.group.subgroup_sets[self.acting])
        return sum(h // len(self.group.subgroup_sets[k]) for k in self.stabilizers)

    def orbit_types(self) -> Counter:
        return Counter(self.stabilizers)


@dataclass(frozen=True)
class IndexingSystem:
    """Admissible orbit types: ``admissible[H]`` holds every K with H/K admissible."""

    group: FiniteGroup
    admissible: tuple[frozenset[int], ...]

    def admits(self, k: int, h: int) -> bool:
        return k in self.admissible[h]

    def violations(self) -> list[str]:
        """Failed closure conditions, phrased on orbits; empty for a valid system."""
        g = self.group
        sets, leq, conj = g.subgroup_sets, g.leq, g.conj_table
        n = len(sets)
        out = []
        for h in range(n):
            if h not in self.admissible[h]:
                out.append(f"trivial orbit missing at {g.subgroup_name(h)}")
            for k in self.admissible[h]:
                if not leq[k][h]:
                    out.append(f"{g.subgroup_name(k)} is not below {g.subgroup_name(h)}")
                    continue
                for x in g.elements:
                    if conj[k][x] not in self.admissible[conj[h][x]]:
                        out.append(f"conjugation: {k}->{h} by {g.label(x)}")
                for l in range(n):
                    if leq[l][h]:
                        for stab in restricted_stabilizers(g, h, k, l):
                            if stab not in self.admissible[l]:
                                out.append(f"restriction of {h}/{k} to {l}")
                for j in self.admissible[k]:
                    if j not in self.admissible[h]:
                        out.append(f"self-induction {h}x_{k}({k}/{j})")
                for k2 in self.admissible[h]:
                    for stab in restricted_stabilizers(g, h, k2, k):
                        if stab not in self.admissible[h]:
                            out.append(f"product {h}/{k} x {h}/{k2}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()


def restricted_stabilizers(group: FiniteGroup, h: int, k: int, l: int) -> list[int]:
    """Stabilizers of the L-orbits of the coset space H/K, for L <= H.

    The stabilizer of the coset xK in L is ``L ∩ xKx^-1``.
    """
    sets = group.subgroup_sets
    hs, ks, ls = sets[h], sets[k], sets[l]
    mul = group.mul
    cosets = {frozenset(mul[x][y] for y in ks) for x in hs}
    remaining = set(cosets)
    out = []
    for c in sorted(cosets, key=min):
        if c not in remaining:
            continue
        orbit = {frozenset(mul[a][y] for y in c) for a in ls}
        remaining -= orbit
        stab = [a for a in ls if frozenset(mul[a][y] for y in c) == c]
        out.append(group.subgroup_index(stab))
    return out


def transfer_to_indexing(t: TransferSystem) -> IndexingSystem:
    g = t.group
    n = len(g.subgroups)
    adm = tuple(
        frozenset(k for k in range(n) if g.leq[k][h] and t.related(k, h)) for h in range(n)
    )
    return IndexingSystem(g, adm)


def indexing_to_transfer(ind: IndexingSystem) -> TransferSystem:
    problems = ind.violations()
    if problems:
        raise TransferError("not an indexing system: " + "; ".join(problems[:3]))
    pairs = frozenset((k, h) for h, ks in enumerate(ind.admissible) for k in ks if k != h)
    return TransferSystem(ind.group, pairs)


def trivial_indexing_system(group: FiniteGroup) -> IndexingSystem:
    return IndexingSystem(group, tuple(frozenset([h]) for h in range(len(group.subgroups))))


def complete_indexing_system(group: FiniteGroup) -> IndexingSystem:
    leq = group.leq
    n = len(group.subgroups)
    return IndexingSystem(group, tuple(frozenset(k for k in range(n) if leq[k][h]) for h in range(n)))


def hset_in_indexing(ind: IndexingSystem, hset: HSet) -> bool:
    if hset.group != ind.group:
        raise TransferError("H-set and indexing system live on different groups")
    return all(ind.admits(k, hset.acting) for k in hset.stabilizers)
