"""The coinduced operad ``O^G(M)``: tables ``G x {1..n} -> M``.

Also the realization suboperads (Sigma-disjoint, strict-column, and the
``tau``-restricted variant), graph subgroups of ``G x Sigma_n`` with their
orbits, the orbit-labelling constructor ``psi_gamma``, and the fixed-point
decision procedure with its bounded brute-force confirmation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

from .groups import FiniteGroup
from .indexing import IndexGraph, complete_graph, graph_supports_transfers, nonreflexive, p_graph, support_witnesses
from .monoids import DYADIC, IntersectionMonoid, disjoint_family
from .permutations import Permutation, all_permutations, collapse, shift
from .transfer import HSet, TransferSystem, hset_in_indexing, transfer_to_indexing

Vertex = tuple[int, int]


class CoinducedError(ValueError):
    pass


@dataclass(frozen=True)
class CoinducedElement:
    """``table[g][i-1]`` is the value at ``(g, i)``; arity 0 has empty rows."""

    group: FiniteGroup
    n: int
    monoid: IntersectionMonoid
    table: tuple[tuple[Any, ...], ...]

    def __post_init__(self) -> None:
        table = tuple(tuple(row) for row in self.table)
        if len(table) != self.group.order or any(len(row) != self.n for row in table):
            raise CoinducedError(f"table must be {self.group.order} rows of {self.n} values")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_function(
        cls, group: FiniteGroup, n: int, monoid: IntersectionMonoid, f: Callable[[int, int], Any]
    ) -> CoinducedElement:
        return cls(group, n, monoid, tuple(tuple(f(g, i) for i in range(1, n + 1)) for g in group.elements))

    @classmethod
    def unit(cls, group: FiniteGroup, monoid: IntersectionMonoid) -> CoinducedElement:
        return cls(group, 1, monoid, tuple((monoid.unit,) for _ in group.elements))

    @classmethod
    def point(cls, group: FiniteGroup, monoid: IntersectionMonoid) -> CoinducedElement:
        return cls(group, 0, monoid, tuple(() for _ in group.elements))

    def __call__(self, g: int, i: int) -> Any:
        if not 1 <= i <= self.n:
            raise IndexError(f"column {i} outside 1..{self.n}")
        return self.table[g][i - 1]

    def column(self, i: int) -> list[Any]:
        return [row[i - 1] for row in self.table]

    def is_sigma_disjoint(self) -> bool:
        meets = self.monoid.intersects
        return all(
            not meets(row[a], row[b]) for row in self.table for a, b in itertools.combinations(range(self.n), 2)
        )

    def has_strict_columns(self) -> bool:
        meets = self.monoid.intersects
        for i in range(1, self.n + 1):
            col = set(self.column(i))
            if any(meets(u, v) for u, v in itertools.combinations(col, 2)):
                return False
        return True

    def to_json(self) -> dict:
        enc = self.monoid.encode
        lab = self.group.label
        return {
            "group": self.group.name,
            "monoid": self.monoid.name,
            "n": self.n,
            "table": {
                f"({lab(g)},{i})": enc(self.table[g][i - 1])
                for g in self.group.elements
                for i in range(1, self.n + 1)
            },
        }

    @classmethod
    def from_json(cls, group: FiniteGroup, monoid: IntersectionMonoid, data: dict) -> CoinducedElement:
        if data.get("monoid", monoid.name) != monoid.name:
            raise CoinducedError(f"element is tagged {data['monoid']!r}, not {monoid.name!r}")
        n = int(data["n"])
        cells = {}
        for key, value in data["table"].items():
            g_text, i_text = key.strip("()").rsplit(",", 1)
            cells[(group.element_from_label(g_text.strip()), int(i_text))] = monoid.decode(value)
        missing = [(g, i) for g in group.elements for i in range(1, n + 1) if (g, i) not in cells]
        if missing:
            raise CoinducedError(f"table is missing cells {missing[:3]}")
        return cls.from_function(group, n, monoid, lambda g, i: cells[(g, i)])

    def format(self) -> str:
        lab = self.group.label
        width = max((len(lab(g)) for g in self.group.elements), default=1)
        lines = []
        for g in self.group.elements:
            cells = "  ".join(str(v) if v != "" else "e" for v in self.table[g])
            lines.append(f"{lab(g):>{width}} | {cells}")
        return "\n".join(lines)


def _check_compatible(x: CoinducedElement, y: CoinducedElement) -> None:
    if x.group != y.group:
        raise CoinducedError("elements live over different groups")
    if x.monoid is not y.monoid:
        raise CoinducedError("elements take values in different monoids")


def compose(x: CoinducedElement, i: int, y: CoinducedElement) -> CoinducedElement:
    _check_compatible(x, y)
    n, m = x.n, y.n
    if not 1 <= i <= n:
        raise CoinducedError(f"composition position {i} outside 1..{n}")
    mul = x.monoid.mul
    rows = []
    for g in x.group.elements:
        xr, yr = x.table[g], y.table[g]
        row = []
        for k in range(1, n + m):
            c = collapse(n, m, i, k)
            if c == i:
                row.append(mul(xr[i - 1], yr[shift(i, m, k) - 1]))
            else:
                row.append(xr[c - 1])
        rows.append(tuple(row))
    return CoinducedElement(x.group, n + m - 1, x.monoid, tuple(rows))


def act(g: int, sigma: Permutation, x: CoinducedElement) -> CoinducedElement:
    if sigma.degree != x.n:
        raise CoinducedError("permutation degree does not match the arity")
    grp = x.group
    g_inv = grp.inv[g]
    sigma_inv = sigma.inverse()
    return CoinducedElement.from_function(
        grp, x.n, x.monoid, lambda k, i: x.table[grp.mul[g_inv][k]][sigma_inv(i) - 1]
    )


def unit_element(group: FiniteGroup, monoid: IntersectionMonoid) -> CoinducedElement:
    return CoinducedElement.unit(group, monoid)


def is_sigma_disjoint(x: CoinducedElement) -> bool:
    return x.is_sigma_disjoint()


def has_strict_columns(x: CoinducedElement) -> bool:
    return x.has_strict_columns()


def in_R_G(x: CoinducedElement) -> bool:
    return x.is_sigma_disjoint() and x.has_strict_columns()


def element_supports_transfers(x: CoinducedElement) -> set[tuple[int, int]]:
    """Supported ``(K, H)``, reflexive pairs included, read off the intersection graph."""
    return graph_supports_transfers(p_graph(x, require_sigma_disjoint=False))


def in_R_tau(x: CoinducedElement, t: TransferSystem) -> bool:
    if x.group != t.group:
        raise CoinducedError("element and transfer system live over different groups")
    if not in_R_G(x):
        return False
    return all(t.related(k, h) for k, h in element_supports_transfers(x))


def is_sigma_free(x: CoinducedElement) -> bool:
    """Trivial stabilizer in ``{e} x Sigma_n``, checked over every permutation."""
    e = 0
    return all(act(e, s, x) != x for s in all_permutations(x.n) if not s.is_identity())


# graph subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class GraphSubgroup:
    """The graph ``{(h, phi(h))}`` of a homomorphism ``phi: H -> Sigma_n``."""

    group: FiniteGroup
    h: int
    phi: tuple[Permutation, ...]
    n: int
    members: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        members = tuple(sorted(self.group.subgroup_sets[self.h]))
        object.__setattr__(self, "members", members)
        if len(self.phi) != len(members):
            raise CoinducedError("one permutation per element of H")
        if any(p.degree != self.n for p in self.phi):
            raise CoinducedError("permutations must have degree n")
        table = dict(zip(members, self.phi))
        mul = self.group.mul
        for a in members:
            for b in members:
                if table[mul[a][b]] != table[a] * table[b]:
                    raise CoinducedError("phi is not a homomorphism")

    @classmethod
    def from_map(cls, group: FiniteGroup, h: int, n: int, phi: dict[int, Permutation]) -> GraphSubgroup:
        members = sorted(group.subgroup_sets[h])
        return cls(group, h, tuple(phi[a] for a in members), n)

    @classmethod
    def trivial_action(cls, group: FiniteGroup, h: int, n: int) -> GraphSubgroup:
        size = len(group.subgroup_sets[h])
        return cls(group, h, tuple(Permutation.identity(n) for _ in range(size)), n)

    def phi_of(self, a: int) -> Permutation:
        return self.phi[self.members.index(a)]

    def acting_on(self, a: int, v: Vertex) -> Vertex:
        return (self.group.mul[a][v[0]], self.phi_of(a)(v[1]))

    def hset(self) -> HSet:
        """The H-set ``{1..n}`` through ``phi``, as its orbit stabilizers."""
        remaining = set(range(1, self.n + 1))
        stabs = []
        while remaining:
            j = min(remaining)
            orbit = {p(j) for p in self.phi}
            remaining -= orbit
            stabs.append(self.group.subgroup_index(a for a, p in zip(self.members, self.phi) if p(j) == j))
        return HSet(self.group, self.h, tuple(stabs))

    def orbits(self) -> list[tuple[Vertex, ...]]:
        """Orbits on ``G x {1..n}``, each sorted, ordered by least vertex."""
        verts = [(g, i) for g in self.group.elements for i in range(1, self.n + 1)]
        parent = {v: v for v in verts}

        def find(v: Vertex) -> Vertex:
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        gens = self.group.subgroups[self.h].generators()
        for a in gens:
            for v in verts:
                ra, rb = find(v), find(self.acting_on(a, v))
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups: dict[Vertex, list[Vertex]] = {}
        for v in verts:
            groups.setdefault(find(v), []).append(v)
        return sorted((tuple(sorted(o)) for o in groups.values()), key=lambda o: o[0])

    def fixes(self, x: CoinducedElement) -> bool:
        return all(act(a, p, x) == x for a, p in zip(self.members, self.phi))

    def fixes_graph(self, gr: IndexGraph) -> bool:
        from .indexing import graph_act

        return all(graph_act(a, p, gr) == gr for a, p in zip(self.members, self.phi))

    def describe(self) -> str:
        lab = self.group.label
        parts = ", ".join(f"{lab(a)}->{p}" for a, p in zip(self.members, self.phi))
        return f"{self.group.subgroup_name(self.h)} via [{parts}]"

    def to_json(self) -> dict:
        lab = self.group.label
        return {
            "H": self.h,
            "n": self.n,
            "phi": {lab(a): list(p.image) for a, p in zip(self.members, self.phi)},
        }


def homomorphisms(group: FiniteGroup, h: int, n: int) -> Iterator[dict[int, Permutation]]:
    """Every homomorphism ``H -> Sigma_n``, by choosing generator images and closing up."""
    gens = group.subgroups[h].generators()
    perms = list(all_permutations(n))
    mul = group.mul
    seen = set()
    for images in itertools.product(perms, repeat=len(gens)):
        phi = {0: Permutation.identity(n)}
        queue = [0]
        ok = True
        while queue and ok:
            a = queue.pop()
            for gen, p in zip(gens, images):
                b = mul[a][gen]
                val = phi[a] * p
                if b in phi:
                    if phi[b] != val:
                        ok = False
                        break
                else:
                    phi[b] = val
                    queue.append(b)
        if ok:
            key = tuple(sorted(phi.items()))
            if key not in seen:
                seen.add(key)
                yield phi


def enumerate_graph_subgroups(group: FiniteGroup, n: int) -> list[GraphSubgroup]:
    out = []
    for h in range(len(group.subgroups)):
        for phi in homomorphisms(group, h, n):
            out.append(GraphSubgroup.from_map(group, h, n, phi))
    return out


def coset_graph_subgroup(group: FiniteGroup, k: int, h: int, ordering: str = "least") -> GraphSubgroup:
    """``H`` acting on its left cosets ``aK``, numbered by least element.

    ``ordering="reversed"`` numbers them in the opposite order; admissibility
    does not depend on the choice.
    """
    if not group.leq[k][h]:
        raise CoinducedError("K must be a subgroup of H")
    mul = group.mul
    hs, ks = group.subgroup_sets[h], group.subgroup_sets[k]
    cosets = sorted({frozenset(mul[a][b] for b in ks) for a in hs}, key=min)
    if ordering == "reversed":
        cosets.reverse()
    elif ordering != "least":
        raise CoinducedError(f"unknown coset ordering {ordering!r}")
    pos = {c: j for j, c in enumerate(cosets, start=1)}
    phi = {}
    for a in hs:
        phi[a] = Permutation(tuple(pos[frozenset(mul[a][b] for b in c)] for c in cosets))
    return GraphSubgroup.from_map(group, h, len(cosets), phi)


# the orbit-labelling constructor ---------------------------------------------------


def psi_gamma(gamma: GraphSubgroup, labels: Sequence[Any], monoid: IntersectionMonoid = DYADIC) -> CoinducedElement:
    orbits = gamma.orbits()
    if len(labels) != len(orbits):
        raise CoinducedError(f"need {len(orbits)} labels, one per orbit, got {len(labels)}")
    for u, v in itertools.combinations(labels, 2):
        if monoid.intersects(u, v):
            raise CoinducedError(f"labels {u!r} and {v!r} are not disjoint")
    return _label_orbits(gamma, orbits, labels, monoid)


def orbit_clique_graph(gamma: GraphSubgroup) -> IndexGraph:
    """The disjoint union of complete graphs on the orbits (same-row pairs omitted)."""
    edges = set()
    for orbit in gamma.orbits():
        edges |= complete_graph(gamma.group, gamma.n, orbit).edges
    return IndexGraph(gamma.group, gamma.n, frozenset(edges))


@dataclass(frozen=True)
class FixedPointVerdict:
    status: str  # "nonempty", "empty" or "unknown"
    witness: CoinducedElement | None = None
    certificate: dict = field(default_factory=dict)
    oracle: dict | None = None

    def to_json(self) -> dict:
        out = {"status": self.status, "certificate": self.certificate}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.oracle is not None:
            out["oracle"] = self.oracle
        return out


def fixed_points_nonempty(
    gamma: GraphSubgroup,
    t: TransferSystem,
    monoid: IntersectionMonoid = DYADIC,
    bound: int = 3,
    oracle: bool = False,
    oracle_cap: int = 20_000,
) -> FixedPointVerdict:
    """Decide whether ``R^t(M)(n)`` has a point fixed by ``gamma``.

    Admissible H-sets get an orbit-labelled witness, rechecked in full.  For
    the rest, any fixed point is constant on orbits, so its intersection graph
    contains the orbit cliques, which already support a transfer outside
    ``t``; that transfer and its twist map form the certificate.  With
    ``oracle=True`` the bounded search over dyadic tables is run as well.
    """
    g = t.group
    hset = gamma.hset()
    admissible = hset_in_indexing(transfer_to_indexing(t), hset)
    oracle_report = bounded_fixed_point_search(gamma, t, bound, oracle_cap) if oracle else None
    lab = g.subgroup_name
    if admissible:
        x = psi_gamma(gamma, disjoint_family(monoid, len(gamma.orbits())), monoid)
        checks = {
            "fixed": gamma.fixes(x),
            "in_R_tau": in_R_tau(x, t),
            "sigma_free": is_sigma_free(x) if gamma.n <= 6 else None,
        }
        status = "nonempty" if checks["fixed"] and checks["in_R_tau"] else "unknown"
        return FixedPointVerdict(status, x, {"argument": "orbit labelling", "checks": checks}, oracle_report)
    bad = {p: w for p, w in support_witnesses(orbit_clique_graph(gamma)).items() if not t.related(*p)}
    if not bad:
        return FixedPointVerdict("unknown", None, {"argument": "none applies"}, oracle_report)
    (k, h), (alpha, pos) = min(bad.items())
    cert = {
        "argument": "orbit constancy",
        "transfer": [lab(k), lab(h)],
        "twist_map": alpha.describe(),
        "position": pos,
    }
    return FixedPointVerdict("empty", None, cert, oracle_report)


def bounded_fixed_point_search(gamma: GraphSubgroup, t: TransferSystem, bound: int, cap: int = 20_000) -> dict:
    """Search ``gamma``-fixed dyadic tables with words of length <= ``bound``.

    A fixed table is a labelling of orbits.  Orbits sharing a row get disjoint
    words; orbits sharing a column get equal or disjoint words.  Returns
    ``{"result": "found" | "none" | "skipped", ...}``; ``skipped`` means the
    node cap was hit before the space was exhausted.
    """
    orbits = gamma.orbits()
    rows = [{v[0] for v in o} for o in orbits]
    cols = [{v[1] for v in o} for o in orbits]
    words = DYADIC.pool(bound)
    meets = DYADIC.intersects
    k = len(orbits)
    labels: list[str] = []
    nodes = 0
    leaves = 0

    def fits(j: int, w: str) -> bool:
        for q in range(j):
            u = labels[q]
            if rows[q] & rows[j] and meets(u, w):
                return False
            if cols[q] & cols[j] and u != w and meets(u, w):
                return False
        return True

    def search(j: int) -> CoinducedElement | None:
        nonlocal nodes, leaves
        if nodes > cap:
            return None
        if j == k:
            leaves += 1
            x = _label_orbits(gamma, orbits, labels, DYADIC)
            return x if in_R_tau(x, t) else None
        for w in words:
            nodes += 1
            if fits(j, w):
                labels.append(w)
                found = search(j + 1)
                labels.pop()
                if found is not None:
                    return found
        return None

    found = search(0)
    if found is not None:
        return {"result": "found", "bound": bound, "labels": list(_orbit_labels(gamma, found))}
    if nodes > cap:
        return {"result": "skipped", "bound": bound, "nodes": nodes}
    return {"result": "none", "bound": bound, "tables_checked": leaves}


def _label_orbits(gamma: GraphSubgroup, orbits, labels: Sequence[Any], monoid: IntersectionMonoid) -> CoinducedElement:
    cell = {}
    for orbit, lab in zip(orbits, labels):
        for v in orbit:
            cell[v] = lab
    return CoinducedElement.from_function(gamma.group, gamma.n, monoid, lambda g, i: cell[(g, i)])


def _orbit_labels(gamma: GraphSubgroup, x: CoinducedElement) -> Iterator[Any]:
    for orbit in gamma.orbits():
        yield x(*orbit[0])


def unsupported_transfers(x: CoinducedElement, t: TransferSystem) -> set[tuple[int, int]]:
    return {p for p in nonreflexive(element_supports_transfers(x)) if not t.related(*p)}
