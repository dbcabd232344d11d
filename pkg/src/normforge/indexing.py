"""The complete indexing operad: graphs on ``G x {1..n}`` without same-row edges.

A vertex is a pair ``(g, i)`` with ``g`` a group element index and ``i`` a
1-based column.  The operad structure mirrors the coinduced one: composition
uses the collapse and shift maps, and the ``G x Sigma_n`` action relabels
vertices.

Twist maps are maps ``alpha: S -> {1..n}`` whose domain is a right coset of a
subgroup.  A graph *supports* ``K -> H`` when it contains the complete graph on
the graph of such a map, and ``alpha`` structures ``K -> H``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping

from .groups import FiniteGroup
from .permutations import Permutation, collapse, shift
from .transfer import Pair, TransferSystem

Vertex = tuple[int, int]
Edge = tuple[Vertex, Vertex]


class GraphError(ValueError):
    pass


def _edge(u: Vertex, v: Vertex) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class IndexGraph:
    group: FiniteGroup
    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        norm = set()
        order = self.group.order
        for u, v in self.edges:
            for h, i in (u, v):
                if not (0 <= h < order and 1 <= i <= self.n):
                    raise GraphError(f"vertex {(h, i)} outside G x {{1..{self.n}}}")
            if u[0] == v[0]:
                raise GraphError(f"edge {u}-{v} joins two vertices of the same row")
            norm.add(_edge(tuple(u), tuple(v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def unit(cls, group: FiniteGroup) -> IndexGraph:
        """The complete graph on ``G x {1}``."""
        return complete_graph(group, 1, [(g, 1) for g in group.elements])

    @property
    def vertices(self) -> list[Vertex]:
        return [(g, i) for g in self.group.elements for i in range(1, self.n + 1)]

    @cached_property
    def adjacency(self) -> dict[Vertex, frozenset[Vertex]]:
        adj: dict[Vertex, set[Vertex]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return _edge(u, v) in self.edges

    def edge_list(self) -> list[Edge]:
        return sorted(self.edges)

    def __le__(self, other: IndexGraph) -> bool:
        return self.n == other.n and self.edges <= other.edges

    def __lt__(self, other: IndexGraph) -> bool:
        return self.n == other.n and self.edges < other.edges

    def without(self, edge: Edge) -> IndexGraph:
        return IndexGraph(self.group, self.n, self.edges - {_edge(*edge)})

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "n": self.n,
            "edges": [[list(u), list(v)] for u, v in self.edge_list()],
        }

    @classmethod
    def from_json(cls, group: FiniteGroup, data: dict) -> IndexGraph:
        edges = [(tuple(u), tuple(v)) for u, v in data["edges"]]
        return cls(group, int(data["n"]), frozenset(edges))

    def to_dot(self) -> str:
        """DOT drawing with one cluster per row, as in the array pictures."""
        g = self.group
        lines = ["graph index_graph {", "  node [shape=plaintext];"]
        for h in g.elements:
            lines.append(f"  subgraph cluster_row{h} {{")
            lines.append(f'    label="{g.label(h)}"; rank=same;')
            for i in range(1, self.n + 1):
                lines.append(f'    v{h}_{i} [label="({g.label(h)},{i})"];')
            lines.append("  }")
        for (h1, i1), (h2, i2) in self.edge_list():
            lines.append(f"  v{h1}_{i1} -- v{h2}_{i2};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def complete_graph(group: FiniteGroup, n: int, vertices: Iterable[Vertex]) -> IndexGraph:
    """Complete graph on ``vertices``, skipping pairs that share a row."""
    vs = sorted(set(vertices))
    edges = frozenset(_edge(u, v) for u, v in itertools.combinations(vs, 2) if u[0] != v[0])
    return IndexGraph(group, n, edges)


def _check_same_group(a: IndexGraph, b: IndexGraph) -> None:
    if a.group != b.group:
        raise GraphError("graphs live over different groups")


def graph_compose(g1: IndexGraph, i: int, g2: IndexGraph) -> IndexGraph:
    _check_same_group(g1, g2)
    n, m = g1.n, g2.n
    if not 1 <= i <= n:
        raise GraphError(f"composition position {i} outside 1..{n}")
    block = range(i, i + m)

    def preimages(c: int) -> Iterable[int]:
        if c < i:
            return (c,)
        if c == i:
            return block
        return (c + m - 1,)

    edges = set()
    for (h1, c1), (h2, c2) in g1.edges:
        for j1 in preimages(c1):
            for j2 in preimages(c2):
                if c1 == i and c2 == i and not g2.has_edge((h1, j1 - i + 1), (h2, j2 - i + 1)):
                    continue
                edges.add(_edge((h1, j1), (h2, j2)))
    return IndexGraph(g1.group, n + m - 1, frozenset(edges))


def graph_compose_by_definition(g1: IndexGraph, i: int, g2: IndexGraph) -> IndexGraph:
    """Composition evaluated pair by pair from the two edge conditions.

    Slower than ``graph_compose``; kept as its independent cross-check.
    """
    _check_same_group(g1, g2)
    n, m = g1.n, g2.n
    total = n + m - 1
    verts = [(h, j) for h in g1.group.elements for j in range(1, total + 1)]
    edges = set()
    for u, v in itertools.combinations(verts, 2):
        (h1, j1), (h2, j2) = u, v
        if h1 == h2:
            continue
        c1, c2 = collapse(n, m, i, j1), collapse(n, m, i, j2)
        if not g1.has_edge((h1, c1), (h2, c2)):
            continue
        if c1 == c2 == i and not g2.has_edge((h1, shift(i, m, j1)), (h2, shift(i, m, j2))):
            continue
        edges.add(_edge(u, v))
    return IndexGraph(g1.group, total, frozenset(edges))


def graph_act(g: int, sigma: Permutation, gr: IndexGraph) -> IndexGraph:
    if sigma.degree != gr.n:
        raise GraphError("permutation degree does not match the arity")
    mul = gr.group.mul
    edges = frozenset(
        _edge((mul[g][h1], sigma(i1)), (mul[g][h2], sigma(i2))) for (h1, i1), (h2, i2) in gr.edges
    )
    return IndexGraph(gr.group, gr.n, edges)


# twist maps -------------------------------------------------------------------


@dataclass(frozen=True)
class TwistMap:
    """``alpha: S -> {1..n}`` with ``S`` a right coset; ``witnesses`` are all g0 with S g0 a subgroup."""

    group: FiniteGroup
    n: int
    domain: tuple[int, ...]
    values: tuple[int, ...]
    witnesses: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.domain) != len(self.values):
            raise GraphError("one value per domain element")
        if not self.witnesses:
            raise GraphError(f"{self.domain} is not a right coset of a subgroup")
        if any(not 1 <= v <= self.n for v in self.values):
            raise GraphError("twist map value out of range")

    @classmethod
    def from_mapping(cls, group: FiniteGroup, n: int, mapping: Mapping[int, int]) -> TwistMap:
        domain = tuple(sorted(mapping))
        return cls(group, n, domain, tuple(mapping[s] for s in domain), coset_witnesses(group, domain))

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.values))

    def graph_vertices(self) -> list[Vertex]:
        return list(zip(self.domain, self.values))

    def preimage(self, i: int) -> frozenset[int]:
        return frozenset(s for s, v in zip(self.domain, self.values) if v == i)

    def describe(self) -> str:
        lab = self.group.label
        return ", ".join(f"{lab(s)}->{v}" for s, v in zip(self.domain, self.values))


def coset_witnesses(group: FiniteGroup, domain: Iterable[int]) -> tuple[int, ...]:
    dom = tuple(domain)
    out = []
    for g0 in group.elements:
        if frozenset(group.mul[s][g0] for s in dom) in group._subgroup_index:
            out.append(g0)
    return tuple(out)


@lru_cache(maxsize=None)
def right_cosets(group: FiniteGroup) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Every right coset ``H g`` once, with its witness list, smallest first."""
    found = {}
    for hs in group.subgroup_sets:
        for g in group.elements:
            coset = tuple(sorted(group.mul[h][g] for h in hs))
            if coset not in found:
                found[coset] = coset_witnesses(group, coset)
    return tuple(sorted(found.items(), key=lambda kv: (len(kv[0]), kv[0])))


def enumerate_twist_maps(group: FiniteGroup, n: int) -> Iterator[TwistMap]:
    for domain, witnesses in right_cosets(group):
        for values in itertools.product(range(1, n + 1), repeat=len(domain)):
            yield TwistMap(group, n, domain, values, witnesses)


def twist_structures(alpha: TwistMap) -> set[tuple[int, int, int]]:
    """All ``(K, H, i)`` such that ``alpha`` structures ``K -> H`` at position ``i``."""
    return set(_structures(alpha.group, alpha.domain, alpha.values, alpha.witnesses))


@lru_cache(maxsize=200_000)
def _structures(
    group: FiniteGroup, domain: tuple[int, ...], values: tuple[int, ...], witnesses: tuple[int, ...]
) -> tuple[tuple[int, int, int], ...]:
    mul = group.mul
    out = []
    for g0 in witnesses:
        h = group.subgroup_index(mul[s][g0] for s in domain)
        for i in sorted(set(values)):
            subset = frozenset(mul[s][g0] for s, v in zip(domain, values) if v == i)
            for k in group.subgroups_inside(subset):
                out.append((k, h, i))
    return tuple(sorted(set(out)))


def has_complete_subgraph(gr: IndexGraph, alpha: TwistMap | Mapping[int, int], i: int | None = None) -> bool:
    """Whether ``gr`` contains the complete graph on the graph of ``alpha``.

    With ``i`` given, additionally require ``i`` to be a value of ``alpha``
    (the subgraph is then ``S/T``-complete at ``i`` with ``T`` its preimage).
    """
    mapping = alpha.as_dict() if isinstance(alpha, TwistMap) else dict(alpha)
    if i is not None and i not in mapping.values():
        return False
    verts = sorted(mapping.items())
    return all(gr.has_edge(u, v) for u, v in itertools.combinations(verts, 2))


def complete_twist_maps(gr: IndexGraph) -> Iterator[TwistMap]:
    """Every twist map whose graph spans a complete subgraph of ``gr``.

    Backtracking over the domain: each new vertex must be adjacent to all
    vertices already chosen, which confines the search to one connected
    component.
    """
    adj = gr.adjacency
    n = gr.n
    for domain, witnesses in right_cosets(gr.group):
        k = len(domain)
        chosen: list[int] = []

        def extend(pos: int) -> Iterator[tuple[int, ...]]:
            if pos == k:
                yield tuple(chosen)
                return
            s = domain[pos]
            for col in range(1, n + 1):
                v = (s, col)
                nbrs = adj[v]
                if all((domain[q], chosen[q]) in nbrs for q in range(pos)):
                    chosen.append(col)
                    yield from extend(pos + 1)
                    chosen.pop()

        for values in extend(0):
            yield TwistMap(gr.group, n, domain, values, witnesses)


def support_witnesses(gr: IndexGraph) -> dict[tuple[int, int], tuple[TwistMap, int]]:
    """Each supported ``(K, H)`` (reflexive ones included) with one exhibiting map and position."""
    out: dict[tuple[int, int], tuple[TwistMap, int]] = {}
    for alpha in complete_twist_maps(gr):
        for k, h, i in _structures(gr.group, alpha.domain, alpha.values, alpha.witnesses):
            out.setdefault((k, h), (alpha, i))
    return out


def graph_supports_transfers(gr: IndexGraph) -> set[tuple[int, int]]:
    """All ``(K, H)`` supported by ``gr``, reflexive pairs included."""
    return set(support_witnesses(gr))


def nonreflexive(pairs: Iterable[Pair]) -> set[Pair]:
    return {(k, h) for k, h in pairs if k != h}


def in_I_tau(gr: IndexGraph, t: TransferSystem) -> bool:
    if gr.group != t.group:
        raise GraphError("graph and transfer system live over different groups")
    return all(t.related(k, h) for k, h in graph_supports_transfers(gr))


def unsupported_transfers(gr: IndexGraph, t: TransferSystem) -> dict[Pair, tuple[TwistMap, int]]:
    """Supported transfers outside ``t`` with their exhibiting maps."""
    return {p: w for p, w in support_witnesses(gr).items() if not t.related(*p)}


# the projection from coinduced elements -----------------------------------------


def p_graph(x, require_sigma_disjoint: bool = True) -> IndexGraph:
    """The intersection graph of an element: ``(h1,i1) -- (h2,i2)`` iff h1 != h2 and the entries intersect."""
    if require_sigma_disjoint and not x.is_sigma_disjoint():
        raise GraphError("the projection to graphs needs a Sigma-disjoint element")
    meets = x.monoid.intersects
    verts = [(g, i) for g in x.group.elements for i in range(1, x.n + 1)]
    edges = set()
    for u, v in itertools.combinations(verts, 2):
        if u[0] != v[0] and meets(x(*u), x(*v)):
            edges.add((u, v))
    return IndexGraph(x.group, x.n, frozenset(edges))


# decomposing complete subgraphs of composites -------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Certificates that a complete subgraph of ``g1 o_i g2`` comes from ``g1`` and ``g2``.

    ``outer`` is the collapsed map on ``g1`` with its position.  When the
    position lies in the inserted block, ``inner`` is the shifted map on
    ``g2`` restricted to ``R`` with its position, and ``T <= R <= S``.
    """

    outer: dict[int, int]
    outer_position: int
    S: frozenset[int]
    T: frozenset[int]
    R: frozenset[int] | None = None
    inner: dict[int, int] | None = None
    inner_position: int | None = None


def decomposition_check(
    g1: IndexGraph, g2: IndexGraph, i: int, alpha: Mapping[int, int], j: int
) -> Decomposition:
    n, m = g1.n, g2.n
    alpha = dict(alpha)
    composite = graph_compose(g1, i, g2)
    if j not in alpha.values() or not has_complete_subgraph(composite, alpha):
        raise GraphError("the composite has no complete subgraph on this map at this position")
    S = frozenset(alpha)
    T = frozenset(s for s, v in alpha.items() if v == j)
    beta = {s: collapse(n, m, i, v) for s, v in alpha.items()}
    if not has_complete_subgraph(g1, beta):
        raise AssertionError("collapsed map is not complete in the outer graph")
    if not i <= j <= i + m - 1:
        return Decomposition(beta, collapse(n, m, i, j), S, T)
    R = frozenset(s for s, v in beta.items() if v == i)
    gamma = {s: shift(i, m, alpha[s]) for s in R}
    if not has_complete_subgraph(g2, gamma):
        raise AssertionError("shifted map is not complete in the inner graph")
    if not T <= R <= S:
        raise AssertionError("T <= R <= S fails")
    return Decomposition(beta, i, S, T, R, gamma, j - i + 1)
