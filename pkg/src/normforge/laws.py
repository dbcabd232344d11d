"""Randomized law suites and the random generators they draw from.

Each suite returns a report dict with the instance count, the first few
violations and a pass flag.  Reports depend only on their arguments and seed.
"""

from __future__ import annotations

import random
from typing import Callable

from .coinduced import (
    CoinducedElement,
    act,
    compose,
    enumerate_graph_subgroups,
    in_R_tau,
    psi_gamma,
)
from .groups import FiniteGroup
from .indexing import (
    IndexGraph,
    decomposition_check,
    complete_twist_maps,
    graph_act,
    graph_compose,
    graph_compose_by_definition,
    in_I_tau,
    p_graph,
)
from .monoids import DYADIC, IntersectionMonoid
from .permutations import Permutation, perm_partial_composition
from .realization import random_disjoint_words
from .transfer import TransferSystem, enumerate_transfer_systems, hset_in_indexing, transfer_to_indexing

MAX_REPORTED = 5


def random_permutation(n: int, rng: random.Random) -> Permutation:
    image = list(range(1, n + 1))
    rng.shuffle(image)
    return Permutation(tuple(image))


def random_element(
    group: FiniteGroup, n: int, monoid: IntersectionMonoid, rng: random.Random, max_length: int = 3
) -> CoinducedElement:
    pool = monoid.pool(max_length)
    return CoinducedElement.from_function(group, n, monoid, lambda g, i: rng.choice(pool))


def random_rg_element(
    group: FiniteGroup,
    n: int,
    monoid: IntersectionMonoid,
    rng: random.Random,
    max_length: int = 3,
    reuse: float = 0.5,
) -> CoinducedElement:
    """A random Sigma-disjoint element with strict columns.

    Cells are filled row by row; a candidate must be disjoint from the rest of
    its row and equal to or disjoint from the rest of its column.  With
    probability ``reuse`` a value already in the column is tried first, which
    keeps columns from being all-distinct.
    """
    pool = monoid.pool(max_length)
    meets = monoid.intersects
    for _ in range(100):
        cols: list[list] = [[] for _ in range(n)]
        rows = []
        ok = True
        for _g in group.elements:
            row: list = []
            for i in range(n):
                cands = list(pool)
                rng.shuffle(cands)
                if cols[i] and rng.random() < reuse:
                    cands = rng.sample(cols[i], len(cols[i])) + cands
                pick = next(
                    (
                        v
                        for v in cands
                        if all(not meets(v, u) for u in row)
                        and all(v == u or not meets(v, u) for u in cols[i])
                    ),
                    None,
                )
                if pick is None:
                    ok = False
                    break
                row.append(pick)
                cols[i].append(pick)
            if not ok:
                break
            rows.append(tuple(row))
        if ok:
            return CoinducedElement(group, n, monoid, tuple(rows))
    raise RuntimeError("could not build a strict-column element; enlarge max_length")


def random_graph(group: FiniteGroup, n: int, rng: random.Random, density: float = 0.5) -> IndexGraph:
    verts = [(g, i) for g in group.elements for i in range(1, n + 1)]
    edges = frozenset(
        (u, v) for a, u in enumerate(verts) for v in verts[a + 1 :] if u[0] != v[0] and rng.random() < density
    )
    return IndexGraph(group, n, edges)


def _report(name: str, group: FiniteGroup | None, seed: int, instances: int, violations: list, **extra) -> dict:
    out = {
        "name": name,
        "group": group.name if group is not None else None,
        "seed": seed,
        "instances": instances,
        "violations": violations[:MAX_REPORTED],
        "violation_count": len(violations),
        "passed": not violations,
    }
    out.update(extra)
    return out


# operad laws -------------------------------------------------------------------------


def _operad_law_failures(
    rng: random.Random,
    group: FiniteGroup,
    n_max: int,
    sample: Callable[[int], object],
    comp: Callable,
    action: Callable,
    unit: object,
) -> list[str]:
    """Check unitality, one associativity shape and equivariance on one random triple."""
    out = []
    n = rng.randint(1, n_max)
    m = rng.randint(0, n_max)
    x, y = sample(n), sample(m)
    i = rng.randint(1, n)
    if comp(x, i, unit) != x or comp(unit, 1, x) != x:
        out.append(f"unitality at n={n}, i={i}")

    xy = comp(x, i, y)
    l = rng.randint(0, n_max)
    z = sample(l)
    j = rng.randint(1, n + m - 1) if n + m - 1 >= 1 else None
    if j is not None:
        lhs = comp(xy, j, z)
        if i <= j <= i + m - 1:
            shape, rhs = "nested", comp(x, i, comp(y, j - i + 1, z))
        elif j < i:
            shape, rhs = "parallel-left", comp(comp(x, j, z), i + l - 1, y)
        else:
            shape, rhs = "parallel-right", comp(comp(x, j - m + 1, z), i, y)
        if lhs != rhs:
            out.append(f"associativity ({shape}) at n={n}, m={m}, l={l}, i={i}, j={j}")

    g = rng.choice(list(group.elements))
    sigma, tau = random_permutation(n, rng), random_permutation(m, rng)
    lhs = comp(action(g, sigma, x), sigma(i), action(g, tau, y))
    rhs = action(g, perm_partial_composition(sigma, i, tau), xy)
    if lhs != rhs:
        out.append(f"equivariance at n={n}, m={m}, i={i}, sigma={sigma}, tau={tau}")
    return out


def coinduced_operad_laws(
    group: FiniteGroup, instances: int = 1000, seed: int = 0, n_max: int = 4, monoid: IntersectionMonoid = DYADIC
) -> dict:
    rng = random.Random(seed)
    unit = CoinducedElement.unit(group, monoid)
    violations: list[str] = []
    for _ in range(instances):
        violations += _operad_law_failures(
            rng, group, n_max, lambda k: random_element(group, k, monoid, rng), compose, act, unit
        )
    return _report("coinduced-operad-laws", group, seed, instances, violations, monoid=monoid.name)


def indexing_operad_laws(group: FiniteGroup, instances: int = 1000, seed: int = 0, n_max: int = 4) -> dict:
    """Operad laws, monotonicity and agreement of the two composition routines."""
    rng = random.Random(seed)
    unit = IndexGraph.unit(group)
    violations: list[str] = []
    for _ in range(instances):
        sample = lambda k: random_graph(group, k, rng, rng.random())  # noqa: E731
        violations += _operad_law_failures(rng, group, n_max, sample, graph_compose, graph_act, unit)
        n, m = rng.randint(1, n_max), rng.randint(0, n_max)
        big1, big2 = sample(n), sample(m)
        small1 = IndexGraph(group, n, frozenset(e for e in big1.edges if rng.random() < 0.7))
        small2 = IndexGraph(group, m, frozenset(e for e in big2.edges if rng.random() < 0.7))
        i = rng.randint(1, n)
        if not graph_compose(small1, i, small2) <= graph_compose(big1, i, big2):
            violations.append(f"monotonicity at n={n}, m={m}, i={i}")
        if graph_compose(big1, i, big2) != graph_compose_by_definition(big1, i, big2):
            violations.append(f"edge-lifting composition disagrees with the definition at n={n}, m={m}, i={i}")
    return _report("indexing-operad-laws", group, seed, instances, violations)


def decomposition_suite(group: FiniteGroup, instances: int = 200, seed: int = 0, n_max: int = 3) -> dict:
    """Every complete twist map in a random composite splits into certificates."""
    rng = random.Random(seed)
    violations: list[str] = []
    checked = 0
    strictly_between = 0
    for _ in range(instances):
        n, m = rng.randint(1, n_max), rng.randint(1, n_max)
        g1, g2 = random_graph(group, n, rng, 0.7), random_graph(group, m, rng, 0.7)
        i = rng.randint(1, n)
        comp = graph_compose(g1, i, g2)
        for alpha in complete_twist_maps(comp):
            for j in sorted(set(alpha.values)):
                try:
                    d = decomposition_check(g1, g2, i, alpha.as_dict(), j)
                except Exception as exc:  # any failure is a violation of the decomposition lemma
                    violations.append(f"{alpha.describe()} at {j}: {exc}")
                    continue
                checked += 1
                if d.R is not None and d.T < d.R < d.S:
                    strictly_between += 1
    return _report(
        "decomposition", group, seed, instances, violations, certificates=checked, strictly_between=strictly_between
    )


# laxness, lower suboperads, closure ----------------------------------------------------------


def laxness_suite(
    group: FiniteGroup, instances: int = 500, seed: int = 0, n_max: int = 4, monoid: IntersectionMonoid = DYADIC
) -> dict:
    rng = random.Random(seed)
    violations: list[str] = []
    strict = 0
    for _ in range(instances):
        n, m = rng.randint(1, n_max), rng.randint(1, n_max)
        x, y = random_rg_element(group, n, monoid, rng), random_rg_element(group, m, monoid, rng)
        i = rng.randint(1, n)
        lhs = p_graph(compose(x, i, y))
        rhs = graph_compose(p_graph(x), i, p_graph(y))
        if not lhs <= rhs:
            violations.append(f"n={n}, m={m}, i={i}: {sorted(lhs.edges - rhs.edges)[:2]}")
        elif lhs < rhs:
            strict += 1
    extra = {"strict_inclusions": strict}
    if strict == 0:
        violations.append("no strict inclusion witnessed")
    return _report("laxness", group, seed, instances, violations, **extra)


def _random_tau_member(
    group: FiniteGroup, t: TransferSystem, n: int, monoid: IntersectionMonoid, rng: random.Random, tries: int = 200
) -> CoinducedElement | None:
    for _ in range(tries):
        x = random_rg_element(group, n, monoid, rng, max_length=rng.choice((2, 3, 4)))
        if in_R_tau(x, t):
            return x
    return None


def lower_suboperad_suite(group: FiniteGroup, instances: int = 500, seed: int = 0, n_max: int = 3) -> dict:
    """Edge deletions from members of ``I^tau`` stay in ``I^tau``; composites of members too."""
    rng = random.Random(seed)
    systems = enumerate_transfer_systems(group)
    violations: list[str] = []
    done = 0
    composites = 0
    while done < instances:
        t = rng.choice(systems)
        n = rng.randint(1, n_max)
        gr = random_graph(group, n, rng, rng.choice((0.1, 0.2, 0.35)))
        if not in_I_tau(gr, t):
            continue
        edges = sorted(gr.edges)
        if edges:
            victim = rng.choice(edges)
            smaller = gr.without(victim)
            if not in_I_tau(smaller, t):
                violations.append(f"deleting {victim} left I^tau for {t.describe()}")
        done += 1
        other = random_graph(group, rng.randint(1, n_max), rng, 0.15)
        if in_I_tau(other, t):
            composites += 1
            i = rng.randint(1, n)
            if not in_I_tau(graph_compose(gr, i, other), t):
                violations.append(f"composite left I^tau for {t.describe()}")
    return _report("lower-suboperad", group, seed, instances, violations, composites=composites)


def closure_suite(
    group: FiniteGroup, instances: int = 500, seed: int = 0, n_max: int = 3, monoid: IntersectionMonoid = DYADIC
) -> dict:
    """Composites and translates of ``R^tau`` members stay in ``R^tau``."""
    rng = random.Random(seed)
    systems = enumerate_transfer_systems(group)
    violations: list[str] = []
    done = 0
    while done < instances:
        t = rng.choice(systems)
        x = _random_tau_member(group, t, rng.randint(1, n_max), monoid, rng)
        y = _random_tau_member(group, t, rng.randint(1, n_max), monoid, rng)
        if x is None or y is None:
            continue
        i = rng.randint(1, x.n)
        if not in_R_tau(compose(x, i, y), t):
            violations.append(f"composite at i={i} left R^tau for {t.describe()}")
        g = rng.choice(list(group.elements))
        if not in_R_tau(act(g, random_permutation(x.n, rng), x), t):
            violations.append(f"translate left R^tau for {t.describe()}")
        done += 1
    return _report("r-tau-closure", group, seed, instances, violations, monoid=monoid.name)


# the orbit-labelling lemma ------------------------------------------------------------------


def psi_lemma_suite(groups: list[FiniteGroup], samples: int = 100, seed: int = 0, n_max: int = 3) -> dict:
    """Orbit-labelled elements for admissible graph subgroups lie in ``R^tau`` and are fixed."""
    rng = random.Random(seed)
    pool = []
    for group in groups:
        systems = enumerate_transfer_systems(group)
        for n in range(1, n_max + 1):
            for gamma in enumerate_graph_subgroups(group, n):
                hset = gamma.hset()
                for t in systems:
                    if hset_in_indexing(transfer_to_indexing(t), hset):
                        pool.append((gamma, t))
    violations: list[str] = []
    for gamma, t in rng.sample(pool, min(samples, len(pool))):
        k = len(gamma.orbits())
        labels = random_disjoint_words(rng, k, max_length=max(5, k.bit_length() + 1))
        x = psi_gamma(gamma, labels, DYADIC)
        where = f"{gamma.describe()} on n={gamma.n} over {gamma.group.name}, tau={t.describe()}"
        if not gamma.fixes(x):
            violations.append(f"not fixed: {where}")
        if not x.is_sigma_disjoint():
            violations.append(f"not Sigma-disjoint: {where}")
        if not x.has_strict_columns():
            violations.append(f"columns not strict: {where}")
        if not in_R_tau(x, t):
            violations.append(f"unexpected transfer: {where}")
    return _report(
        "psi-lemma", None, seed, min(samples, len(pool)), violations, groups=[g.name for g in groups], pool=len(pool)
    )
