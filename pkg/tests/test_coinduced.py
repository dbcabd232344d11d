import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normforge.coinduced import (
    CoinducedElement,
    CoinducedError,
    GraphSubgroup,
    act,
    compose,
    coset_graph_subgroup,
    element_supports_transfers,
    enumerate_graph_subgroups,
    fixed_points_nonempty,
    homomorphisms,
    in_R_tau,
    is_sigma_free,
    orbit_clique_graph,
    psi_gamma,
)
from normforge.groups import make_cyclic, preset_group
from normforge.indexing import enumerate_twist_maps, twist_structures
from normforge.laws import random_element, random_permutation, random_rg_element
from normforge.monoids import DYADIC, EMBEDDING, FAT_DYADIC, RationalEmbedding, disjoint_family
from normforge.permutations import Permutation
from normforge.realization import APPENDIX_X, APPENDIX_Y, APPENDIX_Z, _from_cells
from normforge.transfer import (
    TransferSystem,
    complete_transfer_system,
    enumerate_transfer_systems,
    trivial_transfer_system,
)

GROUPS = {name: preset_group(name) for name in ["C2", "C3", "C4", "C2xC2", "S3"]}


def direct_compose(x, i, y):
    """Oracle written from the three cases, without the collapse helper."""
    n, m = x.n, y.n
    rows = []
    for g in x.group.elements:
        row = [x(g, k) for k in range(1, i)]
        row += [x.monoid.mul(x(g, i), y(g, k)) for k in range(1, m + 1)]
        row += [x(g, k) for k in range(i + 1, n + 1)]
        rows.append(tuple(row))
    return CoinducedElement(x.group, n + m - 1, x.monoid, tuple(rows))


def direct_supports(x):
    """Oracle: scan every twist map on the element itself."""
    out = set()
    for alpha in enumerate_twist_maps(x.group, x.n):
        cells = alpha.graph_vertices()
        if all(x.monoid.intersects(x(*u), x(*v)) for u, v in itertools.combinations(cells, 2) if u[0] != v[0]):
            out |= {(k, h) for k, h, _ in twist_structures(alpha)}
    return out


@st.composite
def elements(draw, names=("C2", "C4", "C2xC2", "S3"), n_min=0, n_max=3, monoid=DYADIC):
    group = GROUPS[draw(st.sampled_from(names))]
    n = draw(st.integers(n_min, n_max))
    return random_element(group, n, monoid, random.Random(draw(st.integers(0, 10**6))))


@st.composite
def rg_elements(draw, names=("C2", "C4", "C2xC2"), n_max=3):
    group = GROUPS[draw(st.sampled_from(names))]
    n = draw(st.integers(1, n_max))
    return random_rg_element(group, n, DYADIC, random.Random(draw(st.integers(0, 10**6))))


@given(elements(n_min=1), st.data())
def test_compose_matches_direct_formula(x, data):
    y = random_element(x.group, data.draw(st.integers(0, 3)), DYADIC, random.Random(data.draw(st.integers(0, 99))))
    i = data.draw(st.integers(1, x.n))
    assert compose(x, i, y) == direct_compose(x, i, y)


@given(elements(n_min=1))
def test_unit_laws(x):
    u = CoinducedElement.unit(x.group, DYADIC)
    for i in range(1, x.n + 1):
        assert compose(x, i, u) == x
    assert compose(u, 1, x) == x


def test_single_column_composite(c4):
    rng = random.Random(3)
    x, y = random_element(c4, 1, DYADIC, rng), random_element(c4, 3, DYADIC, rng)
    z = compose(x, 1, y)
    assert all(z(g, k) == x(g, 1) + y(g, k) for g in c4.elements for k in range(1, 4))


def test_nullary_composite_deletes_column(c4):
    x = random_element(c4, 3, DYADIC, random.Random(1))
    z = compose(x, 2, CoinducedElement.point(c4, DYADIC))
    assert all(z.table[g] == (x(g, 1), x(g, 3)) for g in c4.elements)


def test_compose_errors(c4, klein):
    x = random_element(c4, 2, DYADIC, random.Random(0))
    with pytest.raises(CoinducedError):
        compose(x, 3, x)
    with pytest.raises(CoinducedError):
        compose(x, 1, random_element(klein, 1, DYADIC, random.Random(0)))
    with pytest.raises(CoinducedError):
        compose(x, 1, CoinducedElement.unit(c4, EMBEDDING))
    with pytest.raises(CoinducedError):
        act(0, Permutation.identity(3), x)


def test_worked_example_composite():
    group = make_cyclic(4, gen="t")
    z = compose(_from_cells(group, 2, APPENDIX_X), 1, _from_cells(group, 2, APPENDIX_Y))
    lab = group.element_from_label
    assert z(0, 1) == RationalEmbedding(F(1, 8), F(0))
    assert z(lab("t"), 1) == RationalEmbedding(F(1, 8), F(7, 8))
    assert z(lab("t^3"), 3) == RationalEmbedding(F(1, 4), F(1, 8))
    assert all(z(lab(g), i) == v for (g, i), v in APPENDIX_Z.items())


def test_sigma_disjoint_and_strict_on_worked_example():
    group = make_cyclic(4, gen="t")
    x, y = _from_cells(group, 2, APPENDIX_X), _from_cells(group, 2, APPENDIX_Y)
    z = compose(x, 1, y)
    assert y.is_sigma_disjoint() and y.has_strict_columns()
    assert x.is_sigma_disjoint() and not x.has_strict_columns()
    assert z.is_sigma_disjoint() and not z.has_strict_columns()


@given(elements(n_max=1))
def test_small_arity_is_sigma_disjoint(x):
    assert x.is_sigma_disjoint()


@given(elements(), st.data())
def test_action_composes(x, data):
    rng = random.Random(data.draw(st.integers(0, 999)))
    g = x.group
    a, b = rng.choice(list(g.elements)), rng.choice(list(g.elements))
    s, t = random_permutation(x.n, rng), random_permutation(x.n, rng)
    assert act(a, s, act(b, t, x)) == act(g.mul[a][b], s * t, x)
    assert act(0, Permutation.identity(x.n), x) == x


def test_action_formula(c4):
    x = random_element(c4, 3, DYADIC, random.Random(5))
    s = Permutation((2, 3, 1))
    y = act(1, s, x)
    for k in c4.elements:
        for i in range(1, 4):
            assert y(k, i) == x(c4.mul[c4.inv[1]][k], s.inverse()(i))


@given(elements(names=("C2", "C4", "C2xC2"), n_max=2))
def test_supports_match_direct_scan(x):
    assert element_supports_transfers(x) == direct_supports(x)


def test_constant_single_column_supports_only_reflexive(klein):
    x = CoinducedElement.from_function(klein, 1, DYADIC, lambda g, i: "")
    assert element_supports_transfers(x) == {(h, h) for h in range(len(klein.subgroups))}


def test_worked_example_supports():
    group = make_cyclic(4, gen="t")
    x, y = _from_cells(group, 2, APPENDIX_X), _from_cells(group, 2, APPENDIX_Y)
    tau = TransferSystem(group, frozenset({(1, 2)}))
    z = compose(x, 1, y)
    assert (0, 1) in element_supports_transfers(z)
    assert all(tau.related(*p) for p in element_supports_transfers(x))
    assert all(tau.related(*p) for p in element_supports_transfers(y))
    assert in_R_tau(y, tau)
    assert not in_R_tau(x, tau)
    assert not in_R_tau(z, tau)


@pytest.mark.parametrize("name", ["C2", "C4", "S3"])
def test_unit_in_every_r_tau(name):
    g = GROUPS[name]
    u = CoinducedElement.unit(g, DYADIC)
    assert all(in_R_tau(u, t) for t in enumerate_transfer_systems(g))


@given(rg_elements())
def test_rg_generator_lands_in_rg(x):
    assert x.is_sigma_disjoint() and x.has_strict_columns()


@given(rg_elements(), st.data())
def test_rg_closed_under_composition(x, data):
    y = random_rg_element(x.group, data.draw(st.integers(1, 3)), DYADIC, random.Random(data.draw(st.integers(0, 99))))
    z = compose(x, data.draw(st.integers(1, x.n)), y)
    assert z.is_sigma_disjoint() and z.has_strict_columns()


def test_graph_subgroup_validation(c4):
    with pytest.raises(CoinducedError):
        GraphSubgroup.from_map(c4, 2, 2, {0: Permutation((1, 2)), 1: Permutation((2, 1)),
                                          2: Permutation((2, 1)), 3: Permutation((2, 1))})  # fmt: skip


def test_homomorphism_counts():
    c3, c2 = make_cyclic(3), make_cyclic(2)
    assert len(list(homomorphisms(c3, 1, 3))) == 3
    assert len(list(homomorphisms(c2, 1, 3))) == 4
    assert len(list(homomorphisms(make_cyclic(4), 2, 2))) == 2
    assert len(list(homomorphisms(preset_group("S3"), 5, 3))) == 10


def test_orbits_meet_each_coset_row_once():
    for name in ["C4", "C2xC2", "S3"]:
        g = GROUPS[name]
        for gamma in enumerate_graph_subgroups(g, 2):
            for orbit in gamma.orbits():
                rows = [v[0] for v in orbit]
                assert len(rows) == len(set(rows))
                h = g.subgroup_sets[gamma.h]
                assert frozenset(rows) == frozenset(g.mul[a][rows[0]] for a in h)


def test_psi_trivial_action_constant_on_cosets(c4):
    gamma = GraphSubgroup.trivial_action(c4, 1, 1)
    x = psi_gamma(gamma, disjoint_family(DYADIC, 2))
    assert x(0, 1) == x(2, 1) != x(1, 1) == x(3, 1)


def test_psi_regular_c3_twisted_columns():
    c3 = make_cyclic(3)
    gamma = coset_graph_subgroup(c3, 0, 1)
    orbits = gamma.orbits()
    assert len(orbits) == 3
    for orbit in orbits:
        assert sorted(v[0] for v in orbit) == [0, 1, 2]
        assert sorted(v[1] for v in orbit) == [1, 2, 3]
    x = psi_gamma(gamma, ["a", "ba", "bb"])
    assert gamma.fixes(x) and x.is_sigma_disjoint() and x.has_strict_columns()


def test_psi_errors(c4):
    gamma = coset_graph_subgroup(c4, 0, 2)
    with pytest.raises(CoinducedError):
        psi_gamma(gamma, ["a"])
    with pytest.raises(CoinducedError):
        psi_gamma(gamma, ["a", "a", "b", "ab"])


@pytest.mark.parametrize("name", ["C2", "C4", "C2xC2", "S3"])
def test_psi_fixed_by_every_element(name):
    g = GROUPS[name]
    for gamma in enumerate_graph_subgroups(g, 2):
        x = psi_gamma(gamma, disjoint_family(DYADIC, len(gamma.orbits())))
        for a in g.subgroup_sets[gamma.h]:
            assert act(a, gamma.phi_of(a), x) == x
        assert p_graph_equals_cliques(gamma, x)


def p_graph_equals_cliques(gamma, x):
    from normforge.indexing import p_graph

    return p_graph(x) == orbit_clique_graph(gamma)


def test_fixed_points_trivial_actions():
    for name in ["C4", "C2xC2"]:
        g = GROUPS[name]
        for t in enumerate_transfer_systems(g):
            for h in range(len(g.subgroups)):
                for n in (1, 2, 3):
                    v = fixed_points_nonempty(GraphSubgroup.trivial_action(g, h, n), t)
                    assert v.status == "nonempty"


def test_fixed_points_empty_with_oracle(c4):
    tau = TransferSystem(c4, frozenset({(0, 1)}))
    v = fixed_points_nonempty(coset_graph_subgroup(c4, 1, 2), tau, bound=2, oracle=True)
    assert v.status == "empty"
    assert v.certificate["transfer"] == ["C2", "C4"]
    assert v.oracle["result"] == "none"


def test_fixed_points_trivial_group():
    g = make_cyclic(1)
    v = fixed_points_nonempty(GraphSubgroup.trivial_action(g, 0, 3), trivial_transfer_system(g))
    assert v.status == "nonempty" and v.witness.is_sigma_disjoint()


def test_oracle_finds_witness_when_admissible(c4):
    v = fixed_points_nonempty(coset_graph_subgroup(c4, 0, 2), complete_transfer_system(c4), oracle=True)
    assert v.status == "nonempty" and v.oracle["result"] == "found"


def test_sigma_free(c4):
    gamma = coset_graph_subgroup(c4, 0, 1)
    x = psi_gamma(gamma, disjoint_family(DYADIC, len(gamma.orbits())))
    assert is_sigma_free(x)
    assert not is_sigma_free(CoinducedElement.from_function(c4, 2, DYADIC, lambda g, i: "a"))


@pytest.mark.parametrize("monoid", [DYADIC, EMBEDDING, FAT_DYADIC], ids=lambda m: m.name)
def test_json_round_trip(c4, monoid):
    x = random_element(c4, 3, monoid, random.Random(2))
    data = x.to_json()
    assert data["monoid"] == monoid.name and "(s^3,3)" in data["table"]
    assert CoinducedElement.from_json(c4, monoid, data) == x


def test_json_wrong_monoid(c4):
    x = random_element(c4, 1, DYADIC, random.Random(2))
    with pytest.raises(CoinducedError):
        CoinducedElement.from_json(c4, EMBEDDING, x.to_json())
