import json
import random

import pytest

from normforge.coinduced import CoinducedElement, compose
from normforge.groups import make_cyclic, preset_group
from normforge.monoids import DYADIC, FAT_DYADIC, TRIVIAL, TrivialMonoidError
from normforge.permutations import Permutation, perm_partial_composition
from normforge.realization import (
    admissible_sets,
    dyadic_element,
    dyadic_pi,
    ordered_map,
    pi_is_operad_morphism_check,
    random_disjoint_words,
    realized_transfer_system,
    reproduce_appendix_b,
    reproduce_warning,
)
from normforge.transfer import (
    TransferSystem,
    complete_transfer_system,
    enumerate_transfer_systems,
    trivial_transfer_system,
)


def test_complete_tau_is_realized():
    g = preset_group("C2xC2")
    t = complete_transfer_system(g)
    r = realized_transfer_system(g, t)
    assert r.realized == t and r.passed


def test_c4_e_to_c2(c4):
    t = TransferSystem(c4, frozenset({(0, 1)}))
    r = realized_transfer_system(c4, t, bound=2, oracle=True)
    assert r.realized == t and r.passed
    c2_c4 = next(v for v in r.verdicts if v["K"] == "C2" and v["H"] == "C4")
    assert c2_c4["status"] == "empty" and c2_c4["oracle"]["result"] == "none"


@pytest.mark.parametrize("name", ["C3", "S3"])
def test_all_tau_realized(name):
    g = preset_group(name)
    for t in enumerate_transfer_systems(g):
        assert realized_transfer_system(g, t).passed


@pytest.mark.parametrize("name", ["C4", "C2xC3"])
def test_coset_ordering_does_not_matter(name):
    g = preset_group(name)
    for t in enumerate_transfer_systems(g):
        a = realized_transfer_system(g, t, ordering="least")
        b = realized_transfer_system(g, t, ordering="reversed")
        assert a.realized == b.realized == t


def test_trivial_monoid_refused(c4):
    with pytest.raises(TrivialMonoidError):
        realized_transfer_system(c4, trivial_transfer_system(c4), TRIVIAL)


def test_admissible_arity_one(c4):
    for v in admissible_sets(c4, trivial_transfer_system(c4), 1):
        assert v.status == "nonempty" and v.agrees


def test_regular_c3():
    c3 = make_cyclic(3)
    regular = lambda vs: [v for v in vs if v.gamma.h == 1 and not v.gamma.phi_of(1).is_identity()]  # noqa: E731
    trivial = admissible_sets(c3, trivial_transfer_system(c3), 3, oracle=True)
    assert all(v.status == "empty" and v.agrees for v in regular(trivial))
    complete = admissible_sets(c3, complete_transfer_system(c3), 3, oracle=True)
    assert all(v.status == "nonempty" and v.agrees for v in regular(complete))


@pytest.mark.parametrize("name", ["C2", "C4", "C2xC2"])
def test_admissibles_agree_with_indexing_system(name):
    g = preset_group(name)
    for t in enumerate_transfer_systems(g):
        for n in (1, 2, 3):
            assert all(v.agrees for v in admissible_sets(g, t, n))


@pytest.mark.parametrize("name", ["C2", "C4", "C2xC2"])
def test_fat_dyadic_agrees_with_words(name):
    g = preset_group(name)
    for t in enumerate_transfer_systems(g):
        words = [v.status for v in admissible_sets(g, t, 2, DYADIC)]
        fat = [v.status for v in admissible_sets(g, t, 2, FAT_DYADIC)]
        assert words == fat


def test_warning_report():
    r = reproduce_warning()
    assert r["passed"], [a for a in r["assertions"] if not a["passed"]]
    assert len(r["graph"]["edges"]) == 4


def test_appendix_report():
    r = reproduce_appendix_b()
    assert r["passed"], [a for a in r["assertions"] if not a["passed"]]
    assert r["entries_matched"] == 28
    assert r["facts"]["x_strict_columns"] is False
    assert r["facts"]["p_z_inside_composite_graph"] is False


def test_reports_are_deterministic():
    assert json.dumps(reproduce_appendix_b(), sort_keys=True, default=str) == json.dumps(
        reproduce_appendix_b(), sort_keys=True, default=str
    )


def test_pi_examples():
    assert dyadic_pi(dyadic_element(["ab"])) == Permutation((1,))
    assert dyadic_pi(dyadic_element(["a", "b"])) == Permutation((1, 2))
    assert dyadic_pi(dyadic_element(["ba", "bb", "a"])) == Permutation((2, 3, 1))
    # long shared prefix, split decided by the last letter
    assert dyadic_pi(dyadic_element(["abbbb", "abbba"])) == Permutation((2, 1))


def test_pi_rejects_overlapping_words():
    with pytest.raises(ValueError):
        dyadic_pi(dyadic_element(["a", "ab"]))


def test_pi_unit():
    u = dyadic_element([""])
    x = dyadic_element(["b", "a"])
    assert dyadic_pi(compose(x, 1, u)) == perm_partial_composition(dyadic_pi(x), 1, dyadic_pi(u))


def test_pi_suite():
    r = pi_is_operad_morphism_check(200, seed=4)
    assert r["passed"] and r["samples"] == 200


def test_random_disjoint_words():
    rng = random.Random(0)
    for n in range(1, 20):
        ws = random_disjoint_words(rng, n)
        el = dyadic_element(ws)
        assert len(ws) == n and el.is_sigma_disjoint()
        assert all(len(w) <= 5 for w in ws)


def test_ordered_map_keeps_order(monkeypatch):
    monkeypatch.setenv("NORMFORGE_THREADS", "4")
    assert ordered_map(lambda k: k * k, range(50)) == [k * k for k in range(50)]
    monkeypatch.setenv("NORMFORGE_THREADS", "lots")
    with pytest.raises(ValueError):
        ordered_map(lambda k: k, [1, 2])
