import pytest
from hypothesis import given
from hypothesis import strategies as st

from normforge.permutations import Permutation, all_permutations, collapse, perm_partial_composition, shift


def perms(max_degree=5, min_degree=0):
    return st.integers(min_degree, max_degree).flatmap(
        lambda n: st.permutations(list(range(1, n + 1))).map(lambda p: Permutation(tuple(p)))
    )


def block_substitution(sigma, i, tau):
    """Independent oracle: arrange items by sigma, swap item i for tau's arrangement of a block."""
    n, m = sigma.degree, tau.degree
    arrangement = [0] * n
    for k in range(1, n + 1):
        arrangement[sigma(k) - 1] = k
    tau_inv = tau.inverse()
    block = [i - 1 + tau_inv(p) for p in range(1, m + 1)]
    new = []
    for item in arrangement:
        if item == i:
            new.extend(block)
        else:
            new.append(item if item < i else item + m - 1)
    position = {item: p for p, item in enumerate(new, start=1)}
    return Permutation(tuple(position[k] for k in range(1, n + m)))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1))


def test_cycles_and_inverse():
    p = Permutation.from_cycles(4, (1, 3, 2))
    assert p.image == (3, 1, 2, 4)
    assert str(p) == "(132)"
    assert (p * p.inverse()).is_identity()


def test_unit_composition():
    assert perm_partial_composition(Permutation.identity(3), 2, Permutation.identity(2)) == Permutation.identity(4)


def test_identity_with_swap_inside():
    assert perm_partial_composition(Permutation.identity(2), 2, Permutation((2, 1))) == Permutation((1, 3, 2))


def test_swap_with_identity_inside_is_three_cycle():
    out = perm_partial_composition(Permutation((2, 1)), 1, Permutation.identity(2))
    assert out == Permutation.from_cycles(3, (1, 2, 3))


def test_nullary_insertion_deletes_position():
    out = perm_partial_composition(Permutation((2, 3, 1)), 2, Permutation(()))
    assert out == Permutation((2, 1))


def test_out_of_range_position():
    with pytest.raises(IndexError):
        perm_partial_composition(Permutation.identity(2), 3, Permutation.identity(1))


def test_collapse_values():
    assert [collapse(3, 2, 2, k) for k in range(1, 5)] == [1, 2, 2, 3]
    assert all(collapse(4, 1, 2, k) == k for k in range(1, 5))
    assert shift(2, 2, 3) == 2
    with pytest.raises(IndexError):
        shift(2, 2, 4)


@given(perms(min_degree=1), st.data(), perms())
def test_matches_block_substitution(sigma, data, tau):
    i = data.draw(st.integers(1, sigma.degree))
    assert perm_partial_composition(sigma, i, tau) == block_substitution(sigma, i, tau)


@given(perms(min_degree=1), st.data(), perms(min_degree=1))
def test_inverse_of_composite(sigma, data, tau):
    i = data.draw(st.integers(1, sigma.degree))
    lhs = perm_partial_composition(sigma, i, tau).inverse()
    assert lhs == perm_partial_composition(sigma.inverse(), sigma(i), tau.inverse())


@given(perms(4, 1), perms(3, 1), perms(3), st.data())
def test_associativity_shapes(x, y, z, data):
    n, m, l = x.degree, y.degree, z.degree
    i = data.draw(st.integers(1, n))
    j = data.draw(st.integers(1, n + m - 1))
    lhs = perm_partial_composition(perm_partial_composition(x, i, y), j, z)
    if i <= j <= i + m - 1:
        rhs = perm_partial_composition(x, i, perm_partial_composition(y, j - i + 1, z))
    elif j < i:
        rhs = perm_partial_composition(perm_partial_composition(x, j, z), i + l - 1, y)
    else:
        rhs = perm_partial_composition(perm_partial_composition(x, j - m + 1, z), i, y)
    assert lhs == rhs


def test_all_permutations_count():
    assert len(list(all_permutations(4))) == 24
