"""Full-lattice subset formula, pivotal recursion, associated binary."""

from itertools import permutations, product

import pytest

from conftest import make_random_system, oracle_subset_delta
from domikit import (
    ComplexityGuardError,
    DimensionError,
    DomainError,
    associated_binary,
    associated_binary_at,
    binary_signed_domination,
    delta_at,
    domination_by_closure_mobius,
    domination_via_binary,
    join_closure,
    minimal_path_vectors,
    mobius_product,
    path_vector_system,
    pivotal_domination,
    restrict,
    signed_domination,
    sum_system,
    table_system,
)

FOUR_GENS = [(2, 1, 1, 0), (1, 2, 0, 1), (1, 0, 2, 1), (0, 1, 1, 2)]


def four_gen_level():
    return path_vector_system((2, 2, 2, 2), {1: FOUR_GENS}).level(1)


def test_mobius_product_values():
    assert mobius_product((1, 1), (1, 1)) == 1
    assert mobius_product((1, 1), (2, 2)) == 1
    assert mobius_product((1, 2), (2, 2)) == -1
    assert mobius_product((0, 1), (2, 1)) == 0
    with pytest.raises(DomainError):
        mobius_product((1, 1), (0, 1))
    with pytest.raises(DimensionError):
        mobius_product((1,), (1, 1))


def test_mobius_product_box_identity():
    """Summing mu(x, u) over x <= u <= y is the delta function, the
    defining property of a Mobius function."""
    box = list(product(range(3), repeat=2))
    for x in box:
        for y in box:
            if not all(a <= b for a, b in zip(x, y)):
                continue
            total = sum(
                mobius_product(x, u)
                for u in box
                if all(a <= c <= b for a, c, b in zip(x, u, y))
            )
            assert total == (1 if x == y else 0)


def test_delta_at_worked_values():
    ls = four_gen_level()
    assert delta_at(ls, (2, 2, 1, 1)) == -1
    assert delta_at(ls, (2, 1, 1, 0)) == 1
    assert delta_at(ls, (2, 2, 2, 2)) == -1


def test_delta_at_rejects_zero_vector():
    with pytest.raises(DomainError):
        delta_at(four_gen_level(), (0, 0, 0, 0))


def test_delta_at_outside_space():
    with pytest.raises(DomainError):
        delta_at(four_gen_level(), (3, 0, 0, 0))


def test_delta_at_guard():
    ls = sum_system([1] * 6).level(1)
    with pytest.raises(ComplexityGuardError):
        delta_at(ls, (1,) * 6, guard=5)


def test_delta_at_agrees_with_closure_table_everywhere():
    """The subset formula extends the closure table by zero: equal on the
    closure, zero off it, for every non-zero vector of the lattice."""
    ls = four_gen_level()
    table = domination_by_closure_mobius(join_closure(FOUR_GENS))
    for y in product(range(3), repeat=4):
        if y == (0, 0, 0, 0):
            continue
        assert delta_at(ls, y) == table.get(y, 0)


def test_delta_at_matches_independent_oracle_on_random_systems():
    for seed in range(15):
        system = make_random_system(seed)
        for k in range(1, system.space.system_max + 1):
            ls = system.level(k)
            for y in system.space.vectors():
                if all(v == 0 for v in y):
                    continue
                assert delta_at(ls, y) == oracle_subset_delta(ls, y)


def test_signed_domination_worked_values():
    assert signed_domination(sum_system([2, 2, 2, 2]).level(4)) == 0
    series = path_vector_system((1, 1, 1), {1: [(1, 1, 1)]})
    assert signed_domination(series.level(1)) == 1
    assert signed_domination(sum_system([1, 1, 1]).level(2)) == -2


def test_signed_domination_empty_system():
    ls = sum_system([2]).level(1)
    reduced = restrict(ls, 0, 2)
    assert reduced.max_states == ()
    assert signed_domination(reduced) == 1


def test_pivotal_explicit_pivot_level_four():
    ls = sum_system([2, 2, 2, 2]).level(4)
    assert pivotal_domination(ls, 3) == 0
    # the two branch values behind the difference
    assert signed_domination(restrict(ls, 3, 2)) == 0
    assert signed_domination(restrict(ls, 3, 1)) == 0


def test_pivotal_every_pivot_and_deep_recursion():
    ls = sum_system([2, 2, 2, 2]).level(5)
    want = signed_domination(ls)
    for e in range(4):
        assert pivotal_domination(ls, e) == want
    assert pivotal_domination(ls, base_size=0) == want


def test_pivotal_binary_case_is_state_split():
    """On binary components the recursion is the plain 0/1 split."""
    ls = sum_system([1, 1, 1]).level(2)
    d1 = signed_domination(restrict(ls, 0, 1))
    d0 = signed_domination(restrict(ls, 0, 0))
    assert pivotal_domination(ls, 0) == d1 - d0 == -2


def test_pivotal_bad_pivot():
    with pytest.raises(DomainError):
        pivotal_domination(sum_system([1, 1]).level(1), 2)


def test_pivotal_matches_subset_formula_on_random_systems():
    for seed in range(15):
        system = make_random_system(seed)
        for k in range(1, system.space.system_max + 1):
            ls = system.level(k)
            want = signed_domination(ls)
            for e in range(len(ls.max_states)):
                assert pivotal_domination(ls, e) == want
            assert pivotal_domination(ls, base_size=0) == want


def test_associated_binary_threshold_shift():
    """The binary shadow of a sum-system level is a lower threshold
    structure on the top two states."""
    ls = sum_system([2, 2, 2, 2]).level(7)
    psi = associated_binary(ls)
    assert psi.components == (0, 1, 2, 3)
    for z in product((0, 1), repeat=4):
        assert psi(z) == (1 if sum(z) >= 3 else 0)


def test_associated_binary_constant_when_threshold_low():
    psi = associated_binary(sum_system([2, 2, 2, 2]).level(4))
    assert all(psi(z) == 1 for z in product((0, 1), repeat=4))
    assert binary_signed_domination(psi) == 0


def test_associated_binary_identity_on_binary_systems():
    ls = sum_system([1, 1, 1]).level(2)
    psi = associated_binary(ls)
    for z in product((0, 1), repeat=3):
        assert psi(z) == ls(z)


def test_binary_structure_rejects_bad_input():
    psi = associated_binary(sum_system([1, 1]).level(1))
    with pytest.raises(DomainError):
        psi((1,))
    with pytest.raises(DomainError):
        psi((2, 0))


def test_binary_signed_domination_guard_and_empty():
    psi = associated_binary(sum_system([1] * 26).level(1))
    with pytest.raises(ComplexityGuardError):
        binary_signed_domination(psi)
    ls = restrict(sum_system([1]).level(1), 0, 1)
    assert binary_signed_domination(associated_binary(ls)) == 1


def test_domination_via_binary_equals_subset_formula():
    for seed in range(15):
        system = make_random_system(seed)
        for k in range(1, system.space.system_max + 1):
            ls = system.level(k)
            assert domination_via_binary(ls) == signed_domination(ls)


def test_associated_binary_at_top_is_whole_system():
    ls = four_gen_level()
    psi_top = associated_binary_at(ls, (2, 2, 2, 2))
    psi = associated_binary(ls)
    assert psi_top.components == psi.components
    for z in product((0, 1), repeat=4):
        assert psi_top(z) == psi(z)


def test_associated_binary_at_worked_value():
    ls = four_gen_level()
    psi = associated_binary_at(ls, (2, 2, 1, 1))
    assert binary_signed_domination(psi) == -1


def test_associated_binary_at_restricted_support():
    ls = sum_system([2, 2, 2]).level(2)
    psi = associated_binary_at(ls, (2, 0, 1))
    assert psi.components == (0, 2)
    # slots stand for components 0 and 2; component 1 pinned at 0
    assert psi((1, 1)) == ls((2, 0, 1))
    assert psi((0, 0)) == ls((1, 0, 0))


def test_associated_binary_at_equals_delta_everywhere():
    for seed in range(10):
        system = make_random_system(seed)
        for k in range(1, system.space.system_max + 1):
            ls = system.level(k)
            for y in system.space.vectors():
                if all(v == 0 for v in y):
                    continue
                assert binary_signed_domination(associated_binary_at(ls, y)) == delta_at(ls, y)


def test_associated_binary_at_rejects_zero():
    with pytest.raises(DomainError):
        associated_binary_at(four_gen_level(), (0, 0, 0, 0))


def test_permutation_invariance_of_delta():
    """Relabeling components permutes the domination table accordingly."""
    system = make_random_system(7)
    n = system.space.n
    for k in range(1, system.space.system_max + 1):
        ls = system.level(k)
        base = {y: delta_at(ls, y)
                for y in system.space.vectors() if any(y)}
        for perm in permutations(range(n)):
            permuted_states = tuple(system.space.max_states[perm[i]] for i in range(n))

            def permuted_phi(x, _p=perm):
                return system.evaluate(tuple(x[_p.index(i)] for i in range(n)))

            ptab = {}
            for y, d in base.items():
                ptab[tuple(y[perm[i]] for i in range(n))] = d
            ptable = {x: permuted_phi(x) for x in product(*(range(m + 1) for m in permuted_states))}
            psys = table_system(permuted_states, ptable)
            pls = psys.level(k)
            for y, d in ptab.items():
                assert delta_at(pls, y) == d
