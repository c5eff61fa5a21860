"""Property-based checks on small random inputs.

Everything here is kept tiny on purpose: the algebraic laws are already
pinned on worked examples elsewhere, these runs just probe odd corners.
"""

from itertools import product

from hypothesis import given, settings, strategies as st

from conftest import signed_formation_dp
from domikit import (
    Relation,
    compare,
    delta_at,
    domination_by_closure_mobius,
    domination_by_formations,
    domination_via_binary,
    join,
    join_closure,
    leq,
    minimal_path_vectors,
    mobius_product,
    pivotal_domination,
    signed_domination,
    sum_system,
    table_system,
    threshold_domination,
    validate_generators,
)

vectors = st.lists(st.integers(0, 2), min_size=1, max_size=4).map(tuple)
pairs = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 2), min_size=n, max_size=n).map(tuple),
        st.lists(st.integers(0, 2), min_size=n, max_size=n).map(tuple),
    )
)


@given(pairs, st.lists(st.integers(0, 2), min_size=1, max_size=4).map(tuple))
def test_join_laws(xy, z):
    x, y = xy
    assert join(x, y) == join(y, x)
    assert join(x, x) == x
    assert leq(x, join(x, y)) and leq(y, join(x, y))
    if len(z) == len(x):
        assert join(join(x, y), z) == join(x, join(y, z))


@given(pairs)
def test_compare_consistent_with_leq(xy):
    x, y = xy
    rel = compare(x, y)
    assert (rel in (Relation.LESS, Relation.EQUAL)) == leq(x, y)
    assert (rel in (Relation.GREATER, Relation.EQUAL)) == leq(y, x)
    assert (rel == Relation.EQUAL) == (x == y)


@given(pairs)
def test_mobius_product_box_identity(xy):
    x, y = xy
    if not leq(x, y):
        return
    total = sum(
        mobius_product(x, z)
        for z in product(*(range(a, b + 1) for a, b in zip(x, y)))
    )
    assert total == (1 if x == y else 0)


@given(st.sets(
    st.lists(st.integers(0, 2), min_size=3, max_size=3).map(tuple),
    min_size=1, max_size=4,
))
def test_closure_inversion_sums_to_one(raw):
    raw.discard((0, 0, 0))
    try:
        gens = validate_generators(raw)
    except Exception:
        return  # comparable pair drawn; covered by constructor tests
    closure = join_closure(gens)
    assert len(closure) <= 2 ** len(gens) - 1
    table = domination_by_closure_mobius(closure)
    for y in closure:
        assert sum(d for x, d in table.items() if leq(x, y)) == 1


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(1, 2), min_size=1, max_size=3),
    st.data(),
)
def test_cross_method_on_random_tables(max_states, data):
    space = list(product(*(range(m + 1) for m in max_states)))
    raw = {
        x: data.draw(st.integers(0, 3), label=f"raw{x}")
        for x in space
    }
    table = {}
    for x in space:  # lex order visits all predecessors first
        below = [table[tuple(y)] for i in range(len(x))
                 for y in [list(x[:i]) + [x[i] - 1] + list(x[i + 1:])] if x[i] > 0]
        table[x] = max([raw[x]] + below)
    top = tuple(max_states)
    if table[top] == 0:
        return
    system = table_system(max_states, table)
    for k in range(1, table[top] + 1):
        ls = system.level(k)
        paths = minimal_path_vectors(ls)
        reference = signed_formation_dp(paths, top)
        assert domination_by_formations(paths).get(top, 0) == reference
        assert domination_by_closure_mobius(join_closure(paths)).get(top, 0) == reference
        assert signed_domination(ls) == reference
        assert pivotal_domination(ls) == reference
        assert domination_via_binary(ls) == reference
        assert delta_at(ls, top) == reference


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 2), st.data())
def test_threshold_formula_matches_formation_count(n, m, data):
    k = data.draw(st.integers(1, n * m), label="k")
    ls = sum_system([m] * n).level(k)
    paths = minimal_path_vectors(ls)
    assert threshold_domination(n, m, k) == signed_formation_dp(paths, (m,) * n)
