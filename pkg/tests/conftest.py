"""Shared builders and independent oracles.

The oracles here deliberately re-derive results from definitions with
their own code (plain itertools loops, a signed subset recursion, a
min-over-cut-sums structure function) so that library outputs are
checked against something that shares no implementation.
"""

import random
from fractions import Fraction
from itertools import combinations, product

from domikit import network, table_system


def vjoin(a, b):
    return tuple(map(max, a, b))


def vleq(a, b):
    return all(x <= y for x, y in zip(a, b))


def naive_formation_delta(paths, target):
    """#odd - #even subsets joining to target, by literal enumeration."""
    total = 0
    for r in range(1, len(paths) + 1):
        for sub in combinations(paths, r):
            j = sub[0]
            for v in sub[1:]:
                j = vjoin(j, v)
            if j == target:
                total += 1 if r % 2 else -1
    return total


def signed_formation_dp(paths, target):
    """The same signed count by an include/exclude recursion.

    f(i, j) = sum over subsets S of paths[i:] of (-1)^|S| [j v join(S) = target]
    satisfies f(i, j) = f(i+1, j) - f(i+1, j v paths[i]); joins only grow,
    so branches with j not below the target are dead.  The empty subset's
    contribution is stripped at the end.  Handles path families far
    beyond direct enumeration.
    """
    paths = tuple(paths)
    bottom = (0,) * len(target)
    memo = {}

    def f(i, j):
        if not vleq(j, target):
            return 0
        if i == len(paths):
            return 1 if j == target else 0
        key = (i, j)
        if key not in memo:
            memo[key] = f(i + 1, j) - f(i + 1, vjoin(j, paths[i]))
        return memo[key]

    return -(f(0, bottom) - (1 if bottom == target else 0))


def oracle_subset_delta(indicator, y):
    """Alternating support-subset sum for delta(y), written from scratch."""
    support = [i for i, s in enumerate(y) if s > 0]
    total = 0
    for picks in product((0, 1), repeat=len(support)):
        x = list(y)
        ups = 0
        for i, up in zip(support, picks):
            if up:
                ups += 1
            else:
                x[i] = y[i] - 1
        sign = 1 if (len(support) - ups) % 2 == 0 else -1
        total += sign * indicator(tuple(x))
    return total


def random_monotone_table(rng, max_states, max_level):
    """Monotone structure table: random values pushed up by predecessors."""
    table = {}
    for x in product(*(range(m + 1) for m in max_states)):
        floor = 0
        for i, s in enumerate(x):
            if s:
                prev = table[x[:i] + (s - 1,) + x[i + 1:]]
                if prev > floor:
                    floor = prev
        table[x] = max(floor, rng.randint(0, max_level))
    top = tuple(max_states)
    if table[top] == 0:
        table[top] = 1
    return table


def make_random_system(seed):
    """Seeded random monotone system with n <= 4 components, states <= 3."""
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    max_states = tuple(rng.randint(1, 3) for _ in range(n))
    table = random_monotone_table(rng, max_states, rng.randint(1, 4))
    return table_system(max_states, table)


def random_pmfs(rng, max_states):
    """(float rows, Fraction rows) with the same seeded weights."""
    floats, exacts = [], []
    for m in max_states:
        weights = [rng.randint(1, 9) for _ in range(m + 1)]
        total = sum(weights)
        floats.append([w / total for w in weights])
        exacts.append([Fraction(w, total) for w in weights])
    return floats, exacts


BRIDGE_EDGES = [
    (1, "S", "A", 2), (2, "S", "B", 2), (3, "A", "B", 1), (4, "A", "C", 2),
    (5, "B", "C", 1), (6, "C", "T", 2), (7, "B", "T", 2),
]

# the same topology with edges 3 and 5 reversed gives the cyclic variant
CYCLIC_REVERSED = {3: ("B", "A"), 5: ("C", "B")}


def bridge_network(directed=False, cyclic=False):
    """The seven-edge two-terminal example network, in all three variants."""
    edges = []
    for eid, tail, head, cap in BRIDGE_EDGES:
        if cyclic and eid in CYCLIC_REVERSED:
            tail, head = CYCLIC_REVERSED[eid]
        edges.append((eid, tail, head, directed or cyclic, cap))
    return network(["S", "A", "B", "C", "T"], edges, "S", "T")


# cut sets of the three variants, worked out by hand from the topology
BRIDGE_CUTS_UNDIRECTED = (
    (1, 2), (1, 3, 5, 7), (2, 3, 4), (2, 3, 5, 6), (4, 5, 7), (6, 7))
BRIDGE_CUTS_ACYCLIC = (
    (1, 2), (1, 5, 7), (2, 3, 4), (2, 3, 6), (4, 5, 7), (6, 7))
BRIDGE_CUTS_CYCLIC = (
    (1, 2), (1, 3, 7), (2, 4), (2, 5, 6), (4, 7), (6, 7))


def oracle_flow(cuts, x):
    """Structure value of a capacity vector as min over cut-set sums."""
    return min(sum(x[i - 1] for i in cut) for cut in cuts)
