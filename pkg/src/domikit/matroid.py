"""Matroids given by circuits, Crapo's beta invariant and matroid systems.

A matroid on a finite ground set is stored through its circuit family
(bitmasks over the ground set).  Rank comes from the greedy independent
set build-up, beta from its alternating rank sum, and a distinguished
ground element x turns the matroid into a binary monotone structure on
C = F \\ x whose minimal path sets are the circuits through x with x
removed.  The signed domination of that structure is beta(F) up to a
sign fixed by the corank, which the recursion over one-element
restrictions reproduces without ever expanding subsets.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import (
    ComplexityGuardError,
    DegenerateSystemError,
    DomainError,
    ValidationError,
)
from .domination import BinaryStructure, binary_signed_domination
from .poset import Vector


class Matroid:
    """Circuit presentation of a matroid.

    Ground elements may be any hashable labels; order of first appearance
    fixes the bit layout.  The constructor only normalises, it does not
    check the circuit axioms: validate_circuits does, so that deliberately
    broken families can be built and then rejected.
    """

    def __init__(self, ground: Iterable[Hashable], circuits: Iterable[Iterable[Hashable]]):
        self.ground: tuple[Hashable, ...] = tuple(dict.fromkeys(ground))
        self.index = {e: i for i, e in enumerate(self.ground)}
        masks = set()
        for circuit in circuits:
            mask = 0
            for e in circuit:
                if e not in self.index:
                    raise ValidationError(f"circuit element {e!r} not in ground set")
                mask |= 1 << self.index[e]
            if mask == 0:
                raise ValidationError("empty circuit")
            masks.add(mask)
        self.circuit_masks: tuple[int, ...] = tuple(
            sorted(masks, key=lambda m: (m.bit_count(), m))
        )
        self._rank_memo: dict[int, int] = {}

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    def to_mask(self, subset: Iterable[Hashable]) -> int:
        mask = 0
        for e in subset:
            if e not in self.index:
                raise DomainError(f"element {e!r} not in ground set")
            mask |= 1 << self.index[e]
        return mask

    def from_mask(self, mask: int) -> frozenset:
        return frozenset(e for e, i in self.index.items() if mask >> i & 1)

    def circuits(self) -> tuple[frozenset, ...]:
        return tuple(self.from_mask(m) for m in self.circuit_masks)

    def _independent(self, mask: int) -> bool:
        return all(c & mask != c for c in self.circuit_masks)

    def rank_mask(self, mask: int) -> int:
        """Greedy rank: grow an independent subset element by element.

        Correct whenever the circuit family satisfies the axioms; for
        unvalidated families use rank(..., exhaustive=True).
        """
        cached = self._rank_memo.get(mask)
        if cached is not None:
            return cached
        picked = 0
        rest = mask
        while rest:
            low = rest & -rest
            rest ^= low
            if self._independent(picked | low):
                picked |= low
        r = picked.bit_count()
        self._rank_memo[mask] = r
        return r

    def rank(self, subset: Iterable[Hashable], *, exhaustive: bool = False) -> int:
        """Rank of a subset: size of its largest circuit-free part."""
        mask = self.to_mask(subset)
        if not exhaustive:
            return self.rank_mask(mask)
        best = 0
        size = mask.bit_count()
        bits = [1 << i for i in range(len(self.ground)) if mask >> i & 1]
        for r in range(size, -1, -1):
            for combo in combinations(bits, r):
                sub = 0
                for b in combo:
                    sub |= b
                if self._independent(sub):
                    return r
        return best


@dataclass(frozen=True)
class CircuitValidation:
    status: str  # "valid" | "invalid" | "skipped"
    violation: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.status == "valid"


def validate_circuits(m: Matroid, *, guard: int = 20) -> CircuitValidation:
    """Check the circuit axioms: incomparability and circuit elimination.

    Returns the first violation found, as ("comparable", C1, C2) or
    ("elimination", C1, C2, e).  Ground sets larger than `guard` are
    skipped with a warning rather than refused, since validity is a
    soundness question, not a liveness one.
    """
    if len(m.ground) > guard:
        warnings.warn(
            f"circuit validation skipped: {len(m.ground)} ground elements exceed guard ({guard})",
            stacklevel=2,
        )
        return CircuitValidation(status="skipped")
    masks = m.circuit_masks
    for a, b in combinations(masks, 2):
        if a & b == a or a & b == b:
            return CircuitValidation(
                status="invalid", violation=("comparable", m.from_mask(a), m.from_mask(b))
            )
    for a, b in combinations(masks, 2):
        common = a & b
        while common:
            low = common & -common
            common ^= low
            union = (a | b) & ~low
            if not any(c & union == c for c in masks):
                e = m.ground[low.bit_length() - 1]
                return CircuitValidation(
                    status="invalid",
                    violation=("elimination", m.from_mask(a), m.from_mask(b), e),
                )
    return CircuitValidation(status="valid")


def crapo_beta(m: Matroid, subset: Iterable[Hashable], *, guard: int = 25) -> int:
    """Crapo's beta invariant of a subset A.

    beta(A) = sum over B <= A of (-1)^(rank(A) - |B|) * rank(B), a
    non-negative integer for any matroid.  2^|A| terms, guarded.
    """
    mask = m.to_mask(subset)
    size = mask.bit_count()
    if size > guard:
        raise ComplexityGuardError(
            f"subset of {size} elements exceeds the beta guard ({guard}); "
            "use domination_invariant_recursion"
        )
    ra = m.rank_mask(mask)
    total = 0
    sub = mask
    while True:
        r = m.rank_mask(sub)
        if r:
            total += r if (ra - sub.bit_count()) % 2 == 0 else -r
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return total


def beta_number(m: Matroid, *, guard: int = 25) -> int:
    """beta of the whole ground set."""
    return crapo_beta(m, m.ground, guard=guard)


@dataclass(frozen=True)
class MatroidSystemLink:
    """A matroid with a marked ground element x, read as a binary system.

    Components are C = ground \\ x; the minimal path sets of the induced
    structure are M \\ x for circuits M containing x.
    """

    matroid: Matroid
    terminal: Hashable

    def __post_init__(self):
        if self.terminal not in self.matroid.index:
            raise DomainError(f"terminal {self.terminal!r} not in ground set")

    @property
    def components(self) -> tuple[Hashable, ...]:
        return tuple(e for e in self.matroid.ground if e != self.terminal)

    @property
    def terminal_bit(self) -> int:
        return 1 << self.matroid.index[self.terminal]


def matroid_system_paths(link: MatroidSystemLink) -> tuple[frozenset, ...]:
    """Minimal path sets M \\ x over circuits M containing x.

    A circuit equal to {x} alone would make the structure constant 1;
    that degenerate case is refused.
    """
    m, xbit = link.matroid, link.terminal_bit
    paths = []
    for c in m.circuit_masks:
        if c & xbit:
            if c == xbit:
                raise DegenerateSystemError(
                    f"{{{link.terminal!r}}} is a circuit; the induced system is constant"
                )
            paths.append(m.from_mask(c & ~xbit))
    return tuple(sorted(paths, key=lambda s: sorted(map(str, s))))


def structure_from_rank(link: MatroidSystemLink, subset: Iterable[Hashable]) -> int:
    """phi(A) = 1 + rank(A) - rank(A + x), which is 1 iff A contains a path set."""
    m, xbit = link.matroid, link.terminal_bit
    mask = m.to_mask(subset)
    if mask & xbit:
        raise DomainError(f"subset must avoid the terminal {link.terminal!r}")
    return 1 + m.rank_mask(mask) - m.rank_mask(mask | xbit)


def link_structure(link: MatroidSystemLink) -> BinaryStructure:
    """The induced binary structure with slots in component order."""
    m, xbit = link.matroid, link.terminal_bit
    bits = [1 << m.index[e] for e in link.components]

    def func(z: Vector) -> int:
        mask = 0
        for b, zi in zip(bits, z):
            if zi:
                mask |= b
        return 1 + m.rank_mask(mask) - m.rank_mask(mask | xbit)

    return BinaryStructure(components=tuple(range(len(bits))), _func=func)


def domination_from_beta(link: MatroidSystemLink, subset: Iterable[Hashable], *, guard: int = 25) -> int:
    """Signed domination of the induced structure at a component subset.

    delta(A) = (-1)^(|A| - rank(A + x)) * beta(A + x); at A = C this gives
    the signed domination of the whole system, with absolute value beta
    of the matroid.
    """
    m, xbit = link.matroid, link.terminal_bit
    mask = m.to_mask(subset)
    if mask & xbit:
        raise DomainError(f"subset must avoid the terminal {link.terminal!r}")
    if mask == 0:
        raise DomainError("signed domination is undefined at the empty subset")
    if not any(c & xbit for c in m.circuit_masks):
        # x in no circuit: the induced structure is constant 0
        return 0
    full = mask | xbit
    sign = 1 if (mask.bit_count() - m.rank_mask(full)) % 2 == 0 else -1
    return sign * crapo_beta(m, m.from_mask(full), guard=guard)


def _restrict_binary(bs: BinaryStructure, slot: int, value: int) -> BinaryStructure:
    def func(z: Vector) -> int:
        return bs(z[:slot] + (value,) + z[slot:])

    return BinaryStructure(components=tuple(range(bs.size - 1)), _func=func)


def domination_invariant_recursion(
    bs: BinaryStructure,
    pivot: int | None = None,
    *,
    base_size: int = 10,
    memo_size: int = 14,
) -> int:
    """D = |signed domination| of a binary structure, by splitting.

    D(phi) = D(phi with e up) + D(phi with e down), valid when phi comes
    from a matroid system (the split halves then carry opposite signs).
    An irrelevant pivot contributes 0 directly.  Subsystems small enough
    to tabulate (at most memo_size slots) are memoised on their truth
    tables, so repeated shapes, frequent in symmetric systems, are
    computed once.  At base_size slots the subset formula takes over.
    """
    memo: dict[tuple[int, int], int] = {}

    def run(b: BinaryStructure, forced: int | None) -> int:
        k = b.size
        if k == 0:
            return b(())
        if b((1,) * k) == 0 or b((0,) * k) == 1:
            return 0
        key = None
        if forced is None and k <= memo_size:
            bits = 0
            for i, z in enumerate(_binary_vectors(k)):
                if b(z):
                    bits |= 1 << i
            key = (k, bits)
            cached = memo.get(key)
            if cached is not None:
                return cached
        if forced is None and k <= base_size:
            value = abs(binary_signed_domination(b, guard=max(base_size, 25)))
        else:
            e = forced if forced is not None else 0
            up = _restrict_binary(b, e, 1)
            down = _restrict_binary(b, e, 0)
            if all(up(z) == down(z) for z in _binary_vectors(k - 1)):
                # Irrelevant pivot: both halves are the same minor, so the
                # signed domination cancels and splitting would count the
                # minor twice.
                value = 0
            else:
                value = run(up, None) + run(down, None)
        if key is not None:
            memo[key] = value
        return value

    if pivot is not None and not 0 <= pivot < bs.size:
        raise DomainError(f"pivot {pivot} outside 0..{bs.size - 1}")
    return run(bs, pivot)


def _binary_vectors(k: int):
    for mask in range(1 << k):
        yield tuple((mask >> i) & 1 for i in range(k))


def threshold_domination(n: int, m: int, k: int) -> int:
    """Signed domination of the level-k cut of phi(x) = x_1 + ... + x_n
    with every component ranging over 0..m.

    Non-zero only when n*(m-1) < k <= n*m; writing j = k - n*(m-1) there,
    the value is (-1)^(n-j) * C(n-1, j-1).  The binary case m = 1 is the
    classical k-out-of-n formula.
    """
    if n < 1 or m < 1:
        raise DomainError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    if not 1 <= k <= n * m:
        raise DomainError(f"level {k} outside 1..{n * m}")
    j = k - n * (m - 1)
    if j < 1:
        return 0
    sign = 1 if (n - j) % 2 == 0 else -1
    return sign * math.comb(n - 1, j - 1)


def uniform_matroid(ground: Iterable[Hashable], rank: int) -> Matroid:
    """Uniform matroid U_{rank, |ground|}: circuits are all (rank+1)-subsets."""
    elems = tuple(dict.fromkeys(ground))
    if not 0 <= rank <= len(elems):
        raise DomainError(f"rank {rank} outside 0..{len(elems)}")
    if rank == len(elems):
        return Matroid(elems, [])
    return Matroid(elems, combinations(elems, rank + 1))


def cycle_circuits(
    edges: Sequence[tuple[Hashable, Hashable, Hashable]],
    *,
    guard: int = 16,
) -> tuple[frozenset, ...]:
    """Circuits of the graphic matroid of an undirected multigraph.

    `edges` lists (label, u, v); loops and parallel edges are fine.  An
    edge subset is a circuit iff it forms a single connected subgraph in
    which every touched vertex has degree exactly 2.  Found by subset
    enumeration, hence the guard.
    """
    if len(edges) > guard:
        raise ComplexityGuardError(f"{len(edges)} edges exceed the cycle guard ({guard})")
    labels = [e[0] for e in edges]
    if len(set(labels)) != len(labels):
        raise ValidationError("duplicate edge labels")
    out = []
    for mask in range(1, 1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        degree: dict[Hashable, int] = {}
        for _, u, v in chosen:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        if any(d != 2 for d in degree.values()):
            continue
        # connectivity of the chosen subgraph
        adj: dict[Hashable, list[Hashable]] = {}
        for _, u, v in chosen:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        start = chosen[0][1]
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == len(degree):
            out.append(frozenset(lbl for lbl, _, _ in chosen))
    return tuple(sorted(out, key=lambda s: sorted(map(str, s))))


def graphic_matroid(edges: Sequence[tuple[Hashable, Hashable, Hashable]], *, guard: int = 16) -> Matroid:
    """Graphic matroid of an undirected multigraph given as (label, u, v) edges."""
    return Matroid([e[0] for e in edges], cycle_circuits(edges, guard=guard))
