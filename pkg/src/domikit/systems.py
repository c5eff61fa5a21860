"""Multistate monotone systems and their reliability.

A system has n components, component i taking states 0..m_i, and a
monotone non-decreasing structure function into 0..M.  The level-k cut
of the structure (phi >= k) is a binary monotone structure over the same
components; almost everything downstream (path vectors, domination,
reliability) works level by level.

Systems are represented by a state space plus an evaluator, with
constructors for the concrete shapes used in practice: explicit tables,
weighted sums and families of minimal path vectors.  Flow networks get
their constructor in the network module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    ComplexityGuardError,
    DimensionError,
    DistributionError,
    DomainError,
    ValidationError,
)
from .poset import DominationTable, Vector, leq, validate_generators


@dataclass(frozen=True)
class StateSpace:
    """Product space {0..m_1} x ... x {0..m_n} with system levels 0..M.

    system_max = 0 marks a degenerate system that never leaves level 0;
    it arises from flow networks whose terminals are disconnected.  The
    empty space (n = 0, the single vector ()) is allowed so restrictions
    can strip components one by one; documents read from files always
    have n >= 1.
    """

    max_states: tuple[int, ...]
    system_max: int

    def __post_init__(self):
        if any(m < 1 for m in self.max_states):
            raise DomainError(f"component max states must be >= 1, got {self.max_states}")
        if self.system_max < 0:
            raise DomainError(f"system max level must be >= 0, got {self.system_max}")

    @property
    def n(self) -> int:
        return len(self.max_states)

    @property
    def top(self) -> Vector:
        return self.max_states

    def size(self) -> int:
        return math.prod(m + 1 for m in self.max_states)

    def contains(self, x: Vector) -> bool:
        return len(x) == self.n and all(0 <= a <= m for a, m in zip(x, self.max_states))

    def vectors(self):
        """All state vectors in lexicographic order."""
        return product(*(range(m + 1) for m in self.max_states))


@dataclass(frozen=True)
class MultistateSystem:
    """A state space together with a monotone structure function."""

    space: StateSpace
    kind: str
    _func: Callable[[Vector], int]

    def evaluate(self, x: Vector) -> int:
        x = tuple(x)
        if not self.space.contains(x):
            raise DomainError(f"state vector {x} outside space {self.space.max_states}")
        return self._func(x)

    def level(self, k: int) -> "LevelSystem":
        """The binary level-k structure, phi_k(x) = 1 iff phi(x) >= k."""
        if not 1 <= k <= self.space.system_max:
            raise DomainError(
                f"level {k} outside 1..{self.space.system_max}"
            )
        return LevelSystem(system=self, level=k)


@dataclass(frozen=True)
class LevelSystem:
    """Binary cut of a multistate structure at a fixed level."""

    system: MultistateSystem
    level: int

    @property
    def max_states(self) -> tuple[int, ...]:
        return self.system.space.max_states

    def __call__(self, x: Vector) -> int:
        return 1 if self.system.evaluate(x) >= self.level else 0


def table_system(
    max_states: Sequence[int],
    values: Mapping[Vector, int] | Sequence[int],
    *,
    check: bool = True,
) -> MultistateSystem:
    """System from an explicit table of structure values.

    `values` is either a map from state vectors to levels, total on the
    space, or a flat sequence in lexicographic vector order.  Monotonicity
    is verified on construction unless check=False.
    """
    ms = tuple(max_states)
    space_size = math.prod(m + 1 for m in ms)
    if isinstance(values, Mapping):
        table = {tuple(x): int(v) for x, v in values.items()}
    else:
        flat = list(values)
        if len(flat) != space_size:
            raise ValidationError(
                f"table has {len(flat)} entries, space has {space_size} vectors"
            )
        table = dict(zip(product(*(range(m + 1) for m in ms)), map(int, flat)))
    if len(table) != space_size:
        raise ValidationError(f"table covers {len(table)} of {space_size} vectors")
    if any(v < 0 for v in table.values()):
        raise ValidationError("negative structure value in table")
    system_max = max(table.values())
    space = StateSpace(max_states=ms, system_max=system_max)
    system = MultistateSystem(space=space, kind="table", _func=table.__getitem__)
    if check and not check_monotone(system):
        raise ValidationError("table is not monotone non-decreasing")
    return system


def sum_system(max_states: Sequence[int], weights: Sequence[int] | None = None) -> MultistateSystem:
    """phi(x) = sum of w_i * x_i, the workhorse threshold example."""
    ms = tuple(max_states)
    w = tuple(int(v) for v in (weights if weights is not None else [1] * len(ms)))
    if len(w) != len(ms):
        raise DimensionError(f"{len(w)} weights for {len(ms)} components")
    if any(v < 0 for v in w):
        raise ValidationError("weights must be non-negative")
    space = StateSpace(max_states=ms, system_max=sum(a * b for a, b in zip(w, ms)))
    return MultistateSystem(
        space=space,
        kind="sum",
        _func=lambda x: sum(a * b for a, b in zip(w, x)),
    )


def path_vector_system(
    max_states: Sequence[int],
    levels: Mapping[int, Iterable[Vector]],
) -> MultistateSystem:
    """System defined by its minimal path vectors at each level 1..M.

    Each family must be a non-empty antichain inside the space, and every
    level-k vector must dominate some level-(k-1) vector, so that the
    declared families really are the minimal path vectors of the resulting
    structure.
    """
    ms = tuple(max_states)
    if not levels:
        raise ValidationError("no path vector levels given")
    system_max = max(levels)
    if sorted(levels) != list(range(1, system_max + 1)):
        raise ValidationError(f"levels must be exactly 1..{system_max}, got {sorted(levels)}")
    families: dict[int, tuple[Vector, ...]] = {}
    for k in range(1, system_max + 1):
        fam = validate_generators(levels[k])
        for v in fam:
            if len(v) != len(ms) or any(a > m for a, m in zip(v, ms)):
                raise ValidationError(f"path vector {v} outside space {ms}")
        families[k] = fam
    for k in range(2, system_max + 1):
        for v in families[k]:
            if not any(leq(u, v) for u in families[k - 1]):
                raise ValidationError(
                    f"level-{k} path vector {v} dominates no level-{k - 1} path vector"
                )

    def phi(x: Vector) -> int:
        for k in range(system_max, 0, -1):
            if any(leq(u, x) for u in families[k]):
                return k
        return 0

    space = StateSpace(max_states=ms, system_max=system_max)
    return MultistateSystem(space=space, kind="path_vectors", _func=phi)


def restrict(ls: LevelSystem, component: int, value: int) -> LevelSystem:
    """Freeze one component at a value and drop it from the system.

    The result is a binary system on the remaining n - 1 components whose
    indicator is the original level function with the frozen coordinate
    spliced back in.
    """
    ms = ls.max_states
    if not 0 <= component < len(ms):
        raise DomainError(f"component {component} outside 0..{len(ms) - 1}")
    if not 0 <= value <= ms[component]:
        raise DomainError(f"state {value} outside 0..{ms[component]} for component {component}")
    reduced = ms[:component] + ms[component + 1 :]

    def indicator(x: Vector) -> int:
        return ls(x[:component] + (value,) + x[component:])

    space = StateSpace(max_states=reduced, system_max=1)
    inner = MultistateSystem(space=space, kind="restriction", _func=indicator)
    return LevelSystem(system=inner, level=1)


def check_monotone(system: MultistateSystem, *, guard: int = 10**7) -> bool:
    """Exhaustively verify phi(x) <= phi(y) whenever x <= y.

    Only one-step drops need checking.  Refuses spaces with more than
    `guard` vectors.
    """
    space = system.space
    if space.size() > guard:
        raise ComplexityGuardError(
            f"monotonicity check over {space.size()} states exceeds guard ({guard})"
        )
    for x in space.vectors():
        vx = system._func(x)
        for i, s in enumerate(x):
            if s > 0:
                if system._func(x[:i] + (s - 1,) + x[i + 1 :]) > vx:
                    return False
    return True


def minimal_path_vectors(ls: LevelSystem, *, guard: int = 10**7) -> tuple[Vector, ...]:
    """Minimal vectors x with phi(x) >= level, by scan and coordinate descent.

    x is minimal iff the level function holds at x but fails whenever one
    positive coordinate is lowered by one; monotonicity makes that local
    test exact.  Output is lexicographically sorted.
    """
    space = ls.system.space
    if space.size() > guard:
        raise ComplexityGuardError(
            f"path vector scan over {space.size()} states exceeds guard ({guard})"
        )
    out = []
    for x in space.vectors():
        if not ls(x):
            continue
        if all(
            not ls(x[:i] + (s - 1,) + x[i + 1 :])
            for i, s in enumerate(x)
            if s > 0
        ):
            out.append(x)
    return tuple(out)


def evaluate_from_paths(paths: Iterable[Vector], y: Vector) -> int:
    """Binary structure value at y given the minimal path vectors."""
    vecs = validate_generators(paths)
    if len(y) != len(vecs[0]):
        raise DimensionError(f"vectors of length {len(y)} and {len(vecs[0])}")
    return 1 if any(leq(p, y) for p in vecs) else 0


def inclusion_exclusion_eval(paths: Iterable[Vector], y: Vector, *, guard: int = 20) -> int:
    """The same structure value via inclusion-exclusion over path subsets.

    sum over non-empty S of (-1)^(|S|+1) [y >= join(S)].  Always 0 or 1;
    exists as an independent cross-check of evaluate_from_paths.
    """
    vecs = validate_generators(paths)
    if len(y) != len(vecs[0]):
        raise DimensionError(f"vectors of length {len(y)} and {len(vecs[0])}")
    s = len(vecs)
    if s > guard:
        raise ComplexityGuardError(f"{s} path vectors exceed the subset guard ({guard})")
    joins: list[Vector] = [()] * (1 << s)
    total = 0
    for mask in range(1, 1 << s):
        low = mask & -mask
        rest = mask ^ low
        g = vecs[low.bit_length() - 1]
        v = g if rest == 0 else tuple(map(max, joins[rest], g))
        joins[mask] = v
        if leq(v, y):
            total += 1 if mask.bit_count() & 1 else -1
    return total


@dataclass(frozen=True)
class RelevanceReport:
    """Which component states matter for a level function.

    attained[i] lists the states r > 0 of component i occurring in some
    minimal path vector (the r-relevances).  Component i is irrelevant
    iff the list is empty and strongly relevant iff its top state m_i is
    attained; the system is strongly coherent iff every component is
    strongly relevant.  Strong coherence is necessary for a non-zero
    signed domination, though not sufficient.
    """

    max_states: tuple[int, ...]
    attained: tuple[tuple[int, ...], ...]

    @property
    def irrelevant(self) -> tuple[bool, ...]:
        return tuple(not a for a in self.attained)

    @property
    def strongly_relevant(self) -> tuple[bool, ...]:
        return tuple(m in a for a, m in zip(self.attained, self.max_states))

    @property
    def strongly_coherent(self) -> bool:
        return all(self.strongly_relevant)


def relevance_report(ls: LevelSystem, *, guard: int = 10**7) -> RelevanceReport:
    """Relevance of every component for one level function."""
    paths = minimal_path_vectors(ls, guard=guard)
    ms = ls.max_states
    attained = [set() for _ in ms]
    for p in paths:
        for i, s in enumerate(p):
            if s > 0:
                attained[i].add(s)
    return RelevanceReport(
        max_states=ms,
        attained=tuple(tuple(sorted(a)) for a in attained),
    )


class ComponentDistribution:
    """Independent component state distributions.

    pmfs[i][r] is P(component i in state r).  All-Fraction input switches
    the object into exact mode; otherwise probabilities are floats and
    each pmf must sum to 1 within 1e-12.
    """

    def __init__(self, pmfs: Sequence[Sequence[float | Fraction]]):
        rows = tuple(tuple(row) for row in pmfs)
        if not rows:
            raise DistributionError("no component distributions given")
        exact = all(isinstance(p, (Fraction, int)) for row in rows for p in row)
        for i, row in enumerate(rows):
            if len(row) < 2:
                raise DistributionError(f"component {i}: pmf needs at least states 0 and 1")
            if any(p < 0 for p in row):
                raise DistributionError(f"component {i}: negative probability")
            total = sum(row)
            if exact:
                if total != 1:
                    raise DistributionError(f"component {i}: pmf sums to {total}, not 1")
            elif abs(total - 1.0) > 1e-12:
                raise DistributionError(f"component {i}: pmf sums to {total!r}")
        self.pmfs = rows
        self.exact = exact
        # survival[i][r] = P(component i >= r), survival[i][0] = 1
        self.survival = tuple(
            tuple(sum(row[r:]) for r in range(len(row)))
            for row in rows
        )

    @property
    def n(self) -> int:
        return len(self.pmfs)

    @property
    def max_states(self) -> tuple[int, ...]:
        return tuple(len(row) - 1 for row in self.pmfs)

    def _check_space(self, max_states: tuple[int, ...]) -> None:
        if self.max_states != tuple(max_states):
            raise DistributionError(
                f"distribution over {self.max_states} incompatible with space {tuple(max_states)}"
            )


def reliability_from_domination(
    table: DominationTable,
    dist: ComponentDistribution,
    max_states: Sequence[int],
) -> float | Fraction:
    """P(phi >= k) from a level-k domination table.

    The domination expansion of the level indicator gives
    P = sum over table of delta(x) * prod_i P(Y_i >= x_i).
    Exact when the distribution is exact.
    """
    dist._check_space(tuple(max_states))
    total: float | Fraction = Fraction(0) if dist.exact else 0.0
    for x, d in table.items():
        if d == 0:
            continue
        if len(x) != dist.n:
            raise DimensionError(f"table vector {x} for {dist.n} components")
        term: float | Fraction = Fraction(d) if dist.exact else float(d)
        for i, s in enumerate(x):
            term *= dist.survival[i][s]
        total += term
    return total


def reliability_enumerate(
    ls: LevelSystem,
    dist: ComponentDistribution,
    *,
    guard: int = 10**7,
) -> float | Fraction:
    """P(phi >= k) by brute-force enumeration of the state space."""
    space = ls.system.space
    dist._check_space(space.max_states)
    if space.size() > guard:
        raise ComplexityGuardError(
            f"enumeration over {space.size()} states exceeds guard ({guard})"
        )
    total: float | Fraction = Fraction(0) if dist.exact else 0.0
    for x in space.vectors():
        if ls(x):
            p: float | Fraction = Fraction(1) if dist.exact else 1.0
            for i, s in enumerate(x):
                p *= dist.pmfs[i][s]
            total += p
    return total


def hilbert_numerator(table: DominationTable) -> tuple[tuple[Vector, int], ...]:
    """Sparse multivariate polynomial sum of delta(x) * y^x.

    Terms are the non-zero table entries as (exponent vector, coefficient),
    lexicographically sorted by exponent.
    """
    return tuple(sorted((x, d) for x, d in table.items() if d != 0))


def evaluate_hilbert(terms: Iterable[tuple[Vector, int]], y: Sequence[float | Fraction]) -> float | Fraction:
    """Evaluate a hilbert_numerator term list at a point (with y_i^0 = 1)."""
    total = 0
    for x, c in terms:
        if len(x) != len(y):
            raise DimensionError(f"term exponent {x} for {len(y)} variables")
        term = c
        for yi, e in zip(y, x):
            term *= yi**e
        total += term
    return total
