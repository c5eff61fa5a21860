"""Signed domination on the full component lattice.

Three routes to the same number, none of which enumerates path vector
subsets:

* a direct alternating sum over subsets of the support of the target
  vector (2^n terms, from Mobius inversion on the product lattice),
* a pivotal decomposition, splitting on one component's top two states
  and recursing on systems with one component fewer, and
* a reduction to an associated binary structure on the component set,
  whose signed domination at (1, ..., 1) equals the multistate one.

All arithmetic is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import ComplexityGuardError, DimensionError, DomainError
from .poset import DominationTable, Vector
from .systems import LevelSystem, restrict


def mobius_product(x: Vector, y: Vector) -> int:
    """Mobius function of the product lattice of component states.

    For x <= y: (-1)^sum(y - x) when y_i <= x_i + 1 in every coordinate,
    else 0.  Pairs with x <= y violated are a domain error.
    """
    if len(x) != len(y):
        raise DimensionError(f"vectors of length {len(x)} and {len(y)}")
    total = 0
    for a, b in zip(x, y):
        if a > b:
            raise DomainError(f"mobius_product needs x <= y, got {x} and {y}")
        if b > a + 1:
            return 0
        total += b - a
    return -1 if total & 1 else 1


def delta_at(ls: LevelSystem, y: Vector, *, guard: int = 25) -> int:
    """Signed domination of a level function at one state vector.

    delta(y) = sum over subsets B of the support A(y) of
    phi_k(x(B)) * (-1)^(|A(y)| - |B|), where x(B) keeps y on B, lowers y
    by one on A(y) \\ B and zeroes the rest.  The all-zero vector is
    outside the domain (its value is fixed by the support convention,
    not computed).
    """
    ms = ls.max_states
    y = tuple(y)
    if len(y) != len(ms):
        raise DimensionError(f"vector of length {len(y)} for {len(ms)} components")
    if any(a < 0 or a > m for a, m in zip(y, ms)):
        raise DomainError(f"state vector {y} outside space {ms}")
    support = [i for i, a in enumerate(y) if a > 0]
    if not support:
        raise DomainError("delta_at is undefined at the all-zero vector")
    a = len(support)
    if a > guard:
        raise ComplexityGuardError(
            f"support size {a} exceeds the subset guard ({guard}); "
            "use pivotal_domination or a closed-form engine"
        )
    base = [0] * len(ms)
    for i in support:
        base[i] = y[i] - 1
    total = 0
    for mask in range(1 << a):
        x = base.copy()
        bits = 0
        m = mask
        while m:
            low = m & -m
            i = support[low.bit_length() - 1]
            x[i] = y[i]
            bits += 1
            m ^= low
        if ls(tuple(x)):
            total += 1 if (a - bits) % 2 == 0 else -1
    return total


def signed_domination(ls: LevelSystem, *, guard: int = 25) -> int:
    """Signed domination of the whole level function, delta at the top vector.

    Specialises delta_at to y = (m_1, ..., m_n), where the support is all
    of the component set.  Systems with no components evaluate to their
    constant structure value.
    """
    ms = ls.max_states
    if not ms:
        return ls(())
    return delta_at(ls, ms, guard=guard)


def pivotal_domination(
    ls: LevelSystem,
    pivot: int | None = None,
    *,
    base_size: int = 10,
    guard: int = 25,
) -> int:
    """Signed domination by pivotal decomposition.

    d(phi_k) = d(phi_k with the pivot frozen at its top state)
             - d(phi_k with the pivot frozen one below top),
    both restrictions being binary systems on one component fewer.  With
    no pivot given, systems of at most base_size components fall through
    to the subset formula; larger ones pivot on a component with the most
    states (lowest index on ties).
    """
    ms = ls.max_states
    if pivot is None:
        if len(ms) <= base_size:
            return signed_domination(ls, guard=guard)
        e = max(range(len(ms)), key=lambda i: (ms[i], -i))
    else:
        if not 0 <= pivot < len(ms):
            raise DomainError(f"pivot {pivot} outside 0..{len(ms) - 1}")
        e = pivot
    top = restrict(ls, e, ms[e])
    below = restrict(ls, e, ms[e] - 1)
    return pivotal_domination(top, base_size=base_size, guard=guard) - pivotal_domination(
        below, base_size=base_size, guard=guard
    )


@dataclass(frozen=True)
class BinaryStructure:
    """Monotone indicator on {0,1}^k attached to a set of components.

    `components` records which original components the binary slots stand
    for (identity for whole-system reductions, the support of y for
    pointwise ones).
    """

    components: tuple[int, ...]
    _func: Callable[[Vector], int]

    @property
    def size(self) -> int:
        return len(self.components)

    def __call__(self, z: Vector) -> int:
        z = tuple(z)
        if len(z) != len(self.components) or any(b not in (0, 1) for b in z):
            raise DomainError(f"binary vector of length {len(self.components)} expected, got {z}")
        return 1 if self._func(z) else 0


def associated_binary(ls: LevelSystem) -> BinaryStructure:
    """Binary structure with the same signed domination as the level function.

    psi(z) = phi_k(m - 1 + z): slot i up means component i at its top
    state, down means one below top.
    """
    ms = ls.max_states
    base = tuple(m - 1 for m in ms)
    return BinaryStructure(
        components=tuple(range(len(ms))),
        _func=lambda z: ls(tuple(b + a for b, a in zip(base, z))),
    )


def associated_binary_at(ls: LevelSystem, y: Vector) -> BinaryStructure:
    """Binary structure matching the signed domination at an arbitrary y.

    Slots range over the support of y; slot i up means component i at
    y_i, down means y_i - 1; components outside the support are pinned
    at 0.  delta_k(y) of the original equals the signed domination of
    the result.
    """
    ms = ls.max_states
    y = tuple(y)
    if len(y) != len(ms):
        raise DimensionError(f"vector of length {len(y)} for {len(ms)} components")
    if any(a < 0 or a > m for a, m in zip(y, ms)):
        raise DomainError(f"state vector {y} outside space {ms}")
    support = tuple(i for i, a in enumerate(y) if a > 0)
    if not support:
        raise DomainError("associated_binary_at is undefined at the all-zero vector")

    def func(z: Vector) -> int:
        x = [0] * len(ms)
        for slot, i in enumerate(support):
            x[i] = y[i] - 1 + z[slot]
        return ls(tuple(x))

    return BinaryStructure(components=support, _func=func)


def binary_signed_domination(bs: BinaryStructure, *, guard: int = 25) -> int:
    """Signed domination of a binary structure at the all-ones vector.

    sum over subsets B of the slots of psi(1_B) * (-1)^(k - |B|).
    """
    k = bs.size
    if k == 0:
        return bs(())
    if k > guard:
        raise ComplexityGuardError(
            f"{k} binary components exceed the subset guard ({guard})"
        )
    total = 0
    for mask in range(1 << k):
        z = tuple((mask >> i) & 1 for i in range(k))
        if bs(z):
            total += 1 if (k - mask.bit_count()) % 2 == 0 else -1
    return total


def domination_via_binary(ls: LevelSystem, *, guard: int = 25) -> int:
    """Signed domination computed through the associated binary structure."""
    return binary_signed_domination(associated_binary(ls), guard=guard)
