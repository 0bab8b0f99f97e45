"""Ultrapowers of finite lattices over finite index sets.

On a finite index set every ultrafilter is principal, so the ultrapower is
isomorphic to the base lattice through evaluation at the principal point.
That makes the statements here checkable exactly, but it also means the
interesting (non-principal) direction of the ultraroot questions cannot be
exercised at this scale; nothing here simulates it.

Functions ``I -> L`` are tuples of element indices. Two functions are
equivalent when the set of indices where they agree is in ``U``; since ``U``
is closed under finite intersection its kernel ``K = meet(U)`` is a member,
and agreement on ``K`` decides equivalence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import (
    FiniteLattice,
    FinitePoset,
    bits,
    is_vee_bigmeet_distributive,
    lattice_from_poset,
    mask_of,
)
from .errors import CarrierTooLarge, LatticeError

MATERIALIZE_CAP = 10 ** 6


@dataclass(frozen=True)
class UltrafilterOnFiniteIndex:
    size: int
    members: frozenset[int]

    def __post_init__(self):
        full = (1 << self.size) - 1
        m = self.members
        if 0 in m:
            raise LatticeError("ultrafilter contains the empty set")
        for A in range(full + 1):
            if (A in m) == ((full & ~A) in m):
                raise LatticeError(f"exactly one of {A:b} and its complement must belong")
        for A in m:
            for B in m:
                if A & B not in m:
                    raise LatticeError("not closed under intersection")
            for B in range(full + 1):
                if A & ~B == 0 and B not in m:
                    raise LatticeError("not upward closed")

    @classmethod
    def principal(cls, size: int, point: int) -> "UltrafilterOnFiniteIndex":
        if not 0 <= point < size:
            raise LatticeError(f"principal point {point} outside index set of size {size}")
        return cls(size, frozenset(A for A in range(1 << size) if A >> point & 1))

    @property
    def kernel(self) -> int:
        k = (1 << self.size) - 1
        for A in self.members:
            k &= A
        return k

    @property
    def principal_point(self) -> int | None:
        k = self.kernel
        return k.bit_length() - 1 if k and k & (k - 1) == 0 else None

    def __contains__(self, A: int) -> bool:
        return A in self.members


def all_ultrafilters(size: int) -> list[UltrafilterOnFiniteIndex]:
    """Every ultrafilter on ``{0..size-1}``, found by exhaustive search.

    Each candidate picks one set from every complementary pair, which is
    already forced by maximality; the constructor rejects the rest.
    """
    full = (1 << size) - 1
    pairs = [(A, full & ~A) for A in range(full + 1) if A < full & ~A]
    out = []
    for choice in itertools.product(*pairs):
        try:
            out.append(UltrafilterOnFiniteIndex(size, frozenset(choice)))
        except LatticeError:
            pass
    return out


@dataclass(frozen=True)
class Ultrapower:
    base: FiniteLattice
    U: UltrafilterOnFiniteIndex
    lattice: FiniteLattice
    classes: tuple[tuple[int, ...], ...]  # canonical representative per element
    _index: dict = field(repr=False, compare=False)

    def canonical(self, x) -> tuple[int, ...]:
        """Canonical representative: coordinates off the kernel set to 0."""
        k = self.U.kernel
        return tuple(v if k >> i & 1 else 0 for i, v in enumerate(x))

    def class_of(self, x) -> int:
        return self._index[self.canonical(x)]

    def functions(self):
        """All functions ``I -> L`` (materialised lazily)."""
        return itertools.product(range(self.base.n), repeat=self.U.size)

    def equivalent(self, x, y) -> bool:
        agree = mask_of(i for i in range(self.U.size) if x[i] == y[i])
        return agree in self.U


def ultrapower(L: FiniteLattice, U: UltrafilterOnFiniteIndex) -> Ultrapower:
    """Quotient of ``L**I`` by agreement on a member of ``U``, operations pointwise."""
    kernel = list(bits(U.kernel))
    classes = []
    for values in itertools.product(range(L.n), repeat=len(kernel)):
        rep = [0] * U.size
        for i, v in zip(kernel, values):
            rep[i] = v
        classes.append(tuple(rep))
    index = {c: k for k, c in enumerate(classes)}
    up = tuple(mask_of(j for j, d in enumerate(classes)
                       if all(L.leq(c[i], d[i]) for i in kernel))
               for c in classes)
    labels = tuple("[" + ",".join(L.label(v) for v in c) + "]" for c in classes)
    P = lattice_from_poset(FinitePoset(up, labels))
    return Ultrapower(L, U, P, tuple(classes), index)


def definitional_classes(up: Ultrapower) -> list[frozenset]:
    """Equivalence classes of all functions, grouped by the agreement test alone."""
    n_funcs = up.base.n ** up.U.size
    if n_funcs > MATERIALIZE_CAP:
        raise CarrierTooLarge(f"{n_funcs} functions exceed the materialisation cap")
    reps, groups = [], []
    for f in up.functions():
        for k, r in enumerate(reps):
            if up.equivalent(f, r):
                groups[k].add(f)
                break
        else:
            reps.append(f)
            groups.append({f})
    return [frozenset(g) for g in groups]


def pointwise(L: FiniteLattice, op, x, y):
    table = L.meet_table if op == "meet" else L.join_table
    return tuple(table[a][b] for a, b in zip(x, y))


def evaluation_isomorphism(up: Ultrapower) -> tuple[int, ...]:
    """``[x] -> x(i0)`` for a principal ``U`` at ``i0``."""
    i0 = up.U.principal_point
    if i0 is None:
        raise LatticeError("ultrafilter is not principal")
    return tuple(c[i0] for c in up.classes)


def bar(up: Ultrapower, a: int) -> int:
    """Class of the constant function with value ``a``."""
    return up.class_of((a,) * up.U.size)


def star_set(up: Ultrapower, S) -> frozenset[int]:
    """Classes ``[x]`` with ``{i : x(i) in S}`` in ``U``, by scanning every function."""
    S = S if isinstance(S, int) else mask_of(S)
    n_funcs = up.base.n ** up.U.size
    if n_funcs > MATERIALIZE_CAP:
        raise CarrierTooLarge(f"{n_funcs} functions exceed the materialisation cap")
    out = set()
    for f in up.functions():
        if mask_of(i for i, v in enumerate(f) if S >> v & 1) in up.U:
            out.add(up.class_of(f))
    return frozenset(out)


def lower_star(up: Ultrapower, T) -> frozenset[int]:
    """``{a in L : bar(a) in T}``."""
    T = set(T)
    return frozenset(a for a in range(up.base.n) if bar(up, a) in T)


@dataclass(frozen=True)
class InfExistResult:
    ok: bool
    inf_of_star: int
    bar_of_inf: int


def verify_inf_exist(up: Ultrapower, S) -> InfExistResult:
    """Compare ``meet(S*)`` in the ultrapower with ``bar(meet S)``; empty meets are top."""
    S = S if isinstance(S, int) else mask_of(S)
    lhs = up.lattice.meet_all(star_set(up, S))
    rhs = bar(up, up.base.meet_mask(S))
    return InfExistResult(lhs == rhs, lhs, rhs)


@dataclass(frozen=True)
class DistRootResult:
    ok: bool
    ultrapower_value: bool
    base_value: bool


def verify_dist_root(up: Ultrapower) -> DistRootResult:
    a = is_vee_bigmeet_distributive(up.lattice)
    b = is_vee_bigmeet_distributive(up.base)
    return DistRootResult(a == b, a, b)
