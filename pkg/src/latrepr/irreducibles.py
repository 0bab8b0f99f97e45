"""Irreducible elements, density, Birkhoff duality and canonical extensions."""
from __future__ import annotations

import os
from dataclasses import dataclass

from .core import (
    FiniteLattice,
    FinitePoset,
    bits,
    distributivity_witness,
    lattice_from_poset,
    mask_of,
    popcount,
)
from .errors import LatticeError, NotDistributive
from .filters import as_mask, enumerate_prime_filters

DEFINITIONAL_CAP = 20


def _cap() -> int:
    return int(os.environ.get("LATREPR_CAP", DEFINITIONAL_CAP))


@dataclass(frozen=True)
class IrreducibleReport:
    join_irr: frozenset[int]
    meet_irr: frozenset[int]
    completely_join_irr: frozenset[int]
    completely_meet_irr: frozenset[int]
    # True when the completely-irreducible sets were taken from the finite
    # theorem (equal to the binary ones) instead of by subset enumeration.
    shortcut: bool = False


def join_irreducibles(L: FiniteLattice) -> list[int]:
    J = L.join_table
    out = []
    for x in range(L.n):
        if x == L.bottom:
            continue
        below = L.down[x] & ~(1 << x)
        if not any(J[a][b] == x for a in bits(below) for b in bits(below)):
            out.append(x)
    return out


def meet_irreducibles(L: FiniteLattice) -> list[int]:
    M = L.meet_table
    out = []
    for x in range(L.n):
        if x == L.top:
            continue
        above = L.up[x] & ~(1 << x)
        if not any(M[a][b] == x for a in bits(above) for b in bits(above)):
            out.append(x)
    return out


def _completely_irreducible(L: FiniteLattice, x: int, table, strict_side: int, unit: int) -> bool:
    # x is completely irreducible iff no subset of the other elements
    # combines to x. Only elements on the strict side can contribute, so the
    # enumeration runs over subsets of that side.
    side = list(bits(strict_side))
    size = 1 << len(side)
    acc = [unit] * size
    if unit == x:
        return False
    for mask in range(1, size):
        low = mask & -mask
        acc[mask] = table[acc[mask ^ low]][side[low.bit_length() - 1]]
        if acc[mask] == x:
            return False
    return True


def irreducibles(L: FiniteLattice, cap: int | None = None) -> IrreducibleReport:
    cap = _cap() if cap is None else cap
    ji = frozenset(join_irreducibles(L))
    mi = frozenset(meet_irreducibles(L))
    if L.n > cap:
        return IrreducibleReport(ji, mi, ji, mi, shortcut=True)
    cji = frozenset(x for x in range(L.n)
                    if _completely_irreducible(L, x, L.join_table, L.down[x] & ~(1 << x), L.bottom))
    cmi = frozenset(x for x in range(L.n)
                    if _completely_irreducible(L, x, L.meet_table, L.up[x] & ~(1 << x), L.top))
    return IrreducibleReport(ji, mi, cji, cmi)


def is_join_dense(L: FiniteLattice, S) -> bool:
    """Every element is the join of some subset of ``S`` (the empty join is bottom)."""
    return L.reachable_joins(as_mask(S)) == L.full


def is_meet_dense(L: FiniteLattice, S) -> bool:
    return L.reachable_meets(as_mask(S)) == L.full


def induced_poset(L: FiniteLattice, elements) -> FinitePoset:
    elements = list(elements)
    up = tuple(mask_of(k for k, y in enumerate(elements) if L.leq(x, y)) for x in elements)
    return FinitePoset(up, tuple(L.label(x) for x in elements))


def downsets(p: FinitePoset) -> list[int]:
    """All downward-closed sets of ``p`` (empty included), sorted by bitmask."""
    order = sorted(range(p.n), key=lambda i: popcount(p.down[i]))
    out = []

    def walk(k, current):
        if k == p.n:
            out.append(current)
            return
        i = order[k]
        walk(k + 1, current)
        # a linear extension order guarantees everything below i is decided
        if p.down[i] & ~current == 1 << i:
            walk(k + 1, current | 1 << i)

    walk(0, 0)
    return sorted(out)


def downset_lattice(p: FinitePoset) -> FiniteLattice:
    """Lattice of downsets of ``p`` under inclusion (meet is intersection, join union)."""
    ds = downsets(p)
    up = tuple(mask_of(k for k, t in enumerate(ds) if s & ~t == 0) for s in ds)
    labels = tuple("{" + ",".join(p.label(i) for i in bits(s)) + "}" for s in ds)
    return lattice_from_poset(FinitePoset(up, labels))


def upset_lattice(p: FinitePoset) -> FiniteLattice:
    """Lattice of upsets of ``p`` under inclusion."""
    return downset_lattice(FinitePoset(p.down, p.labels))


def birkhoff_roundtrip(L: FiniteLattice) -> tuple[int, ...]:
    """Isomorphism ``L -> downsets(J(L))`` given by ``x -> {j in J(L) : j <= x}``.

    Returns the map as an index tuple into ``downset_lattice`` of the induced
    poset on the join-irreducibles.
    """
    w = distributivity_witness(L)
    if w is not None:
        raise NotDistributive(w)
    J = join_irreducibles(L)
    D = downset_lattice(induced_poset(L, J))
    ds = downsets(induced_poset(L, J))
    where = {s: k for k, s in enumerate(ds)}
    phi = []
    for x in range(L.n):
        s = mask_of(k for k, j in enumerate(J) if L.leq(j, x))
        if s not in where:
            raise LatticeError(f"image of {x} is not a downset")
        phi.append(where[s])
    phi = tuple(phi)
    if not _is_isomorphism(L, D, phi):
        raise LatticeError("Birkhoff map is not an isomorphism")
    return phi


def _is_isomorphism(A: FiniteLattice, B: FiniteLattice, phi) -> bool:
    if A.n != B.n or len(set(phi)) != A.n:
        return False
    if phi[A.bottom] != B.bottom or phi[A.top] != B.top:
        return False
    return all(phi[A.meet(a, b)] == B.meet(phi[a], phi[b]) and
               phi[A.join(a, b)] == B.join(phi[a], phi[b])
               for a in range(A.n) for b in range(A.n))


@dataclass(frozen=True)
class CanonicalExtension:
    lattice: FiniteLattice
    embedding: tuple[int, ...]
    prime_filters: tuple[int, ...]


def canonical_extension_with_embedding(L: FiniteLattice) -> CanonicalExtension:
    w = distributivity_witness(L)
    if w is not None:
        raise NotDistributive(w)
    primes = [r.carrier for r in enumerate_prime_filters(L)]
    up = tuple(mask_of(k for k, G in enumerate(primes) if F & ~G == 0) for F in primes)
    pf = FinitePoset(up, tuple("^" + L.label(L.meet_mask(F)) for F in primes))
    ext = upset_lattice(pf)
    ups = downsets(FinitePoset(pf.down))
    where = {s: k for k, s in enumerate(ups)}
    emb = tuple(where[mask_of(k for k, F in enumerate(primes) if F >> x & 1)] for x in range(L.n))
    return CanonicalExtension(ext, emb, tuple(primes))


def canonical_extension(L: FiniteLattice) -> FiniteLattice:
    """Upsets of the prime-filter poset (ordered by inclusion).

    For finite distributive ``L`` this is isomorphic to ``L`` via
    ``x -> {F : x in F}``.
    """
    return canonical_extension_with_embedding(L).lattice


def is_doubly_algebraic(L: FiniteLattice) -> bool:
    if distributivity_witness(L) is not None:
        return False
    rep = irreducibles(L)
    return is_join_dense(L, rep.completely_join_irr) and is_meet_dense(L, rep.completely_meet_irr)
