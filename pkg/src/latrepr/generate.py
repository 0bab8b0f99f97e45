"""Exhaustive and random generation of small finite lattices."""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from functools import lru_cache

from .core import (
    FiniteLattice,
    FinitePoset,
    find_isomorphism,
    lattice_from_poset,
    popcount,
)
from .errors import NotALattice
from .irreducibles import downset_lattice, downsets


def _bounded(m: int, rel: dict[int, int]) -> FinitePoset:
    """Poset on ``m`` middle elements (strict relation ``rel``) with a new bottom and top."""
    n = m + 2
    full = (1 << n) - 1
    up = [full]
    for i in range(m):
        up.append((1 << (i + 1)) | (rel.get(i, 0) << 1) | (1 << (n - 1)))
    up.append(1 << (n - 1))
    return FinitePoset(tuple(up))


def _natural_posets(m: int):
    """All strict orders on ``0..m-1`` compatible with the natural labelling.

    Every finite poset has a linear extension, so up to isomorphism this
    covers all posets of size ``m``. Yields dicts ``i -> bitmask of j > i``.
    """
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for choice in range(1 << len(pairs)):
        rel = defaultdict(int)
        for k, (i, j) in enumerate(pairs):
            if choice >> k & 1:
                rel[i] |= 1 << j
        if all(rel[j] & ~rel[i] == 0 for i in range(m) for j in range(m) if rel[i] >> j & 1):
            yield rel


def _invariant(L: FiniteLattice):
    return tuple(sorted((popcount(L.down[i]), popcount(L.up[i])) for i in range(L.n)))


def _dedupe(lattices):
    buckets = defaultdict(list)
    out = []
    for L in lattices:
        bucket = buckets[_invariant(L)]
        if any(find_isomorphism(L, K) is not None for K in bucket):
            continue
        bucket.append(L)
        out.append(L)
    return out


@lru_cache(maxsize=None)
def lattices_of_size(n: int) -> tuple[FiniteLattice, ...]:
    """All lattices with exactly ``n`` elements, one per isomorphism class."""
    if n < 1:
        return ()
    if n == 1:
        return (lattice_from_poset(FinitePoset((1,))),)
    found = []
    for rel in _natural_posets(n - 2):
        try:
            found.append(lattice_from_poset(_bounded(n - 2, rel)))
        except NotALattice:
            pass
    return tuple(_dedupe(found))


def all_lattices(max_n: int) -> list[FiniteLattice]:
    return [L for n in range(1, max_n + 1) for L in lattices_of_size(n)]


def _grow_posets(rows: tuple[int, ...], max_downsets: int):
    """Posets extending ``rows`` by new maximal elements, pruned by downset count.

    Adding elements never loses downsets, so a poset with too many has no
    admissible extension.
    """
    current = downsets(FinitePoset(rows)) if rows else [0]
    if len(current) > max_downsets:
        return
    yield rows
    k = len(rows)
    for below in current:
        grown = tuple(r | (1 << k) if below >> i & 1 else r for i, r in enumerate(rows))
        yield from _grow_posets(grown + (1 << k,), max_downsets)


@lru_cache(maxsize=None)
def distributive_lattices(max_n: int) -> tuple[FiniteLattice, ...]:
    """All distributive lattices with at most ``max_n`` elements, up to isomorphism.

    Built as downset lattices of posets, which reaches sizes the generic
    enumeration cannot.
    """
    if max_n < 1:
        return ()
    found = [lattice_from_poset(FinitePoset((1,)))]
    for rows in _grow_posets((), max_n):
        if rows:
            found.append(downset_lattice(FinitePoset(rows)))
    out = _dedupe(found)
    return tuple(sorted(out, key=lambda L: L.n))


def random_closure_lattice(rng: random.Random, max_n: int = 9, ground: int = 4) -> FiniteLattice:
    """Random lattice realised as an intersection-closed family of subsets.

    Any finite lattice arises this way, so both distributive and
    non-distributive lattices appear. Retries until the size is at most ``max_n``.
    """
    full = (1 << ground) - 1
    while True:
        family = {full}
        for _ in range(rng.randint(0, ground + 2)):
            family.add(rng.randrange(full + 1))
        changed = True
        while changed:
            changed = False
            for a, b in itertools.combinations(list(family), 2):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
        if len(family) > max_n:
            continue
        sets = sorted(family, key=lambda s: (popcount(s), s))
        up = tuple(sum(1 << j for j, t in enumerate(sets) if s & ~t == 0) for s in sets)
        labels = ["{" + ",".join(str(b) for b in range(ground) if s >> b & 1) + "}" for s in sets]
        return lattice_from_poset(FinitePoset(up, tuple(labels)))


def random_poset_lattice(rng: random.Random, max_n: int = 9, density: float = 0.3) -> FiniteLattice:
    """Random bounded poset, rejected until it is a lattice."""
    while True:
        m = rng.randint(0, max_n - 2)
        rel = defaultdict(int)
        for i in range(m):
            for j in range(i + 1, m):
                if rng.random() < density:
                    rel[i] |= 1 << j
        for k in reversed(range(m)):
            for j in range(k + 1, m):
                if rel[k] >> j & 1:
                    rel[k] |= rel[j]
        try:
            L = lattice_from_poset(_bounded(m, rel))
        except NotALattice:
            continue
        perm = list(range(L.n))
        rng.shuffle(perm)
        return relabel(L, perm)


def relabel(L: FiniteLattice, perm) -> FiniteLattice:
    """Copy of ``L`` with element ``i`` renamed to ``perm[i]``."""
    n = L.n
    up = [0] * n
    for i in range(n):
        row = 0
        for j in range(n):
            if L.leq(i, j):
                row |= 1 << perm[j]
        up[perm[i]] = row
    labels = [None] * n
    for i in range(n):
        labels[perm[i]] = L.label(i)
    return lattice_from_poset(FinitePoset(tuple(up), tuple(labels)))


def random_lattices(count: int, max_n: int = 9, seed: int = 0) -> list[FiniteLattice]:
    """``count`` random lattices with at most ``max_n`` elements, alternating generators."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        if k % 2:
            out.append(random_poset_lattice(rng, max_n))
        else:
            out.append(random_closure_lattice(rng, max_n))
    return out
