"""Finite posets and bounded lattices.

Elements are the indices ``0..n-1``; labels are an optional side table used
only for display and serialization. Order relations are stored bit-packed:
``poset.up[i]`` is an int whose bit ``j`` is set iff ``i <= j``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    CarrierTooLarge,
    CycleDetected,
    EmptyFactorList,
    IndexOutOfRange,
    NotALattice,
    ParseError,
)


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class FinitePoset:
    up: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    down: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.up)
        down = [0] * n
        for i, row in enumerate(self.up):
            for j in bits(row):
                down[j] |= 1 << i
        object.__setattr__(self, "down", tuple(down))

    @property
    def n(self) -> int:
        return len(self.up)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.up[a] >> b & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def covers(self) -> list[tuple[int, int]]:
        """Hasse diagram edges ``(i, j)`` with ``j`` covering ``i``."""
        strict = [self.up[i] & ~(1 << i) for i in range(self.n)]
        out = []
        for i in range(self.n):
            above = 0
            for k in bits(strict[i]):
                above |= strict[k]
            out.extend((i, j) for j in bits(strict[i] & ~above))
        return out

    def is_upset(self, mask: int) -> bool:
        return all(self.up[i] & ~mask == 0 for i in bits(mask))

    def is_downset(self, mask: int) -> bool:
        return all(self.down[i] & ~mask == 0 for i in bits(mask))


def _close(n: int, rows: list[int]) -> list[int]:
    # Warshall on bit rows
    for k in range(n):
        kb = 1 << k
        for i in range(n):
            if rows[i] & kb:
                rows[i] |= rows[k]
    return rows


def _check_antisymmetric(rows: Sequence[int]) -> None:
    for i, row in enumerate(rows):
        for j in bits(row):
            if j != i and rows[j] >> i & 1:
                raise CycleDetected(i, j)


def poset_from_hasse(n: int, covers: Iterable[Sequence[int]], labels=None) -> FinitePoset:
    """Poset whose order is the reflexive-transitive closure of ``covers``."""
    if n < 1:
        raise IndexOutOfRange(f"a poset needs at least one element, got n={n}")
    rows = [1 << i for i in range(n)]
    for pair in covers:
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"cover {(a, b)} outside 0..{n - 1}")
        rows[a] |= 1 << b
    rows = _close(n, rows)
    _check_antisymmetric(rows)
    return FinitePoset(tuple(rows), tuple(labels) if labels else None)


def poset_from_leq(leq, labels=None) -> FinitePoset:
    """Poset from a square boolean matrix; the relation is validated, not closed."""
    n = len(leq)
    rows = [mask_of(j for j in range(n) if leq[i][j]) for i in range(n)]
    for i in range(n):
        if not rows[i] >> i & 1:
            raise ValueError(f"relation is not reflexive at {i}")
    _check_antisymmetric(rows)
    if _close(n, list(rows)) != rows:
        raise ValueError("relation is not transitive")
    return FinitePoset(tuple(rows), tuple(labels) if labels else None)


@dataclass(frozen=True)
class FiniteLattice:
    poset: FinitePoset
    meet_table: tuple[tuple[int, ...], ...] = field(repr=False)
    join_table: tuple[tuple[int, ...], ...] = field(repr=False)
    bottom: int
    top: int

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def up(self) -> tuple[int, ...]:
        return self.poset.up

    @property
    def down(self) -> tuple[int, ...]:
        return self.poset.down

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def labels(self) -> tuple[str, ...]:
        return self.poset.labels or tuple(str(i) for i in range(self.n))

    def label(self, i: int) -> str:
        return self.poset.label(i)

    def leq(self, a: int, b: int) -> bool:
        return self.poset.leq(a, b)

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet_all(self, elements: Iterable[int]) -> int:
        """Meet of a finite family; the empty meet is ``top``."""
        m = self.top
        for e in elements:
            m = self.meet_table[m][e]
        return m

    def join_all(self, elements: Iterable[int]) -> int:
        """Join of a finite family; the empty join is ``bottom``."""
        j = self.bottom
        for e in elements:
            j = self.join_table[j][e]
        return j

    def meet_mask(self, mask: int) -> int:
        return self.meet_all(bits(mask))

    def join_mask(self, mask: int) -> int:
        return self.join_all(bits(mask))

    def reachable_joins(self, mask: int) -> int:
        """Bitmask of all ``join_mask(T)`` for ``T`` a subset of ``mask``.

        Computed by closure rather than by listing subsets, so it stays
        polynomial in ``n``.
        """
        seen = 1 << self.bottom
        for c in bits(mask):
            row = self.join_table[c]
            for r in bits(seen):
                seen |= 1 << row[r]
        return seen

    def reachable_meets(self, mask: int) -> int:
        seen = 1 << self.top
        for c in bits(mask):
            row = self.meet_table[c]
            for r in bits(seen):
                seen |= 1 << row[r]
        return seen

    def elements(self) -> range:
        return range(self.n)

    def with_labels(self, labels: Sequence[str]) -> "FiniteLattice":
        return FiniteLattice(FinitePoset(self.poset.up, tuple(labels)), self.meet_table,
                             self.join_table, self.bottom, self.top)


def lattice_from_poset(p: FinitePoset) -> FiniteLattice:
    """Compute meet/join tables, raising :class:`NotALattice` on the first bad pair."""
    n = p.n
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            lower = p.down[a] & p.down[b]
            g = next((c for c in bits(lower) if p.down[c] == lower), None)
            if g is None:
                raise NotALattice(a, b, "meet")
            upper = p.up[a] & p.up[b]
            l = next((c for c in bits(upper) if p.up[c] == upper), None)
            if l is None:
                raise NotALattice(a, b, "join")
            meet[a][b] = meet[b][a] = g
            join[a][b] = join[b][a] = l
    full = (1 << n) - 1
    bottom = next(i for i in range(n) if p.up[i] == full)
    top = next(i for i in range(n) if p.down[i] == full)
    return FiniteLattice(p, tuple(map(tuple, meet)), tuple(map(tuple, join)), bottom, top)


def lattice_from_hasse(n: int, covers, labels=None) -> FiniteLattice:
    return lattice_from_poset(poset_from_hasse(n, covers, labels))


# -- algebraic properties ---------------------------------------------------

def distributivity_witness(L: FiniteLattice) -> tuple[int, int, int] | None:
    """First triple ``(a, b, c)`` with ``a ^ (b v c) != (a ^ b) v (a ^ c)``, if any."""
    M, J = L.meet_table, L.join_table
    for a in range(L.n):
        Ma = M[a]
        for b in range(L.n):
            for c in range(b + 1, L.n):
                if Ma[J[b][c]] != J[Ma[b]][Ma[c]]:
                    return (a, b, c)
    return None


def is_distributive(L: FiniteLattice) -> bool:
    return distributivity_witness(L) is None


def vee_bigmeet_witness(L: FiniteLattice) -> tuple[int, tuple[int, ...]] | None:
    """Witness ``(a, S)`` with ``a v meet(S) != meet(a v s for s in S)``.

    Among all violations the one with the smallest ``|S|`` is returned (ties
    broken by the bitmask of ``S``), matching an ascending-cardinality scan.
    """
    n = L.n
    if n > 20:
        raise CarrierTooLarge(f"subset scan over {n} elements")
    M, J = L.meet_table, L.join_table
    size = 1 << n
    best = None
    for a in range(n):
        Ja = J[a]
        meet_s = [L.top] * size
        meet_as = [L.top] * size
        for mask in range(1, size):
            low = mask & -mask
            e = low.bit_length() - 1
            rest = mask ^ low
            meet_s[mask] = M[meet_s[rest]][e]
            meet_as[mask] = M[meet_as[rest]][Ja[e]]
            if Ja[meet_s[mask]] != meet_as[mask]:
                key = (popcount(mask), mask)
                if best is None or key < best[0]:
                    best = (key, a, mask)
    if best is None:
        return None
    return best[1], tuple(bits(best[2]))


def is_vee_bigmeet_distributive(L: FiniteLattice) -> bool:
    return vee_bigmeet_witness(L) is None


def dual(L: FiniteLattice) -> FiniteLattice:
    """Order dual: reversed order, meet and join swapped, bounds swapped."""
    p = FinitePoset(L.poset.down, L.poset.labels)
    return FiniteLattice(p, L.join_table, L.meet_table, L.top, L.bottom)


def direct_product(Ls: Sequence[FiniteLattice]) -> FiniteLattice:
    """Cartesian product with coordinatewise order and operations.

    Element indices are mixed-radix with the first factor most significant,
    i.e. the order of ``itertools.product``; see :func:`product_coordinates`.
    """
    if not Ls:
        raise EmptyFactorList("direct_product needs at least one factor")
    coords = list(itertools.product(*(range(L.n) for L in Ls)))
    index = {c: i for i, c in enumerate(coords)}
    up = []
    for c in coords:
        row = 0
        for j, d in enumerate(coords):
            if all(L.leq(x, y) for L, x, y in zip(Ls, c, d)):
                row |= 1 << j
        up.append(row)
    meet = tuple(tuple(index[tuple(L.meet(x, y) for L, x, y in zip(Ls, c, d))] for d in coords)
                 for c in coords)
    join = tuple(tuple(index[tuple(L.join(x, y) for L, x, y in zip(Ls, c, d))] for d in coords)
                 for c in coords)
    labels = tuple("(" + ",".join(L.label(x) for L, x in zip(Ls, c)) + ")" for c in coords)
    bottom = index[tuple(L.bottom for L in Ls)]
    top = index[tuple(L.top for L in Ls)]
    return FiniteLattice(FinitePoset(tuple(up), labels), meet, join, bottom, top)


def product_coordinates(sizes: Sequence[int], idx: int) -> tuple[int, ...]:
    out = []
    for s in reversed(sizes):
        idx, r = divmod(idx, s)
        out.append(r)
    return tuple(reversed(out))


def product_index(sizes: Sequence[int], coords: Sequence[int]) -> int:
    idx = 0
    for s, c in zip(sizes, coords):
        idx = idx * s + c
    return idx


def complements(L: FiniteLattice, a: int) -> list[int]:
    return [b for b in range(L.n) if L.join(a, b) == L.top and L.meet(a, b) == L.bottom]


def is_complemented(L: FiniteLattice) -> bool:
    return all(complements(L, a) for a in range(L.n))


def atoms(L: FiniteLattice) -> list[int]:
    """Minimal elements of ``L`` minus its bottom."""
    return [a for a in range(L.n)
            if a != L.bottom and L.down[a] == (1 << a) | (1 << L.bottom)]


def is_atomic(L: FiniteLattice) -> bool:
    at = mask_of(atoms(L))
    return all(L.down[x] & at for x in range(L.n) if x != L.bottom)


# -- isomorphism ------------------------------------------------------------

def find_isomorphism(L1: FiniteLattice, L2: FiniteLattice) -> tuple[int, ...] | None:
    """Order isomorphism ``L1 -> L2`` as an index tuple, or ``None``.

    An order isomorphism between lattices is automatically a lattice
    isomorphism, so only ``leq`` is matched.
    """
    if L1.n != L2.n:
        return None
    p1, p2 = L1.poset, L2.poset
    inv1 = [(popcount(p1.down[i]), popcount(p1.up[i])) for i in range(L1.n)]
    inv2 = [(popcount(p2.down[i]), popcount(p2.up[i])) for i in range(L2.n)]
    if sorted(inv1) != sorted(inv2):
        return None
    order = sorted(range(L1.n), key=lambda i: inv1[i])
    mapping = [-1] * L1.n
    used = [False] * L2.n

    def extend(pos):
        if pos == len(order):
            return True
        i = order[pos]
        for j in range(L2.n):
            if used[j] or inv2[j] != inv1[i]:
                continue
            ok = True
            for k in order[:pos]:
                mk = mapping[k]
                if p1.leq(k, i) != p2.leq(mk, j) or p1.leq(i, k) != p2.leq(j, mk):
                    ok = False
                    break
            if ok:
                mapping[i] = j
                used[j] = True
                if extend(pos + 1):
                    return True
                used[j] = False
        mapping[i] = -1
        return False

    return tuple(mapping) if extend(0) else None


def is_isomorphic(L1: FiniteLattice, L2: FiniteLattice) -> bool:
    return find_isomorphism(L1, L2) is not None


def canonical_form(L: FiniteLattice) -> tuple[int, ...]:
    """Lexicographically least relabelled order matrix over all permutations (n <= 8)."""
    n = L.n
    if n > 8:
        raise CarrierTooLarge(f"canonical_form brute force is limited to n <= 8, got {n}")
    best = None
    for perm in itertools.permutations(range(n)):
        rows = [0] * n
        for i in range(n):
            r = 0
            for j in bits(L.up[i]):
                r |= 1 << perm[j]
            rows[perm[i]] = r
        t = tuple(rows)
        if best is None or t < best:
            best = t
    return best


# -- named lattices ---------------------------------------------------------

def chain(n: int) -> FiniteLattice:
    return lattice_from_hasse(n, [(i, i + 1) for i in range(n - 1)])


def boolean_lattice(k: int) -> FiniteLattice:
    """Powerset of a ``k``-set; element ``i`` is the subset with bitmask ``i``."""
    n = 1 << k
    covers = [(s, s | 1 << b) for s in range(n) for b in range(k) if not s >> b & 1]
    labels = ["{" + ",".join(str(b) for b in bits(s)) + "}" for s in range(n)]
    return lattice_from_hasse(n, covers, labels)


def m3() -> FiniteLattice:
    return lattice_from_hasse(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
                              ["0", "a", "b", "c", "1"])


def n5() -> FiniteLattice:
    # 0 < a < c < 1 and 0 < b < 1
    return lattice_from_hasse(5, [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)],
                              ["0", "a", "b", "c", "1"])


# -- JSON format ------------------------------------------------------------

def lattice_to_dict(L: FiniteLattice) -> dict:
    d = {"n": L.n, "covers": [list(c) for c in L.poset.covers()]}
    if L.poset.labels:
        d["labels"] = list(L.poset.labels)
    return d


def lattice_from_dict(d) -> FiniteLattice:
    if not isinstance(d, dict) or "n" not in d or "covers" not in d:
        raise ParseError("lattice JSON needs keys 'n' and 'covers'")
    n, covers, labels = d["n"], d["covers"], d.get("labels")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("'n' must be an integer")
    try:
        pairs = {(int(a), int(b)) for a, b in covers}
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed covers: {exc}") from None
    if labels is not None and (not isinstance(labels, list) or len(labels) != n):
        raise ParseError("'labels' must be a list of n strings")
    return lattice_from_poset(poset_from_hasse(n, sorted(pairs), labels))


def load_lattice(path) -> FiniteLattice:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return lattice_from_dict(data)
