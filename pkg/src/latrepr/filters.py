"""Filters and ideals of finite lattices and their classification.

Sets of elements are bitmasks over the carrier. Classification flags follow
the order-theoretic definitions literally; on a finite lattice every filter
is principal and complete, and the completely prime filters are exactly the
principal filters with a join-prime generator.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (
    FiniteLattice,
    bits,
    dual,
    is_complemented,
    is_distributive,
    mask_of,
    product_coordinates,
)
from .errors import CarrierTooLarge, NotBoolean, NotPrime

PARANOID_CAP = 20


def as_mask(S) -> int:
    """Accept a bitmask, a record with a ``carrier``, or an iterable of indices."""
    if isinstance(S, int):
        return S
    carrier = getattr(S, "carrier", None)
    if carrier is not None:
        return carrier
    return mask_of(S)


@dataclass(frozen=True)
class FilterRecord:
    carrier: int
    is_filter: bool
    is_proper: bool
    is_prime: bool
    is_complete: bool
    is_completely_prime: bool
    is_principal: bool
    is_ultrafilter: bool
    generator: int | None = None

    def __contains__(self, a: int) -> bool:
        return bool(self.carrier >> a & 1)

    def members(self) -> list[int]:
        return list(bits(self.carrier))

    def flags(self) -> dict[str, bool]:
        return {k: getattr(self, k) for k in (
            "is_filter", "is_proper", "is_prime", "is_complete",
            "is_completely_prime", "is_principal", "is_ultrafilter")}


@dataclass(frozen=True)
class IdealRecord:
    carrier: int
    is_ideal: bool
    is_proper: bool
    is_prime: bool
    is_complete: bool
    is_completely_prime: bool
    is_principal: bool
    is_maximal: bool
    generator: int | None = None

    def __contains__(self, a: int) -> bool:
        return bool(self.carrier >> a & 1)

    def members(self) -> list[int]:
        return list(bits(self.carrier))


def _is_meet_closed(L: FiniteLattice, S: int) -> bool:
    members = list(bits(S))
    M = L.meet_table
    return all(S >> M[a][b] & 1 for i, a in enumerate(members) for b in members[i + 1:])


def _is_join_prime_set(L: FiniteLattice, S: int) -> bool:
    J = L.join_table
    for a in range(L.n):
        if S >> a & 1:
            continue
        for b in range(a, L.n):
            if not S >> b & 1 and S >> J[a][b] & 1:
                return False
    return True


def _check_cap(size: int) -> None:
    if size > PARANOID_CAP:
        raise CarrierTooLarge(f"paranoid subset scan over {size} elements")


def is_meet_complete_set(L: FiniteLattice, S: int, paranoid: bool = False) -> bool:
    """Whether ``meet(T)`` lies in ``S`` for every ``T`` contained in ``S`` (``T`` empty included)."""
    if paranoid:
        members = list(bits(S))
        _check_cap(len(members))
        for k in range(1 << len(members)):
            if not S >> L.meet_all(m for i, m in enumerate(members) if k >> i & 1) & 1:
                return False
        return True
    return L.reachable_meets(S) & ~S == 0


def escapes_by_join(L: FiniteLattice, S: int, paranoid: bool = False) -> bool:
    """Whether some ``X`` disjoint from ``S`` has ``join(X)`` in ``S``.

    This is the failure condition for complete primality (``X`` empty counts).
    """
    outside = L.full & ~S
    if paranoid:
        members = list(bits(outside))
        _check_cap(len(members))
        for k in range(1 << len(members)):
            if S >> L.join_all(m for i, m in enumerate(members) if k >> i & 1) & 1:
                return True
        return False
    return L.reachable_joins(outside) & S != 0


def classify_filter(L: FiniteLattice, S, paranoid: bool = False) -> FilterRecord:
    """Classify an arbitrary subset of ``L`` against the filter definitions.

    ``is_complete`` is the closure property under all existing meets and is
    evaluated for any set, not only filters. ``paranoid`` switches both
    completeness checks to literal enumeration of subsets.
    """
    S = as_mask(S)
    is_filter = S != 0 and L.poset.is_upset(S) and _is_meet_closed(L, S)
    is_proper = not S >> L.bottom & 1
    is_prime = is_filter and is_proper and _is_join_prime_set(L, S)
    if is_filter and not paranoid:
        is_complete = bool(S >> L.meet_mask(S) & 1)
    else:
        is_complete = is_meet_complete_set(L, S, paranoid)
    is_cp = is_filter and not escapes_by_join(L, S, paranoid)
    generator = None
    is_principal = False
    if is_filter:
        g = L.meet_mask(S)
        if L.up[g] == S:
            is_principal, generator = True, g
    is_ultra = False
    if is_filter and is_proper:
        g = L.meet_mask(S)
        is_ultra = all(L.meet(g, a) == L.bottom for a in range(L.n) if not S >> a & 1)
    return FilterRecord(S, is_filter, is_proper, is_prime, is_complete, is_cp,
                        is_principal, is_ultra, generator)


def classify_ideal(L: FiniteLattice, S, paranoid: bool = False) -> IdealRecord:
    """Classify ``S`` as an ideal of ``L``, i.e. as a filter of the order dual."""
    r = classify_filter(dual(L), S, paranoid)
    return IdealRecord(r.carrier, r.is_filter, r.is_proper, r.is_prime, r.is_complete,
                       r.is_completely_prime, r.is_principal, r.is_ultrafilter, r.generator)


def principal_filter(L: FiniteLattice, a: int) -> FilterRecord:
    return classify_filter(L, L.up[a])


def principal_ideal(L: FiniteLattice, a: int) -> IdealRecord:
    return classify_ideal(L, L.down[a])


def enumerate_upsets(L: FiniteLattice) -> list[int]:
    """All nonempty upward-closed sets, generated from their antichains of minimal elements."""
    n = L.n
    comparable = [L.up[i] | L.down[i] for i in range(n)]
    out = []

    def walk(i, upset, blocked):
        if i == n:
            if upset:
                out.append(upset)
            return
        walk(i + 1, upset, blocked)
        if not blocked >> i & 1:
            walk(i + 1, upset | L.up[i], blocked | comparable[i])

    walk(0, 0, 0)
    return sorted(out)


UPSET_ROUTE_MAX = 16


def enumerate_filters(L: FiniteLattice) -> list[FilterRecord]:
    """All filters (improper one included), ordered by generator.

    Small lattices go through upset enumeration; larger ones use principal
    filters directly, which is exhaustive because every filter of a finite
    lattice is principal.
    """
    if L.n <= UPSET_ROUTE_MAX:
        candidates = enumerate_upsets(L)
    else:
        candidates = sorted(set(L.up))
    records = [classify_filter(L, S) for S in candidates]
    records = [r for r in records if r.is_filter]
    return sorted(records, key=lambda r: r.generator)


def enumerate_prime_filters(L: FiniteLattice) -> list[FilterRecord]:
    return [r for r in enumerate_filters(L) if r.is_prime]


def complement_ideal(L: FiniteLattice, F: FilterRecord) -> IdealRecord:
    """``L`` minus a prime filter, classified as an ideal."""
    if not F.is_prime:
        raise NotPrime(message="complement_ideal needs a prime filter")
    return classify_ideal(L, L.full & ~F.carrier)


def undistinguished_pair(L: FiniteLattice, K: Iterable) -> tuple[int, int] | None:
    """First pair ``a < b`` (by index) that no member of ``K`` separates."""
    masks = [as_mask(k) for k in K]
    seen = {}
    for a in range(L.n):
        sig = sum(1 << i for i, m in enumerate(masks) if m >> a & 1)
        if sig in seen:
            return (seen[sig], a)
        seen[sig] = a
    return None


def is_distinguishing(L: FiniteLattice, K: Iterable) -> bool:
    return undistinguished_pair(L, K) is None


@dataclass(frozen=True)
class UltrafilterReport:
    prime_equals_ultra: bool
    rows: tuple[FilterRecord, ...]

    @property
    def equivalent(self) -> bool:
        """Principal, complete and completely prime agree on every ultrafilter."""
        return all(r.is_principal == r.is_complete == r.is_completely_prime for r in self.rows)


def ultrafilter_equivalences(L: FiniteLattice) -> UltrafilterReport:
    if not (is_complemented(L) and is_distributive(L)):
        raise NotBoolean("ultrafilter_equivalences needs a Boolean algebra")
    filters = enumerate_filters(L)
    primes = {r.carrier for r in filters if r.is_prime}
    ultras = [r for r in filters if r.is_ultrafilter]
    return UltrafilterReport(primes == {r.carrier for r in ultras}, tuple(ultras))


def product_filter(factors: Sequence[FiniteLattice], product: FiniteLattice,
                   coordinate: int, carrier: int) -> int:
    """The product set with ``carrier`` at ``coordinate`` and whole factors elsewhere.

    ``product`` must be ``direct_product(factors)``.
    """
    sizes = [F.n for F in factors]
    return mask_of(i for i in range(product.n)
                   if carrier >> product_coordinates(sizes, i)[coordinate] & 1)


def filter_table(L: FiniteLattice, records: Sequence[FilterRecord]) -> list[dict]:
    """Rows for report rendering."""
    return [{"members": [L.label(a) for a in r.members()],
             "generator": None if r.generator is None else L.label(r.generator),
             **{k.removeprefix("is_"): v for k, v in r.flags().items()}}
            for r in records]
