"""Set representations of finite distributive lattices.

A :class:`Representation` sends each lattice element to a subset of a base
set, stored as a bitmask over base-point indices. Bases built here are lists
of prime filters, and ``assign(a)`` is the set of base filters containing
``a``.
"""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .core import FiniteLattice, bits, distributivity_witness, dual, lattice_from_dict, lattice_to_dict
from .errors import NotDistinguishing, NotPrime, NotRepresentable, ParseError
from .filters import (
    FilterRecord,
    as_mask,
    classify_filter,
    enumerate_prime_filters,
    is_distinguishing,
    undistinguished_pair,
)

SUBSET_CAP = 20
SAMPLE_SIZE = 4096


def subset_cap() -> int:
    return int(os.environ.get("LATREPR_CAP", SUBSET_CAP))


@dataclass(frozen=True)
class Representation:
    source: FiniteLattice
    assign: tuple[int, ...]
    base: tuple[int, ...]  # carrier bitmasks of the points, as sets of source elements
    base_labels: tuple[str, ...] | None = None

    @property
    def size(self) -> int:
        return len(self.base)

    @property
    def full(self) -> int:
        return (1 << len(self.base)) - 1

    def image(self, a: int) -> frozenset[int]:
        return frozenset(bits(self.assign[a]))

    def label(self, x: int) -> str:
        return self.base_labels[x] if self.base_labels else f"p{x}"

    def violations(self) -> list[str]:
        """Failed representation invariants, empty when all hold."""
        L, h = self.source, self.assign
        out = []
        if len(set(h)) != L.n:
            out.append("assign is not injective")
        for a in range(L.n):
            for b in range(a + 1, L.n):
                if h[L.meet(a, b)] != h[a] & h[b]:
                    out.append(f"meet not preserved at ({a},{b})")
                if h[L.join(a, b)] != h[a] | h[b]:
                    out.append(f"join not preserved at ({a},{b})")
        covered = 0
        for m in h:
            covered |= m
        if covered != self.full:
            out.append("redundant base point")
        if h[L.bottom] != 0 or h[L.top] != self.full:
            out.append("bounds not preserved")
        return out

    def is_valid(self) -> bool:
        return not self.violations()


class Verdict(NamedTuple):
    ok: bool
    witness: tuple[int, ...] | None
    mode: str
    checked: int

    def __bool__(self):
        return self.ok


def represent_from(L: FiniteLattice, K: Sequence) -> Representation:
    """``h_K(a) = {f in K : a in f}`` for a distinguishing list of prime filters."""
    masks = []
    for i, f in enumerate(K):
        rec = f if isinstance(f, FilterRecord) else classify_filter(L, as_mask(f))
        if not rec.is_prime:
            raise NotPrime(i)
        masks.append(rec.carrier)
    pair = undistinguished_pair(L, masks)
    if pair is not None:
        raise NotDistinguishing(pair)
    assign = tuple(sum(1 << k for k, F in enumerate(masks) if F >> a & 1) for a in range(L.n))
    labels = tuple("^" + L.label(L.meet_mask(F)) for F in masks)
    return Representation(L, assign, tuple(masks), labels)


def represent(L: FiniteLattice) -> Representation:
    w = distributivity_witness(L)
    if w is not None:
        raise NotRepresentable(w)
    return represent_from(L, enumerate_prime_filters(L))


def _subsets(n: int, cap: int, seed: int):
    if n <= cap:
        return "exhaustive", range(1 << n)
    rng = random.Random(seed)
    return "sampled", (rng.getrandbits(n) for _ in range(SAMPLE_SIZE))


def _verify(h: Representation, table, unit, combine, full_unit, cap, seed) -> Verdict:
    L = h.source
    cap = subset_cap() if cap is None else cap
    mode, masks = _subsets(L.n, cap, seed)
    checked = 0
    if mode == "exhaustive":
        # incremental: value[mask] from value[mask without its lowest bit]
        size = 1 << L.n
        op = [unit] * size
        img = [full_unit] * size
        if h.assign[unit] != full_unit:
            return Verdict(False, (), mode, 1)
        for mask in range(1, size):
            low = mask & -mask
            e = low.bit_length() - 1
            op[mask] = table[op[mask ^ low]][e]
            img[mask] = combine(img[mask ^ low], h.assign[e])
            checked += 1
            if h.assign[op[mask]] != img[mask]:
                return Verdict(False, tuple(bits(mask)), mode, checked)
        return Verdict(True, None, mode, checked + 1)
    for mask in masks:
        acc, im = unit, full_unit
        for e in bits(mask):
            acc = table[acc][e]
            im = combine(im, h.assign[e])
        checked += 1
        if h.assign[acc] != im:
            return Verdict(False, tuple(bits(mask)), mode, checked)
    return Verdict(True, None, mode, checked)


def verify_meet_complete(h: Representation, cap: int | None = None, seed: int = 0) -> Verdict:
    """``assign(meet S) == intersection of assign[S]`` for every subset ``S``.

    Exhaustive up to ``cap`` elements, random subsets beyond. On failure the
    witness is the offending subset.
    """
    return _verify(h, h.source.meet_table, h.source.top, int.__and__, h.full, cap, seed)


def verify_join_complete(h: Representation, cap: int | None = None, seed: int = 0) -> Verdict:
    return _verify(h, h.source.join_table, h.source.bottom, int.__or__, 0, cap, seed)


def dual_representation(h: Representation) -> Representation:
    """``a -> X \\ assign(a)``, a representation of the order dual on the same base."""
    full = h.full
    return Representation(dual(h.source), tuple(full & ~m for m in h.assign), h.base, h.base_labels)


def inverse_image_filter(h: Representation, x: int) -> FilterRecord:
    """``{a : x in assign(a)}`` classified as a filter of the source."""
    carrier = sum(1 << a for a in range(h.source.n) if h.assign[a] >> x & 1)
    rec = classify_filter(h.source, carrier)
    assert rec.is_prime, "inverse image of a point of a representation must be prime"
    return rec


def hierarchy(L: FiniteLattice) -> dict[str, bool]:
    """Membership in DL, mCRL, jCRL, biCRL and CRL decided from filter flags.

    Uses the characterisations by distinguishing sets of complete prime,
    completely prime, and complete completely prime filters.
    """
    if distributivity_witness(L) is not None:
        return dict.fromkeys(("DL", "mCRL", "jCRL", "biCRL", "CRL"), False)
    primes = enumerate_prime_filters(L)
    m = is_distinguishing(L, [f for f in primes if f.is_complete])
    j = is_distinguishing(L, [f for f in primes if f.is_completely_prime])
    c = is_distinguishing(L, [f for f in primes if f.is_complete and f.is_completely_prime])
    return {"DL": True, "mCRL": m, "jCRL": j, "biCRL": m and j, "CRL": c}


# -- serialization ----------------------------------------------------------

def representation_to_dict(h: Representation, verdicts: bool = True) -> dict:
    d = {
        "lattice": lattice_to_dict(h.source),
        "base": [h.label(x) for x in range(h.size)],
        "base_filters": [list(bits(F)) for F in h.base],
        "images": [int(m) for m in h.assign],
    }
    if verdicts:
        d["verification"] = verification_summary(h)
    return d


def verification_summary(h: Representation) -> dict:
    m = verify_meet_complete(h)
    j = verify_join_complete(h)
    return {
        "invariants": h.violations() or "ok",
        "meet_complete": {"ok": m.ok, "mode": m.mode, "checked": m.checked,
                          "witness": None if m.witness is None else list(m.witness)},
        "join_complete": {"ok": j.ok, "mode": j.mode, "checked": j.checked,
                          "witness": None if j.witness is None else list(j.witness)},
    }


def representation_from_dict(d) -> Representation:
    try:
        L = lattice_from_dict(d["lattice"])
        base = tuple(sum(1 << a for a in F) for F in d["base_filters"])
        assign = tuple(int(m) for m in d["images"])
        labels = tuple(d["base"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed representation: {exc}") from None
    if len(assign) != L.n or len(labels) != len(base):
        raise ParseError("representation sizes do not match its lattice")
    return Representation(L, assign, base, labels)


def dumps(h: Representation) -> str:
    return json.dumps(representation_to_dict(h), indent=2, sort_keys=True)
