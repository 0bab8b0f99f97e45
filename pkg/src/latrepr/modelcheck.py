"""Finite model checking for the two-sorted theory of meet-complete representability.

A structure pairs a finite lattice (the L sort) with an indexed family of
subsets of its carrier (the S sort); membership between the sorts is read
off the family. The predicates ``P`` (prime filter), ``I`` (infimum) and
``C`` (completeness relative to the S sort) and the three extra axioms are
evaluated by their defining formulas, quantifying over the S sort as given.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .core import FiniteLattice, bits, distributivity_witness, lattice_from_dict, lattice_to_dict
from .errors import CarrierTooLarge, ParseError

CANONICAL_CAP = 16


@dataclass(frozen=True)
class TwoSortedStructure:
    lsort: FiniteLattice
    ssort: tuple[int, ...]
    _extensions: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_extensions", frozenset(self.ssort))

    @classmethod
    def from_membership(cls, L: FiniteLattice, count: int, pairs) -> "TwoSortedStructure":
        """Build from an explicit relation of ``(element, s-index)`` pairs."""
        ssort = [0] * count
        for x, s in pairs:
            ssort[s] |= 1 << x
        return cls(L, tuple(ssort))

    def member(self, x: int, s: int) -> bool:
        return bool(self.ssort[s] >> x & 1)

    def membership(self) -> set[tuple[int, int]]:
        return {(x, s) for s, ext in enumerate(self.ssort) for x in bits(ext)}

    def has_extension(self, mask: int) -> bool:
        return mask in self._extensions

    def subsorts_of(self, mask: int):
        """Distinct S-sort extensions contained in ``mask``."""
        if 1 << bin(mask).count("1") < len(self._extensions):
            sub = mask
            while True:
                if sub in self._extensions:
                    yield sub
                if sub == 0:
                    break
                sub = (sub - 1) & mask
        else:
            for ext in self._extensions:
                if ext & ~mask == 0:
                    yield ext


# -- predicates -------------------------------------------------------------

def _P(L: FiniteLattice, s: int) -> bool:
    n = L.n
    for x in bits(s):
        if L.up[x] & ~s:
            return False
    for x, y in itertools.combinations_with_replacement(bits(s), 2):
        if not s >> L.meet(x, y) & 1:
            return False
    for x in range(n):
        for y in range(x, n):
            if s >> L.join(x, y) & 1 and not (s >> x & 1 or s >> y & 1):
                return False
    return True


def _I(L: FiniteLattice, x: int, s: int) -> bool:
    lower = L.full
    for y in bits(s):
        lower &= L.down[y]
    return bool(lower >> x & 1) and lower & ~L.down[x] == 0


def eval_P(M: TwoSortedStructure, s: int) -> bool:
    """Upward closed, closed under meets, and join-prime; vacuously true on the empty set."""
    return _P(M.lsort, M.ssort[s])


def eval_I(M: TwoSortedStructure, x: int, s: int) -> bool:
    """``x`` is a lower bound of S-member ``s`` and dominates every lower bound."""
    return _I(M.lsort, x, M.ssort[s])


def _C(M: TwoSortedStructure, s: int) -> bool:
    L = M.lsort
    for t in M.subsorts_of(s):
        for x in range(L.n):
            if _I(L, x, t) and not s >> x & 1:
                return False
    return True


def eval_C(M: TwoSortedStructure, s: int) -> bool:
    """Every infimum of an S-member contained in ``s`` belongs to ``s``."""
    return _C(M, M.ssort[s])


# -- theory check -----------------------------------------------------------

@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    ok: bool
    witness: tuple | None = None
    detail: str = ""


@dataclass(frozen=True)
class TheoryReport:
    verdicts: tuple[AxiomVerdict, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def failed(self) -> list[str]:
        return [v.axiom for v in self.verdicts if not v.ok]

    def __getitem__(self, axiom: str) -> AxiomVerdict:
        return next(v for v in self.verdicts if v.axiom == axiom)

    def to_dict(self) -> dict:
        return {v.axiom: {"ok": v.ok, "witness": None if v.witness is None else list(v.witness),
                          "detail": v.detail} for v in self.verdicts}


def _lattice_axioms(L: FiniteLattice) -> AxiomVerdict:
    M, J, n = L.meet_table, L.join_table, L.n
    for a in range(n):
        if M[a][L.bottom] != L.bottom or J[a][L.top] != L.top:
            return AxiomVerdict("T", False, (a,), "bounds")
        for b in range(n):
            if M[a][b] != M[b][a] or J[a][b] != J[b][a]:
                return AxiomVerdict("T", False, (a, b), "commutativity")
            if M[a][J[a][b]] != a or J[a][M[a][b]] != a:
                return AxiomVerdict("T", False, (a, b), "absorption")
            for c in range(n):
                if M[a][M[b][c]] != M[M[a][b]][c] or J[a][J[b][c]] != J[J[a][b]][c]:
                    return AxiomVerdict("T", False, (a, b, c), "associativity")
    w = distributivity_witness(L)
    if w is not None:
        return AxiomVerdict("T", False, w, "distributivity")
    return AxiomVerdict("T", True)


def _axiom_I(M: TwoSortedStructure) -> AxiomVerdict:
    L = M.lsort
    good = [ext for ext in sorted(M._extensions) if _P(L, ext) and _C(M, ext)]
    seen = {}
    for x in range(L.n):
        sig = sum(1 << k for k, ext in enumerate(good) if ext >> x & 1)
        if sig in seen:
            return AxiomVerdict("I", False, (seen[sig], x), "pair not separated by any P and C member")
        seen[sig] = x
    return AxiomVerdict("I", True)


def strict_upset(L: FiniteLattice, x: int) -> int:
    return L.up[x] & ~(1 << x)


def _axiom_II(M: TwoSortedStructure) -> AxiomVerdict:
    for x in range(M.lsort.n):
        if not M.has_extension(strict_upset(M.lsort, x)):
            return AxiomVerdict("II", False, (x,), "no member equals {y : y > x}")
    return AxiomVerdict("II", True)


def _axiom_III(M: TwoSortedStructure) -> AxiomVerdict:
    exts = M._extensions
    if len(exts) == 1 << M.lsort.n:
        return AxiomVerdict("III", True, detail="S sort is the full powerset")
    index = {}
    for k, ext in enumerate(M.ssort):
        index.setdefault(ext, k)
    ordered = sorted(exts)
    for i, s in enumerate(ordered):
        for t in ordered[i + 1:]:
            if s & t not in exts:
                return AxiomVerdict("III", False, (index[s], index[t]), "intersection missing")
    return AxiomVerdict("III", True)


def check_theory(M: TwoSortedStructure) -> TheoryReport:
    return TheoryReport((_lattice_axioms(M.lsort), _axiom_I(M), _axiom_II(M), _axiom_III(M)))


def separating_members(M: TwoSortedStructure) -> list[int]:
    """Extensions satisfying both ``P`` and ``C``; axiom I asks these to distinguish."""
    return [ext for ext in sorted(M._extensions) if _P(M.lsort, ext) and _C(M, ext)]


# -- constructions ----------------------------------------------------------

def canonical_model(L: FiniteLattice) -> TwoSortedStructure:
    """The lattice with the full powerset of its carrier as S sort."""
    if L.n > CANONICAL_CAP:
        raise CarrierTooLarge(f"powerset of {L.n} elements exceeds cap {CANONICAL_CAP}")
    return TwoSortedStructure(L, tuple(range(1 << L.n)))


def intersection_closure(masks) -> list[int]:
    family = set(masks)
    frontier = list(family)
    while frontier:
        new = []
        for a in frontier:
            for b in list(family):
                c = a & b
                if c not in family:
                    family.add(c)
                    new.append(c)
        frontier = new
    return sorted(family)


def generated_model(L: FiniteLattice, members) -> TwoSortedStructure:
    """Smallest S sort containing ``members``, the whole carrier and every
    ``{y : y > x}``, closed under intersection; axioms II and III hold by construction."""
    seeds = [strict_upset(L, x) for x in range(L.n)] + [L.full] + list(members)
    return TwoSortedStructure(L, tuple(intersection_closure(seeds)))


def reduct(M: TwoSortedStructure) -> FiniteLattice:
    return M.lsort


def structure_to_dict(M: TwoSortedStructure) -> dict:
    return {"lattice": lattice_to_dict(M.lsort), "ssort": [list(bits(s)) for s in M.ssort]}


def structure_from_dict(d) -> TwoSortedStructure:
    if not isinstance(d, dict) or "lattice" not in d or "ssort" not in d:
        raise ParseError("structure JSON needs keys 'lattice' and 'ssort'")
    L = lattice_from_dict(d["lattice"])
    ssort = []
    for members in d["ssort"]:
        mask = 0
        for x in members:
            if not isinstance(x, int) or not 0 <= x < L.n:
                raise ParseError(f"S-sort member references bad element {x!r}")
            mask |= 1 << x
        ssort.append(mask)
    return TwoSortedStructure(L, tuple(ssort))
