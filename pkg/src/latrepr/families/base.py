"""Oracle interface for countable lattices and the bounded claim prober.

Completeness-type properties of filters quantify over arbitrary subsets, so
on an infinite lattice they can only be probed, never decided. Each family
supplies a generator of candidate subsets, finite ones and parameterised
infinite ones, together with the infimum or supremum of each candidate
(or the fact that none exists). Infinite candidates come with a finite
prefix, and their bound is cross-checked against a finite window of
elements before it is trusted. A claim that survives ``budget`` candidates
is reported as verified *at that budget*; nothing more is asserted.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator

from ..core import FiniteLattice, FinitePoset, lattice_from_poset
from ..errors import BudgetExhausted, LatticeError

DEFAULT_BUDGET = 1000
FLAGS = ("prime", "complete", "completely_prime")


@dataclass(frozen=True)
class FilterDescriptor:
    name: str
    membership: Callable[[Any], bool] = field(compare=False)
    parameters: dict = field(compare=False)
    claimed: dict
    note: str = ""

    def __contains__(self, e) -> bool:
        return self.membership(e)


@dataclass(frozen=True)
class Candidate:
    """A subset offered to the prober.

    ``elements`` is the whole set when ``infinite`` is false and a finite
    prefix otherwise. ``bound`` is the set's infimum (completeness probes) or
    supremum (complete-primality probes) when ``exists``; ``refine`` maps a
    bound of the prefix to a strictly better bound, used to confirm that no
    extremal bound exists.
    """
    kind: str
    description: str
    elements: tuple
    bound: Any = None
    exists: bool = True
    infinite: bool = False
    refine: Callable[[Any], Any] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ProbeVerdict:
    flag: str
    claimed: bool
    status: str  # "verified" or "refuted"
    budget: int
    instances: int
    witness: Candidate | tuple | None = None

    @property
    def verified(self) -> bool:
        return self.status == "verified"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"

    @property
    def matches(self) -> bool:
        return self.verified == self.claimed


class OracleLattice:
    """An effectively presented countable bounded lattice.

    Subclasses define the element codec, ``leq``, ``meet``, ``join``,
    the bounds, a finite ``window`` of sample elements, truncations and the
    filter catalog with its candidate generators.
    """
    family_id: str = ""
    description: str = ""
    bottom: Any
    top: Any
    prefix_length = 64

    # -- interface --------------------------------------------------------
    def encode(self, e) -> str:
        raise NotImplementedError

    def decode(self, s: str):
        raise NotImplementedError

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def meet(self, a, b):
        raise NotImplementedError

    def join(self, a, b):
        raise NotImplementedError

    def window(self) -> list:
        raise NotImplementedError

    def truncation_elements(self, depth: int) -> list:
        raise NotImplementedError

    def catalog(self) -> list[FilterDescriptor]:
        raise NotImplementedError

    def complete_candidates(self, d: FilterDescriptor) -> Iterator[Candidate]:
        """Subsets of ``d`` with their infima."""
        raise NotImplementedError

    def completely_prime_candidates(self, d: FilterDescriptor) -> Iterator[Candidate]:
        """Subsets of the complement of ``d`` with their suprema."""
        raise NotImplementedError

    # -- derived ----------------------------------------------------------
    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def meet_all(self, elements):
        out = self.top
        for e in elements:
            out = self.meet(out, e)
        return out

    def join_all(self, elements):
        out = self.bottom
        for e in elements:
            out = self.join(out, e)
        return out

    def descriptor(self, name: str) -> FilterDescriptor:
        for d in self.catalog():
            if d.name == name:
                return d
        raise KeyError(name)

    def truncate(self, depth: int) -> FiniteLattice:
        """Finite restriction, bounded by its own extrema, labelled by the codec."""
        if depth < 1:
            raise ValueError("depth must be positive")
        elems = self.truncation_elements(depth)
        up = tuple(sum(1 << j for j, b in enumerate(elems) if self.leq(a, b)) for a in elems)
        return lattice_from_poset(FinitePoset(up, tuple(self.encode(e) for e in elems)))

    def finite_subsets(self, pool, max_size: int = 3) -> Iterator[Candidate]:
        for k in range(1, max_size + 1):
            for combo in itertools.combinations(pool, k):
                yield Candidate("finite", "finite subset", tuple(combo))


def _lower(F: OracleLattice, z, elements) -> bool:
    return all(F.leq(z, p) for p in elements)


def _upper(F: OracleLattice, z, elements) -> bool:
    return all(F.leq(p, z) for p in elements)


def confirm_bound(F: OracleLattice, c: Candidate, side: str) -> bool:
    """Check a candidate's claimed infimum (``side='inf'``) or supremum against the window.

    When the bound exists it must bound the prefix and dominate every window
    element that also bounds it. When it does not, every such window element
    must be strictly improvable by ``refine``.
    """
    is_bound = (lambda z: _lower(F, z, c.elements)) if side == "inf" else \
        (lambda z: _upper(F, z, c.elements))
    better = F.lt if side == "inf" else (lambda a, b: F.lt(b, a))
    within = F.leq if side == "inf" else (lambda a, b: F.leq(b, a))
    bounds = [z for z in F.window() if is_bound(z)]
    if c.exists:
        return is_bound(c.bound) and all(within(z, c.bound) for z in bounds)
    if c.refine is None:
        return False
    for z in bounds:
        r = c.refine(z)
        if r is None or not is_bound(r) or not better(z, r):
            return False
    return True


def _finite_bound(F: OracleLattice, c: Candidate, side: str):
    return F.meet_all(c.elements) if side == "inf" else F.join_all(c.elements)


def _probe(F, d, budget, candidates, side, inside) -> ProbeVerdict:
    flag = "complete" if side == "inf" else "completely_prime"
    claimed = d.claimed.get(flag, True)
    count = 0
    for c in itertools.islice(candidates, budget):
        count += 1
        if not all(inside(e) for e in c.elements):
            raise LatticeError(f"{F.family_id}/{d.name}: candidate '{c.description}' leaves its region")
        if not c.infinite:
            c = Candidate(c.kind, c.description, c.elements, _finite_bound(F, c, side))
        elif not confirm_bound(F, c, side):
            raise LatticeError(f"{F.family_id}/{d.name}: bound of '{c.description}' not confirmed")
        if not c.exists:
            continue
        escaped = not d.membership(c.bound) if side == "inf" else d.membership(c.bound)
        if escaped:
            return ProbeVerdict(flag, claimed, "refuted", budget, count, c)
    return ProbeVerdict(flag, claimed, "verified", budget, count)


def probe_complete(F: OracleLattice, d: FilterDescriptor, budget: int = DEFAULT_BUDGET) -> ProbeVerdict:
    """Search for a subset of ``d`` whose infimum exists and lies outside ``d``."""
    return _probe(F, d, budget, F.complete_candidates(d), "inf", d.membership)


def probe_completely_prime(F: OracleLattice, d: FilterDescriptor,
                           budget: int = DEFAULT_BUDGET) -> ProbeVerdict:
    """Search for a subset disjoint from ``d`` whose supremum exists and lies in ``d``."""
    return _probe(F, d, budget, F.completely_prime_candidates(d), "sup",
                  lambda e: not d.membership(e))


def probe_prime(F: OracleLattice, d: FilterDescriptor, budget: int = DEFAULT_BUDGET) -> ProbeVerdict:
    """Check filter and primality axioms on window elements and pairs."""
    claimed = d.claimed.get("prime", True)
    if d.membership(F.bottom):
        return ProbeVerdict("prime", claimed, "refuted", budget, 1, (F.bottom,))
    if not d.membership(F.top):
        return ProbeVerdict("prime", claimed, "refuted", budget, 1, (F.top,))
    count = 1
    win = F.window()
    for a, b in itertools.islice(itertools.combinations_with_replacement(win, 2), budget - 1):
        count += 1
        ia, ib = d.membership(a), d.membership(b)
        bad = ((ia and F.leq(a, b) and not ib) or (ib and F.leq(b, a) and not ia)
               or (ia and ib and not d.membership(F.meet(a, b)))
               or (d.membership(F.join(a, b)) and not (ia or ib)))
        if bad:
            return ProbeVerdict("prime", claimed, "refuted", budget, count, (a, b))
    return ProbeVerdict("prime", claimed, "verified", budget, count)


def check_descriptor(F: OracleLattice, d: FilterDescriptor, budget: int = DEFAULT_BUDGET,
                     strict: bool = True) -> dict[str, ProbeVerdict]:
    """Probe every claimed flag of ``d``.

    With ``strict``, a flag claimed false that survives the whole budget
    raises :class:`BudgetExhausted` (the catalog and the lattice disagree).
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    out = {
        "prime": probe_prime(F, d, budget),
        "complete": probe_complete(F, d, budget),
        "completely_prime": probe_completely_prime(F, d, budget),
    }
    out = {k: v for k, v in out.items() if k in d.claimed}
    if strict:
        missing = [k for k, v in out.items() if not v.claimed and v.verified]
        if missing:
            err = BudgetExhausted(f"{F.family_id}/{d.name}: no witness within budget {budget} "
                                  f"for claims {missing}")
            err.verdicts = out
            raise err
    return out


def witness_to_dict(F: OracleLattice, w) -> dict | list | None:
    if w is None:
        return None
    if isinstance(w, Candidate):
        return {
            "kind": w.kind,
            "description": w.description,
            "elements": [F.encode(e) for e in w.elements],
            "bound": F.encode(w.bound) if w.exists else None,
            "infinite": w.infinite,
        }
    return [F.encode(e) for e in w]


def verdict_to_dict(F: OracleLattice, v: ProbeVerdict) -> dict:
    return {"flag": v.flag, "claimed": v.claimed, "status": v.status, "budget": v.budget,
            "instances": v.instances, "matches": v.matches,
            "witness": witness_to_dict(F, v.witness)}
