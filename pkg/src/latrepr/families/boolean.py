"""Two countable Boolean algebras.

``FiniteCofiniteBA`` holds the finite and cofinite subsets of the naturals;
it is atomic, and its non-principal ultrafilter is the only incomplete one.
``RationalIntervalBA`` holds finite unions of half-open rational intervals
in [0, 1); it has no atoms, so none of its ultrafilters is complete.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import NamedTuple

from ..errors import MalformedInterval
from .base import Candidate, FilterDescriptor, OracleLattice

# -- finite / cofinite ---------------------------------------------------------

WINDOW_POINTS = 4


class FC(NamedTuple):
    """A finite set (``cofinite=False``) or the complement of one."""
    cofinite: bool
    items: frozenset

    def __contains__(self, k) -> bool:
        return (k in self.items) != self.cofinite


def fin(*items) -> FC:
    return FC(False, frozenset(items))


def cof(*items) -> FC:
    return FC(True, frozenset(items))


class FiniteCofiniteBA(OracleLattice):
    family_id = "fincofin"
    description = "finite and cofinite subsets of the naturals"
    bottom = fin()
    top = cof()

    def encode(self, e) -> str:
        return ("cof:" if e.cofinite else "fin:") + ",".join(str(k) for k in sorted(e.items))

    def decode(self, s: str):
        tag, _, body = s.partition(":")
        if tag not in ("fin", "cof"):
            raise ValueError(f"expected 'fin:' or 'cof:' prefix: {s}")
        items = frozenset(int(t) for t in body.split(",") if t)
        if any(k < 0 for k in items):
            raise ValueError(f"negative natural in {s}")
        return FC(tag == "cof", items)

    def leq(self, a, b) -> bool:
        if not a.cofinite:
            return a.items <= b.items if not b.cofinite else not (a.items & b.items)
        return b.cofinite and b.items <= a.items

    def meet(self, a, b):
        if a.cofinite and b.cofinite:
            return FC(True, a.items | b.items)
        if a.cofinite:
            a, b = b, a
        return FC(False, a.items - b.items if b.cofinite else a.items & b.items)

    def join(self, a, b):
        if not a.cofinite and not b.cofinite:
            return FC(False, a.items | b.items)
        if not a.cofinite:
            a, b = b, a
        return FC(True, a.items - b.items if not b.cofinite else a.items & b.items)

    def complement(self, a):
        return FC(not a.cofinite, a.items)

    def window(self) -> list:
        subsets = [frozenset(c) for k in range(WINDOW_POINTS + 1)
                   for c in itertools.combinations(range(WINDOW_POINTS), k)]
        return [FC(False, s) for s in subsets] + [FC(True, s) for s in subsets]

    def truncation_elements(self, depth: int) -> list:
        return [FC(False, frozenset(c)) for k in range(depth + 1)
                for c in itertools.combinations(range(depth), k)]

    def catalog(self) -> list[FilterDescriptor]:
        out = [FilterDescriptor(f"contains-{n}", (lambda e, n=n: n in e), {"point": n},
                                {"prime": True, "complete": True, "completely_prime": True},
                                "principal ultrafilter at a point")
               for n in range(3)]
        out.append(FilterDescriptor("cofinite", lambda e: e.cofinite, {},
                                    {"prime": True, "complete": False, "completely_prime": False},
                                    "the non-principal ultrafilter of cofinite sets"))
        return out

    def _shrinking(self, keep: frozenset) -> Candidate:
        # cofinite sets losing 0..k except ``keep``; they meet down to ``keep``
        prefix = tuple(FC(True, frozenset(range(k + 1)) - keep) for k in range(self.prefix_length))
        return Candidate("descending", f"cofinite sets shrinking to {sorted(keep)}", prefix,
                         FC(False, keep), infinite=True)

    @staticmethod
    def _drop_odd(z):
        # an upper bound of the even numbers can lose one more odd number
        if not z.cofinite:
            return None
        k = next(k for k in itertools.count(1, 2) if k not in z.items)
        return FC(True, z.items | {k})

    def complete_candidates(self, d):
        point = d.parameters.get("point")
        keeps = [frozenset()] if point is None else \
            [frozenset({point})] + [frozenset({point, m}) for m in range(WINDOW_POINTS) if m != point]
        for keep in keeps:
            yield self._shrinking(keep)
        inside = [e for e in self.window() if d.membership(e)]
        yield from self.finite_subsets(inside)

    def completely_prime_candidates(self, d):
        point = d.parameters.get("point")
        n = self.prefix_length
        avoid = frozenset() if point is None else frozenset({point})
        yield Candidate("ascending", "singletons" + (f" other than {point}" if avoid else ""),
                        tuple(fin(k) for k in range(n) if k not in avoid), FC(True, avoid),
                        infinite=True)
        yield Candidate("ascending", "initial segments" + (f" without {point}" if avoid else ""),
                        tuple(FC(False, frozenset(range(k + 1)) - avoid) for k in range(n)),
                        FC(True, avoid), infinite=True)
        evens = tuple(FC(False, frozenset(range(0, 2 * k + 1, 2)) - avoid) for k in range(n))
        yield Candidate("ascending", "even numbers", evens, None, exists=False, infinite=True,
                        refine=self._drop_odd)
        outside = [e for e in self.window() if not d.membership(e)]
        yield from self.finite_subsets(outside)


# -- rational intervals --------------------------------------------------------

WINDOW_STEP = 6


def normalize(pairs) -> tuple[tuple[Fraction, Fraction], ...]:
    """Sorted, disjoint, non-adjacent form of a union of ``[a, b)`` intervals."""
    clean = []
    for a, b in pairs:
        a, b = Fraction(a), Fraction(b)
        if a > b or a < 0 or b > 1:
            raise MalformedInterval(f"[{a},{b}) is not an interval inside [0,1]")
        if a < b:
            clean.append((a, b))
    clean.sort()
    out: list[tuple[Fraction, Fraction]] = []
    for a, b in clean:
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return tuple(out)


def grid_algebra(step: int) -> list[tuple]:
    """All unions of the cells ``[i/step, (i+1)/step)``."""
    cells = [(Fraction(i, step), Fraction(i + 1, step)) for i in range(step)]
    return [normalize(c for k, c in enumerate(cells) if m >> k & 1) for m in range(1 << step)]


class RationalIntervalBA(OracleLattice):
    family_id = "ratint"
    description = "finite unions of half-open rational intervals in [0,1)"
    bottom = ()
    top = ((Fraction(0), Fraction(1)),)

    def encode(self, e) -> str:
        return "+".join(f"[{a},{b})" for a, b in e) or "empty"

    def decode(self, s: str):
        if s == "empty":
            return ()
        pairs = []
        for part in s.split("+"):
            if not (part.startswith("[") and part.endswith(")")):
                raise MalformedInterval(f"bad interval {part!r}")
            a, _, b = part[1:-1].partition(",")
            pairs.append((Fraction(a), Fraction(b)))
        return normalize(pairs)

    def meet(self, a, b):
        return normalize((max(x, u), min(y, v)) for x, y in a for u, v in b if max(x, u) < min(y, v))

    def join(self, a, b):
        return normalize(a + b)

    def leq(self, a, b) -> bool:
        return self.meet(a, b) == a

    def complement(self, a):
        edges = [Fraction(0)] + [p for iv in a for p in iv] + [Fraction(1)]
        return normalize(zip(edges[::2], edges[1::2]))

    @staticmethod
    def contains_point(e, q) -> bool:
        return any(a <= q < b for a, b in e)

    def window(self) -> list:
        return grid_algebra(WINDOW_STEP)

    def truncation_elements(self, depth: int) -> list:
        return grid_algebra(depth)

    def catalog(self) -> list[FilterDescriptor]:
        return [FilterDescriptor(f"contains-{q}", (lambda e, q=q: self.contains_point(e, q)),
                                 {"point": q},
                                 {"prime": True, "complete": False, "completely_prime": False},
                                 "ultrafilter of sets containing a point; no atom generates it")
                for q in (Fraction(0), Fraction(1, 3), Fraction(1, 2))]

    def complete_candidates(self, d):
        q = d.parameters["point"]
        prefix = tuple(normalize([(q, q + Fraction(1, k))]) for k in range(2, self.prefix_length + 2))
        yield Candidate("descending", f"intervals shrinking to {q}", prefix, (), infinite=True)
        inside = [e for e in self.window() if d.membership(e)]
        yield from self.finite_subsets(inside)

    def completely_prime_candidates(self, d):
        q = d.parameters["point"]
        left = normalize([(0, q)])
        prefix = (left,) + tuple(normalize([(min(q + Fraction(1, k), 1), 1)])
                                 for k in range(2, self.prefix_length + 2))
        yield Candidate("ascending", f"everything except intervals starting at {q}", prefix,
                        self.top, infinite=True)
        outside = [e for e in self.window() if not d.membership(e)]
        yield from self.finite_subsets(outside)


def finite_cofinite_ba() -> FiniteCofiniteBA:
    return FiniteCofiniteBA()


def rational_interval_ba() -> RationalIntervalBA:
    return RationalIntervalBA()
