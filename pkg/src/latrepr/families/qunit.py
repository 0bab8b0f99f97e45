"""The chain of rationals in [0, 1] and its cut filters."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import LatticeError
from .base import Candidate, FilterDescriptor, OracleLattice

WINDOW_DENOMINATOR = 8


def farey(max_den: int) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(q + 1)})


@dataclass(frozen=True)
class QuadraticSurd:
    """The irrational ``a + b*sqrt(d)``, compared exactly against rationals."""
    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if self.d <= 0 or math.isqrt(self.d) ** 2 == self.d or self.b == 0:
            raise LatticeError("a + b*sqrt(d) needs b != 0 and a positive non-square d")

    def below(self, q: Fraction) -> bool:
        """Whether the surd is strictly less than ``q``."""
        c = (Fraction(q) - self.a) / self.b
        # b*sqrt(d) < q - a, divided by b (sign flips when b < 0)
        if self.b > 0:
            return c > 0 and self.d < c * c
        return c < 0 or self.d > c * c

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __str__(self):
        return f"{self.a}+{self.b}*sqrt({self.d})"

    @lru_cache(maxsize=None)
    def brackets(self, steps: int = 256) -> tuple[tuple[Fraction, Fraction], ...]:
        """Nested rational intervals ``(lo, hi)`` around the surd, by bisection in [0, 1]."""
        lo, hi = Fraction(0), Fraction(1)
        if not (self.below(hi) and not self.below(lo)):
            raise LatticeError(f"{self} is not inside (0, 1)")
        out = []
        for _ in range(steps):
            mid = (lo + hi) / 2
            if self.below(mid):
                hi = mid
            else:
                lo = mid
            out.append((lo, hi))
        return tuple(out)

    def upper_approximants(self, count: int) -> tuple[Fraction, ...]:
        seq = sorted({hi for _, hi in self.brackets()}, reverse=True)
        return tuple(seq[:count])

    def lower_approximants(self, count: int) -> tuple[Fraction, ...]:
        seq = sorted({lo for lo, _ in self.brackets()})
        seq = [q for q in seq if q > 0] or seq
        return tuple(seq[:count])


SURDS = {
    "sqrt2/2": QuadraticSurd(Fraction(0), Fraction(1, 2), 2),
    "sqrt3-1": QuadraticSurd(Fraction(-1), Fraction(1), 3),
    "golden-1": QuadraticSurd(Fraction(-1, 2), Fraction(1, 2), 5),
}


class UnitIntervalRationals(OracleLattice):
    family_id = "qunit"
    description = "rationals in [0,1] under the usual order"
    bottom = Fraction(0)
    top = Fraction(1)

    def encode(self, e) -> str:
        return str(e)

    def decode(self, s: str):
        q = Fraction(s)
        if not 0 <= q <= 1:
            raise ValueError(f"{s} is outside [0,1]")
        return q

    def leq(self, a, b) -> bool:
        return a <= b

    def meet(self, a, b):
        return min(a, b)

    def join(self, a, b):
        return max(a, b)

    def window(self) -> list:
        return farey(WINDOW_DENOMINATOR)

    def truncation_elements(self, depth: int) -> list:
        return farey(depth)

    def catalog(self) -> list[FilterDescriptor]:
        out = []
        for x in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(1)):
            out.append(FilterDescriptor(
                f"closed[{x},1]", (lambda q, x=x: q >= x), {"inf": x, "closed": True},
                {"prime": True, "complete": True, "completely_prime": False},
                "principal filter; its generator is the join of everything below it"))
        for x in (Fraction(0), Fraction(1, 3), Fraction(1, 2)):
            out.append(FilterDescriptor(
                f"open({x},1]", (lambda q, x=x: q > x), {"inf": x, "closed": False},
                {"prime": True, "complete": False, "completely_prime": True},
                "half-open filter; its infimum exists and is excluded"))
        for name, r in SURDS.items():
            out.append(FilterDescriptor(
                f"cut>{name}", (lambda q, r=r: r.below(q)), {"inf": r, "closed": False},
                {"prime": True, "complete": True, "completely_prime": True},
                "cut at an irrational; neither its infimum nor its complement's supremum exists"))
        return out

    # -- candidates -------------------------------------------------------
    def descending_to(self, limit) -> Candidate | None:
        n = self.prefix_length
        if isinstance(limit, QuadraticSurd):
            prefix = limit.upper_approximants(n)

            def refine(z, r=limit):
                return next((lo for lo, _ in r.brackets() if lo > z), None)

            return Candidate("descending", f"decreasing to {limit}", prefix, None,
                             exists=False, infinite=True, refine=refine)
        if limit >= 1:
            return None
        prefix = tuple(limit + (1 - limit) / (k + 1) for k in range(1, n + 1))
        return Candidate("descending", f"decreasing to {limit}", prefix, limit, infinite=True)

    def ascending_to(self, limit) -> Candidate | None:
        n = self.prefix_length
        if isinstance(limit, QuadraticSurd):
            prefix = limit.lower_approximants(n)

            def refine(z, r=limit):
                return next((hi for _, hi in r.brackets() if hi < z), None)

            return Candidate("ascending", f"increasing to {limit}", prefix, None,
                             exists=False, infinite=True, refine=refine)
        if limit <= 0:
            return None
        prefix = tuple(limit * k / (k + 1) for k in range(1, n + 1))
        return Candidate("ascending", f"everything below {limit}, truncated", prefix, limit,
                         infinite=True)

    def complete_candidates(self, d):
        inside = [q for q in self.window() if d.membership(q)]
        first = self.descending_to(d.parameters["inf"])
        if first is not None:
            yield first
        for q in inside:
            c = self.descending_to(q)
            if c is not None:
                yield c
        yield from self.finite_subsets(inside)

    def completely_prime_candidates(self, d):
        outside = [q for q in self.window() if not d.membership(q)]
        first = self.ascending_to(d.parameters["inf"])
        if first is not None and all(not d.membership(e) for e in first.elements):
            yield first
        for q in outside:
            c = self.ascending_to(q)
            if c is not None:
                yield c
        yield from self.finite_subsets(outside)


def unit_interval_rationals() -> UnitIntervalRationals:
    return UnitIntervalRationals()
