"""Lattices built on the square of the non-positive integers.

``NBarSquaredWithBottom`` adds a single bottom below the grid;
``NBarSquaredOverNats`` puts a whole ascending chain of naturals below it.
Grid points are pairs of non-positive ints ordered coordinatewise.
"""
from __future__ import annotations

import itertools
from typing import NamedTuple

from .base import Candidate, FilterDescriptor, OracleLattice, ProbeVerdict

WINDOW_RADIUS = 6


def _grid(radius: int) -> list[tuple[int, int]]:
    return [(x, y) for x in range(-(radius - 1), 1) for y in range(-(radius - 1), 1)]


def _encode_pair(p) -> str:
    return f"{p[0]},{p[1]}"


def _decode_pair(s: str) -> tuple[int, int]:
    x, y = (int(t) for t in s.split(","))
    if x > 0 or y > 0:
        raise ValueError(f"grid coordinates must be non-positive: {s}")
    return (x, y)


class _Strip:
    """Filter of grid points whose ``axis`` coordinate is at least ``-n``."""

    def __init__(self, axis: int, n: int):
        self.axis, self.n = axis, n

    def __call__(self, e) -> bool:
        return isinstance(e, tuple) and len(e) == 2 and e[self.axis] >= -self.n


class NBarSquaredWithBottom(OracleLattice):
    family_id = "nbar2bot"
    description = "non-positive integer grid with one extra bottom element"
    bottom = None
    top = (0, 0)

    def encode(self, e) -> str:
        return "bot" if e is None else _encode_pair(e)

    def decode(self, s: str):
        return None if s == "bot" else _decode_pair(s)

    def leq(self, a, b) -> bool:
        if a is None:
            return True
        if b is None:
            return False
        return a[0] <= b[0] and a[1] <= b[1]

    def meet(self, a, b):
        if a is None or b is None:
            return None
        return (min(a[0], b[0]), min(a[1], b[1]))

    def join(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return (max(a[0], b[0]), max(a[1], b[1]))

    def window(self) -> list:
        return [None] + _grid(WINDOW_RADIUS)

    def truncation_elements(self, depth: int) -> list:
        return [None] + _grid(depth)

    def catalog(self) -> list[FilterDescriptor]:
        claims = {"prime": True, "complete": False, "completely_prime": True}
        out = []
        for axis, name in ((0, "x"), (1, "y")):
            for n in range(3):
                out.append(FilterDescriptor(f"{name}>=-{n}", _Strip(axis, n),
                                            {"axis": axis, "n": n}, dict(claims),
                                            "half-plane of the grid"))
        out.append(FilterDescriptor("nonzero", lambda e: e is not None, {}, dict(claims),
                                    "everything except the bottom"))
        return out

    def _chain(self, start, direction) -> Candidate:
        dx, dy = direction
        prefix = tuple((start[0] - dx * k, start[1] - dy * k) for k in range(self.prefix_length))
        return Candidate("descending", f"from {_encode_pair(start)} in direction -{direction}",
                         prefix, None, infinite=True)

    def complete_candidates(self, d):
        inside = [e for e in _grid(WINDOW_RADIUS) if d.membership(e)]
        # descending chains that stay in the filter; any unbounded coordinate
        # leaves no grid lower bound, so the infimum is the bottom
        for start in sorted(inside, key=lambda p: (-p[0] - p[1], p)):
            for direction in ((0, 1), (1, 0), (1, 1)):
                c = self._chain(start, direction)
                if all(d.membership(e) for e in c.elements):
                    yield Candidate(c.kind, c.description, c.elements, None, infinite=True)
        yield from self.finite_subsets(inside)

    def completely_prime_candidates(self, d):
        outside = [e for e in self.window() if not d.membership(e)]
        # the whole complement: its grid part is closed under joins, its
        # supremum is the largest grid point outside the filter
        if d.parameters:
            axis, n = d.parameters["axis"], d.parameters["n"]
            sup = (-n - 1, 0) if axis == 0 else (0, -n - 1)
            prefix = tuple(p for p in itertools.product(range(-n - 1 - self.prefix_length, 1), repeat=2)
                           if p[axis] <= -n - 1 and min(p) > -n - 1 - 8)
            yield Candidate("complement", "the whole complement, truncated", (None,) + prefix,
                            sup, infinite=True)
        yield Candidate("finite", "the bottom alone", (None,))
        yield from self.finite_subsets(outside)


class Nat(NamedTuple):
    k: int


class NBarSquaredOverNats(OracleLattice):
    family_id = "nbar2nat"
    description = "non-positive integer grid above an ascending chain of naturals"
    bottom = Nat(0)
    top = (0, 0)

    def encode(self, e) -> str:
        return f"n{e.k}" if isinstance(e, Nat) else _encode_pair(e)

    def decode(self, s: str):
        if s.startswith("n"):
            k = int(s[1:])
            if k < 0:
                raise ValueError(s)
            return Nat(k)
        return _decode_pair(s)

    def leq(self, a, b) -> bool:
        if isinstance(a, Nat):
            return not isinstance(b, Nat) or a.k <= b.k
        if isinstance(b, Nat):
            return False
        return a[0] <= b[0] and a[1] <= b[1]

    def meet(self, a, b):
        if isinstance(a, Nat) and isinstance(b, Nat):
            return Nat(min(a.k, b.k))
        if isinstance(a, Nat):
            return a
        if isinstance(b, Nat):
            return b
        return (min(a[0], b[0]), min(a[1], b[1]))

    def join(self, a, b):
        if isinstance(a, Nat) and isinstance(b, Nat):
            return Nat(max(a.k, b.k))
        if isinstance(a, Nat):
            return b
        if isinstance(b, Nat):
            return a
        return (max(a[0], b[0]), max(a[1], b[1]))

    def window(self) -> list:
        return [Nat(k) for k in range(WINDOW_RADIUS)] + _grid(WINDOW_RADIUS)

    def truncation_elements(self, depth: int) -> list:
        return [Nat(k) for k in range(depth)] + _grid(depth)

    def catalog(self) -> list[FilterDescriptor]:
        claims = {"prime": True, "complete": True, "completely_prime": True}
        out = []
        for axis, name in ((0, "x"), (1, "y")):
            for n in range(3):
                out.append(FilterDescriptor(f"{name}>=-{n}", _Strip(axis, n),
                                            {"axis": axis, "n": n}, dict(claims),
                                            "strip of the grid, bounded in one coordinate"))
        return out

    @staticmethod
    def _next_nat(z):
        # every natural is a lower bound of every grid point
        return Nat(z.k + 1) if isinstance(z, Nat) else None

    @staticmethod
    def _lower_grid_point(z):
        # a grid upper bound of the naturals can always be lowered
        return None if isinstance(z, Nat) else (z[0] - 1, z[1])

    def complete_candidates(self, d):
        axis, n = d.parameters["axis"], d.parameters["n"]
        inside = [e for e in _grid(WINDOW_RADIUS) if d.membership(e)]
        # chains unbounded in the free coordinate: only naturals lie below
        # them, and the naturals have no largest element
        for c in range(-n, 1):
            prefix = tuple(((c, -k) if axis == 0 else (-k, c)) for k in range(self.prefix_length))
            yield Candidate("descending", f"unbounded chain at fixed coordinate {c}", prefix,
                            None, exists=False, infinite=True, refine=self._next_nat)
        yield from self.finite_subsets(inside)

    def completely_prime_candidates(self, d):
        axis, n = d.parameters["axis"], d.parameters["n"]
        outside = [e for e in self.window() if not d.membership(e)]
        nats = tuple(Nat(k) for k in range(self.prefix_length))
        yield Candidate("ascending", "all naturals, truncated", nats, None, exists=False,
                        infinite=True, refine=self._lower_grid_point)
        sup = (-n - 1, 0) if axis == 0 else (0, -n - 1)
        grid_part = tuple(p for p in _grid(n + 1 + WINDOW_RADIUS) if p[axis] <= -n - 1)
        yield Candidate("complement", "the whole complement, truncated", nats + grid_part, sup,
                        infinite=True)
        yield from self.finite_subsets(outside)

    def density_refuter(self, target, budget: int = 1000) -> ProbeVerdict:
        """Show that no set of naturals has ``target`` (a grid point) as its join.

        Finite sets of naturals join to a natural. Infinite ones are unbounded
        in the chain, so every grid point is an upper bound and each can be
        lowered, hence no least upper bound exists; the witness is a grid upper
        bound strictly below ``target``.
        """
        count = 0
        for size in range(1, WINDOW_RADIUS + 1):
            for combo in itertools.combinations(range(WINDOW_RADIUS), size):
                if count >= budget:
                    break
                count += 1
                if self.join_all(Nat(k) for k in combo) == target:
                    return ProbeVerdict("joinable", True, "verified", budget, count,
                                        tuple(Nat(k) for k in combo))
        lower = self._lower_grid_point(target)
        nats = tuple(Nat(k) for k in range(self.prefix_length))
        if lower is None or not all(self.leq(m, lower) for m in nats) or not self.lt(lower, target):
            return ProbeVerdict("joinable", True, "verified", budget, count)
        return ProbeVerdict("joinable", True, "refuted", budget, count + 1,
                            Candidate("ascending", "naturals with a smaller grid upper bound",
                                      nats, lower, infinite=True))

    def join_decomposition(self, e):
        """A pair of strictly smaller elements joining to ``e``, or ``None``.

        Grid points always split; naturals never do.
        """
        if isinstance(e, Nat):
            return None
        return ((e[0] - 1, e[1]), (e[0], e[1] - 1))


def nbar_squared_with_bottom() -> NBarSquaredWithBottom:
    return NBarSquaredWithBottom()


def nbar_squared_over_nats() -> NBarSquaredOverNats:
    return NBarSquaredOverNats()
