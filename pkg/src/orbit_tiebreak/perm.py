"""Permutations of {0, ..., n-1}, groups given by generators, and orbits.

Composition convention: ``compose(s, t)(i) == s(t(i))``, i.e. apply ``t``
first.  Every action formula in the package is written against it.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

DEFAULT_CLOSURE_CAP = math.factorial(10)


class DimensionError(ValueError):
    """Two objects that must live on the same player set do not."""


class ResourceCapError(RuntimeError):
    """A configured search or enumeration limit was exceeded."""


def trusted(cls, **fields):
    """Instantiate a frozen dataclass from fields already in canonical form."""
    obj = object.__new__(cls)
    for k, v in fields.items():
        object.__setattr__(obj, k, v)
    return obj


def check_same_n(n1: int, n2: int, what: str = "objects") -> None:
    if n1 != n2:
        raise DimensionError(f"{what} have different player counts ({n1} vs {n2})")


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> Permutation:
        """Build from disjoint cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        images = list(range(n))
        seen = set()
        for cyc in cycles:
            for k, x in enumerate(cyc):
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
                images[x] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = set()
        out = []
        for i in range(self.n):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def format(self, labels: Sequence[str] | None = None) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        name = (lambda i: labels[i]) if labels else str
        return "".join("(" + " ".join(name(i) for i in c) + ")" for c in cyc)

    def __repr__(self):
        return f"Permutation({self.format()}, n={self.n})"


def compose(s: Permutation, t: Permutation) -> Permutation:
    check_same_n(s.n, t.n, "permutations")
    si = s.images
    return trusted(Permutation, images=tuple([si[j] for j in t.images]))


def invert(s: Permutation) -> Permutation:
    inv = [0] * s.n
    for i, x in enumerate(s.images):
        inv[x] = i
    return trusted(Permutation, images=tuple(inv))


def act(sigma: Permutation, x):
    """Relabel ``x`` (weak order, linear order, partition, info item) by ``sigma``."""
    check_same_n(sigma.n, x.n, "permutation and object")
    return x.act(sigma)


def closure(n: int, generators: Iterable[Permutation], cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
    """All elements of the group generated by ``generators`` (image tuples)."""
    gens = [g.images for g in generators]
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = tuple(g[i] for i in p)
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise ResourceCapError(f"group closure exceeds {cap} elements")
                queue.append(q)
    return frozenset(seen)


def _canonical_generators(gens: Iterable[Permutation]) -> tuple[Permutation, ...]:
    return tuple(sorted({g for g in gens if not g.is_identity()}))


@dataclass(frozen=True)
class PermGroup:
    """A permutation group on ``n`` points presented by generators.

    The identity is implicit.  Generators are deduplicated and sorted by
    image tuple so that equal presentations compare and serialize equally.
    Orbits and orbit witnesses are computed lazily; the full element set is
    only built on request (``elements``) and is capped.
    """

    n: int
    generators: tuple[Permutation, ...] = ()
    known_elements: frozenset | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for g in self.generators:
            check_same_n(self.n, g.n, "group and generator")
        object.__setattr__(self, "generators", _canonical_generators(self.generators))

    @classmethod
    def from_elements(cls, n: int, elements: Iterable[Permutation]) -> PermGroup:
        """Group whose generator list is the given (closed) element set."""
        elems = list(elements)
        known = frozenset(e.images for e in elems) | {tuple(range(n))}
        return cls(n, tuple(elems), known_elements=known)

    @cached_property
    def _transversals(self):
        # root of each orbit -> {point: Permutation mapping root to point}
        trans = {}
        root_of = [None] * self.n
        for r in range(self.n):
            if root_of[r] is not None:
                continue
            tr = {r: Permutation.identity(self.n)}
            root_of[r] = r
            queue = deque([r])
            while queue:
                p = queue.popleft()
                for g in self.generators:
                    q = g(p)
                    if q not in tr:
                        tr[q] = compose(g, tr[p])
                        root_of[q] = r
                        queue.append(q)
            trans[r] = tr
        return trans, root_of

    def orbits(self) -> list[tuple[int, ...]]:
        trans, _ = self._transversals
        return sorted(tuple(sorted(tr)) for tr in trans.values())

    def same_orbit(self, x: int, y: int) -> bool:
        _, root_of = self._transversals
        return root_of[x] == root_of[y]

    def witness(self, x: int, y: int) -> Permutation | None:
        """A product of generators carrying ``x`` to ``y``, or None."""
        trans, root_of = self._transversals
        if root_of[x] != root_of[y]:
            return None
        tr = trans[root_of[x]]
        return compose(tr[y], invert(tr[x]))

    def elements(self, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        """The full element set as image tuples."""
        if self.known_elements is not None:
            return self.known_elements
        return closure(self.n, self.generators, cap)

    def order(self, cap: int = DEFAULT_CLOSURE_CAP) -> int:
        return len(self.elements(cap))

    def contains(self, sigma: Permutation, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
        return sigma.images in self.elements(cap)


def orbits_of(group: PermGroup):
    """Orbit partition of ``group`` on {0, ..., n-1}."""
    from .orders import Partition

    return Partition(group.orbits(), n=group.n)


def greedy_generators(n: int, elements: Iterable[Permutation]) -> tuple[Permutation, ...]:
    """Reduce a closed element set to a small generating list.

    Walks the elements in image order and keeps each one not already
    generated by the ones kept so far.
    """
    gens: list[Permutation] = []
    reached = {tuple(range(n))}
    for e in sorted(elements):
        if e.images in reached:
            continue
        gens.append(e)
        reached = set(closure(n, gens))
    return tuple(gens)
