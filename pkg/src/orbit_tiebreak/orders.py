"""Weak orders, linear orders and set partitions of {0, ..., n-1}."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .perm import Permutation, check_same_n, trusted


def _check_cover(groups: Sequence[Sequence[int]], n: int, what: str) -> None:
    seen: set[int] = set()
    for g in groups:
        if not g:
            raise ValueError(f"{what}: empty block")
        for x in g:
            if not 0 <= x < n:
                raise ValueError(f"{what}: index {x} out of range for n={n}")
            if x in seen:
                raise ValueError(f"{what}: index {x} appears twice")
            seen.add(x)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise ValueError(f"{what}: indices {missing} not covered")


@dataclass(frozen=True)
class WeakOrder:
    """Standings with ties: indifference classes listed top first."""

    classes: tuple[tuple[int, ...], ...]
    n: int = field(default=-1, compare=False)

    def __post_init__(self):
        classes = tuple(tuple(sorted(int(x) for x in c)) for c in self.classes)
        n = self.n if self.n >= 0 else sum(len(c) for c in classes)
        _check_cover(classes, n, "weak order")
        object.__setattr__(self, "classes", classes)
        object.__setattr__(self, "n", n)

    @classmethod
    def all_tied(cls, n: int) -> WeakOrder:
        return cls((tuple(range(n)),) if n else (), n=n)

    @classmethod
    def from_scores(cls, scores: Sequence) -> WeakOrder:
        """Higher score ranks higher; equal scores tie."""
        levels = sorted(set(scores), reverse=True)
        return cls(tuple(tuple(i for i, s in enumerate(scores) if s == lv) for lv in levels), n=len(scores))

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        idx = [0] * self.n
        for k, c in enumerate(self.classes):
            for x in c:
                idx[x] = k
        return tuple(idx)

    def weakly_above(self, x: int, y: int) -> bool:
        return self.class_index[x] <= self.class_index[y]

    def strictly_above(self, x: int, y: int) -> bool:
        return self.class_index[x] < self.class_index[y]

    def act(self, sigma: Permutation) -> WeakOrder:
        # x (s.W) y iff s^-1(x) W s^-1(y): the class holding s(x) is the image of x's class
        im = sigma.images
        return trusted(WeakOrder, classes=tuple(tuple(sorted([im[x] for x in c])) for c in self.classes), n=self.n)


@dataclass(frozen=True)
class LinearOrder:
    """A strict ranking, best first."""

    ranking: tuple[int, ...]

    def __post_init__(self):
        ranking = tuple(int(x) for x in self.ranking)
        if sorted(ranking) != list(range(len(ranking))):
            raise ValueError(f"linear order is not a bijection: {ranking}")
        object.__setattr__(self, "ranking", ranking)

    @property
    def n(self) -> int:
        return len(self.ranking)

    @cached_property
    def position(self) -> tuple[int, ...]:
        pos = [0] * self.n
        for k, x in enumerate(self.ranking):
            pos[x] = k
        return tuple(pos)

    def above(self, x: int, y: int) -> bool:
        return self.position[x] < self.position[y]

    def as_weak(self) -> WeakOrder:
        return WeakOrder(tuple((x,) for x in self.ranking), n=self.n)

    def act(self, sigma: Permutation) -> LinearOrder:
        im = sigma.images
        return trusted(LinearOrder, ranking=tuple([im[x] for x in self.ranking]))


@dataclass(frozen=True)
class Partition:
    """Blocks sorted internally and ordered by least element."""

    blocks: tuple[tuple[int, ...], ...]
    n: int = field(default=-1, compare=False)

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(x) for x in b)) for b in self.blocks))
        n = self.n if self.n >= 0 else sum(len(b) for b in blocks)
        _check_cover(blocks, n, "partition")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "n", n)

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(tuple((i,) for i in range(n)), n=n)

    @classmethod
    def from_labels(cls, labels: Sequence) -> Partition:
        """Group indices by equal label value."""
        groups: dict = {}
        for i, lab in enumerate(labels):
            groups.setdefault(lab, []).append(i)
        return cls(tuple(tuple(g) for g in groups.values()), n=len(labels))

    @cached_property
    def block_of(self) -> dict[int, tuple[int, ...]]:
        return {x: b for b in self.blocks for x in b}

    def is_discrete(self) -> bool:
        return len(self.blocks) == self.n

    def act(self, sigma: Permutation) -> Partition:
        im = sigma.images
        blocks = sorted(tuple(sorted([im[x] for x in b])) for b in self.blocks)
        return trusted(Partition, blocks=tuple(blocks), n=self.n)


def indifference_partition(w: WeakOrder) -> Partition:
    return Partition(w.classes, n=w.n)


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside a block of ``q``."""
    check_same_n(p.n, q.n, "partitions")
    where = q.block_of
    return all(all(where[x] == where[b[0]] for x in b) for b in p.blocks)


def is_consistent(order: LinearOrder, p: Partition) -> bool:
    """True iff each block of ``p`` occupies consecutive positions."""
    check_same_n(order.n, p.n, "linear order and partition")
    pos = order.position
    for b in p.blocks:
        ps = [pos[x] for x in b]
        if max(ps) - min(ps) != len(b) - 1:
            return False
    return True


def strict_refines(order: LinearOrder, w: WeakOrder) -> bool:
    """True iff ``order`` keeps every strict comparison of ``w``."""
    check_same_n(order.n, w.n, "linear order and weak order")
    ci = w.class_index
    ranks = [ci[x] for x in order.ranking]
    return all(a <= b for a, b in zip(ranks, ranks[1:]))


def linear_from_weak(w: WeakOrder) -> LinearOrder:
    """The extension of ``w`` that breaks every tie by index."""
    return LinearOrder(tuple(x for c in w.classes for x in c))


def blocks_within(p: Partition, members: Iterable[int]) -> list[tuple[int, ...]]:
    """Blocks of ``p`` inside ``members``; assumes ``p`` does not straddle it."""
    members = set(members)
    return [b for b in p.blocks if b[0] in members]
