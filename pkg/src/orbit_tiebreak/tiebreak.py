"""Completions and the strict rankings they produce.

A completion is the arbitrary part of a strict tie-break: ``beta`` orders the
players inside each orbit block, ``gamma`` orders the orbit blocks inside each
indifference class.  Everything else about the ranking is forced by the
standings and the orbit partition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .orders import (
    LinearOrder,
    Partition,
    WeakOrder,
    blocks_within,
    indifference_partition,
    is_consistent,
    refines,
    strict_refines,
)
from .perm import check_same_n
from .stabilizer import Input, orbit_partition

Block = tuple[int, ...]


class CompletionError(ValueError):
    pass


@dataclass(frozen=True)
class Completion:
    beta: Mapping[Block, tuple[int, ...]] = field(default_factory=dict)
    gamma: Mapping[int, tuple[Block, ...]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "beta", {tuple(sorted(b)): tuple(o) for b, o in self.beta.items()})
        object.__setattr__(
            self, "gamma", {int(k): tuple(tuple(sorted(b)) for b in bs) for k, bs in self.gamma.items()}
        )


@dataclass(frozen=True)
class AxiomCheck:
    saturated: bool
    maximally_fine: bool

    @property
    def both(self) -> bool:
        return self.saturated and self.maximally_fine


def _omega(inp: Input, omega: Partition | None) -> Partition:
    return omega if omega is not None else orbit_partition(inp)


def _name(block, labels) -> str:
    return "{" + ",".join(labels[x] for x in block) + "}"


def _ordering_problems(ordering, expected: list, what: str, fmt) -> list[str]:
    out = []
    if len(set(ordering)) != len(ordering):
        out.append(f"{what} lists an entry twice")
    extra = [e for e in ordering if e not in expected]
    missing = [e for e in expected if e not in ordering]
    if extra:
        out.append(f"{what} has entries outside it: {', '.join(fmt(e) for e in extra)}")
    if missing:
        out.append(f"{what} is missing {', '.join(fmt(e) for e in missing)}")
    return out


def validate_completion(c: Completion, inp: Input, omega: Partition | None = None) -> list[str]:
    """Shape problems of ``c`` against the input; empty means valid."""
    omega = _omega(inp, omega)
    labels = inp.labels
    out = []
    for b in omega.blocks:
        if b not in c.beta:
            out.append(f"beta is missing block {_name(b, labels)}")
    for b, order in c.beta.items():
        if b not in omega.blocks:
            out.append(f"beta has block {_name(b, labels)} which is not an orbit block")
            continue
        out += _ordering_problems(list(order), list(b), f"beta{_name(b, labels)}", lambda x: labels[x])
    classes = inp.standings.classes
    for k, cls in enumerate(classes):
        if k not in c.gamma:
            out.append(f"gamma is missing class {k}")
            continue
        out += _ordering_problems(
            list(c.gamma[k]), blocks_within(omega, cls), f"gamma[class {k}]", lambda b: _name(b, labels)
        )
    for k in c.gamma:
        if not 0 <= k < len(classes):
            out.append(f"gamma has unknown class {k}")
    return out


def lift(c: Completion, inp: Input, omega: Partition | None = None) -> LinearOrder:
    """Rank classes by standings, blocks within a class by gamma, players by beta."""
    omega = _omega(inp, omega)
    problems = validate_completion(c, inp, omega)
    if problems:
        raise CompletionError("; ".join(problems))
    ranking = []
    for k in range(len(inp.standings.classes)):
        for b in c.gamma[k]:
            ranking.extend(c.beta[b])
    return LinearOrder(tuple(ranking))


def extract_completion(t: LinearOrder, inp: Input, omega: Partition | None = None) -> Completion:
    """Read the completion back off a partition-consistent strict ranking."""
    check_same_n(t.n, inp.n, "ranking and input")
    omega = _omega(inp, omega)
    labels = inp.labels
    w = inp.standings
    if not strict_refines(t, w):
        for x, y in zip(t.ranking, t.ranking[1:]):
            if w.strictly_above(y, x):
                raise CompletionError(f"ranking puts {labels[x]} above {labels[y]}, reversing the standings")
    if not is_consistent(t, omega):
        pos = t.position
        for b in omega.blocks:
            lo, hi = min(pos[x] for x in b), max(pos[x] for x in b)
            intruders = [z for z in t.ranking[lo:hi] if z not in b]
            if intruders:
                raise CompletionError(f"block {_name(b, labels)} split by {labels[intruders[0]]}")
    pos = t.position
    beta = {b: tuple(sorted(b, key=pos.__getitem__)) for b in omega.blocks}
    gamma = {
        k: tuple(sorted(blocks_within(omega, cls), key=lambda b: pos[b[0]]))
        for k, cls in enumerate(w.classes)
    }
    return Completion(beta, gamma)


def weak_from_pair(p: Partition, delta: Mapping[int, tuple[Block, ...]], w: WeakOrder) -> WeakOrder:
    """Weak order with the blocks of ``p`` as classes, ordered by ``w`` then ``delta``."""
    check_same_n(p.n, w.n, "partition and weak order")
    if not refines(p, indifference_partition(w)):
        raise CompletionError("partition does not refine the standings")
    classes = []
    for k, cls in enumerate(w.classes):
        expected = blocks_within(p, cls)
        got = [tuple(sorted(b)) for b in delta.get(k, ())]
        if sorted(got) != expected or len(got) != len(expected):
            raise CompletionError(f"block ordering for class {k} does not match the partition")
        classes.extend(got)
    return WeakOrder(tuple(classes), n=w.n)


def pair_from_weak(v: WeakOrder, w: WeakOrder) -> tuple[Partition, dict[int, tuple[Block, ...]]]:
    """Inverse of ``weak_from_pair``: the classes of ``v`` and their order inside each class of ``w``."""
    check_same_n(v.n, w.n, "weak orders")
    ci = w.class_index
    last = -1
    for cls in v.classes:
        ks = {ci[x] for x in cls}
        if len(ks) > 1 or min(ks) < last:
            raise CompletionError("first weak order does not refine the second")
        last = min(ks)
    delta: dict[int, list] = {k: [] for k in range(len(w.classes))}
    for cls in v.classes:
        delta[ci[cls[0]]].append(cls)
    return Partition(v.classes, n=v.n), {k: tuple(bs) for k, bs in delta.items()}


def count_consistent_rules(inp: Input, omega: Partition | None = None) -> int:
    """Number of completions at this input."""
    omega = _omega(inp, omega)
    total = 1
    for b in omega.blocks:
        total *= math.factorial(len(b))
    for cls in inp.standings.classes:
        total *= math.factorial(len(blocks_within(omega, cls)))
    return total


def check_axioms(pout: Partition, inp: Input, omega: Partition | None = None) -> AxiomCheck:
    if not refines(pout, indifference_partition(inp.standings)):
        raise CompletionError("partition does not refine the standings, so it is not a rule output")
    omega = _omega(inp, omega)
    return AxiomCheck(saturated=refines(omega, pout), maximally_fine=refines(pout, omega))


def default_completion(inp: Input, omega: Partition | None = None) -> Completion:
    """Alphabetical completion.

    Label order carries no information about the input; it stands in for
    a coin flip or a pre-tournament draw.
    """
    omega = _omega(inp, omega)
    labels = inp.labels
    beta = {b: tuple(sorted(b, key=lambda x: labels[x])) for b in omega.blocks}
    gamma = {
        k: tuple(sorted(blocks_within(omega, cls), key=lambda b: min(labels[x] for x in b)))
        for k, cls in enumerate(inp.standings.classes)
    }
    return Completion(beta, gamma)


def comparison_provenance(order: LinearOrder, inp: Input, omega: Partition | None = None) -> list[tuple[int, int, str]]:
    """Tag every pair (upper, lower) of ``order`` with what decided it.

    ``standings`` for pairs in different classes, ``gamma`` for pairs in
    different orbit blocks of one class, ``beta`` for pairs in one block.
    """
    omega = _omega(inp, omega)
    ci = inp.standings.class_index
    where = omega.block_of
    out = []
    r = order.ranking
    for i, x in enumerate(r):
        for y in r[i + 1:]:
            if ci[x] != ci[y]:
                tag = "standings"
            elif where[x] != where[y]:
                tag = "gamma"
            else:
                tag = "beta"
            out.append((x, y, tag))
    return out
