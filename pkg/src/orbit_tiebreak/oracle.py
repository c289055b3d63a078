"""Brute-force reference computations.

Nothing here reuses the search, signature pruning, orbit transversals or
the order predicates of the main modules; only the relabeling actions are
shared.  Everything iterates over all n! permutations in lexicographic
order, so keep n small.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterator, Sequence

from .infospaces import act_item, items_equal
from .orders import LinearOrder, Partition, WeakOrder
from .perm import PermGroup, Permutation, ResourceCapError, trusted
from .stabilizer import Input

DEFAULT_ORACLE_CAP = 8


def oracle_cap_default() -> int:
    return int(os.environ.get("ORBIT_TIEBREAK_ORACLE_CAP", DEFAULT_ORACLE_CAP))


def _check_cap(n: int, cap: int | None) -> None:
    cap = oracle_cap_default() if cap is None else cap
    if n > cap:
        raise ResourceCapError(f"brute force over {n}! permutations exceeds oracle cap n <= {cap}")


def brute_stabilizer_elements(inp: Input, cap: int | None = None) -> list[Permutation]:
    _check_cap(inp.n, cap)
    out = []
    for images in itertools.permutations(range(inp.n)):
        sigma = trusted(Permutation, images=images)
        if inp.standings.act(sigma) != inp.standings:
            continue
        if items_equal(act_item(sigma, inp.item), inp.item):
            out.append(sigma)
    return out


def brute_stabilizer(inp: Input, cap: int | None = None) -> PermGroup:
    """Every permutation fixing both the item and the standings."""
    return PermGroup.from_elements(inp.n, brute_stabilizer_elements(inp, cap))


def brute_orbit_partition(inp: Input, cap: int | None = None) -> Partition:
    elements = brute_stabilizer_elements(inp, cap)
    n = inp.n
    blocks = []
    placed: set[int] = set()
    for x in range(n):
        if x in placed:
            continue
        orbit = {g.images[x] for g in elements} | {x}
        placed |= orbit
        blocks.append(tuple(orbit))
    return Partition(tuple(blocks), n=n)


def _refines_strictly(ranking: Sequence[int], w: WeakOrder) -> bool:
    # every strict comparison of w must appear in the ranking
    level = {}
    for k, cls in enumerate(w.classes):
        for x in cls:
            level[x] = k
    pos = {x: i for i, x in enumerate(ranking)}
    return all(
        pos[x] < pos[y]
        for x in range(w.n)
        for y in range(w.n)
        if level[x] < level[y]
    )


def _interval_in(ranking: Sequence[int], p: Partition) -> bool:
    # no x, y in one block with an outsider z ranked strictly between them
    pos = {x: i for i, x in enumerate(ranking)}
    for b in p.blocks:
        inside = set(b)
        for x in b:
            for y in b:
                for z in range(len(ranking)):
                    if z not in inside and pos[x] < pos[z] < pos[y]:
                        return False
    return True


def brute_consistent_rule_count(inp: Input, cap: int | None = None) -> int:
    """How many of the n! linear orders keep the standings and keep orbit blocks contiguous."""
    _check_cap(inp.n, cap)
    omega = brute_orbit_partition(inp, cap)
    return sum(
        1
        for ranking in itertools.permutations(range(inp.n))
        if _refines_strictly(ranking, inp.standings) and _interval_in(ranking, omega)
    )


def brute_fixed_linear_orders(sigma: Permutation, cap: int | None = None) -> list[LinearOrder]:
    _check_cap(sigma.n, cap)
    image = sigma.images.__getitem__
    # sigma.L ranks sigma(x) where L ranks x
    return [LinearOrder(r) for r in itertools.permutations(range(sigma.n)) if tuple(map(image, r)) == r]


def set_partitions(items: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """All set partitions of ``items``, built by inserting the first element."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [(first,)] + part
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1:]


def partitions_refining(w: WeakOrder) -> Iterator[Partition]:
    """Every partition each of whose blocks sits inside one class of ``w``."""
    for parts in itertools.product(*(list(set_partitions(c)) for c in w.classes)):
        yield Partition(tuple(b for part in parts for b in part), n=w.n)
