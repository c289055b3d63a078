"""Joint stabilizer of an input, its orbit partition, and symmetry witnesses.

The search assigns images player by player.  A player may only go to a
player of the same indifference class (stabilizer elements fix every class
setwise), with the same kind-specific invariant signature, and only if the
partial map is still compatible with the item.  Each complete map is then
checked exactly, so pruning only saves time and never changes the answer.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Sequence

from .infospaces import InfoItem, act_item, default_labels, items_equal, validate
from .orders import LinearOrder, Partition, WeakOrder, linear_from_weak
from .perm import (
    PermGroup,
    Permutation,
    ResourceCapError,
    act,
    check_same_n,
    greedy_generators,
    orbits_of,
)

DEFAULT_NODE_CAP = 10**6


def node_cap_default() -> int:
    return int(os.environ.get("ORBIT_TIEBREAK_NODE_CAP", DEFAULT_NODE_CAP))


class ValidationError(ValueError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


@dataclass(frozen=True, eq=False)
class Input:
    """A validated pair of auxiliary data and standings.

    Equality is by content: ballots with equal orders merge, round robin
    matches compare in either direction.
    """

    labels: tuple[str, ...]
    item: InfoItem
    standings: WeakOrder

    @classmethod
    def make(cls, item: InfoItem, standings: WeakOrder, labels: Sequence[str] | None = None) -> Input:
        n = standings.n
        labels = tuple(labels) if labels is not None else tuple(default_labels(n))
        problems = []
        if len(labels) != n:
            problems.append(f"{len(labels)} labels for {n} players")
        if len(set(labels)) != len(labels):
            problems.append("duplicate player labels")
        if not problems:
            problems = validate(item, n, labels)
        if problems:
            raise ValidationError(problems)
        return cls(labels, item, standings)

    def _key(self):
        return (self.labels, self.standings, self.item.kind, self.item.n, self.item.canonical())

    def __eq__(self, other):
        if not isinstance(other, Input):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def n(self) -> int:
        return self.standings.n

    def act(self, sigma: Permutation) -> Input:
        """Relabel data and standings; labels stay attached to indices."""
        return Input(self.labels, act_item(sigma, self.item), act(sigma, self.standings))

    def is_fixed_by(self, sigma: Permutation) -> bool:
        return act(sigma, self.standings) == self.standings and items_equal(act_item(sigma, self.item), self.item)


@dataclass(frozen=True)
class SymmetricWitness:
    x: int
    y: int
    sigma: Permutation


def _search(inp: Input, node_cap: int) -> list[Permutation]:
    n = inp.n
    item = inp.item
    ci = inp.standings.class_index
    sig = item.signatures(ci)
    cands = [[y for y in inp.standings.classes[ci[x]] if sig[y] == sig[x]] for x in range(n)]
    # most constrained players first
    order = sorted(range(n), key=lambda x: (len(cands[x]), x))
    images = [0] * n
    mapping: dict[int, int] = {}
    used = [False] * n
    found: list[Permutation] = []
    nodes = 0

    def descend(k: int) -> None:
        nonlocal nodes
        if k == n:
            sigma = Permutation(tuple(images))
            if inp.is_fixed_by(sigma):
                found.append(sigma)
            return
        x = order[k]
        for y in cands[x]:
            if used[y]:
                continue
            nodes += 1
            if nodes > node_cap:
                raise ResourceCapError(f"stabilizer search exceeded {node_cap} nodes")
            if not item.extend_ok(mapping, x, y):
                continue
            mapping[x] = y
            images[x] = y
            used[y] = True
            descend(k + 1)
            used[y] = False
            del mapping[x]

    descend(0)
    return found


def joint_stabilizer(inp: Input, node_cap: int | None = None) -> PermGroup:
    """All relabelings fixing both the item and the standings."""
    cap = node_cap_default() if node_cap is None else node_cap
    elements = _search(inp, cap)
    gens = greedy_generators(inp.n, elements)
    return PermGroup(inp.n, gens, known_elements=frozenset(e.images for e in elements))


def orbit_partition(inp: Input, node_cap: int | None = None) -> Partition:
    return orbits_of(joint_stabilizer(inp, node_cap))


def symmetric_witness(inp: Input, group: PermGroup | None = None) -> SymmetricWitness | None:
    """Two distinct players exchanged-in-orbit, with the stabilizer element."""
    group = group if group is not None else joint_stabilizer(inp)
    for block in orbits_of(group).blocks:
        if len(block) > 1:
            x, y = block[0], block[1]
            return SymmetricWitness(x, y, group.witness(x, y))
    return None


@dataclass(frozen=True)
class CycleCertificate:
    """Evidence that ``sigma`` moves ``order``.

    ``cycle`` is the orbit c0, c1 = sigma(c0), ... of a moved point.  If
    ``order`` were fixed, every step c_i -> c_{i+1} would go the same way
    and the cycle would force c0 above itself.  ``pair`` is a consecutive
    step on which ``order`` and ``sigma . order`` disagree.
    """

    sigma: Permutation
    order: LinearOrder
    cycle: tuple[int, ...]
    pair: tuple[int, int]
    orders_checked: int = 0  # linear orders confirmed moved; 0 if not exhaustive

    def steps(self) -> list[bool]:
        """For each consecutive cycle step, whether it descends in ``order``."""
        c = self.cycle
        return [self.order.above(c[i], c[(i + 1) % len(c)]) for i in range(len(c))]

    def is_valid(self) -> bool:
        c = self.cycle
        if len(c) < 2 or any(self.sigma(c[i]) != c[(i + 1) % len(c)] for i in range(len(c))):
            return False
        if all(self.steps()) or not any(self.steps()):
            return False
        p, q = self.pair
        moved = act(self.sigma, self.order)
        return moved.above(p, q) != self.order.above(p, q)

    def describe(self, labels: Sequence[str]) -> str:
        c = self.cycle
        chain = labels[c[0]]
        for i, down in enumerate(self.steps()):
            chain += (" > " if down else " < ") + labels[c[(i + 1) % len(c)]]
        p, q = self.pair
        rel = "above" if self.order.above(p, q) else "below"
        return (
            f"cycle {chain}: a fixed order would need every step to point the same way; "
            f"order has {labels[p]} {rel} {labels[q]}, sigma.order reverses it"
        )


def certify(sigma: Permutation, order: LinearOrder) -> CycleCertificate:
    """Build the cycle certificate that ``sigma`` does not fix ``order``."""
    check_same_n(sigma.n, order.n, "permutation and order")
    moved = [x for x in range(sigma.n) if sigma(x) != x]
    if not moved:
        raise ValueError("the identity fixes every linear order")
    x = moved[0]
    cycle = [x]
    while sigma(cycle[-1]) != x:
        cycle.append(sigma(cycle[-1]))
    m = len(cycle)
    down = [order.above(cycle[i], cycle[(i + 1) % m]) for i in range(m)]
    # the steps cannot all agree on a cycle, so a direction change exists
    i = next(i for i in range(m) if down[i] != down[(i + 1) % m])
    # sigma.order compares c_{i+1}, c_{i+2} the way order compares c_i, c_{i+1}
    pair = (cycle[(i + 1) % m], cycle[(i + 2) % m])
    return CycleCertificate(sigma, order, tuple(cycle), pair)


def verify_no_fixed_linear_order(sigma: Permutation, standings: WeakOrder, exhaustive_limit: int = 6) -> CycleCertificate:
    """Certificate on the index-order extension of ``standings``.

    For ``n <= exhaustive_limit`` every one of the n! linear orders is also
    confirmed to be moved by ``sigma``.
    """
    check_same_n(sigma.n, standings.n, "permutation and standings")
    if sigma.is_identity():
        raise ValueError("the identity fixes every linear order")
    cert = certify(sigma, linear_from_weak(standings))
    checked = 0
    if sigma.n <= exhaustive_limit:
        for ranking in itertools.permutations(range(sigma.n)):
            order = LinearOrder(ranking)
            if act(sigma, order) == order:
                raise AssertionError(f"{sigma} fixes {order}")
            checked += 1
    return CycleCertificate(cert.sigma, cert.order, cert.cycle, cert.pair, checked)
