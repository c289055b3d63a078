"""Seeded random inputs for property checks.

Plain random data almost never has symmetry, so most generated inputs are
made invariant under a random permutation ``g``: the item is built from
whole ``<g>``-orbits of edges, matches, ballots, coalitions or games, and
the standings are constant on ``<g>``-orbits of players.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .infospaces import (
    KINDS,
    CoalitionItem,
    Game,
    GraphItem,
    RoundRobinItem,
    SwissItem,
    VotingItem,
    default_labels,
)
from .orders import LinearOrder, Partition, WeakOrder, blocks_within
from .perm import Permutation
from .stabilizer import Input
from .tiebreak import Completion

_VALUES = [Fraction(0), Fraction(1), Fraction(1, 2), Fraction(2), Fraction(-1, 3)]


def random_permutation(rng: random.Random, n: int) -> Permutation:
    images = list(range(n))
    rng.shuffle(images)
    return Permutation(tuple(images))


def random_weak_order(rng: random.Random, n: int) -> WeakOrder:
    players = list(range(n))
    rng.shuffle(players)
    classes, cur = [], []
    for x in players:
        cur.append(x)
        if rng.random() < 0.45:
            classes.append(cur)
            cur = []
    if cur:
        classes.append(cur)
    return WeakOrder(tuple(tuple(c) for c in classes), n=n)


def _symmetry(rng: random.Random, n: int) -> Permutation:
    if n < 2 or rng.random() < 0.2:
        return Permutation.identity(n)
    if rng.random() < 0.5:
        # a few disjoint cycles on a random subset
        pts = rng.sample(range(n), rng.randint(2, n))
        cycles, i = [], 0
        while i < len(pts):
            k = rng.randint(2, 3)
            if len(pts) - i >= 2:
                cycles.append(pts[i:i + k])
            i += k
        return Permutation.from_cycles(n, *[c for c in cycles if len(c) > 1])
    return random_permutation(rng, n)


def _orbit(g: Permutation, thing, move):
    out = [thing]
    cur = move(g, thing)
    while cur != thing:
        out.append(cur)
        cur = move(g, cur)
    return out


def _pair_move(g, p):
    return (g(p[0]), g(p[1]))


def _mask_move(g, m):
    out = 0
    for i in range(g.n):
        if m >> i & 1:
            out |= 1 << g(i)
    return out


def _graph(rng, n, g):
    p = rng.choice([0.2, 0.4, 0.6])
    edges, seen = set(), set()
    for e in combinations(range(n), 2):
        if e in seen:
            continue
        orb = {tuple(sorted(q)) for q in _orbit(g, e, _pair_move)}
        seen |= orb
        if rng.random() < p:
            edges |= orb
    return GraphItem(n, tuple(edges))


def _roundrobin(rng, n, g):
    h: dict = {}
    for x, y in combinations(range(n), 2):
        if (x, y) in h:
            continue
        orb = _orbit(g, (x, y), _pair_move)
        d = 0 if (y, x) in orb else rng.randint(-2, 2)
        for a, b in orb:
            h[a, b] = d
            h[b, a] = -d
    return RoundRobinItem(n, tuple((x, y, h[x, y]) for x, y in combinations(range(n), 2)))


def _voting(rng, n, g):
    ballots = []
    for _ in range(rng.randint(0, 3)):
        w = random_weak_order(rng, n)
        c = rng.randint(1, 3)
        ballots += [(b, c) for b in _orbit(g, w, lambda s, v: v.act(s))]
    return VotingItem(n, tuple(ballots))


def _coalition(rng, n, g):
    vals: dict = {}
    for m in range(1 << n):
        if m in vals:
            continue
        v = rng.choice(_VALUES)
        for q in _orbit(g, m, _mask_move):
            vals[q] = v
    return CoalitionItem(n, tuple(vals.items()))


def _swiss(rng, n, g):
    rounds = rng.randint(1, 3)
    games: list[Game] = []
    for t in range(1, rounds + 1):
        busy: set = set()
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        for x, y in pairs:
            if x in busy or y in busy or rng.random() < 0.3:
                continue
            if rng.random() < 0.5:
                x, y = y, x
            res = rng.choice("wdl")
            orb = set(_orbit(g, (x, y), _pair_move))
            players = [p for q in orb for p in q]
            if len(players) != len(set(players)) or busy.intersection(players):
                continue
            busy.update(players)
            games += [Game(t, a, b, res) for a, b in orb]
    return SwissItem(n, rounds, tuple(games))


_BUILDERS = {"swiss": _swiss, "roundrobin": _roundrobin, "voting": _voting, "coalition": _coalition, "graph": _graph}


def random_input(rng: random.Random, kind: str | None = None, n: int | None = None, max_n: int = 7) -> Input:
    kind = kind or rng.choice(KINDS)
    n = n if n is not None else rng.randint(1, max_n)
    g = _symmetry(rng, n)
    item = _BUILDERS[kind](rng, n, g)
    if rng.random() < 0.35:
        standings = WeakOrder.all_tied(n)
    else:
        level: dict = {}
        for x in range(n):
            if x not in level:
                lv = rng.randint(0, 2)
                for y in _orbit(g, x, lambda s, p: s(p)):
                    level[y] = lv
        standings = WeakOrder.from_scores([level[x] for x in range(n)])
    return Input.make(item, standings, default_labels(n))


def random_completion(rng: random.Random, inp: Input, omega: Partition) -> Completion:
    beta = {}
    for b in omega.blocks:
        order = list(b)
        rng.shuffle(order)
        beta[b] = tuple(order)
    gamma = {}
    for k, cls in enumerate(inp.standings.classes):
        bs = blocks_within(omega, cls)
        rng.shuffle(bs)
        gamma[k] = tuple(bs)
    return Completion(beta, gamma)


def random_linear_order(rng: random.Random, n: int) -> LinearOrder:
    return LinearOrder(random_permutation(rng, n).images)


def random_refinement(rng: random.Random, w: WeakOrder) -> WeakOrder:
    """A random weak order that keeps every strict comparison of ``w``."""
    classes = []
    for cls in w.classes:
        sub = random_weak_order(rng, len(cls))
        classes += [tuple(cls[i] for i in c) for c in sub.classes]
    return WeakOrder(tuple(classes), n=w.n)
