"""Auxiliary-data adapters: Swiss records, round-robin results, voting
profiles, cooperative games and graphs.

Every item knows how to relabel itself under a permutation, report its own
validity problems, and expose cheap per-player invariants plus an exact
partial-map check that the stabilizer search uses for pruning.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import NamedTuple, Sequence

from .orders import WeakOrder
from .perm import DimensionError, Permutation, check_same_n, trusted

KINDS = ("swiss", "roundrobin", "voting", "coalition", "graph")

NO_GAME = ("n", "-")
_FLIP = {"w": "l", "d": "d", "l": "w"}


class KindMismatch(TypeError):
    pass


def default_labels(n: int) -> list[str]:
    if n <= 26:
        return list(string.ascii_lowercase[:n])
    return [f"p{i}" for i in range(n)]


class Game(NamedTuple):
    round: int
    white: int
    black: int
    result: str  # from white's side: w, d or l


@dataclass(frozen=True)
class SwissItem:
    n: int
    rounds: int
    games: tuple[Game, ...] = ()

    kind = "swiss"

    def __post_init__(self):
        object.__setattr__(self, "games", tuple(sorted(Game(*g) for g in self.games)))

    @cached_property
    def _table(self) -> dict:
        tab = {}
        for g in self.games:
            tab[g.white, g.black, g.round] = (g.result, "white")
            tab[g.black, g.white, g.round] = (_FLIP.get(g.result, g.result), "black")
        return tab

    def outcome(self, x: int, y: int, t: int) -> tuple[str, str]:
        """Result and colour for ``x`` against ``y`` in round ``t``."""
        return self._table.get((x, y, t), NO_GAME)

    def act(self, sigma: Permutation) -> SwissItem:
        return SwissItem(self.n, self.rounds, tuple(Game(g.round, sigma(g.white), sigma(g.black), g.result) for g in self.games))

    def canonical(self):
        return (self.rounds, self.games)

    def violations(self, labels: Sequence[str]) -> list[str]:
        out = []
        if self.rounds < 0:
            out.append(f"negative round count {self.rounds}")
        busy: dict = {}
        for k, g in enumerate(self.games):
            where = f"game {k} (round {g.round})"
            if not 1 <= g.round <= self.rounds:
                out.append(f"{where}: round outside 1..{self.rounds}")
            if g.result not in _FLIP:
                out.append(f"{where}: result {g.result!r} not one of w, d, l")
            if not (0 <= g.white < self.n and 0 <= g.black < self.n):
                out.append(f"{where}: player index out of range")
                continue
            if g.white == g.black:
                out.append(f"{where}: player {labels[g.white]} paired with itself")
                continue
            for p in (g.white, g.black):
                if (p, g.round) in busy:
                    out.append(f"player {labels[p]} paired twice in round {g.round}")
                busy[p, g.round] = True
        return out

    def signatures(self, class_index: Sequence[int]) -> list:
        sig = [[] for _ in range(self.n)]
        for g in self.games:
            sig[g.white].append((g.round, g.result, "white", class_index[g.black]))
            sig[g.black].append((g.round, _FLIP[g.result], "black", class_index[g.white]))
        return [tuple(sorted(s)) for s in sig]

    def extend_ok(self, mapping: dict, x: int, y: int) -> bool:
        for z, w in mapping.items():
            for t in range(1, self.rounds + 1):
                if self.outcome(x, z, t) != self.outcome(y, w, t):
                    return False
        return True


@dataclass(frozen=True)
class RoundRobinItem:
    """Goal differences; each entry ``(x, y, d)`` means h(x, y) = d.

    Entries are kept as given so that validation can report conflicts; the
    reverse direction h(y, x) = -d is derived.
    """

    n: int
    entries: tuple[tuple[int, int, int], ...] = ()

    kind = "roundrobin"

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(sorted(tuple(e) for e in self.entries)))

    @cached_property
    def matrix(self) -> dict:
        m = {}
        for x, y, d in self.entries:
            m.setdefault((x, y), d)
            m.setdefault((y, x), -d)
        return m

    def diff(self, x: int, y: int) -> int | None:
        return self.matrix.get((x, y))

    def act(self, sigma: Permutation) -> RoundRobinItem:
        return RoundRobinItem(self.n, tuple((sigma(x), sigma(y), d) for x, y, d in self.entries))

    def canonical(self):
        return tuple(sorted(self.matrix.items()))

    def violations(self, labels: Sequence[str]) -> list[str]:
        out = []
        given: dict = {}
        for x, y, d in self.entries:
            if not (0 <= x < self.n and 0 <= y < self.n):
                out.append(f"match ({x},{y}): player index out of range")
                continue
            if x == y:
                out.append(f"match ({labels[x]},{labels[x]}): team plays itself")
                continue
            if not isinstance(d, int) or isinstance(d, bool):
                out.append(f"match ({labels[x]},{labels[y]}): goal difference {d!r} is not an integer")
                continue
            if (x, y) in given:
                out.append(f"match ({labels[x]},{labels[y]}) recorded twice")
                continue
            if (y, x) in given and given[y, x] != -d:
                a, b = min(x, y), max(x, y)
                out.append(f"antisymmetry at ({labels[a]},{labels[b]})")
            given[x, y] = d
        for x, y in combinations(range(self.n), 2):
            if (x, y) not in given and (y, x) not in given:
                out.append(f"missing match ({labels[x]},{labels[y]})")
        return out

    def signatures(self, class_index: Sequence[int]) -> list:
        m = self.matrix
        return [
            tuple(sorted((class_index[y], m[x, y]) for y in range(self.n) if (x, y) in m))
            for x in range(self.n)
        ]

    def extend_ok(self, mapping: dict, x: int, y: int) -> bool:
        m = self.matrix
        return all(m.get((x, z)) == m.get((y, w)) for z, w in mapping.items())


@dataclass(frozen=True)
class VotingItem:
    """Anonymous profile: a histogram over weak-order ballots."""

    n: int
    ballots: tuple[tuple[WeakOrder, int], ...] = ()

    kind = "voting"

    def __post_init__(self):
        object.__setattr__(self, "ballots", tuple(sorted(((w, c) for w, c in self.ballots), key=_ballot_key)))

    @cached_property
    def histogram(self) -> dict:
        hist: Counter = Counter()
        for w, c in self.ballots:
            hist[w.classes] += c
        return {k: v for k, v in hist.items() if v}

    def total(self) -> int:
        return sum(c for _, c in self.ballots)

    def act(self, sigma: Permutation) -> VotingItem:
        # (s.h)(W') = h(s^-1 . W'): the ballot W moves to s.W with its count
        return VotingItem(self.n, tuple((w.act(sigma), c) for w, c in self.ballots))

    def canonical(self):
        return tuple(sorted(self.histogram.items()))

    def violations(self, labels: Sequence[str]) -> list[str]:
        out = []
        for k, (w, c) in enumerate(self.ballots):
            if w.n != self.n:
                out.append(f"ballot {k}: ranks {w.n} candidates, expected {self.n}")
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                out.append(f"ballot {k}: count {c!r} is not a nonnegative integer")
        return out

    def signatures(self, class_index: Sequence[int]) -> list:
        return [()] * self.n

    def _restricted(self, keep: Sequence[int], rename) -> Counter:
        keep_set = set(keep)
        out: Counter = Counter()
        for cls, c in self.histogram.items():
            key = tuple(
                tuple(sorted(rename(x) for x in part if x in keep_set))
                for part in cls
                if keep_set.intersection(part)
            )
            out[key] += c
        return out

    def extend_ok(self, mapping: dict, x: int, y: int) -> bool:
        full = dict(mapping)
        full[x] = y
        src = list(full)
        return self._restricted(src, full.__getitem__) == self._restricted(list(full.values()), lambda v: v)


def _ballot_key(entry):
    w, c = entry
    return (w.classes, c)


@dataclass(frozen=True)
class CoalitionItem:
    """Characteristic function, keyed by bitmask (bit i set = player i in S)."""

    n: int
    values: tuple[tuple[int, Fraction], ...] = ()

    kind = "coalition"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(sorted((int(m), v) for m, v in dict(self.values).items())))

    @classmethod
    def from_function(cls, n: int, fn) -> CoalitionItem:
        return cls(n, tuple((m, Fraction(fn(m))) for m in range(1 << n)))

    @cached_property
    def table(self) -> dict:
        return dict(self.values)

    def value(self, mask: int):
        return self.table[mask]

    def act(self, sigma: Permutation) -> CoalitionItem:
        # (s.v)(S) = v(s^-1 S): the value of S moves to s(S)
        bits = [1 << x for x in sigma.images]
        moved = []
        for m, v in self.values:
            out, i = 0, 0
            while m:
                if m & 1:
                    out |= bits[i]
                m >>= 1
                i += 1
            moved.append((out, v))
        moved.sort()
        return trusted(CoalitionItem, n=self.n, values=tuple(moved))

    def canonical(self):
        return self.values

    def violations(self, labels: Sequence[str]) -> list[str]:
        out = []
        full = 1 << self.n
        for m, v in self.values:
            if not 0 <= m < full:
                out.append(f"coalition mask {m} out of range")
            elif isinstance(v, float) or not isinstance(v, (int, Fraction)) or isinstance(v, bool):
                out.append(f"value of {{{mask_label(m, labels)}}} is not an exact rational: {v!r}")
        missing = [m for m in range(full) if m not in self.table]
        for m in missing[:10]:
            out.append(f"missing value for coalition {{{mask_label(m, labels)}}}")
        if len(missing) > 10:
            out.append(f"... and {len(missing) - 10} more missing coalitions")
        return out

    def signatures(self, class_index: Sequence[int]) -> list:
        t = self.table
        sig = []
        for i in range(self.n):
            bit = 1 << i
            sig.append(tuple(sorted(
                (m.bit_count(), t[m | bit] - t[m])
                for m in range(1 << self.n) if not m & bit
            )))
        return sig

    def extend_ok(self, mapping: dict, x: int, y: int) -> bool:
        t = self.table
        others = list(mapping.items())
        k = len(others)
        for sub in range(1 << k):
            src, dst = 1 << x, 1 << y
            for j in range(k):
                if sub >> j & 1:
                    src |= 1 << others[j][0]
                    dst |= 1 << others[j][1]
            if t[src] != t[dst]:
                return False
        return True


def mask_label(mask: int, labels: Sequence[str]) -> str:
    return ",".join(labels[i] for i in range(len(labels)) if mask >> i & 1)


@dataclass(frozen=True)
class GraphItem:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    kind = "graph"

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges)))

    @cached_property
    def adjacency(self) -> list[set]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if 0 <= u < self.n and 0 <= v < self.n:
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def act(self, sigma: Permutation) -> GraphItem:
        im = sigma.images
        edges = []
        for u, v in self.edges:
            a, b = im[u], im[v]
            edges.append((a, b) if a < b else (b, a))
        edges.sort()
        return trusted(GraphItem, n=self.n, edges=tuple(edges))

    def canonical(self):
        return self.edges

    def violations(self, labels: Sequence[str]) -> list[str]:
        out = []
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                out.append(f"edge ({u},{v}): vertex index out of range")
            elif u == v:
                out.append(f"self-loop at {labels[u]}")
            elif (u, v) in seen:
                out.append(f"multi-edge {labels[u]}-{labels[v]}")
            seen.add((u, v))
        return out

    def signatures(self, class_index: Sequence[int]) -> list:
        return [tuple(sorted(class_index[y] for y in a)) for a in self.adjacency]

    def extend_ok(self, mapping: dict, x: int, y: int) -> bool:
        ax, ay = self.adjacency[x], self.adjacency[y]
        return all((z in ax) == (w in ay) for z, w in mapping.items())


InfoItem = SwissItem | RoundRobinItem | VotingItem | CoalitionItem | GraphItem


def validate(item: InfoItem, n: int, labels: Sequence[str] | None = None) -> list[str]:
    """Problems with ``item`` as data on ``n`` players; empty means valid."""
    labels = list(labels) if labels is not None else default_labels(n)
    if item.n != n:
        return [f"{item.kind} item is on {item.n} players, expected {n}"]
    return item.violations(labels)


def act_item(sigma: Permutation, item: InfoItem) -> InfoItem:
    check_same_n(sigma.n, item.n, "permutation and item")
    return item.act(sigma)


def items_equal(h1: InfoItem, h2: InfoItem) -> bool:
    if h1.kind != h2.kind:
        raise KindMismatch(f"cannot compare {h1.kind} with {h2.kind}")
    if h1.n != h2.n:
        raise DimensionError(f"items on {h1.n} and {h2.n} players")
    if h1.kind == "swiss" and h1.rounds != h2.rounds:
        return False
    return h1.canonical() == h2.canonical()


def fixed_point(kind: str, n: int, rounds: int = 0) -> InfoItem:
    """The item every relabeling leaves alone: the record of nothing."""
    if kind == "swiss":
        return SwissItem(n, rounds)
    if kind == "roundrobin":
        return RoundRobinItem(n, tuple((x, y, 0) for x, y in combinations(range(n), 2)))
    if kind == "voting":
        return VotingItem(n)
    if kind == "coalition":
        return CoalitionItem.from_function(n, lambda m: 0)
    if kind == "graph":
        return GraphItem(n)
    raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")


def degree_standings(graph: GraphItem) -> WeakOrder:
    """Standings by vertex degree, highest first."""
    return WeakOrder.from_scores(graph.degrees())
