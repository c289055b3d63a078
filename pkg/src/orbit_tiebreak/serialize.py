"""JSON documents: inputs, completions, rankings and permutations.

Players are indexed in the order of the ``players`` array.  Output is
canonical (sorted keys, fixed list order) so that parse and dump round trip
byte for byte.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from itertools import combinations
from typing import Any, Sequence

from .infospaces import (
    KINDS,
    CoalitionItem,
    Game,
    GraphItem,
    RoundRobinItem,
    SwissItem,
    VotingItem,
)
from .orders import LinearOrder, Partition, WeakOrder
from .perm import Permutation
from .stabilizer import Input, ValidationError
from .tiebreak import Completion

SCHEMA = "orbit-tiebreak/1"

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class InputError(ValidationError):
    """The document is malformed; each message carries a JSON path."""


class _Reader:
    def __init__(self, labels: Sequence[str]):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(labels)}
        self.errors: list[str] = []

    def fail(self, path: str, msg: str) -> None:
        self.errors.append(f"{path}: {msg}")

    def player(self, value, path: str) -> int | None:
        if not isinstance(value, str) or value not in self.index:
            self.fail(path, f"unknown player {value!r}")
            return None
        return self.index[value]

    def groups(self, value, path: str) -> list[list[int]] | None:
        if not isinstance(value, list) or not all(isinstance(g, list) for g in value):
            self.fail(path, "expected an array of arrays of player labels")
            return None
        out = []
        for i, g in enumerate(value):
            idx = [self.player(x, f"{path}[{i}][{j}]") for j, x in enumerate(g)]
            if None in idx:
                return None
            out.append(idx)
        return out

    def weak_order(self, value, path: str, what: str) -> WeakOrder | None:
        groups = self.groups(value, path)
        if groups is None:
            return None
        flat = [x for g in groups for x in g]
        if any(not g for g in groups):
            self.fail(path, f"{what} has an empty class")
            return None
        if len(flat) != len(set(flat)):
            self.fail(path, f"{what} lists a player twice")
            return None
        if len(flat) != len(self.labels):
            self.fail(path, f"{what} must cover all players")
            return None
        return WeakOrder(tuple(tuple(g) for g in groups), n=len(self.labels))


def _int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def parse_rational(value) -> Fraction:
    if _int(value):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value.strip()):
        return Fraction(value.strip())
    raise ValueError(f"expected an integer or a 'p/q' string, got {value!r}")


def coalition_key(mask: int, labels: Sequence[str]) -> str:
    members = sorted(labels[i] for i in range(len(labels)) if mask >> i & 1)
    sep = "" if all(len(lab) == 1 for lab in labels) else "|"
    return sep.join(members)


def _parse_coalition_key(key: str, rd: _Reader, path: str) -> int | None:
    if key == "":
        return 0
    single = all(len(lab) == 1 for lab in rd.labels)
    names = key.split("|") if ("|" in key or not single) else list(key)
    mask = 0
    for name in names:
        i = rd.player(name, path)
        if i is None:
            return None
        if mask >> i & 1:
            rd.fail(path, f"player {name!r} listed twice in coalition")
            return None
        mask |= 1 << i
    return mask


def _parse_info(info, rd: _Reader, n: int):
    if not isinstance(info, dict):
        rd.fail("info", "expected an object")
        return None
    kind = info.get("kind")
    if kind not in KINDS:
        rd.fail("info.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        return None
    if kind == "swiss":
        rounds = info.get("rounds", 0)
        if not _int(rounds):
            rd.fail("info.rounds", "expected an integer")
            return None
        games = []
        for k, g in enumerate(info.get("games", [])):
            path = f"info.games[{k}]"
            if not isinstance(g, dict):
                rd.fail(path, "expected an object")
                continue
            w = rd.player(g.get("white"), path + ".white")
            b = rd.player(g.get("black"), path + ".black")
            t = g.get("round")
            if not _int(t):
                rd.fail(path + ".round", "expected an integer")
                continue
            if w is not None and b is not None:
                games.append(Game(t, w, b, g.get("result")))
        return SwissItem(n, rounds, tuple(games))
    if kind == "roundrobin":
        entries = []
        for k, m in enumerate(info.get("matches", [])):
            path = f"info.matches[{k}]"
            if not isinstance(m, dict):
                rd.fail(path, "expected an object")
                continue
            x = rd.player(m.get("x"), path + ".x")
            y = rd.player(m.get("y"), path + ".y")
            d = m.get("diff")
            if not _int(d):
                rd.fail(path + ".diff", "expected an integer goal difference")
                continue
            if x is not None and y is not None:
                entries.append((x, y, d))
        return RoundRobinItem(n, tuple(entries))
    if kind == "voting":
        ballots = []
        for k, b in enumerate(info.get("ballots", [])):
            path = f"info.ballots[{k}]"
            if not isinstance(b, dict):
                rd.fail(path, "expected an object")
                continue
            w = rd.weak_order(b.get("order"), path + ".order", "ballot")
            c = b.get("count", 1)
            if not _int(c) or c < 0:
                rd.fail(path + ".count", "expected a nonnegative integer")
                continue
            if w is not None:
                ballots.append((w, c))
        return VotingItem(n, tuple(ballots))
    if kind == "coalition":
        values = info.get("values")
        if not isinstance(values, dict):
            rd.fail("info.values", "expected an object keyed by coalition")
            return None
        table = {}
        for key, v in values.items():
            path = f"info.values[{key!r}]"
            mask = _parse_coalition_key(key, rd, path)
            if mask is None:
                continue
            if mask in table:
                rd.fail(path, "coalition given twice")
                continue
            try:
                table[mask] = parse_rational(v)
            except ValueError as exc:
                rd.fail(path, str(exc))
        return CoalitionItem(n, tuple(table.items()))
    edges = []
    for k, e in enumerate(info.get("edges", [])):
        path = f"info.edges[{k}]"
        if not isinstance(e, list) or len(e) != 2:
            rd.fail(path, "expected a pair of player labels")
            continue
        u, v = rd.player(e[0], path + "[0]"), rd.player(e[1], path + "[1]")
        if u is not None and v is not None:
            edges.append((u, v))
    return GraphItem(n, tuple(edges))


def parse_input(text: bytes | str) -> Input:
    """Parse and validate an input document."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError([f"$: not UTF-8 ({exc})"]) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError([f"$: malformed JSON ({exc})"]) from exc
    return input_from_doc(doc)


def input_from_doc(doc: Any) -> Input:
    if not isinstance(doc, dict):
        raise InputError(["$: expected an object"])
    players = doc.get("players")
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise InputError(["players: expected an array of strings"])
    if len(set(players)) != len(players):
        dup = sorted({p for p in players if players.count(p) > 1})
        raise InputError([f"players: duplicate labels {dup}"])
    rd = _Reader(players)
    standings = rd.weak_order(doc.get("standings"), "standings", "standings")
    item = _parse_info(doc.get("info"), rd, len(players))
    if rd.errors:
        raise InputError(rd.errors)
    return Input.make(item, standings, players)


def _groups(groups, labels) -> list[list[str]]:
    return [[labels[x] for x in g] for g in groups]


def info_to_doc(item, labels: Sequence[str]) -> dict:
    if item.kind == "swiss":
        games = [
            {"round": g.round, "white": labels[g.white], "black": labels[g.black], "result": g.result}
            for g in item.games
        ]
        return {"kind": "swiss", "rounds": item.rounds, "games": games}
    if item.kind == "roundrobin":
        m = item.matrix
        matches = [
            {"x": labels[x], "y": labels[y], "diff": m[x, y]}
            for x, y in combinations(range(item.n), 2)
            if (x, y) in m
        ]
        return {"kind": "roundrobin", "matches": matches}
    if item.kind == "voting":
        ballots = [{"order": _groups(cls, labels), "count": c} for cls, c in item.canonical()]
        return {"kind": "voting", "ballots": ballots}
    if item.kind == "coalition":
        return {"kind": "coalition", "values": {coalition_key(m, labels): str(v) for m, v in item.values}}
    return {"kind": "graph", "edges": [[labels[u], labels[v]] for u, v in item.edges]}


def input_to_doc(inp: Input) -> dict:
    return {
        "players": list(inp.labels),
        "standings": _groups(inp.standings.classes, inp.labels),
        "info": info_to_doc(inp.item, inp.labels),
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def dump_input(inp: Input) -> str:
    return dumps(input_to_doc(inp))


def permutation_to_doc(sigma: Permutation, labels: Sequence[str]) -> dict:
    return {labels[i]: labels[sigma(i)] for i in range(sigma.n)}


def permutation_from_doc(doc: dict, labels: Sequence[str]) -> Permutation:
    index = {lab: i for i, lab in enumerate(labels)}
    try:
        images = [index[doc[lab]] for lab in labels]
        return Permutation(tuple(images))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError([f"$: not a permutation of the players ({exc})"]) from exc


def partition_to_doc(p: Partition, labels: Sequence[str]) -> list[list[str]]:
    return _groups(p.blocks, labels)


def ranking_to_doc(order: LinearOrder, labels: Sequence[str]) -> list[str]:
    return [labels[x] for x in order.ranking]


def parse_ranking(text: bytes | str, labels: Sequence[str]) -> LinearOrder:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError([f"$: malformed JSON ({exc})"]) from exc
    rd = _Reader(labels)
    if not isinstance(doc, list):
        raise InputError(["$: expected an array of player labels"])
    idx = [rd.player(x, f"[{i}]") for i, x in enumerate(doc)]
    if rd.errors:
        raise InputError(rd.errors)
    if sorted(idx) != list(range(len(labels))):
        raise InputError(["$: ranking must list every player exactly once"])
    return LinearOrder(tuple(idx))


def block_key(block: Sequence[int], labels: Sequence[str]) -> str:
    return "|".join(sorted(labels[x] for x in block))


def completion_to_doc(c: Completion, labels: Sequence[str]) -> dict:
    return {
        "beta": {block_key(b, labels): [labels[x] for x in order] for b, order in c.beta.items()},
        "gamma": {f"class{k}": [[labels[x] for x in b] for b in bs] for k, bs in c.gamma.items()},
    }


def completion_from_doc(doc: Any, labels: Sequence[str]) -> Completion:
    rd = _Reader(labels)
    if not isinstance(doc, dict) or not isinstance(doc.get("beta"), dict) or not isinstance(doc.get("gamma"), dict):
        raise InputError(["$: expected an object with 'beta' and 'gamma' objects"])
    beta = {}
    for key, order in doc["beta"].items():
        block = [rd.player(x, f"beta[{key!r}]") for x in key.split("|")]
        if not isinstance(order, list):
            rd.fail(f"beta[{key!r}]", "expected an array of player labels")
            continue
        ranked = [rd.player(x, f"beta[{key!r}][{i}]") for i, x in enumerate(order)]
        if None not in block and None not in ranked:
            beta[tuple(sorted(block))] = tuple(ranked)
    gamma = {}
    for key, blocks in doc["gamma"].items():
        m = re.fullmatch(r"class(\d+)", key)
        if not m:
            rd.fail(f"gamma[{key!r}]", "keys must look like 'class0'")
            continue
        groups = rd.groups(blocks, f"gamma[{key!r}]")
        if groups is not None:
            gamma[int(m.group(1))] = tuple(tuple(sorted(g)) for g in groups)
    if rd.errors:
        raise InputError(rd.errors)
    return Completion(beta, gamma)


def parse_completion(text: bytes | str, labels: Sequence[str]) -> Completion:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError([f"$: malformed JSON ({exc})"]) from exc
    return completion_from_doc(doc, labels)
