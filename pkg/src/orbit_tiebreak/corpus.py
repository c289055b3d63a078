"""Built-in worked examples.

``condorcet``   three cyclic ballots on a, b, c; all tied
``two-pairs``   eight ballots, two each of abcd, bacd, abdc, badc; all tied
``three-way``   round robin, a>b>c>a by +1 and each of a, b, c beats d by +1
``petersen``    the Petersen graph with degree standings
``path4``       the path a-c-d-b, all tied; automorphisms {id, (a b)(c d)}
``empty:<kind>:<n>``  the data-free item of a kind, all tied
"""

from __future__ import annotations

from .infospaces import KINDS, GraphItem, RoundRobinItem, VotingItem, degree_standings, default_labels, fixed_point
from .orders import WeakOrder
from .stabilizer import Input


class UnknownExample(LookupError):
    pass


NAMES = ("condorcet", "two-pairs", "three-way", "petersen", "path4")


def _ballot(*ranking: int) -> WeakOrder:
    return WeakOrder(tuple((x,) for x in ranking))


def condorcet() -> Input:
    a, b, c = range(3)
    item = VotingItem(3, ((_ballot(a, b, c), 1), (_ballot(b, c, a), 1), (_ballot(c, a, b), 1)))
    return Input.make(item, WeakOrder.all_tied(3))


def two_pairs() -> Input:
    a, b, c, d = range(4)
    ballots = tuple((_ballot(*r), 2) for r in ((a, b, c, d), (b, a, c, d), (a, b, d, c), (b, a, d, c)))
    return Input.make(VotingItem(4, ballots), WeakOrder.all_tied(4))


def three_way() -> Input:
    a, b, c, d = range(4)
    entries = ((a, b, 1), (b, c, 1), (c, a, 1), (a, d, 1), (b, d, 1), (c, d, 1))
    return Input.make(RoundRobinItem(4, entries), WeakOrder(((a, b, c), (d,))))


def petersen_graph() -> GraphItem:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return GraphItem(10, tuple(outer + spokes + inner))


def petersen() -> Input:
    g = petersen_graph()
    return Input.make(g, degree_standings(g))


def path4() -> Input:
    a, b, c, d = range(4)
    return Input.make(GraphItem(4, ((a, c), (c, d), (d, b))), WeakOrder.all_tied(4))


def builtin_example(name: str) -> Input:
    if name.startswith("empty:"):
        parts = name.split(":")
        if len(parts) != 3 or parts[1] not in KINDS or not parts[2].isdigit() or int(parts[2]) < 1:
            raise UnknownExample(f"expected empty:<kind>:<n> with kind in {', '.join(KINDS)} and n >= 1, got {name!r}")
        n = int(parts[2])
        return Input.make(fixed_point(parts[1], n), WeakOrder.all_tied(n), default_labels(n))
    builders = {
        "condorcet": condorcet,
        "two-pairs": two_pairs,
        "three-way": three_way,
        "petersen": petersen,
        "path4": path4,
    }
    if name not in builders:
        raise UnknownExample(f"unknown example {name!r}; known: {', '.join(NAMES)}, empty:<kind>:<n>")
    return builders[name]()
