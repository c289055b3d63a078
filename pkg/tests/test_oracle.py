import random

import pytest

from orbit_tiebreak.corpus import builtin_example
from orbit_tiebreak.infospaces import KINDS, fixed_point
from orbit_tiebreak.orders import Partition, WeakOrder
from orbit_tiebreak.oracle import (
    brute_consistent_rule_count,
    brute_fixed_linear_orders,
    brute_orbit_partition,
    brute_stabilizer,
    partitions_refining,
    set_partitions,
)
from orbit_tiebreak.perm import Permutation, ResourceCapError
from orbit_tiebreak.randomgen import random_input
from orbit_tiebreak.stabilizer import Input, joint_stabilizer, orbit_partition
from orbit_tiebreak.tiebreak import count_consistent_rules


def test_corpus_examples():
    assert brute_stabilizer(builtin_example("condorcet")).order() == 3
    assert brute_stabilizer(builtin_example("two-pairs")).order() == 4
    assert brute_orbit_partition(builtin_example("three-way")) == Partition(((0, 1, 2), (3,)))
    assert brute_consistent_rule_count(builtin_example("three-way")) == 6
    assert brute_consistent_rule_count(builtin_example("two-pairs")) == 8


def test_fixed_points_give_full_group():
    for kind in KINDS:
        inp = Input.make(fixed_point(kind, 4), WeakOrder.all_tied(4))
        assert brute_stabilizer(inp).order() == 24


def test_fixed_linear_orders():
    assert brute_fixed_linear_orders(Permutation.from_cycles(4, (0, 1, 2))) == []
    assert len(brute_fixed_linear_orders(Permutation.identity(3))) == 6


def test_cap():
    inp = Input.make(fixed_point("graph", 9), WeakOrder.all_tied(9))
    with pytest.raises(ResourceCapError):
        brute_stabilizer(inp, cap=8)


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in set_partitions(range(k))) for k in range(7)] == [1, 1, 2, 5, 15, 52, 203]


def test_partitions_refining():
    w = WeakOrder(((0, 1), (2, 3, 4)))
    ps = list(partitions_refining(w))
    assert len(ps) == 2 * 5 and len(set(ps)) == len(ps)


@pytest.mark.parametrize("kind", KINDS)
def test_search_matches_oracle(kind, seed):
    rng = random.Random(seed + KINDS.index(kind))
    for _ in range(30):
        inp = random_input(rng, kind=kind, max_n=6)
        g = joint_stabilizer(inp)
        assert g.elements() == brute_stabilizer(inp).elements()
        omega = orbit_partition(inp)
        assert omega == brute_orbit_partition(inp)
        assert count_consistent_rules(inp, omega) == brute_consistent_rule_count(inp)
