import itertools
import random

import pytest
from hypothesis import given, strategies as st

from orbit_tiebreak.corpus import builtin_example
from orbit_tiebreak.infospaces import fixed_point
from orbit_tiebreak.orders import (
    LinearOrder,
    Partition,
    WeakOrder,
    indifference_partition,
    is_consistent,
    refines,
    strict_refines,
)
from orbit_tiebreak.oracle import partitions_refining
from orbit_tiebreak.randomgen import random_completion, random_input, random_refinement
from orbit_tiebreak.stabilizer import Input, orbit_partition
from orbit_tiebreak.tiebreak import (
    Completion,
    CompletionError,
    check_axioms,
    comparison_provenance,
    count_consistent_rules,
    default_completion,
    extract_completion,
    lift,
    pair_from_weak,
    validate_completion,
    weak_from_pair,
)

from strategies import weak_orders

a, b, c, d = range(4)
AB, CD = (a, b), (c, d)


@pytest.fixture(scope="module")
def two_pairs():
    return builtin_example("two-pairs")


@pytest.fixture(scope="module")
def three_way():
    return builtin_example("three-way")


def _ab_cd():
    return Completion({AB: (a, b), CD: (c, d)}, {0: (AB, CD)})


def test_valid_completion(two_pairs):
    assert validate_completion(_ab_cd(), two_pairs) == []


def test_missing_block(two_pairs):
    problems = validate_completion(Completion({AB: (a, b)}, {0: (AB, CD)}), two_pairs)
    assert problems == ["beta is missing block {c,d}"]


def test_foreign_members(two_pairs):
    problems = validate_completion(Completion({AB: (a, c), CD: (c, d)}, {0: (AB, CD)}), two_pairs)
    assert any("outside" in p for p in problems)
    with pytest.raises(CompletionError):
        lift(Completion({AB: (a, c), CD: (c, d)}, {0: (AB, CD)}), two_pairs)


def test_lift_examples(two_pairs, three_way):
    assert lift(_ab_cd(), two_pairs).ranking == (a, b, c, d)
    comp = Completion({(a, b, c): (c, a, b), (d,): (d,)}, {0: ((a, b, c),), 1: ((d,),)})
    assert lift(comp, three_way).ranking == (c, a, b, d)


def test_lift_without_free_data():
    strict = WeakOrder(((c,), (a,), (b,)))
    inp = Input.make(fixed_point("graph", 3), strict)
    omega = orbit_partition(inp)
    assert count_consistent_rules(inp, omega) == 1
    assert lift(default_completion(inp, omega), inp, omega).ranking == (c, a, b)


def test_extract_examples(two_pairs, three_way):
    assert extract_completion(LinearOrder((a, b, c, d)), two_pairs) == _ab_cd()
    with pytest.raises(CompletionError, match=r"block \{a,b\} split by c"):
        extract_completion(LinearOrder((a, c, b, d)), two_pairs)
    comp = extract_completion(LinearOrder((c, a, b, d)), three_way)
    assert comp.beta[(a, b, c)] == (c, a, b)


def test_extract_rejects_reversed_standings(three_way):
    with pytest.raises(CompletionError, match="ranking puts d above a, reversing the standings"):
        extract_completion(LinearOrder((d, a, b, c)), three_way)


def test_weak_from_pair_examples():
    tied = WeakOrder.all_tied(4)
    assert weak_from_pair(Partition((AB, CD)), {0: (AB, CD)}, tied) == WeakOrder((AB, CD))
    w = WeakOrder(((b, d), (a,), (c,)))
    assert weak_from_pair(indifference_partition(w), {0: ((b, d),), 1: ((a,),), 2: ((c,),)}, w) == w
    order = weak_from_pair(Partition.discrete(4), {0: ((d,), (a,), (c,), (b,))}, tied)
    assert order == LinearOrder((d, a, c, b)).as_weak()


def test_weak_from_pair_shape_errors():
    tied = WeakOrder.all_tied(4)
    with pytest.raises(CompletionError):
        weak_from_pair(Partition((AB, CD)), {0: (AB,)}, tied)
    with pytest.raises(CompletionError):
        weak_from_pair(Partition(((a, c), (b, d))), {0: ((a, c),), 1: ((b, d),)}, WeakOrder((AB, CD)))


def test_pair_from_weak_examples():
    tied = WeakOrder.all_tied(4)
    assert pair_from_weak(WeakOrder((AB, CD)), tied) == (Partition((AB, CD)), {0: (AB, CD)})
    w = WeakOrder((AB, CD))
    assert pair_from_weak(w, w) == (Partition((AB, CD)), {0: (AB,), 1: (CD,)})
    p, delta = pair_from_weak(LinearOrder((b, a, d, c)).as_weak(), w)
    assert p.is_discrete() and delta == {0: ((b,), (a,)), 1: ((d,), (c,))}
    with pytest.raises(CompletionError):
        pair_from_weak(WeakOrder.all_tied(4), w)


def test_counts(two_pairs, three_way):
    assert count_consistent_rules(three_way) == 6
    assert count_consistent_rules(two_pairs) == 8
    path4 = builtin_example("path4")
    assert count_consistent_rules(path4) == 8


def test_axiom_examples(three_way):
    part = indifference_partition(three_way.standings)
    # path4 has orbits {a,b},{c,d}, strictly finer than its single standings class
    path4 = builtin_example("path4")
    r = check_axioms(indifference_partition(path4.standings), path4)
    assert (r.saturated, r.maximally_fine) == (True, False)
    r = check_axioms(Partition.discrete(4), path4)
    assert (r.saturated, r.maximally_fine) == (False, True)
    r = check_axioms(Partition(((a, c), (b, d))), path4)
    assert (r.saturated, r.maximally_fine) == (False, False)
    assert check_axioms(part, three_way).both
    with pytest.raises(CompletionError):
        check_axioms(Partition(((a, d), (b,), (c,))), three_way)


def test_default_completion(two_pairs, three_way):
    assert default_completion(two_pairs) == _ab_cd()
    assert lift(default_completion(two_pairs), two_pairs).ranking == (a, b, c, d)
    assert lift(default_completion(three_way), three_way).ranking == (a, b, c, d)
    pet = builtin_example("petersen")
    assert lift(default_completion(pet), pet).ranking == tuple(range(10))


def test_default_completion_follows_labels():
    inp = Input.make(fixed_point("graph", 3), WeakOrder.all_tied(3), ["z", "y", "x"])
    assert lift(default_completion(inp), inp).ranking == (2, 1, 0)


def test_provenance_accounting(three_way):
    order = lift(default_completion(three_way), three_way)
    prov = comparison_provenance(order, three_way)
    assert {(x, y): t for x, y, t in prov} == {
        (a, b): "beta", (a, c): "beta", (b, c): "beta",
        (a, d): "standings", (b, d): "standings", (c, d): "standings",
    }


def _consistent_orders(inp, omega):
    for r in itertools.permutations(range(inp.n)):
        t = LinearOrder(r)
        if strict_refines(t, inp.standings) and is_consistent(t, omega):
            yield t


def test_round_trips_random(seed):
    rng = random.Random(seed)
    for _ in range(120):
        inp = random_input(rng, max_n=5)
        omega = orbit_partition(inp)
        for _ in range(3):
            comp = random_completion(rng, inp, omega)
            t = lift(comp, inp, omega)
            assert strict_refines(t, inp.standings) and is_consistent(t, omega)
            assert extract_completion(t, inp, omega) == comp
        orders = list(_consistent_orders(inp, omega))
        assert len(orders) == count_consistent_rules(inp, omega)
        assert all(lift(extract_completion(t, inp, omega), inp, omega) == t for t in orders)
        prov = comparison_provenance(orders[0], inp, omega)
        ci = inp.standings.class_index
        cross = sum(1 for x, y in itertools.combinations(range(inp.n), 2) if ci[x] != ci[y])
        assert sum(1 for *_, t in prov if t == "standings") == cross
        assert len(prov) == inp.n * (inp.n - 1) // 2


def test_characterization_random(seed):
    rng = random.Random(seed + 7)
    for _ in range(60):
        inp = random_input(rng, max_n=5)
        omega = orbit_partition(inp)
        both = [p for p in partitions_refining(inp.standings) if check_axioms(p, inp, omega).both]
        assert both == [omega]


@given(weak_orders(6), st.randoms(use_true_random=False))
def test_weak_order_bijection(w, rnd):
    v = random_refinement(rnd, w)
    assert refines(indifference_partition(v), indifference_partition(w))
    p, delta = pair_from_weak(v, w)
    assert p == indifference_partition(v)
    assert weak_from_pair(p, delta, w) == v
    assert pair_from_weak(weak_from_pair(p, delta, w), w) == (p, delta)
