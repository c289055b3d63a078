"""Invariant suite run by ``orbit-tiebreak verify`` on a single input."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from . import oracle
from .orders import LinearOrder, indifference_partition, is_consistent, refines, strict_refines
from .perm import DEFAULT_CLOSURE_CAP, Permutation, act, closure, compose, invert, orbits_of
from .randomgen import random_completion, random_permutation, random_refinement
from .stabilizer import Input, joint_stabilizer, symmetric_witness, verify_no_fixed_linear_order
from .tiebreak import (
    check_axioms,
    count_consistent_rules,
    default_completion,
    extract_completion,
    lift,
    pair_from_weak,
    weak_from_pair,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def verify_input(
    inp: Input,
    *,
    use_oracle: bool = False,
    seed: int = 0,
    trials: int = 20,
    node_cap: int | None = None,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
    oracle_cap: int | None = None,
) -> list[CheckResult]:
    rng = random.Random(seed)
    results: list[CheckResult] = []

    def record(name, ok, detail=""):
        results.append(CheckResult(name, bool(ok), "" if ok else detail))

    n = inp.n
    group = joint_stabilizer(inp, node_cap)
    omega = orbits_of(group)
    part = indifference_partition(inp.standings)

    bad = [g.format(inp.labels) for g in group.generators if not inp.is_fixed_by(g)]
    record("generators fix the input", not bad, f"not fixed by {bad}")
    record("orbit partition refines the standings", refines(omega, part), "an orbit crosses two classes")

    wit = symmetric_witness(inp, group)
    if wit is None:
        record("no witness iff all orbits are singletons", omega.is_discrete(), "non-singleton orbit without witness")
    else:
        ok = wit.x != wit.y and wit.sigma(wit.x) == wit.y and inp.is_fixed_by(wit.sigma)
        record("witness lies in the stabilizer and moves x to y", ok, f"witness {wit}")
        cert = verify_no_fixed_linear_order(wit.sigma, inp.standings)
        record("witness fixes no linear order (cycle certificate)", cert.is_valid(), cert.describe(inp.labels))

    sigmas = [random_permutation(rng, n) for _ in range(trials)]
    small = n <= 6
    elems = group.elements(closure_cap) if small else None
    for sigma in sigmas:
        moved = inp.act(sigma)
        other = joint_stabilizer(moved, node_cap)
        if orbits_of(other) != act(sigma, omega):
            record("orbit partition is equivariant", False, f"fails for {sigma.format(inp.labels)}")
            break
        if small:
            conj = {compose(compose(sigma, Permutation(e)), invert(sigma)).images for e in elems}
            if conj != set(other.elements(closure_cap)):
                record("stabilizer conjugation law", False, f"fails for {sigma.format(inp.labels)}")
                break
    else:
        record("orbit partition is equivariant", True)
        if small:
            record("stabilizer conjugation law", True)

    comps = [default_completion(inp, omega)] + [random_completion(rng, inp, omega) for _ in range(trials)]
    legal = all(
        strict_refines(t, inp.standings) and is_consistent(t, omega) for t in (lift(c, inp, omega) for c in comps)
    )
    record("lifts are legal partition-consistent rankings", legal, "a lift breaks the standings or splits a block")
    rt = all(extract_completion(lift(c, inp, omega), inp, omega) == c for c in comps)
    record("extract(lift(C)) == C", rt, "round trip changed a completion")

    if n <= 6:
        consistent = [
            LinearOrder(r)
            for r in itertools.permutations(range(n))
            if strict_refines(LinearOrder(r), inp.standings) and is_consistent(LinearOrder(r), omega)
        ]
        ok = all(lift(extract_completion(t, inp, omega), inp, omega) == t for t in consistent)
        record("lift(extract(T)) == T for every consistent T", ok, "round trip changed a ranking")
        record(
            "completion count matches enumeration",
            len(consistent) == count_consistent_rules(inp, omega),
            f"{len(consistent)} enumerated vs {count_consistent_rules(inp, omega)} counted",
        )

    if n <= 5:
        both = [p for p in oracle.partitions_refining(inp.standings) if check_axioms(p, inp, omega).both]
        record("only the orbit partition satisfies both axioms", both == [omega], f"got {both}")

    ok = True
    for _ in range(trials):
        v = random_refinement(rng, inp.standings)
        p, delta = pair_from_weak(v, inp.standings)
        if weak_from_pair(p, delta, inp.standings) != v or pair_from_weak(weak_from_pair(p, delta, inp.standings), inp.standings) != (p, delta):
            ok = False
            break
    record("weak-order bijection round trips", ok, "round trip changed a weak order")

    if use_oracle:
        brute = oracle.brute_stabilizer(inp, oracle_cap)
        record("stabilizer matches brute force", brute.elements() == group.elements(closure_cap), "element sets differ")
        record("orbit partition matches brute force", oracle.brute_orbit_partition(inp, oracle_cap) == omega, "partitions differ")
        record(
            "completion count matches brute force",
            oracle.brute_consistent_rule_count(inp, oracle_cap) == count_consistent_rules(inp, omega),
            "counts differ",
        )
        if wit is not None:
            fixed = oracle.brute_fixed_linear_orders(wit.sigma, oracle_cap)
            record("brute force finds no order fixed by the witness", not fixed, f"{len(fixed)} fixed orders")
    return results
