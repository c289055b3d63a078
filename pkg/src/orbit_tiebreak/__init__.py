"""Canonical and arbitrary parts of tie-breaking.

The orbit partition of the joint stabilizer of (auxiliary data, standings)
is the part of a tie-break forced by the data; a completion (orders inside
orbit blocks and on blocks inside each tied class) is the arbitrary rest.
"""

from .corpus import UnknownExample, builtin_example
from .infospaces import (
    CoalitionItem,
    Game,
    GraphItem,
    RoundRobinItem,
    SwissItem,
    VotingItem,
    act_item,
    degree_standings,
    fixed_point,
    items_equal,
    validate,
)
from .orders import (
    LinearOrder,
    Partition,
    WeakOrder,
    indifference_partition,
    is_consistent,
    refines,
    strict_refines,
)
from .perm import DimensionError, PermGroup, Permutation, ResourceCapError, act, compose, invert, orbits_of
from .serialize import InputError, dump_input, parse_input
from .stabilizer import (
    Input,
    SymmetricWitness,
    ValidationError,
    joint_stabilizer,
    orbit_partition,
    symmetric_witness,
    verify_no_fixed_linear_order,
)
from .tiebreak import (
    Completion,
    CompletionError,
    check_axioms,
    count_consistent_rules,
    default_completion,
    extract_completion,
    lift,
    pair_from_weak,
    validate_completion,
    weak_from_pair,
)

__version__ = "0.1.0"
