"""Normal-subgroup order sums for finite group families.

The package computes D(G), the sum of the orders of all normal subgroups of
G, classifies groups by comparing D(G) with 2|G| (exactly twice: Leinster;
off by one: quasi/almost), provides closed-form D for cyclic, metacyclic,
affine, generalized dihedral and generalized dicyclic families, and backs
every formula with a brute-force oracle on explicit multiplication tables.
"""

from .families import (
    GroupClass,
    GroupKind,
    LatticeTriple,
    ZMTriple,
    affine_classify,
    affine_divisor_sum,
    classify_group,
    dicyclic_divisor_sum,
    dihedral_divisor_sum,
    generalized_dihedral_divisor_sum,
    nilpotent_classify,
    pq_divisor_sum,
    zm_divisor_sum,
    zm_normal_triples,
    zm_subgroup_triples,
    zm_validate,
)
from .numtheory import (
    Factorization,
    FactorizationError,
    NumberClass,
    classify_number,
    divisor_sum,
    divisors,
    even_perfect,
    factorize,
    is_prime,
    lucas_lehmer,
    mult_order,
    perfect_plus_one,
    prime_power_decompose,
)
from .oracle import (
    FiniteGroup,
    OrderCapError,
    Subgroup,
    all_subgroups,
    build_abelian,
    build_affine_prime,
    build_cyclic,
    build_direct_product,
    build_generalized_dicyclic,
    build_generalized_dihedral,
    build_zm,
    group_divisor_sum,
    is_nilpotent,
    normal_subgroups,
    quotient,
)
from .search import SearchRecord, SweepConfig, run_classify, run_perfect_plus_one, run_sweep
from .verify import InvariantResult, run_verify

__all__ = [
    "Factorization",
    "FactorizationError",
    "FiniteGroup",
    "GroupClass",
    "GroupKind",
    "InvariantResult",
    "LatticeTriple",
    "NumberClass",
    "OrderCapError",
    "SearchRecord",
    "Subgroup",
    "SweepConfig",
    "ZMTriple",
    "affine_classify",
    "affine_divisor_sum",
    "all_subgroups",
    "build_abelian",
    "build_affine_prime",
    "build_cyclic",
    "build_direct_product",
    "build_generalized_dicyclic",
    "build_generalized_dihedral",
    "build_zm",
    "classify_group",
    "classify_number",
    "dicyclic_divisor_sum",
    "dihedral_divisor_sum",
    "divisor_sum",
    "divisors",
    "even_perfect",
    "factorize",
    "generalized_dihedral_divisor_sum",
    "group_divisor_sum",
    "is_nilpotent",
    "is_prime",
    "lucas_lehmer",
    "mult_order",
    "nilpotent_classify",
    "normal_subgroups",
    "perfect_plus_one",
    "pq_divisor_sum",
    "prime_power_decompose",
    "quotient",
    "run_classify",
    "run_perfect_plus_one",
    "run_sweep",
    "run_verify",
    "zm_divisor_sum",
    "zm_normal_triples",
    "zm_subgroup_triples",
    "zm_validate",
]

__version__ = "0.1.0"
