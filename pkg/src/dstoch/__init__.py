"""Exact computations with idempotents and principal ideals of the
semigroup of doubly stochastic matrices."""

from .green import DWitness, block_witness_oracle, find_conjugating_permutation, same_shape_d_witness, verify_d_witness
from .idempotents import (
    Idempotent,
    canonical_block_form,
    enumerate_idempotents,
    idempotent_from_partition,
    is_idempotent,
    partition_from_matrix,
)
from .ideals import (
    IdealHandle,
    contains_ideal,
    contains_matrix,
    describe_family,
    ideal_join,
    ideal_meet,
    ideal_of,
)
from .lattice import IdealLattice, build_lattice, export_dot, meet_join_table, verify_lattice_laws
from .partitions import (
    IntShape,
    SetPartition,
    bell_number,
    count_idempotents,
    count_idempotents_of_shape,
    enumerate_int_shapes,
    enumerate_set_partitions,
    partition_join,
    partition_meet,
    refines,
    shape_of,
    stirling2,
)
from .ratmat import (
    Matrix,
    Permutation,
    Rational,
    conjugate_by_permutation,
    irreducible_components,
    is_doubly_stochastic,
    is_permutation_matrix,
    is_stochastic,
    multiply,
    random_doubly_stochastic,
    rank,
)

__version__ = "0.1.0"
