"""Spike matroids over GF(2).

Construct binary and general spikes, apply the es-splitting operation at
matrix or circuit level, relax circuit-hyperplanes, and machine-check the
structure theorems that govern which splits of the rank-r binary spike
produce the rank-(r+1) one.
"""

from .errors import (
    DimensionMismatch,
    ElementNotInX,
    InvalidC3,
    InvalidCircuitFamily,
    LoopElement,
    MemoryBudget,
    NotBinary,
    NotCircuitHyperplane,
    ParityMismatch,
    RankTooSmall,
    ReservedLabel,
    SpikesError,
    UnknownLabel,
    Unsupported,
)
from .gf2 import BitVec, GF2Matrix, add_row, col_xor, column, hstack, nullspace_vectors, rank, rref
from .matroid import (
    CircuitFamily,
    CircuitRep,
    Matroid,
    VectorRep,
    circuit_supports,
    circuits,
    circuits_bruteforce,
    cocircuits,
    independence_oracle,
    is_3connected,
    is_binary_by_symdiff,
    matroids_equal,
    rank_of,
    sort_labels,
    spike_isomorphic,
    verify_circuit_axioms,
)
from .spike import (
    SpikeDescriptor,
    binary_spike,
    binary_spike_matrix,
    build_spike,
    circuit_count_formula,
    is_circuit_hyperplane,
    leg_pairs,
    phi_family,
    phi_union,
    recognize_spike,
    relax,
    spike_labels,
)
from .essplit import (
    EVEN,
    EX,
    ODD_X_IS_E,
    ODD_X_PHI3,
    OX,
    SplitResult,
    SplitSpec,
    classify_circuit,
    es_split,
    es_split_circuits,
    es_split_matrix,
    psi_family,
    relabel_matroid,
    relabel_to_spike,
)
from .verify import (
    ClaimReport,
    check_even_rank_theorem,
    check_lemma,
    check_odd_rank_theorem,
    check_parity,
    check_prop1_agreement,
    check_prop1_sampled,
    check_prop2,
    check_relaxation_chain,
    check_remark14,
    check_theorem5,
    enumerate_good_splits,
    run_suite,
    split_outcome_table,
)

__version__ = "0.1.0"
