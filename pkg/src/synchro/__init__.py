"""Synchrony analysis for weighted multi-edge coupled cell networks.

Networks carry monoid-valued in-adjacency matrices; colorings of the cells
are balanced when same-colored cells receive equal per-color weight sums.
This package decides balance, refines any seed coloring to the coarsest
balanced one below it, builds quotient networks, enumerates the lattice of
balanced colorings, and verifies the synchrony-invariance story by
simulating admissible dynamics.
"""

from .balance import (
    BalanceResult,
    QuotientResult,
    RowSignature,
    check_transitivity,
    is_balanced,
    quotient,
    quotient_relation_holds,
    row_signature,
)
from .cir import CirTrace, cir, cir_iteration, kernel_name, top
from .dynamics import (
    Coupling,
    GFunc,
    IndicatorOracle,
    Oracle,
    OracleSpec,
    Trajectory,
    admissible_eval,
    coupling_oracle,
    linear_oracle,
    linearity_check,
    oracle_consistency_check,
    quotient_match,
    simulate_map,
    simulate_ode,
    trajectory_csv,
    unbalance_witness,
)
from .errors import (
    DimensionMismatch,
    MonoidMismatch,
    NotBalancedError,
    PartitionError,
    SchemaError,
    SimulationDiverged,
    SizeLimitError,
    SynchroError,
    WitnessError,
)
from .lattice import (
    BalancedLattice,
    brute_force_balanced,
    enumerate_balanced,
    join,
    lattice_dot,
    lattice_json,
    meet,
)
from .monoid import (
    ANNIHILATOR,
    SHORT,
    FreeCommutative,
    LawCheckReport,
    MonoidRegistry,
    MonoidSpec,
    NaturalAdd,
    NaturalMul,
    ProductMonoid,
    ResistorParallel,
    WithAnnihilator,
    combine,
    is_identity,
    law_check,
    monoid_sum,
    product_monoid,
)
from .network import (
    Network,
    RowView,
    in_neighborhood,
    network_from_json,
    network_to_json,
    parse_network,
    serialize_network,
    to_dot,
)
from .partition import (
    Partition,
    PolyPoint,
    common_refinement,
    compose,
    format_partition,
    is_finer,
    lift,
    parse_partition,
    project,
    quotient_partition,
)

__version__ = "0.1.0"
