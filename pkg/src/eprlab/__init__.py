"""Desk-scale verification workbench for entangled-spin identities.

Modules:

* ``linalg`` -- dense complex linear algebra for up to four spins
* ``states`` -- constructors for the named states and observables
* ``stabilizer`` -- eigenrelation and joint-probability verification
* ``lhv`` -- exhaustive hidden-variable and local-correlation analysis
* ``landscape`` -- Bell-inequality scan over the angle plane
* ``sterngerlach`` -- seeded Monte Carlo of the sequential experiment
* ``cli`` -- the ``eprlab`` command-line entry point
"""

from .linalg import (
    DenseOperator,
    MeasurementRecord,
    StateVector,
    anticommutator,
    born_probabilities,
    collapse_measure,
    commutator,
    eigencheck,
    expectation,
    identity,
    kron,
    projector,
    spectral_norm,
)
from .states import (
    DirectionVector,
    GoldsteinParams,
    PauliStringSpec,
    bell_phi_minus,
    beta_vector,
    direction_operator,
    ghz_state,
    goldstein_state,
    pauli_string_operator,
    spin_eigenstate,
    uw_projectors,
)
from .stabilizer import (
    HardyTable,
    RelationReport,
    hardy_table,
    uw_commutator_norm,
    verify_bell_relations,
    verify_ghz_relations,
    verify_sigma_xy_observable,
)
from .lhv import (
    CorrelatedModel,
    ElementAssignment,
    HardyLhvInstance,
    PairProductConstraint,
    ParityConstraint,
    bell_parity_system,
    enumerate_parity,
    evaluate_correlated,
    ghz_parity_system,
    hardy_lhv_feasible,
    instance_from_table,
    parity_multiply_check,
    solve_signs,
)
from .landscape import (
    AngleGrid,
    LandscapeCell,
    ViolationRegion,
    analytic_correlation,
    export,
    f_value,
    max_violation,
    quantum_correlation,
    scan,
)
from .sterngerlach import BranchStats, ShotRecord, branch_probabilities, run_sequence

__version__ = "0.1.0"
