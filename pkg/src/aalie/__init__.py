"""aalie: exact and numerical computations in complex almost Abelian Lie groups.

Build the group from (eigenvalue, block size, multiplicity) data, evaluate
its exponential and group law, and decide structural questions (center,
discreteness, compactness, maximal compact subgroup) exactly where the
arithmetic permits and numerically with a controlled tolerance otherwise.
"""

from .errors import (
    AalieError,
    AmbientMismatch,
    DegenerateAlgebra,
    DependentBasis,
    DimensionMismatch,
    InexactGenerator,
    MathDomainError,
    NotAbelian,
    NotCentral,
    NotContained,
    NotDiscrete,
    NotInAbelianDomain,
    NotInvariant,
    ParseError,
    RankBoundViolated,
    SingularPhi,
    ValidationError,
)
from .exactnum import (
    ExactScalar,
    ExactVector,
    GaussianRational,
    PI,
    Rational,
    TWO_PI,
    default_tolerance,
    gaussian,
    scalar,
    set_default_tolerance,
    tau_multiple,
    vector,
)
from .group import (
    AlgebraElement,
    CenterDescription,
    GroupElement,
    algebra_element,
    center,
    commutator,
    element,
    embed,
    exp_map,
    identity,
    inverse,
    is_central,
    is_simply_connected_twoblock,
    log_abelian,
    mul,
)
from .matrixfn import (
    exp_tj,
    hermite_normal_form,
    hermite_smith,
    kernel_basis_exp_minus_id,
    kernel_basis_j,
    phi0,
    phi1,
    rank_exact,
    series_exp_oracle,
    smith_normal_form,
)
from .quotients import (
    FinGenCertificate,
    Lattice,
    MaximalCompactCandidate,
    QuotientGroup,
    QuotientShape,
    commutator_phi,
    finite_generation_certificate,
    is_compact_subgroup,
    is_projection_discrete,
    make_lattice,
    maximal_compact_candidate,
    projection,
    purity_split,
    quotient_shape,
    validate_quotient,
    whole_group_noncompact,
)
from .spectrum import (
    JordanMatrix,
    MultiplicityFunction,
    TAlephKind,
    TAlephResult,
    in_t_aleph,
    jordan_matrix,
    k_set_contains,
    multiplicity_function,
    t_aleph,
    x_aleph_max,
)
from .subgroups import (
    SubgroupDescriptor,
    intersect,
    lift_subgroup,
    make_descriptor,
    minimal_complex_subgroup,
    straighten,
    subgroup_contains,
)

__version__ = "0.1.0"
