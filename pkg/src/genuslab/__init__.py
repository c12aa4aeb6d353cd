"""Desk-scale arithmetic behind the genus of quadratic forms over affine
elliptic coordinate rings: finite fields, curve class groups, ideal and
Kummer-pair arithmetic, fixed orthogonal groups, and the non-injectivity
certificate, with a CLI that replays the two worked examples.
"""

__version__ = "0.1.0"

from .coordring import (
    CoordRing,
    FractionalIdeal,
    RingElement,
    divide_exact,
    ideal_equal,
    ideal_membership,
    ideal_product,
    ideal_power,
    is_principal,
    is_square_in_ring,
    ring_arith,
    units,
)
from .curves import (
    AbelianStructure,
    CurveData,
    CurvePoint,
    SingularCurveError,
    add_points,
    enumerate_points,
    group_structure,
    hasse_weil_check,
    m_torsion_count,
    scalar_mul,
    trace_kernel,
)
from .fields import FieldElement, FieldSpec, arith, is_square, make_field
from .fixedgroup import (
    CentralizerBasis,
    FixedGroupReport,
    centralizer_basis,
    fixed_orthogonal_order,
    generated_group_order,
    orthogonal_transporter,
)
from .forms import (
    DiscriminantModule,
    GramForm,
    GroupRep,
    block_permutation_rep,
    diagonal_form,
    discriminant,
    fiber_gamma_isometry,
    fiber_isometry,
    identity_form,
    is_gamma_form,
    is_isotropic,
    make_form,
    s3_rank2_rep,
    swap_rep,
    trivial_rep,
)
from .genus import (
    Certificate,
    GenusReport,
    build_genus_report,
    certify_non_injection,
    genus_size,
    kernel_to_K_mu2,
    mu_m_h1_size,
    no_injection_possible,
    norm_torus_genus,
    proper_gamma_genus_size_gm,
    scan,
    suggest_fiber_field,
)
from .kummer import (
    KummerPair,
    NotPrincipalError,
    TorsorAlgebra,
    algebra_multiply,
    make_kummer_pair,
    torsor_trivial_over_ring,
)
from .verdicts import BudgetExceeded, Kind, Verdict
