"""Finite-layer Iwasawa algebra calculus for anticyclotomic theta elements."""

from .arithmetic import (
    ContextReport,
    CurveSpec,
    FieldSpec,
    check_hypotheses,
    count_points_ap,
    embedding_identities,
    gross_point_matrix_p,
    gross_point_matrix_split,
    kronecker,
    local_embedding_matrix,
    local_j_matrix,
    split_conductor,
)
from .errors import *  # noqa: F401,F403
from .fitting import PresentationMatrix, base_change, block_diag, diagonal, fitting_ideal
from .ideals import IdealHandle, contains, equals, is_principal, product, square
from .layer import (
    LayerElement,
    from_group,
    iota,
    mul,
    norm_map,
    norm_to,
    omega,
    project,
    project_to,
    to_group,
)
from .padic import PadicContext, PadicScalar, hecke_beta, inv_unit, sqrt_hensel, unit_root
from .theta import (
    StabilizedTower,
    ThetaTower,
    check_functional_eq,
    check_norm_compat,
    full_norm_ideal,
    gal_twist,
    generate_tower,
    lemma21_certificate,
    lemma22_certificate,
    lp_approx,
    mu_invariant,
    stabilize,
    two_generator_ideal,
    validate_tower,
    verify_lemma_21,
    verify_lemma_22,
    verify_main_identity,
)
from .zmod import ChainRing, HowellBasis, ZModMatrix, howell, minors, span_membership

__version__ = "0.1.0"
