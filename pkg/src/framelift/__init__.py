"""Numerical workbench for frame multipliers on weighted coefficient spaces.

The package answers one question many ways: when is a frame multiplier with
positive symbol mu an isomorphism between the weighted coefficient spaces
H^p_{m sqrt(mu)} and H^p_{m / sqrt(mu)}? Exact matrix identities, certified
two-sided constants, and scaling studies over Gabor and Bargmann-Fock kernel
frames each probe a piece of it.
"""

from .coorbit import (
    CoorbitSpace,
    LiftingReport,
    coercivity_check,
    coorbit_norm,
    duality_pairing,
    equivalence_constants,
    lifting_constants,
    lifting_theorem_pipeline,
    operator_norm_between,
)
from .fock import (
    FockLattice,
    beurling_density_lower,
    beurling_density_table,
    bulk_frame,
    embed_truncated,
    fock_gram_exact,
    fock_lifting_experiment,
    fock_multiplier,
)
from .frames import (
    Frame,
    NotAFrameError,
    canonical_dual,
    frame_bounds,
    gram,
    gram_identities_check,
    random_frame,
    reconstruct,
)
from .gabor import (
    GaborSystem,
    TFLattice,
    gabor_lifting_experiment,
    gabor_system,
    gaussian_window,
    stft,
    tf_shift,
)
from .kernels import JIT_ENABLED
from .matalg import (
    DecayProfile,
    conjugate,
    decay_constant,
    operator_norm,
    pseudo_inverse,
    schur_constant,
    schur_product_constant,
    verify_weighted_invertibility,
    weighted_pseudo_inverse,
)
from .multipliers import (
    Multiplier,
    Slots,
    galerkin,
    invertibility_matrix,
    invertibility_verdicts,
    multiplier,
    op_from_matrix,
    spectral_invariance_suite,
)
from .weights import IndexSet, Weight, diag_lift, moderateness_constant, weighted_norm

__version__ = "0.1.0"

__all__ = [
    "CoorbitSpace",
    "DecayProfile",
    "FockLattice",
    "Frame",
    "GaborSystem",
    "IndexSet",
    "JIT_ENABLED",
    "LiftingReport",
    "Multiplier",
    "NotAFrameError",
    "Slots",
    "TFLattice",
    "Weight",
    "beurling_density_lower",
    "beurling_density_table",
    "bulk_frame",
    "canonical_dual",
    "coercivity_check",
    "conjugate",
    "coorbit_norm",
    "decay_constant",
    "diag_lift",
    "duality_pairing",
    "embed_truncated",
    "equivalence_constants",
    "fock_gram_exact",
    "fock_lifting_experiment",
    "fock_multiplier",
    "frame_bounds",
    "gabor_lifting_experiment",
    "gabor_system",
    "galerkin",
    "gaussian_window",
    "gram",
    "gram_identities_check",
    "invertibility_matrix",
    "invertibility_verdicts",
    "lifting_constants",
    "lifting_theorem_pipeline",
    "moderateness_constant",
    "multiplier",
    "op_from_matrix",
    "operator_norm",
    "operator_norm_between",
    "pseudo_inverse",
    "random_frame",
    "reconstruct",
    "schur_constant",
    "schur_product_constant",
    "spectral_invariance_suite",
    "stft",
    "tf_shift",
    "verify_weighted_invertibility",
    "weighted_norm",
    "weighted_pseudo_inverse",
    "__version__",
]
