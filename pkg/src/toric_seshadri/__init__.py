"""Exact computations for equivariant vector bundles on toric varieties.

Projective spaces and Bott towers, Klyachko filtrations, splitting types on
invariant curves, nefness, Mori cones of projectivized bundles and Seshadri
constants. All arithmetic is exact (integers and ``fractions.Fraction``).
"""

from .errors import (
    AmbiguousPairingError,
    CompatibilityError,
    HypothesisError,
    InconsistentDataError,
    PreconditionError,
    ToricError,
    ValidationError,
)
from .fan import (
    CurveClass,
    DivisorClass,
    Fan,
    InvariantCurve,
    build_bott_tower,
    build_projective_space,
    curve_class,
    intersection_number,
)
from .klyachko import (
    EquivariantBundle,
    RestrictionProfile,
    SplittingType,
    adapted_decomposition,
    associated_characters,
    builtin,
    from_characters,
    from_filtrations,
    restrict_to_curve,
    restriction_profile,
    twist,
    twist_bundle,
)
from .positivity import is_ample, is_nef, mori_generators, mu_min, pe_class_nef
from .seshadri import (
    Exact,
    Interval,
    check_hypotheses,
    gamma_level,
    gamma_mu,
    make_point,
    seshadri,
    seshadri_hirzebruch,
    seshadri_projective,
    seshadri_x3,
)
from .subspace import Filtration, Subspace, span

__version__ = "0.1.0"
