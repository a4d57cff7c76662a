"""Weakly Schreier split extensions of finite monoids.

Monoids are Cayley tables with the identity at index 0.  The main entry
points are ``classify_extensions`` (admissible quotients paired with action
classes), ``functor_T`` / ``functor_S`` between extensions and those pairs,
and ``morphism_exists`` for the unique morphism between two extensions.
"""

from .action import (
    ActionClass,
    PreAction,
    actions_equivalent,
    enumerate_action_classes,
    is_action,
    weak_semidirect_product,
)
from .constructions import (
    coarse_action_compatible,
    coarse_quotient,
    disjoint_union_extension,
    glueing_collisions,
    glueing_quotient,
    is_prime_ideal,
    matrix_monoid,
    prime_ideal_quotient,
    right_invertible_submonoid,
    semilattice_glueing,
)
from .errors import *  # noqa: F401,F403
from .extension import (
    SchreierRetraction,
    SplitExtension,
    canonical_quotient,
    check_retraction_properties,
    enumerate_schreier_retractions,
    is_schreier,
    is_weakly_schreier,
    validate_split_extension,
    weak_semidirect_presentation,
)
from .monoid import (
    Congruence,
    FiniteMonoid,
    MonoidHom,
    Submonoid,
    chain,
    congruence_closure,
    cyclic_group,
    find_isomorphism,
    identity_hom,
    is_cokernel,
    kernel,
    product_monoid,
    quotient_monoid,
    trivial_monoid,
    validate_hom,
    validate_monoid,
    zero_hom,
)
from .quotient import AdmissibleQuotient, discrete_quotient, enumerate_admissible_quotients, is_admissible
from .wact import (
    WActObject,
    classify_extensions,
    extensions_isomorphic,
    functor_S,
    functor_T,
    morphism_exists,
    wact_leq,
)

__version__ = "0.1.0"
