"""Separating homomorphisms between finite function groups."""

from .codes import (
    LinearCode,
    MonomialWitness,
    code_automorphisms,
    code_from_matrix,
    hamming_7_4,
    monomial_equivalence,
    verify_isometry_is_monomial,
    weight_enumerator,
)
from .errors import HypothesisFailed, SepcompError
from .fgroups import (
    FunctionGroup,
    SetFamily,
    Verdict,
    closure_generate,
    detached,
    full_function_group,
    omega_extension_closure,
    product_function_group,
    separated,
)
from .groups import (
    FiniteGroup,
    GroupMorphism,
    automorphism_group,
    endomorphisms,
    homomorphisms,
    make_cyclic,
    make_direct_product,
    make_from_table,
    make_symmetric,
)
from .homs import (
    GroupHom,
    WeightedComposition,
    hom_from_function,
    hom_from_images,
    is_separating,
    is_weakly_separating,
    minimal_supports,
    represent,
    represent_iso,
    support_map,
    weight_map,
)
from .io import Workspace, parse_text, parse_workspace

__version__ = "0.1.0"
