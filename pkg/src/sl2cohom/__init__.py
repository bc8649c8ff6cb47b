"""Exact Farrell-Tate cohomology data for rank-one S-arithmetic groups."""

from .abelian import (
    DEFAULT_ENUMERATION_BOUND,
    EnumerationBoundExceeded,
    FinGenAbGroup,
    GroupHom,
    Involution,
    Orbit,
    cokernel,
    contains_in_image,
    involution_orbits,
    kernel,
    mod_ell_dimension,
    smith_normal_form,
)
from .arithdata import (
    ArithmeticDatum,
    DatumConsistencyError,
    DatumError,
    DatumParseError,
    PlaceSpec,
    QuadraticForm,
    build_split_datum,
    class_group_imaginary_quadratic,
    load_datum,
    s_unit_rank,
    save_datum,
)
from .cohomengine import (
    ComponentRing,
    Decomposition,
    FreenessCertificate,
    GateParams,
    Verdict,
    conjugacy_classes,
    component_ring,
    decompose_function_field,
    decompose_number_field,
    detection_verdict,
    freeness_certificate,
    graded_dimension,
    nonvanishing,
    refined_gate,
    subgroup_classes,
)
from .curve import (
    CurveSpec,
    EllipticMinusPoint,
    FiniteField,
    FiniteFieldSpec,
    P1Minus,
    PicardData,
    SingularCurveError,
    component_classes,
    count_and_structure_elliptic,
    pic_p1_minus,
)
from .essential import (
    GradedAlgebraSpec,
    GradedElement,
    essential_product,
    regularity_check,
    restrict,
    weyl_invariance,
)

__version__ = "0.1.0"
