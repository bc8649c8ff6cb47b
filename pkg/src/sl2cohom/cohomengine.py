"""Structure of Farrell-Tate cohomology for rank-one S-arithmetic groups.

Given an arithmetic datum, this module decides non-vanishing, counts
conjugacy classes of odd-prime-order elements and of the cyclic subgroups
they generate, builds the component rings of the direct-sum decomposition
indexed by those subgroup classes, extracts graded dimensions, certifies
freeness over the degree-4 periodic subring hit by the second Chern
class, and runs the rank-comparison detection test.  The function-field
analogue decomposes along inversion classes of the Picard group of a
punctured curve.

Component-ring shapes (all over the field with ell elements):

* ``NonInvariant(d)``  Laurent algebra on one degree-2 generator tensor an
  exterior algebra on d degree-1 generators.
* ``Invariant(d)``     the subring of ``NonInvariant(d)`` fixed by the sign
  action negating every generator.
* ``UnitsFF(r)``       polynomial on one degree-2 generator tensor exterior
  on one degree-1 generator and r further degree-1 generators (ordinary
  cohomology of the unit group of the coordinate ring).
* ``MonomialFF(r)``    the sign-fixed subring of ``UnitsFF(r)`` (cohomology
  of the monomial-matrix subgroup).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .abelian import (
    DEFAULT_ENUMERATION_BOUND,
    FinGenAbGroup,
    GroupHom,
    contains_in_image,
    is_prime,
    kernel,
)
from .arithdata import ArithmeticDatum
from .curve import (
    CurveSpec,
    FiniteFieldSpec,
    P1Minus,
    PicardData,
    component_classes,
    picard_of_curve,
)

DEFAULT_DEGREE_BOUND = 12

FARRELL_TATE_SHAPES = ("NonInvariant", "Invariant")
FUNCTION_FIELD_SHAPES = ("UnitsFF", "MonomialFF")
ALL_SHAPES = FARRELL_TATE_SHAPES + FUNCTION_FIELD_SHAPES


# ---------------------------------------------------------------------------
# component rings and graded dimensions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentRing:
    kind: str
    rank: int
    origin: str = ""

    def __post_init__(self):
        if self.kind not in ALL_SHAPES:
            raise ValueError(f"unknown component shape {self.kind!r}")
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")

    @property
    def is_laurent(self) -> bool:
        return self.kind in FARRELL_TATE_SHAPES

    @property
    def rank_letter(self) -> str:
        return "d" if self.is_laurent else "r"


def graded_dimension(component: ComponentRing, n: int) -> int:
    """Dimension of the component ring in cohomological degree n.

    The Laurent shapes are nonzero in negative degrees and 4-periodic;
    the ordinary-cohomology shapes vanish below degree 0.
    """
    d = component.rank
    kind = component.kind
    if kind == "NonInvariant":
        return sum(comb(d, k) for k in range(d + 1) if (n - k) % 2 == 0)
    if kind == "Invariant":
        # monomial (degree-2 gen)^m x_T invariant iff m + |T| even,
        # which for 2m + |T| = n means n + |T| = 0 mod 4
        return sum(comb(d, k) for k in range(d + 1) if (n + k) % 4 == 0)
    if n < 0:
        return 0
    if kind == "UnitsFF":
        return sum(comb(d, k) for k in range(min(d, n) + 1))
    # MonomialFF: monomial b^m a^delta x_T with 2m + delta + |T| = n,
    # kept when m + delta + |T| is even
    total = 0
    for k in range(min(d, n) + 1):
        delta = (n - k) % 2
        m = (n - k - delta) // 2
        if m >= 0 and (m + delta + k) % 2 == 0:
            total += comb(d, k)
    return total


def freeness_basis_degrees(component: ComponentRing) -> tuple[int, ...]:
    """Degrees of a module basis over the degree-4 periodic base ring.

    Laurent shapes are free over the Laurent subring generated by the
    square of the degree-2 generator, with basis the monomials whose
    degree-2 exponent is 0 or 1; the ordinary shapes are free over the
    polynomial subring on that square.  Sign-fixed shapes keep the basis
    monomials with even total sign weight.
    """
    d = component.rank
    degrees: list[int] = []
    if component.is_laurent:
        for eps in (0, 1):
            for k in range(d + 1):
                if component.kind == "Invariant" and (eps + k) % 2:
                    continue
                degrees.extend([2 * eps + k] * comb(d, k))
    else:
        for eps in (0, 1):
            for delta in (0, 1):
                for k in range(d + 1):
                    if component.kind == "MonomialFF" and (eps + delta + k) % 2:
                        continue
                    degrees.extend([2 * eps + delta + k] * comb(d, k))
    return tuple(sorted(degrees))


# ---------------------------------------------------------------------------
# decompositions and verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberFieldContext:
    datum: ArithmeticDatum


@dataclass(frozen=True)
class FunctionFieldContext:
    curve: CurveSpec
    field: FiniteFieldSpec
    ell: int
    picard: PicardData


@dataclass(frozen=True)
class Decomposition:
    components: tuple[ComponentRing, ...]
    context: object
    nonvanishing: bool
    advisories: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.nonvanishing and self.components:
            raise ValueError("a vanishing decomposition must have no components")


@dataclass(frozen=True)
class Verdict:
    kind: str  # Nonvanishing | Detection | QuillenFreeness | RefinedGate
    outcome: str  # holds | fails | inconclusive
    witness: tuple | None = None
    note: str = ""

    def __post_init__(self):
        if self.kind not in ("Nonvanishing", "Detection", "QuillenFreeness", "RefinedGate"):
            raise ValueError(f"unknown verdict kind {self.kind!r}")
        if self.outcome not in ("holds", "fails", "inconclusive"):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.outcome == "fails" and self.witness is None:
            raise ValueError("a failing verdict must carry a witness")


@dataclass(frozen=True)
class ConjugacyClassSet:
    """The set of conjugacy classes of elements of order ell.

    It is an extension of ker(nm0) by coker(Nm1); only the cardinality
    and the orbit structure of the order-two symmetry are used, so the
    set is materialized as the product of the two groups and the
    extension class is recorded as unresolved.
    """

    order: int
    coker: FinGenAbGroup
    ker: FinGenAbGroup
    elements: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] | None

    @property
    def description(self) -> str:
        return (f"extension of ker(nm0) = {self.ker} by coker(Nm1) = {self.coker}, "
                f"materialized as their product set (extension class unresolved)")


@dataclass(frozen=True)
class SubgroupClass:
    index: int
    representative: tuple[tuple[int, ...], tuple[int, ...]]
    orbit: tuple
    invariant: bool


@dataclass(frozen=True)
class ComponentFreeness:
    component: int
    base: str  # laurent | polynomial
    basis_degrees: tuple[int, ...]


@dataclass(frozen=True)
class FreenessCertificate:
    """Degreewise witness that each component is free over the periodic base.

    For every scanned degree n the component dimension equals the number
    of basis degrees congruent to n mod 4 (for a polynomial base, also at
    most n).  The certificate records in addition that the second Chern
    class restricts to the sum of the squared degree-2 generators of the
    components, which acts as a non-zero-divisor whenever the
    decomposition is non-empty.
    """

    components: tuple[ComponentFreeness, ...]
    verified_up_to: int
    chern_restriction: str
    chern_non_zero_divisor: bool

    def verdict(self) -> Verdict:
        return Verdict(kind="QuillenFreeness", outcome="holds",
                       note=f"degreewise identity verified up to degree {self.verified_up_to}")


# ---------------------------------------------------------------------------
# number-field operations
# ---------------------------------------------------------------------------

def nonvanishing(datum: ArithmeticDatum) -> Verdict:
    """Cohomology is nonzero iff the trace lies in K and the Steinitz class
    is a norm."""
    violated = []
    if not datum.trace_in_K:
        violated.append("trace_in_K")
    elif not contains_in_image(datum.nm0, datum.steinitz):
        violated.append("steinitz_in_image_nm0")
    if violated:
        return Verdict(kind="Nonvanishing", outcome="fails", witness=tuple(violated))
    return Verdict(kind="Nonvanishing", outcome="holds")


def conjugacy_classes(datum: ArithmeticDatum,
                      bound: int = DEFAULT_ENUMERATION_BOUND) -> ConjugacyClassSet:
    """Conjugacy classes of order-ell elements, counted exactly.

    Requires non-vanishing.  The count is |coker(Nm1)| * |ker(nm0)|; the
    element set is materialized when both factors fit the bound.
    """
    if nonvanishing(datum).outcome != "holds":
        raise ValueError("conjugacy classes require non-vanishing cohomology")
    ker_group, _ = kernel(datum.nm0)
    order = datum.coker_nm1.order * ker_group.order
    elements = None
    if order <= bound:
        elements = tuple(
            (u, k)
            for u in datum.coker_nm1.elements(bound)
            for k in ker_group.elements(bound))
    return ConjugacyClassSet(order=order, coker=datum.coker_nm1,
                             ker=ker_group, elements=elements)


def subgroup_classes(datum: ArithmeticDatum,
                     bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[SubgroupClass, ...]:
    """Orbits of the order-two symmetry on the conjugacy-class set.

    The symmetry acts componentwise on the product model: by the datum's
    sigma on ker(nm0) and by negation on coker(Nm1).  Fixed orbits are the
    invariant subgroup classes.
    """
    classes = conjugacy_classes(datum, bound)
    if classes.elements is None:
        raise ValueError("conjugacy-class set exceeds the enumeration bound")
    neg = GroupHom.negation(datum.coker_nm1)
    seen: set = set()
    out: list[SubgroupClass] = []
    for pair in classes.elements:
        if pair in seen:
            continue
        u, k = pair
        image = (neg.apply(u), datum.sigma.apply(k))
        orbit = (pair,) if image == pair else (pair, image)
        seen.update(orbit)
        out.append(SubgroupClass(index=len(out), representative=pair,
                                 orbit=orbit, invariant=len(orbit) == 1))
    return tuple(out)


def component_ring(cls: SubgroupClass, datum: ArithmeticDatum) -> ComponentRing:
    """Component of the decomposition attached to one subgroup class."""
    kind = "Invariant" if cls.invariant else "NonInvariant"
    origin = f"subgroup class {cls.index}, representative {cls.representative}"
    return ComponentRing(kind=kind, rank=datum.ker_nm1_rank, origin=origin)


def decompose_number_field(datum: ArithmeticDatum,
                           bound: int = DEFAULT_ENUMERATION_BOUND) -> Decomposition:
    """Direct-sum decomposition indexed by subgroup classes (empty if zero)."""
    context = NumberFieldContext(datum)
    verdict = nonvanishing(datum)
    if verdict.outcome != "holds":
        return Decomposition(components=(), context=context, nonvanishing=False)
    advisories = []
    if not datum.coker_nm1.is_trivial:
        advisories.append(
            "extension_model=product coker_nm1_nontrivial=true "
            "orbit_counts_may_shift_under_unresolved_fiber_action")
    components = tuple(component_ring(cls, datum) for cls in subgroup_classes(datum, bound))
    return Decomposition(components=components, context=context,
                         nonvanishing=True, advisories=tuple(advisories))


# ---------------------------------------------------------------------------
# function-field operations
# ---------------------------------------------------------------------------

def unit_rank_of_coordinate_ring(curve: CurveSpec) -> int:
    """Free rank of the unit group of the coordinate ring.

    For the projective line minus s closed points the units are constants
    times s - 1 independent rational functions; a once-punctured elliptic
    curve has only constant units.
    """
    if isinstance(curve, P1Minus):
        return curve.punctures - 1
    return 0


def decompose_function_field(curve: CurveSpec, field_spec: FiniteFieldSpec,
                             ell: int) -> Decomposition:
    """One component per inversion orbit of the Picard group.

    Requires ell odd and ell | q - 1.  Self-inverse classes give the
    monomial-matrix shape, the others the unit-group shape.
    """
    if not is_prime(ell) or ell == 2:
        raise ValueError("ell must be an odd prime")
    if (field_spec.q - 1) % ell:
        raise ValueError(f"ell = {ell} must divide q - 1 = {field_spec.q - 1}")
    pic = picard_of_curve(curve, field_spec)
    rank = unit_rank_of_coordinate_ring(curve)
    components = []
    for i, orbit in enumerate(component_classes(pic)):
        kind = "MonomialFF" if orbit.fixed else "UnitsFF"
        origin = f"Picard class {i}, representative {orbit.elements[0]}"
        components.append(ComponentRing(kind=kind, rank=rank, origin=origin))
    advisories = []
    if isinstance(curve, P1Minus) and curve.punctures >= 4:
        advisories.append(
            f"punctures={curve.punctures} threshold=4 "
            "nondetectable_classes_possible=true decomposition_covers_parabolic_part_only")
    context = FunctionFieldContext(curve=curve, field=field_spec, ell=ell, picard=pic)
    return Decomposition(components=tuple(components), context=context,
                         nonvanishing=True, advisories=tuple(advisories))


# ---------------------------------------------------------------------------
# freeness, detection, hypothesis gate
# ---------------------------------------------------------------------------

def _basis_count(entry: ComponentFreeness, n: int) -> int:
    if entry.base == "laurent":
        return sum(1 for d in entry.basis_degrees if (d - n) % 4 == 0)
    return sum(1 for d in entry.basis_degrees if (d - n) % 4 == 0 and d <= n)


def freeness_certificate(decomposition: Decomposition,
                         up_to: int = DEFAULT_DEGREE_BOUND) -> FreenessCertificate:
    """Basis-degree certificate, checked degreewise on [-up_to, up_to]."""
    entries = []
    for i, comp in enumerate(decomposition.components):
        entry = ComponentFreeness(
            component=i,
            base="laurent" if comp.is_laurent else "polynomial",
            basis_degrees=freeness_basis_degrees(comp))
        for n in range(-up_to, up_to + 1):
            expected = graded_dimension(comp, n)
            got = _basis_count(entry, n)
            if expected != got:
                raise ArithmeticError(
                    f"freeness identity failed for component {i} in degree {n}: "
                    f"dimension {expected}, basis count {got}")
        entries.append(entry)
    return FreenessCertificate(
        components=tuple(entries),
        verified_up_to=up_to,
        chern_restriction="sum_of_squared_degree2_generators",
        chern_non_zero_divisor=bool(decomposition.components))


def detection_verdict(datum: ArithmeticDatum, decomposition: Decomposition,
                      up_to: int = DEFAULT_DEGREE_BOUND) -> Verdict:
    """Rank comparison against one copy of the diagonal-torus cohomology.

    The torus model is the non-invariant shape on the S-unit rank.  If the
    summed component dimensions exceed the torus dimensions in some degree,
    restriction to the torus cannot be injective and detection fails; the
    comparison can never prove detection, so the other outcome is
    inconclusive.
    """
    if not decomposition.components:
        return Verdict(kind="Detection", outcome="inconclusive",
                       note="empty decomposition: nothing to detect")
    target = ComponentRing(kind="NonInvariant", rank=datum.unit_rank_K,
                           origin="diagonal torus (S-unit group model)")
    for n in range(-up_to, up_to + 1):
        total = sum(graded_dimension(c, n) for c in decomposition.components)
        torus = graded_dimension(target, n)
        if total > torus:
            return Verdict(kind="Detection", outcome="fails", witness=(n, total, torus))
    return Verdict(kind="Detection", outcome="inconclusive",
                   note=f"no rank excess up to degree {up_to}")


@dataclass(frozen=True)
class GateParams:
    ell: int
    n: int
    zeta_in_K: bool
    s_contains_infinite: bool
    s_contains_ell: bool
    detection_hypothesis: str  # holds | fails | unknown

    def __post_init__(self):
        if self.detection_hypothesis not in ("holds", "fails", "unknown"):
            raise ValueError("detection_hypothesis must be holds, fails or unknown")


def refined_gate(params: GateParams) -> Verdict:
    """Hypothesis gate for the refined freeness conjecture in rank n.

    Checks that ell is prime, n < ell, the ell-th root of unity lies in K,
    S contains the infinite places and the places over ell, and that the
    detection hypothesis holds.  Violations are listed; an unknown
    detection hypothesis with everything else satisfied is inconclusive.
    """
    violated = []
    if not is_prime(params.ell):
        violated.append("ell_prime")
    if not params.n < params.ell:
        violated.append("n_less_than_ell")
    if not params.zeta_in_K:
        violated.append("zeta_ell_in_K")
    if not params.s_contains_infinite:
        violated.append("S_contains_infinite_places")
    if not params.s_contains_ell:
        violated.append("S_contains_places_over_ell")
    if params.detection_hypothesis == "fails":
        violated.append("detection_on_finite_subgroups")
    if violated:
        return Verdict(kind="RefinedGate", outcome="fails", witness=tuple(violated))
    if params.detection_hypothesis == "unknown":
        return Verdict(kind="RefinedGate", outcome="inconclusive",
                       note="detection hypothesis unknown")
    return Verdict(kind="RefinedGate", outcome="holds")


# ---------------------------------------------------------------------------
# machine report
# ---------------------------------------------------------------------------

def _dims_field(component: ComponentRing, bound: int) -> str:
    values = ",".join(str(graded_dimension(component, n)) for n in range(-4, bound + 1))
    return f"dims[-4..{bound}]={values}"


def component_line(index: int, component: ComponentRing, bound: int) -> str:
    return (f"COMPONENT\t{index} shape={component.kind} "
            f"{component.rank_letter}={component.rank} {_dims_field(component, bound)}")


def freeness_lines(certificate: FreenessCertificate) -> list[str]:
    lines = []
    for entry in certificate.components:
        counts: dict[int, int] = {}
        for d in entry.basis_degrees:
            counts[d] = counts.get(d, 0) + 1
        degrees = ",".join(f"{d}:{m}" for d, m in sorted(counts.items()))
        lines.append(f"FREENESS\tcomponent={entry.component} basis_degrees={degrees} "
                     f"base={entry.base} verified_up_to={certificate.verified_up_to}")
    lines.append(f"CHERN\trestriction={certificate.chern_restriction} "
                 f"non_zero_divisor={'true' if certificate.chern_non_zero_divisor else 'false'}")
    return lines


def machine_lines_number_field(datum: ArithmeticDatum,
                               bound: int = DEFAULT_DEGREE_BOUND) -> list[str]:
    """Report lines, one fact per line, for a number-field analysis."""
    lines = []
    verdict = nonvanishing(datum)
    lines.append(f"NONVANISHING\t{verdict.outcome}")
    decomposition = decompose_number_field(datum)
    if verdict.outcome == "holds":
        classes = conjugacy_classes(datum)
        lines.append(f"CCLASSES\t{classes.order}")
        lines.append(f"KCLASSES\t{len(decomposition.components)}")
        for i, comp in enumerate(decomposition.components):
            lines.append(component_line(i, comp, bound))
        lines.extend(freeness_lines(freeness_certificate(decomposition, bound)))
    detection = detection_verdict(datum, decomposition, bound)
    if detection.outcome == "fails":
        lines.append(f"DETECTION\tfails witness_degree={detection.witness[0]}")
    else:
        note = f" note={detection.note.split(':')[0].replace(' ', '_')}" if detection.note else ""
        lines.append(f"DETECTION\tinconclusive{note}")
    for advisory in decomposition.advisories:
        lines.append(f"ADVISORY\t{advisory}")
    return lines


def machine_lines_function_field(curve: CurveSpec, field_spec: FiniteFieldSpec, ell: int,
                                 bound: int = DEFAULT_DEGREE_BOUND) -> list[str]:
    """Report lines for a function-field analysis."""
    decomposition = decompose_function_field(curve, field_spec, ell)
    lines = [f"KCLASSES\t{len(decomposition.components)}"]
    for i, comp in enumerate(decomposition.components):
        lines.append(component_line(i, comp, bound))
    lines.extend(freeness_lines(freeness_certificate(decomposition, bound)))
    for advisory in decomposition.advisories:
        lines.append(f"ADVISORY\t{advisory}")
    return lines


def gate_line(verdict: Verdict) -> str:
    if verdict.outcome == "fails":
        return f"GATE\tfails violated={','.join(verdict.witness)}"
    if verdict.outcome == "inconclusive":
        return "GATE\tinconclusive violated="
    return "GATE\tholds"
