"""Number-theoretic input data for the cohomology engine.

This module produces the arithmetic package attached to a triple
(field K, place set S, odd prime ell): class groups, the norm map on
class groups, the Steinitz class of the quadratic extension generated by
an ell-th root of unity, unit ranks, and the order-two symmetry acting
on the kernel of the norm map.  Small inputs are computed from built-in
families (imaginary-quadratic class groups via reduced binary quadratic
forms and Gauss composition, Dirichlet S-unit ranks, the split
cyclotomic construction); anything beyond built-in reach is ingested
from a validated text file.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from pathlib import Path

from .abelian import (
    FinGenAbGroup,
    GroupHom,
    Involution,
    is_prime,
    kernel,
    cokernel,
    smith_normal_form,
)


class DatumError(Exception):
    """Base class for datum-file problems."""


class DatumParseError(DatumError):
    def __init__(self, path: str, line: int, column: int, message: str):
        self.path, self.line, self.column = path, line, column
        super().__init__(f"{path}:{line}:{column}: {message}")


class DatumConsistencyError(DatumError):
    def __init__(self, invariant: str, message: str):
        self.invariant = invariant
        super().__init__(f"consistency violation [{invariant}]: {message}")


# ---------------------------------------------------------------------------
# places and unit ranks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaceSpec:
    """The shape of a finite place set S: infinite places plus finite ones."""

    real_places: int
    complex_places: int
    finite_places: tuple[tuple[int, int], ...] = ()  # (residue char, residue degree)
    contains_places_over_ell: bool = False

    def __post_init__(self):
        if self.real_places < 0 or self.complex_places < 0:
            raise ValueError("place counts must be nonnegative")
        object.__setattr__(self, "finite_places", tuple(
            (int(p), int(f)) for p, f in self.finite_places))
        if self.real_places + self.complex_places + len(self.finite_places) == 0:
            raise ValueError("the place set must be non-empty")


def s_unit_rank(places: PlaceSpec) -> int:
    """Free rank of the S-unit group (Dirichlet)."""
    return places.real_places + places.complex_places + len(places.finite_places) - 1


# ---------------------------------------------------------------------------
# binary quadratic forms and imaginary-quadratic class groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticForm:
    """Positive definite integral binary quadratic form a x^2 + b xy + c y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("form must be positive definite (a > 0)")
        if self.discriminant >= 0:
            raise ValueError("form must have negative discriminant")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if b < 0 and (abs(b) == a or a == c):
            return False
        return True


def is_fundamental_discriminant(d: int) -> bool:
    if d >= 0 or d % 4 not in (0, 1):
        return False
    if d % 4 == 1:
        return _is_squarefree(-d)
    m = d // 4
    return m % 4 in (2, 3) and _is_squarefree(-m)


def _is_squarefree(n: int) -> bool:
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


def _reduce_triple(a: int, b: int, c: int) -> tuple[int, int, int]:
    # normalize b into (-a, a], then flip until a <= c with sign convention
    r = (a - b) // (2 * a)
    b, c = b + 2 * r * a, a * r * r + b * r + c
    while a > c or (a == c and b < 0):
        a, b, c = c, -b, a
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
    return a, b, c


def reduce_form(f: QuadraticForm) -> QuadraticForm:
    return QuadraticForm(*_reduce_triple(f.a, f.b, f.c))


def reduced_forms(d: int) -> tuple[QuadraticForm, ...]:
    """All reduced forms of a negative discriminant, sorted by (a, b)."""
    if d >= 0:
        raise ValueError("discriminant must be negative")
    forms = []
    for a in range(1, isqrt(-d // 3) + 1):
        for b in range(-a + 1, a + 1):
            val = b * b - d
            if val % (4 * a):
                continue
            c = val // (4 * a)
            if c < a:
                continue
            if b < 0 and a == c:
                continue
            forms.append(QuadraticForm(a, b, c))
    forms.sort(key=lambda f: (f.a, f.b))
    return tuple(forms)


def principal_form(d: int) -> QuadraticForm:
    k = d & 1
    return QuadraticForm(1, k, (k * k - d) // 4)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int]:
    """Solutions x of a*x = b (mod m) as x = x0 + step*k; m >= 1."""
    if m == 1:
        return 0, 1
    g, u, _ = _egcd(a, m)
    if b % g:
        raise ArithmeticError("congruence has no solution")
    return (b // g * u) % m, m // g


def compose(f1: QuadraticForm, f2: QuadraticForm) -> QuadraticForm:
    """Gauss composition of two forms of the same discriminant, reduced."""
    if f1.discriminant != f2.discriminant:
        raise ValueError("forms must share a discriminant")
    a1, b1, c1 = f1.a, f1.b, f1.c
    a2, b2 = f2.a, f2.b
    g = (b1 + b2) // 2
    h = (b2 - b1) // 2
    w = gcd(gcd(a1, a2), g)
    s, t, u = a1 // w, a2 // w, g // w
    st = s * t
    mu, nu = _solve_linear_congruence(t * u, h * u + s * c1, st)
    lam = _solve_linear_congruence(t * nu, h - t * mu, s)[0]
    k = mu + nu * lam
    el = (k * t - h) // s
    m = (t * u * k - h * u - c1 * s) // st
    a3 = st
    b3 = w * u - (k * t + el * s)
    c3 = k * el - w * m
    return QuadraticForm(*_reduce_triple(a3, b3, c3))


def class_group_imaginary_quadratic(d: int) -> FinGenAbGroup:
    """Form class group of a negative fundamental discriminant.

    Classes are the reduced forms under Gauss composition; the abstract
    structure is read off from a triangular system of relations among a
    greedy generating set, put into invariant factors by Smith reduction.
    """
    if d >= 0:
        raise ValueError("discriminant must be negative")
    if not is_fundamental_discriminant(d):
        raise ValueError(f"{d} is not a fundamental discriminant")
    forms = reduced_forms(d)
    index = {f: i for i, f in enumerate(forms)}
    h = len(forms)

    def mul(i: int, j: int) -> int:
        return index[compose(forms[i], forms[j])]

    identity = index[reduce_form(principal_form(d))]
    reached: dict[int, tuple[int, ...]] = {identity: ()}
    relations: list[list[int]] = []
    ngens = 0
    for cand in range(h):
        if cand in reached:
            continue
        ngens += 1
        reached = {e: vec + (0,) for e, vec in reached.items()}
        for row in relations:
            row.append(0)
        # minimal power of cand landing in the subgroup generated so far
        p, power = cand, 1
        while p not in reached:
            p = mul(p, cand)
            power += 1
        w = reached[p]
        relations.append([-wi for wi in w[:-1]] + [power])
        base = list(reached.items())
        shift = cand
        for i in range(1, power):
            for e, vec in base:
                reached[mul(e, shift)] = vec[:-1] + (i,)
            shift = mul(shift, cand)
    if len(reached) != h:
        raise ArithmeticError("composition table failed to generate all classes")
    if ngens == 0:
        return FinGenAbGroup.trivial()
    _, diag, _ = smith_normal_form(relations)
    group = FinGenAbGroup(0, tuple(e for e in diag if e > 1))
    if group.order != h:
        raise ArithmeticError("structure computation disagrees with the class count")
    return group


# ---------------------------------------------------------------------------
# the arithmetic datum
# ---------------------------------------------------------------------------

_PROVENANCE_FIELDS = (
    "ell", "trace_in_K", "split", "cl_K", "cl_A", "nm0", "steinitz",
    "unit_rank_K", "ker_nm1_rank", "coker_nm1", "sigma",
)


@dataclass(frozen=True)
class ArithmeticDatum:
    """All arithmetic inputs the cohomology engine needs for one (K, S, ell).

    ``nm0`` is the norm map between class groups of the quadratic extension
    and the base; ``sigma`` is the order-two symmetry of that extension
    acting on ker(nm0); ``coker_nm1`` is the (finite) cokernel of the norm
    map on units and ``ker_nm1_rank`` the free rank of its kernel.
    """

    ell: int
    trace_in_K: bool
    split: bool
    cl_K: FinGenAbGroup
    cl_A: FinGenAbGroup
    nm0: GroupHom
    steinitz: tuple[int, ...]
    unit_rank_K: int
    ker_nm1_rank: int
    coker_nm1: FinGenAbGroup
    sigma: Involution
    provenance: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if self.ell == 2 or not is_prime(self.ell):
            raise DatumConsistencyError("ell_odd_prime", f"ell = {self.ell} is not an odd prime")
        if not self.cl_K.is_finite:
            raise DatumConsistencyError("cl_K_finite", "class group of the base must be finite")
        if not self.cl_A.is_finite:
            raise DatumConsistencyError("cl_A_finite", "class group of the extension must be finite")
        if not self.coker_nm1.is_finite:
            raise DatumConsistencyError("coker_nm1_finite", "coker(Nm1) must be finite")
        if self.unit_rank_K < 0 or self.ker_nm1_rank < 0:
            raise DatumConsistencyError("ranks_nonnegative", "unit ranks must be nonnegative")
        if self.nm0.domain != self.cl_A or self.nm0.codomain != self.cl_K:
            raise DatumConsistencyError("nm0_shape", "nm0 must map cl_A to cl_K")
        try:
            self.cl_K.validate_element(self.steinitz)
        except ValueError as exc:
            raise DatumConsistencyError("steinitz_in_cl_K", str(exc)) from exc
        object.__setattr__(self, "steinitz", tuple(int(c) for c in self.steinitz))
        ker_group, _ = kernel(self.nm0)
        if self.sigma.group != ker_group:
            raise DatumConsistencyError(
                "sigma_on_ker_nm0",
                f"sigma acts on {self.sigma.group}, but ker(nm0) is {ker_group}")
        if self.split:
            self._check_split_case(ker_group)
        if not self.provenance:
            object.__setattr__(self, "provenance",
                               tuple((name, "computed") for name in _PROVENANCE_FIELDS))

    def _check_split_case(self, ker_group: FinGenAbGroup):
        if not self.trace_in_K:
            raise DatumConsistencyError("split_implies_trace", "split data have trace in K")
        if self.cl_A != FinGenAbGroup.direct_sum(self.cl_K, self.cl_K):
            raise DatumConsistencyError(
                "split_cl_A", "in the split case cl_A must be cl_K + cl_K")
        if any(self.steinitz):
            raise DatumConsistencyError(
                "split_steinitz_zero", "in the split case the Steinitz class vanishes")
        if not self.coker_nm1.is_trivial:
            raise DatumConsistencyError(
                "split_coker_nm1_trivial", "in the split case coker(Nm1) is trivial")
        if self.ker_nm1_rank != self.unit_rank_K:
            raise DatumConsistencyError(
                "split_ker_nm1_rank", "in the split case ker(Nm1) has the base unit rank")
        c, _ = cokernel(self.nm0)
        if not c.is_trivial:
            raise DatumConsistencyError("split_nm0_onto", "in the split case nm0 is onto")
        if ker_group != self.cl_K:
            raise DatumConsistencyError(
                "split_ker_nm0", "in the split case ker(nm0) is a copy of cl_K")
        if self.sigma.hom != GroupHom.negation(ker_group):
            raise DatumConsistencyError(
                "split_sigma_negation", "in the split case sigma negates ker(nm0)")

    @property
    def provenance_map(self) -> dict[str, str]:
        return dict(self.provenance)

    def same_content(self, other: "ArithmeticDatum") -> bool:
        """Equality of the mathematical content, ignoring provenance tags."""
        return (
            self.ell == other.ell and self.trace_in_K == other.trace_in_K
            and self.split == other.split and self.cl_K == other.cl_K
            and self.cl_A == other.cl_A and self.nm0 == other.nm0
            and self.steinitz == other.steinitz
            and self.unit_rank_K == other.unit_rank_K
            and self.ker_nm1_rank == other.ker_nm1_rank
            and self.coker_nm1 == other.coker_nm1 and self.sigma == other.sigma)


def build_split_datum(cl_K: FinGenAbGroup, unit_rank_K: int, ell: int) -> ArithmeticDatum:
    """Datum for the case where the ell-th root of unity already lies in K.

    The quadratic extension splits into two copies of the base ring, so the
    class group doubles, the norm map on classes is the sum map, the
    Steinitz class vanishes, the unit-norm cokernel is trivial, and the
    symmetry swaps the two copies, which is negation on ker(nm0).
    """
    if not cl_K.is_finite:
        raise ValueError("cl_K must be finite")
    factors = []
    for d in cl_K.invariant_factors:
        factors.extend((d, d))
    cl_A = FinGenAbGroup(0, tuple(factors))
    t = len(cl_K.invariant_factors)
    matrix = [[0] * (2 * t) for _ in range(t)]
    for i in range(t):
        matrix[i][2 * i] = 1
        matrix[i][2 * i + 1] = 1
    nm0 = GroupHom(cl_A, cl_K, matrix)
    ker_group, _ = kernel(nm0)
    sigma = Involution(GroupHom.negation(ker_group))
    return ArithmeticDatum(
        ell=ell,
        trace_in_K=True,
        split=True,
        cl_K=cl_K,
        cl_A=cl_A,
        nm0=nm0,
        steinitz=cl_K.zero(),
        unit_rank_K=unit_rank_K,
        ker_nm1_rank=unit_rank_K,
        coker_nm1=FinGenAbGroup.trivial(),
        sigma=sigma,
        provenance=tuple((name, "computed") for name in _PROVENANCE_FIELDS),
    )


# ---------------------------------------------------------------------------
# datum files
# ---------------------------------------------------------------------------

_REQUIRED_SECTIONS = {
    "datum": ("ell", "trace_in_K", "split", "unit_rank_K", "ker_nm1_rank"),
    "cl_K": ("free_rank", "invariant_factors"),
    "cl_A": ("free_rank", "invariant_factors"),
    "nm0": ("matrix",),
    "steinitz": ("coords",),
    "coker_nm1": ("free_rank", "invariant_factors"),
    "sigma": ("matrix",),
}


def _strip_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def _parse_sections(text: str, path: str) -> dict[str, dict[str, tuple[str, int, int]]]:
    sections: dict[str, dict[str, tuple[str, int, int]]] = {}
    current: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = raw.index(stripped[0]) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise DatumParseError(path, lineno, col, "unterminated section header")
            name = stripped[1:-1].strip()
            if name not in _REQUIRED_SECTIONS:
                raise DatumParseError(path, lineno, col, f"unknown section [{name}]")
            if name in sections:
                raise DatumParseError(path, lineno, col, f"duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if current is None:
            raise DatumParseError(path, lineno, col, "key-value pair outside any section")
        if "=" not in stripped:
            raise DatumParseError(path, lineno, col, "expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in _REQUIRED_SECTIONS[current]:
            raise DatumParseError(path, lineno, col, f"unknown key '{key}' in [{current}]")
        if key in sections[current]:
            raise DatumParseError(path, lineno, col, f"duplicate key '{key}'")
        value_col = raw.index("=") + 2
        sections[current][key] = (value.strip(), lineno, value_col)
    for name, keys in _REQUIRED_SECTIONS.items():
        if name not in sections:
            raise DatumParseError(path, 0, 0, f"missing required section [{name}]")
        for key in keys:
            if key not in sections[name]:
                raise DatumParseError(path, 0, 0, f"missing required key '{key}' in [{name}]")
    return sections


def _parse_int(entry, path) -> int:
    value, line, col = entry
    try:
        return int(value)
    except ValueError:
        raise DatumParseError(path, line, col, f"expected an integer, got {value!r}") from None


def _parse_bool(entry, path) -> bool:
    value, line, col = entry
    if value == "true":
        return True
    if value == "false":
        return False
    raise DatumParseError(path, line, col, f"expected 'true' or 'false', got {value!r}")


def _parse_int_list(entry, path) -> tuple[int, ...]:
    value, line, col = entry
    if not value:
        return ()
    out = []
    for piece in value.split(","):
        piece = piece.strip()
        try:
            out.append(int(piece))
        except ValueError:
            raise DatumParseError(path, line, col, f"expected an integer, got {piece!r}") from None
    return tuple(out)


def _parse_matrix(entry, path, nrows: int, ncols: int) -> tuple[tuple[int, ...], ...]:
    value, line, col = entry
    if not value:
        rows: list[tuple[int, ...]] = []
    else:
        rows = []
        for part in value.split(";"):
            entries = part.split()
            try:
                rows.append(tuple(int(v) for v in entries))
            except ValueError:
                raise DatumParseError(path, line, col, f"bad matrix entry in {part!r}") from None
    if ncols == 0 and len(rows) <= nrows:
        rows = [()] * nrows  # width-zero rows carry no data
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise DatumParseError(
            path, line, col,
            f"matrix must be {nrows}x{ncols} (rows separated by ';')")
    return tuple(rows)


def _group_from_section(sec, path, name: str) -> FinGenAbGroup:
    free = _parse_int(sec["free_rank"], path)
    factors = _parse_int_list(sec["invariant_factors"], path)
    try:
        return FinGenAbGroup(free, factors)
    except ValueError as exc:
        raise DatumConsistencyError(f"{name}_canonical", str(exc)) from exc


def load_datum(source) -> ArithmeticDatum:
    """Read and fully validate a datum file; every field is tagged ingested."""
    path = Path(source)
    text = path.read_text(encoding="utf-8")
    sections = _parse_sections(text, str(path))
    head = sections["datum"]
    ell = _parse_int(head["ell"], str(path))
    trace_in_k = _parse_bool(head["trace_in_K"], str(path))
    split = _parse_bool(head["split"], str(path))
    unit_rank = _parse_int(head["unit_rank_K"], str(path))
    ker_rank = _parse_int(head["ker_nm1_rank"], str(path))
    cl_k = _group_from_section(sections["cl_K"], str(path), "cl_K")
    cl_a = _group_from_section(sections["cl_A"], str(path), "cl_A")
    coker = _group_from_section(sections["coker_nm1"], str(path), "coker_nm1")
    nm0_rows = _parse_matrix(sections["nm0"]["matrix"], str(path), cl_k.ngens, cl_a.ngens)
    try:
        nm0 = GroupHom(cl_a, cl_k, nm0_rows)
    except ValueError as exc:
        raise DatumConsistencyError("nm0_homomorphism", str(exc)) from exc
    steinitz = _parse_int_list(sections["steinitz"]["coords"], str(path))
    try:
        cl_k.validate_element(steinitz)
    except ValueError as exc:
        raise DatumConsistencyError("steinitz_in_cl_K", str(exc)) from exc
    ker_group, _ = kernel(nm0)
    sigma_rows = _parse_matrix(sections["sigma"]["matrix"], str(path),
                               ker_group.ngens, ker_group.ngens)
    try:
        sigma = Involution(GroupHom(ker_group, ker_group, sigma_rows))
    except ValueError as exc:
        raise DatumConsistencyError("sigma_involution", str(exc)) from exc
    return ArithmeticDatum(
        ell=ell, trace_in_K=trace_in_k, split=split,
        cl_K=cl_k, cl_A=cl_a, nm0=nm0, steinitz=steinitz,
        unit_rank_K=unit_rank, ker_nm1_rank=ker_rank,
        coker_nm1=coker, sigma=sigma,
        provenance=tuple((name, "ingested") for name in _PROVENANCE_FIELDS),
    )


def _format_group(g: FinGenAbGroup) -> str:
    return (f"free_rank = {g.free_rank}\n"
            f"invariant_factors = {','.join(str(d) for d in g.invariant_factors)}")


def _format_matrix(m) -> str:
    return " ; ".join(" ".join(str(v) for v in row) for row in m)


def save_datum(datum: ArithmeticDatum, target) -> None:
    """Write a datum in the line-oriented text format read by load_datum."""
    lines = [
        "[datum]",
        f"ell = {datum.ell}",
        f"trace_in_K = {'true' if datum.trace_in_K else 'false'}",
        f"split = {'true' if datum.split else 'false'}",
        f"unit_rank_K = {datum.unit_rank_K}",
        f"ker_nm1_rank = {datum.ker_nm1_rank}",
        "[cl_K]",
        _format_group(datum.cl_K),
        "[cl_A]",
        _format_group(datum.cl_A),
        "[nm0]",
        f"matrix = {_format_matrix(datum.nm0.matrix)}",
        "[steinitz]",
        f"coords = {','.join(str(c) for c in datum.steinitz)}",
        "[coker_nm1]",
        _format_group(datum.coker_nm1),
        "[sigma]",
        f"matrix = {_format_matrix(datum.sigma.hom.matrix)}",
    ]
    Path(target).write_text("\n".join(lines) + "\n", encoding="utf-8")
