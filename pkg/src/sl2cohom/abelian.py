"""Exact arithmetic of finitely generated abelian groups.

Groups are stored in invariant-factor form, homomorphisms as integer
matrices, and every computation (Smith normal form, kernels, cokernels,
image membership) runs over Python's arbitrary-precision integers, so
intermediate entries can grow without wrapping.  All values are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as _cartesian
from math import prod

DEFAULT_ENUMERATION_BOUND = 10**6

IntMatrix = tuple[tuple[int, ...], ...]


class EnumerationBoundExceeded(Exception):
    """Element listing was requested for a group beyond the allowed bound."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def _freeze(rows) -> IntMatrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _matmul(a, b) -> list[list[int]]:
    if not a:
        return []
    inner = len(a[0])
    width = len(b[0]) if b else 0
    out = []
    for row in a:
        out.append([sum(row[k] * b[k][j] for k in range(inner)) for j in range(width)])
    return out


def _matvec(a, v) -> list[int]:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def _snf(matrix, nrows: int, ncols: int):
    """Smith normal form with transforms.

    Returns (left, left_inv, diag, right) where left * matrix * right is
    diagonal with entries ``diag`` forming a divisibility chain of
    nonnegative integers (zeros last); left and right are unimodular.
    """
    a = [list(row) for row in matrix]
    left = _identity(nrows)
    left_inv = _identity(nrows)
    right = _identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]
        for r in left_inv:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        a[i] = [-v for v in a[i]]
        left[i] = [-v for v in left[i]]
        for r in left_inv:
            r[i] = -r[i]

    def add_row(i, j, q):
        # row_i += q * row_j
        a[i] = [u + q * v for u, v in zip(a[i], a[j])]
        left[i] = [u + q * v for u, v in zip(left[i], left[j])]
        for r in left_inv:
            r[j] -= q * r[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in right:
            r[i], r[j] = r[j], r[i]

    def add_col(j, i, q):
        # col_j += q * col_i
        for r in a:
            r[j] += q * r[i]
        for r in right:
            r[j] += q * r[i]

    def move_min_pivot(t) -> bool:
        # smallest nonzero entry of the trailing block becomes the pivot
        pi = pj = -1
        best = 0
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                v = row[j]
                if v and (best == 0 or abs(v) < best):
                    best, pi, pj = abs(v), i, j
        if pi < 0:
            return False
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)
        return True

    limit = min(nrows, ncols)
    for t in range(limit):
        if not move_min_pivot(t):
            break
        while True:
            # one reduction pass; re-selecting the minimum each round keeps
            # the quotients, and hence entry growth, under control
            cleared = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        add_row(i, t, -q)
                    if a[i][t]:
                        cleared = False
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(j, t, -q)
                    if a[t][j]:
                        cleared = False
            if not cleared:
                move_min_pivot(t)
                continue
            # pivot must divide the remaining block
            p = a[t][t]
            violation = None
            for i in range(t + 1, nrows):
                row = a[i]
                for j in range(t + 1, ncols):
                    if row[j] % p:
                        violation = i
                        break
                if violation is not None:
                    break
            if violation is None:
                break
            add_row(t, violation, 1)

    diag = tuple(a[i][i] for i in range(limit))
    return _freeze(left), _freeze(left_inv), diag, _freeze(right)


def smith_normal_form(matrix) -> tuple[IntMatrix, tuple[int, ...], IntMatrix]:
    """Return (left, diag, right) with left*matrix*right diagonal.

    The diagonal entries are nonnegative and each divides the next; the
    transforms are unimodular.  Total on integer matrices; arithmetic is
    arbitrary precision, so entry growth can never wrap.
    """
    rows = _freeze(matrix)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix rows must all have the same length")
    left, _, diag, right = _snf(rows, nrows, ncols)
    return left, diag, right


# ---------------------------------------------------------------------------
# groups and homomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinGenAbGroup:
    """A finitely generated abelian group Z^free_rank + sum Z/d_i.

    Canonical form: every invariant factor is >= 2 and divides the next,
    which makes equality testing structural.  Element coordinates list the
    free generators first, then the torsion generators.
    """

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(int(d) for d in self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("free_rank must be nonnegative")
        factors = self.invariant_factors
        for d in factors:
            if d < 2:
                raise ValueError("invariant factors must be >= 2 (drop factor-1 entries)")
        for d, e in zip(factors, factors[1:]):
            if e % d:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def trivial(cls) -> "FinGenAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FinGenAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, d: int) -> "FinGenAbGroup":
        if d == 0:
            return cls(1, ())
        return cls(0, ()) if d == 1 else cls(0, (d,))

    @classmethod
    def from_cyclic_orders(cls, orders) -> "FinGenAbGroup":
        """Canonicalize an arbitrary list of cyclic orders (0 meaning Z)."""
        orders = [int(o) for o in orders]
        if any(o < 0 for o in orders):
            raise ValueError("cyclic orders must be nonnegative")
        n = len(orders)
        if n == 0:
            return cls.trivial()
        diag_rel = [[orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
        _, diag, _ = smith_normal_form(diag_rel)
        free = sum(1 for d in diag if d == 0)
        factors = tuple(d for d in diag if d > 1)
        return cls(free, factors)

    @classmethod
    def direct_sum(cls, *groups: "FinGenAbGroup") -> "FinGenAbGroup":
        orders: list[int] = []
        for g in groups:
            orders.extend(g.orders)
        return cls.from_cyclic_orders(orders)

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise ValueError("group is infinite")
        return prod(self.invariant_factors)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def reduce_element(self, coords) -> tuple[int, ...]:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.ngens:
            raise ValueError(f"element needs {self.ngens} coordinates, got {len(coords)}")
        return tuple(c if o == 0 else c % o for c, o in zip(coords, self.orders))

    def validate_element(self, coords) -> tuple[int, ...]:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.ngens:
            raise ValueError(f"element needs {self.ngens} coordinates, got {len(coords)}")
        for c, o in zip(coords, self.orders):
            if o and not 0 <= c < o:
                raise ValueError(f"coordinate {c} not reduced modulo {o}")
        return coords

    def add(self, x, y) -> tuple[int, ...]:
        return self.reduce_element(tuple(a + b for a, b in zip(x, y)))

    def neg(self, x) -> tuple[int, ...]:
        return self.reduce_element(tuple(-a for a in x))

    def elements(self, bound: int = DEFAULT_ENUMERATION_BOUND):
        """Iterate all elements in lexicographic coordinate order."""
        if not self.is_finite:
            raise EnumerationBoundExceeded("cannot enumerate an infinite group")
        if self.order > bound:
            raise EnumerationBoundExceeded(
                f"group order {self.order} exceeds enumeration bound {bound}")
        return _cartesian(*(range(d) for d in self.invariant_factors))

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by an integer matrix (codomain gens x domain gens).

    The matrix is stored reduced modulo the codomain relations, so two
    matrices describing the same map compare equal.
    """

    domain: FinGenAbGroup
    codomain: FinGenAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        m, n = self.codomain.ngens, self.domain.ngens
        rows = _freeze(self.matrix)
        if len(rows) != m or any(len(r) != n for r in rows):
            raise ValueError(f"matrix must be {m}x{n}")
        dom_orders = self.domain.orders
        cod_orders = self.codomain.orders
        for i in range(m):
            p = cod_orders[i]
            for j in range(n):
                o = dom_orders[j]
                if o:
                    v = o * rows[i][j]
                    if (p == 0 and v != 0) or (p != 0 and v % p):
                        raise ValueError(
                            f"matrix entry ({i},{j}) does not define a homomorphism: "
                            f"order-{o} generator must map to an order-dividing image")
        reduced = tuple(
            tuple(v if cod_orders[i] == 0 else v % cod_orders[i] for v in rows[i])
            for i in range(m))
        object.__setattr__(self, "matrix", reduced)

    @classmethod
    def identity(cls, g: FinGenAbGroup) -> "GroupHom":
        return cls(g, g, _identity(g.ngens))

    @classmethod
    def negation(cls, g: FinGenAbGroup) -> "GroupHom":
        return cls(g, g, [[-1 if i == j else 0 for j in range(g.ngens)] for i in range(g.ngens)])

    @classmethod
    def zero(cls, domain: FinGenAbGroup, codomain: FinGenAbGroup) -> "GroupHom":
        return cls(domain, codomain, [[0] * domain.ngens for _ in range(codomain.ngens)])

    def apply(self, x) -> tuple[int, ...]:
        x = tuple(int(c) for c in x)
        if len(x) != self.domain.ngens:
            raise ValueError("element has wrong length for the domain")
        return self.codomain.reduce_element(_matvec(self.matrix, x))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        if other.codomain != self.domain:
            raise ValueError("homomorphisms are not composable")
        return GroupHom(other.domain, self.codomain, _matmul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return self.domain == self.codomain and self == GroupHom.identity(self.domain)


@dataclass(frozen=True)
class Involution:
    """A self-inverse endomorphism of a group."""

    hom: GroupHom

    def __post_init__(self):
        if self.hom.domain != self.hom.codomain:
            raise ValueError("an involution needs equal domain and codomain")
        if not self.hom.compose(self.hom).is_identity():
            raise ValueError("map composed with itself is not the identity")

    @property
    def group(self) -> FinGenAbGroup:
        return self.hom.domain

    def apply(self, x) -> tuple[int, ...]:
        return self.hom.apply(x)


@dataclass(frozen=True)
class Orbit:
    elements: tuple[tuple[int, ...], ...]
    fixed: bool


# ---------------------------------------------------------------------------
# kernels, cokernels, image membership
# ---------------------------------------------------------------------------

def _augmented_matrix(f: GroupHom):
    """[matrix | codomain relation columns], with column count returned."""
    h = f.codomain
    torsion = [i for i, p in enumerate(h.orders) if p > 0]
    m, n = h.ngens, f.domain.ngens
    rows = []
    for i in range(m):
        rel = [h.orders[i] if i == k else 0 for k in torsion]
        rows.append(list(f.matrix[i]) + rel)
    return rows, m, n, n + len(torsion)


def _column_lattice_basis(columns, dim: int):
    """Basis (as column vectors) of the lattice spanned by the given columns."""
    if not columns:
        return []
    mat = [[col[i] for col in columns] for i in range(dim)]
    _, left_inv, diag, _ = _snf(mat, dim, len(columns))
    basis = []
    for j, d in enumerate(diag):
        if d:
            basis.append([left_inv[i][j] * d for i in range(dim)])
    return basis


def _solve_integer(mat, nrows, ncols, targets):
    """One integer solution of mat*x = y for each target y (all solvable)."""
    left, _, diag, right = _snf(mat, nrows, ncols)
    solutions = []
    for y in targets:
        c = _matvec(left, y)
        z = [0] * ncols
        for i in range(nrows):
            d = diag[i] if i < len(diag) else 0
            if d == 0:
                if c[i] != 0:
                    raise ArithmeticError("inconsistent integer system")
            else:
                if c[i] % d:
                    raise ArithmeticError("inconsistent integer system")
                z[i] = c[i] // d
        solutions.append(_matvec(right, z))
    return solutions


def kernel(f: GroupHom) -> tuple[FinGenAbGroup, GroupHom]:
    """Kernel subgroup in canonical form with its inclusion into the domain."""
    g = f.domain
    rows, m, n, width = _augmented_matrix(f)
    _, _, diag, right = _snf(rows, m, width)
    span = []
    for j in range(width):
        if j >= len(diag) or diag[j] == 0:
            span.append([right[i][j] for i in range(n)])
    basis = _column_lattice_basis(span, n)
    r = len(basis)
    torsion = [(j, o) for j, o in enumerate(g.orders) if o > 0]
    if r == 0:
        k = FinGenAbGroup.trivial()
        return k, GroupHom(k, g, [[] for _ in range(g.ngens)])
    basis_mat = [[basis[c][i] for c in range(r)] for i in range(n)]
    targets = []
    for j, o in torsion:
        targets.append([o if i == j else 0 for i in range(n)])
    coeffs = _solve_integer(basis_mat, n, r, targets)
    rel = [[coeffs[c][i] for c in range(len(torsion))] for i in range(r)]
    _, left_inv2, diag2, _ = _snf(rel, r, len(torsion))
    new_basis = _matmul(basis_mat, left_inv2)
    gen_orders = [diag2[i] if i < len(diag2) else 0 for i in range(r)]
    free_cols = [i for i, o in enumerate(gen_orders) if o == 0]
    torsion_cols = [i for i, o in enumerate(gen_orders) if o > 1]
    k = FinGenAbGroup(len(free_cols), tuple(gen_orders[i] for i in torsion_cols))
    keep = free_cols + torsion_cols
    incl = [[new_basis[i][c] for c in keep] for i in range(n)]
    return k, GroupHom(k, g, incl)


def cokernel(f: GroupHom) -> tuple[FinGenAbGroup, GroupHom]:
    """Cokernel in canonical form with the projection from the codomain."""
    h = f.codomain
    rows, m, n, width = _augmented_matrix(f)
    left, _, diag, _ = _snf(rows, m, width)
    gen_orders = [diag[i] if i < len(diag) else 0 for i in range(m)]
    free_rows = [i for i, o in enumerate(gen_orders) if o == 0]
    torsion_rows = [i for i, o in enumerate(gen_orders) if o > 1]
    c = FinGenAbGroup(len(free_rows), tuple(gen_orders[i] for i in torsion_rows))
    keep = free_rows + torsion_rows
    proj = [list(left[i]) for i in keep]
    return c, GroupHom(h, c, proj)


def contains_in_image(f: GroupHom, y) -> bool:
    """Exact image-membership test via Smith normal form (no enumeration)."""
    y = f.codomain.validate_element(y)
    rows, m, n, width = _augmented_matrix(f)
    left, _, diag, _ = _snf(rows, m, width)
    c = _matvec(left, list(y))
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return False
        elif c[i] % d:
            return False
    return True


def mod_ell_dimension(g: FinGenAbGroup, ell: int) -> int:
    """Dimension of g tensor Z/ell over the field with ell elements."""
    if not is_prime(ell):
        raise ValueError("ell must be prime")
    return g.free_rank + sum(1 for d in g.invariant_factors if d % ell == 0)


def involution_orbits(g: FinGenAbGroup, s: Involution,
                      bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[Orbit, ...]:
    """Orbits of an involution on a finite group, fixed orbits flagged.

    Orbits are listed by their lexicographically smallest element, so the
    output order is deterministic.
    """
    if s.group != g:
        raise ValueError("involution does not act on the given group")
    seen: set[tuple[int, ...]] = set()
    orbits: list[Orbit] = []
    for x in g.elements(bound):
        if x in seen:
            continue
        y = s.apply(x)
        members = (x,) if y == x else (x, y)
        seen.update(members)
        orbits.append(Orbit(elements=members, fixed=len(members) == 1))
    return tuple(orbits)
