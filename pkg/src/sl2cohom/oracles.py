"""Brute-force oracle suites backing the ``verify`` command.

Each suite checks a fast exact algorithm against an independent slow
route: Smith-form output against reconstruction and fraction-free
determinants, kernels and cokernels against exhaustive enumeration,
graded dimensions against blind monomial enumeration, class groups
against reduced-form counts, and elliptic point counts obtained from the
quadratic character against full enumeration.  All randomness is seeded,
so two runs produce identical results.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod

from .abelian import (
    FinGenAbGroup,
    GroupHom,
    contains_in_image,
    cokernel,
    kernel,
    smith_normal_form,
)
from .arithdata import (
    class_group_imaginary_quadratic,
    compose,
    is_fundamental_discriminant,
    principal_form,
    reduce_form,
    reduced_forms,
)
from .cohomengine import ComponentRing, graded_dimension
from .curve import (
    EllipticMinusPoint,
    FiniteFieldSpec,
    count_points_elliptic,
    elliptic_points,
    get_field,
)


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    detail: str


# ---------------------------------------------------------------------------
# independent helpers
# ---------------------------------------------------------------------------

def bareiss_determinant(matrix) -> int:
    """Fraction-free exact determinant (independent of the Smith form)."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def random_finite_group(rng: random.Random, max_order: int = 200) -> FinGenAbGroup:
    orders = []
    while True:
        candidate = rng.randint(1, 12)
        if prod(orders, start=1) * candidate > max_order:
            break
        orders.append(candidate)
        if len(orders) >= 3 or rng.random() < 0.3:
            break
    return FinGenAbGroup.from_cyclic_orders(orders)


def random_hom(rng: random.Random, domain: FinGenAbGroup,
               codomain: FinGenAbGroup) -> GroupHom:
    rows = []
    for p in codomain.orders:
        row = []
        for o in domain.orders:
            if o == 0:
                row.append(rng.randint(-4, 4))
            else:
                g = gcd(p, o) if p else 1
                step = p // g if p else 0
                row.append(step * rng.randrange(g) if p else 0)
        rows.append(row)
    return GroupHom(domain, codomain, rows)


def brute_structure_from_elements(elements, add, zero) -> FinGenAbGroup:
    """Invariant factors of a finite abelian group given as a raw element set.

    Uses only torsion counting: for each prime p the numbers of elements
    killed by p^j determine the partition of the p-part.
    """
    size = len(elements)
    if size == 1:
        return FinGenAbGroup.trivial()
    primes = []
    m = size
    f = 2
    while f * f <= m:
        if m % f == 0:
            primes.append(f)
            while m % f == 0:
                m //= f
        f += 1
    if m > 1:
        primes.append(m)

    def scaled(x, n):
        acc = zero
        cur = x
        while n:
            if n & 1:
                acc = add(acc, cur)
            cur = add(cur, cur)
            n >>= 1
        return acc

    exponents_by_prime = {}
    for p in primes:
        counts = [1]
        j = 1
        while True:
            c = sum(1 for x in elements if scaled(x, p ** j) == zero)
            counts.append(c)
            if c == counts[-2]:
                counts.pop()
                break
            j += 1
        # m_j = #{i : lambda_i >= j}; partition recovered as its conjugate
        logs = []
        for j in range(1, len(counts)):
            ratio = counts[j] // counts[j - 1]
            m_j = 0
            while p ** m_j < ratio:
                m_j += 1
            logs.append(m_j)
        lam = []
        for i in range(max(logs, default=0)):
            lam.append(sum(1 for m_j in logs if m_j > i))
        exponents_by_prime[p] = sorted(lam, reverse=True)
    slots = max((len(v) for v in exponents_by_prime.values()), default=0)
    factors = []
    for s in range(slots):
        value = 1
        for p, lam in exponents_by_prime.items():
            if s < len(lam):
                value *= p ** lam[s]
        factors.append(value)
    factors = [v for v in factors if v > 1]
    return FinGenAbGroup(0, tuple(sorted(factors)))


def monomial_count_oracle(kind: str, rank: int, degree: int,
                          laurent_window: int = 40) -> int:
    """Blind monomial enumeration for the four component shapes."""
    count = 0
    subsets = [frozenset(c) for k in range(rank + 1)
               for c in combinations(range(rank), k)]
    if kind in ("NonInvariant", "Invariant"):
        for m in range(-laurent_window, laurent_window + 1):
            for t in subsets:
                if 2 * m + len(t) != degree:
                    continue
                if kind == "Invariant" and (m + len(t)) % 2:
                    continue
                count += 1
        return count
    for m in range(0, laurent_window + 1):
        for delta in (0, 1):
            for t in subsets:
                if 2 * m + delta + len(t) != degree:
                    continue
                if kind == "MonomialFF" and (m + delta + len(t)) % 2:
                    continue
                count += 1
    return count


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_snf_reconstruction(count: int = 200, seed: int = 20250808) -> SuiteResult:
    rng = random.Random(seed)
    name = "snf_reconstruction"
    for trial in range(count):
        nrows = rng.randint(1, 6)
        ncols = rng.randint(1, 6)
        matrix = [[rng.randint(-20, 20) for _ in range(ncols)] for _ in range(nrows)]
        left, diag, right = smith_normal_form(matrix)
        product = _mat_mul(_mat_mul(left, matrix), right)
        for i in range(nrows):
            for j in range(ncols):
                expected = diag[i] if i == j and i < len(diag) else 0
                if product[i][j] != expected:
                    return SuiteResult(name, False, f"trial {trial}: not diagonal")
        for a, b in zip(diag, diag[1:]):
            if a and b % a or (a == 0 and b != 0):
                return SuiteResult(name, False, f"trial {trial}: no divisibility chain")
        if abs(bareiss_determinant(left)) != 1 or abs(bareiss_determinant(right)) != 1:
            return SuiteResult(name, False, f"trial {trial}: transform not unimodular")
        if nrows == ncols:
            if abs(bareiss_determinant(matrix)) != prod(diag, start=1):
                return SuiteResult(name, False, f"trial {trial}: determinant mismatch")
    return SuiteResult(name, True, f"{count} random matrices")


def _mat_mul(a, b):
    if not a:
        return []
    inner = len(a[0])
    width = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(width)]
            for i in range(len(a))]


def suite_kernel_cokernel_enumeration(count: int = 80, seed: int = 1117) -> SuiteResult:
    rng = random.Random(seed)
    name = "kernel_cokernel_enumeration"
    for trial in range(count):
        domain = random_finite_group(rng)
        codomain = random_finite_group(rng)
        f = random_hom(rng, domain, codomain)
        dom_elements = list(domain.elements())
        zero = codomain.zero()
        kernel_set = {x for x in dom_elements if f.apply(x) == zero}
        k, incl = kernel(f)
        image_of_incl = {incl.apply(x) for x in k.elements()}
        if image_of_incl != kernel_set:
            return SuiteResult(name, False, f"trial {trial}: kernel set mismatch")
        brute_k = brute_structure_from_elements(kernel_set, domain.add, domain.zero())
        if brute_k != k:
            return SuiteResult(name, False, f"trial {trial}: kernel structure mismatch")
        image = {f.apply(x) for x in dom_elements}
        c, proj = cokernel(f)
        rep_of = {}
        for y in codomain.elements():
            rep_of[y] = min(codomain.add(y, s) for s in image)
        reps = sorted(set(rep_of.values()))
        if c.order != len(reps):
            return SuiteResult(name, False, f"trial {trial}: cokernel order mismatch")

        def coset_add(u, v):
            return rep_of[codomain.add(u, v)]

        brute_c = brute_structure_from_elements(reps, coset_add, rep_of[zero])
        if brute_c != c:
            return SuiteResult(name, False, f"trial {trial}: cokernel structure mismatch")
        if {proj.apply(y) for y in codomain.elements()} != set(c.elements()):
            return SuiteResult(name, False, f"trial {trial}: projection not onto")
        for y in list(codomain.elements())[:20]:
            if contains_in_image(f, y) != (y in image):
                return SuiteResult(name, False, f"trial {trial}: membership mismatch")
    return SuiteResult(name, True, f"{count} random homomorphisms")


def suite_graded_dimension_oracle(max_rank: int = 6, lo: int = -4, hi: int = 12) -> SuiteResult:
    name = "graded_dimension_oracle"
    for kind in ("NonInvariant", "Invariant", "UnitsFF", "MonomialFF"):
        for rank in range(max_rank + 1):
            comp = ComponentRing(kind=kind, rank=rank)
            for n in range(lo, hi + 1):
                fast = graded_dimension(comp, n)
                slow = monomial_count_oracle(kind, rank, n)
                if fast != slow:
                    return SuiteResult(
                        name, False, f"{kind}({rank}) degree {n}: {fast} vs {slow}")
    return SuiteResult(name, True, f"four shapes, ranks 0..{max_rank}, degrees {lo}..{hi}")


def suite_class_group_forms(limit: int = 400) -> SuiteResult:
    name = "class_group_forms"
    known = {-23: 3, -4: 1, -84: 4, -20: 2, -47: 5}
    for d, h in known.items():
        if len(reduced_forms(d)) != h:
            return SuiteResult(name, False, f"reduced-form count wrong for {d}")
    for d in range(-3, -limit - 1, -1):
        if not is_fundamental_discriminant(d):
            continue
        forms = reduced_forms(d)
        group = class_group_imaginary_quadratic(d)
        if group.order != len(forms):
            return SuiteResult(name, False, f"{d}: structure order vs form count")
        identity = reduce_form(principal_form(d))
        for f in forms:
            row = [compose(f, g) for g in forms]
            if sorted(row, key=lambda q: (q.a, q.b)) != list(forms):
                return SuiteResult(name, False, f"{d}: row of {f} is not a permutation")
            if compose(f, identity) != f:
                return SuiteResult(name, False, f"{d}: identity fails on {f}")
    return SuiteResult(name, True, f"all fundamental discriminants down to -{limit}")


def suite_elliptic_point_recount(max_q: int = 25) -> SuiteResult:
    name = "elliptic_point_recount"
    q = 3
    while q <= max_q:
        spec = None
        try:
            spec = FiniteFieldSpec(*_prime_power(q))
        except ValueError:
            spec = None
        if spec is not None and spec.p != 2:
            field = get_field(spec)
            for a in range(spec.q):
                for b in range(spec.q):
                    curve = EllipticMinusPoint(a, b)
                    disc = field.add(field.mul(field.from_int(4), field.pow(a, 3)) if a else 0,
                                     field.mul(field.from_int(27), field.mul(b, b)) if b else 0)
                    if disc == 0:
                        continue
                    by_enum = len(elliptic_points(curve, field))
                    by_character = count_points_elliptic(curve, field)
                    if by_enum != by_character:
                        return SuiteResult(
                            name, False, f"q={spec.q} a={a} b={b}: {by_enum} vs {by_character}")
                    if (by_enum - spec.q - 1) ** 2 > 4 * spec.q:
                        return SuiteResult(name, False, f"q={spec.q} a={a} b={b}: Hasse violated")
        q += 1
    return SuiteResult(name, True, f"all odd-characteristic fields with q <= {max_q}")


def _prime_power(q: int) -> tuple[int, int]:
    p = 2
    while p * p <= q:
        if q % p == 0:
            e = 0
            r = q
            while r % p == 0:
                r //= p
                e += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, e
        p += 1
    return q, 1


def run_all_suites() -> list[SuiteResult]:
    return [
        suite_snf_reconstruction(),
        suite_kernel_cokernel_enumeration(),
        suite_graded_dimension_oracle(),
        suite_class_group_forms(),
        suite_elliptic_point_recount(),
    ]
