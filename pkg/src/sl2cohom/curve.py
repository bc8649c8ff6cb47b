"""Function-field arithmetic: small finite fields and punctured curves.

Finite fields GF(q) with q <= 2^16 are realized through exp/log tables
over an irreducible modulus; elements are encoded as integers 0..q-1 in
base-p digits.  Curves are either the projective line minus a set of
closed points or a short-Weierstrass elliptic curve minus its point at
infinity; Picard groups come from divisor-class bookkeeping in the first
case and from exhaustive point counting in the second.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .abelian import (
    DEFAULT_ENUMERATION_BOUND,
    FinGenAbGroup,
    GroupHom,
    Involution,
    Orbit,
    involution_orbits,
    is_prime,
)

MAX_FIELD_SIZE = 1 << 16


class SingularCurveError(Exception):
    """The requested Weierstrass model does not define a smooth curve."""


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteFieldSpec:
    p: int
    e: int = 1

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError("extension degree must be positive")
        if self.q > MAX_FIELD_SIZE:
            raise ValueError(f"field size {self.q} exceeds {MAX_FIELD_SIZE}")

    @property
    def q(self) -> int:
        return self.p ** self.e


def field_spec_from_order(q: int) -> FiniteFieldSpec:
    """Factor a prime power into (p, e)."""
    if q < 2:
        raise ValueError("field order must be at least 2")
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
            return FiniteFieldSpec(p, e)
        p += 1
    return FiniteFieldSpec(q, 1)


def _poly_mul_mod(a, b, modulus, p):
    e = len(modulus) - 1
    out = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    for i in range(len(out) - 1, e - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for j in range(e):
                out[i - e + j] = (out[i - e + j] - c * modulus[j]) % p
    return out[:e]


def _poly_pow_mod(base, exp, modulus, p):
    e = len(modulus) - 1
    result = [1] + [0] * (e - 1)
    while exp:
        if exp & 1:
            result = _poly_mul_mod(result, base, modulus, p)
        base = _poly_mul_mod(base, base, modulus, p)
        exp >>= 1
    return result


def _is_irreducible(modulus, p):
    """Rabin test: x^(p^e) = x mod f and gcd-freeness at proper divisors."""
    e = len(modulus) - 1
    x = [0, 1] + [0] * (e - 2) if e >= 2 else [0]
    power = _poly_pow_mod(x, p ** e, modulus, p)
    if power != x:
        return False
    for r in _prime_divisors(e):
        power = _poly_pow_mod(x, p ** (e // r), modulus, p)
        diff = [(a - b) % p for a, b in zip(power, x)]
        if _poly_gcd_is_nontrivial(diff, modulus, p):
            return False
    return True


def _prime_divisors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _poly_gcd_is_nontrivial(a, b_full, p):
    a = list(a)
    b = list(b_full)
    inv = lambda v: pow(v, p - 2, p)

    def deg(poly):
        for i in range(len(poly) - 1, -1, -1):
            if poly[i]:
                return i
        return -1

    while True:
        da, db = deg(a), deg(b)
        if da < 0:
            return db > 0
        if da > db:
            a, b = b, a
            continue
        factor = b[db] * inv(a[da]) % p
        for i in range(da + 1):
            b[db - da + i] = (b[db - da + i] - factor * a[i]) % p


def _find_modulus(p, e):
    """Smallest monic irreducible polynomial of degree e over GF(p)."""
    for code in range(p ** e):
        coeffs = []
        c = code
        for _ in range(e):
            coeffs.append(c % p)
            c //= p
        modulus = coeffs + [1]
        if _is_irreducible(modulus, p):
            return modulus
    raise ArithmeticError("no irreducible modulus found")  # unreachable


class FiniteField:
    """GF(q) arithmetic with exp/log tables; elements are ints 0..q-1.

    The encoding of an element is its base-p digit vector read as an
    integer; constants 0..p-1 are encoded as themselves.
    """

    def __init__(self, spec: FiniteFieldSpec):
        self.spec = spec
        self.p, self.e, self.q = spec.p, spec.e, spec.q
        if self.e == 1:
            self.modulus = None
        else:
            self.modulus = _find_modulus(self.p, self.e)
        self.exp, self.log = self._build_tables()
        self._self_check()

    # -- encoding helpers ---------------------------------------------------
    def _decode(self, code: int):
        digits = []
        for _ in range(self.e):
            digits.append(code % self.p)
            code //= self.p
        return digits

    def _encode(self, digits) -> int:
        code = 0
        for d in reversed(digits):
            code = code * self.p + d
        return code

    def _raw_mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        prod = _poly_mul_mod(self._decode(a), self._decode(b), self.modulus, self.p)
        return self._encode(prod)

    def _build_tables(self):
        # scan for a multiplicative generator, building its power table
        order_needed = self.q - 1
        if self.q == 2:
            return [1], [0, 0]
        for cand in range(2, self.q) if self.e == 1 else range(self.p, self.q):
            exp = [1]
            cur = cand
            while cur != 1 and len(exp) <= order_needed:
                exp.append(cur)
                cur = self._raw_mul(cur, cand)
            if len(exp) == order_needed:
                log = [0] * self.q
                for i, v in enumerate(exp):
                    log[v] = i
                return exp, log
        raise ArithmeticError("no generator found")  # unreachable for q >= 3

    def _self_check(self):
        for x in range(1, self.q):
            if self.mul(x, self.inv(x)) != 1:
                raise ArithmeticError("inconsistent exp/log tables")

    # -- field operations ----------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._encode([(x + y) % self.p
                             for x, y in zip(self._decode(a), self._decode(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._encode([-x % self.p for x in self._decode(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[-self.log[a] % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("zero to a nonpositive power")
            return 0
        return self.exp[(self.log[a] * n) % (self.q - 1)]

    def from_int(self, n: int) -> int:
        """Embed an ordinary integer as a prime-field constant."""
        return n % self.p

    def is_square(self, a: int) -> bool:
        if a == 0:
            return True
        if self.p == 2:
            return True
        return self.log[a] % 2 == 0

    def sqrt(self, a: int):
        if a == 0:
            return 0
        if self.p == 2:
            # squaring is the Frobenius bijection, so halve the discrete log
            half = pow(2, -1, self.q - 1) if self.q > 2 else 0
            return self.exp[self.log[a] * half % (self.q - 1)]
        if self.log[a] % 2:
            return None
        return self.exp[self.log[a] // 2]

    def elements(self):
        return range(self.q)


_FIELD_CACHE: dict[FiniteFieldSpec, FiniteField] = {}


def get_field(spec: FiniteFieldSpec) -> FiniteField:
    if spec not in _FIELD_CACHE:
        _FIELD_CACHE[spec] = FiniteField(spec)
    return _FIELD_CACHE[spec]


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class P1Minus:
    """The projective line minus closed points of the given degrees."""

    puncture_degrees: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "puncture_degrees",
                           tuple(int(d) for d in self.puncture_degrees))
        if not self.puncture_degrees:
            raise ValueError("need at least one puncture (the curve must be affine)")
        if any(d < 1 for d in self.puncture_degrees):
            raise ValueError("puncture degrees must be positive")

    @property
    def punctures(self) -> int:
        return len(self.puncture_degrees)


@dataclass(frozen=True)
class EllipticMinusPoint:
    """y^2 = x^3 + a x + b minus the rational point at infinity.

    Coefficients are field-element encodings for the field the curve is
    used over; validity (nonzero discriminant, odd characteristic) is
    checked once the field is known.
    """

    a: int
    b: int


CurveSpec = P1Minus | EllipticMinusPoint


@dataclass(frozen=True)
class PicardData:
    group: FinGenAbGroup
    iota: Involution
    element_labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.group.is_finite:
            raise ValueError("Picard group must be finite here")
        if self.iota.group != self.group:
            raise ValueError("involution must act on the Picard group")


def _check_elliptic(curve: EllipticMinusPoint, field: FiniteField) -> None:
    if field.p == 2:
        raise SingularCurveError(
            "y^2 = x^3 + ax + b is singular in characteristic 2")
    if not (0 <= curve.a < field.q and 0 <= curve.b < field.q):
        raise ValueError("coefficients must be encoded field elements")
    four_a3 = field.mul(field.from_int(4), field.pow(curve.a, 3)) if curve.a else 0
    t27b2 = field.mul(field.from_int(27), field.mul(curve.b, curve.b)) if curve.b else 0
    if field.add(four_a3, t27b2) == 0:
        raise SingularCurveError("discriminant 4a^3 + 27b^2 vanishes")


def elliptic_points(curve: EllipticMinusPoint, field: FiniteField):
    """All rational points, point at infinity encoded as None."""
    _check_elliptic(curve, field)
    points = [None]
    for x in field.elements():
        rhs = field.add(field.add(field.mul(field.mul(x, x), x),
                                  field.mul(curve.a, x)), curve.b)
        if rhs == 0:
            points.append((x, 0))
        elif field.is_square(rhs):
            y = field.sqrt(rhs)
            points.append((x, y))
            points.append((x, field.neg(y)))
    return points


def count_points_elliptic(curve: EllipticMinusPoint, field: FiniteField) -> int:
    """Point count via the quadratic character, q + 1 + sum chi(x^3+ax+b)."""
    _check_elliptic(curve, field)
    total = field.q + 1
    for x in field.elements():
        rhs = field.add(field.add(field.mul(field.mul(x, x), x),
                                  field.mul(curve.a, x)), curve.b)
        if rhs:
            total += 1 if field.is_square(rhs) else -1
    return total


def ec_add(field: FiniteField, a_coeff: int, p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2 and field.add(y1, y2) == 0:
        return None
    if p1 == p2:
        num = field.add(field.mul(field.from_int(3), field.mul(x1, x1)), a_coeff)
        den = field.mul(field.from_int(2), y1)
    else:
        num = field.sub(y2, y1)
        den = field.sub(x2, x1)
    slope = field.div(num, den)
    x3 = field.sub(field.sub(field.mul(slope, slope), x1), x2)
    y3 = field.sub(field.mul(slope, field.sub(x1, x3)), y1)
    return (x3, y3)


def ec_scalar(field: FiniteField, a_coeff: int, n: int, point):
    result = None
    base = point
    while n > 0:
        if n & 1:
            result = ec_add(field, a_coeff, result, base)
        base = ec_add(field, a_coeff, base, base)
        n >>= 1
    return result


def _divisors(n: int):
    small, large = [], []
    f = 1
    while f * f <= n:
        if n % f == 0:
            small.append(f)
            if f != n // f:
                large.append(n // f)
        f += 1
    return small + large[::-1]


def count_and_structure_elliptic(curve: EllipticMinusPoint,
                                 spec: FiniteFieldSpec) -> FinGenAbGroup:
    """Rational-point group with structure Z/d1 + Z/d2, d1 | d2.

    The order comes from exhaustive enumeration; the structure from the
    maximal element order, validated by counting d1-torsion.  The count is
    required to satisfy the Hasse bound |N - (q+1)| <= 2 sqrt(q).
    """
    field = get_field(spec)
    points = elliptic_points(curve, field)
    n = len(points)
    if (n - field.q - 1) ** 2 > 4 * field.q:
        raise ArithmeticError("point count violates the Hasse bound")
    divs = _divisors(n)
    max_order = 1
    for pt in points:
        if pt is None:
            continue
        for d in divs:
            if ec_scalar(field, curve.a, d, pt) is None:
                if d > max_order:
                    max_order = d
                break
    d2 = max_order
    d1 = n // d2
    if d1 > 1:
        if d2 % d1:
            raise ArithmeticError("group exponent does not split the order")
        torsion = sum(1 for pt in points if ec_scalar(field, curve.a, d1, pt) is None)
        if torsion != d1 * d1:
            raise ArithmeticError("torsion count contradicts rank-2 structure")
    factors = tuple(d for d in (d1, d2) if d > 1)
    return FinGenAbGroup(0, factors)


# ---------------------------------------------------------------------------
# Picard groups and inversion classes
# ---------------------------------------------------------------------------

def pic_p1_minus(degrees) -> PicardData:
    """Divisor classes of the punctured projective line.

    Removing closed points of degrees d_i from the projective line leaves
    the cyclic group Z/gcd(d_i), generated by the hyperplane class; the
    inversion involution is negation.
    """
    curve = P1Minus(tuple(degrees))
    g = 0
    for d in curve.puncture_degrees:
        g = gcd(g, d)
    group = FinGenAbGroup.cyclic(g) if g > 1 else FinGenAbGroup.trivial()
    iota = Involution(GroupHom.negation(group))
    labels = tuple(f"O({k})" for k in range(max(g, 1)))
    return PicardData(group=group, iota=iota, element_labels=labels)


def picard_of_curve(curve: CurveSpec, spec: FiniteFieldSpec | None = None) -> PicardData:
    if isinstance(curve, P1Minus):
        return pic_p1_minus(curve.puncture_degrees)
    if spec is None:
        raise ValueError("elliptic Picard groups need the finite field")
    group = count_and_structure_elliptic(curve, spec)
    iota = Involution(GroupHom.negation(group))
    return PicardData(group=group, iota=iota, element_labels=None)


def component_classes(pic: PicardData,
                      bound: int = DEFAULT_ENUMERATION_BOUND) -> tuple[Orbit, ...]:
    """Orbits of the inversion involution; singletons are self-inverse."""
    return involution_orbits(pic.group, pic.iota, bound)
