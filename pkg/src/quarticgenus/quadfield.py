"""Exact arithmetic in the real quadratic field Q(sqrt(p)), p = 2 or p = 1 mod 4.

Elements are stored as (u + v*sqrt(p)) / den with den in {1, 2}; only
elements of the maximal order are representable.
"""

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd, isqrt

from .arith import is_prime, is_square
from .errors import InvalidPrime, MixedField, NotIntegral


def check_admissible_prime(p: int) -> None:
    if not (p == 2 or (p % 4 == 1 and is_prime(p))):
        raise InvalidPrime(f"p must be 2 or a prime = 1 mod 4, got {p}")


@dataclass(frozen=True)
class QuadElem:
    u: int
    v: int
    den: int
    p: int

    def __post_init__(self):
        if self.den not in (1, 2):
            raise NotIntegral(f"denominator {self.den} not in {{1, 2}}")
        if self.den == 2:
            if (self.u - self.v) % 2:
                raise NotIntegral(f"({self.u} + {self.v}*sqrt({self.p}))/2 is not integral")
            if self.p % 4 != 1:
                raise NotIntegral(f"half-integral element in Z[sqrt({self.p})]")
            if self.u % 2 == 0 and self.v % 2 == 0:
                object.__setattr__(self, "u", self.u // 2)
                object.__setattr__(self, "v", self.v // 2)
                object.__setattr__(self, "den", 1)

    @classmethod
    def of(cls, n: int, p: int) -> "QuadElem":
        return cls(n, 0, 1, p)

    @classmethod
    def sqrt_p(cls, p: int) -> "QuadElem":
        return cls(0, 1, 1, p)

    def _same(self, other):
        if self.p != other.p:
            raise MixedField(f"elements of Q(sqrt({self.p})) and Q(sqrt({other.p}))")

    def __mul__(self, other):
        if isinstance(other, int):
            return QuadElem(self.u * other, self.v * other, self.den, self.p)
        self._same(other)
        u = self.u * other.u + self.p * self.v * other.v
        v = self.u * other.v + self.v * other.u
        den = self.den * other.den
        if den == 4:
            # both factors half-integral: the product is again in the maximal order
            assert u % 2 == 0 and v % 2 == 0
            u, v, den = u // 2, v // 2, 2
        return QuadElem(u, v, den, self.p)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, int):
            other = QuadElem.of(other, self.p)
        self._same(other)
        if self.den == other.den:
            return QuadElem(self.u + other.u, self.v + other.v, self.den, self.p)
        a, b = (self, other) if self.den == 2 else (other, self)
        return QuadElem(a.u + 2 * b.u, a.v + 2 * b.v, 2, self.p)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.u, -self.v, self.den, self.p)

    def __sub__(self, other):
        return self + (-other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result, base = QuadElem.of(1, self.p), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "QuadElem":
        return QuadElem(self.u, -self.v, self.den, self.p)

    def trace(self) -> int:
        return 2 * self.u // self.den

    def is_rational(self) -> bool:
        return self.v == 0

    def sign(self) -> int:
        """Sign of the real number u + v*sqrt(p) under the positive embedding."""
        u, v = self.u, self.v
        if u >= 0 and v >= 0:
            return 0 if u == v == 0 else 1
        if u <= 0 and v <= 0:
            return -1
        # opposite signs: compare u^2 with p v^2
        bigger_u = u * u > self.p * v * v
        return (1 if u > 0 else -1) if bigger_u else (1 if v > 0 else -1)

    def is_totally_positive(self) -> bool:
        return self.sign() > 0 and self.conj().sign() > 0

    def basis_coords(self) -> tuple:
        """Coordinates (s, t) on the integral basis {1, w} of the maximal order.

        w = (1 + sqrt(p))/2 for p = 1 mod 4 and w = sqrt(2) for p = 2.
        """
        if self.p == 2:
            return self.u, self.v
        if self.den == 2:
            return (self.u - self.v) // 2, self.v
        return self.u - self.v, 2 * self.v

    @classmethod
    def from_basis(cls, s: int, t: int, p: int) -> "QuadElem":
        if p == 2:
            return cls(s, t, 1, p)
        return cls(2 * s + t, t, 2, p)

    def content(self) -> int:
        """Largest rational integer g with self/g still in the maximal order."""
        s, t = self.basis_coords()
        return gcd(s, t)

    def exact_div(self, g: int) -> "QuadElem":
        s, t = self.basis_coords()
        if s % g or t % g:
            raise NotIntegral(f"{self} is not divisible by {g}")
        return QuadElem.from_basis(s // g, t // g, self.p)

    def __str__(self):
        p = self.p
        if self.v == 0:
            body = str(self.u)
        elif self.u == 0:
            body = f"{self.v}*sqrt({p})"
        else:
            op = "+" if self.v > 0 else "-"
            body = f"{self.u}{op}{abs(self.v)}*sqrt({p})"
        return body if self.den == 1 else f"({body})/2"


def norm(x: QuadElem):
    """N(x) = (u^2 - p v^2) / den^2; always an integer for elements of the maximal order."""
    num = x.u * x.u - x.p * x.v * x.v
    d2 = x.den * x.den
    assert num % d2 == 0
    return num // d2


def quad_mul(x: QuadElem, y: QuadElem) -> QuadElem:
    return x * y


def _cf_floor(P: int, D: int, Q: int) -> int:
    """floor((P + sqrt(D)) / Q) for non-square D."""
    r = isqrt(D)
    if Q > 0:
        return (P + r) // Q
    return (-P - r - 1) // (-Q)


@lru_cache(maxsize=None)
def fundamental_unit(p: int) -> QuadElem:
    """Fundamental unit > 1 of the maximal order, by continued fractions.

    For p = 1 mod 4 the expansion is that of w = (1 + sqrt(p))/2 and a
    convergent h/k yields the candidate h - k*conj(w); for p = 2 the
    expansion of sqrt(2) yields h + k*sqrt(2). The first candidate of norm
    +-1 is the fundamental unit.
    """
    check_admissible_prime(p)
    P, Q = (0, 1) if p == 2 else (1, 2)
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    while True:
        a = _cf_floor(P, p, Q)
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        unit = QuadElem(h, k, 1, 2) if p == 2 else QuadElem(2 * h - k, k, 2, p)
        if abs(norm(unit)) == 1:
            break
        P = a * Q - P
        Q = (p - P * P) // Q
    if p != 2:
        assert norm(unit) == -1, f"fundamental unit of Q(sqrt({p})) has norm +1"
    return unit


def unit_upper_bound(p: int) -> tuple:
    """Rational upper bound (num, den) for the real value of the fundamental unit."""
    eps = fundamental_unit(p)
    return eps.u + eps.v * (isqrt(p) + 1), eps.den


def field_discriminant(p: int) -> int:
    return 8 if p == 2 else p


@lru_cache(maxsize=None)
def reduced_forms(D: int) -> tuple:
    """All reduced indefinite forms (a, b, c) of discriminant D.

    Reduced means 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b.
    """
    r = isqrt(D)
    forms = []
    for b in range(1, r + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4
        for a_abs in range(1, -ac + 1):
            if ac % a_abs:
                continue
            if not (2 * a_abs + b > r and 2 * a_abs - b <= r):
                continue
            for a in (a_abs, -a_abs):
                forms.append((a, b, ac // a))
    return tuple(forms)


def rho(form: tuple, D: int) -> tuple:
    """One step of the reduction cycle: (a, b, c) -> (c, b', a')."""
    a, b, c = form
    r = isqrt(D)
    m = 2 * abs(c)
    b2 = r - (r + b) % m
    c2 = (b2 * b2 - D) // (4 * c)
    return c, b2, c2


def form_cycles(D: int) -> list:
    remaining = set(reduced_forms(D))
    cycles = []
    while remaining:
        start = min(remaining)
        cycle, f = [], start
        while True:
            cycle.append(f)
            remaining.discard(f)
            f = rho(f, D)
            if f == start:
                break
        cycles.append(cycle)
    return cycles


@lru_cache(maxsize=None)
def class_number(p: int) -> int:
    """Class number of Q(sqrt(p)) from the cycles of reduced forms.

    The cycle count is the narrow class number; the fundamental unit has
    norm -1 here, so it equals the wide class number.
    """
    check_admissible_prime(p)
    h = len(form_cycles(field_discriminant(p)))
    assert h % 2 == 1, f"even class number {h} for Q(sqrt({p}))"
    return h


class Mod4Tag(Enum):
    PLUS_ONE = "+1"
    MINUS_ONE = "-1"
    UNIT_SQUARE = "+(1+sqrt2)^2"
    MINUS_UNIT_SQUARE = "-(1+sqrt2)^2"
    OTHER = "other"


@dataclass(frozen=True)
class Mod4Class:
    tag: Mod4Tag
    residue: tuple


def mod4_residue(x: QuadElem) -> tuple:
    s, t = x.basis_coords()
    return s % 4, t % 4


def congruent_mod4(x: QuadElem, y: QuadElem) -> bool:
    return mod4_residue(x - y) == (0, 0)


def mod4_class(x: QuadElem) -> Mod4Class:
    # QuadElem construction already rejects non-integral elements
    p = x.p
    one = QuadElem.of(1, p)
    if congruent_mod4(x, one):
        tag = Mod4Tag.PLUS_ONE
    elif congruent_mod4(x, -one):
        tag = Mod4Tag.MINUS_ONE
    elif p == 2 and congruent_mod4(x, QuadElem(3, 2, 1, 2)):
        tag = Mod4Tag.UNIT_SQUARE
    elif p == 2 and congruent_mod4(x, QuadElem(-3, -2, 1, 2)):
        tag = Mod4Tag.MINUS_UNIT_SQUARE
    else:
        tag = Mod4Tag.OTHER
    return Mod4Class(tag, mod4_residue(x))


def is_square_element(x: QuadElem) -> bool:
    """Whether x is the square of an element of Q(sqrt(p)).

    If x = g^2 then N(x) = n^2 and g satisfies g^2 - T g + N(g) = 0 with
    N(g) = +-n and T^2 = Tr(x) + 2 N(g), so g = (x + N(g)) / T whenever T != 0.
    """
    p = x.p
    if x.u == 0 and x.v == 0:
        return True
    if x.v == 0:
        r = x.u // x.den if x.den == 1 else None
        if r is None or r < 0:
            return False
        return is_square(r) or (r % p == 0 and is_square(r // p))
    nx = norm(x)
    if not is_square(nx):
        return False
    n = isqrt(nx)
    for ng in (n, -n):
        t2 = x.trace() + 2 * ng
        if t2 <= 0 or not is_square(t2):
            continue
        T = isqrt(t2)
        cand = x + ng
        s, t = cand.basis_coords()
        if s % T or t % T:
            continue
        g = QuadElem.from_basis(s // T, t // T, p)
        if g * g == x:
            return True
    return False
