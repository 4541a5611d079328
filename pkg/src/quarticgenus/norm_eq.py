"""The norm equation x^2 - p*y^2 = q^(lambda*h) and its parity/residue properties."""

from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt, log, sqrt
from typing import Optional

from .arith import (
    is_prime,
    jacobi,
    legendre,
    quartic_symbol_mod_2,
    quartic_symbol_mod_p,
    sqrt_mod,
    v2,
)
from .errors import FormMismatch, InvalidPrime, NoSolutionInBound
from .quadfield import (
    QuadElem,
    check_admissible_prime,
    class_number,
    field_discriminant,
    fundamental_unit,
    norm,
)


class Form(Enum):
    F1 = "p=q=1 mod 4, (p/q)=1: x odd, y even"
    F2 = "p=2, q=1 mod 8: x odd, 4|y"
    F3 = "p=1, q=3 mod 4, (p/q)=1: x even, y odd"


@dataclass(frozen=True)
class PellSolution:
    x: int
    y: int
    q: int
    p: int
    lam: int
    h: int
    form: Optional[Form]
    e: Optional[int]  # 2-adic valuation of the even coordinate

    @property
    def exponent(self) -> int:
        return self.lam * self.h

    def holds(self) -> bool:
        return self.x * self.x - self.p * self.y * self.y == self.q**self.exponent

    def parity_ok(self) -> bool:
        if self.form is Form.F1:
            return self.x % 2 == 1 and self.y % 2 == 0
        if self.form is Form.F2:
            return self.x % 2 == 1 and self.y % 4 == 0
        if self.form is Form.F3:
            return self.x % 2 == 0 and self.y % 2 == 1
        return True


def lambda_for(p: int) -> int:
    check_admissible_prime(p)
    return 3 if p % 8 == 5 else 1


def classify_form(p: int, q: int) -> Optional[Form]:
    """The parity form of (p, q), or None when (p, q) fits none of the three."""
    if not is_prime(q) or q == 2 or q == p:
        return None
    if p == 2:
        return Form.F2 if q % 8 == 1 else None
    if p % 4 != 1 or not is_prime(p) or legendre(p, q) != 1:
        return None
    return Form.F1 if q % 4 == 1 else Form.F3


def _sqrt_mod_prime_power(D: int, q: int, k: int) -> int:
    """A square root of D modulo q^k (q odd, D a unit square mod q), by Hensel lifting."""
    r, mod = sqrt_mod(D, q), q
    for _ in range(k - 1):
        mod *= q
        # r <- r - (r^2 - D) / (2r) mod q^(i+1)
        r = (r - (r * r - D) * pow(2 * r, -1, mod)) % mod
    return r


def ideal_generator(p: int, q: int, exponent: int) -> QuadElem:
    """A generator of Q^exponent, Q a prime of Q(sqrt(p)) above the split prime q.

    The ideal [A, (-B + sqrt(D))/2], A = q^exponent, corresponds to the form
    (A, B, C). Reducing it while tracking the unimodular substitution M
    reaches a form with leading coefficient +-1; the first column (r, s) of
    M then satisfies A r^2 + B r s + C s^2 = +-1, and A r + s (B - sqrt(D))/2
    generates the ideal. Needs the ideal to be principal.
    """
    D = field_discriminant(p)
    A = q**exponent
    B = _sqrt_mod_prime_power(D, q, exponent)
    if (B - D) % 2:
        B += A
    a, b, c = A, B, (B * B - D) // (4 * A)
    m11, m12, m21, m22 = 1, 0, 0, 1
    r = isqrt(D)
    # reduction reaches the cycle within O(log A) steps; the principal cycle
    # is shorter than 2*D steps
    for _ in range(4 * A.bit_length() + 4 * D + 16):
        if abs(a) == 1:
            break
        ac = abs(c)
        if ac > r:
            t_b = -b % (2 * ac)
            if t_b > ac:
                t_b -= 2 * ac
        else:
            t_b = r - (r + b) % (2 * ac)
        t = (t_b + b) // (2 * c)
        a, b, c = c, t_b, a - b * t + c * t * t
        m11, m12 = m12, -m11 + t * m12
        m21, m22 = m22, -m21 + t * m22
    else:
        raise NoSolutionInBound(f"ideal of norm {q}^{exponent} in Q(sqrt({p})) is not principal")
    rr, ss = m11, m21
    assert A * rr * rr + B * rr * ss + ((B * B - D) // (4 * A)) * ss * ss in (1, -1)
    if p == 2:
        return QuadElem(A * rr + ss * B // 2, -ss, 1, 2)
    return QuadElem(2 * A * rr + ss * B, -ss, 2, p)


def _unit_power(p: int, k: int) -> QuadElem:
    eps = fundamental_unit(p)
    if k >= 0:
        return eps**k
    # eps^-1 = -conj(eps) since N(eps) = -1
    return (-eps.conj()) ** (-k)


def _log_abs(x: QuadElem) -> float:
    n = abs(norm(x))
    same = x if x.u * x.v >= 0 else x.conj()
    big = (abs(same.u) + abs(same.v) * sqrt(x.p)) / same.den
    return log(big) if same is x else log(n) - log(big)


def minimal_solution(p: int, q: int, exponent: int, form: Optional[Form] = None) -> tuple:
    """Smallest-y primitive natural solution of x^2 - p y^2 = q^exponent.

    Primitive means gcd(x, y) = 1, i.e. x + y*sqrt(p) generates the
    exponent-th power of a single prime above q. All such solutions are
    +-g*eps^k and their conjugates for one generator g; |y| along the unit
    orbit is smallest where |g eps^k| and |conj(g eps^k)| balance, so a
    window of k around that point suffices. With a form, its parity
    constraint must hold as well.
    """
    rhs = q**exponent
    g = ideal_generator(p, q, exponent)
    log_eps = log(float(fundamental_unit(p).u + fundamental_unit(p).v * sqrt(p)) / fundamental_unit(p).den)
    k0 = round((_log_abs(g.conj()) - _log_abs(g)) / (2 * log_eps))
    best = None
    for k in range(k0 - 8, k0 + 9):
        cand = g * _unit_power(p, k)
        if cand.den != 1 or norm(cand) != rhs:
            continue
        x, y = abs(cand.u), abs(cand.v)
        if form is Form.F2 and y % 4:
            continue
        if best is None or (y, x) < (best[1], best[0]):
            best = (x, y)
    if best is None:
        raise NoSolutionInBound(f"x^2 - {p}*y^2 = {q}^{exponent}: no admissible generator near balance")
    assert gcd(*best) == 1
    return best


def solve_norm_equation(p: int, q: int) -> PellSolution:
    form = classify_form(p, q)
    if form is None:
        raise FormMismatch(f"(p, q) = ({p}, {q}) fits none of the three parity forms")
    lam, h = lambda_for(p), class_number(p)
    x, y = minimal_solution(p, q, lam * h, form)
    even = y if form in (Form.F1, Form.F2) else x
    return PellSolution(x, y, q, p, lam, h, form, v2(even))


def solve_split_prime_p2(q: int) -> PellSolution:
    """q = x^2 - 2 y^2 for a prime q = 7 mod 8 (outside the three forms)."""
    if q % 8 != 7 or not is_prime(q):
        raise InvalidPrime(f"expected a prime = 7 mod 8, got {q}")
    x, y = minimal_solution(2, q, 1)
    return PellSolution(x, y, q, 2, 1, class_number(2), None, None)


def check_two_adic_valuation(sol: PellSolution) -> bool:
    """2-adic valuation of the even coordinate against q mod 8 (odd p only)."""
    if sol.p == 2:
        raise ValueError("the 2-adic valuation statement is for odd p")
    p, q, x, y, e = sol.p, sol.q, sol.x, sol.y, sol.e
    if sol.form is Form.F1:
        return (e == 1) == (q % 8 == 5) and legendre(2, q) == (-1) ** (y // 2)
    if sol.form is Form.F3:
        return (e == 1) == (p * q % 8 == 3) and jacobi(2, p * q) == (-1) ** (x // 2)
    raise FormMismatch(f"no form recorded for {sol}")


def quartic_criterion_sides(sol: PellSolution) -> tuple:
    """(x + y = 1 mod 4, symbol side) of the quartic-symbol equivalence."""
    p, q, x, y = sol.p, sol.q, sol.x, sol.y
    lhs = (x + y) % 4 == 1
    if sol.form is Form.F1:
        rhs = quartic_symbol_mod_p(p, q) == quartic_symbol_mod_p(q, p)
    elif sol.form is Form.F2:
        rhs = quartic_symbol_mod_p(2, q) == quartic_symbol_mod_2(q)
    elif sol.form is Form.F3:
        target = 1 if legendre(x, q) == legendre(y, q) else -1
        rhs = quartic_symbol_mod_p(q, p) == target
    else:
        raise FormMismatch(f"no form recorded for {sol}")
    return lhs, rhs


def check_quartic_criterion(sol: PellSolution) -> bool:
    lhs, rhs = quartic_criterion_sides(sol)
    return lhs == rhs
