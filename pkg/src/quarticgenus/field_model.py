"""Combinatorial data attached to K = Q(sqrt(a * eps_p * sqrt(p))).

The prime factors q_i of a are ordered with the primes that split in
k0 = Q(sqrt(p)) first (ascending), then the inert ones (ascending). The
indices i0 and j0 below are 1-based positions in that order.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .arith import (
    factor_squarefree,
    is_prime,
    legendre,
    quartic_symbol_mod_2,
    quartic_symbol_mod_p,
    sqrt_mod,
    two_squares,
)
from .errors import InvalidInput, NotSquarefree
from .norm_eq import PellSolution, lambda_for, solve_norm_equation, solve_split_prime_p2
from .quadfield import Mod4Tag, QuadElem, class_number, fundamental_unit, mod4_class


@dataclass(frozen=True)
class FieldInput:
    p: int
    a: int

    def __post_init__(self):
        problems = validate_input(self.p, self.a)
        if problems:
            raise InvalidInput(problems)


def validate_input(p: int, a: int) -> list:
    """Every violated condition on (p, a), as human-readable strings."""
    problems = []
    p_ok = False
    if not isinstance(p, int) or p < 2:
        problems.append(f"p must be prime, got {p}")
    elif p >= 1 << 64:
        problems.append(f"p = {p} is outside the supported 64-bit range")
    elif not is_prime(p):
        problems.append(f"p must be prime, got {p}")
    elif p != 2 and p % 4 != 1:
        problems.append(f"p must be 2 or = 1 mod 4, got {p} = 3 mod 4")
    else:
        p_ok = True
    if not isinstance(a, int) or a < 1:
        problems.append(f"a must be a positive integer, got {a}")
        return problems
    try:
        factor_squarefree(a)
    except NotSquarefree as exc:
        problems.append(f"a must be squarefree: {exc}")
    if p_ok and gcd(a, p) != 1:
        problems.append(f"a = {a} must be coprime to p = {p}")
    if p_ok and p == 2 and a % 2 == 0:
        problems.append(f"a must be odd when p = 2, got {a}")
    return problems


@dataclass(frozen=True)
class PrimeData:
    q: int
    symbol: int  # legendre(p, q), or the splitting sign of q in Q(sqrt(2))
    mod4: int
    mod8: int

    @property
    def splits(self) -> bool:
        return self.symbol == 1


@dataclass(frozen=True)
class FieldContext:
    input: FieldInput
    primes: tuple
    n: int
    m: int
    i0: Optional[int]
    alphas: tuple
    pell: tuple
    j0: Optional[int]
    h: int
    lam: int
    b: int
    c: int
    eps: QuadElem

    @property
    def p(self) -> int:
        return self.input.p

    @property
    def a(self) -> int:
        return self.input.a

    @property
    def a_odd_part(self) -> int:
        return self.a // 2 if self.a % 2 == 0 else self.a

    def q(self, i: int) -> int:
        return self.primes[i - 1].q

    def alpha(self, j: int) -> QuadElem:
        return self.alphas[j - 1]


def splitting_sign(p: int, q: int) -> int:
    """+1 if the odd prime q splits in Q(sqrt(p)), -1 if it stays inert."""
    if p == 2:
        return 1 if q % 8 in (1, 7) else -1
    return legendre(p, q)


def order_primes(p: int, a: int) -> tuple:
    fac = factor_squarefree(a)
    data = [PrimeData(q, splitting_sign(p, q), q % 4, q % 8) for q in fac.odd_primes]
    split = sorted((d for d in data if d.splits), key=lambda d: d.q)
    inert = sorted((d for d in data if not d.splits), key=lambda d: d.q)
    return tuple(split + inert)


def _alpha_from(sol: PellSolution) -> QuadElem:
    base = QuadElem(sol.x, sol.y, 1, sol.p)
    if sol.p != 2 and sol.q % 4 == 3:
        return base * QuadElem.sqrt_p(sol.p)
    return base


def build_field(p: int, a: int) -> FieldContext:
    inp = FieldInput(p, a)
    primes = order_primes(p, a)
    n = len(primes)
    m = sum(1 for d in primes if d.splits)
    i0 = next((i for i, d in enumerate(primes, 1) if d.mod4 == 3), None)
    pell = []
    for d in primes[:m]:
        if p == 2 and d.mod8 == 7:
            pell.append(solve_split_prime_p2(d.q))
        else:
            pell.append(solve_norm_equation(p, d.q))
    alphas = tuple(_alpha_from(s) for s in pell)
    j0 = next((j for j, al in enumerate(alphas, 1) if mod4_class(al).tag is Mod4Tag.MINUS_ONE), None)
    if p == 2:
        b = c = 0
    else:
        b, c = two_squares(p, want_even_b=(a % 2 == 1))
    return FieldContext(
        input=inp,
        primes=primes,
        n=n,
        m=m,
        i0=i0,
        alphas=alphas,
        pell=tuple(pell),
        j0=j0,
        h=class_number(p),
        lam=1 if p == 2 else lambda_for(p),
        b=b,
        c=c,
        eps=fundamental_unit(p),
    )


def q_star(ctx: FieldContext, i: int) -> int:
    if ctx.i0 is None:
        raise IndexError("no prime = 3 mod 4 divides a, so q_i* is undefined")
    if i == ctx.i0:
        raise IndexError(f"q_i* is not defined at i = i0 = {i}")
    if not 1 <= i <= ctx.n:
        raise IndexError(f"prime index {i} outside 1..{ctx.n}")
    q = ctx.q(i)
    return q if q % 4 == 1 else ctx.q(ctx.i0) * q


def alpha_star(ctx: FieldContext, j: int) -> QuadElem:
    if ctx.j0 is None:
        raise IndexError("no alpha_j is = -1 mod 4, so alpha_j* is undefined")
    if j == ctx.j0:
        raise IndexError(f"alpha_j* is not defined at j = j0 = {j}")
    if not 1 <= j <= ctx.m:
        raise IndexError(f"split index {j} outside 1..{ctx.m}")
    al = ctx.alpha(j)
    if mod4_class(al).tag is Mod4Tag.PLUS_ONE:
        return al
    return ctx.alpha(ctx.j0) * al


def p2_twisted_alpha(ctx: FieldContext, j: int) -> QuadElem:
    """eps_2 * alpha_j, the element whose class mod 4 decides beta_j when q_j = 7 mod 8.

    For q_j = 7 mod 8 both x_j and y_j are odd, so alpha_j itself is never
    = +-1 or +-(1+sqrt2)^2 mod 4; the unit multiple eps_2 * alpha_j always is.
    """
    return ctx.eps * ctx.alpha(j)


def beta(ctx: FieldContext, j: int) -> QuadElem:
    if ctx.i0 is None:
        raise IndexError("no prime = 3 mod 4 divides a, so beta_j is undefined")
    if not 1 <= j <= ctx.m:
        raise IndexError(f"split index {j} outside 1..{ctx.m}")
    q0 = ctx.q(ctx.i0)
    if ctx.p == 2:
        qj = ctx.q(j)
        if qj % 8 == 1:
            keep = quartic_symbol_mod_p(2, qj) == quartic_symbol_mod_2(qj)
            return ctx.alpha(j) if keep else ctx.alpha(j) * q0
        twisted = p2_twisted_alpha(ctx, j)
        tag = mod4_class(twisted).tag
        if tag in (Mod4Tag.PLUS_ONE, Mod4Tag.UNIT_SQUARE):
            return twisted
        if tag in (Mod4Tag.MINUS_ONE, Mod4Tag.MINUS_UNIT_SQUARE):
            return twisted * q0
        raise AssertionError(f"eps_2*alpha_{j} = {twisted} matches none of the four classes mod 4")
    al = ctx.alpha(j)
    return al if mod4_class(al).tag is Mod4Tag.PLUS_ONE else al * q0


@dataclass(frozen=True)
class K0Prime:
    """A prime ideal of k0 lying over a rational prime ell."""

    ell: int
    kind: str  # "split", "inert" or "ramified"
    root: Optional[int] = None  # for split odd ell: sqrt(p) = root mod this prime

    def label(self) -> str:
        if self.kind == "split":
            return f"({self.ell}, sqrt(p) - {self.root})"
        if self.kind == "ramified" and self.ell != 2:
            return "(sqrt(p))"
        return f"({self.ell})" if self.kind == "inert" else f"prime over {self.ell}"


@dataclass(frozen=True)
class DiscriminantInfo:
    abs_disc: dict  # rational prime -> exponent
    rel_disc: tuple  # (power of two, a-part, exponent of sqrt(p)); generator 2^k * a0 * sqrt(p)
    ramified: tuple  # (rational prime, ramification index in K/Q)
    t: int
    infinite_ramified: int = 0
    ramified_k0_primes: tuple = field(default=())

    @property
    def value(self) -> int:
        out = 1
        for ell, k in self.abs_disc.items():
            out *= ell**k
        return out

    def rel_disc_str(self, p: int) -> str:
        two, apart, _ = self.rel_disc
        parts = [str(x) for x in (two, apart) if x != 1]
        return "*".join(parts + [f"sqrt({p})"])


def dyadic_primes(p: int) -> tuple:
    """Prime ideals of k0 above 2."""
    if p == 2:
        return (K0Prime(2, "ramified"),)
    if p % 8 == 1:
        return (K0Prime(2, "split", 1), K0Prime(2, "split", -1))
    return (K0Prime(2, "inert"),)


def k0_primes_over(p: int, ell: int) -> tuple:
    if ell == 2:
        return dyadic_primes(p)
    if ell == p:
        return (K0Prime(ell, "ramified"),)
    if splitting_sign(p, ell) == 1:
        s = sqrt_mod(p, ell)
        return (K0Prime(ell, "split", s), K0Prime(ell, "split", ell - s))
    return (K0Prime(ell, "inert"),)


def two_ramifies(ctx: FieldContext) -> bool:
    """Whether the primes of k0 above 2 ramify in K/k0 (from the discriminant clauses)."""
    if ctx.p == 2 or ctx.a % 2 == 0:
        return True
    return (ctx.a + ctx.b) % 4 == 3


def discriminant(ctx: FieldContext) -> DiscriminantInfo:
    p, a = ctx.p, ctx.a
    if p == 2:
        two_exp, rel_two, a0 = 8, 4, a
    elif a % 2 == 0:
        two_exp, rel_two, a0 = 6, 8, a // 2
    elif (a + ctx.b) % 4 == 3:
        two_exp, rel_two, a0 = 4, 4, a
    else:
        two_exp, rel_two, a0 = 0, 1, a
    abs_disc = {}
    if two_exp:
        abs_disc[2] = two_exp
    for d in ctx.primes:
        abs_disc[d.q] = 2
    abs_disc[p] = abs_disc.get(p, 0) + 3
    abs_disc = dict(sorted(abs_disc.items()))
    ramified = []
    for ell in abs_disc:
        if ell == p:
            ramified.append((ell, 4))
        else:
            ramified.append((ell, 2))
    k0p = []
    for d in ctx.primes:
        k0p.extend(k0_primes_over(p, d.q))
    k0p.append(K0Prime(p, "ramified"))
    if rel_two != 1 and p != 2:
        k0p.extend(dyadic_primes(p))
    return DiscriminantInfo(
        abs_disc=abs_disc,
        rel_disc=(rel_two, a0, 1),
        ramified=tuple(ramified),
        t=t_formula(ctx, rel_two != 1),
        infinite_ramified=0,
        ramified_k0_primes=tuple(k0p),
    )


def t_formula(ctx: FieldContext, dyadic_ramified: bool) -> int:
    t = 2 * ctx.m + (ctx.n - ctx.m) + 1
    if dyadic_ramified and ctx.p != 2:
        t += len(dyadic_primes(ctx.p))
    return t


def delta_is_totally_positive(ctx: FieldContext) -> bool:
    """delta = a*eps*sqrt(p) and its conjugate are both positive, so K is totally real."""
    d = ctx.eps * QuadElem.sqrt_p(ctx.p) * ctx.a
    return d.is_totally_positive()

