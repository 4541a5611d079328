"""Independent checks on emitted generator sets.

A quadratic extension K(sqrt(beta))/K with beta in k0 is compared against
the biquadratic extension k0(sqrt(delta), sqrt(beta)) of k0, where
delta = a*eps_p*sqrt(p). Its inertia group at a prime of k0 meets
Gal(L/K) trivially exactly when k0(sqrt(beta)) or k0(sqrt(beta*delta)) is
unramified there, which reduces every test to quadratic extensions of k0.
"""

from dataclasses import dataclass
from math import isqrt
from typing import Optional

from .arith import is_square
from .errors import NotOddElement, TooManyGenerators
from .field_model import FieldContext, K0Prime, discriminant, dyadic_primes, k0_primes_over
from .genus import GeneratorSet, Radicand, UnitMonomial, genus_field, radicand_element
from .hilbert import hilbert_genus_field
from .localfields import (
    hilbert_symbol_split_dyadic,
    locally_unramified_sqrt,
    odd_primes_dividing,
    residue_legendre,
    valuation_at,
)
from .norm_eq import lambda_for
from .quadfield import QuadElem, class_number, is_square_element

MAX_GENERATORS = 12


def delta(ctx: FieldContext) -> QuadElem:
    return ctx.eps * QuadElem.sqrt_p(ctx.p) * ctx.a


def _hint_primes(ctx: FieldContext) -> tuple:
    return (ctx.p,) + tuple(d.q for d in ctx.primes)


def ramified_in_k(ctx: FieldContext, prime: K0Prime) -> bool:
    """Whether the prime of k0 ramifies in K = k0(sqrt(delta)), from delta alone."""
    d = delta(ctx)
    if prime.ell == 2:
        return not locally_unramified_sqrt(d, prime)
    return valuation_at(d, prime) % 2 == 1


def ramified_primes_direct(ctx: FieldContext) -> list:
    """Primes of k0 ramified in K/k0, found from delta without the discriminant clauses."""
    d = delta(ctx)
    out = []
    for ell in odd_primes_dividing(d, _hint_primes(ctx)):
        out += [P for P in k0_primes_over(ctx.p, ell) if valuation_at(d, P) % 2]
    out += [P for P in dyadic_primes(ctx.p) if ramified_in_k(ctx, P)]
    return out


def unramified_at(ctx: FieldContext, x: QuadElem, prime: K0Prime) -> bool:
    """K(sqrt(x))/K is unramified at the primes of K above this prime of k0."""
    if prime.ell == 2:
        return locally_unramified_sqrt(x, prime) or locally_unramified_sqrt(x * delta(ctx), prime)
    return valuation_at(x, prime) % 2 == 0 or valuation_at(delta(ctx), prime) % 2 == 1


def is_unramified_generator(
    ctx: FieldContext, r: Radicand, require_odd: bool = False, cite_unit: bool = True
) -> bool:
    """Whether K(sqrt(r))/K is unramified at every finite prime.

    Odd primes: the ideal (r) must become a square in K, i.e. r has even
    valuation at every prime of k0 that does not ramify in K/k0. Dyadic
    primes: r or r*delta must be a local square modulo 4 up to an even
    power of the uniformizer. With require_odd, elements that are not
    coprime to 2 in either form are rejected with NotOddElement instead of
    being judged.

    The bare fundamental unit sqrt(eps_p) is accepted on the strength of the
    classical unit criterion unless cite_unit is False, in which case it is
    run through the same local tests as every other radicand.
    """
    if cite_unit and is_unit_radicand(r):
        return True
    x = radicand_element(r, ctx)
    d = delta(ctx)
    for ell in odd_primes_dividing(x, _hint_primes(ctx)):
        for P in k0_primes_over(ctx.p, ell):
            if not unramified_at(ctx, x, P):
                return False
    for P in dyadic_primes(ctx.p):
        if require_odd and valuation_at(x, P) % 2 and valuation_at(x * d, P) % 2:
            raise NotOddElement(f"{r.label(ctx.p)} has odd valuation at {P.label()} in both twists")
        if not unramified_at(ctx, x, P):
            return False
    return True


def infinite_places_ok(ctx: FieldContext, r: Radicand) -> bool:
    """K(sqrt(r))/K is unramified at the real places (r totally positive, delta being so)."""
    return radicand_element(r, ctx).is_totally_positive()


def is_square_in_k(ctx: FieldContext, x: QuadElem) -> bool:
    """x in k0 is a square in K iff x or x*delta is a square in k0."""
    return is_square_element(x) or is_square_element(x * delta(ctx))


def _check_size(gens):
    if len(gens) > MAX_GENERATORS:
        raise TooManyGenerators(f"{len(gens)} generators exceed the subset bound {MAX_GENERATORS}")


def _subset_products(elems: list):
    """Yield (mask, product) over all nonempty subsets, in Gray-code order."""
    p = elems[0].p if elems else None
    prod = QuadElem.of(1, p) if elems else None
    # keep exact products per mask to avoid division
    cache = {0: prod}
    for mask in range(1, 1 << len(elems)):
        low = mask & -mask
        k = low.bit_length() - 1
        cache[mask] = cache[mask ^ low] * elems[k]
        yield mask, cache[mask]


def independence_mod_squares(ctx: FieldContext, gens) -> bool:
    """No nonempty subset product of the radicands is a square in K."""
    radicands = gens.radicands if isinstance(gens, GeneratorSet) else tuple(gens)
    _check_size(radicands)
    elems = [radicand_element(r, ctx) for r in radicands]
    return all(not is_square_in_k(ctx, prod) for _, prod in _subset_products(elems))


def in_square_span(ctx: FieldContext, target: Radicand, gens) -> bool:
    """target * (some subset product of gens) is a square in K."""
    radicands = gens.radicands if isinstance(gens, GeneratorSet) else tuple(gens)
    _check_size(radicands)
    x = radicand_element(target, ctx)
    if is_square_in_k(ctx, x):
        return True
    elems = [radicand_element(r, ctx) for r in radicands]
    return any(is_square_in_k(ctx, x * prod) for _, prod in _subset_products(elems))


def genus_contained(ctx: FieldContext, genus: Optional[GeneratorSet] = None, hilbert=None) -> bool:
    genus = genus or genus_field(ctx)
    hilbert = hilbert or hilbert_genus_field(ctx)
    return all(in_square_span(ctx, g, hilbert) for g in genus.radicands)


@dataclass(frozen=True)
class UnitIndex:
    lo: int
    hi: int
    symbols: tuple  # ((place label, (symbol of -1, symbol of eps)), ...)
    closed_by_product_formula: bool = False

    @property
    def exact(self) -> Optional[int]:
        return self.lo if self.lo == self.hi else None


def _rank_f2(rows) -> int:
    basis = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def _vector(signs) -> int:
    return sum(1 << k for k, s in enumerate(signs) if s == -1)


def unit_norm_index(ctx: FieldContext, dyadic_exact: bool = True) -> UnitIndex:
    """e with 2^e = [E : E cap N(K*)], E the units of k0.

    -1 and eps_p generate E modulo squares. A unit is a norm from K iff its
    Hilbert symbol with delta is +1 at every prime of k0 ramified in K/k0
    (the real places split since delta is totally positive). Odd places use
    the quadratic residue character. A single dyadic place is closed by
    the product formula; two split dyadic places are evaluated in Q_2 when
    dyadic_exact is set and bracketed otherwise.
    """
    p = ctx.p
    d = delta(ctx)
    units = (QuadElem.of(-1, p), ctx.eps)
    info = discriminant(ctx)
    odd = [P for P in info.ramified_k0_primes if P.ell != 2]
    dyadic = [P for P in info.ramified_k0_primes if P.ell == 2]
    columns = []
    symbols = []
    for P in odd:
        col = tuple(residue_legendre(u, P) for u in units)
        columns.append(col)
        symbols.append((P.label(), col))
    closed = False
    if len(dyadic) == 1:
        col = tuple(_product(c[i] for c in columns) for i in range(2))
        columns.append(col)
        symbols.append((dyadic[0].label() + " [product formula]", col))
        closed = True
    elif len(dyadic) == 2 and dyadic_exact:
        dcols = [tuple(hilbert_symbol_split_dyadic(u, d, P) for u in units) for P in dyadic]
        for P, col in zip(dyadic, dcols):
            columns.append(col)
            symbols.append((f"{P.label()} [Q_2]", col))
        # the product formula is an independent consistency check
        for i in range(2):
            assert _product(c[i] for c in columns) == 1, "Hilbert symbols violate the product formula"
    # rows: units; the image of u is its sign vector over the places
    rows = [_vector(c[i] for c in columns) for i in range(2)]
    known = _rank_f2(rows)
    if len(dyadic) == 2 and not dyadic_exact:
        # the two unknown symbols multiply to the known product, so they add
        # at most one new independent coordinate
        return UnitIndex(known, min(2, known + 1), tuple(symbols), False)
    return UnitIndex(known, known, tuple(symbols), closed)


def _product(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out


def ambiguous_rank_check(ctx: FieldContext, e: Optional[UnitIndex] = None, r: Optional[int] = None) -> bool:
    e = e or unit_norm_index(ctx)
    t = discriminant(ctx).t
    r = len(hilbert_genus_field(ctx)) if r is None else r
    return t - e.hi - 1 <= r <= t - e.lo - 1


def t_direct(ctx: FieldContext) -> int:
    return len(ramified_primes_direct(ctx))


def brute_pell_oracle(p: int, q: int, y_bound: int) -> list:
    """Every (x, y) with x, y >= 0, y <= y_bound and x^2 - p y^2 = q^(lambda*h)."""
    rhs = q ** ((1 if p == 2 else lambda_for(p)) * class_number(p))
    out = []
    for y in range(y_bound + 1):
        x2 = rhs + p * y * y
        if is_square(x2):
            out.append((isqrt(x2), y))
    return out


@dataclass(frozen=True)
class Verdict:
    unramified: tuple  # ((label, bool), ...)
    infinite_ok: tuple  # ((label, bool), ...)
    independent: bool
    genus_contained: bool
    rank: int
    t: int
    e: UnitIndex
    rank_ok: bool

    @property
    def all_ok(self) -> bool:
        return all(ok for _, ok in self.unramified) and self.independent and self.genus_contained and self.rank_ok


def verify_all(ctx: FieldContext) -> Verdict:
    hil = hilbert_genus_field(ctx)
    gen = genus_field(ctx)
    e = unit_norm_index(ctx)
    t = discriminant(ctx).t
    return Verdict(
        unramified=tuple((r.label(ctx.p), is_unramified_generator(ctx, r)) for r in hil.radicands),
        infinite_ok=tuple((r.label(ctx.p), infinite_places_ok(ctx, r)) for r in hil.radicands),
        independent=independence_mod_squares(ctx, hil),
        genus_contained=genus_contained(ctx, gen, hil),
        rank=len(hil),
        t=t,
        e=e,
        rank_ok=ambiguous_rank_check(ctx, e, len(hil)),
    )


def is_unit_radicand(r: Radicand) -> bool:
    """The radicand is eps_p itself (no rational factor, no sqrt(p))."""
    return isinstance(r, UnitMonomial) and r.c == 1 and r.s == 1 and r.t == 0
