"""Radicands, case traces, the decision-table engine, and the genus field of K."""

from dataclasses import dataclass
from typing import Optional, Union

from .arith import quartic_symbol_mod_2, quartic_symbol_mod_p
from .errors import DispatchInconsistency, UnhandledCase
from .field_model import FieldContext, alpha_star, beta, discriminant, q_star
from .norm_eq import check_quartic_criterion
from .quadfield import Mod4Tag, QuadElem, mod4_class


@dataclass(frozen=True)
class Rational:
    r: int

    def __post_init__(self):
        if self.r <= 1:
            raise ValueError(f"rational radicand must exceed 1, got {self.r}")

    def label(self, p: int) -> str:
        return f"sqrt({self.r})"


@dataclass(frozen=True)
class QuadInt:
    alpha: QuadElem

    def label(self, p: int) -> str:
        return f"sqrt({format_quad(self.alpha)})"


@dataclass(frozen=True)
class UnitMonomial:
    """c * eps_p^s * sqrt(p)^t."""

    c: int
    s: int
    t: int

    def __post_init__(self):
        if self.s not in (0, 1) or self.t not in (0, 1) or self.s + self.t == 0:
            raise ValueError(f"bad unit monomial exponents ({self.s}, {self.t})")

    def label(self, p: int) -> str:
        parts = [str(self.c)] if self.c != 1 else []
        if self.s:
            parts.append(f"eps_{p}")
        if self.t:
            parts.append(f"sqrt({p})")
        return f"sqrt({'*'.join(parts)})"

    def element(self, p: int, eps: QuadElem) -> QuadElem:
        x = QuadElem.of(self.c, p)
        if self.s:
            x = x * eps
        if self.t:
            x = x * QuadElem.sqrt_p(p)
        return x


Radicand = Union[Rational, QuadInt, UnitMonomial]


def format_quad(x: QuadElem) -> str:
    """Readable form: 3+sqrt(2), (1+sqrt(5))/2, 95+56*sqrt(5)."""
    p = x.p
    if x.v == 0:
        body = str(x.u)
    else:
        coef = "" if abs(x.v) == 1 else f"{abs(x.v)}*"
        root = f"{coef}sqrt({p})"
        if x.u == 0:
            body = root if x.v > 0 else f"-{root}"
        else:
            body = f"{x.u}{'+' if x.v > 0 else '-'}{root}"
    return body if x.den == 1 else f"({body})/2"


def radicand_element(r: Radicand, ctx: FieldContext) -> QuadElem:
    """The radicand as an element of k0."""
    if isinstance(r, Rational):
        return QuadElem.of(r.r, ctx.p)
    if isinstance(r, QuadInt):
        return r.alpha
    return r.element(ctx.p, ctx.eps)


@dataclass(frozen=True)
class CaseTrace:
    case: str
    conditions: tuple  # ((name, bool), ...) in evaluation order
    chosen_pell: tuple  # ((q_j, (x_j, y_j)), ...)
    row: str = ""
    flags: tuple = ()


@dataclass(frozen=True)
class GeneratorSet:
    radicands: tuple
    trace: CaseTrace

    def __post_init__(self):
        if len(set(self.radicands)) != len(self.radicands):
            raise ValueError("duplicate radicand in generator set")

    def __len__(self):
        return len(self.radicands)

    def labels(self, p: int) -> list:
        return [r.label(p) for r in self.radicands]


# ---------------------------------------------------------------------------
# conditions


class Conditions:
    """Lazily evaluated, memoized branch conditions for one field context.

    Every evaluation is recorded in order so the trace shows exactly what
    the dispatcher looked at.
    """

    def __init__(self, ctx: FieldContext):
        self.ctx = ctx
        self.seen = {}
        self._funcs = {
            "all_q_1mod4": lambda c: all(d.mod4 == 1 for d in c.primes),
            "a_1mod4": lambda c: c.a_odd_part % 4 == 1,
            "m_zero": lambda c: c.m == 0,
            "split_all_1mod4": lambda c: all(d.mod4 == 1 for d in c.primes[: c.m]),
            "sym_all_equal": _sym_all_equal,
            "alpha_all_plus1": lambda c: c.j0 is None and all(
                mod4_class(al).tag is Mod4Tag.PLUS_ONE for al in c.alphas
            ),
            "two_quartic_equal": _two_quartic_equal,
        }

    def __getitem__(self, name: str) -> bool:
        if name not in self.seen:
            self.seen[name] = bool(self._funcs[name](self.ctx))
        return self.seen[name]

    def record(self) -> tuple:
        return tuple(self.seen.items())


def quartic_pair(ctx: FieldContext, q: int) -> tuple:
    """The two quartic symbols compared for a split prime q = 1 mod 4."""
    p = ctx.p
    if p == 2:
        return quartic_symbol_mod_p(2, q), quartic_symbol_mod_2(q)
    return quartic_symbol_mod_p(p, q), quartic_symbol_mod_p(q, p)


def _sym_all_equal(ctx: FieldContext) -> bool:
    pairs = [quartic_pair(ctx, d.q) for d in ctx.primes[: ctx.m]]
    sym = all(x == y for x, y in pairs)
    # the same statement through the mod 4 class of alpha_j must agree
    mod4 = all(mod4_class(al).tag is Mod4Tag.PLUS_ONE for al in ctx.alphas)
    if sym != mod4:
        raise DispatchInconsistency(
            f"p={ctx.p}, a={ctx.a}: quartic symbols say {sym}, alpha classes mod 4 say {mod4}"
        )
    return sym


def _two_quartic_equal(ctx: FieldContext) -> bool:
    p = ctx.p
    lhs = quartic_symbol_mod_p(2, p)
    via_power = lhs == (-1) ** ((p - 1) // 8)
    via_symbol = lhs == quartic_symbol_mod_2(p)
    if via_power != via_symbol:
        raise DispatchInconsistency(f"(2/{p})_4 against (-1)^((p-1)/8) and ({p}/2)_4 disagree")
    return via_power


def dual_check_split_primes(ctx: FieldContext) -> None:
    """Quartic-symbol and mod-4 forms of the solution criterion, for every split prime."""
    for sol in ctx.pell:
        if sol.form is None:
            continue
        if not check_quartic_criterion(sol):
            raise DispatchInconsistency(
                f"p={ctx.p}, q={sol.q}: x+y mod 4 and the quartic symbols disagree for ({sol.x}, {sol.y})"
            )


# ---------------------------------------------------------------------------
# decision tables


@dataclass(frozen=True)
class Row:
    row_id: str
    when: tuple  # ((condition, required value), ...)
    recipe: tuple
    flag: Optional[str] = None


def family_key(ctx: FieldContext) -> str:
    if ctx.p == 2:
        return "p2"
    parity = "even" if ctx.a % 2 == 0 else "odd"
    return f"p{ctx.p % 8}mod8_a_{parity}"


def match_rows(rows: tuple, conds: Conditions, table: str) -> Row:
    for row in rows:
        if all(conds[name] == want for name, want in row.when):
            return row
    scored = sorted(rows, key=lambda r: -sum(conds[n] == w for n, w in r.when))
    raise UnhandledCase(f"{table}: no row matches {dict(conds.record())}", [r.row_id for r in scored[:3]])


def expand_recipe(ctx: FieldContext, recipe: tuple) -> tuple:
    out = []
    idx_q = [i for i in range(1, ctx.n + 1) if i != ctx.i0]
    for token in recipe:
        if token == "Q":
            out += [Rational(d.q) for d in ctx.primes]
        elif token == "QS":
            out += [Rational(q_star(ctx, i)) for i in idx_q]
        elif token == "TWO":
            out.append(Rational(2))
        elif token == "A":
            out += [QuadInt(al) for al in ctx.alphas]
        elif token == "A1":
            out += [QuadInt(al) for al in ctx.alphas[: ctx.m - 1]]
        elif token == "AS":
            out += [QuadInt(alpha_star(ctx, j)) for j in range(1, ctx.m + 1) if j != ctx.j0]
        elif token == "B":
            out += [QuadInt(beta(ctx, j)) for j in range(1, ctx.m + 1)]
        elif token == "B1":
            out += [QuadInt(beta(ctx, j)) for j in range(1, ctx.m)]
        elif token == "EPS":
            out.append(UnitMonomial(1, 1, 0))
        elif token == "EPSP":
            out.append(UnitMonomial(1, 1, 1))
        elif token == "QEPSP":
            out.append(UnitMonomial(ctx.q(ctx.i0), 1, 1))
        else:
            raise KeyError(token)
    return tuple(out)


def chosen_pell(ctx: FieldContext) -> tuple:
    return tuple((s.q, (s.x, s.y)) for s in ctx.pell)


def run_table(ctx: FieldContext, tables: dict, label: str) -> GeneratorSet:
    dual_check_split_primes(ctx)
    key = family_key(ctx)
    conds = Conditions(ctx)
    row = match_rows(tables[key], conds, f"{label}/{key}")
    radicands = expand_recipe(ctx, row.recipe)
    trace = CaseTrace(
        case=f"{label}/{key}",
        conditions=conds.record(),
        chosen_pell=chosen_pell(ctx),
        row=row.row_id,
        flags=(row.flag,) if row.flag else (),
    )
    return GeneratorSet(radicands, trace)


ALL1 = ("all_q_1mod4", True)
NOT_ALL1 = ("all_q_1mod4", False)
A1 = ("a_1mod4", True)
A3 = ("a_1mod4", False)

GENUS_TABLE = {
    "p1mod8_a_odd": (
        Row("all-q-1mod4", (ALL1,), ("Q",)),
        Row("a-1mod4", (NOT_ALL1, A1), ("QS",)),
        Row("a-3mod4", (NOT_ALL1, A3), ("Q",)),
    ),
    "p1mod8_a_even": (
        Row("all-q-1mod4", (ALL1,), ("TWO", "Q")),
        Row("a-1mod4", (NOT_ALL1, A1), ("TWO", "QS")),
        Row("a-3mod4", (NOT_ALL1, A3), ("QS", "EPSP")),
    ),
    "p5mod8_a_odd": (
        Row("all-q-1mod4", (ALL1,), ("Q",)),
        Row("a-1mod4", (NOT_ALL1, A1), ("QS", "QEPSP")),
        Row("a-3mod4", (NOT_ALL1, A3), ("QS",)),
    ),
    "p5mod8_a_even": (
        Row("all-q-1mod4", (ALL1,), ("Q",)),
        Row("a-1mod4", (NOT_ALL1, A1), ("QS", "QEPSP")),
        Row("a-3mod4", (NOT_ALL1, A3), ("QS", "QEPSP")),
    ),
    "p2": (
        Row("all-q-1mod4", (ALL1,), ("Q",)),
        Row("some-q-3mod4", (NOT_ALL1,), ("QS",)),
    ),
}


def genus_field(ctx: FieldContext) -> GeneratorSet:
    """Generators of the genus field K^(*) over K."""
    return run_table(ctx, GENUS_TABLE, "genus")


# ---------------------------------------------------------------------------
# independent construction from the conductor-style product


@dataclass(frozen=True)
class NarrowGenusFactors:
    """Quadratic and quartic factors whose compositum with K is the narrow genus field.

    signed: the discriminants l* = +-l = 1 mod 4 of the odd primes l | a;
    quartic_sign: (2/p) for the quartic factor Q(sqrt((2/p) eps_p sqrt(p))),
    absent for p = 2, whose own factor is excluded as the 2-part.
    """

    signed: tuple
    quartic_sign: Optional[int]


def narrow_genus_product(ctx: FieldContext) -> NarrowGenusFactors:
    info = discriminant(ctx)
    signed = []
    for ell, e in info.ramified:
        if ell in (2, ctx.p):
            continue
        assert e == 2
        signed.append(ell if ell % 4 == 1 else -ell)
    quartic = None if ctx.p == 2 else _two_over_p(ctx.p)
    return NarrowGenusFactors(tuple(signed), quartic)


def _two_over_p(p: int) -> int:
    return 1 if p % 8 in (1, 7) else -1


def rational_square_class(n: int, basis: tuple) -> int:
    """Bit vector of n modulo rational squares over (-1, basis primes...); n must factor over them."""
    bits = 0
    if n < 0:
        bits |= 1
        n = -n
    for k, ell in enumerate(basis, 1):
        e = 0
        while n % ell == 0:
            n //= ell
            e += 1
        if e % 2:
            bits |= 1 << k
    if n != 1:
        raise ValueError(f"{n} does not factor over {basis}")
    return bits


def xor_basis(vectors) -> list:
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return basis


def span_of(vectors) -> frozenset:
    """Full span over F_2 (fine for the handful of generators involved)."""
    span = {0}
    for b in xor_basis(vectors):
        span |= {s ^ b for s in span}
    return frozenset(span)


def narrow_real_span(ctx: FieldContext) -> tuple:
    """(basis primes, span) of the positive rational classes of the narrow genus field.

    The quartic factor contributes (2/p)*a: its square root times
    sqrt(a*eps_p*sqrt(p)) is rational times sqrt((2/p)*a). Classes are
    taken modulo rational squares and p (p is a square in K).
    """
    factors = narrow_genus_product(ctx)
    basis = (2,) + tuple(d.q for d in ctx.primes)
    gens = [rational_square_class(x, basis) for x in factors.signed]
    if factors.quartic_sign is not None:
        gens.append(rational_square_class(factors.quartic_sign * ctx.a, basis))
    return basis, frozenset(v for v in span_of(gens) if not v & 1)


def genus_rational_class(ctx: FieldContext, r: Radicand) -> Optional[int]:
    """Square class over Q of a genus radicand, using a*eps_p*sqrt(p) in K*^2."""
    p = ctx.p
    if isinstance(r, Rational):
        n = r.r
    elif isinstance(r, UnitMonomial) and r.s == 1 and r.t == 1:
        n = r.c * ctx.a
    else:
        return None
    while n % p == 0:
        n //= p
    basis = (2,) + tuple(d.q for d in ctx.primes)
    return rational_square_class(n, basis)


def genus_matches_narrow_product(ctx: FieldContext, gens: Optional[GeneratorSet] = None) -> bool:
    """The genus generators span exactly the positive part of the narrow genus product."""
    gens = gens or genus_field(ctx)
    classes = [genus_rational_class(ctx, r) for r in gens.radicands]
    if any(c is None for c in classes):
        return False
    _, target = narrow_real_span(ctx)
    return span_of(classes) == target and len(xor_basis(classes)) == len(classes)

