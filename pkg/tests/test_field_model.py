import pytest

from quarticgenus.cli import valid_cases
from quarticgenus.errors import InvalidInput
from quarticgenus.field_model import (
    FieldInput,
    alpha_star,
    beta,
    build_field,
    delta_is_totally_positive,
    discriminant,
    order_primes,
    q_star,
    validate_input,
)
from quarticgenus.quadfield import Mod4Tag, QuadElem, mod4_class, norm


def test_build_5_11():
    ctx = build_field(5, 11)
    assert (ctx.n, ctx.m, ctx.i0, ctx.j0) == (1, 1, 1, 1)
    # (56 + 19 sqrt5) * sqrt5
    assert ctx.alpha(1) == QuadElem(95, 56, 1, 5)
    assert ctx.lam == 3 and ctx.h == 1


def test_build_17_13():
    ctx = build_field(17, 13)
    assert (ctx.n, ctx.m, ctx.i0, ctx.j0) == (1, 1, None, 1)
    assert ctx.alpha(1) == QuadElem(9, 2, 1, 17)
    assert (ctx.b, ctx.c) == (4, 1)


def test_build_2_7():
    ctx = build_field(2, 7)
    assert (ctx.n, ctx.m, ctx.i0) == (1, 1, 1)
    assert ctx.alpha(1) == QuadElem(3, 1, 1, 2)


def test_prime_order_split_first():
    assert [d.q for d in order_primes(5, 33)] == [11, 3]
    assert [d.q for d in order_primes(5, 39)] == [3, 13]
    assert [d.q for d in order_primes(17, 2 * 13 * 19 * 53)] == [13, 19, 53]


@pytest.mark.parametrize(
    "p, a, messages",
    [
        (4, 3, ["p must be prime, got 4"]),
        (7, 5, ["p must be 2 or = 1 mod 4, got 7 = 3 mod 4"]),
        (5, 12, ["a must be squarefree: 4 divides 12"]),
        (5, 10, ["a = 10 must be coprime to p = 5"]),
        (2, 14, ["a = 14 must be coprime to p = 2", "a must be odd when p = 2, got 14"]),
        (4, 12, ["p must be prime, got 4", "a must be squarefree: 4 divides 12"]),
        (5, 0, ["a must be a positive integer, got 0"]),
    ],
)
def test_validate_input(p, a, messages):
    assert validate_input(p, a) == messages
    with pytest.raises(InvalidInput) as info:
        FieldInput(p, a)
    assert info.value.problems == messages


def test_q_star():
    ctx = build_field(5, 33)
    assert ctx.i0 == 1 and q_star(ctx, 2) == 33
    ctx = build_field(5, 39)
    assert ctx.i0 == 1 and q_star(ctx, 2) == 13
    with pytest.raises(IndexError):
        q_star(ctx, 1)
    with pytest.raises(IndexError):
        q_star(build_field(17, 65), 1)


def _two_split_contexts():
    for p, a in valid_cases(61, 1500):
        if p == 2:
            continue
        ctx = build_field(p, a)
        if ctx.m == 2:
            yield ctx


def test_alpha_star_plus_then_minus():
    ctx = next(
        c
        for c in _two_split_contexts()
        if [mod4_class(al).tag for al in c.alphas] == [Mod4Tag.PLUS_ONE, Mod4Tag.MINUS_ONE]
    )
    assert ctx.j0 == 2 and alpha_star(ctx, 1) == ctx.alpha(1)


def test_alpha_star_minus_minus():
    ctx = next(
        c
        for c in _two_split_contexts()
        if [mod4_class(al).tag for al in c.alphas] == [Mod4Tag.MINUS_ONE, Mod4Tag.MINUS_ONE]
    )
    assert ctx.j0 == 1
    star = alpha_star(ctx, 2)
    assert star == ctx.alpha(1) * ctx.alpha(2)
    assert mod4_class(star).tag is Mod4Tag.PLUS_ONE


def test_alpha_star_empty_family():
    ctx = build_field(17, 13)
    with pytest.raises(IndexError):
        alpha_star(ctx, 1)


def test_beta_p2():
    ctx = build_field(2, 7 * 17)
    assert [d.q for d in ctx.primes] == [7, 17] and ctx.i0 == 1
    # q = 7: eps_2 (3 + sqrt2) = 5 + 4 sqrt2 = 1 mod 4
    assert beta(ctx, 1) == QuadElem(5, 4, 1, 2)
    # q = 17: (2/17)_4 = -1 differs from (17/2)_4 = +1, so the alpha is twisted by 7
    assert beta(ctx, 2) == ctx.alpha(2) * 7


def test_beta_plus_one_is_alpha():
    for p, a in valid_cases(61, 300):
        ctx = build_field(p, a)
        if p % 8 == 1 and ctx.i0 is not None:
            for j in range(1, ctx.m + 1):
                if mod4_class(ctx.alpha(j)).tag is Mod4Tag.PLUS_ONE:
                    assert beta(ctx, j) == ctx.alpha(j)


def test_alpha_norms():
    for p, a in valid_cases(61, 300):
        ctx = build_field(p, a)
        for d, al in zip(ctx.primes, ctx.alphas):
            n = abs(norm(al))
            assert n % d.q == 0
            if p != 2 and d.mod4 == 3:
                assert n % p == 0


@pytest.mark.parametrize(
    "p, a, factors, rel, t",
    [
        (17, 13, {13: 2, 17: 3}, "13*sqrt(17)", 3),
        (2, 7, {2: 11, 7: 2}, "4*7*sqrt(2)", 3),
        (5, 3, {3: 2, 5: 3}, "3*sqrt(5)", 2),
        (5, 11, {11: 2, 5: 3}, "11*sqrt(5)", 3),
        (17, 26, {2: 6, 13: 2, 17: 3}, "8*13*sqrt(17)", 5),
    ],
)
def test_discriminant(p, a, factors, rel, t):
    info = discriminant(build_field(p, a))
    assert info.abs_disc == dict(sorted(factors.items()))
    assert info.rel_disc_str(p) == rel
    assert info.t == t and info.infinite_ramified == 0


def test_delta_totally_positive():
    assert all(delta_is_totally_positive(build_field(p, a)) for p, a in valid_cases(61, 150))
