"""Local computations in k0 = Q(sqrt(p)): valuations, dyadic square classes, Hilbert symbols.

Elements are QuadElem values of the maximal order. The completions of k0
at primes above 2 are handled concretely:

* p = 1 mod 8: 2 splits and each completion is Q_2; the basis element
  w = (1 + sqrt(p))/2 maps to one of the two 2-adic roots of
  w^2 - w - (p - 1)/4.
* p = 5 mod 8: 2 is inert, the completion is the unramified quadratic
  extension of Q_2 with uniformizer 2 and residue ring O/2.
* p = 2: 2 ramifies, uniformizer sqrt(2).
"""

from .arith import factor, legendre, v2, valuation
from .field_model import K0Prime
from .quadfield import QuadElem, norm


def _dyadic_root(p: int, sign: int, bits: int) -> int:
    """The 2-adic root of w^2 - w - (p-1)/4 that is = (1 - sign)/2 mod 2, to 2^bits."""
    c = (p - 1) // 4
    mod = 1 << bits
    r = 0 if sign == 1 else 1
    # f'(w) = 2w - 1 is a unit, so Newton steps converge
    for _ in range(bits.bit_length() + 2):
        r = (r - (r * r - r - c) * pow(2 * r - 1, -1, mod)) % mod
    assert (r * r - r - c) % mod == 0
    return r


def dyadic_image(x: QuadElem, prime: K0Prime, bits: int) -> int:
    """Image of x in Z_2 modulo 2^bits at a split dyadic prime (p = 1 mod 8)."""
    s, t = x.basis_coords()
    r = _dyadic_root(x.p, prime.root, bits)
    return (s + t * r) % (1 << bits)


def _norm_v2(x: QuadElem) -> int:
    n = abs(norm(x))
    return v2(n) if n else 0


def valuation_at(x: QuadElem, prime: K0Prime) -> int:
    """Normalized valuation of the nonzero element x at a prime of k0."""
    p, ell = x.p, prime.ell
    if ell == 2:
        if p % 8 == 1:
            bits = _norm_v2(x) + 2
            img = dyadic_image(x, prime, bits)
            return v2(img) if img else bits
        s, t = x.basis_coords()
        if p % 8 == 5:
            return min(v2(z) for z in (s, t) if z)
        # p = 2, uniformizer sqrt(2): v(s + t*sqrt2) = min(2 v2(s), 2 v2(t) + 1)
        return min(([2 * v2(s)] if s else []) + ([2 * v2(t) + 1] if t else []))
    if prime.kind == "ramified":
        return valuation(abs(norm(x)), p)
    if prime.kind == "inert":
        return valuation(abs(norm(x)), ell) // 2
    k = 0
    g = x.content()
    while g % ell == 0:
        g //= ell
        x = x.exact_div(ell)
        k += 1
    if _residue_split(x, prime) != 0:
        return k
    return k + valuation(abs(norm(x)), ell)


def _residue_split(x: QuadElem, prime: K0Prime) -> int:
    ell = prime.ell
    num = (x.u + x.v * prime.root) % ell
    return num * pow(x.den, -1, ell) % ell


def odd_primes_dividing(x: QuadElem, hint=()) -> list:
    """Odd rational primes dividing N(x); hinted primes are stripped before trial division."""
    n = abs(norm(x))
    out = []
    for ell in hint:
        if ell != 2 and n % ell == 0:
            out.append(ell)
            while n % ell == 0:
                n //= ell
    while n % 2 == 0:
        n //= 2
    if n > 1:
        out += [ell for ell in factor(n) if ell != 2]
    return sorted(set(out))


def _unit_square_mod4(x: QuadElem) -> bool:
    """x = xi^2 mod 4 in the maximal order for a dyadic unit x (p = 5 mod 8 or p = 2)."""
    p = x.p
    target = tuple(c % 4 for c in x.basis_coords())
    for s in range(2):
        for t in range(2):
            xi = QuadElem.from_basis(s, t, p)
            sq = xi * xi
            if tuple(c % 4 for c in sq.basis_coords()) == target:
                return True
    return False


def locally_unramified_sqrt(x: QuadElem, prime: K0Prime) -> bool:
    """Whether k0(sqrt(x))/k0 is unramified at the dyadic prime.

    That holds iff the valuation of x is even and its unit part is a square
    modulo 4 in the completion.
    """
    p = x.p
    vx = valuation_at(x, prime)
    if vx % 2:
        return False
    if p % 8 == 1:
        img = dyadic_image(x, prime, _norm_v2(x) + 4) >> vx
        return img % 4 == 1
    if p % 8 == 5:
        unit = x.exact_div(2**vx) if vx else x
        return _unit_square_mod4(unit)
    unit = x.exact_div(2 ** (vx // 2)) if vx else x
    return _unit_square_mod4(unit)


def residue_legendre(u: QuadElem, prime: K0Prime) -> int:
    """Quadratic character of u (coprime to the prime) in the residue field of an odd prime."""
    p, ell = u.p, prime.ell
    if prime.kind == "ramified":
        return legendre(u.u * pow(u.den, -1, p), p)
    if prime.kind == "split":
        return legendre(_residue_split(u, prime), ell)
    # inert: residue field F_ell[sqrt(p)], character = u^((ell^2 - 1)/2)
    inv = pow(u.den, -1, ell)
    a, b = u.u * inv % ell, u.v * inv % ell
    e = (ell * ell - 1) // 2
    ra, rb = 1, 0
    while e:
        if e & 1:
            ra, rb = (ra * a + p * rb * b) % ell, (ra * b + rb * a) % ell
        a, b = (a * a + p * b * b) % ell, (2 * a * b) % ell
        e >>= 1
    assert rb == 0 and ra in (1, ell - 1)
    return 1 if ra == 1 else -1


def hilbert_symbol_q2(a: int, b: int, bits: int) -> int:
    """Hilbert symbol (a, b) over Q_2 for nonzero 2-adic integers given modulo 2^bits."""
    mod = 1 << bits
    a %= mod
    b %= mod
    if a == 0 or b == 0:
        raise ValueError("insufficient 2-adic precision")
    alpha, beta_ = v2(a), v2(b)
    u, w = a >> alpha, b >> beta_
    if bits - max(alpha, beta_) < 3:
        raise ValueError("insufficient 2-adic precision")

    def eps(z):
        return ((z - 1) // 2) % 2

    def omega(z):
        return ((z * z - 1) // 8) % 2

    e = eps(u % 8) * eps(w % 8) + alpha * omega(w % 8) + beta_ * omega(u % 8)
    return -1 if e % 2 else 1


def hilbert_symbol_split_dyadic(u: QuadElem, d: QuadElem, prime: K0Prime) -> int:
    bits = max(_norm_v2(u), _norm_v2(d)) + 8
    return hilbert_symbol_q2(dyadic_image(u, prime, bits), dyadic_image(d, prime, bits), bits)

