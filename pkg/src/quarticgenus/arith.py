"""Exact integer primitives: primality, squarefree factorization, residue symbols."""

from dataclasses import dataclass
from math import isqrt

from .errors import NotQuadraticResidue, NotSquarefree, SymbolUndefined

_MR_LIMIT = 1 << 64
# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**64."""
    if n < 2:
        return False
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the 64-bit primality range")
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero")
    return (n & -n).bit_length() - 1


def valuation(n: int, ell: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    k = 0
    while n % ell == 0:
        n //= ell
        k += 1
    return k


@dataclass(frozen=True)
class SquarefreeFactorization:
    value: int
    odd_primes: tuple
    has_two: bool

    def primes(self):
        return ((2,) if self.has_two else ()) + self.odd_primes

    @property
    def odd_part(self) -> int:
        return self.value // 2 if self.has_two else self.value


def factor_squarefree(n: int) -> SquarefreeFactorization:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    rest, primes, has_two = n, [], False
    if rest % 2 == 0:
        rest //= 2
        if rest % 2 == 0:
            raise NotSquarefree(f"4 divides {n}")
        has_two = True
    d = 3
    while d * d <= rest:
        if rest % d == 0:
            rest //= d
            if rest % d == 0:
                raise NotSquarefree(f"{d}^2 divides {n}")
            primes.append(d)
        d += 2
    if rest > 1:
        if not is_prime(rest):
            raise AssertionError(f"cofactor {rest} of {n} failed certification")
        primes.append(rest)
    return SquarefreeFactorization(n, tuple(primes), has_two)


def factor(n: int) -> dict:
    """Full factorization by trial division; only used on small norms."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    out = {}
    for d in (2, 3):
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    d = 5
    while d * d <= n:
        for e in (d, d + 2):
            while n % e == 0:
                out[e] = out.get(e, 0) + 1
                n //= e
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def legendre(a: int, p: int) -> int:
    if p < 3 or p % 2 == 0:
        raise ValueError(f"legendre needs an odd prime modulus, got {p}")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def jacobi(a: int, n: int) -> int:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    acc = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                acc = -acc
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            acc = -acc
        a %= n
    return acc if n == 1 else 0


def quartic_symbol_mod_p(a: int, p: int) -> int:
    """Rational biquadratic residue symbol (a/p)_4 for a prime p = 1 mod 4."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"modulus must be a prime = 1 mod 4, got {p}")
    if legendre(a, p) != 1:
        raise NotQuadraticResidue(f"{a} is not a nonzero square mod {p}")
    r = pow(a % p, (p - 1) // 4, p)
    return -1 if r == p - 1 else r


def quartic_symbol_mod_2(a: int) -> int:
    """(a/2)_4 for a = 1 mod 8: +1 on 1 mod 16, -1 on 9 mod 16."""
    if a % 8 != 1:
        raise SymbolUndefined(f"(a/2)_4 needs a = 1 mod 8, got {a}")
    return 1 if a % 16 == 1 else -1


def sqrt_mod(a: int, p: int) -> int:
    """Tonelli-Shanks square root of a quadratic residue modulo an odd prime."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise NotQuadraticResidue(f"{a} is not a square mod {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def two_squares(p: int, want_even_b: bool) -> tuple:
    """Return (b, c) with p = b^2 + c^2, b, c > 0 and b of the requested parity."""
    if p % 4 != 1 or not is_prime(p):
        raise ValueError(f"two_squares needs a prime = 1 mod 4, got {p}")
    for b in range(1, isqrt(p) + 1):
        c2 = p - b * b
        if is_square(c2):
            c = isqrt(c2)
            if (b % 2 == 0) == want_even_b:
                return b, c
            return c, b
    raise AssertionError(f"no two-square decomposition of prime {p}")


def primes_up_to(n: int) -> list:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]
