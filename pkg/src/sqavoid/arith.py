"""Exact integer and modular arithmetic primitives.

Everything in this module computes over arbitrary-precision Python integers
(and `fractions.Fraction` for rational data).  No floating point is used in
any verdict: inequalities involving fractional powers are decided by integer
cross-multiplication, and square roots by `math.isqrt`.

The factor-dependent routines (`squarefree_kernel`, `sqrt_mod`) rely on
`factorize`, which combines trial division below 10**6 with Brent's cycle
method driven by a deterministic parameter schedule, so repeated runs give
identical results.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

Int = int
Rat = Fraction

gcd = math.gcd
isqrt = math.isqrt


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class NotInvertible(DomainError):
    """Modular inverse requested for a non-unit residue."""


class NotCoprime(DomainError):
    """Arguments were required to be coprime but are not."""


class BadPrime(DomainError):
    """A prime (with possible extra congruence conditions) was required."""


class FactorizationFailed(RuntimeError):
    """Complete factorization could not be produced within the guard."""


class TooLarge(RuntimeError):
    """A guarded exhaustive routine was asked to exceed its budget."""


class NotFound(RuntimeError):
    """A bounded search exhausted its range without finding the object."""


# Trial division handles everything below this bound; above it, primality
# uses deterministic Miller-Rabin and factoring falls back to Brent's method.
_TRIAL_BOUND = 1_000_000

# The witness set {2,3,...,41} is a verified deterministic Miller-Rabin base
# set: it classifies every integer below this bound exactly (Sorenson and
# Webster's published verification; the bound comfortably exceeds 2**64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_VALID_BELOW = 3_317_044_064_679_887_385_961_981


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [0, m).  Raises NotInvertible if none exists."""
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} is not invertible modulo {m}") from None


def is_perfect_square(n: int) -> bool:
    """True iff n is a square of an integer (0 and 1 included)."""
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, computed exactly by Newton iteration."""
    if n < 0:
        raise DomainError(f"iroot argument must be non-negative, got {n}")
    if k < 1:
        raise DomainError(f"root order must be positive, got {k}")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton's method on x^k - n, starting above the root.
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def _mr_is_composite(n: int, a: int, d: int, r: int) -> bool:
    # n - 1 = d * 2**r with d odd; returns True if a witnesses compositeness.
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Below 10**6 this is plain trial division.  Above, it is Miller-Rabin with
    a fixed witness set whose exactness is proven up to _MR_VALID_BELOW
    (about 3.3e24).  Beyond that bound the routine refuses to guess and
    raises DomainError rather than returning a probabilistic answer.
    """
    if n < 2:
        return False
    if n < _TRIAL_BOUND:
        if n < 4:
            return True
        if n % 2 == 0:
            return False
        f = 3
        while f * f <= n:
            if n % f == 0:
                return False
            f += 2
        return True
    if n >= _MR_VALID_BELOW:
        raise DomainError(
            f"is_prime is only deterministic below {_MR_VALID_BELOW}; got {n}"
        )
    if n % 2 == 0:
        return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        if a % n == 0:
            continue
        if _mr_is_composite(n, a, d, r):
            return False
    return True


def _brent_rho(n: int, c: int) -> int:
    """One run of Brent's cycle-finding with increment c; returns a factor or n."""
    if n % 2 == 0:
        return 2
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    return g


def factorize(n: int) -> dict[int, int]:
    """Complete factorization of n >= 1 as {prime: exponent}.

    Trial division removes all primes below 10**6; any remaining cofactor is
    split recursively with Brent's method using the deterministic increment
    schedule c = 1, 2, 3, ...  Raises FactorizationFailed if a cofactor
    resists both primality certification and splitting.
    """
    if n < 1:
        raise DomainError(f"factorize requires n >= 1, got {n}")
    factors: dict[int, int] = {}
    for p in (2, 3, 5):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f < _TRIAL_BOUND and f * f <= n:
        while n % f == 0:
            factors[f] = factors.get(f, 0) + 1
            n //= f
        f += wheel[i]
        i = (i + 1) % 8
    if n == 1:
        return factors
    if f * f > n:
        factors[n] = factors.get(n, 0) + 1
        return factors

    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = m
        for c in range(1, 101):
            d = _brent_rho(m, c)
            if 1 < d < m:
                break
        else:
            raise FactorizationFailed(f"could not split {m}")
        stack.append(d)
        stack.append(m // d)
    return factors


def squarefree_kernel(q: int) -> int:
    """Product of the primes dividing q to an odd power (the squarefree part).

    The kernel s(q) is the smallest positive s such that s*q is a perfect
    square; equivalently q/s(q) is the largest square divisor of q.
    """
    if q < 1:
        raise DomainError(f"squarefree_kernel requires q >= 1, got {q}")
    s = 1
    for p, e in factorize(q).items():
        if e % 2 == 1:
            s *= p
    return s


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n; in {-1, 0, 1}."""
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs odd positive n, got {n}")
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def least_qnr(p: int) -> int:
    """Least quadratic non-residue modulo an odd prime p.

    Scans n = 2, 3, ... for the first n with Jacobi symbol (n|p) = -1.  The
    answer is always prime and classically satisfies least_qnr(p) < sqrt(p)+1.
    """
    if p == 2 or not is_prime(p):
        raise BadPrime(f"least_qnr requires an odd prime, got {p}")
    n = 2
    while jacobi(n, p) == 1:
        n += 1
    return n


def _tonelli_shanks(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p, or None.  Assumes p odd prime."""
    a %= p
    if a == 0:
        return 0
    if jacobi(a, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Write p - 1 = q * 2^s with q odd.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    # Deterministic choice of quadratic non-residue.
    z = least_qnr(p)
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        t2, i = t, 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _roots_mod_odd_prime_power(a: int, p: int, k: int) -> list[int] | None:
    """All square roots of a unit a modulo p**k, p an odd prime."""
    r = _tonelli_shanks(a % p, p)
    if r is None:
        return None
    pe = p
    # Hensel lifting: the root modulo p^j lifts uniquely to p^{j+1}.
    for _ in range(k - 1):
        pe_next = pe * p
        diff = (a - r * r) % pe_next
        step = diff // pe * mod_inverse(2 * r % p, p) % p
        r = (r + step * pe) % pe_next
        pe = pe_next
    return sorted({r, pe - r})


def _roots_mod_two_power(a: int, k: int) -> list[int] | None:
    """All square roots of an odd a modulo 2**k."""
    a %= 1 << k
    if k == 1:
        return [1]
    if k == 2:
        return [1, 3] if a % 4 == 1 else None
    if a % 8 != 1:
        return None
    # Lift a root from modulus 8 upward one bit at a time.
    r = 1
    for j in range(3, k):
        if (r * r - a) % (1 << (j + 1)) != 0:
            r += 1 << (j - 1)
    mod = 1 << k
    half = 1 << (k - 1)
    return sorted({r % mod, (-r) % mod, (r + half) % mod, (-r + half) % mod})


SQRT_SCAN_BOUND = 1_000_000


def sqrt_mod(a: int, m: int) -> int | None:
    """Smallest c in [0, m) with c*c = a (mod m), or None if no root exists.

    Requires gcd(a, m) = 1.  The modulus is factored; roots of each prime
    power are combined over all CRT branches and the minimum is returned, so
    the result is canonical.  If factoring fails (enormous m with large prime
    factors) and m <= SQRT_SCAN_BOUND, an exhaustive scan is used instead.
    """
    if m < 1:
        raise DomainError(f"modulus must be positive, got {m}")
    if m == 1:
        return 0
    a %= m
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"sqrt_mod requires gcd(a, m) = 1, got gcd = {math.gcd(a, m)}")
    try:
        factors = factorize(m)
    except FactorizationFailed:
        if m <= SQRT_SCAN_BOUND:
            best = None
            for c in range(m):
                if c * c % m == a:
                    best = c
                    break
            return best
        raise
    # Roots modulo each prime power.
    branch_roots: list[tuple[int, list[int]]] = []
    for p, k in factors.items():
        pk = p**k
        roots = _roots_mod_two_power(a, k) if p == 2 else _roots_mod_odd_prime_power(a % pk, p, k)
        if roots is None:
            return None
        branch_roots.append((pk, roots))
    # CRT combination over every branch; keep the smallest representative.
    combos = [0]
    mod = 1
    for pk, roots in branch_roots:
        inv = mod_inverse(mod % pk, pk) if mod % pk else 0
        new: list[int] = []
        for x in combos:
            for r in roots:
                # x + mod * t = r (mod pk)
                t = (r - x) * inv % pk if mod % pk else r
                new.append(x + mod * t)
        mod *= pk
        combos = new
    return min(combos)


@lru_cache(maxsize=None)
def _primes_below(limit: int) -> tuple[int, ...]:
    """Primes below limit via a bytearray sieve."""
    if limit < 3:
        return ()
    sieve = bytearray([1]) * limit
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return tuple(i for i in range(limit) if sieve[i])
