"""Exact arbitrary-precision number theory.

Divisor sums, the perfect/abundant/deficient classification, primality,
factoring with an explicit effort cap, Mersenne machinery, and multiplicative
orders.  Everything is pure-integer and deterministic; when an answer cannot
be computed within the configured effort, an exception is raised rather than
returning a possibly wrong result.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache

__all__ = [
    "MERSENNE_EXPONENTS",
    "Factorization",
    "FactorizationError",
    "NumberClass",
    "carmichael",
    "classify_number",
    "divisor_sum",
    "divisors",
    "even_perfect",
    "factorize",
    "is_prime",
    "lucas_lehmer",
    "mult_order",
    "perfect_plus_one",
    "prime_power_decompose",
    "verified_mersenne_exponents",
]


class FactorizationError(Exception):
    """Factoring exceeded its effort cap; raised instead of guessing."""


# Deterministic Miller-Rabin witness set: exact for all n < 3.3e24, which
# covers the whole 64-bit range.  Above the limit the same witnesses are used
# plus `rounds` pseudo-random ones (seeded from n, so results are stable).
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_WITNESS_LIMIT = 1 << 64

#: First 12 known Mersenne prime exponents.  Not trusted as-is: each is
#: re-proved by lucas_lehmer on first use (see verified_mersenne_exponents).
MERSENNE_EXPONENTS = (2, 3, 5, 7, 13, 17, 19, 31, 61, 89, 107, 127)


@dataclass(frozen=True)
class Factorization:
    """Complete prime factorization as ((p1, e1), (p2, e2), ...) sorted by prime."""

    factors: tuple[tuple[int, int], ...]

    def __iter__(self):
        return iter(self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


@dataclass(frozen=True)
class NumberClass:
    """Five-way classification of an integer by its full divisor sum."""

    is_perfect: bool
    is_abundant: bool
    is_deficient: bool
    is_almost_perfect: bool
    is_quasi_perfect: bool


def _miller_rabin_round(n: int, a: int, d: int, s: int) -> bool:
    """One strong-pseudoprime round; True means 'possibly prime'."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, *, rounds: int = 40) -> bool:
    """Primality test: deterministic below 2**64, probabilistic above.

    Above the deterministic range, `rounds` extra pseudo-random witnesses are
    tried (seeded from n, so the verdict is reproducible).
    """
    if n < 2:
        return False
    for p in _WITNESSES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _WITNESSES:
        if not _miller_rabin_round(n, a, d, s):
            return False
    if n < _WITNESS_LIMIT:
        return True
    rng = random.Random(n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        if not _miller_rabin_round(n, a, d, s):
            return False
    return True


def _brent_rho(n: int, budget: list[int]) -> int:
    """Find a nontrivial factor of composite odd n (Brent's cycle variant).

    `budget` is a single-element mutable iteration allowance shared across
    recursive factoring calls; exhausting it raises FactorizationError.
    """
    rng = random.Random(n)
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
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
                budget[0] -= min(m, r - k)
                if budget[0] <= 0:
                    raise FactorizationError(
                        f"factorization gave up: rho budget exhausted on {n}"
                    )
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
                budget[0] -= 1
                if budget[0] <= 0:
                    raise FactorizationError(
                        f"factorization gave up: rho budget exhausted on {n}"
                    )
        if g != n:
            return g


def factorize(
    n: int, *, trial_bound: int = 1_000_000, rho_budget: int = 2_000_000
) -> Factorization:
    """Complete prime factorization of n >= 1.

    Trial division up to `trial_bound`, then Brent rho under a shared
    iteration budget.  Exceeding the budget raises FactorizationError; a
    silently incomplete factorization is never returned.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}: need n >= 1")
    counts: dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    d = 5
    while d <= trial_bound and d * d <= m:
        for q in (d, d + 2):
            while m % q == 0:
                counts[q] = counts.get(q, 0) + 1
                m //= q
        d += 6
    if m > 1:
        if d * d > m or is_prime(m):
            counts[m] = counts.get(m, 0) + 1
        else:
            budget = [rho_budget]
            stack = [m]
            while stack:
                x = stack.pop()
                if is_prime(x):
                    counts[x] = counts.get(x, 0) + 1
                    continue
                f = _brent_rho(x, budget)
                stack.append(f)
                stack.append(x // f)
    return Factorization(tuple(sorted(counts.items())))


def divisor_sum(n: int) -> int:
    """Sum of all divisors of n, including n itself."""
    if n < 1:
        raise ValueError(f"divisor_sum undefined for {n}: need n >= 1")
    total = 1
    for p, e in factorize(n):
        total *= (p ** (e + 1) - 1) // (p - 1)
    return total


def divisors(n: int) -> list[int]:
    """All divisors of n in increasing order."""
    out = [1]
    for p, e in factorize(n):
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def classify_number(n: int) -> NumberClass:
    """Classify n >= 1 by comparing its full divisor sum against 2n."""
    total = divisor_sum(n)
    return NumberClass(
        is_perfect=total == 2 * n,
        is_abundant=total > 2 * n,
        is_deficient=total < 2 * n,
        is_almost_perfect=total == 2 * n - 1,
        is_quasi_perfect=total == 2 * n + 1,
    )


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def prime_power_decompose(n: int) -> tuple[int, int] | None:
    """Return (p, k) with n = p**k and p prime, k maximal; None otherwise."""
    if n < 2:
        raise ValueError(f"prime_power_decompose needs n >= 2, got {n}")
    for k in range(n.bit_length() - 1, 0, -1):
        root = _iroot(n, k)
        if root**k == n and is_prime(root):
            return root, k
    return None


def lucas_lehmer(r: int) -> bool:
    """Decide whether 2**r - 1 is prime, for r >= 2."""
    if r < 2:
        raise ValueError(f"lucas_lehmer needs r >= 2, got {r}")
    if r == 2:
        return True  # 3; the s-recurrence below needs odd r
    if not is_prime(r):
        return False  # composite r forces 2**a - 1 | 2**r - 1
    m = (1 << r) - 1
    s = 4
    for _ in range(r - 2):
        s = (s * s - 2) % m
    return s == 0


def even_perfect(r: int) -> int | None:
    """2**(r-1) * (2**r - 1) when 2**r - 1 is prime, else None."""
    if r < 2:
        raise ValueError(f"even_perfect needs r >= 2, got {r}")
    if not lucas_lehmer(r):
        return None
    return (1 << (r - 1)) * ((1 << r) - 1)


@lru_cache(maxsize=1)
def verified_mersenne_exponents() -> tuple[int, ...]:
    """The configured Mersenne exponent list, each re-proved by lucas_lehmer."""
    for r in MERSENNE_EXPONENTS:
        if not lucas_lehmer(r):
            raise RuntimeError(f"configured Mersenne exponent {r} failed verification")
    return MERSENNE_EXPONENTS


def perfect_plus_one(count: int) -> list[tuple[int, int, int]]:
    """Indices i <= count where the i-th even perfect number plus one is a prime power.

    Returns (i, P_i, p) triples.  Any prime-power hit must have exponent 1;
    a violation would mean the surrounding arithmetic is broken and raises
    RuntimeError.
    """
    exponents = verified_mersenne_exponents()
    if not 1 <= count <= len(exponents):
        raise ValueError(
            f"count must be between 1 and {len(exponents)} (configured exponents), got {count}"
        )
    hits = []
    for i, r in enumerate(exponents[:count], start=1):
        p_i = (1 << (r - 1)) * ((1 << r) - 1)
        decomposition = prime_power_decompose(p_i + 1)
        if decomposition is None:
            continue
        p, k = decomposition
        if k != 1:
            raise RuntimeError(
                f"internal invariant violated: perfect+1 = {p}**{k} with k > 1"
            )
        hits.append((i, p_i, p))
    return hits


def carmichael(m: int) -> int:
    """Carmichael function: exponent of the multiplicative group mod m."""
    if m < 1:
        raise ValueError(f"carmichael needs m >= 1, got {m}")
    if m == 1:
        return 1
    out = 1
    for p, e in factorize(m):
        if p == 2:
            lam = 1 if e == 1 else 2 if e == 2 else 1 << (e - 2)
        else:
            lam = p ** (e - 1) * (p - 1)
        out = math.lcm(out, lam)
    return out


def mult_order(r: int, m: int) -> int:
    """Least d >= 1 with r**d == 1 (mod m); requires gcd(r, m) == 1.

    Computed exactly by starting from the Carmichael exponent (a known
    multiple of the order) and stripping prime factors, never by trial
    powering.
    """
    if m < 1:
        raise ValueError(f"mult_order needs m >= 1, got {m}")
    if m == 1:
        return 1
    r %= m
    if math.gcd(r, m) != 1:
        raise ValueError(f"mult_order needs gcd(r, m) = 1, got gcd = {math.gcd(r, m)}")
    order = carmichael(m)
    for p, _ in factorize(order):
        while order % p == 0 and pow(r, order // p, m) == 1:
            order //= p
    return order
