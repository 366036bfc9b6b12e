"""Integer and rational helpers, q-combinatorics, and characters of F_{q^{d+1}}^*.

Rationals are plain :class:`fractions.Fraction` objects; they are always
reduced with a positive denominator, which is all the rest of the package
needs from a rational type.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import ValidationError

Rational = Fraction

DEFAULT_BUDGET = 1 << 24
BUDGET_ENV = "DRTOWER_BUDGET"


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{BUDGET_ENV}={raw!r} is not an integer", "budget") from None
    if value <= 0:
        raise ValidationError(f"{BUDGET_ENV} must be positive", "budget")
    return value


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a rational: {text!r}", "rational") from None


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def gcd_list(values) -> int:
    values = list(values)
    if not values:
        raise ValidationError("gcd of an empty list", "empty")
    return reduce(math.gcd, (abs(int(v)) for v in values), 0)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        raise ValidationError(f"need 0 <= k <= n, got k={k}, n={n}", "range")
    if q < 2:
        raise ValidationError("q must be >= 2", "range")
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def gaussian_multinomial(parts, q: int) -> int:
    """Number of flags in F_q^{sum(parts)} whose successive quotients have the given dims."""
    total = 0
    out = 1
    for e in parts:
        total += e
        out *= gaussian_binomial(total, e, q)
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int):
    """Return (p, f) with q = p**f, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    f = 0
    r = q
    while r % p == 0:
        r //= p
        f += 1
    return (p, f) if r == 1 else None


def divisors(n: int):
    return [e for e in range(1, n + 1) if n % e == 0]


@dataclass(frozen=True)
class CharacterIndex:
    """A character of F_{q^{d+1}}^* written as an exponent j mod N = q^{d+1} - 1."""

    q: int
    d: int
    j: int

    def __post_init__(self):
        if prime_power(self.q) is None:
            raise ValidationError(f"q={self.q} is not a prime power", "q-not-prime-power")
        if self.d < 1:
            raise ValidationError("d must be >= 1", "d-range")
        if not 0 <= self.j < self.N:
            raise ValidationError(f"j={self.j} out of range [0, {self.N})", "j-range")

    @property
    def N(self) -> int:
        return self.q ** (self.d + 1) - 1


def is_primitive(chi: CharacterIndex) -> bool:
    """True when chi does not factor through a norm to a proper subfield."""
    D = chi.d + 1
    for e in divisors(D):
        if e == D:
            continue
        if chi.j % (chi.N // (chi.q ** e - 1)) == 0:
            return False
    return True


def green_orbit(chi: CharacterIndex) -> frozenset:
    """Orbit of j under multiplication by q (Frobenius) in Z/N."""
    seen = set()
    x = chi.j % chi.N
    while x not in seen:
        seen.add(x)
        x = (x * chi.q) % chi.N
    return frozenset(seen)


def cuspidal_dimension(q: int, d: int) -> int:
    """prod_{i=1}^{d} (q^i - 1)."""
    if q < 2 or d < 1:
        raise ValidationError("need q >= 2 and d >= 1", "range")
    out = 1
    for i in range(1, d + 1):
        out *= q ** i - 1
    return out
