"""mu_n-torsor classes on a monomial torus.

A class is (a, beta) in Z/n x (Z/n)^d, standing for the Kummer cover
t^n = w^a * u * x^beta with w a fixed uniformizer and u a fixed unit tag.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .arith import gcd_list
from .errors import ValidationError


@dataclass(frozen=True)
class TorseurClass:
    n: int
    a: int
    beta: tuple

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n must be >= 1", "n-range")
        object.__setattr__(self, "a", self.a % self.n)
        object.__setattr__(self, "beta", tuple(b % self.n for b in self.beta))

    @property
    def d(self):
        return len(self.beta)

    def to_json(self):
        return {"n": self.n, "a": self.a, "beta": list(self.beta)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["n"]), int(obj.get("a", 0)), tuple(int(b) for b in obj["beta"]))


def identity_class(n, d):
    return TorseurClass(n, 0, (0,) * d)


def add_classes(c1: TorseurClass, c2: TorseurClass) -> TorseurClass:
    if c1.n != c2.n:
        raise ValidationError(f"orders differ: {c1.n} vs {c2.n}", "n-mismatch")
    if c1.d != c2.d:
        raise ValidationError(f"dimensions differ: {c1.d} vs {c2.d}", "d-mismatch")
    return TorseurClass(c1.n, c1.a + c2.a, tuple(x + y for x, y in zip(c1.beta, c2.beta)))


def scale_class(c: TorseurClass, k: int) -> TorseurClass:
    return TorseurClass(c.n, k * c.a, tuple(k * b for b in c.beta))


def negate_class(c: TorseurClass) -> TorseurClass:
    return scale_class(c, -1)


def pi0_of_class(c: TorseurClass) -> int:
    """Number of geometric components; the unit exponent is irrelevant after scalar extension."""
    return gcd_list([c.n, *c.beta])


def split_product_class(c: TorseurClass, s_axes, c_axes):
    """Split along a product X = S x C of tori (axes are 1-based).

    Both pieces are returned on all d axes with the complementary block zeroed,
    i.e. already inflated back to the product.  The unit exponent stays with S.
    """
    s_axes, c_axes = set(s_axes), set(c_axes)
    if s_axes & c_axes or s_axes | c_axes != set(range(1, c.d + 1)):
        raise ValidationError("ownership must partition the axes 1..d", "ownership")
    bs = tuple(b if k + 1 in s_axes else 0 for k, b in enumerate(c.beta))
    bc = tuple(b if k + 1 in c_axes else 0 for k, b in enumerate(c.beta))
    return TorseurClass(c.n, c.a, bs), TorseurClass(c.n, 0, bc)


def restrict_class(c: TorseurClass, axes):
    """The class on the factor spanned by ``axes`` (1-based), forgetting the others."""
    return TorseurClass(c.n, c.a, tuple(c.beta[k - 1] for k in sorted(axes)))


def etale_rank(d: int, q: int) -> int:
    """Rank of R^q phi_* mu_n as a free mu_n(-q)-module: C(d, q)."""
    if not 0 <= q <= d:
        raise ValidationError(f"need 0 <= q <= d, got q={q}, d={d}", "deg-range")
    return comb(d, q)
