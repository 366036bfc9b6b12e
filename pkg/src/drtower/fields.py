"""Small finite fields GF(p^f) backed by log/antilog tables.

Elements are encoded as integers in [0, p^f): the base-p digits are the
coefficients of the residue polynomial, lowest degree first.  The modulus is
the first monic degree-f polynomial (ordered by that same integer encoding of
its lower coefficients) for which x generates the multiplicative group, so the
enumeration order of every field is reproducible.
"""
from __future__ import annotations

from functools import lru_cache

from .arith import is_prime, prime_power
from .errors import ValidationError

_ADD_TABLE_LIMIT = 512


def _digits(v, p, f):
    out = []
    for _ in range(f):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _undigits(ds, p):
    v = 0
    for c in reversed(ds):
        v = v * p + c
    return v


def _mul_by_x(coeffs, tail, p):
    # coeffs has length f; x^f = -(tail) where modulus = x^f + sum tail[i] x^i
    top = coeffs[-1]
    shifted = [0] + coeffs[:-1]
    if top:
        shifted = [(s - top * t) % p for s, t in zip(shifted, tail)]
    return shifted


def _find_primitive_modulus(p, f):
    order = p ** f - 1
    for t in range(p ** f):
        tail = _digits(t, p, f)
        if tail[0] == 0:
            continue
        cur = [1] + [0] * (f - 1)
        k = 0
        while True:
            cur = _mul_by_x(cur, tail, p)
            k += 1
            if cur == [1] + [0] * (f - 1) or k > order:
                break
        if k == order:
            return tuple(tail) + (1,)
    raise AssertionError(f"no primitive polynomial found for p={p}, f={f}")


class GF:
    """The finite field with p**f elements."""

    def __init__(self, p: int, f: int = 1):
        if not is_prime(p):
            raise ValidationError(f"p={p} is not prime", "p-not-prime")
        if f < 1:
            raise ValidationError("extension degree must be >= 1", "range")
        self.p = p
        self.f = f
        self.order = p ** f
        self.modulus = _find_primitive_modulus(p, f)
        tail = list(self.modulus[:-1])
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [None] * self.order
        cur = [1] + [0] * (f - 1)
        for k in range(n):
            v = _undigits(cur, p)
            exp[k] = v
            log[v] = k
            cur = _mul_by_x(cur, tail, p)
        exp[n:] = exp[:n]
        self._exp = exp
        self._log = log
        self._digits = [tuple(_digits(v, p, f)) for v in range(self.order)]
        self._add_table = None
        if p != 2 and self.order <= _ADD_TABLE_LIMIT:
            self._add_table = [[self._add_slow(a, b) for b in range(self.order)]
                               for a in range(self.order)]

    def __repr__(self):
        return f"GF({self.p}^{self.f})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.f) == (other.p, other.f)

    def __hash__(self):
        return hash((GF, self.p, self.f))

    # raw integer arithmetic -------------------------------------------------

    def _add_slow(self, a, b):
        p = self.p
        return _undigits([(x + y) % p for x, y in zip(self._digits[a], self._digits[b])], p)

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        p = self.p
        return _undigits([(-x) % p for x in self._digits[a]], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self._exp[(self._log[a] * k) % (self.order - 1)]

    def scalar(self, c: int) -> int:
        """Image of the integer c under Z -> F_p -> this field."""
        return c % self.p

    def generator(self) -> int:
        return self._exp[1]

    def gen_pow(self, k: int) -> int:
        return self._exp[k % (self.order - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def subfield(self, q: int):
        """Elements of the unique subfield of order q, sorted by encoding."""
        pf = prime_power(q)
        if pf is None or pf[0] != self.p or self.f % pf[1]:
            raise ValidationError(f"GF({q}) is not a subfield of {self!r}", "subfield")
        step = (self.order - 1) // (q - 1)
        return sorted([0] + [self._exp[k * step] for k in range(q - 1)])

    def cyclic_subgroup(self, n: int):
        """The n-th roots of unity, i.e. the subgroup of order n of the unit group."""
        if (self.order - 1) % n:
            raise ValidationError(f"{n} does not divide {self.order - 1}", "subgroup")
        step = (self.order - 1) // n
        return [self._exp[k * step] for k in range(n)]

    # element wrappers --------------------------------------------------------

    def __call__(self, v) -> "FqElem":
        if isinstance(v, FqElem):
            if v.field != self:
                raise ValidationError("element belongs to another field", "field-mismatch")
            return v
        v = int(v)
        if not 0 <= v < self.order:
            raise ValidationError(f"encoding {v} out of range for {self!r}", "range")
        return FqElem(self, v)

    def from_coeffs(self, coeffs) -> "FqElem":
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.f:
            raise ValidationError("more coefficients than the extension degree", "range")
        cs += [0] * (self.f - len(cs))
        return FqElem(self, _undigits(cs, self.p))

    def elements(self):
        return [FqElem(self, v) for v in range(self.order)]

    def zero(self):
        return FqElem(self, 0)

    def one(self):
        return FqElem(self, 1)


@lru_cache(maxsize=None)
def gf(p: int, f: int = 1) -> GF:
    return GF(p, f)


def field_of_order(q: int) -> GF:
    pf = prime_power(q)
    if pf is None:
        raise ValidationError(f"q={q} is not a prime power", "q-not-prime-power")
    return gf(*pf)


def extension_of(q: int, m: int) -> GF:
    """The field F_{q^m}, with F_q available through ``.subfield(q)``."""
    pf = prime_power(q)
    if pf is None:
        raise ValidationError(f"q={q} is not a prime power", "q-not-prime-power")
    if m < 1:
        raise ValidationError("m must be >= 1", "range")
    return gf(pf[0], pf[1] * m)


class FqElem:
    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValidationError("mixing elements of different fields", "field-mismatch")
            return other.value
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FqElem(self.field, self.field.div(self.value, o))

    def __pow__(self, k: int):
        return FqElem(self.field, self.field.pow(self.value, k))

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.scalar(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.f, self.value))

    def __bool__(self):
        return self.value != 0

    def coeffs(self):
        return list(self.field._digits[self.value])

    def __repr__(self):
        return f"{self.field!r}({self.value})"
