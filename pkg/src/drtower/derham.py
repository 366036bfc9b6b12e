"""De Rham complexes of monomial tori and their tame cyclic (Kummer) covers.

Functions on the cover T = {t^n = lambda * x^beta} of a d-dimensional torus are
modelled by finitely supported sums of monomials t^i x^nu (0 <= i < n,
nu in Z^d) with rational coefficients; lambda is taken to be 1.  A monomial of
isotypic index i has logarithmic derivative

    d(t^i x^nu) = t^i x^nu * sum_r ((n*nu_r + i*beta_r) / n) dlog(x_r)

so in the dlog basis the differential is diagonal on monomials and every
computation stays inside Q.  Radii of the torus are metadata only: nothing
here reads them.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .arith import format_rational, gcd_list, parse_rational
from .errors import NotClosed, ValidationError


@dataclass(frozen=True)
class TorusSpec:
    """{ s_i <= |x_i| <= r_i, rho <= |x^alpha| <= mu } in dimension d."""

    d: int
    alpha: tuple = None
    radii: tuple = None  # informational: (s, r, rho, mu) as rational log-radii

    def __post_init__(self):
        if self.d < 0:
            raise ValidationError("torus dimension must be >= 0", "d-range")
        alpha = tuple(self.alpha) if self.alpha is not None else (0,) * self.d
        if len(alpha) != self.d:
            raise ValidationError("alpha must have length d", "alpha-length")
        if any(a < 0 for a in alpha):
            raise ValidationError("alpha entries must be >= 0", "alpha-range")
        object.__setattr__(self, "alpha", alpha)
        if self.radii is not None:
            s, r, rho, mu = self.radii
            if len(s) != self.d or len(r) != self.d:
                raise ValidationError("radii vectors must have length d", "radii")
            if any(Fraction(a) > Fraction(b) for a, b in zip(s, r)) or Fraction(rho) > Fraction(mu):
                raise ValidationError("need s_i <= r_i and rho <= mu", "radii")


@dataclass(frozen=True)
class CoverSpec:
    """The mu_n-cover X((lambda x^beta)^{1/n}) of a monomial torus X."""

    base: TorusSpec
    n: int
    beta: tuple
    p: int = None
    lambda_tag: str = "1"

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n must be >= 1", "n-range")
        beta = tuple(int(b) for b in self.beta)
        if len(beta) != self.base.d:
            raise ValidationError(
                f"beta has length {len(beta)}, torus dimension is {self.base.d}", "beta-length")
        object.__setattr__(self, "beta", beta)
        if self.p is not None and gcd_list([self.n, self.p]) != 1:
            raise ValidationError(f"n={self.n} is not prime to p={self.p}", "n-not-coprime")

    @property
    def d(self) -> int:
        return self.base.d

    @property
    def pi0(self) -> int:
        return gcd_list([self.n, *self.beta])

    @property
    def n_tilde(self) -> int:
        return self.n // self.pi0

    @property
    def beta_tilde(self) -> tuple:
        return tuple(b // self.pi0 for b in self.beta)

    def weight(self, iso: int, nu) -> tuple:
        """Integer vector n*nu + iso*beta; the dlog-coefficients times n."""
        return tuple(self.n * v + iso * b for v, b in zip(nu, self.beta))


def make_cover(d, n=1, beta=None, p=None, alpha=None) -> CoverSpec:
    beta = tuple(beta) if beta is not None else (0,) * d
    return CoverSpec(TorusSpec(d, alpha), n, beta, p)


def product_cover(a: CoverSpec, b: CoverSpec) -> CoverSpec:
    """Cover of X x Y whose class is [T_a x Y] + [X x T_b] (antidiagonal quotient)."""
    if a.n != b.n:
        raise ValidationError("covers must have the same order n", "n-mismatch")
    base = TorusSpec(a.d + b.d, a.base.alpha + b.base.alpha)
    return CoverSpec(base, a.n, a.beta + b.beta, a.p if a.p is not None else b.p)


class LaurentPoly:
    """Finitely supported map Z^d -> Q with no stored zeros."""

    __slots__ = ("d", "terms")

    def __init__(self, d, terms=None):
        self.d = d
        self.terms = {}
        if terms:
            for nu, c in dict(terms).items():
                nu = tuple(nu)
                if len(nu) != d:
                    raise ValidationError("exponent has wrong length", "exp-length")
                c = Fraction(c)
                if c:
                    self.terms[nu] = c

    @classmethod
    def monomial(cls, nu, coeff=1):
        return cls(len(nu), {tuple(nu): coeff})

    def _combine(self, other, sign):
        out = dict(self.terms)
        for nu, c in other.terms.items():
            v = out.get(nu, 0) + sign * c
            if v:
                out[nu] = v
            else:
                out.pop(nu, None)
        res = LaurentPoly(self.d)
        res.terms = out
        return res

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        res = LaurentPoly(self.d)
        res.terms = {nu: -c for nu, c in self.terms.items()}
        return res

    def scale(self, c):
        c = Fraction(c)
        res = LaurentPoly(self.d)
        if c:
            res.terms = {nu: c * v for nu, v in self.terms.items()}
        return res

    def __mul__(self, other):
        out = {}
        for nu, a in self.terms.items():
            for mu, b in other.terms.items():
                key = tuple(x + y for x, y in zip(nu, mu))
                out[key] = out.get(key, 0) + a * b
        return LaurentPoly(self.d, out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.d == other.d and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{list(nu)}" for nu, c in sorted(self.terms.items()))


def _wedge_sign(r, I):
    """Sign of dlog(x_r) ^ dlog(x_I) once the indices are sorted; 0 if r in I."""
    if r in I:
        return 0
    return -1 if sum(1 for i in I if i < r) % 2 else 1


def _insert(r, I):
    return tuple(sorted(I + (r,)))


@dataclass
class IsoForm:
    """t^iso * sum_I f_I dlog(x_I) on a cover; I are sorted 1-based axis tuples."""

    cover: CoverSpec
    degree: int
    iso: int
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.iso < self.cover.n:
            raise ValidationError(f"isotypic index {self.iso} not in [0, {self.cover.n})", "iso-range")
        if not 0 <= self.degree <= self.cover.d + 1:
            raise ValidationError("degree out of range", "deg-range")
        clean = {}
        for I, f in self.components.items():
            I = tuple(I)
            if len(I) != self.degree or list(I) != sorted(set(I)):
                raise ValidationError(f"subset {I} does not match degree {self.degree}", "subset")
            if any(not 1 <= i <= self.cover.d for i in I):
                raise ValidationError(f"axis out of range in {I}", "subset")
            if not isinstance(f, LaurentPoly):
                f = LaurentPoly(self.cover.d, f)
            if f:
                clean[I] = f
        self.components = clean

    @classmethod
    def from_terms(cls, cover, degree, iso, terms):
        """Build from an iterable of (I, nu, coeff); repeated keys accumulate."""
        acc = {}
        for I, nu, c in terms:
            key = (tuple(I), tuple(nu))
            acc[key] = acc.get(key, 0) + Fraction(c)
        comps = {}
        for (I, nu), c in acc.items():
            if c:
                comps.setdefault(I, {})[nu] = c
        return cls(cover, degree, iso, {I: LaurentPoly(cover.d, t) for I, t in comps.items()})

    @classmethod
    def zero(cls, cover, degree, iso):
        return cls(cover, degree, iso, {})

    def terms(self):
        for I in sorted(self.components):
            for nu, c in sorted(self.components[I].terms.items()):
                yield I, nu, c

    def _check_compatible(self, other):
        if (self.cover, self.degree, self.iso) != (other.cover, other.degree, other.iso):
            raise ValidationError("forms live in different complexes", "form-mismatch")

    def __add__(self, other):
        self._check_compatible(other)
        comps = dict(self.components)
        for I, f in other.components.items():
            comps[I] = comps[I] + f if I in comps else f
        return IsoForm(self.cover, self.degree, self.iso, comps)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return IsoForm(self.cover, self.degree, self.iso,
                       {I: f.scale(c) for I, f in self.components.items()})

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, IsoForm):
            return NotImplemented
        return (self.cover, self.degree, self.iso, self.components) == (
            other.cover, other.degree, other.iso, other.components)

    def num_terms(self):
        return sum(len(f) for f in self.components.values())


def differential(w: IsoForm) -> IsoForm:
    cover = w.cover
    n, beta, i = cover.n, cover.beta, w.iso
    if w.degree >= cover.d:
        # top degree: the result is the zero form, clamped to degree d+1
        return IsoForm.zero(cover, min(w.degree + 1, cover.d + 1), i)
    out = []
    for I, nu, a in w.terms():
        for r in range(1, cover.d + 1):
            s = _wedge_sign(r, I)
            if not s:
                continue
            num = n * nu[r - 1] + i * beta[r - 1]
            if num:
                out.append((_insert(r, I), nu, s * a * Fraction(num, n)))
    return IsoForm.from_terms(cover, w.degree + 1, i, out)


def integrate(w: IsoForm, axis: int) -> IsoForm:
    """Divide each coefficient by its dlog(x_axis)-weight; terms of weight 0 are dropped."""
    cover = w.cover
    if not 1 <= axis <= cover.d:
        raise ValidationError(f"axis {axis} out of range", "axis-range")
    n, b = cover.n, cover.beta[axis - 1]
    out = []
    for I, nu, a in w.terms():
        num = n * nu[axis - 1] + w.iso * b
        if num:
            out.append((I, nu, a * Fraction(n, num)))
    return IsoForm.from_terms(cover, w.degree, w.iso, out)


def contract(w: IsoForm, axis: int) -> IsoForm:
    """Interior product with the vector field dual to dlog(x_axis)."""
    if w.degree == 0:
        return IsoForm.zero(w.cover, 0, w.iso)
    out = []
    for I, nu, a in w.terms():
        if axis in I:
            pos = I.index(axis)
            out.append((I[:pos] + I[pos + 1:], nu, -a if pos % 2 else a))
    return IsoForm.from_terms(w.cover, w.degree - 1, w.iso, out)


@dataclass
class CohomClass:
    """Coordinates in the basis t_0^a dlog(x_I), 0 <= a < pi0, |I| = degree."""

    cover: CoverSpec
    degree: int
    coords: dict
    iso: int = None

    def nonzero(self):
        return {k: v for k, v in self.coords.items() if v}


def canonical_form(cover: CoverSpec, degree: int, iso: int, coords) -> IsoForm:
    """The form sum coords[(a, I)] * t_0^a dlog(x_I) restricted to isotypic index iso.

    t_0^a = t^{a*n_tilde} / x^{a*beta_tilde}; with lambda = 1, t_0^{pi0} = 1.
    """
    nt, bt = cover.n_tilde, cover.beta_tilde
    out = []
    for (a, I), c in dict(coords).items():
        if not 0 <= a < cover.pi0:
            raise ValidationError(f"component index {a} not in [0, {cover.pi0})", "a-range")
        if (a * nt) % cover.n != iso:
            raise ValidationError(f"t_0^{a} lives in isotypic index {a * nt}, not {iso}", "iso-mismatch")
        out.append((tuple(I), tuple(-a * b for b in bt), c))
    return IsoForm.from_terms(cover, degree, iso, out)


def reduce_to_class(w: IsoForm):
    """Split a closed form as canonical(coords) + d(primitive).

    Axes are handled in the order r = d, ..., 1.  At axis r every term whose
    weight (n*nu_r + iso*beta_r) is nonzero is exact; the primitive picks up
    contract(part, r) divided by that weight (i_r d + d i_r multiplies a
    monomial by its weight).  What survives all axes has weight vector zero,
    i.e. is a multiple of some t_0^a dlog(x_I).
    """
    cover = w.cover
    if not differential(w).is_zero():
        raise NotClosed("form is not closed")
    residual = w
    primitive = IsoForm.zero(cover, max(w.degree - 1, 0), w.iso)
    n, beta, i = cover.n, cover.beta, w.iso
    for r in range(cover.d, 0, -1):
        part = IsoForm.from_terms(
            cover, w.degree, i,
            [(I, nu, c) for I, nu, c in residual.terms() if n * nu[r - 1] + i * beta[r - 1]])
        if part.is_zero():
            continue
        eta = integrate(contract(part, r), r)
        primitive = primitive + eta
        residual = residual - differential(eta)
    coords = {}
    nt = cover.n_tilde
    for I, nu, c in residual.terms():
        if any(cover.weight(i, nu)):
            raise AssertionError("reduction left a term of nonzero weight")
        coords[(i // nt, I)] = c
    return CohomClass(cover, w.degree, coords, iso=i), primitive


def isotypic_dimension(cover: CoverSpec, q: int, i: int) -> int:
    if q < 0 or q > cover.d:
        return 0
    return comb(cover.d, q) if i % cover.n_tilde == 0 else 0


def cohomology_dimension(cover: CoverSpec, q: int) -> int:
    if q < 0 or q > cover.d:
        return 0
    return cover.pi0 * comb(cover.d, q)


def kunneth_dimension(cover_a: CoverSpec, cover_b: CoverSpec, i: int, q: int) -> int:
    if cover_a.n != cover_b.n:
        raise ValidationError("Kunneth needs covers of the same order n", "n-mismatch")
    return sum(isotypic_dimension(cover_a, q1, i) * isotypic_dimension(cover_b, q - q1, i)
               for q1 in range(0, q + 1))


def subsets(d, q):
    return list(combinations(range(1, d + 1), q))


# JSON -------------------------------------------------------------------------

def _cover_from_json(obj) -> CoverSpec:
    try:
        d = int(obj["d"])
        n = int(obj.get("n", 1))
        beta = obj.get("beta", [0] * d)
        p = obj.get("p")
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed cover data: {exc}", "json") from None
    return make_cover(d, n, beta, p, obj.get("alpha"))


def _cover_json(cover):
    out = {"d": cover.d, "n": cover.n, "beta": list(cover.beta)}
    if cover.p is not None:
        out["p"] = cover.p
    return out


def isoform_from_json(obj) -> IsoForm:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}", "json") from None
    cover = _cover_from_json(obj)
    try:
        deg = int(obj["deg"])
        iso = int(obj.get("iso", 0))
        raw = obj.get("terms", [])
        terms = [(tuple(int(a) for a in t.get("I", [])), tuple(int(e) for e in t["exp"]),
                  parse_rational(t["coeff"])) for t in raw]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed form data: {exc}", "json") from None
    for I, nu, _ in terms:
        if len(nu) != cover.d:
            raise ValidationError("exponent length differs from d", "exp-length")
    return IsoForm.from_terms(cover, deg, iso, terms)


def isoform_to_json(w: IsoForm) -> dict:
    out = _cover_json(w.cover)
    out.update(iso=w.iso, deg=w.degree, terms=[
        {"coeff": format_rational(c), "exp": list(nu), "I": list(I)} for I, nu, c in w.terms()])
    return out


def cohomclass_to_json(c: CohomClass) -> dict:
    out = _cover_json(c.cover)
    out["deg"] = c.degree
    if c.iso is not None:
        out["iso"] = c.iso
    out["terms"] = [{"a": a, "I": list(I), "coeff": format_rational(v)}
                    for (a, I), v in sorted(c.nonzero().items())]
    return out


def cohomclass_from_json(obj) -> CohomClass:
    cover = _cover_from_json(obj)
    coords = {(int(t["a"]), tuple(t["I"])): parse_rational(t["coeff"]) for t in obj.get("terms", [])}
    return CohomClass(cover, int(obj["deg"]), coords, obj.get("iso"))
