"""Points of the Deligne-Lusztig variety {z in A^{d+1} minus 0 : u1(z) = 1} over F_{q^m}.

u1(z) = (-1)^d * prod over nonzero a in F_q^{d+1} of <a, z>.

Points are tuples of raw field encodings (see :mod:`drtower.fields`); public
functions also accept :class:`FqElem` sequences.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .arith import default_budget
from .errors import BudgetExceeded, ValidationError
from .fields import FqElem, extension_of, field_of_order

# beyond this many linear forms, u1 goes through the Moore determinant
_PRODUCT_LIMIT = 4096


@dataclass(frozen=True)
class DLParams:
    q: int
    d: int
    m: int = 1

    def __post_init__(self):
        if self.q < 2:
            raise ValidationError("q must be >= 2", "q-range")
        if self.d < 1:
            raise ValidationError("d must be >= 1", "d-range")
        if self.m < 1:
            raise ValidationError("m must be >= 1", "m-range")
        field_of_order(self.q)  # rejects non prime powers

    @property
    def field(self):
        return extension_of(self.q, self.m)

    @property
    def N(self):
        return self.q ** (self.d + 1) - 1


@dataclass(frozen=True)
class AffinePoint:
    coords: tuple

    def __post_init__(self):
        if not any(self.coords):
            raise ValidationError("the zero vector is not a point", "zero-point")


def _raw(params, z):
    if isinstance(z, AffinePoint):
        z = z.coords
    F = params.field
    out = []
    for c in z:
        if isinstance(c, FqElem):
            if c.field != F:
                raise ValidationError(f"coordinate not in {F!r}", "field-mismatch")
            out.append(c.value)
        else:
            c = int(c)
            if not 0 <= c < F.order:
                raise ValidationError(f"encoding {c} out of range for {F!r}", "range")
            out.append(c)
    if len(out) != params.d + 1:
        raise ValidationError(f"point needs {params.d + 1} coordinates", "point-length")
    return tuple(out)


@lru_cache(maxsize=None)
def _linear_forms(q, d, m):
    """All nonzero a in F_q^{d+1}, as tuples of encodings inside F_{q^m}."""
    sub = extension_of(q, m).subfield(q)
    return [a for a in product(sub, repeat=d + 1) if any(a)]


def _pairing(F, a, z):
    s = 0
    for x, y in zip(a, z):
        if x and y:
            s = F.add(s, F.mul(x, y))
    return s


def moore_sign(q: int, d: int) -> int:
    """The sign s with det(z_i^{q^j})^{q-1} = s * u1(z).

    The product of all nonzero linear forms equals (-1)^L det^{q-1} with
    L = (q^{d+1}-1)/(q-1) the number of lines; combined with the (-1)^d in u1
    this gives s = (-1)^(L+d).  In characteristic 2 signs do not matter.
    """
    if q % 2 == 0:
        return 1
    lines = (q ** (d + 1) - 1) // (q - 1)
    return -1 if (lines + d) % 2 else 1


def _signed(F, s, v):
    return F.neg(v) if s < 0 else v


def _u_tilde_product(params, z):
    F = params.field
    acc = 1
    for a in _linear_forms(params.q, params.d, params.m):
        v = _pairing(F, a, z)
        if not v:
            return 0
        acc = F.mul(acc, v)
    return _signed(F, -1 if params.d % 2 else 1, acc)


def _moore_det_raw(params, z):
    F = params.field
    q, D = params.q, params.d + 1
    rows = []
    for zi in z:
        row, v = [], zi
        for _ in range(D):
            row.append(v)
            v = F.pow(v, q)
        rows.append(row)
    det = 1
    for col in range(D):
        piv = next((r for r in range(col, D) if rows[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = F.neg(det)
        pv = rows[col][col]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        for r in range(col + 1, D):
            if rows[r][col]:
                f = F.mul(rows[r][col], inv)
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[col])]
    return det


def moore_det(params: DLParams, z) -> FqElem:
    return FqElem(params.field, _moore_det_raw(params, _raw(params, z)))


def u_tilde_eval(params: DLParams, z, method: str = "auto") -> FqElem:
    """u1(z). ``method`` is "product", "moore" or "auto" (product for small q^{d+1})."""
    zr = _raw(params, z)
    F = params.field
    if method == "auto":
        method = "product" if params.q ** (params.d + 1) <= _PRODUCT_LIMIT else "moore"
    if method == "product":
        return FqElem(F, _u_tilde_product(params, zr))
    if method == "moore":
        det = _moore_det_raw(params, zr)
        return FqElem(F, _signed(F, moore_sign(params.q, params.d), F.pow(det, params.q - 1)))
    raise ValidationError(f"unknown method {method!r}", "method")


def _check_budget(count, budget):
    budget = default_budget() if budget is None else budget
    if count > budget:
        raise BudgetExceeded(count, budget)


def iter_points(params: DLParams):
    """Nonzero vectors of F_{q^m}^{d+1} in lexicographic order of encodings."""
    Q = params.field.order
    for z in product(range(Q), repeat=params.d + 1):
        if any(z):
            yield z


def enumerate_dl(params: DLParams, budget=None, collect=False):
    """(count, points or None) for {u1 = 1}."""
    _check_budget(params.field.order ** (params.d + 1), budget)
    pts = [] if collect else None
    count = 0
    for z in iter_points(params):
        if _u_tilde_product(params, z) == 1:
            count += 1
            if collect:
                pts.append(z)
    return count, pts


def normalize_projective(F, z):
    """Scale z so that its first nonzero coordinate is 1."""
    lead = next(c for c in z if c)
    inv = F.inv(lead)
    return tuple(F.mul(inv, c) for c in z)


def iter_projective(params: DLParams):
    Q = params.field.order
    D = params.d + 1
    for lead in range(D):
        for tail in product(range(Q), repeat=D - lead - 1):
            yield (0,) * lead + (1,) + tail


def enumerate_omega(params: DLParams, budget=None) -> int:
    """Points of P^d(F_{q^m}) off every F_q-rational hyperplane."""
    _check_budget(params.field.order ** (params.d + 1), budget)
    return sum(1 for z in iter_projective(params) if _u_tilde_product(params, z))


def on_rational_hyperplane(params: DLParams, z) -> bool:
    """True iff z_0, ..., z_d are F_q-linearly dependent, tested through the size of their span."""
    zr = _raw(params, z)
    F = params.field
    sub = F.subfield(params.q)
    span = {0}
    for c in zr:
        span = {F.add(s, F.mul(a, c)) for s in span for a in sub}
    return len(span) < params.q ** (params.d + 1)


@lru_cache(maxsize=None)
def subfield_embedding(q: int, m: int):
    """Encodings of GF(q) -> their images in F_{q^m}, as a list indexed by small encoding."""
    small = field_of_order(q)
    big = extension_of(q, m)
    sub = big.subfield(q)

    def ev(poly, x):
        acc = 0
        for c in reversed(poly):
            acc = big.add(big.mul(acc, x), big.scalar(c))
        return acc

    root = next(r for r in sub if ev(small.modulus, r) == 0)
    powers = [1]
    for _ in range(small.f - 1):
        powers.append(big.mul(powers[-1], root))
    out = []
    for v in range(small.order):
        acc = 0
        for c, pw in zip(small._digits[v], powers):
            acc = big.add(acc, big.mul(big.scalar(c), pw))
        out.append(acc)
    return out


def _matrix_raw(params, g):
    """g as a (d+1)x(d+1) matrix of F_q encodings, embedded into F_{q^m}."""
    D = params.d + 1
    if len(g) != D or any(len(row) != D for row in g):
        raise ValidationError(f"g must be {D}x{D}", "matrix-shape")
    emb = subfield_embedding(params.q, params.m)
    small = field_of_order(params.q)
    out = []
    for row in g:
        r = []
        for x in row:
            if isinstance(x, FqElem):
                if x.field != small:
                    raise ValidationError("matrix entries must lie in F_q", "field-mismatch")
                x = x.value
            if not 0 <= int(x) < small.order:
                raise ValidationError(f"entry {x} is not an F_{params.q} encoding", "range")
            r.append(emb[int(x)])
        out.append(r)
    return out


def _is_invertible(F, mat):
    rows = [list(r) for r in mat]
    D = len(rows)
    for col in range(D):
        piv = next((r for r in range(col, D) if rows[r][col]), None)
        if piv is None:
            return False
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = F.inv(rows[col][col])
        for r in range(col + 1, D):
            if rows[r][col]:
                f = F.mul(rows[r][col], inv)
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[col])]
    return True


def _apply(F, mat, z):
    return tuple(_pairing(F, row, z) for row in mat)


def check_gl_invariance(params: DLParams, g, z) -> bool:
    F = params.field
    mat = _matrix_raw(params, g)
    if not _is_invertible(F, mat):
        raise ValidationError("g is singular", "singular")
    zr = _raw(params, z)
    return _u_tilde_product(params, _apply(F, mat, zr)) == _u_tilde_product(params, zr)


def gl_group(q: int, d: int):
    """All invertible (d+1)x(d+1) matrices over F_q (as small-field encodings)."""
    small = field_of_order(q)
    D = d + 1
    out = []
    for flat in product(range(q), repeat=D * D):
        mat = [list(flat[i * D:(i + 1) * D]) for i in range(D)]
        if _is_invertible(small, mat):
            out.append(mat)
    return out


def random_gl(q: int, d: int, rng: random.Random):
    small = field_of_order(q)
    D = d + 1
    while True:
        mat = [[rng.randrange(q) for _ in range(D)] for _ in range(D)]
        if _is_invertible(small, mat):
            return mat


def random_point(params: DLParams, rng: random.Random):
    Q = params.field.order
    while True:
        z = tuple(rng.randrange(Q) for _ in range(params.d + 1))
        if any(z):
            return z


def scaling_action_report(params: DLParams, budget=None) -> dict:
    """Check the action of F_{q^{d+1}}^* on DL(F_{q^m}) by scalars, (d+1) | m."""
    if params.m % (params.d + 1):
        raise ValidationError("need (d+1) | m for the scalars to be rational", "m-divisibility")
    F = params.field
    N = params.N
    _, pts = enumerate_dl(params, budget, collect=True)
    scalars = F.cyclic_subgroup(N)
    dl = set(pts)
    preserved = True
    free = True
    fibers = {}
    for z in pts:
        for lam in scalars:
            w = tuple(F.mul(lam, c) for c in z)
            if w not in dl:
                preserved = False
            if lam != 1 and w == z:
                free = False
        fibers.setdefault(normalize_projective(F, z), []).append(z)
    sizes = sorted({len(v) for v in fibers.values()})
    in_omega = all(_u_tilde_product(params, x) for x in fibers)
    return {
        "dl_count": len(pts),
        "image_count": len(fibers),
        "N": N,
        "preserved": preserved,
        "free": free,
        "fiber_sizes": sizes,
        "image_in_omega": in_omega,
        "count_consistent": len(pts) == N * len(fibers),
    }


def check_free_scaling_action(params: DLParams, budget=None) -> bool:
    r = scaling_action_report(params, budget)
    return (r["preserved"] and r["free"] and r["image_in_omega"]
            and r["fiber_sizes"] in ([r["N"]], []) and r["count_consistent"])


def moore_check(params: DLParams, z, literal: bool = False) -> bool:
    """det^{q-1} against u1 with the true sign, or with (-1)^d when ``literal``."""
    F = params.field
    zr = _raw(params, z)
    lhs = F.pow(_moore_det_raw(params, zr), params.q - 1)
    u = _u_tilde_product(params, zr)
    s = (-1 if params.d % 2 else 1) if literal else moore_sign(params.q, params.d)
    return lhs == _signed(F, s, u)


def dl_report(params: DLParams, budget=None) -> dict:
    count, pts = enumerate_dl(params, budget)
    omega = enumerate_omega(params, budget)
    moore_ok = all(moore_check(params, z) for z in iter_points(params))
    return {
        "q": params.q, "d": params.d, "m": params.m,
        "dl_count": count,
        "omega_count": omega,
        "moore_identity_checked": moore_ok,
        "moore_sign": moore_sign(params.q, params.d),
    }
