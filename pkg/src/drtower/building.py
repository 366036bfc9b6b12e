"""Combinatorics of the Bruhat-Tits building of PGL_{d+1}.

Lattices are modelled over O = F_q[[pi]], truncated to F_q[pi]/(pi^S).  A
vertex at distance <= R from the standard lattice L0 = O^{d+1} has a unique
representative L with pi^R L0 <= L <= L0 and L not inside pi L0; with S = R + 1
every lattice we touch contains pi^S L0, so the truncation loses nothing.
Representatives are stored in column Hermite normal form: upper triangular,
diagonal pi^{a_i}, entries above the diagonal in row i reduced to degree < a_i.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from .arith import (CharacterIndex, cuspidal_dimension, default_budget, gaussian_binomial,
                    gcd_list, is_primitive, prime_power)
from .errors import BudgetExceeded, ValidationError
from .fields import field_of_order

NOT_COMPUTED = "not-computed"


@dataclass(frozen=True)
class SimplexType:
    """A composition (e_0, ..., e_k) of d+1."""

    composition: tuple

    def __post_init__(self):
        comp = tuple(int(e) for e in self.composition)
        if not comp or any(e < 1 for e in comp):
            raise ValidationError("a type is a composition with parts >= 1", "type")
        object.__setattr__(self, "composition", comp)

    @property
    def d(self):
        return sum(self.composition) - 1

    @property
    def k(self):
        return len(self.composition) - 1

    @property
    def partial_dims(self):
        """d_i = e_0 + ... + e_i - 1."""
        out, s = [], -1
        for e in self.composition:
            s += e
            out.append(s)
        return tuple(out)

    def rotate(self, t=1):
        c = self.composition
        t %= len(c)
        return SimplexType(c[t:] + c[:t])

    def __str__(self):
        return "(" + ",".join(map(str, self.composition)) + ")"


def compositions(total: int):
    """All compositions of total, in lexicographic order."""
    if total == 0:
        return [()]
    out = []
    for first in range(1, total + 1):
        out.extend((first,) + rest for rest in compositions(total - first))
    return out


# subspaces of F_q^n ------------------------------------------------------------

def _check_q(q):
    if prime_power(q) is None:
        raise ValidationError(f"q={q} is not a prime power", "q-not-prime-power")
    return field_of_order(q)


def _span(F, basis, n):
    vecs = {(0,) * n}
    for b in basis:
        vecs = {tuple(F.add(v, F.mul(c, x)) for v, x in zip(vec, b))
                for vec in vecs for c in range(F.order)}
    return frozenset(vecs)


def subspaces(q: int, n: int, k: int):
    """All k-dimensional subspaces of F_q^n as reduced row echelon bases (tuples of rows)."""
    F = _check_q(q)
    out = []
    for pivots in combinations(range(n), k):
        free = [(r, c) for r, p in enumerate(pivots) for c in range(p + 1, n) if c not in pivots]
        for vals in product(range(F.order), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            out.append(tuple(tuple(r) for r in rows))
    return out


def proper_subspaces(q: int, n: int):
    return [V for k in range(1, n) for V in subspaces(q, n, k)]


def star_census(q: int, d: int, budget=None) -> dict:
    """Flags 0 < V_0 < ... < V_{k-1} < F_q^{d+1} counted by type, by enumerating chains."""
    F = _check_q(q)
    n = d + 1
    budget = default_budget() if budget is None else budget
    if q ** n > budget:
        raise BudgetExceeded(q ** n, budget)
    subs = proper_subspaces(q, n)
    spans = [_span(F, V, n) for V in subs]
    dims = [len(V) for V in subs]
    above = [[j for j in range(len(subs)) if dims[j] > dims[i] and spans[i] <= spans[j]]
             for i in range(len(subs))]
    census = {SimplexType((n,)): 1}

    def walk(i, chain_dims):
        last = chain_dims[-1]
        comp = [chain_dims[0]] + [b - a for a, b in zip(chain_dims, chain_dims[1:])] + [n - last]
        t = SimplexType(tuple(comp))
        census[t] = census.get(t, 0) + 1
        for j in above[i]:
            walk(j, chain_dims + [dims[j]])

    for i in range(len(subs)):
        walk(i, [dims[i]])
    return dict(sorted(census.items(), key=lambda kv: kv[0].composition))


def flag_count(q: int, t: SimplexType) -> int:
    """prod of Gaussian binomials along the flag."""
    out, total = 1, 0
    n = t.d + 1
    for e in t.composition[:-1]:
        out *= gaussian_binomial(n - total, e, q)
        total += e
    return out


# beta exponents ----------------------------------------------------------------

def level_of(a, t: SimplexType) -> int:
    """Smallest i such that every coordinate of a beyond index d_i is zero."""
    a = tuple(a)
    if len(a) != t.d + 1:
        raise ValidationError("vector length must be d+1", "vector-length")
    if not any(a):
        raise ValidationError("level of the zero vector is undefined", "zero-vector")
    last = max(i for i, x in enumerate(a) if x)
    return next(i for i, di in enumerate(t.partial_dims) if last <= di)


def beta_values(q: int, t: SimplexType):
    """beta_i = q^{d_{i-1}+1} (q^{e_i} - 1) for i < k, with d_{-1} = -1.

    This is the number of nonzero a in F_q^{d+1} of level i, i.e. the exponent
    of y_i = z_{d_i}/z_d in the A_k factor of the unit.
    """
    dims = (-1,) + t.partial_dims
    return tuple(q ** (dims[i] + 1) * (q ** t.composition[i] - 1) for i in range(t.k))


def variant_beta_values(q: int, t: SimplexType):
    """The variant q^{d+1-d_{i+1}} (q^{e_i} - 1)."""
    dims = t.partial_dims
    return tuple(q ** (t.d + 1 - dims[i + 1]) * (q ** t.composition[i] - 1) for i in range(t.k))


def beta_values_by_count(q: int, t: SimplexType):
    """Count nonzero a in F_q^{d+1} by level; levels 0..k-1 are returned."""
    counts = [0] * (t.k + 1)
    for a in product(range(q), repeat=t.d + 1):
        if any(a):
            counts[level_of(a, t)] += 1
    return tuple(counts[:t.k])


def type_gcd(t: SimplexType) -> int:
    return gcd_list(t.composition)


def m_and_vanishing(chi: CharacterIndex, t: SimplexType):
    """(m, vanishes): m = gcd(d+1, e_i); vanishes iff N/(q^m - 1) does not divide j."""
    if t.k < 1:
        raise ValidationError("vertices are handled separately (k = 0)", "vertex-type")
    if t.d != chi.d:
        raise ValidationError("type and character have different d", "d-mismatch")
    m = gcd(chi.d + 1, type_gcd(t))
    return m, chi.j % (chi.N // (chi.q ** m - 1)) != 0


def ak_cover(q: int, t: SimplexType):
    """The Kummer cover of the A_k torus attached to a simplex of type t.

    The unit is prod y_i^{beta_i}; with x_j = y_j / y_{j+1} (y_k = 1) one has
    y_i = x_i x_{i+1} ... x_{k-1}, so x_j carries the prefix sum beta_0 + ... + beta_j.
    """
    from .derham import make_cover

    beta = beta_values(q, t)
    x_beta = [sum(beta[:j + 1]) for j in range(t.k)]
    return make_cover(t.k, q ** (t.d + 1) - 1, x_beta, prime_power(q)[0])


# truncated lattices ------------------------------------------------------------

class _Ring:
    """F_q[pi]/(pi^S); elements are tuples of S field encodings, low degree first."""

    def __init__(self, F, S):
        self.F, self.S = F, S
        self.zero = (0,) * S
        self.one = (1,) + (0,) * (S - 1)

    def add(self, x, y):
        return tuple(self.F.add(a, b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(self.F.sub(a, b) for a, b in zip(x, y))

    def mul(self, x, y):
        F, S = self.F, self.S
        out = [0] * S
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(S - i):
                if y[j]:
                    out[i + j] = F.add(out[i + j], F.mul(a, y[j]))
        return tuple(out)

    def const(self, c):
        return (c,) + (0,) * (self.S - 1)

    def val(self, x):
        return next((i for i, a in enumerate(x) if a), self.S)

    def shift_down(self, x, v):
        return tuple(x[v:]) + (0,) * v

    def shift_up(self, x, v):
        return (0,) * v + tuple(x[:self.S - v])

    def inv_unit(self, u):
        # Newton-free: solve u * w = 1 coefficient by coefficient
        F, S = self.F, self.S
        inv0 = F.inv(u[0])
        w = [0] * S
        w[0] = inv0
        for k in range(1, S):
            s = 0
            for i in range(1, k + 1):
                if u[i] and w[k - i]:
                    s = F.add(s, F.mul(u[i], w[k - i]))
            w[k] = F.neg(F.mul(inv0, s))
        return tuple(w)


def _hnf(ring, cols, n):
    """Column HNF of the module spanned by cols plus pi^S O^n.  Returns (a, columns)."""
    S = ring.S
    work = [list(c) for c in cols if any(any(x) for x in c)]
    pivots = [None] * n
    a = [S] * n
    for r in range(n - 1, -1, -1):
        best = None
        for idx, c in enumerate(work):
            v = ring.val(c[r])
            if v < S and (best is None or v < best[0]):
                best = (v, idx)
        if best is None:
            pivots[r] = [ring.zero] * n
            continue
        v, idx = best
        p = work.pop(idx)
        unit = ring.shift_down(p[r], v)
        uinv = ring.inv_unit(unit)
        p = [ring.mul(uinv, x) for x in p]
        for c in work:
            if ring.val(c[r]) < S:
                f = ring.shift_down(c[r], v)
                for i in range(n):
                    c[i] = ring.sub(c[i], ring.mul(f, p[i]))
        work = [c for c in work if any(any(x) for x in c)]
        pivots[r] = p
        a[r] = v
    # reduce entries above the diagonal: row i modulo pi^{a_i}
    for j in range(n):
        col = pivots[j]
        for i in range(j - 1, -1, -1):
            ai = a[i]
            if ai >= S:
                continue
            hi = ring.shift_down(col[i], ai)
            if any(hi):
                piv = pivots[i]
                for t in range(n):
                    col[t] = ring.sub(col[t], ring.mul(hi, piv[t]))
    return tuple(a), tuple(tuple(c) for c in pivots)


def _member(ring, key, vec):
    a, cols = key
    v = list(vec)
    n = len(a)
    for r in range(n - 1, -1, -1):
        val = ring.val(v[r])
        if val >= ring.S:
            continue
        if val < a[r]:
            return False
        f = ring.shift_down(v[r], a[r])
        col = cols[r]
        for i in range(n):
            v[i] = ring.sub(v[i], ring.mul(f, col[i]))
    return True


def _distance(ring, key, n):
    for k in range(ring.S + 1):
        pk = ring.shift_up(ring.one, k) if k < ring.S else ring.zero
        if all(_member(ring, key, [pk if i == r else ring.zero for i in range(n)]) for r in range(n)):
            return k
    return ring.S


def vertex_label(key) -> str:
    a, cols = key
    return json.dumps({"a": list(a), "cols": [[list(x) for x in c] for c in cols]},
                      separators=(",", ":"), sort_keys=True)


class TruncatedBuilding:
    """Vertices within distance R of the standard vertex, with labelled edges."""

    def __init__(self, q: int, d: int, R: int, budget=None):
        if d < 1:
            raise ValidationError("d must be >= 1", "d-range")
        if R < 0:
            raise ValidationError("R must be >= 0", "R-range")
        self.F = _check_q(q)
        self.q, self.d, self.R = q, d, R
        self.n = d + 1
        self.ring = _Ring(self.F, R + 1)
        self.budget = default_budget() if budget is None else budget
        self.vertices = []
        self.index = {}
        self.dist = []
        self.edges = {}  # (u, v) -> dim of v's image in u / pi u
        self._build()

    def _neighbours(self, key):
        ring, n = self.ring, self.n
        _, cols = key
        base = [list(c) for c in cols]
        pi_cols = [[ring.shift_up(x, 1) for x in c] for c in base]
        floor = [[ring.shift_up(ring.one, ring.S - 1) if i == r else ring.zero for i in range(n)]
                 for r in range(n)]
        for V in self._subs:
            gens = []
            for v in V:
                col = [ring.zero] * n
                for coeff, b in zip(v, base):
                    if coeff:
                        c = ring.const(coeff)
                        col = [ring.add(x, ring.mul(c, y)) for x, y in zip(col, b)]
                gens.append(col)
            a, mcols = _hnf(ring, gens + pi_cols, n)
            if all(ring.val(x) >= 1 for c in mcols for x in c):
                divided = [[ring.shift_down(x, 1) for x in c] for c in mcols]
                a, mcols = _hnf(ring, divided + floor, n)
            yield len(V), (a, mcols)

    def _build(self):
        n = self.n
        self._subs = proper_subspaces(self.q, n)
        ring = self.ring
        identity = [[ring.one if i == r else ring.zero for i in range(n)] for r in range(n)]
        start = _hnf(ring, identity, n)
        self._add(start, 0)
        head = 0
        while head < len(self.vertices):
            key = self.vertices[head]
            u = head
            head += 1
            for k, nb in self._neighbours(key):
                if nb not in self.index:
                    dist = _distance(ring, nb, n)
                    if dist > self.R:
                        continue
                    self._add(nb, dist)
                self.edges[(u, self.index[nb])] = k

    def _add(self, key, dist):
        if len(self.vertices) >= self.budget:
            raise BudgetExceeded(len(self.vertices) + 1, self.budget)
        self.index[key] = len(self.vertices)
        self.vertices.append(key)
        self.dist.append(dist)

    def adjacent(self, u, v):
        return (u, v) in self.edges

    def simplices(self, r):
        """All r-simplices as sorted vertex tuples (cliques of size r+1)."""
        nbrs = {}
        for (u, v) in self.edges:
            nbrs.setdefault(u, set()).add(v)
        out = []

        def extend(clique, cands):
            if len(clique) == r + 1:
                out.append(tuple(clique))
                return
            for v in sorted(cands):
                if v > clique[-1]:
                    extend(clique + [v], cands & nbrs.get(v, set()))

        for u in range(len(self.vertices)):
            extend([u], nbrs.get(u, set()))
        return out

    def simplex_type(self, simplex) -> SimplexType:
        s0 = simplex[0]
        labels = sorted(self.edges[(s0, v)] for v in simplex[1:])
        bounds = [0] + labels + [self.n]
        return SimplexType(tuple(b - a for a, b in zip(bounds, bounds[1:])))

    def adjacency(self):
        out = {}
        for i, key in enumerate(self.vertices):
            out[vertex_label(key)] = sorted(vertex_label(self.vertices[v])
                                            for (u, v) in self.edges if u == i)
        return out


def bfs_vertices(q: int, d: int, R: int, budget=None):
    b = TruncatedBuilding(q, d, R, budget)
    return len(b.vertices), b


def tree_vertex_count(q: int, R: int) -> int:
    return 1 + (q + 1) * sum(q ** i for i in range(R))


@dataclass
class CechE1Report:
    q: int
    d: int
    R: int
    theta: int
    primitive: bool
    e1: dict
    total_hd: object
    simplex_counts: dict
    type_counts: dict

    def abutment(self):
        """Totals along the diagonals s - r = const."""
        out = {}
        for (r, s), v in self.e1.items():
            deg = s - r
            if out.get(deg) == NOT_COMPUTED:
                continue
            out[deg] = NOT_COMPUTED if v == NOT_COMPUTED else out.get(deg, 0) + v
        return dict(sorted(out.items()))

    def to_json(self):
        return {
            "q": self.q, "d": self.d, "R": self.R, "theta": self.theta,
            "primitive": self.primitive,
            "e1": [{"r": r, "s": s, "dim": v} for (r, s), v in sorted(self.e1.items())],
            "total_hd": self.total_hd,
            "simplex_counts": {str(r): c for r, c in sorted(self.simplex_counts.items())},
            "type_counts": {f"{r}:{t}": c for (r, t), c in sorted(
                self.type_counts.items(), key=lambda kv: (kv[0][0], kv[0][1].composition))},
        }


def cech_e1(q: int, d: int, R: int, chi: CharacterIndex, budget=None) -> CechE1Report:
    if (chi.q, chi.d) != (q, d):
        raise ValidationError("character does not match (q, d)", "character-mismatch")
    b = TruncatedBuilding(q, d, R, budget)
    prim = is_primitive(chi)
    cusp = cuspidal_dimension(q, d)
    e1 = {}
    counts, types = {}, {}
    nverts = len(b.vertices)
    counts[0] = nverts
    for s in range(2 * d + 1):
        if prim:
            e1[(0, s)] = nverts * cusp if s == d else 0
        else:
            e1[(0, s)] = NOT_COMPUTED if nverts else 0
    for r in range(1, d + 1):
        simp = b.simplices(r)
        counts[r] = len(simp)
        all_vanish = True
        for sigma in simp:
            t = b.simplex_type(sigma)
            types[(r, t)] = types.get((r, t), 0) + 1
            if not m_and_vanishing(chi, t)[1]:
                all_vanish = False
        for s in range(2 * d + 1):
            e1[(r, s)] = 0 if all_vanish else NOT_COMPUTED
    diag = [v for (r, s), v in e1.items() if s - r == d]
    total = NOT_COMPUTED if NOT_COMPUTED in diag else sum(diag)
    return CechE1Report(q, d, R, chi.j, prim, e1, total, counts, types)


def jl_multiplicity(d: int) -> int:
    """Index of the subgroup of elements whose reduced-norm valuation is divisible by d+1."""
    if d < 1:
        raise ValidationError("d must be >= 1", "d-range")
    return d + 1
