"""Brute-force cohomology of the cover complex on a finite exponent window.

Each graded piece (isotypic index i, exponent nu) of the complex is the
exterior algebra on dlog(x_1), ..., dlog(x_d) with differential "wedge by c",
where c = n*nu + i*beta (scaling by n does not change ranks).  Its degree-q
cohomology is C(d, q) - rank(d_q) - rank(d_{q-1}), and the ranks are computed
exactly from integer minors.  Nothing in here knows where the cohomology lives.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

import numpy as np

from .errors import ValidationError

_INT64_SAFE = 1 << 62


def exact_rank(rows) -> int:
    """Rank of a rational matrix by Gaussian elimination over Fraction."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _perm_sign(p):
    sign = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _batched_det(m):
    """Exact determinants of a stack of k x k integer matrices (Leibniz expansion)."""
    k = m.shape[-1]
    total = np.zeros(m.shape[0], dtype=m.dtype)
    for p in permutations(range(k)):
        term = np.full(m.shape[0], _perm_sign(p), dtype=m.dtype)
        for row, col in enumerate(p):
            term = term * m[:, row, col]
        total = total + term
    return total


def batched_rank(mats) -> np.ndarray:
    """Exact ranks of a stack of small integer matrices, shape (B, R, C)."""
    mats = np.asarray(mats)
    B, R, C = mats.shape
    ranks = np.zeros(B, dtype=np.int64)
    if B == 0 or R == 0 or C == 0:
        return ranks
    bound = int(np.abs(mats).max(initial=0))
    k_max = min(R, C)
    if factorial(k_max) * max(bound, 1) ** k_max >= _INT64_SAFE:
        mats = mats.astype(object)
    else:
        mats = mats.astype(np.int64)
    undecided = np.ones(B, dtype=bool)
    for k in range(k_max, 0, -1):
        hit = np.zeros(B, dtype=bool)
        for rs in combinations(range(R), k):
            for cs in combinations(range(C), k):
                sub = mats[:, list(rs)][:, :, list(cs)]
                hit |= _batched_det(sub) != 0
        newly = undecided & hit
        ranks[newly] = k
        undecided &= ~hit
        if not undecided.any():
            break
    return ranks


def wedge_matrix_index(d, q):
    """Row/column subsets and the (row, col, axis, sign) pattern of wedge-by-c on degree q."""
    cols = list(combinations(range(d), q))
    rows = list(combinations(range(d), q + 1))
    row_pos = {s: k for k, s in enumerate(rows)}
    pattern = []
    for ci, I in enumerate(cols):
        for r in range(d):
            if r in I:
                continue
            J = tuple(sorted(I + (r,)))
            sign = -1 if sum(1 for i in I if i < r) % 2 else 1
            pattern.append((row_pos[J], ci, r, sign))
    return len(rows), len(cols), pattern


def wedge_matrices(weights, d, q):
    """Stack of matrices of c ^ - : Lambda^q -> Lambda^{q+1}, one per row of weights."""
    weights = np.asarray(weights, dtype=np.int64).reshape(-1, d)
    nr, nc, pattern = wedge_matrix_index(d, q)
    out = np.zeros((weights.shape[0], nr, nc), dtype=np.int64)
    for ri, ci, r, sign in pattern:
        out[:, ri, ci] = sign * weights[:, r]
    return out


def piece_cohomology(weights, d, q) -> np.ndarray:
    """dim H^q of each graded piece given its weight vector."""
    weights = np.asarray(weights, dtype=np.int64).reshape(-1, d)
    if q < 0 or q > d:
        return np.zeros(weights.shape[0], dtype=np.int64)
    out = np.full(weights.shape[0], comb(d, q), dtype=np.int64)
    if q < d:
        out -= batched_rank(wedge_matrices(weights, d, q))
    if q > 0:
        out -= batched_rank(wedge_matrices(weights, d, q - 1))
    return out


def sufficient_window(cover):
    """[-|beta_r|, |beta_r|] per axis.

    A piece can only have cohomology if its weight vector vanishes, and then
    |nu_r| = i*|beta_r|/n < |beta_r|, so this box strictly contains all of them.
    """
    return [(-abs(b), abs(b)) for b in cover.beta]


def _weights(cover, window, iso):
    d = cover.d
    if len(window) != d:
        raise ValidationError("window must give one (lo, hi) pair per axis", "window")
    for lo, hi in window:
        if lo > hi:
            raise ValidationError("window has lo > hi", "window")
    isos = range(cover.n) if iso is None else [iso]
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in window]
    if d == 0:
        nus = np.zeros((1, 0), dtype=np.int64)
    else:
        grids = np.meshgrid(*axes, indexing="ij")
        nus = np.stack([g.ravel() for g in grids], axis=1)
    beta = np.asarray(cover.beta, dtype=np.int64)
    blocks = [cover.n * nus + i * beta for i in isos]
    return np.concatenate(blocks, axis=0) if blocks else np.zeros((0, d), dtype=np.int64)


def koszul_oracle(cover, q: int, window=None, iso=None) -> int:
    """Total dim H^q over all pieces whose exponent lies in the window."""
    if iso is not None and not 0 <= iso < cover.n:
        raise ValidationError(f"isotypic index {iso} out of range", "iso-range")
    window = sufficient_window(cover) if window is None else [tuple(w) for w in window]
    weights = _weights(cover, window, iso)
    if cover.d == 0:
        return len(weights) if q == 0 else 0
    # only pieces with distinct weight vectors need a rank computation
    uniq, counts = np.unique(weights, axis=0, return_counts=True)
    return int((piece_cohomology(uniq, cover.d, q) * counts).sum())


def koszul_profile(cover, window=None, iso=None):
    """[dim H^0, ..., dim H^d] from the oracle."""
    window = sufficient_window(cover) if window is None else [tuple(w) for w in window]
    weights = _weights(cover, window, iso)
    if cover.d == 0:
        return [len(weights)]
    d = cover.d
    uniq, counts = np.unique(weights, axis=0, return_counts=True)
    ranks = [batched_rank(wedge_matrices(uniq, d, q)) for q in range(d)]
    zero = np.zeros(len(uniq), dtype=np.int64)
    out = []
    for q in range(d + 1):
        h = comb(d, q) - (ranks[q] if q < d else zero) - (ranks[q - 1] if q > 0 else zero)
        out.append(int((h * counts).sum()))
    return out
