"""Random objects shared by the test modules."""
import random
from fractions import Fraction
from itertools import combinations

from drtower.derham import IsoForm, canonical_form, make_cover


def random_fraction(rng, span=9):
    num = rng.randint(-span, span)
    return Fraction(num, rng.randint(1, 4)) if num else Fraction(1)


def random_cover(rng, n=None, d=None, bound=4):
    d = rng.randint(1, 3) if d is None else d
    n = rng.randint(1, 8) if n is None else n
    beta = tuple(rng.randint(-bound, bound) for _ in range(d))
    return make_cover(d, n, beta)


def random_form(rng, cover, degree, iso, terms=4, spread=3):
    subsets = list(combinations(range(1, cover.d + 1), degree))
    out = []
    for _ in range(rng.randint(0, terms)):
        nu = tuple(rng.randint(-spread, spread) for _ in range(cover.d))
        out.append((rng.choice(subsets), nu, random_fraction(rng)))
    return IsoForm.from_terms(cover, degree, iso, out)


def random_off_kernel_form(rng, cover, degree, iso, terms=4, spread=3):
    """Terms only at exponents whose weight vector n*nu + iso*beta is nonzero."""
    w = random_form(rng, cover, degree, iso, terms, spread)
    kept = [(I, nu, c) for I, nu, c in w.terms() if any(cover.weight(iso, nu))]
    return IsoForm.from_terms(cover, degree, iso, kept)


def random_coords(rng, cover, degree, iso):
    nt = cover.n_tilde
    coords = {}
    if iso % nt:
        return coords
    a = iso // nt
    for I in combinations(range(1, cover.d + 1), degree):
        if rng.random() < 0.7:
            coords[(a, I)] = random_fraction(rng)
    return coords


def random_roundtrip_case(rng, n, d):
    """(cover, degree, iso, coords, eta, w) with w = canonical(coords) + d(eta)."""
    from drtower.derham import differential

    cover = random_cover(rng, n=n, d=d)
    degree = rng.randint(0, d)
    nt = cover.n_tilde
    if rng.random() < 0.6:
        iso = nt * rng.randrange(cover.pi0)
    else:
        iso = rng.randrange(n)
    coords = random_coords(rng, cover, degree, iso)
    w = canonical_form(cover, degree, iso, coords)
    eta = None
    if degree > 0:
        eta = random_off_kernel_form(rng, cover, degree - 1, iso)
        w = w + differential(eta)
    return cover, degree, iso, coords, eta, w


def seeded(seed):
    return random.Random(seed)
