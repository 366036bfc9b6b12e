from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from drtower.arith import (CharacterIndex, cuspidal_dimension, format_rational, gaussian_binomial,
                           gaussian_multinomial, gcd_list, green_orbit, is_primitive,
                           parse_rational, prime_power)
from drtower.errors import ValidationError
from drtower.fields import field_of_order


def test_gcd_list_examples():
    assert gcd_list([6, 2, 4]) == 2
    assert gcd_list([0, 0]) == 0
    assert gcd_list([7, 3]) == 1
    assert gcd_list([-6, 4]) == 2


def test_gcd_list_empty():
    with pytest.raises(ValidationError) as e:
        gcd_list([])
    assert e.value.code == "empty"


def test_rational_round_trip():
    assert format_rational(Fraction(6, -4)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational(" -7 ") == -7
    with pytest.raises(ValidationError):
        parse_rational("1/0")
    with pytest.raises(ValidationError):
        parse_rational("x")


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_rational_format_parse(a, b):
    x = Fraction(a, b)
    assert parse_rational(format_rational(x)) == x


def test_gaussian_binomial_examples():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(5, 0, 7) == 1
    assert gaussian_binomial(4, 2, 3) == 130
    with pytest.raises(ValidationError):
        gaussian_binomial(2, 3, 2)


def _brute_subspace_count(n, k, q):
    """Count k-subspaces of F_q^n as (ordered independent k-tuples) / |GL_k|."""
    F = field_of_order(q)

    def span(vs):
        out = {(0,) * n}
        for v in vs:
            out = {tuple(F.add(a, F.mul(c, b)) for a, b in zip(w, v)) for w in out for c in range(q)}
        return out

    seen = set()
    for vs in product(product(range(q), repeat=n), repeat=k):
        S = frozenset(span(vs))
        if len(S) == q ** k:
            seen.add(S)
    return len(seen)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gaussian_binomial_matches_enumeration(q, n):
    for k in range(n + 1):
        if (q ** n) ** k > 20_000:
            continue  # too many tuples to enumerate; duality covers the mirror case
        assert gaussian_binomial(n, k, q) == _brute_subspace_count(n, k, q)


def test_gaussian_binomial_duality():
    for q in (2, 3, 4):
        for n in range(6):
            for k in range(n + 1):
                assert gaussian_binomial(n, k, q) == gaussian_binomial(n, n - k, q)


def test_gaussian_multinomial():
    # flags of type (1,1,1) in F_2^3
    assert gaussian_multinomial([1, 1, 1], 2) == 21


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    assert prime_power(6) is None
    assert prime_power(1) is None


def test_character_validation():
    with pytest.raises(ValidationError) as e:
        CharacterIndex(2, 1, 3)
    assert e.value.code == "j-range"
    with pytest.raises(ValidationError) as e:
        CharacterIndex(6, 1, 0)
    assert e.value.code == "q-not-prime-power"
    assert CharacterIndex(3, 2, 0).N == 26


def test_primitivity_examples():
    assert is_primitive(CharacterIndex(2, 1, 1))
    assert not is_primitive(CharacterIndex(2, 1, 0))
    # N = 7 for (q, d) = (2, 2), so j = 7 is not a valid index; its residue 0 is not primitive
    with pytest.raises(ValidationError):
        CharacterIndex(2, 2, 7)
    assert not is_primitive(CharacterIndex(2, 2, 0))
    assert all(is_primitive(CharacterIndex(2, 2, j)) for j in range(1, 7))
    assert not is_primitive(CharacterIndex(2, 3, 5))  # e=2 gives 15/3 = 5


def test_green_orbit_examples():
    assert green_orbit(CharacterIndex(2, 1, 1)) == {1, 2}
    assert green_orbit(CharacterIndex(5, 2, 0)) == {0}
    assert green_orbit(CharacterIndex(3, 1, 1)) == {1, 3}


def _primitive_by_norm(q, d, j):
    """theta = j factors through the norm to F_{q^e} iff j is a multiple of N/(q^e - 1)."""
    N = q ** (d + 1) - 1
    for e in range(1, d + 1):
        if (d + 1) % e == 0:
            # image of the norm map in Z/N is the subgroup generated by N/(q^e-1)
            if any((k * (N // (q ** e - 1))) % N == j for k in range(q ** e - 1)):
                return False
    return True


@pytest.mark.parametrize("q", [2, 3, 4, 5])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_primitive_is_orbit_property(q, d):
    N = q ** (d + 1) - 1
    if N > 4000:
        pytest.skip("large N")
    for j in range(N):
        chi = CharacterIndex(q, d, j)
        p = is_primitive(chi)
        assert p == _primitive_by_norm(q, d, j)
        assert all(is_primitive(CharacterIndex(q, d, x)) == p for x in green_orbit(chi))


def test_primitive_orbit_property_large_sample():
    import random
    rng = random.Random(5)
    for q, d in [(4, 4), (5, 3), (5, 4)]:
        N = q ** (d + 1) - 1
        for _ in range(200):
            j = rng.randrange(N)
            chi = CharacterIndex(q, d, j)
            p = is_primitive(chi)
            assert all(is_primitive(CharacterIndex(q, d, x)) == p for x in green_orbit(chi))


def test_cuspidal_dimension():
    assert cuspidal_dimension(2, 1) == 1
    assert cuspidal_dimension(3, 1) == 2
    assert cuspidal_dimension(2, 2) == 3
    big = cuspidal_dimension(16, 8)
    expected = 1
    for i in range(1, 9):
        expected *= 16 ** i - 1
    assert big == expected and big > 2 ** 64
