from collections import Counter
from itertools import product
from math import gcd

import pytest

from drtower.arith import CharacterIndex, cuspidal_dimension, gcd_list, is_primitive
from drtower.building import (NOT_COMPUTED, SimplexType, TruncatedBuilding, ak_cover, beta_values,
                              beta_values_by_count, bfs_vertices, cech_e1, compositions,
                              flag_count, jl_multiplicity, level_of, m_and_vanishing,
                              variant_beta_values, star_census, subspaces, tree_vertex_count)
from drtower.derham import isotypic_dimension
from drtower.errors import BudgetExceeded, ValidationError


def T(*e):
    return SimplexType(e)


def test_simplex_type():
    t = T(2, 1, 3)
    assert t.d == 5 and t.k == 2 and t.partial_dims == (1, 2, 5)
    assert t.rotate() == T(1, 3, 2)
    with pytest.raises(ValidationError):
        T(0, 2)
    with pytest.raises(ValidationError):
        SimplexType(())


def test_compositions():
    assert compositions(3) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert len(compositions(7)) == 64


def test_subspace_counts():
    assert len(subspaces(2, 2, 1)) == 3
    assert len(subspaces(3, 4, 2)) == 130
    assert len(subspaces(4, 3, 1)) == 21


def test_star_census_examples():
    assert star_census(2, 1) == {T(1, 1): 3, T(2): 1}
    c = star_census(2, 2)
    assert c[T(1, 2)] == 7 and c[T(2, 1)] == 7 and c[T(1, 1, 1)] == 21 and c[T(3)] == 1
    assert list(c) == sorted(c, key=lambda t: t.composition)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_star_census_matches_gaussian_products(q, d):
    c = star_census(q, d)
    assert set(c) == {SimplexType(e) for e in compositions(d + 1)}
    for t, count in c.items():
        assert count == flag_count(q, t)


def test_star_census_budget():
    with pytest.raises(BudgetExceeded):
        star_census(3, 3, budget=10)


def test_level_of_examples():
    assert level_of((1, 0, 0), T(1, 1, 1)) == 0
    assert level_of((1, 0, 0, 0), T(4)) == 0
    assert level_of((0, 1, 1), T(1, 1, 1)) == 2
    assert level_of((1, 1, 0), T(2, 1)) == 0
    with pytest.raises(ValidationError):
        level_of((0, 0, 0), T(1, 2))
    with pytest.raises(ValidationError):
        level_of((1, 0), T(1, 2))


def test_variant_beta_examples():
    assert variant_beta_values(2, T(1, 1)) == (2,)
    assert variant_beta_values(2, T(1, 1, 1)) == (4, 2)
    assert variant_beta_values(3, T(2, 1)) == (24,)


def test_beta_values_examples():
    assert beta_values(2, T(1, 1)) == (1,)
    assert beta_values(2, T(1, 1, 1)) == (1, 2)
    assert beta_values(3, T(2, 1)) == (8,)
    assert beta_values(5, T(3)) == ()


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_beta_closed_form_matches_count(q, n):
    for e in compositions(n):
        t = SimplexType(e)
        assert beta_values(q, t) == beta_values_by_count(q, t)


def test_variant_form_disagrees_with_count():
    # the variant exponent is not the level count for any type
    for q in (2, 3):
        for n in (2, 3, 4):
            for e in compositions(n):
                t = SimplexType(e)
                if t.k:
                    assert variant_beta_values(q, t) != beta_values_by_count(q, t)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_beta_gcd_identity_all_variants(q):
    for n in range(2, 8):
        N = q ** n - 1
        for e in compositions(n):
            t = SimplexType(e)
            if not t.k:
                continue
            m = gcd(n, *e)
            assert gcd_list([N, *beta_values(q, t)]) == q ** m - 1
            assert gcd_list([N, *variant_beta_values(q, t)]) == q ** m - 1


def test_m_and_vanishing_examples():
    assert m_and_vanishing(CharacterIndex(2, 1, 1), T(1, 1)) == (1, True)
    assert m_and_vanishing(CharacterIndex(2, 1, 0), T(1, 1)) == (1, False)
    assert m_and_vanishing(CharacterIndex(2, 2, 1), T(1, 1, 1)) == (1, True)
    assert m_and_vanishing(CharacterIndex(2, 3, 5), T(2, 2)) == (2, False)
    with pytest.raises(ValidationError):
        m_and_vanishing(CharacterIndex(2, 1, 1), T(2))
    with pytest.raises(ValidationError):
        m_and_vanishing(CharacterIndex(2, 2, 1), T(1, 1))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_component_count_through_kummer_cover(q, n):
    """The A_k cover has q^m - 1 components, and its j-isotypic part survives iff not vanishing."""
    N = q ** n - 1
    for e in compositions(n):
        t = SimplexType(e)
        if not t.k:
            continue
        cover = ak_cover(q, t)
        m, _ = m_and_vanishing(CharacterIndex(q, n - 1, 0), t)
        assert cover.pi0 == q ** m - 1
        for j in range(0, N, max(1, N // 40)):
            vanishes = m_and_vanishing(CharacterIndex(q, n - 1, j), t)[1]
            assert (isotypic_dimension(cover, t.k, j) == 0) == vanishes


def test_bfs_examples():
    assert bfs_vertices(2, 1, 1)[0] == 4
    assert bfs_vertices(3, 1, 2)[0] == 17
    assert bfs_vertices(5, 3, 0)[0] == 1


@pytest.mark.parametrize("q,R", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (4, 2), (5, 1)])
def test_tree_counts(q, R):
    n, b = bfs_vertices(q, 1, R)
    assert n == tree_vertex_count(q, R)
    # a tree: |E| = |V| - 1, edges stored in both directions
    assert len(b.edges) == 2 * (n - 1)


def _lattice_count_bruteforce(q, d, R):
    """Submodules of (F_q[pi]/pi^R)^{d+1} not inside pi(...), via pi-stable F_q-subspaces (q prime)."""
    n = d + 1
    D = n * R

    def pi(v):
        out = [0] * D
        for i in range(n):
            for k in range(R - 1):
                out[i * R + k + 1] = v[i * R + k]
        return tuple(out)

    def close(S, v):
        S = set(S)
        todo = [v]
        while todo:
            w = todo.pop()
            if w in S:
                continue
            new = {tuple((a + c * b) % q for a, b in zip(s, w)) for s in S for c in range(q)}
            S |= new
            todo.extend(pi(x) for x in new)
        return frozenset(S)

    zero = frozenset([(0,) * D])
    seen = {zero}
    stack = [zero]
    vecs = list(product(range(q), repeat=D))
    while stack:
        S = stack.pop()
        for v in vecs:
            if v not in S:
                U = close(S, v)
                if U not in seen:
                    seen.add(U)
                    stack.append(U)
    return sum(1 for S in seen if any(v[i * R] for v in S for i in range(n)))


@pytest.mark.parametrize("q,d,R", [(2, 1, 2), (3, 1, 2), (2, 2, 1), (3, 2, 1), (2, 3, 1)])
def test_vertex_count_against_module_enumeration(q, d, R):
    assert bfs_vertices(q, d, R)[0] == _lattice_count_bruteforce(q, d, R)


def test_vertex_count_d2_r2():
    # 113 was obtained from the same submodule enumeration (about 8 s there)
    assert bfs_vertices(2, 2, 2)[0] == 113


def test_star_of_standard_vertex_in_building():
    for q, d in [(2, 1), (2, 2), (3, 2), (2, 3)]:
        b = TruncatedBuilding(q, d, 1)
        census = star_census(q, d)
        for r in range(1, d + 1):
            got = Counter(b.simplex_type(s) for s in b.simplices(r) if s[0] == 0)
            want = {t: c for t, c in census.items() if t.k == r}
            assert got == want


def test_simplex_types_rotate_consistently():
    b = TruncatedBuilding(2, 2, 2)
    for s in b.simplices(2)[:200]:
        t0 = b.simplex_type(s)
        # reading the same simplex from another base vertex rotates the composition
        for shift in range(1, 3):
            other = s[shift:] + s[:shift]
            t = b.simplex_type(other)
            assert t in {t0.rotate(k) for k in range(3)}
            assert gcd(*t.composition) == gcd(*t0.composition)


def test_bfs_budget():
    with pytest.raises(BudgetExceeded):
        bfs_vertices(2, 2, 2, budget=20)


def test_adjacency_dump_labels_unique():
    b = TruncatedBuilding(2, 1, 2)
    adj = b.adjacency()
    assert len(adj) == 10
    assert sum(len(v) for v in adj.values()) == 18


def test_cech_examples():
    r = cech_e1(2, 1, 1, CharacterIndex(2, 1, 1))
    assert r.primitive and r.total_hd == 4
    assert r.e1[(0, 1)] == 4
    assert all(r.e1[(1, s)] == 0 for s in range(3))
    assert r.to_json()["total_hd"] == 4
    r = cech_e1(2, 2, 0, CharacterIndex(2, 2, 1))
    assert r.total_hd == 3
    r = cech_e1(2, 1, 1, CharacterIndex(2, 1, 0))
    assert not r.primitive
    assert all(r.e1[(1, s)] == NOT_COMPUTED for s in range(3))
    assert r.total_hd == NOT_COMPUTED


def test_cech_shape_larger():
    for q, d, R in [(3, 1, 2), (2, 2, 1), (2, 3, 1), (3, 2, 1)]:
        N = q ** (d + 1) - 1
        for j in range(N):
            chi = CharacterIndex(q, d, j)
            if not is_primitive(chi):
                continue
            r = cech_e1(q, d, R, chi)
            nv = r.simplex_counts[0]
            for (rr, s), v in r.e1.items():
                assert v == (nv * cuspidal_dimension(q, d) if (rr, s) == (0, d) else 0)
            assert r.total_hd == nv * cuspidal_dimension(q, d)
            assert r.abutment()[d] == r.total_hd
            break


def test_cech_partial_vanishing_for_non_primitive():
    # j = 5 for (q, d) = (2, 3): types with m = 1 still vanish, m = 2 types do not
    r = cech_e1(2, 3, 1, CharacterIndex(2, 3, 5))
    assert not r.primitive
    assert r.e1[(0, 3)] == NOT_COMPUTED
    assert r.e1[(1, 0)] == NOT_COMPUTED  # type (2,2) edges exist
    assert r.e1[(2, 0)] == 0 and r.e1[(3, 0)] == 0


def test_cech_mismatch():
    with pytest.raises(ValidationError):
        cech_e1(2, 1, 1, CharacterIndex(2, 2, 1))


def test_jl_multiplicity():
    assert jl_multiplicity(1) == 2
    assert jl_multiplicity(4) == 5
    with pytest.raises(ValidationError):
        jl_multiplicity(0)
