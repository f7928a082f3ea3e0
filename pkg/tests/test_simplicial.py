from __future__ import annotations

import itertools
import math

import pytest

from derangb.exactpoly import IntPoly, reverse
from derangb.families import b_plus, derangement_a, eulerian_a, f_plus
from derangb.signedperm import desb_set, enumerate_bn
from derangb.simplicial import (
    SimplicialComplex,
    Subdivision,
    barycentric_subdivision,
    chain_gaps,
    decomposition_formula_check,
    decomposition_sides,
    edgewise_h,
    flag_vectors,
    h_formula_check,
    h_formula_sides,
    h_from_flag_h,
    h_polynomial,
    interval_chain_subdivision,
    join,
    join_h_check,
    k_n,
    kn_facet_count,
    lemma63_expected,
    link,
    local_h,
    local_h_at,
    pn_poset,
    relative_local_h,
    sd_face_to_interval_map,
    simplex_n,
)

P = IntPoly
TRIANGLE_BOUNDARY = SimplicialComplex.from_facets([[1, 2], [2, 3], [1, 3]])


def test_h_examples():
    assert h_polynomial(SimplicialComplex.simplex([1])) == P([1])
    assert h_polynomial(TRIANGLE_BOUNDARY) == P([1, 1, 1])
    assert h_polynomial(SimplicialComplex([])) == P([1])
    assert h_polynomial(k_n(2).complex) == P([1, 3])


def test_fvector_includes_empty_face():
    assert TRIANGLE_BOUNDARY.fvector() == [1, 3, 3]


def test_not_closed_rejected():
    with pytest.raises(ValueError):
        SimplicialComplex([[1, 2]])


def test_join_examples():
    pt_a, pt_b = SimplicialComplex.simplex(["a"]), SimplicialComplex.simplex(["b"])
    edge = join(pt_a, pt_b)
    assert edge == SimplicialComplex.simplex(["a", "b"])
    assert h_polynomial(edge) == P([1])
    cone = join(TRIANGLE_BOUNDARY, pt_a)
    assert h_polynomial(cone) == P([1, 1, 1])
    assert join_h_check(TRIANGLE_BOUNDARY, pt_a)


def _small_complexes():
    """Every complex generated by up to three facets on four vertices."""
    verts = [1, 2, 3, 4]
    faces = [frozenset(c) for r in range(1, 5) for c in itertools.combinations(verts, r)]
    seen = set()
    for k in (1, 2, 3):
        for facets in itertools.combinations(faces, k):
            c = SimplicialComplex.from_facets(facets)
            if c not in seen:
                seen.add(c)
                yield c


def test_join_h_multiplicative_exhaustive():
    complexes = list(_small_complexes())
    others = [c.relabel(lambda v: -v) for c in complexes[::7]]
    for c1 in complexes[::3]:
        for c2 in others:
            assert join_h_check(c1, c2)


def test_barycentric_examples():
    seg = barycentric_subdivision(simplex_n(2))
    assert len(seg.complex.vertices) == 3
    assert len(seg.complex.facets) == 2
    assert seg.complex.h_polynomial() == P([1, 1])
    pt = barycentric_subdivision(simplex_n(1)).complex
    assert len(pt.vertices) == 1 and pt.h_polynomial() == P([1])
    assert barycentric_subdivision(simplex_n(3)).complex.h_polynomial() == P([1, 4, 1])


@pytest.mark.parametrize("n", range(1, 6))
def test_h_sd_is_eulerian(n):
    assert barycentric_subdivision(simplex_n(n)).complex.h_polynomial() == eulerian_a(n)


def test_k2_structure():
    kn = k_n(2)
    assert len(kn.complex.vertices) == 5
    assert kn.facet_count() == 4
    assert kn.over_simplex.validate() and kn.over_sd.validate()


def test_k3():
    kn = k_n(3)
    assert kn.facet_count() == 24
    assert kn.complex.h_polynomial() == P([1, 16, 7])


def test_kn_guard():
    with pytest.raises(ValueError):
        k_n(7)
    with pytest.raises(ValueError):
        k_n(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_kn_h_and_facets(n):
    kn = k_n(n)
    h = kn.complex.h_polynomial()
    assert h == b_plus(n)
    assert kn.facet_count() == kn_facet_count(n) == 2 ** (n - 1) * math.factorial(n)
    assert h(1) == 2 ** (n - 1) * math.factorial(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_kn_restriction_is_kk(n):
    kn = k_n(n)
    for k in range(1, n + 1):
        for F in itertools.combinations(range(1, n + 1), k):
            rank = {v: i for i, v in enumerate(F, 1)}
            relabel = lambda v: (frozenset(rank[a] for a in v[0]), frozenset(rank[a] for a in v[1]))
            restricted = kn.over_simplex.restriction(F).relabel(relabel)
            assert restricted == k_n(k).complex


def test_link_of_facet_is_empty_complex():
    c = k_n(2).complex
    for facet in c.facets:
        lk = link(c, facet)
        assert lk.faces == frozenset({frozenset()})
        assert lk.h_polynomial() == P([1])


def test_link_missing_face():
    with pytest.raises(ValueError):
        link(TRIANGLE_BOUNDARY, [1, 2, 3])


@pytest.mark.parametrize("n", range(1, 6))
def test_kn_restrictions_over_sd_facet_counts(n):
    kn = k_n(n)
    for E in kn.sd.complex.faces:
        if E:
            assert len(kn.over_sd.restriction(E).facets) == 2 ** (len(E) - 1)


@pytest.mark.parametrize("n", range(1, 5))
def test_kn_local_h_over_sd_faces(n):
    kn = k_n(n)
    for E in kn.sd.complex.faces:
        if E:
            assert local_h_at(kn.over_sd, E) == lemma63_expected(len(E))


@pytest.mark.parametrize("d", range(1, 6))
def test_interval_chain_subdivision(d):
    s = interval_chain_subdivision(d)
    assert len(s.complex.facets) == 2 ** (d - 1)
    assert local_h(s) == lemma63_expected(d)


def test_lemma63_expected():
    assert lemma63_expected(4) == P([0, 0, 1])
    assert lemma63_expected(3).is_zero()


def test_restriction_over_sd_matches_interval_chain():
    kn = k_n(3)
    for E in kn.sd.complex.faces:
        if len(E) == 3:
            relabel = sd_face_to_interval_map(E)
            assert kn.over_sd.restriction(E).relabel(relabel) == interval_chain_subdivision(3).complex


def test_local_h_examples():
    assert local_h(barycentric_subdivision(simplex_n(3))) == P([0, 1, 1])
    for n in range(1, 5):
        assert local_h(Subdivision.trivial(simplex_n(n))).is_zero()
    assert local_h(k_n(3).over_simplex) == P([0, 7, 7])


@pytest.mark.parametrize("n", range(1, 6))
def test_local_h_sd_is_derangement(n):
    assert local_h(barycentric_subdivision(simplex_n(n))) == derangement_a(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_local_h_kn_is_fplus(n):
    assert local_h(k_n(n).over_simplex) == f_plus(n)


def test_local_h_needs_simplex():
    with pytest.raises(ValueError):
        local_h(Subdivision.trivial(TRIANGLE_BOUNDARY))


def test_relative_local_h_examples():
    sd = barycentric_subdivision(simplex_n(3))
    assert relative_local_h(sd, frozenset()) == local_h(sd)
    E = frozenset({frozenset({1})})
    assert relative_local_h(sd, E) == P([0, 1])
    kn = k_n(3)
    assert relative_local_h(kn.over_simplex, frozenset()) == f_plus(3)


def test_relative_local_h_invalid_face():
    sd = barycentric_subdivision(simplex_n(2))
    with pytest.raises(ValueError):
        relative_local_h(sd, frozenset({frozenset({9})}))


@pytest.mark.parametrize("n", range(1, 5))
def test_relative_local_h_sd_product_formula(n):
    sd = barycentric_subdivision(simplex_n(n))
    for E in sd.complex.faces:
        rel = relative_local_h(sd, E)
        r0, gaps = chain_gaps(E, n)
        expected = derangement_a(r0)
        for r in gaps:
            expected = expected * eulerian_a(r)
        assert rel == expected
        assert rel == reverse(rel, n - len(E))
        assert all(c >= 0 for c in rel.coeffs)


@pytest.mark.parametrize("n", range(1, 4))
def test_relative_local_h_kn_symmetric_nonnegative(n):
    kn = k_n(n)
    for E in kn.complex.faces:
        rel = relative_local_h(kn.over_simplex, E)
        assert rel == reverse(rel, n - len(E))
        assert all(c >= 0 for c in rel.coeffs)


def test_chain_gaps():
    E = frozenset({frozenset({2}), frozenset({1, 2, 4})})
    assert chain_gaps(E, 5) == (2, (1, 2))
    assert chain_gaps(frozenset(), 3) == (3, ())


@pytest.mark.parametrize("n", range(1, 5))
def test_decomposition_formula_sd_kn(n):
    kn = k_n(n)
    lhs, rhs = decomposition_sides(kn.sd, kn.over_sd)
    assert lhs == rhs == f_plus(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_decomposition_formula_trivial_refinement(n):
    sd = barycentric_subdivision(simplex_n(n))
    assert decomposition_formula_check(sd, Subdivision.trivial(sd.complex))


@pytest.mark.parametrize("n", range(1, 5))
def test_h_formula(n):
    kn = k_n(n)
    lhs, rhs = h_formula_sides(kn.over_simplex)
    assert lhs == rhs == b_plus(n)
    assert h_formula_check(kn.over_sd)
    assert h_formula_check(kn.sd)
    assert h_formula_check(Subdivision.trivial(simplex_n(n)))
    assert h_formula_check(Subdivision.trivial(TRIANGLE_BOUNDARY))


def test_h_formula_needs_pure_target():
    impure = SimplicialComplex.from_facets([[1, 2], [3]])
    with pytest.raises(ValueError):
        h_formula_check(Subdivision.trivial(impure))


def test_edgewise_examples():
    assert edgewise_h(P([1, 4, 1]), 3, 2) == P([1, 16, 7])
    assert edgewise_h(P([1, 4, 1]), 3, 1) == P([1, 4, 1])
    assert edgewise_h(P([1]), 1, 3) == P([1])


@pytest.mark.parametrize("n", range(1, 8))
def test_edgewise_of_sd_is_bplus(n):
    assert edgewise_h(eulerian_a(n), n, 2) == b_plus(n)


@pytest.mark.parametrize("n", range(1, 5))
def test_flag_vectors(n):
    alpha, beta = flag_vectors(pn_poset(n), n)
    assert alpha[frozenset()] == 1
    assert all(b >= 0 for b in beta.values())
    assert h_from_flag_h(beta, n) == k_n(n).complex.h_polynomial()
    counts: dict = {}
    for w in enumerate_bn(n):
        if w.entries[-1] > 0:
            key = desb_set(w)
            counts[key] = counts.get(key, 0) + 1
    for S, b in beta.items():
        assert counts.get(frozenset(n - s for s in S), 0) == b
