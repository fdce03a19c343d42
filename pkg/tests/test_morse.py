from itertools import product

import pytest

from houghton.complex import (CubicalComplex, RegionSpec, default_seeds, enumerate_region,
                              mask_of)
from houghton.core import (Character, ascending_standard_form, chi_eval, deficiency_f,
                           generator_t, identity, is_bijection, m_of_chi, morse_height,
                           transposition_tau)
from houghton.fixtures import solid_cube
from houghton.homology import acyclicity_bound, reduced_homology
from houghton.morse import (Blanket, CoverPiece, WitnessError, ascending_link, blanket_components,
                            check_intersections, cover_pieces, descending_link, intersection_of,
                            is_join, nerve, piece_types, ray_germ_invariant, sphere_witness,
                            strong_nerve_hypotheses, superlevel_region, tau_product)
from houghton.complex import ComplexError

CHI1 = Character((-1, 0))


@pytest.fixture(scope="module")
def X2():
    return enumerate_region([identity(2)], RegionSpec(2, window=3, f_bound=3))


@pytest.fixture(scope="module")
def region3():
    """n=3, chi = (-1,-1,0): the f <= 6, chi >= 0 region and its ambient."""
    chi = Character((-1, -1, 0))
    amb = enumerate_region(default_seeds(3), RegionSpec(3, window=2, f_bound=6))
    reg = superlevel_region(amb, chi, 0)
    return chi, amb, reg


def test_heights():
    n = 2
    assert morse_height(CHI1, identity(n)) == (0, 0)
    assert morse_height(CHI1, generator_t(1, n)) == (-1, 1)
    assert morse_height(CHI1, generator_t(2, n)) == (0, 1)


def test_morse_gap_on_edges(X2):
    chi = Character((-2, 1))
    for a, b, i in X2.edges():
        ha, hb = morse_height(chi, X2.vertices[a]), morse_height(chi, X2.vertices[b])
        dchi = hb[0] - ha[0]
        assert abs(dchi) >= 1 or (dchi == 0 and abs(hb[1] - ha[1]) == 1)
        assert hb[1] - ha[1] == 1 and dchi == chi.coeffs[i - 1]


def test_ascending_link_of_identity(X2):
    L = ascending_link(X2, CHI1, identity(2))
    assert L.labelled_faces() == [(("up", 2),)]
    assert descending_link(X2, None, identity(2)).is_empty()
    # under (chi, f) the t_1 edge lowers chi, so it descends
    assert descending_link(X2, CHI1, identity(2)).labelled_faces() == [(("up", 1),)]


def test_f_descending_links_acyclic():
    n = 2
    X = enumerate_region([identity(2)], RegionSpec(2, window=3, f_bound=5))
    seen = 0
    for v in X.vertices:
        if deficiency_f(v) > 2 * n - 1 and X.is_interior(v, relative=True):
            L = descending_link(X, None, v)
            assert acyclicity_bound(reduced_homology(L, n - 2)) >= n - 2
            seen += 1
    assert seen


def test_ascending_link_join_structure_logged(X2):
    # not asserted in general; on f = 0 vertices the link has only up-vertices
    L = ascending_link(X2, CHI1, transposition_tau(1, 2))
    ups = [x for x in L.vertices if x[0] == "up"]
    assert is_join(L, ups, [])


def test_superlevel_region(X2):
    assert len(superlevel_region(X2, CHI1, None)) == len(X2)
    assert len(superlevel_region(X2, CHI1, 4)) == 0   # max chi is W = 3
    S = superlevel_region(X2, CHI1, 0)
    assert identity(2) in S and generator_t(1, 2) not in S


def test_blankets_basic(X2):
    whole = blanket_components(X2, ())
    assert len(whole) == 1 and whole[0].vertices == frozenset(X2.vertices)
    Z = blanket_components(X2, (1,))
    home = [z for z in Z if identity(2) in z]
    assert len(home) == 1 and transposition_tau(1, 2) not in home[0]
    # deterministic order: by least vertex
    assert [z.least for z in Z] == sorted(z.least for z in Z)


def test_blanket_intersections(X2):
    Z1, Z2, Z12 = (blanket_components(X2, K) for K in ((1,), (2,), (1, 2)))
    for a, b in product(Z1, Z2):
        common = a.vertices & b.vertices
        if common:
            assert sum(1 for c in Z12 if c.vertices == common) == 1


def test_germs(X2):
    e, tau = identity(2), transposition_tau(1, 2)
    g = ray_germ_invariant(e, 1)
    assert g.is_permutation and g.images == ()
    assert ray_germ_invariant(tau, 1) != g and ray_germ_invariant(tau, 1).is_permutation
    assert str(ray_germ_invariant(tau, 1)) == "ray=1; m=0; exc=(1,1)->(1,2);(1,2)->(1,1)"
    for a, b, j in X2.edges():
        for i in (1, 2):
            if i != j:
                assert ray_germ_invariant(X2.vertices[a], i) == ray_germ_invariant(X2.vertices[b], i)
    with pytest.raises(IndexError):
        ray_germ_invariant(e, 3)


def test_piece_types():
    assert piece_types(CHI1) == [1]
    assert piece_types(Character((-1, -1, 0))) == [1, 2]
    asc, _ = ascending_standard_form(Character((0, -2, -1)))
    assert piece_types(asc) == [1, 2]


def test_cover_n2(X2):
    reg = superlevel_region(X2, CHI1, 0)
    pieces = cover_pieces(reg, CHI1, X2)
    assert {p.type for p in pieces} == {1}
    assert set().union(*(p.vertices for p in pieces)) == set(reg.vertices)
    for v in reg.vertices:
        assert any(v.translations[i - 1] <= 0 for i in piece_types(CHI1))
    N = nerve(pieces, reg)
    assert len(N.complex.vertices) >= 2 and not N.same_type_adjacent()
    assert reduced_homology(N.complex, 0).betti[0] > 0
    w = sphere_witness(2, CHI1, pieces, N)
    assert w.cycle_is_nontrivial and w.pairs[1][0] != w.pairs[1][1]


def test_cover_n3(region3):
    chi, amb, reg = region3
    pieces = cover_pieces(reg, chi, amb)
    assert set().union(*(p.vertices for p in pieces)) == set(reg.vertices)
    assert all(p.vertices for p in pieces)
    N = nerve(pieces, reg)
    assert not N.same_type_adjacent() and N.complex.dimension <= m_of_chi(chi) - 1
    w = sphere_witness(3, chi, pieces, N)
    assert len(w.facets) == 4 and w.cycle_is_nontrivial
    for g in w.elements.values():
        assert is_bijection(g) and chi_eval(chi, g) == 0
    # the four witness pieces form a 4-cycle
    labels = sorted({l for f in w.facets for l in f})
    sub = N.complex.induced(labels)
    assert sub.counts() == [4, 4]
    # good pieces: singles and pairs acyclic through degree m - 2 = 0
    good = check_intersections(pieces, reg, 2, lambda r: m_of_chi(chi) - 2)
    assert all(r.passed for r in good) and any(r.r == 2 for r in good)
    assert strong_nerve_hypotheses(pieces, m_of_chi(chi) - 1, reg)["passed"]


def test_nerve_small_cases():
    a, b = identity(2), identity(2).up(2).up(2)
    X = CubicalComplex(2, [a, b])
    z = Blanket((1,), 0, frozenset([a, b]))
    one = CoverPiece(1, 1, frozenset([a, b]), z)
    assert nerve([one], X).complex.counts() == [1]
    p, q = CoverPiece(1, 1, frozenset([a]), z), CoverPiece(1, 2, frozenset([b]), z)
    N = nerve([p, q], X)
    assert N.complex.counts() == [2]
    rep = strong_nerve_hypotheses([p, q], 2, X)
    assert rep["by_r"] == {1: 2, 2: 0}
    with pytest.raises(ComplexError):
        nerve([p], X)


def test_failing_cover_fixture():
    """Two paths around a hollow square meeting in its opposite corners."""
    sq = solid_cube(2)
    cycle = CubicalComplex(2, sq.vertices, [(b, m) for b, m in sq.cube_set if m != mask_of((1, 2))])
    e = identity(2)
    c1, c2, top = e.up(1), e.up(2), e.up(1).up(2)
    z = Blanket((), 0, frozenset(cycle.vertices))
    left = CoverPiece(1, 1, frozenset([e, c1, top]), z)
    right = CoverPiece(2, 1, frozenset([e, c2, top]), z)
    assert intersection_of([left, right]) == {e, top}
    rep = strong_nerve_hypotheses([left, right], 2, cycle)
    assert not rep["passed"]
    [fail] = rep["failures"]
    assert fail["pieces"] == ["Y1^1", "Y2^1"] and fail["acyclic_through"] == -1


def test_witness_refuses_merged_pieces():
    e = identity(2)
    tau = transposition_tau(1, 2)
    z = Blanket((1,), 0, frozenset([e, tau]))
    both = CoverPiece(1, 1, frozenset([e, tau]), z)
    with pytest.raises(WitnessError):
        sphere_witness(2, CHI1, [both])


def test_tau_product():
    t = tau_product(3, [1, 2])
    assert is_bijection(t) and deficiency_f(t) == 0
    assert tau_product(3, []) == identity(3)
