import itertools
from math import comb

import pytest

from noncrossing.complex import (
    FaceLimitExceeded,
    FVector,
    InvariantViolation,
    NoDiagonals,
    NotADiagonal,
    NotPure,
    Complex,
    boundary_faces,
    build_complex,
    cone,
    crossing,
    cut_along_diagonal,
    cut_complex,
    deletion,
    euler_characteristic,
    f_vector,
    join,
    link,
    members,
    point_complex,
    suspension,
    triangulation_is_tiling,
    void_complex,
)
from noncrossing.fixtures import HOLED, NONCONVEX, convex_polygon, random_polygons
from noncrossing.region import Diagonal, enumerate_diagonals, is_convex, validate

from oracles import brute_force_triangulations, catalan, clique_faces, count_triangulations, shapely_crosses


def two_points():
    return Complex.from_faces(["a", "b"], [0, 1, 2])


def edge_graph(cplx):
    return {frozenset(cplx.face_labels(f)) for f in cplx.by_size.get(2, ())}


def is_cycle(cplx, length):
    if cplx.d != length or cplx.dim != 1:
        return False
    deg = {v: 0 for v in cplx.labels}
    for e in edge_graph(cplx):
        for v in e:
            deg[v] += 1
    return len(edge_graph(cplx)) == length and all(k == 2 for k in deg.values())


def test_crossing_examples(square, pentagon):
    assert crossing((0, 2), (1, 3), square)
    assert not crossing((0, 2), (0, 3), pentagon)
    assert crossing((0, 2), (1, 4), pentagon)


def test_crossing_matches_shapely(nonconvex, holed):
    for region in list(nonconvex.values()) + list(holed.values()):
        diags = enumerate_diagonals(region)
        for a, b in itertools.combinations(diags, 2):
            assert crossing(a, b, region) == shapely_crosses(region, a, b)


def test_build_square(square):
    c = build_complex(square)
    assert c.labels == ((0, 2), (1, 3))
    assert [c.face_labels(f) for f in c.facets] == [frozenset({(0, 2)}), frozenset({(1, 3)})]
    assert c.dim == 0


def test_build_pentagon_is_five_cycle(pentagon):
    c = build_complex(pentagon)
    assert f_vector(c).counts == (1, 5, 5)
    assert is_cycle(c, 5)
    assert all(f.bit_count() == 2 for f in c.facets)


def test_build_hexagon(hexagon):
    c = build_complex(hexagon)
    assert len(c.facets) == 14 == catalan(4)


@pytest.mark.parametrize("n", range(4, 10))
def test_convex_facets_catalan(n):
    assert len(build_complex(convex_polygon(n)).facets) == catalan(n - 2)


def test_convex_nine_f_vector():
    assert f_vector(build_complex(convex_polygon(9))).counts == (1, 27, 225, 825, 1485, 1287, 429)


@pytest.mark.parametrize("n", range(4, 9))
def test_convex_f_vector_closed_form(n):
    # faces of size k in the associahedron dual: C(n-3, k) C(n+k-1, k) / (k+1)
    fv = f_vector(build_complex(convex_polygon(n)))
    assert fv.counts == tuple(comb(n - 3, k) * comb(n + k - 1, k) // (k + 1) for k in range(n - 2))


def test_triangle_has_no_diagonals():
    tri = validate([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(NoDiagonals):
        build_complex(tri)
    assert build_complex(tri, allow_empty=True).faces == (0,)


def test_face_limit(hexagon):
    with pytest.raises(FaceLimitExceeded):
        build_complex(convex_polygon(8), max_faces=100)


def test_face_limit_env(monkeypatch):
    monkeypatch.setenv("NONCROSSING_MAX_FACES", "10")
    with pytest.raises(FaceLimitExceeded):
        build_complex(convex_polygon(6))


def test_facet_size_invariant_is_enforced(square, monkeypatch):
    from noncrossing import region as region_mod

    monkeypatch.setattr(region_mod.Region, "triangulation_size", property(lambda self: 7))
    with pytest.raises(InvariantViolation):
        build_complex(square)


def all_fixtures():
    out = {name: validate(pts) for name, pts in NONCONVEX.items()}
    out.update({name: validate(o, h) for name, (o, h) in HOLED.items()})
    for n in range(4, 9):
        out[f"convex-{n}"] = convex_polygon(n)
    return out


FIXTURES = all_fixtures()


@pytest.mark.parametrize("name", sorted(n for n, r in FIXTURES.items() if r.n <= 8))
def test_flag_oracle(name):
    region = FIXTURES[name]
    c = build_complex(region)
    ours = {frozenset(tuple(d) for d in s) for s in c.label_sets()}
    assert ours == clique_faces(region)


@pytest.mark.parametrize("name", sorted(n for n, r in FIXTURES.items() if r.n <= 8))
def test_facets_match_brute_force(name):
    region = FIXTURES[name]
    c = build_complex(region)
    facets = {frozenset(tuple(d) for d in c.face_labels(f)) for f in c.facets}
    assert facets == set(brute_force_triangulations(region))


@pytest.mark.parametrize("name", sorted(NONCONVEX))
def test_triangulation_count_dp(name):
    region = FIXTURES[name]
    assert len(build_complex(region).facets) == count_triangulations(region)


def test_random_triangulation_counts():
    for region in random_polygons(30, seed=11):
        assert len(build_complex(region).facets) == count_triangulations(region)


def test_tiling_examples(square, dart):
    assert triangulation_is_tiling(square, [(0, 2)])
    assert not triangulation_is_tiling(square, [])
    assert triangulation_is_tiling(dart, [(1, 3)])


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_every_facet_tiles(name):
    region = FIXTURES[name]
    c = build_complex(region)
    for f in c.facets:
        assert triangulation_is_tiling(region, c.face_labels(f))
    # a proper subset of a facet leaves a non-triangular cell
    f = c.facets[0]
    assert not triangulation_is_tiling(region, list(c.face_labels(f))[1:])


def test_link_examples(hexagon, pentagon):
    c6 = build_complex(hexagon)
    lk = link(c6, c6.index_of((0, 3)))
    assert is_cycle(lk, 4)
    c5 = build_complex(pentagon)
    lk = link(c5, c5.index_of((0, 2)))
    assert lk.d == 2 and lk.dim == 0 and len(lk.faces) == 3
    assert set(lk.labels) == {(0, 3), (2, 4)}


def test_deletion_examples(square, pentagon):
    c4 = build_complex(square)
    dl = deletion(c4, c4.index_of((0, 2)))
    assert dl.label_sets() == {frozenset(), frozenset({(1, 3)})}
    c5 = build_complex(pentagon)
    dl = deletion(c5, c5.index_of((0, 2)))
    assert dl.d == 4 and len(edge_graph(dl)) == 3
    degrees = sorted(sum(v in e for e in edge_graph(dl)) for v in dl.labels)
    assert degrees == [1, 1, 2, 2]


def test_link_deletion_partition(hexagon):
    c = build_complex(hexagon)
    for v in range(c.d):
        assert len(link(c, v).faces) + len(deletion(c, v).faces) == len(c.faces)


def test_link_rejects_non_vertex():
    c = point_complex()
    with pytest.raises(IndexError):
        link(c, 3)


def test_join_examples():
    square_cycle = join(two_points(), Complex.from_faces(["c", "d"], [0, 1, 2]))
    assert is_cycle(square_cycle, 4)
    assert euler_characteristic(cone(build_complex(convex_polygon(6))), reduced=True) == 0
    assert join(void_complex(), two_points()).label_sets() == two_points().label_sets()


def test_join_f_vector_is_convolution(pentagon, hexagon):
    a, b = build_complex(pentagon), build_complex(hexagon)
    assert f_vector(join(a, b)) == f_vector(a).convolve(f_vector(b))


def test_f_vector_and_euler(square, pentagon):
    c4 = build_complex(square)
    assert f_vector(c4).counts == (1, 2)
    assert euler_characteristic(c4) == 2
    assert euler_characteristic(c4, reduced=True) == 1
    c5 = build_complex(pentagon)
    assert f_vector(c5).counts == (1, 5, 5)
    assert euler_characteristic(c5) == 0
    assert euler_characteristic(c5, reduced=True) == -1
    fv = FVector((1, 5, 5))
    assert fv[-1] == 1 and fv[1] == 5 and fv[2] == 0


def test_suspension_shifts_euler(pentagon):
    c = build_complex(pentagon)
    assert euler_characteristic(suspension(c), reduced=True) == -euler_characteristic(c, reduced=True)


def test_boundary_examples(pentagon, dart):
    rep = boundary_faces(build_complex(pentagon))
    assert rep.empty and rep.pseudomanifold
    rep = boundary_faces(build_complex(dart))
    assert rep.free_ridges == (0,)
    assert not rep.empty and rep.faces == (0,)


def test_boundary_rejects_impure():
    c = Complex.from_faces(["a", "b", "c"], [0, 1, 2, 4, 3])
    with pytest.raises(NotPure):
        boundary_faces(c)


def _cut_pieces_convex(cut):
    return all(is_convex(p) for p in cut.pieces)


@pytest.mark.parametrize("name", sorted(NONCONVEX) + sorted(HOLED))
def test_boundary_vertices_characterised(name):
    # a diagonal lies on the boundary exactly when its link is not a sphere,
    # which happens exactly when some cut piece is non-convex
    region = FIXTURES[name]
    c = build_complex(region)
    rep = boundary_faces(c)
    assert rep.pseudomanifold
    for v, dg in enumerate(c.labels):
        lk = link(c, v)
        closed = lk.is_pure and boundary_faces(lk).empty if lk.d else True
        on_boundary = v in rep.vertices
        cut = cut_along_diagonal(region, dg)
        assert on_boundary == (not _cut_pieces_convex(cut))
        assert on_boundary == (not closed)


@pytest.mark.parametrize("name", sorted(HOLED))
def test_holed_every_vertex_on_boundary(name):
    c = build_complex(FIXTURES[name])
    assert boundary_faces(c).vertices == frozenset(range(c.d))


def test_hexagon_notch_interior_vertex():
    region = FIXTURES["hexagon-notch"]
    c = build_complex(region)
    inner = set(range(c.d)) - boundary_faces(c).vertices
    assert inner
    for v in inner:
        assert all(is_convex(p) for p in cut_along_diagonal(region, c.labels[v]).pieces)


def test_cut_examples(hexagon, pentagon):
    cut = cut_along_diagonal(hexagon, (0, 3))
    assert cut.separating and [p.n for p in cut.pieces] == [4, 4]
    cut = cut_along_diagonal(pentagon, (0, 2))
    assert sorted(p.n for p in cut.pieces) == [3, 4]
    c = build_complex(pentagon)
    assert cut_complex(cut).label_sets() == link(c, c.index_of((0, 2))).label_sets()


def test_cut_merges_hole():
    outer, holes = HOLED["square-in-square"]
    region = validate(outer, holes)
    dg = next(d for d in enumerate_diagonals(region) if region.ring_of[d[0]] != region.ring_of[d[1]])
    cut = cut_along_diagonal(region, dg)
    assert not cut.separating
    (piece,) = cut.pieces
    assert piece.h == region.h - 1
    assert piece.n == region.n + 2


def test_cut_rejects_non_diagonal(square):
    with pytest.raises(NotADiagonal):
        cut_along_diagonal(square, (0, 1))


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_cut_complex_equals_link(name):
    region = FIXTURES[name]
    c = build_complex(region)
    for v, dg in enumerate(c.labels):
        cut = cut_along_diagonal(region, dg)
        assert cut_complex(cut).label_sets() == link(c, v).label_sets()
        for k, piece in enumerate(cut.pieces):
            assert piece.triangulation_size >= 0
            assert all(isinstance(cut.lift(k, d), Diagonal) for d in enumerate_diagonals(piece))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_cone_deletion_decomposition(n):
    big = build_complex(convex_polygon(n))
    small = build_complex(convex_polygon(n - 1))
    v = big.index_of((0, n - 2))
    bit = 1 << v
    star = {f for f in big.faces if (f | bit) in big.face_set}
    dele = {f for f in big.faces if not f & bit}
    assert star | dele == big.face_set
    inter = {frozenset(big.face_labels(f)) for f in star & dele}
    assert inter == small.label_sets()
    assert {frozenset(big.face_labels(f)) for f in star} == cone(small, (0, n - 2)).label_sets()


def test_members_and_from_faces():
    assert members(0b10110) == [1, 2, 4]
    c = Complex.from_faces(["a", "b"], [3, 0, 1, 2, 1])
    assert c.faces == (0, 1, 2, 3)
    assert c.facets == (3,)
