import random

import numpy as np
import pytest

from crystaltopo import (
    RING_MOD2,
    Chain,
    DeltaComplex,
    UnsupportedConfigurationError,
    barycentric_subdivide,
    betti_numbers,
    boundary_map,
    boundary_of_cell,
    build_complex,
    coboundary_map,
    coboundary_matrix,
    format_matrix_dense,
    format_matrix_triples,
    incidence_matrix,
    validate_complex,
)

from conftest import make_circle, make_disc, make_mobius, make_rp2, make_tetra_surface


# ---------------------------------------------------------------------------
# chain algebra
# ---------------------------------------------------------------------------

def test_chain_addition_drops_zeros():
    a = Chain(1, {0: 2, 1: -1})
    b = Chain(1, {0: -2, 2: 5})
    s = a + b
    assert dict(s.coeffs) == {1: -1, 2: 5}
    assert dict((a - a).coeffs) == {}
    assert not (a - a)


def test_chain_mod2_normalization():
    c = Chain(1, {0: 3, 1: 2}, ring=RING_MOD2)
    assert dict(c.coeffs) == {0: 1}


def test_chain_scaling_and_equality():
    a = Chain(2, {4: 1, 7: -2})
    assert a.scale(3) == Chain(2, {4: 3, 7: -6})
    assert a.scale(0) == Chain(2, {})
    assert -a == a.scale(-1)


def test_chain_rings_do_not_mix():
    a = Chain(1, {0: 1})
    b = Chain(1, {0: 1}, ring=RING_MOD2)
    with pytest.raises(Exception):
        a + b


# ---------------------------------------------------------------------------
# explicit complexes
# ---------------------------------------------------------------------------

def test_simplices_get_their_faces_filled_in():
    cx = DeltaComplex.from_simplices([("A", "B", "C")])
    assert cx.cell_counts() == [3, 3, 1]
    assert validate_complex(cx).ok


def test_closure_violations_are_reported(circle):
    cx = DeltaComplex.from_simplices([("A", "B", "C")], auto_close=False)
    rep = validate_complex(cx)
    assert not rep.ok
    assert len(rep.closure_defects) == 3
    missing = {d[2] for d in rep.closure_defects}
    assert missing == {("A", "B"), ("A", "C"), ("B", "C")}
    # the closed fixtures all validate cleanly
    assert validate_complex(circle).ok


def test_vertex_and_cell_lookup(disc):
    vid = disc.vertex_id("C")
    assert disc.label_tuple(0, vid) == ("C",)
    eid, sign = disc.find_cell(1, ("B", "A"))
    assert disc.label_tuple(1, eid) == ("A", "B")
    assert sign == -1
    fid, sign = disc.find_cell(2, ("B", "A", "D"))
    assert disc.label_tuple(2, fid) == ("A", "B", "D")
    assert sign == -1  # one transposition


def test_boundary_of_edge(circle):
    eid, _ = circle.find_cell(1, ("A", "B"))
    d = boundary_of_cell(circle, 1, eid)
    assert d == circle.chain(0, {("B",): 1, ("A",): -1})


def test_boundary_of_triangle_alternates_signs(disc):
    fid, _ = disc.find_cell(2, ("A", "B", "D"))
    d = boundary_of_cell(disc, 2, fid)
    assert d == disc.chain(1, {("B", "D"): 1, ("A", "D"): -1, ("A", "B"): 1})


def test_perimeter_is_a_cycle(circle):
    loop = circle.chain(1, {("A", "B"): 1, ("B", "C"): 1, ("A", "C"): -1})
    assert not boundary_map(loop, circle)


def test_boundary_of_boundary_vanishes():
    rng = random.Random(5)
    for cx in (make_disc(), make_tetra_surface(), make_rp2(), make_mobius()):
        k = cx.dim
        ch = Chain(k, {i: rng.randint(-3, 3) for i in range(cx.n_cells(k))})
        assert not boundary_map(boundary_map(ch, cx), cx)


def test_coboundary_of_vertex_on_circle(circle):
    # hand value 1 to vertex A: the coboundary charges both incident edges
    delta = coboundary_map(circle.cochain(0, {("A",): 1}), circle)
    assert delta == circle.cochain(1, {("A", "B"): -1, ("A", "C"): -1})


def test_coboundary_matrix_is_transpose(disc):
    for k in range(1, disc.dim + 1):
        assert np.array_equal(coboundary_matrix(disc, k - 1),
                              incidence_matrix(disc, k).T)


def test_cochain_pairing(circle):
    z = circle.chain(1, {("A", "B"): 2, ("B", "C"): 1})
    f = circle.cochain(1, {("A", "B"): 3, ("A", "C"): 7})
    assert f.pair(z) == 6


# ---------------------------------------------------------------------------
# grid builders
# ---------------------------------------------------------------------------

def test_square_grid_counts():
    cx = build_complex([(i, j) for i in range(2) for j in range(2)], "cubic")
    assert cx.cell_counts() == [4, 4, 1]


def test_triangular_grid_counts():
    cx = build_complex([(i, j) for i in range(2) for j in range(2)], "triangular")
    assert cx.cell_counts() == [4, 5, 2]


def test_center_vacancy_drops_incident_cells():
    pts = [(i, j) for i in range(3) for j in range(3) if (i, j) != (1, 1)]
    cx = build_complex(pts, "cubic")
    assert cx.cell_counts() == [8, 8]
    assert betti_numbers(cx) == [1, 1]


def test_cube_cell_boundary_is_closed_shell():
    corners = [(i, j, k) for i in range(2) for j in range(2) for k in range(2)]
    cx = build_complex(corners, "cubic")
    assert cx.cell_counts() == [8, 12, 6, 1]
    shell = boundary_of_cell(cx, 3, 0)
    assert len(shell.coeffs) == 6
    assert not boundary_map(shell, cx)
    assert validate_complex(cx).ok


def test_triangular_3d_fills_the_cube():
    corners = [(i, j, k) for i in range(2) for j in range(2) for k in range(2)]
    cx = build_complex(corners, "triangular")
    # the unit cube splits into 6 tetrahedra sharing the main diagonal
    assert cx.n_cells(3) == 6
    assert betti_numbers(cx) == [1, 0, 0, 0]


def test_incidence_entries_are_signs(tetra_surface):
    m = incidence_matrix(tetra_surface, 2)
    assert set(np.unique(m)) <= {-1, 0, 1}
    assert m.shape == (6, 4)


# ---------------------------------------------------------------------------
# subdivision
# ---------------------------------------------------------------------------

def test_subdividing_an_edge():
    cx = barycentric_subdivide(DeltaComplex.from_simplices([("A", "B")]))
    assert cx.cell_counts() == [3, 2]


def test_subdividing_a_triangle():
    cx = barycentric_subdivide(DeltaComplex.from_simplices([("A", "B", "C")]))
    assert cx.cell_counts() == [7, 12, 6]
    assert validate_complex(cx).ok
    assert betti_numbers(cx) == [1, 0, 0]


def test_subdivision_refuses_cubes():
    cube = build_complex([(0, 0)], "cubic")
    with pytest.raises(UnsupportedConfigurationError):
        barycentric_subdivide(cube)


def test_subdivision_handles_vertex_distinct_quotients(torus):
    # glued cells are fine as long as each cell has distinct corners
    sd = barycentric_subdivide(torus)
    assert sd.cell_counts() == [54, 162, 108]
    assert betti_numbers(sd) == [1, 2, 1]


def test_subdivision_refuses_degenerate_cells():
    from conftest import make_torus
    with pytest.raises(UnsupportedConfigurationError):
        barycentric_subdivide(make_torus(1))


# ---------------------------------------------------------------------------
# formatting helpers
# ---------------------------------------------------------------------------

def test_matrix_formatting(circle):
    m = incidence_matrix(circle, 1)
    dense = format_matrix_dense(m)
    assert dense.count("\n") == 2
    triples = format_matrix_triples(m)
    assert "(0, 0, -1)" in triples or "0 0 -1" in triples
