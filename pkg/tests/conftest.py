import pytest

from crystaltopo import (
    DeltaComplex,
    LatticeSpec,
    build_lattice_complex,
)


def make_circle():
    # triangle perimeter: 3 vertices, 3 edges, no faces
    return DeltaComplex.from_simplices(
        [("A", "B"), ("A", "C"), ("B", "C")], auto_close=False)


def make_disc():
    return DeltaComplex.from_simplices(
        [("A", "B", "D"), ("B", "C", "D"), ("A", "D", "C")])


def make_tetra_surface():
    return DeltaComplex.from_simplices(
        [("A", "B", "C"), ("A", "C", "D"), ("A", "D", "B"), ("B", "D", "C")])


def make_cylinder():
    return DeltaComplex.from_simplices(
        [("A", "B", "C"), ("A", "B", "F"), ("A", "C", "E"),
         ("B", "D", "F"), ("C", "D", "E"), ("D", "E", "F")])


def make_mobius():
    return DeltaComplex.from_simplices(
        [("A", "B", "C"), ("A", "C", "E"), ("D", "E", "F"),
         ("C", "D", "E"), ("A", "B", "F"), ("A", "D", "F")])


def make_rp2():
    # minimal 6-vertex triangulation of the projective plane
    faces = [(1, 2, 5), (1, 2, 6), (1, 3, 4), (1, 3, 6), (1, 4, 5),
             (2, 3, 4), (2, 3, 5), (2, 4, 6), (3, 5, 6), (4, 5, 6)]
    return DeltaComplex.from_simplices(faces)


def make_torus(n=3, scheme="triangular"):
    spec = LatticeSpec(
        dimension=2, ambient=2,
        generators=((1.0, 0.0), (0.0, 1.0)),
        index_box=((0, n), (0, n)),
        scheme=scheme,
        boundary="periodic", periodic_axes=(1, 2))
    cx, _ = build_lattice_complex(spec)
    return cx


def make_sphere(n=6):
    # square patch with its rim pinched to a point
    spec = LatticeSpec(
        dimension=2, ambient=2,
        generators=((1.0, 0.0), (0.0, 1.0)),
        index_box=((0, n), (0, n)),
        scheme="triangular",
        boundary="constant")
    cx, _ = build_lattice_complex(spec)
    return cx


def make_grid(n=5, scheme="triangular", removed=(), defects=()):
    spec = LatticeSpec(
        dimension=2, ambient=2,
        generators=((1.0, 0.0), (0.0, 1.0)),
        index_box=((0, n - 1), (0, n - 1)),
        scheme=scheme,
        removed_indices=tuple(removed),
        defects=tuple(defects))
    cx, _ = build_lattice_complex(spec)
    return cx


@pytest.fixture
def circle():
    return make_circle()


@pytest.fixture
def disc():
    return make_disc()


@pytest.fixture
def tetra_surface():
    return make_tetra_surface()


@pytest.fixture
def cylinder():
    return make_cylinder()


@pytest.fixture
def mobius():
    return make_mobius()


@pytest.fixture
def rp2():
    return make_rp2()


@pytest.fixture
def torus():
    return make_torus()


@pytest.fixture
def sphere():
    return make_sphere()
