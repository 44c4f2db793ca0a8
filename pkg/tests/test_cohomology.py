import pytest

from mangle.complexes import SimplicialComplex, fh_vectors
from mangle.cohomology import de_rham_model, pad_betti, toric_cohomology, zk_betti_model, zk_betti_oracle
from mangle.errors import DomainError, SizeCapError
from mangle.fans import FanData, normal_fan
from mangle.polytopes import product, standard_simplex
from mangle.reports import with_ghost

from conftest import pentagon_presentation, square_presentation

FANS = {
    "cp2": lambda: normal_fan(standard_simplex(2)),
    "cp1xcp1": lambda: normal_fan(square_presentation()),
    "pentagon": lambda: normal_fan(pentagon_presentation()),
    "cp2xcp2": lambda: normal_fan(product(standard_simplex(2), standard_simplex(2))),
    "cp3": lambda: normal_fan(standard_simplex(3)),
    "cp1xcp2": lambda: normal_fan(product(standard_simplex(1), standard_simplex(2))),
}


def test_toric_cohomology_dimensions():
    assert toric_cohomology(FANS["cp2"]()).dims == [1, 1, 1]
    assert toric_cohomology(FANS["cp1xcp1"]()).dims == [1, 2, 1]
    assert toric_cohomology(FANS["pentagon"]()).dims == [1, 3, 1]
    assert toric_cohomology(FANS["cp2xcp2"]()).dims == [1, 2, 3, 2, 1]


@pytest.mark.parametrize("name", sorted(FANS))
def test_toric_dims_are_the_h_vector(name):
    fan = FANS[name]()
    assert toric_cohomology(fan).dims == fh_vectors(fan.complex)[1]


def test_cp2_ring_structure():
    ring = toric_cohomology(FANS["cp2"]())
    x = ring.linear_images[0]
    square = ring.multiply_elements(x, x)
    assert square and all(ring.degrees[i] == 2 for i in square)
    assert ring.multiply_elements(square, x) == {}


def test_cp1xcp1_ring_structure():
    ring = toric_cohomology(FANS["cp1xcp1"]())
    x, y = ring.linear_images[0], ring.linear_images[1]
    assert ring.multiply_elements(x, x) == {}
    assert ring.multiply_elements(x, y) != {}


def test_betti_examples():
    assert zk_betti_model(FANS["cp1xcp1"]()) == [1, 0, 0, 2, 0, 0, 1]
    assert zk_betti_model(FANS["pentagon"]()) == [1, 0, 0, 5, 5, 0, 0, 1]
    assert zk_betti_model(FANS["cp2"]()) == [1, 0, 0, 0, 0, 1]


def test_oracle_examples():
    two_points = SimplicialComplex.from_faces(2, [(0,), (1,)])
    assert zk_betti_oracle(two_points) == [1, 0, 0, 1]
    square = SimplicialComplex.from_faces(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert zk_betti_oracle(square) == [1, 0, 0, 2, 0, 0, 1]
    pentagon = SimplicialComplex.from_faces(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
    assert zk_betti_oracle(pentagon) == [1, 0, 0, 5, 5, 0, 0, 1]


def test_oracle_handles_torus_and_disc():
    assert zk_betti_oracle(SimplicialComplex.empty(2)) == [1, 2, 1]
    assert zk_betti_oracle(SimplicialComplex.simplex(range(3), 3)) == [1]


@pytest.mark.parametrize("name", sorted(FANS))
def test_model_agrees_with_oracle(name):
    fan = FANS[name]()
    assert zk_betti_model(fan) == pad_betti(zk_betti_oracle(fan.complex), fan.m + fan.n + 1)


def test_model_agrees_with_oracle_on_ghosts():
    fan = with_ghost(FANS["pentagon"]())
    assert zk_betti_model(fan) == zk_betti_oracle(fan.complex) == [1, 1, 0, 5, 10, 5, 0, 1, 1]


@pytest.mark.parametrize("name", sorted(FANS))
def test_de_rham_model_squares_to_zero(name):
    de_rham_model(FANS[name]()).check_d_squared()


def test_incomplete_fan_is_refused():
    points = SimplicialComplex.from_faces(3, [(0,), (1,), (2,)])
    with pytest.raises(DomainError):
        toric_cohomology(FanData(points, [(1, 0), (0, 1), (-1, -1)]))


def test_irregular_fan_is_refused_by_the_model():
    cone = SimplicialComplex.from_faces(3, [(0, 1), (1, 2), (0, 2)])
    fan = FanData(cone, [(2, -1), (0, 1), (-1, 0)])
    with pytest.raises(DomainError):
        de_rham_model(fan)


def test_oracle_size_cap():
    with pytest.raises(SizeCapError):
        zk_betti_oracle(SimplicialComplex.empty(11))
