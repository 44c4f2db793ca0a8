import random
from fractions import Fraction

import pytest

from mangle.errors import DomainError
from mangle.exact import mat_mul, mat_vec, rank
from mangle.lp import in_cone
from mangle.polytopes import analyze_presentation, enumerate_vertices, product, standard_simplex
from mangle.quadrics import (
    QuadricSystem,
    classify_intersection_small,
    is_nondegenerate,
    link_normal_form,
    moment_map_report,
    polyhedron_from_quadrics,
    quadrics_from_presentation,
)


def test_simplex_gives_one_sphere_quadric():
    q = quadrics_from_presentation(standard_simplex(3))
    assert q.codim == 1
    assert len(set(q.Gamma[0])) == 1
    assert q.delta[0] == q.Gamma[0][0]


def test_pentagon_quadrics(pentagon):
    q = quadrics_from_presentation(pentagon)
    assert q.delta == tuple(mat_vec(q.Gamma, pentagon.b))
    expected = [[1, 0, 1, 0, 0], [0, 1, 0, 1, 0], [1, 1, 0, 0, 1]]
    assert rank(list(q.Gamma) + expected) == 3
    cert = in_cone(q.columns, q.delta)
    assert cert.member


def test_square_round_trip(square):
    p = polyhedron_from_quadrics(quadrics_from_presentation(square))
    assert len(enumerate_vertices(p).vertices) == 4
    assert sorted(len(a) for a in enumerate_vertices(p).active_sets) == [2, 2, 2, 2]


def test_all_ones_gives_a_simplex():
    p = polyhedron_from_quadrics(QuadricSystem([[1, 1, 1]], [1]))
    assert len(enumerate_vertices(p).vertices) == 3
    assert analyze_presentation(p).bounded


def test_delta_outside_span_is_rejected():
    with pytest.raises(DomainError):
        polyhedron_from_quadrics(QuadricSystem([[1, 0, 0], [1, 0, 0]], [1, 2], 3))


def test_nondegeneracy_examples(pentagon):
    assert is_nondegenerate(quadrics_from_presentation(pentagon))
    through_origin = is_nondegenerate(QuadricSystem([[1, -1]], [0]))
    assert not through_origin and through_origin.failed == "b"
    negative = is_nondegenerate(QuadricSystem([[1, 1]], [-1]))
    assert not negative and negative.failed == "a"


def test_link_forms(square, pentagon):
    assert link_normal_form(QuadricSystem([[1, 1, 1]], [1])).g == ()
    (row,) = link_normal_form(quadrics_from_presentation(square)).g
    signs = [1 if x > 0 else -1 for x in row]
    assert signs in ([1, -1, 1, -1], [-1, 1, -1, 1])
    link = link_normal_form(quadrics_from_presentation(pentagon))
    assert len(link.g) == 2
    assert in_cone([list(v) for v in link.vectors], [0, 0]).member
    assert all(sum(row[k] * link.scale[k] for k in range(5)) == 0 for row in link.g)


def test_small_classification(square, delta2_x_delta2):
    assert classify_intersection_small(quadrics_from_presentation(standard_simplex(3))).description == "S^7"
    assert classify_intersection_small(quadrics_from_presentation(square)).description == "S^3 × S^3"
    top = classify_intersection_small(quadrics_from_presentation(delta2_x_delta2))
    assert top.parameters["sphere_dims"] == [5, 5]
    assert top.parameters["p"] == 3 and top.parameters["q"] == 3


def test_redundant_inequality_splits_off_a_circle():
    q = QuadricSystem([[1, 1, 1, 0], [0, 0, 1, 1]], [1, 2], 4)
    desc = classify_intersection_small(q)
    assert desc.parameters["torus_rank"] == 1
    assert desc.parameters["sphere_dims"] == [5]
    assert desc.parameters["redundant"] == [4]


def test_pentagon_is_unclassified_with_betti(pentagon):
    desc = classify_intersection_small(quadrics_from_presentation(pentagon))
    assert desc.tag == "unclassified"
    assert desc.parameters["betti"] == [1, 0, 0, 5, 5, 0, 0, 1]


def _random_invertible(rng, size):
    while True:
        g = [[Fraction(rng.randint(-2, 2)) for _ in range(size)] for _ in range(size)]
        if rank(g) == size:
            return g


def test_classification_is_invariant(square, delta2_x_delta2):
    rng = random.Random(7)
    for p in (square, delta2_x_delta2, product(standard_simplex(1), standard_simplex(2))):
        q = quadrics_from_presentation(p)
        base = classify_intersection_small(q).parameters["sphere_dims"]
        for _ in range(5):
            perm = list(range(q.m))
            rng.shuffle(perm)
            g = _random_invertible(rng, q.codim)
            gamma = mat_mul(g, q.Gamma, q.m)
            moved = QuadricSystem([[row[k] for k in perm] for row in gamma], mat_vec(g, q.delta), q.m)
            assert classify_intersection_small(moved).parameters["sphere_dims"] == base


def test_moment_map_examples(pentagon):
    circle = moment_map_report(QuadricSystem([[1, 1, 1]], [1]))
    assert circle.proper and circle.regular_value and circle.action_free
    weighted = moment_map_report(QuadricSystem([[1, 2]], [1]))
    assert weighted.proper and weighted.regular_value and not weighted.action_free
    (bad,) = [s for s in weighted.stabilizers if not s.trivial]
    assert bad.order == 2 and bad.active == {0}
    report = moment_map_report(quadrics_from_presentation(pentagon))
    assert report.proper and report.regular_value and report.action_free
