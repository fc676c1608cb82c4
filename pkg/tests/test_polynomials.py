from itertools import product

import pytest

from src.algebra.polynomials import (
    INHOMOGENEOUS,
    Grading,
    GradingError,
    PointAssignment,
    arith,
    evaluate,
    partial_degree,
    partial_derivative,
    substitute,
    weighted_degree,
)
from src.algebra.rings import RingMismatchError, RingPresentation
from tests.helpers import nonzero_random_polynomial, point, random_polynomial


def test_evaluate_is_a_ring_homomorphism(plane_qq, rng):
    p = point(plane_qq, "1/2", -3)
    for _ in range(30):
        f = nonzero_random_polynomial(plane_qq, rng)
        g = nonzero_random_polynomial(plane_qq, rng)
        assert evaluate(f * g, p) == evaluate(f, p) * evaluate(g, p)
        assert evaluate(f + g, p) == evaluate(f, p) + evaluate(g, p)


def test_evaluate_rejects_wrong_arity(plane_qq):
    with pytest.raises(RingMismatchError):
        evaluate(plane_qq.coerce("x"), point(plane_qq, 1))


def test_partial_derivative_in_characteristic_p(f5):
    presentation = RingPresentation(("x", "y"), f5)
    f = presentation.coerce("x^5 + x^2*y")
    assert partial_derivative(f, 0) == presentation.coerce("2*x*y")
    with pytest.raises(IndexError):
        partial_derivative(f, 2)


def test_weighted_degree(qq):
    presentation = RingPresentation(("X", "Y", "Z"), qq)
    grading = Grading.from_mapping(presentation, {"X": 21, "Y": 14, "Z": 6})
    assert weighted_degree(presentation.coerce("X^2 + Y^3 + Z^7"), grading) == (42,)
    assert weighted_degree(presentation.coerce("X + Y"), grading) == INHOMOGENEOUS
    with pytest.raises(GradingError):
        weighted_degree(presentation.ring.zero, grading)


def test_grading_validation(plane_qq):
    with pytest.raises(GradingError):
        Grading.from_mapping(plane_qq, {"x": 1})
    with pytest.raises(GradingError):
        Grading.from_mapping(plane_qq, {"x": 1, "y": 1, "w": 2})
    with pytest.raises(GradingError):
        Grading.from_mapping(plane_qq, {"x": 1, "y": (1, 2)})


def test_bigrading_vectors(qq):
    presentation = RingPresentation(("x", "T"), qq)
    grading = Grading.from_mapping(presentation, {"x": (1, 0), "T": (-1, 1)})
    assert weighted_degree(presentation.coerce("x*T"), grading) == (0, 1)


def test_substitute_is_simultaneous(plane_qq):
    x, y = plane_qq.ring.gens
    swapped = substitute(x**2 * y, {"x": y, "y": x})
    assert swapped == y**2 * x
    assert substitute(x, {}) == x


def test_partial_degree(qq):
    presentation = RingPresentation(("x", "T1", "T2"), qq)
    f = presentation.coerce("x^5*T1 + T1^2*T2 + x")
    assert partial_degree(f, (1, 2)) == 3
    assert partial_degree(presentation.ring.zero, (1,)) == 0


def test_arith_checks_rings(plane_qq, qq):
    other = RingPresentation(("z",), qq)
    with pytest.raises(RingMismatchError):
        arith("add", plane_qq.coerce("x"), other.coerce("z"))
    assert arith("pow", plane_qq.coerce("x + 1"), 2) == plane_qq.coerce("x^2 + 2*x + 1")


def test_point_description(f7):
    assert PointAssignment.from_values(f7, [-1, "1/2"]).describe() == ["6", "4"]


def test_ring_axioms_over_f7(f7, rng):
    presentation = RingPresentation(("x", "y", "z"), f7)
    ring = presentation.ring
    for _ in range(1000):
        f, g, h = (random_polynomial(presentation, rng) for _ in range(3))
        assert arith("add", f, g) == arith("add", g, f)
        assert arith("mul", f, g) == arith("mul", g, f)
        assert arith("add", arith("add", f, g), h) == arith("add", f, arith("add", g, h))
        assert arith("mul", arith("mul", f, g), h) == arith("mul", f, arith("mul", g, h))
        assert arith("mul", f, arith("add", g, h)) == arith(
            "add", arith("mul", f, g), arith("mul", f, h)
        )
        assert arith("add", f, ring.zero) == f
        assert arith("mul", f, ring.one) == f
        assert arith("sub", f, f) == ring.zero
        assert arith("pow", f, 2) == arith("mul", f, f)
        assert arith("pow", f, 0) == ring.one


@pytest.mark.parametrize("field_name", ["qq", "f7"])
def test_partial_derivative_obeys_leibniz(request, field_name, rng):
    presentation = RingPresentation(("x", "y", "z"), request.getfixturevalue(field_name))
    for _ in range(200):
        f = random_polynomial(presentation, rng, max_degree=4)
        g = random_polynomial(presentation, rng, max_degree=4)
        for var in range(3):
            assert partial_derivative(f * g, var) == (
                partial_derivative(f, var) * g + f * partial_derivative(g, var)
            )
            assert partial_derivative(f + g, var) == (
                partial_derivative(f, var) + partial_derivative(g, var)
            )


def _random_homogeneous(presentation, grading, degree, rng):
    ring = presentation.ring
    monomials = [
        exponents
        for exponents in product(range(5), repeat=presentation.ngens)
        if grading.monomial_degree(exponents) == degree
    ]
    poly = ring.zero
    for exponents in rng.sample(monomials, min(3, len(monomials))):
        coefficient = presentation.field.convert(rng.randint(1, 6))
        poly += ring.from_dict({exponents: coefficient})
    return poly


@pytest.mark.parametrize(
    "weights",
    [
        {"x": 1, "y": 2, "z": 3},
        {"x": (1, 0), "y": (0, 1), "z": (1, 1)},
    ],
)
def test_weighted_degree_is_additive(f7, rng, weights):
    presentation = RingPresentation(("x", "y", "z"), f7)
    grading = Grading.from_mapping(presentation, weights)
    degrees = sorted(
        {grading.monomial_degree(e) for e in product(range(3), repeat=3) if any(e)}
    )
    for _ in range(100):
        a, b = rng.choice(degrees), rng.choice(degrees)
        f = _random_homogeneous(presentation, grading, a, rng)
        g = _random_homogeneous(presentation, grading, b, rng)
        assert weighted_degree(f, grading) == a
        assert weighted_degree(g, grading) == b
        assert weighted_degree(f * g, grading) == tuple(i + j for i, j in zip(a, b))
