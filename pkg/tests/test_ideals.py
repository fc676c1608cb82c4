from itertools import combinations

import pytest
from sympy.polys.groebnertools import groebner as reference_groebner
from sympy.polys.orderings import lex
from sympy.polys.rings import ring as sympy_ring

from src.algebra.rings import RingPresentation
from src.cech.families import quadric_ring
from src.engine.ideals import (
    IdealHandle,
    UnitIdealError,
    eliminate,
    groebner,
    ideal_equal,
    ideal_member,
    ideal_quotient,
    is_regular_pair,
    is_unit_ideal,
    krull_dim,
    lift,
    normal_form,
    radical_member,
    saturation,
)
from tests.helpers import nonzero_random_polynomial, random_polynomial


@pytest.fixture
def xyz(qq):
    return RingPresentation(("x", "y", "z"), qq)


def test_membership_witness_in_polynomial_ring(plane_qq, rng):
    ideal = IdealHandle(plane_qq, ["x^2 - y", "x*y - 1"])
    for _ in range(20):
        a = random_polynomial(plane_qq, rng)
        b = random_polynomial(plane_qq, rng)
        f = a * ideal.generators[0] + b * ideal.generators[1]
        result = ideal_member(f, ideal)
        assert result.member
        assert result.verify(f, ideal)


def test_non_member_has_remainder(plane_qq):
    ideal = IdealHandle(plane_qq, ["x^2 - y", "x*y - 1"])
    result = ideal_member("x + 1", ideal)
    assert not result
    assert result.remainder == normal_form("x + 1", ideal)
    assert result.coefficients is None
    assert not result.verify(plane_qq.coerce("x + 1"), ideal)


def test_membership_modulo_relations(qq):
    circle = RingPresentation(("x", "y"), qq, ["x^2 + y^2 - 1"])
    ideal = IdealHandle(circle, ["x - 1"])
    result = ideal_member("y^2", ideal)
    assert result.member
    assert result.verify(circle.coerce("y^2"), ideal)
    (a,) = result.reduced_coefficients(ideal)
    assert circle.is_zero(a * circle.coerce("x - 1") - circle.coerce("y^2"))
    assert lift("y^2", ideal) == result.reduced_coefficients(ideal)
    assert lift("y", ideal) is None


def test_membership_without_witness(plane_qq):
    ideal = IdealHandle(plane_qq, ["x"])
    result = ideal_member("x*y", ideal, witness=False)
    assert result.member and result.coefficients is None


def _power_oracle(f, ideal, bound=20):
    power = f
    for _ in range(bound):
        if ideal_member(power, ideal, witness=False).member:
            return True
        power = power * f
    return False


@pytest.mark.parametrize(
    "variables, generators, radical",
    [
        (("x", "y"), ["x^2", "y^3"], ["x", "y"]),
        (("x", "y", "z"), ["x*y", "z^2"], ["x*y", "z"]),
    ],
)
def test_radical_agrees_with_power_oracle(qq, rng, variables, generators, radical):
    presentation = RingPresentation(variables, qq)
    ideal = IdealHandle(presentation, generators)
    members = 0
    for k in range(50):
        if k % 2:
            f = presentation.ring.zero
            for g in radical:
                f += random_polynomial(presentation, rng, max_degree=1) * presentation.coerce(g)
        else:
            f = random_polynomial(presentation, rng, max_degree=2)
        oracle = _power_oracle(f, ideal)
        assert radical_member(f, ideal) == oracle
        members += oracle
    assert members >= 25


def test_unit_ideal_and_equality(plane_qq):
    assert is_unit_ideal(IdealHandle(plane_qq, ["x", "x - 1"]))
    first = IdealHandle(plane_qq, ["x + y", "x - y"])
    second = IdealHandle(plane_qq, ["x", "y"])
    assert ideal_equal(first, second)
    assert groebner(first) == groebner(second)


def test_ideal_quotient(plane_qq):
    quotient = ideal_quotient(IdealHandle(plane_qq, ["x*y"]), "x")
    assert ideal_equal(quotient, IdealHandle(plane_qq, ["y"]))
    with pytest.raises(ValueError):
        ideal_quotient(IdealHandle(plane_qq, ["x"]), "0")


def test_saturation(plane_qq):
    ideal = IdealHandle(plane_qq, ["x*(y - 1)", "x^2*(y - 1)^2"])
    assert ideal_equal(saturation(ideal, "x"), IdealHandle(plane_qq, ["y - 1"]))


def test_regular_pairs(xyz):
    assert is_regular_pair("x", "y", xyz)
    assert is_regular_pair("x*y - 1", "z", xyz)
    assert not is_regular_pair("x*y", "x*z", xyz)
    assert not is_regular_pair("0", "x", xyz)


def test_krull_dimension(xyz):
    assert krull_dim(IdealHandle(xyz, ["x*y"])) == 2
    assert krull_dim(IdealHandle(xyz, ["x", "y"])) == 1
    assert krull_dim(IdealHandle(xyz, [])) == 3
    with pytest.raises(UnitIdealError):
        krull_dim(IdealHandle(xyz, ["1"]))


def test_krull_dimension_of_worked_examples(qq):
    assert krull_dim(IdealHandle(quadric_ring(qq), [])) == 4
    cusp = RingPresentation(("x", "y", "z"), qq)
    assert krull_dim(IdealHandle(cusp, ["x^2 + y^3 + z^5"])) == 2


def _elimination_vanishes(generators, presentation, kept):
    """I ∩ K[kept] = 0, pela base lex da implementação de referência do sympy."""
    removed = [v for v in presentation.variables if v not in kept]
    order = removed + list(kept)
    target, *_ = sympy_ring(",".join(order), presentation.ring.domain, lex)
    positions = [presentation.index(v) for v in order]
    permuted = [
        target.from_dict({tuple(m[p] for p in positions): c for m, c in g.iterterms()})
        for g in generators
    ]
    width = len(removed)
    return not any(
        g and all(not any(m[:width]) for m in g.itermonoms())
        for g in reference_groebner(permuted, target)
    )


def test_krull_dimension_matches_independent_sets(f7, rng):
    presentation = RingPresentation(("x", "y", "z"), f7)
    checked = 0
    for _ in range(40):
        generators = [
            nonzero_random_polynomial(presentation, rng, max_degree=2)
            for _ in range(rng.randint(1, 2))
        ]
        ideal = IdealHandle(presentation, generators)
        if is_unit_ideal(ideal):
            continue
        oracle = max(
            size
            for size in range(4)
            for kept in combinations(presentation.variables, size)
            if _elimination_vanishes(generators, presentation, kept)
        )
        assert krull_dim(ideal) == oracle
        checked += 1
    assert checked >= 20


def test_eliminant_lies_in_the_ideal(f7, rng):
    presentation = RingPresentation(("t", "x", "y", "z"), f7)
    for _ in range(20):
        generators = [
            nonzero_random_polynomial(presentation, rng, max_degree=2) for _ in range(3)
        ]
        ideal = IdealHandle(presentation, generators)
        for names in (["t"], ["t", "x"]):
            image = eliminate(ideal, names)
            for g in image.generators:
                assert ideal_member(presentation.coerce(g), ideal, witness=False).member

def test_eliminate_twisted_cubic(qq):
    presentation = RingPresentation(("t", "x", "y", "z"), qq)
    ideal = IdealHandle(presentation, ["x - t", "y - t^2", "z - t^3"])
    image = eliminate(ideal, ["t"])
    assert image.presentation.variables == ("x", "y", "z")
    assert ideal_equal(image, IdealHandle(image.presentation, ["y - x^2", "z - x^3"]))


def test_eliminate_edge_cases(xyz):
    ideal = IdealHandle(xyz, ["x"])
    assert eliminate(ideal, []) is ideal
    with pytest.raises(ValueError):
        eliminate(ideal, ["x", "y", "z"])
    with pytest.raises(KeyError):
        eliminate(ideal, ["w"])
