import pytest

from src.engine.ideals import is_regular_pair
from src.forcing.derivations import build_lnd, check_kernel_sample, nilpotency_index
from src.forcing.families import affine_torsor_family, monomial_forcing, plane
from src.forcing.forcing_system import ForcingSystem, UnsupportedShapeError, verify_coaction
from tests.helpers import nonzero_random_polynomial, random_polynomial


@pytest.fixture
def torsor(qq):
    return affine_torsor_family(1, 1, qq)


def test_derivation_kills_the_relation(torsor):
    derivation = build_lnd(torsor)
    assert derivation.warnings == []
    image = derivation(torsor.forcing_relations[0])
    assert derivation.is_zero_in_algebra(image)


def test_images_of_t_variables(torsor):
    derivation = build_lnd(torsor)
    algebra = torsor.algebra
    assert derivation(algebra.gen("T1")) == algebra.coerce("y")
    assert derivation(algebra.gen("T2")) == algebra.coerce("-x")
    assert not derivation(algebra.coerce("x^3*y + 2"))


def test_leibniz_rule_on_random_elements(torsor, rng):
    derivation = build_lnd(torsor)
    algebra = torsor.algebra
    for _ in range(100):
        g = random_polynomial(algebra, rng, max_degree=3)
        h = random_polynomial(algebra, rng, max_degree=2)
        assert derivation(g * h) == g * derivation(h) + h * derivation(g)


@pytest.mark.parametrize("degree", range(0, 7))
def test_nilpotency_of_powers(torsor, degree):
    derivation = build_lnd(torsor)
    element = torsor.algebra.gen("T1") ** degree
    if degree == 0:
        assert nilpotency_index(derivation, element) == 1
    else:
        assert nilpotency_index(derivation, element) == degree + 1


def test_nilpotency_of_invariant(torsor):
    derivation = build_lnd(torsor)
    assert nilpotency_index(derivation, "x*T1 + y*T2") == 1
    assert derivation.power("T1^2", 2) == torsor.algebra.coerce("2*y^2")


def test_kernel_sample(torsor):
    derivation = build_lnd(torsor)
    invariant, moving = check_kernel_sample(derivation, ["x*T1 + y*T2", "T1"])
    assert invariant.derivative_vanishes and invariant.congruent_to_base
    assert invariant.representative == "1"
    assert not moving.derivative_vanishes and not moving.congruent_to_base


def test_warning_for_non_regular_pair(qq):
    system = ForcingSystem.from_ideal(plane(qq), ["x*y", "x"], "1")
    derivation = build_lnd(system)
    assert any("sequência regular" in w for w in derivation.warnings)


@pytest.mark.parametrize("r, s", [(r, s) for r in range(1, 5) for s in range(1, 6)])
def test_regular_monomial_pairs_in_characteristic_seven(f7, r, s):
    derivation = build_lnd(monomial_forcing(r, s, 0, 0, f7))
    # Só o aviso de característica positiva
    assert len(derivation.warnings) == 1
    assert "Característica 7" in derivation.warnings[0]


def test_derivation_needs_two_generators(qq):
    system = ForcingSystem.from_ideal(plane(qq), ["x"], "1")
    with pytest.raises(UnsupportedShapeError):
        build_lnd(system)


def test_coaction_on_random_regular_pairs_in_characteristic_seven(f7, rng):
    base = plane(f7)
    checked = 0
    for _ in range(400):
        f1, f2 = (
            nonzero_random_polynomial(base, rng, max_degree=2, terms=2) for _ in range(2)
        )
        if min(len(f1), len(f2)) < 2:
            continue
        if not is_regular_pair(f1, f2, base):
            continue
        f = random_polynomial(base, rng, max_degree=2)
        system = ForcingSystem.from_ideal(base, [f1, f2], f)
        assert verify_coaction(system)
        assert not any("sequência regular" in w for w in build_lnd(system).warnings)
        checked += 1
        if checked == 20:
            break
    assert checked == 20
