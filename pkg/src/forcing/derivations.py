"""
A derivação localmente nilpotente D = f_2 ∂/∂T_1 - f_1 ∂/∂T_2 da álgebra
forçante com dois geradores.
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.parser import format_polynomial
from src.algebra.polynomials import partial_degree, partial_derivative
from src.algebra.rings import BlockOrder
from src.engine.groebner import EngineLimits
from src.engine.ideals import is_regular_pair, normal_form
from src.forcing.forcing_system import ForcingError, ForcingSystem

logger = logging.getLogger(__name__)


@dataclass
class Derivation:
    """D(T_1) = f_2, D(T_2) = -f_1 e D nula nas variáveis de R."""

    system: ForcingSystem
    images: Tuple[PolyElement, PolyElement]
    warnings: List[str] = field(default_factory=list)

    def __call__(self, g) -> PolyElement:
        poly = self.system.lift(g)
        first, second = self.system.t_indices
        d1 = partial_derivative(poly, first)
        d2 = partial_derivative(poly, second)
        return self.images[0] * d1 + self.images[1] * d2

    def power(self, g, times: int) -> PolyElement:
        poly = self.system.lift(g)
        for _ in range(times):
            poly = self(poly)
        return poly

    def is_zero_in_algebra(self, g, limits: Optional[EngineLimits] = None) -> bool:
        return not normal_form(g, self.system.forcing_ideal(limits))


def build_lnd(
    system: ForcingSystem, limits: Optional[EngineLimits] = None
) -> Derivation:
    """
    Constrói D e certifica que D(relação forçante) reduz a zero em B.

    Raises:
        UnsupportedShapeError: Sistema que não é o caso ideal com n = 2
        ForcingError: D não anula a relação (dados inconsistentes)
    """
    system.require_ideal_case(2)
    f1, f2 = (system.lift(g) for g in system.generators)
    derivation = Derivation(system, (f2, -f1))

    if not is_regular_pair(system.generators[0], system.generators[1], system.base, limits):
        message = "f_1, f_2 não formam sequência regular: o núcleo pode ser maior que R"
        logger.warning(message)
        derivation.warnings.append(message)
    if system.base.field.characteristic:
        message = (
            f"Característica {system.base.field.characteristic}: "
            "a igualdade do núcleo com R só é garantida em característica zero"
        )
        logger.warning(message)
        derivation.warnings.append(message)

    image = derivation(system.forcing_relations[0])
    if not derivation.is_zero_in_algebra(image, limits):
        raise ForcingError(
            f"D(relação) = {format_polynomial(image)} não se anula em B"
        )
    return derivation


def nilpotency_index(
    derivation: Derivation, g, limits: Optional[EngineLimits] = None
) -> int:
    """
    Menor n >= 1 com D^n(g) = 0 em B. D baixa o grau em T exatamente em 1,
    logo n <= grau_T(g) + 1.
    """
    poly = derivation.system.lift(g)
    bound = partial_degree(poly, derivation.system.t_indices) + 1
    current = poly
    for n in range(1, bound + 1):
        current = derivation(current)
        if derivation.is_zero_in_algebra(current, limits):
            return n
    raise ArithmeticError(f"D^{bound}(g) não se anulou: cota de grau violada")


@dataclass(frozen=True)
class KernelSample:
    """Resultado da amostragem do núcleo de D para um elemento g."""

    element: str
    derivative_vanishes: bool
    congruent_to_base: bool
    representative: str


def check_kernel_sample(
    derivation: Derivation, samples: Iterable, limits: Optional[EngineLimits] = None
) -> List[KernelSample]:
    """
    Para cada g da amostra: D(g) ≡ 0 em B? g é congruente a um elemento de R?
    A segunda pergunta usa a forma normal sob uma ordem de eliminação das T.
    """
    system = derivation.system
    elimination = system.algebra.with_monomial_key(BlockOrder(system.t_indices))
    t_positions = system.t_indices

    results = []
    for sample in samples:
        poly = system.lift(sample)
        vanishes = derivation.is_zero_in_algebra(derivation(poly), limits)
        reduced = elimination.reduce(poly)
        t_free = all(not any(m[i] for i in t_positions) for m in reduced.itermonoms())
        results.append(
            KernelSample(
                format_polynomial(poly), vanishes, t_free, format_polynomial(reduced)
            )
        )
        logger.debug(f"Amostra do núcleo {format_polynomial(poly)}: D=0 {vanishes}, em R {t_free}")
    return results
