"""
Ideais de uma apresentação R = K[x]/J e os procedimentos de decisão
construídos sobre bases de Gröbner: forma normal, pertinência (com
testemunha), pertinência ao radical, quociente de ideais, saturação,
eliminação, dimensão de Krull e sequências regulares.

Toda conta em R é feita no anel ambiente adjuntando os geradores de J.
"""

import logging
import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.parser import format_polynomial
from src.algebra.rings import BlockOrder, RingPresentation
from src.engine.groebner import EngineLimits, GroebnerBasis, buchberger

logger = logging.getLogger(__name__)


class UnitIdealError(ValueError):
    """Exceção levantada quando uma operação exige um ideal próprio."""

    pass


class IdealHandle:
    """
    Ideal I = (geradores) de R. A base de Gröbner (de I + J no anel ambiente)
    é calculada sob demanda, uma única vez.
    """

    def __init__(
        self,
        presentation: RingPresentation,
        generators: Iterable = (),
        limits: Optional[EngineLimits] = None,
    ):
        self.presentation = presentation
        coerced = (presentation.coerce(g) for g in generators)
        self.generators: Tuple[PolyElement, ...] = tuple(coerced)
        self.limits = limits
        self._basis: Optional[GroebnerBasis] = None
        self._tracked: Optional[GroebnerBasis] = None
        self._lock = threading.Lock()

    @property
    def ring(self):
        return self.presentation.ring

    @property
    def ambient_generators(self) -> Tuple[PolyElement, ...]:
        """Geradores de I seguidos das relações definidoras de R."""
        return self.generators + self.presentation.relations

    def _compute(self, track: bool) -> GroebnerBasis:
        return buchberger(
            [(g,) for g in self.ambient_generators],
            self.ring,
            rank=1,
            limits=self.limits or EngineLimits.from_config(),
            track=track,
        )

    def basis(self) -> GroebnerBasis:
        with self._lock:
            if self._basis is None:
                self._basis = self._tracked or self._compute(track=False)
        return self._basis

    def tracked_basis(self) -> GroebnerBasis:
        """Base com cofatores sobre os geradores (para testemunhas)."""
        with self._lock:
            if self._tracked is None:
                self._tracked = self._compute(track=True)
                if self._basis is None:
                    self._basis = self._tracked
        return self._tracked

    def with_generators(self, extra: Iterable) -> "IdealHandle":
        return IdealHandle(
            self.presentation,
            list(self.generators) + [self.presentation.coerce(e) for e in extra],
            self.limits,
        )

    def describe(self) -> List[str]:
        return [format_polynomial(g) for g in self.generators]

    def __repr__(self):
        return f"IdealHandle({', '.join(self.describe())} em {self.presentation.describe()})"


@dataclass(frozen=True)
class MembershipResult:
    """
    Resultado de f ∈ I. Quando verdadeiro, f = sum(a_i * g_i) + sum(c_j * r_j)
    exatamente no anel ambiente (g_i geradores de I, r_j relações de R).
    """

    member: bool
    remainder: PolyElement
    coefficients: Optional[Tuple[PolyElement, ...]] = None
    relation_coefficients: Optional[Tuple[PolyElement, ...]] = None

    def __bool__(self):
        return self.member

    def verify(self, f: PolyElement, ideal: IdealHandle) -> bool:
        """Reconstrói f a partir da testemunha (igualdade exata no anel ambiente)."""
        if not self.member or self.coefficients is None:
            return False
        total = f.ring.zero
        for a, g in zip(self.coefficients, ideal.generators):
            total += a * g
        for c, r in zip(self.relation_coefficients, ideal.presentation.relations):
            total += c * r
        return total == f

    def reduced_coefficients(self, ideal: IdealHandle) -> Tuple[PolyElement, ...]:
        """Coeficientes a_i reduzidos módulo J (testemunha lida em R)."""
        return tuple(ideal.presentation.reduce(a) for a in self.coefficients)


def groebner(ideal: IdealHandle) -> List[PolyElement]:
    """Base de Gröbner reduzida de I + J (lista mônica, determinística)."""
    return ideal.basis().polynomials


def normal_form(f, ideal: IdealHandle) -> PolyElement:
    """Resto completamente reduzido de f módulo I + J."""
    return ideal.basis().normal_form(ideal.presentation.coerce(f))


def ideal_member(f, ideal: IdealHandle, witness: bool = True) -> MembershipResult:
    """
    Decide f ∈ I em R e, opcionalmente, devolve a combinação testemunha.

    Args:
        f: Polinômio (ou texto)
        ideal: Ideal de R
        witness: Calcula cofatores (mais caro)

    Returns:
        MembershipResult
    """
    poly = ideal.presentation.coerce(f)
    remainder = normal_form(poly, ideal)
    if remainder:
        return MembershipResult(False, remainder)
    if not witness:
        return MembershipResult(True, remainder)
    quotients = ideal.tracked_basis().lift((poly,))
    n = len(ideal.generators)
    return MembershipResult(
        True, remainder, tuple(quotients[:n]), tuple(quotients[n:])
    )


def lift(f, ideal: IdealHandle) -> Optional[Tuple[PolyElement, ...]]:
    """Coeficientes sobre os geradores de I (módulo J), ou None se f ∉ I."""
    result = ideal_member(f, ideal)
    if not result.member:
        return None
    return result.reduced_coefficients(ideal)


def is_unit_ideal(ideal: IdealHandle) -> bool:
    return ideal.basis().is_unit


def ideal_equal(first: IdealHandle, second: IdealHandle) -> bool:
    """Igualdade de ideais pela comparação das bases reduzidas."""
    if first.ring != second.ring:
        return False
    return first.basis() == second.basis()


def _adjoin_first(presentation: RingPresentation, stem: str) -> Tuple[RingPresentation, str]:
    """Anel K[t, x] com t em primeiro lugar e ordem de eliminação para t."""
    name = presentation.fresh_name(stem)
    extended = RingPresentation(
        (name,) + presentation.variables,
        presentation.field,
        order=presentation.order,
        monomial_key=BlockOrder([0]),
    )
    return extended, name


def _lift_to(poly: PolyElement, target) -> PolyElement:
    return target.from_dict({(0,) + m: c for m, c in poly.iterterms()})


def _drop_first(poly: PolyElement, target) -> PolyElement:
    return target.from_dict({m[1:]: c for m, c in poly.iterterms()})


def _eliminate_first(
    presentation: RingPresentation,
    extended: RingPresentation,
    generators: Sequence[PolyElement],
    limits: Optional[EngineLimits],
) -> List[PolyElement]:
    basis = buchberger(
        [(g,) for g in generators],
        extended.ring,
        rank=1,
        limits=limits or EngineLimits.from_config(),
    )
    return [
        _drop_first(g, presentation.ring)
        for g in basis.polynomials
        if all(m[0] == 0 for m in g.itermonoms())
    ]


def radical_member(f, ideal: IdealHandle) -> bool:
    """
    f ∈ rad(I) se e somente se 1 ∈ I + (1 - y f) com uma variável nova y.
    """
    presentation = ideal.presentation
    poly = presentation.coerce(f)
    name = presentation.fresh_name("y")
    extended = presentation.extend([name])
    y = extended.gen(name)
    generators = [extended.coerce(g) for g in ideal.generators]
    generators.append(extended.ring.one - y * extended.coerce(poly))
    result = is_unit_ideal(IdealHandle(extended, generators, ideal.limits))
    logger.debug(f"Pertinência ao radical: {result}")
    return result


def ideal_quotient(ideal: IdealHandle, f) -> IdealHandle:
    """
    (I : f) = {g : g f ∈ I}, via I ∩ (f) = (t I + (1 - t) f) ∩ K[x]
    seguido da divisão exata por f.

    Raises:
        ValueError: f nulo
    """
    presentation = ideal.presentation
    poly = presentation.coerce(f)
    if not poly:
        raise ValueError("O quociente por zero não está definido")
    extended, _ = _adjoin_first(presentation, "t")
    t = extended.ring.gens[0]
    lifted_f = _lift_to(poly, extended.ring)
    generators = [t * _lift_to(g, extended.ring) for g in ideal.ambient_generators]
    generators.append((extended.ring.one - t) * lifted_f)

    quotient = []
    for h in _eliminate_first(presentation, extended, generators, ideal.limits):
        q, r = h.div(poly)
        if r:
            raise ArithmeticError("Elemento da interseção não é múltiplo de f")
        quotient.append(q)
    return IdealHandle(presentation, quotient, ideal.limits)


def saturation(ideal: IdealHandle, f) -> IdealHandle:
    """(I : f^∞) = (I + (1 - y f)) ∩ K[x]."""
    presentation = ideal.presentation
    poly = presentation.coerce(f)
    extended, _ = _adjoin_first(presentation, "y")
    y = extended.ring.gens[0]
    generators = [_lift_to(g, extended.ring) for g in ideal.ambient_generators]
    generators.append(extended.ring.one - y * _lift_to(poly, extended.ring))
    saturated = _eliminate_first(presentation, extended, generators, ideal.limits)
    return IdealHandle(presentation, saturated, ideal.limits)


def is_regular_pair(f1, f2, presentation: RingPresentation, limits=None) -> bool:
    """
    (f1, f2) é uma sequência regular em R (domínio, por hipótese do chamador):
    f1 ≠ 0 em R e (f1) : f2 = (f1).
    """
    first = presentation.coerce(f1)
    if presentation.is_zero(first):
        return False
    principal = IdealHandle(presentation, [first], limits)
    quotient = ideal_quotient(principal, f2)
    # (f1) ⊆ ((f1) : f2) sempre; basta a outra inclusão
    result = all(not normal_form(g, principal) for g in quotient.generators)
    logger.debug(f"Sequência regular ({f1}, {f2}): {result}")
    return result


def krull_dim(ideal: IdealHandle) -> int:
    """
    Dimensão de K[x]/(I + J): maior conjunto de variáveis independente
    módulo o ideal dos monômios líderes.

    Raises:
        UnitIdealError: I + J é o ideal unitário
    """
    basis = ideal.basis()
    if basis.is_unit:
        raise UnitIdealError("O ideal unitário não tem dimensão")
    supports = [
        frozenset(i for i, e in enumerate(m) if e) for m in basis.leading_monomials()
    ]
    n = ideal.presentation.ngens
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            chosen = frozenset(subset)
            if not any(support <= chosen for support in supports):
                return size
    return 0


def eliminate(ideal: IdealHandle, names: Iterable[str]) -> IdealHandle:
    """
    I ∩ K[variáveis restantes], como ideal do anel de polinômios nas
    variáveis restantes (as relações de R entram na eliminação).

    Args:
        ideal: Ideal de R
        names: Variáveis a eliminar
    """
    presentation = ideal.presentation
    removed = [presentation.variables[presentation.index(n)] for n in names]
    if not removed:
        return ideal
    kept = [v for v in presentation.variables if v not in removed]
    if not kept:
        raise ValueError("Não é possível eliminar todas as variáveis")
    order = removed + kept
    extended = RingPresentation(
        order,
        presentation.field,
        order=presentation.order,
        monomial_key=BlockOrder(range(len(removed))),
    )
    positions = [presentation.index(v) for v in order]

    def permute(poly: PolyElement) -> PolyElement:
        return extended.ring.from_dict(
            {tuple(m[p] for p in positions): c for m, c in poly.iterterms()}
        )

    basis = buchberger(
        [(permute(g),) for g in ideal.ambient_generators],
        extended.ring,
        rank=1,
        limits=ideal.limits or EngineLimits.from_config(),
    )
    remaining = RingPresentation(kept, presentation.field, order=presentation.order)
    width = len(removed)
    generators = [
        remaining.ring.from_dict({m[width:]: c for m, c in g.iterterms()})
        for g in basis.polynomials
        if all(not any(m[:width]) for m in g.itermonoms())
    ]
    logger.info(
        f"Eliminação de {removed}: {len(generators)} geradores em K[{', '.join(kept)}]"
    )
    return IdealHandle(remaining, generators, ideal.limits)
