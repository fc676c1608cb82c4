"""
Maquinário de característica p: ideais de colchete I^[q], pertinência
f^q ∈ I^[q] (testemunhas de fecho de Frobenius, multiplicador z = 1) e graus
ponderados de classes de Čech com dois geradores.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.polynomials import INHOMOGENEOUS, Grading, GradingError, weighted_degree
from src.engine.groebner import ComputationAborted
from src.engine.ideals import IdealHandle, ideal_member
from src.forcing.forcing_system import ForcingSystem

logger = logging.getLogger(__name__)

GROEBNER = "groebner"
LIFTED = "lifted"


class FrobeniusError(ValueError):
    """Exceção levantada para potências de Frobenius fora da característica."""

    pass


def characteristic_of(ideal: IdealHandle) -> int:
    p = ideal.presentation.field.characteristic
    if not p:
        raise FrobeniusError("Potências de Frobenius exigem característica p > 0")
    return p


def is_power_of(q: int, p: int) -> bool:
    if q < p:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def bracket_ideal(ideal: IdealHandle, q: int) -> IdealHandle:
    """
    I^[q] = (f_1^q, ..., f_n^q) para os geradores fixados de I.

    Raises:
        FrobeniusError: Característica zero ou q não é potência de p
    """
    p = characteristic_of(ideal)
    if not is_power_of(q, p):
        raise FrobeniusError(f"q = {q} não é potência da característica {p}")
    return IdealHandle(
        ideal.presentation, [g**q for g in ideal.generators], ideal.limits
    )


@dataclass
class FrobeniusLevel:
    """Resultado de f^q ∈ I^[q] para q = p^e."""

    e: int
    q: int
    member: Optional[bool]
    coefficients: Optional[Tuple[PolyElement, ...]] = None
    relation_coefficients: Optional[Tuple[PolyElement, ...]] = None
    method: Optional[str] = None
    error: Optional[str] = None


@dataclass
class FrobeniusReport:
    prime: int
    levels: List[FrobeniusLevel] = field(default_factory=list)

    @property
    def first_inclusion(self) -> Optional[int]:
        """Menor q com inclusão encontrada (None se nenhuma até e_max)."""
        for level in self.levels:
            if level.member:
                return level.q
        return None

    @property
    def is_monotone(self) -> bool:
        seen = False
        for level in self.levels:
            if level.member:
                seen = True
            elif seen and level.member is False:
                return False
        return True

    def summary(self) -> str:
        q = self.first_inclusion
        if q is None:
            return "inclusão de Frobenius não encontrada até e_max"
        return f"inclusão de Frobenius encontrada em q = {q}"


def verify_level(
    f: PolyElement, ideal: IdealHandle, level: FrobeniusLevel
) -> bool:
    """f^q = sum(a_i g_i^q) + sum(c_j r_j) exatamente no anel ambiente."""
    total = f.ring.zero
    for a, g in zip(level.coefficients, ideal.generators):
        total += a * g**level.q
    for c, r in zip(level.relation_coefficients, ideal.presentation.relations):
        total += c * r
    return total == f**level.q


def _lift_level(
    previous: FrobeniusLevel, p: int, ideal: IdealHandle
) -> FrobeniusLevel:
    # Frobenius é endomorfismo: (sum a g^q + sum c r)^p = sum a^p g^(qp) + sum c^p r^(p-1) r
    relations = ideal.presentation.relations
    return FrobeniusLevel(
        previous.e + 1,
        previous.q * p,
        True,
        tuple(a**p for a in previous.coefficients),
        tuple(c**p * r ** (p - 1) for c, r in zip(previous.relation_coefficients, relations)),
        LIFTED,
    )


def frobenius_member(
    f, ideal: IdealHandle, e_max: int, lift_witnesses: bool = True
) -> FrobeniusReport:
    """
    Testa f^q ∈ I^[q] para q = p^e, e = 1..e_max, com testemunha.

    Args:
        f: Elemento de R
        ideal: Ideal I com geradores fixados
        e_max: Maior expoente e testado
        lift_witnesses: Depois da primeira testemunha, obtém as seguintes
            elevando os cofatores à p-ésima potência

    Returns:
        FrobeniusReport (níveis abortados ficam com member=None)

    Raises:
        FrobeniusError: Característica zero ou relatório não monótono
    """
    if e_max < 1:
        raise FrobeniusError(f"e_max deve ser positivo: {e_max}")
    p = characteristic_of(ideal)
    poly = ideal.presentation.coerce(f)
    report = FrobeniusReport(p)

    previous: Optional[FrobeniusLevel] = None
    for e in range(1, e_max + 1):
        q = p**e
        if lift_witnesses and previous is not None and previous.member:
            level = _lift_level(previous, p, ideal)
        else:
            try:
                result = ideal_member(poly**q, bracket_ideal(ideal, q))
                level = FrobeniusLevel(
                    e,
                    q,
                    result.member,
                    result.coefficients,
                    result.relation_coefficients,
                    GROEBNER,
                )
            except ComputationAborted as exc:
                logger.error(f"Nível q = {q} abortado: {exc}")
                level = FrobeniusLevel(e, q, None, error=str(exc))
        if level.member and not verify_level(poly, ideal, level):
            raise FrobeniusError(f"Testemunha de Frobenius falhou em q = {q}")
        report.levels.append(level)
        previous = level
        logger.info(f"f^{q} ∈ I^[{q}]: {level.member} ({level.method})")

    if not report.is_monotone:
        raise FrobeniusError("Relatório de Frobenius não monótono")
    return report


def _homogeneous_degree(poly: PolyElement, grading: Grading, label: str) -> Tuple[int, ...]:
    degree = weighted_degree(poly, grading)
    if degree == INHOMOGENEOUS:
        raise GradingError(f"{label} não é homogêneo para a graduação")
    return degree


def class_degree(f, f1, f2, grading: Grading) -> Tuple[int, ...]:
    """
    Grau de f/(f1 f2): deg f - deg f1 - deg f2.

    Raises:
        GradingError: Algum dos três é nulo ou não homogêneo
    """
    degrees = [
        _homogeneous_degree(poly, grading, label)
        for poly, label in ((f, "f"), (f1, "f1"), (f2, "f2"))
    ]
    return tuple(a - b - c for a, b, c in zip(*degrees))


def degree_growth(
    f, f1, f2, grading: Grading, p: int, e_max: int
) -> List[Tuple[int, Tuple[int, ...]]]:
    """Graus q * deg(c) da classe puxada por Frobenius, q = p^e."""
    degree = class_degree(f, f1, f2, grading)
    return [(p**e, tuple(p**e * d for d in degree)) for e in range(1, e_max + 1)]


def equation_degrees(system: ForcingSystem, grading: Grading) -> List:
    """Grau ponderado de cada relação forçante (INHOMOGENEOUS quando for o caso)."""
    return [weighted_degree(r, grading) for r in system.forcing_relations]


def relation_degrees(system: ForcingSystem, grading: Grading) -> List:
    """Grau ponderado das relações definidoras de R, vistas em B."""
    return [
        weighted_degree(system.algebra.coerce(r), grading) for r in system.base.relations
    ]
