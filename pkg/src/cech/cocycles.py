"""
1-cociclos de Čech na cobertura U = D(f_1, ..., f_n) e sua tradução em
sistemas forçantes.

Convenção única de pares e sinais: para i < j (índices a partir de 1) a linha
(i, j) do sistema é f_j^m T_i - f_i^m T_j = b_ij, e a condição de cociclo é
b_ij f_k^m - b_ik f_j^m + b_jk f_i^m = 0 para i < j < k.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.parser import format_polynomial
from src.algebra.rings import RingPresentation
from src.engine.groebner import EngineLimits
from src.engine.ideals import IdealHandle, normal_form
from src.engine.modules import solve_linear_over_ring
from src.forcing.forcing_system import ForcingSystem

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class CocycleError(ValueError):
    """Exceção levantada quando os dados não satisfazem a condição de cociclo."""

    pass


class CechCocycle:
    """
    Representante (b_ij / (f_i^m f_j^m)) de uma classe em H^1(D(f_1..f_n), O).
    Apenas os pares i < j são guardados; pares ausentes valem zero.
    """

    def __init__(
        self,
        base: RingPresentation,
        generators: Sequence,
        exponent: int,
        numerators: Mapping[Pair, object],
    ):
        if exponent < 1:
            raise CocycleError(f"O expoente m deve ser >= 1, recebido {exponent}")
        self.base = base
        self.generators: Tuple[PolyElement, ...] = tuple(base.coerce(f) for f in generators)
        if len(self.generators) < 2:
            raise CocycleError("São necessários pelo menos dois geradores")
        self.exponent = exponent
        n = len(self.generators)
        self.numerators: Dict[Pair, PolyElement] = {}
        for (i, j), value in numerators.items():
            if not (1 <= i < j <= n):
                raise CocycleError(f"Par inválido ({i}, {j}) para {n} geradores")
            self.numerators[(i, j)] = base.coerce(value)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def pairs(self) -> List[Pair]:
        return list(combinations(range(1, self.n + 1), 2))

    def power(self, i: int) -> PolyElement:
        """f_i^m (índice a partir de 1)."""
        return self.generators[i - 1] ** self.exponent

    def b(self, i: int, j: int) -> PolyElement:
        """b_ij com a convenção antissimétrica b_ji = -b_ij."""
        if i == j:
            return self.base.ring.zero
        if i < j:
            return self.numerators.get((i, j), self.base.ring.zero)
        return -self.numerators.get((j, i), self.base.ring.zero)

    def scaled(self, factor) -> "CechCocycle":
        """Classe factor * c (mesmos denominadores)."""
        factor = self.base.coerce(factor)
        return CechCocycle(
            self.base,
            self.generators,
            self.exponent,
            {pair: factor * self.b(*pair) for pair in self.pairs},
        )

    def to_document(self) -> dict:
        return {
            "ring": self.base.to_document(),
            "generators": [format_polynomial(f) for f in self.generators],
            "m": self.exponent,
            "numerators": {
                f"{i},{j}": format_polynomial(self.b(i, j)) for i, j in self.pairs
            },
        }

    def __repr__(self):
        return f"CechCocycle(n={self.n}, m={self.exponent}, {self.base.describe()})"


@dataclass(frozen=True)
class CocycleCheck:
    holds: bool
    failing_triple: Optional[Tuple[int, int, int]] = None
    residue: Optional[PolyElement] = None

    def __bool__(self):
        return self.holds


def cocycle_residue(c: CechCocycle, i: int, j: int, k: int) -> PolyElement:
    """b_ij f_k^m - b_ik f_j^m + b_jk f_i^m reduzido módulo as relações de R."""
    expression = c.b(i, j) * c.power(k) - c.b(i, k) * c.power(j) + c.b(j, k) * c.power(i)
    return c.base.reduce(expression)


def check_cocycle(c: CechCocycle) -> CocycleCheck:
    """Verifica a condição de cociclo em todas as triplas i < j < k."""
    for i, j, k in combinations(range(1, c.n + 1), 3):
        residue = cocycle_residue(c, i, j, k)
        if residue:
            logger.info(
                f"Condição de cociclo falha em ({i}, {j}, {k}): "
                f"resíduo {format_polynomial(residue)}"
            )
            return CocycleCheck(False, (i, j, k), residue)
    return CocycleCheck(True)


def cech_to_forcing(c: CechCocycle) -> ForcingSystem:
    """
    Sistema forçante (n escolhe 2) x n do cociclo: a linha (i, j) tem f_j^m
    na coluna i, -f_i^m na coluna j e lado direito b_ij.

    Raises:
        CocycleError: A condição de cociclo não vale
    """
    check = check_cocycle(c)
    if not check:
        raise CocycleError(f"Condição de cociclo falha na tripla {check.failing_triple}")
    zero = c.base.ring.zero
    matrix, vector = [], []
    for i, j in c.pairs:
        row = [zero] * c.n
        row[i - 1] = c.power(j)
        row[j - 1] = -c.power(i)
        matrix.append(row)
        vector.append(c.b(i, j))
    return ForcingSystem(c.base, matrix, vector, cocycle=c)


@dataclass(frozen=True)
class CoboundaryResult:
    is_coboundary: bool
    witness: Optional[Tuple[PolyElement, ...]] = None

    def __bool__(self):
        return self.is_coboundary


def is_coboundary(c: CechCocycle, limits: Optional[EngineLimits] = None) -> CoboundaryResult:
    """
    Decide se c é um cobordo: existe t em R^n com f_j^m t_i - f_i^m t_j = b_ij.

    Raises:
        CocycleError: A condição de cociclo não vale
        ComputationAborted: Limite de recursos (distinto de "não é cobordo")
    """
    system = cech_to_forcing(c)
    witness = solve_linear_over_ring(system.matrix, system.vector, c.base, limits)
    if witness is None:
        return CoboundaryResult(False)
    for i, j in c.pairs:
        image = c.power(j) * witness[i - 1] - c.power(i) * witness[j - 1]
        if not c.base.is_zero(image - c.b(i, j)):
            raise ArithmeticError(f"Testemunha de cobordo falha no par ({i}, {j})")
    return CoboundaryResult(True, witness)


def coboundary_of(
    base: RingPresentation, generators: Sequence, exponent: int, t: Sequence
) -> CechCocycle:
    """O cobordo de t: b_ij = f_j^m t_i - f_i^m t_j."""
    powers = [base.coerce(f) ** exponent for f in generators]
    values = [base.coerce(x) for x in t]
    if len(values) != len(powers):
        raise CocycleError("t deve ter uma entrada por gerador")
    numerators = {
        (i, j): powers[j - 1] * values[i - 1] - powers[i - 1] * values[j - 1]
        for i, j in combinations(range(1, len(powers) + 1), 2)
    }
    return CechCocycle(base, generators, exponent, numerators)


def restrict_class(c: CechCocycle, extra: Iterable) -> CechCocycle:
    """
    Restrição da classe ao fechado definido por equações extras: numeradores
    e geradores reduzidos módulo o ideal definidor aumentado.

    Raises:
        CocycleError: A condição de cociclo falha após a restrição
    """
    extra = list(extra)
    if not extra:
        return c
    target = c.base.quotient(extra)
    restricted = CechCocycle(
        target,
        [target.reduce(f) for f in c.generators],
        c.exponent,
        {pair: target.reduce(c.b(*pair)) for pair in c.pairs},
    )
    check = check_cocycle(restricted)
    if not check:
        raise CocycleError(
            f"Restrição inconsistente: cociclo falha na tripla {check.failing_triple}"
        )
    logger.info(f"Classe restrita a {target.describe()}")
    return restricted


def _cocycle_of(system: ForcingSystem) -> CechCocycle:
    if system.cocycle is None:
        raise CocycleError("O sistema não foi construído a partir de um cociclo")
    return system.cocycle


@dataclass
class LocalizationReport:
    """Certificado de que B_{f_i} é um anel de polinômios em T_i sobre R_{f_i}."""

    index: int
    inverse_variable: str
    substitutions: Dict[str, str] = field(default_factory=dict)
    residuals: List[Tuple[Pair, bool]] = field(default_factory=list)

    @property
    def is_polynomial_ring(self) -> bool:
        return all(zero for _, zero in self.residuals)


def localize_presentation(
    system: ForcingSystem, i: int, limits: Optional[EngineLimits] = None
) -> LocalizationReport:
    """
    Adjunta y_i com y_i f_i - 1, elimina T_j = y_i^m (f_j^m T_i - b_ij) para
    j != i e verifica que todas as relações restantes reduzem a zero.

    Raises:
        CocycleError: Alguma relação não se anula (dados de cociclo quebrados)
    """
    c = _cocycle_of(system)
    if not 1 <= i <= c.n:
        raise CocycleError(f"Índice {i} fora de 1..{c.n}")
    algebra = system.algebra
    name = algebra.fresh_name(f"y{i}")
    # O anel de redução não contém as relações forçantes: elas são o que se verifica
    local = RingPresentation(
        algebra.variables + (name,), algebra.field, order=algebra.order
    )
    inverse = local.gen(name)
    local = local.with_relations(
        [local.coerce(r) for r in c.base.relations]
        + [inverse * local.coerce(c.generators[i - 1]) - local.ring.one]
    )
    t_gens = [local.gen(t) for t in system.t_names]
    y_power = inverse**c.exponent

    replacements = []
    report = LocalizationReport(i, name)
    for j in range(1, c.n + 1):
        if j == i:
            continue
        value = y_power * (local.coerce(c.power(j)) * t_gens[i - 1] - local.coerce(c.b(i, j)))
        replacements.append((t_gens[j - 1], value))
        report.substitutions[system.t_names[j - 1]] = format_polynomial(value)

    ideal = IdealHandle(local, (), limits)
    for pair, relation in zip(c.pairs, system.forcing_relations):
        substituted = local.coerce(relation).compose(replacements)
        report.residuals.append((pair, not normal_form(substituted, ideal)))

    if not report.is_polynomial_ring:
        failing = [pair for pair, zero in report.residuals if not zero]
        raise CocycleError(f"Relações não se anulam após a localização: {failing}")
    logger.info(f"B localizado em f_{i} é um anel de polinômios em {system.t_names[i - 1]}")
    return report


def transition_check(
    system: ForcingSystem, i: int, j: int, limits: Optional[EngineLimits] = None
) -> bool:
    """
    W_i - W_j = b_ij y_i^m y_j^m, com W_k = y_k^m T_k, módulo o ideal forçante
    e as duas relações de inversão.
    """
    c = _cocycle_of(system)
    if i == j or not (1 <= i <= c.n and 1 <= j <= c.n):
        raise CocycleError(f"Par de transição inválido ({i}, {j})")
    algebra = system.algebra
    yi_name = algebra.fresh_name(f"y{i}")
    yj_name = algebra.fresh_name(f"y{j}", [yi_name])
    extended = algebra.extend([yi_name, yj_name])
    yi, yj = extended.gen(yi_name), extended.gen(yj_name)
    extended = extended.quotient(
        [
            yi * extended.coerce(c.generators[i - 1]) - 1,
            yj * extended.coerce(c.generators[j - 1]) - 1,
        ]
    )
    yi, yj = extended.gen(yi_name), extended.gen(yj_name)
    m = c.exponent
    w_i = yi**m * extended.gen(system.t_names[i - 1])
    w_j = yj**m * extended.gen(system.t_names[j - 1])
    difference = w_i - w_j - extended.coerce(c.b(i, j)) * yi**m * yj**m
    result = not normal_form(difference, IdealHandle(extended, (), limits))
    logger.debug(f"Transição ({i}, {j}): {result}")
    return result
