"""
Operações sobre polinômios esparsos exatos: aritmética com verificação de anel,
avaliação em pontos racionais, derivadas parciais, graus ponderados e
substituição simultânea de variáveis.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence, Tuple, Union

from sympy.polys.rings import PolyElement

from src.algebra.fields import CoefficientField, Scalar
from src.algebra.rings import RingMismatchError, RingPresentation

logger = logging.getLogger(__name__)

Polynomial = PolyElement
DegreeVector = Tuple[int, ...]

INHOMOGENEOUS = "inhomogeneous"

ARITH_OPS = ("add", "sub", "mul", "pow")


class GradingError(ValueError):
    """Exceção levantada quando um grau ponderado não está definido."""

    pass


@dataclass(frozen=True)
class Grading:
    """Um vetor de graus (de comprimento comum r) para cada variável do anel."""

    variables: Tuple[str, ...]
    degrees: Tuple[DegreeVector, ...]

    def __post_init__(self):
        if len(self.variables) != len(self.degrees):
            raise GradingError("Cada variável precisa de exatamente um vetor de graus")
        lengths = {len(vector) for vector in self.degrees}
        if len(lengths) > 1 or 0 in lengths:
            raise GradingError(f"Vetores de graus com comprimentos diferentes: {lengths}")

    @property
    def rank(self) -> int:
        return len(self.degrees[0])

    @classmethod
    def from_mapping(
        cls,
        presentation: RingPresentation,
        weights: Mapping[str, Union[int, Sequence[int]]],
    ) -> "Grading":
        """
        Monta a graduação a partir de um dicionário variável -> grau.

        Args:
            presentation: Anel graduado
            weights: Grau inteiro (r=1) ou vetor de graus por variável

        Raises:
            GradingError: Variável sem grau ou variável desconhecida
        """
        unknown = set(weights) - set(presentation.variables)
        if unknown:
            raise GradingError(f"Variáveis desconhecidas na graduação: {sorted(unknown)}")
        missing = [name for name in presentation.variables if name not in weights]
        if missing:
            raise GradingError(f"Variáveis sem grau: {missing}")
        degrees = []
        for name in presentation.variables:
            weight = weights[name]
            vector = (weight,) if isinstance(weight, int) else tuple(weight)
            degrees.append(tuple(int(w) for w in vector))
        return cls(presentation.variables, tuple(degrees))

    def monomial_degree(self, monomial: Sequence[int]) -> DegreeVector:
        total = [0] * self.rank
        for exponent, vector in zip(monomial, self.degrees):
            if exponent:
                for k, w in enumerate(vector):
                    total[k] += exponent * w
        return tuple(total)


@dataclass(frozen=True)
class PointAssignment:
    """Ponto racional: um elemento do corpo para cada variável do anel ambiente."""

    field: CoefficientField
    values: Tuple

    @classmethod
    def from_values(
        cls, field: CoefficientField, values: Sequence[Scalar]
    ) -> "PointAssignment":
        return cls(field, tuple(field.convert(v) for v in values))

    def __len__(self):
        return len(self.values)

    def describe(self) -> list:
        return [self.field.format(v) for v in self.values]


def arith(op: str, f: Polynomial, g: Union[Polynomial, int]) -> Polynomial:
    """
    Aritmética exata entre polinômios do mesmo anel.

    Args:
        op: add, sub, mul ou pow
        f: Primeiro operando
        g: Segundo operando (expoente inteiro para pow)

    Raises:
        RingMismatchError: Operandos de anéis diferentes
    """
    if op not in ARITH_OPS:
        raise ValueError(f"Operação desconhecida: {op}")
    if op == "pow":
        if not isinstance(g, int) or g < 0:
            raise ValueError(f"Expoente inválido: {g!r}")
        return f**g
    if f.ring != g.ring:
        raise RingMismatchError(f"Anéis diferentes: {f.ring.symbols} e {g.ring.symbols}")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    return f * g


def evaluate(f: Polynomial, point: PointAssignment):
    """
    Valor de f no ponto (homomorfismo de anéis no corpo de coeficientes).

    Raises:
        RingMismatchError: Ponto com número errado de coordenadas
    """
    if len(point) != f.ring.ngens:
        raise RingMismatchError(
            f"Ponto com {len(point)} coordenadas para {f.ring.ngens} variáveis"
        )
    domain = f.ring.domain
    total = domain.zero
    for monomial, coeff in f.iterterms():
        value = coeff
        for exponent, coordinate in zip(monomial, point.values):
            if exponent:
                value *= coordinate**exponent
        total += value
    return total


def partial_derivative(f: Polynomial, var: int) -> Polynomial:
    """Derivada parcial formal em relação à variável de índice var."""
    if not 0 <= var < f.ring.ngens:
        raise IndexError(f"Índice de variável fora do intervalo: {var}")
    # Em característica p o sympy pode guardar coeficientes nulos (p*c)
    return f.ring.from_dict({m: c for m, c in f.diff(f.ring.gens[var]).items() if c})


def weighted_degree(f: Polynomial, grading: Grading) -> Union[DegreeVector, str]:
    """
    Grau ponderado de f, ou INHOMOGENEOUS se os termos tiverem graus distintos.

    Raises:
        GradingError: f nulo ou graduação de outro anel
    """
    if not f:
        raise GradingError("O polinômio nulo não tem grau")
    if len(grading.degrees) != f.ring.ngens:
        raise GradingError("Graduação incompatível com o anel do polinômio")
    degrees = {grading.monomial_degree(m) for m in f.itermonoms()}
    if len(degrees) > 1:
        return INHOMOGENEOUS
    return degrees.pop()


def substitute(
    f: Polynomial, mapping: Mapping[Union[str, int], Polynomial]
) -> Polynomial:
    """
    Substituição simultânea x_i -> mapping[x_i]; as demais variáveis ficam fixas.

    Args:
        f: Polinômio
        mapping: Nome ou índice da variável -> polinômio do mesmo anel
    """
    ring = f.ring
    names = [str(s) for s in ring.symbols]
    replacements = []
    for key, value in mapping.items():
        index = names.index(key) if isinstance(key, str) else key
        if value.ring != ring:
            raise RingMismatchError("Substituição com polinômio de outro anel")
        replacements.append((ring.gens[index], value))
    if not replacements:
        return f
    return f.compose(replacements)


def partial_degree(f: Polynomial, indices: Iterable[int]) -> int:
    """Grau total de f nas variáveis indicadas (ex.: grau em T)."""
    indices = tuple(indices)
    return max((sum(m[i] for i in indices) for m in f.itermonoms()), default=0)
