"""
Motor de bases de Gröbner.

Um único algoritmo de Buchberger trabalha com vetores de polinômios (submódulos
de módulos livres R^r com ordem posição-sobre-termo); ideais são o caso r = 1.
Seleção normal (menor grau do mmc), desempate pelos índices dos geradores,
critério do produto (apenas r = 1) e critério da cadeia. Opcionalmente cada
elemento da base guarda seus cofatores em relação às entradas, o que permite
devolver testemunhas de pertinência.
"""

import heapq
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement, PolyRing

from src.config import EngineConfig, get_config

logger = logging.getLogger(__name__)

Vector = Tuple[PolyElement, ...]


class ComputationAborted(RuntimeError):
    """Exceção levantada quando um limite de recursos do motor é excedido."""

    def __init__(self, reason: str, pairs: int = 0, basis_size: int = 0):
        super().__init__(
            f"Computação abortada: {reason} (pares={pairs}, base={basis_size})"
        )
        self.reason = reason
        self.pairs = pairs
        self.basis_size = basis_size


@dataclass(frozen=True)
class EngineLimits:
    """Limites de recursos do Buchberger."""

    max_pairs: int = 100_000
    max_basis: int = 10_000
    max_degree: int = 400

    @classmethod
    def from_config(cls, config: Optional[EngineConfig] = None) -> "EngineLimits":
        config = config or get_config()
        return cls(config.max_pairs, config.max_basis, config.max_degree)


class _Element:
    """Vetor mônico da base com posição e monômio líder."""

    __slots__ = ("vector", "position", "monomial", "cofactors")

    def __init__(self, vector: Vector, position: int, monomial, cofactors):
        self.vector = vector
        self.position = position
        self.monomial = monomial
        self.cofactors = cofactors


def leading_position(vector: Sequence[PolyElement]) -> int:
    """Índice da primeira componente não nula (-1 para o vetor nulo)."""
    for position, component in enumerate(vector):
        if component:
            return position
    return -1


def _make_monic(ring: PolyRing, vector: Vector, cofactors):
    position = leading_position(vector)
    lc = vector[position].LC
    if lc == ring.domain.one:
        return _Element(vector, position, vector[position].LM, cofactors)
    inverse = ring.domain.quo(ring.domain.one, lc)
    vector = tuple(c.mul_ground(inverse) for c in vector)
    if cofactors is not None:
        cofactors = [c.mul_ground(inverse) for c in cofactors]
    return _Element(vector, position, vector[position].LM, cofactors)


def _reduce(
    ring: PolyRing,
    vector: Vector,
    basis: Sequence[_Element],
    ninputs: int = 0,
    track: bool = False,
):
    """
    Redução completa de um vetor pela base (divisão posição a posição).

    Returns:
        (resto, quocientes): o resto não tem termo divisível por um monômio
        líder da mesma posição; com track, vector - resto = sum(q_k * entrada_k)
    """
    current = list(vector)
    rank = len(current)
    remainder = [dict() for _ in range(rank)]
    quotients = [ring.zero] * ninputs if track else None
    by_position = {}
    for element in basis:
        by_position.setdefault(element.position, []).append(element)

    for position in range(rank):
        candidates = by_position.get(position, ())
        component = current[position]
        while component:
            monomial, coeff = component.LT
            divisor = None
            for element in candidates:
                shift = ring.monomial_div(monomial, element.monomial)
                if shift is not None:
                    divisor = element
                    break
            if divisor is None:
                remainder[position][monomial] = coeff
                component = component.copy()
                del component[monomial]
                current[position] = component
                continue
            term = (shift, coeff)
            for k in range(position, rank):
                if divisor.vector[k]:
                    current[k] = current[k] - divisor.vector[k].mul_term(term)
            if track:
                for k, cof in enumerate(divisor.cofactors):
                    if cof:
                        quotients[k] = quotients[k] + cof.mul_term(term)
            component = current[position]

    result = tuple(ring.from_dict(terms) if terms else ring.zero for terms in remainder)
    return result, quotients


class GroebnerBasis:
    """
    Base de Gröbner reduzida (imutável) de um submódulo de R^rank.

    Attributes:
        ring: Anel de polinômios ambiente (sympy PolyRing)
        rank: Posto do módulo livre (1 para ideais)
        vectors: Elementos da base, mônicos, ordenados por posição e monômio líder
        cofactors: Para cada elemento, coeficientes sobre as entradas (ou None)
        inputs: Geradores de entrada
    """

    def __init__(
        self,
        ring: PolyRing,
        rank: int,
        elements: Sequence[_Element],
        inputs: Sequence[Vector],
        pairs_processed: int = 0,
        zero_reductions: int = 0,
    ):
        self.ring = ring
        self.rank = rank
        self._elements = tuple(elements)
        self.vectors = tuple(e.vector for e in self._elements)
        self.inputs = tuple(inputs)
        tracked = all(e.cofactors is not None for e in self._elements)
        self.cofactors = (
            tuple(tuple(e.cofactors) for e in self._elements) if tracked else None
        )
        self.pairs_processed = pairs_processed
        self.zero_reductions = zero_reductions

    def __len__(self):
        return len(self.vectors)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rank == other.rank
            and self.vectors == other.vectors
        )

    def __hash__(self):
        return hash((self.rank, self.vectors))

    @property
    def polynomials(self) -> List[PolyElement]:
        """Elementos da base como polinômios (somente para ideais)."""
        if self.rank != 1:
            raise ValueError("A base é de um módulo de posto > 1")
        return [v[0] for v in self.vectors]

    @property
    def is_unit(self) -> bool:
        return self.rank == 1 and self.vectors == ((self.ring.one,),)

    @property
    def is_zero(self) -> bool:
        return not self.vectors

    def leading_monomials(self, position: int = 0) -> List[tuple]:
        return [e.monomial for e in self._elements if e.position == position]

    def _vector(self, value) -> Vector:
        if isinstance(value, PolyElement):
            value = (value,)
        vector = tuple(value)
        if len(vector) != self.rank:
            raise ValueError(f"Vetor de comprimento {len(vector)}, esperado {self.rank}")
        return vector

    def reduce(self, value) -> Vector:
        """Forma normal (resto completamente reduzido)."""
        remainder, _ = _reduce(self.ring, self._vector(value), self._elements)
        return remainder

    def normal_form(self, poly: PolyElement) -> PolyElement:
        return self.reduce((poly,))[0]

    def contains(self, value) -> bool:
        return not any(self.reduce(value))

    def lift(self, value) -> Optional[List[PolyElement]]:
        """
        Coeficientes a_k com value = sum(a_k * entrada_k), ou None se value
        não pertencer ao submódulo.

        Raises:
            ValueError: Base calculada sem rastreio de cofatores
        """
        if self.cofactors is None:
            raise ValueError("Base calculada sem rastreio de cofatores")
        remainder, quotients = _reduce(
            self.ring, self._vector(value), self._elements, len(self.inputs), True
        )
        if any(remainder):
            return None
        return quotients


def s_vector(ring: PolyRing, a: _Element, b: _Element, ninputs: int, track: bool):
    """S-vetor de dois elementos mônicos com a mesma posição líder."""
    lcm = ring.monomial_lcm(a.monomial, b.monomial)
    one = ring.domain.one
    shift_a = (ring.monomial_div(lcm, a.monomial), one)
    shift_b = (ring.monomial_div(lcm, b.monomial), one)
    vector = tuple(
        x.mul_term(shift_a) - y.mul_term(shift_b) for x, y in zip(a.vector, b.vector)
    )
    cofactors = None
    if track:
        cofactors = [
            x.mul_term(shift_a) - y.mul_term(shift_b)
            for x, y in zip(a.cofactors, b.cofactors)
        ]
    return vector, cofactors


def buchberger(
    generators: Sequence[Sequence[PolyElement]],
    ring: PolyRing,
    rank: int = 1,
    limits: Optional[EngineLimits] = None,
    track: bool = False,
) -> GroebnerBasis:
    """
    Calcula a base de Gröbner reduzida do submódulo gerado pelos vetores.

    Args:
        generators: Vetores de comprimento rank (tuplas de polinômios do anel)
        ring: Anel de polinômios ambiente
        rank: Posto do módulo livre
        limits: Limites de pares, tamanho da base e grau
        track: Guarda cofatores em relação às entradas (para testemunhas)

    Returns:
        GroebnerBasis reduzida e determinística

    Raises:
        ComputationAborted: Algum limite foi excedido
    """
    limits = limits or EngineLimits.from_config()
    inputs = []
    for generator in generators:
        vector = tuple(generator)
        if len(vector) != rank:
            raise ValueError(f"Gerador de comprimento {len(vector)}, esperado {rank}")
        for component in vector:
            if component.ring != ring:
                raise ValueError("Gerador fora do anel ambiente")
        inputs.append(vector)

    ninputs = len(inputs)
    basis: List[_Element] = []
    pending = set()
    heap = []
    order = ring.order

    def add(vector: Vector, cofactors) -> None:
        element = _make_monic(ring, vector, cofactors)
        index = len(basis)
        for i, other in enumerate(basis):
            if other.position != element.position:
                continue
            lcm = ring.monomial_lcm(other.monomial, element.monomial)
            if rank == 1 and lcm == ring.monomial_mul(other.monomial, element.monomial):
                continue
            pending.add((i, index))
            heapq.heappush(heap, (sum(lcm), index, i))
        basis.append(element)
        if len(basis) > limits.max_basis:
            raise ComputationAborted(
                f"base excedeu {limits.max_basis} elementos", processed, len(basis)
            )

    processed = 0
    zero_reductions = 0
    for k, vector in enumerate(inputs):
        if not any(vector):
            continue
        cofactors = None
        if track:
            cofactors = [ring.one if j == k else ring.zero for j in range(ninputs)]
        add(vector, cofactors)

    while heap:
        degree, j, i = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        processed += 1
        if processed > limits.max_pairs:
            raise ComputationAborted(
                f"mais de {limits.max_pairs} pares", processed, len(basis)
            )
        if degree > limits.max_degree:
            raise ComputationAborted(
                f"grau {degree} acima de {limits.max_degree}", processed, len(basis)
            )

        first, second = basis[i], basis[j]
        lcm = ring.monomial_lcm(first.monomial, second.monomial)
        if _chain_criterion(ring, basis, pending, i, j, lcm):
            continue

        vector, cofactors = s_vector(ring, first, second, ninputs, track)
        remainder, quotients = _reduce(ring, vector, basis, ninputs, track)
        if not any(remainder):
            zero_reductions += 1
            continue
        if track:
            cofactors = [c - q for c, q in zip(cofactors, quotients)]
        add(remainder, cofactors)

    elements = _interreduce(ring, _minimalize(ring, basis), ninputs, track)
    elements.sort(key=lambda e: (-e.position, order(e.monomial)), reverse=True)
    logger.debug(
        f"Buchberger: {len(elements)} elementos, {processed} pares, "
        f"{zero_reductions} reduções a zero"
    )
    return GroebnerBasis(ring, rank, elements, inputs, processed, zero_reductions)


def _chain_criterion(ring, basis, pending, i, j, lcm) -> bool:
    """Existe k com LM_k | mmc(i, j) cujos pares (i, k) e (j, k) já foram tratados."""
    position = basis[i].position
    for k, element in enumerate(basis):
        if k == i or k == j or element.position != position:
            continue
        if ring.monomial_div(lcm, element.monomial) is None:
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _minimalize(ring: PolyRing, basis: Sequence[_Element]) -> List[_Element]:
    kept: List[_Element] = []
    ordered = sorted(
        enumerate(basis),
        key=lambda item: (item[1].position, ring.order(item[1].monomial), item[0]),
    )
    for _, element in ordered:
        if all(
            other.position != element.position
            or ring.monomial_div(element.monomial, other.monomial) is None
            for other in kept
        ):
            kept.append(element)
    return kept


def _interreduce(
    ring: PolyRing, basis: Sequence[_Element], ninputs: int, track: bool
) -> List[_Element]:
    reduced = []
    for index, element in enumerate(basis):
        others = basis[:index] + basis[index + 1 :]
        # O monômio líder é preservado: a base é mínima
        leader = element.vector[element.position].LT
        tail = list(element.vector)
        tail[element.position] = element.vector[element.position] - ring.term_new(*leader)
        remainder, quotients = _reduce(ring, tuple(tail), others, ninputs, track)
        vector = list(remainder)
        vector[element.position] = vector[element.position] + ring.term_new(*leader)
        cofactors = None
        if track:
            cofactors = [c - q for c, q in zip(element.cofactors, quotients)]
        reduced.append(_make_monic(ring, tuple(vector), cofactors))
    return reduced


def check_basis(basis: GroebnerBasis) -> bool:
    """Verifica que todo S-vetor da base reduz a zero (critério de Buchberger)."""
    elements = basis._elements
    for i in range(len(elements)):
        for j in range(i + 1, len(elements)):
            if elements[i].position != elements[j].position:
                continue
            vector, _ = s_vector(basis.ring, elements[i], elements[j], 0, False)
            remainder, _ = _reduce(basis.ring, vector, elements)
            if any(remainder):
                return False
    return True
