"""
Álgebras forçantes B = R[T_1..T_n]/(A T - s): construção da apresentação,
classificação das fibras sobre pontos racionais e os critérios de seção
(pertinência ao módulo/ideal) e de sobrejetividade (radical).
"""

import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.linalg import apply, rank, solve_affine
from src.algebra.parser import format_polynomial
from src.algebra.polynomials import PointAssignment, evaluate
from src.algebra.rings import RingPresentation
from src.engine.groebner import EngineLimits
from src.engine.ideals import IdealHandle, normal_form, radical_member
from src.engine.modules import solve_linear_over_ring

logger = logging.getLogger(__name__)

EMPTY = "Empty"
AFFINE = "Affine"


class ForcingError(ValueError):
    """Exceção levantada quando os dados forçantes são inconsistentes."""

    pass


class PointNotOnSpecError(ForcingError):
    """Exceção levantada quando o ponto não satisfaz as relações do anel."""

    pass


class UnsupportedShapeError(ForcingError):
    """Exceção levantada quando a operação exige outro formato (m, n)."""

    pass


class ForcingSystem:
    """
    Dados forçantes (A, s) sobre R e a apresentação de B = R[T]/(A T - s).

    Attributes:
        base: Anel R
        matrix: Linhas de A (polinômios de R)
        vector: Entradas de s
        t_names: Nomes das variáveis T_1..T_n em B
        algebra: Apresentação de B (variáveis de R seguidas das T)
        cocycle: Cociclo de Čech de origem, quando houver
    """

    def __init__(
        self,
        base: RingPresentation,
        matrix: Sequence[Sequence],
        vector: Sequence,
        t_names: Optional[Sequence[str]] = None,
        cocycle=None,
    ):
        rows = len(matrix)
        if rows != len(vector):
            raise ForcingError(
                f"A tem {rows} linhas mas s tem {len(vector)} entradas"
            )
        widths = {len(row) for row in matrix}
        if len(widths) != 1 or 0 in widths:
            raise ForcingError(f"Linhas de A com comprimentos inválidos: {sorted(widths)}")
        n = widths.pop()

        self.base = base
        self.matrix: Tuple[Tuple[PolyElement, ...], ...] = tuple(
            tuple(base.coerce(a) for a in row) for row in matrix
        )
        self.vector: Tuple[PolyElement, ...] = tuple(base.coerce(x) for x in vector)
        self.cocycle = cocycle

        if t_names is None:
            taken: List[str] = []
            for k in range(1, n + 1):
                taken.append(base.fresh_name(f"T{k}", taken))
            t_names = taken
        if len(t_names) != n:
            raise ForcingError(f"Esperados {n} nomes de variáveis T, recebidos {len(t_names)}")
        self.t_names = tuple(t_names)

        extended = base.extend(self.t_names)
        ts = [extended.gen(name) for name in self.t_names]
        rows_in_b = []
        for row, target in zip(self.matrix, self.vector):
            relation = -extended.coerce(target)
            for a, t in zip(row, ts):
                relation += extended.coerce(a) * t
            rows_in_b.append(relation)
        self.forcing_relations: Tuple[PolyElement, ...] = tuple(rows_in_b)
        self.algebra = extended.quotient(rows_in_b)
        logger.debug(f"Álgebra forçante: {self.algebra.describe()}")

    @classmethod
    def from_ideal(
        cls, base: RingPresentation, generators: Sequence, f, t_names=None
    ) -> "ForcingSystem":
        """Caso ideal: a única relação f_1 T_1 + ... + f_n T_n + f = 0."""
        generators = [base.coerce(g) for g in generators]
        return cls(base, [generators], [-base.coerce(f)], t_names)

    @property
    def m(self) -> int:
        return len(self.matrix)

    @property
    def n(self) -> int:
        return len(self.t_names)

    @property
    def is_ideal_case(self) -> bool:
        return self.m == 1

    def require_ideal_case(self, n: Optional[int] = None) -> None:
        if not self.is_ideal_case or (n is not None and self.n != n):
            expected = f"m=1, n={n}" if n is not None else "m=1"
            raise UnsupportedShapeError(
                f"Operação exige {expected}; sistema tem m={self.m}, n={self.n}"
            )

    @property
    def generators(self) -> Tuple[PolyElement, ...]:
        """f_1..f_n do caso ideal."""
        self.require_ideal_case()
        return self.matrix[0]

    @property
    def target(self) -> PolyElement:
        """f do caso ideal (s = -f)."""
        self.require_ideal_case()
        return -self.vector[0]

    @property
    def t_indices(self) -> Tuple[int, ...]:
        offset = self.base.ngens
        return tuple(range(offset, offset + self.n))

    def t_gens(self) -> List[PolyElement]:
        return [self.algebra.gen(name) for name in self.t_names]

    def lift(self, poly) -> PolyElement:
        """Imagem em B (anel ambiente) de um elemento de R ou de B."""
        return self.algebra.coerce(poly)

    def forcing_ideal(self, limits: Optional[EngineLimits] = None) -> IdealHandle:
        """Ideal nulo de B: sua base de Gröbner é a das relações de B."""
        return IdealHandle(self.algebra, (), limits)

    def to_document(self) -> dict:
        return {
            "ring": self.base.to_document(),
            "matrix": [[format_polynomial(a) for a in row] for row in self.matrix],
            "vector": [format_polynomial(x) for x in self.vector],
            "t_names": list(self.t_names),
        }

    def __repr__(self):
        return f"ForcingSystem({self.algebra.describe()})"


def build_forcing(
    base: RingPresentation, matrix: Sequence[Sequence], vector: Sequence
) -> ForcingSystem:
    """
    Constrói a apresentação de B = R[T_1..T_n]/(A T - s).

    Raises:
        ForcingError: Dimensões inconsistentes
    """
    system = ForcingSystem(base, matrix, vector)
    logger.info(f"Sistema forçante {system.m}x{system.n} sobre {base.describe()}")
    return system


@dataclass(frozen=True)
class FiberClass:
    """Fibra sobre um ponto racional: vazia ou um subespaço afim."""

    tag: str
    dimension: Optional[int] = None
    particular: Optional[Tuple] = None
    directions: Tuple[Tuple, ...] = field(default_factory=tuple)

    @property
    def is_empty(self) -> bool:
        return self.tag == EMPTY

    def to_document(self, base_field) -> dict:
        if self.is_empty:
            return {"tag": EMPTY}
        return {
            "tag": AFFINE,
            "dimension": self.dimension,
            "particular": [base_field.format(v) for v in self.particular],
            "directions": [[base_field.format(v) for v in d] for d in self.directions],
        }


def check_on_spec(presentation: RingPresentation, point: PointAssignment) -> None:
    """
    Raises:
        PointNotOnSpecError: Alguma relação definidora não se anula no ponto
    """
    if len(point) != presentation.ngens:
        raise PointNotOnSpecError(
            f"Ponto com {len(point)} coordenadas para {presentation.ngens} variáveis"
        )
    for relation in presentation.relations:
        if evaluate(relation, point):
            raise PointNotOnSpecError(
                f"O ponto {point.describe()} não anula {format_polynomial(relation)}"
            )


def evaluated_system(system: ForcingSystem, point: PointAssignment):
    """(A(P), s(P)) sobre o corpo de coeficientes."""
    matrix = [[evaluate(a, point) for a in row] for row in system.matrix]
    vector = [evaluate(x, point) for x in system.vector]
    return matrix, vector


def fiber_at(system: ForcingSystem, point: PointAssignment) -> FiberClass:
    """
    Classifica a fibra {t : A(P) t = s(P)} sobre o ponto racional P.

    Raises:
        PointNotOnSpecError: P não está em Spec R
    """
    check_on_spec(system.base, point)
    matrix, vector = evaluated_system(system, point)
    domain = system.base.field.domain
    solution = solve_affine(matrix, vector, system.n, domain)
    if solution is None:
        return FiberClass(EMPTY)

    # Confere a solução e o posto de forma independente
    for direction in solution.kernel:
        shifted = [a + b for a, b in zip(solution.particular, direction)]
        if apply(matrix, shifted, domain) != list(vector):
            raise ArithmeticError("Solução da fibra não confere")
    expected = system.n - rank(matrix, system.n, domain)
    if expected != solution.dimension:
        raise ArithmeticError("Dimensão da fibra difere de n - posto")
    return FiberClass(AFFINE, solution.dimension, solution.particular, solution.kernel)


@dataclass(frozen=True)
class SectionResult:
    exists: bool
    witness: Optional[Tuple[PolyElement, ...]] = None

    def __bool__(self):
        return self.exists


def has_section(system: ForcingSystem, limits: Optional[EngineLimits] = None) -> SectionResult:
    """
    Existe seção B -> R (T_i -> t_i) se e somente se A t = s tem solução em R.
    """
    witness = solve_linear_over_ring(system.matrix, system.vector, system.base, limits)
    if witness is None:
        return SectionResult(False)
    return SectionResult(True, witness)


def is_surjective_over_base(
    system: ForcingSystem, limits: Optional[EngineLimits] = None
) -> bool:
    """
    Spec B -> Spec R é sobrejetivo se e somente se f ∈ rad(f_1..f_n).

    Raises:
        UnsupportedShapeError: Sistema fora do caso ideal
    """
    system.require_ideal_case()
    ideal = IdealHandle(system.base, system.generators, limits)
    return radical_member(system.target, ideal)


def verify_coaction(system: ForcingSystem, limits: Optional[EngineLimits] = None) -> bool:
    """
    Certifica a ação aditiva T_1 -> T_1 + f_2 W, T_2 -> T_2 - f_1 W:
    a relação transformada reduz a zero módulo a relação original em B[W].

    Raises:
        UnsupportedShapeError: Sistema que não é o caso ideal com n = 2
    """
    system.require_ideal_case(2)
    algebra = system.algebra
    w_name = algebra.fresh_name("W")
    extended = algebra.extend([w_name])
    w = extended.gen(w_name)
    f1, f2 = (extended.coerce(g) for g in system.generators)
    t1, t2 = (extended.gen(name) for name in system.t_names)

    relation = extended.coerce(system.forcing_relations[0])
    moved = relation.compose([(t1, t1 + f2 * w), (t2, t2 - f1 * w)])
    result = not normal_form(moved, IdealHandle(extended, (), limits))
    logger.debug(f"Coação verificada: {result}")
    return result
