"""
Critério jacobiano para álgebras forçantes B = R[T]/(sum f_i T_i + f):
matriz jacobiana em blocos, classificação de pontos racionais pelos casos
(1)-(4) com teste de posto como último recurso, o sistema linear do caso 4
e o ideal do lugar singular gerado pelos menores.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.linalg import AffineSolution, polynomial_determinant, rank, solve_affine
from src.algebra.parser import format_polynomial
from src.algebra.polynomials import PointAssignment, evaluate, partial_derivative
from src.engine.groebner import EngineLimits
from src.engine.ideals import IdealHandle, krull_dim
from src.forcing.forcing_system import ForcingSystem, PointNotOnSpecError, check_on_spec

logger = logging.getLogger(__name__)

CASE1_SMOOTH = "case1-smooth"
CASE1_SINGULAR = "case1-singular"
CASE2_EMPTY = "case2-empty"
CASE3_SINGULAR = "case3-singular"
CASE4_SINGULAR = "case4-singular"
RANK_TEST = "rank-test"

NONSINGULAR = "nonsingular"
SINGULAR = "singular"
EMPTY_FIBER = "empty-fiber"

FIELD_CAVEAT = (
    "Singularidade testada em pontos racionais sobre o corpo dado; "
    "o critério clássico supõe corpo algebricamente fechado"
)
SIGN_NOTE = (
    "Lado direito com sinal negativo: as derivadas de h em x se anulam "
    "exatamente quando sum t_i df_i/dx_j(P) = -df/dx_j(P)"
)


class SingularityError(ValueError):
    """Exceção levantada quando a classificação não se aplica ao dado."""

    pass


@dataclass(frozen=True)
class JacobianMatrix:
    """
    Matriz (k+1) x (m+n): linhas dg_1..dg_k (zeros nas colunas T) e a linha
    de h, com dh/dx_j = sum t_i df_i/dx_j + df/dx_j seguida de f_1..f_n.
    """

    system: ForcingSystem
    rows: Tuple[Tuple[PolyElement, ...], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), self.system.algebra.ngens

    @property
    def base_block(self) -> Tuple[Tuple[PolyElement, ...], ...]:
        """Bloco das relações de R restrito às colunas x."""
        width = self.system.base.ngens
        return tuple(row[:width] for row in self.rows[:-1])

    @property
    def h_row(self) -> Tuple[PolyElement, ...]:
        return self.rows[-1]

    def evaluate(self, point: PointAssignment) -> List[list]:
        return [[evaluate(entry, point) for entry in row] for row in self.rows]

    def describe(self) -> List[List[str]]:
        return [[format_polynomial(entry) for entry in row] for row in self.rows]


def jacobian(system: ForcingSystem) -> JacobianMatrix:
    """
    Raises:
        UnsupportedShapeError: Sistema fora do caso ideal
    """
    system.require_ideal_case()
    algebra = system.algebra
    relations = [algebra.coerce(g) for g in system.base.relations]
    relations.append(system.forcing_relations[0])
    rows = tuple(
        tuple(partial_derivative(g, j) for j in range(algebra.ngens)) for g in relations
    )
    return JacobianMatrix(system, rows)


@dataclass
class PointClassification:
    """Resultado da classificação de Q = (P, t)."""

    case: str
    verdict: str
    rank: Optional[int] = None
    codimension: Optional[int] = None
    base_rank: Optional[int] = None
    base_codimension: Optional[int] = None
    notes: List[str] = field(default_factory=list)

    def to_document(self) -> dict:
        return {
            "case": self.case,
            "verdict": self.verdict,
            "rank": self.rank,
            "codimension": self.codimension,
            "base_rank": self.base_rank,
            "base_codimension": self.base_codimension,
            "notes": list(self.notes),
        }


def base_dimension(system: ForcingSystem, limits: Optional[EngineLimits] = None) -> int:
    return krull_dim(IdealHandle(system.base, (), limits))


def default_algebra_dimension(
    system: ForcingSystem, limits: Optional[EngineLimits] = None
) -> int:
    """dim B = dim R + n - 1 (R e B domínios, relação forçante não nula)."""
    return base_dimension(system, limits) + system.n - 1


def classify_point(
    system: ForcingSystem,
    point: PointAssignment,
    dim_b: Optional[int] = None,
    dim_r: Optional[int] = None,
    limits: Optional[EngineLimits] = None,
) -> PointClassification:
    """
    Classifica Q = (P, t) em Spec B pelos casos (1)-(4); quando nenhum caso
    decide, compara o posto de J(Q) com a codimensão (m+n) - dim B.

    O caso 2 depende só de P: com f_i(P) = 0 e f(P) != 0 a fibra é vazia e
    nenhum Q existe. Ele é relatado quando o ponto traz apenas as coordenadas
    de R; um Q completo sobre essa fibra não está em Spec B.

    Args:
        system: Sistema forçante no caso ideal
        point: Coordenadas de Q (variáveis de R seguidas das T), ou só de P
        dim_b: Dimensão de B (padrão: dim R + n - 1)
        dim_r: Dimensão de R (padrão: calculada pela base de Gröbner)

    Raises:
        PointNotOnSpecError: Q não está em Spec B (ou P fora do caso 2 sem t)
    """
    system.require_ideal_case()
    base = system.base
    width = base.ngens
    if len(point) not in (width, system.algebra.ngens):
        raise PointNotOnSpecError(
            f"Q precisa de {system.algebra.ngens} coordenadas, recebeu {len(point)}"
        )
    p_point = PointAssignment(point.field, point.values[:width])
    check_on_spec(base, p_point)

    f_values = [evaluate(f, p_point) for f in system.generators]
    f_value = evaluate(system.target, p_point)
    empty_fiber = not any(f_values) and bool(f_value)
    if len(point) == width:
        if empty_fiber:
            logger.info(f"Fibra vazia sobre {p_point.describe()}")
            return PointClassification(CASE2_EMPTY, EMPTY_FIBER, notes=[FIELD_CAVEAT])
        raise PointNotOnSpecError(
            f"A fibra sobre {p_point.describe()} não é vazia: Q precisa das coordenadas T"
        )

    check_on_spec(system.algebra, point)

    domain = base.field.domain
    matrix = jacobian(system)
    dim_r = base_dimension(system, limits) if dim_r is None else dim_r
    dim_b = dim_r + system.n - 1 if dim_b is None else dim_b
    codimension = system.algebra.ngens - dim_b
    base_codimension = width - dim_r

    evaluated = matrix.evaluate(point)
    full_rank = rank(evaluated, system.algebra.ngens, domain)
    base_rows = [row[:width] for row in evaluated[:-1]]
    base_rank = rank(base_rows, width, domain)

    def result(case: str, verdict: str) -> PointClassification:
        outcome = PointClassification(
            case, verdict, full_rank, codimension, base_rank, base_codimension, [FIELD_CAVEAT]
        )
        logger.info(f"Ponto {point.describe()}: {case} -> {verdict}")
        return outcome

    if any(f_values):
        if base_rank == base_codimension:
            return result(CASE1_SMOOTH, NONSINGULAR)
        return result(CASE1_SINGULAR, SINGULAR)
    if base_rank < base_codimension:
        return result(CASE3_SINGULAR, SINGULAR)
    if not any(evaluated[-1][:width]):
        return result(CASE4_SINGULAR, SINGULAR)
    verdict = NONSINGULAR if full_rank == codimension else SINGULAR
    return result(RANK_TEST, verdict)


@dataclass(frozen=True)
class Case4System:
    """Sistema (df_i/dx_j(P)) t = -(df/dx_j(P)) e seu conjunto solução."""

    matrix: Tuple[Tuple, ...]
    rhs: Tuple
    solution: Optional[AffineSolution]
    note: str = SIGN_NOTE


def case4_system(system: ForcingSystem, point: PointAssignment) -> Case4System:
    """
    Raises:
        SingularityError: Algum f_i(P) ou f(P) não se anula
    """
    system.require_ideal_case()
    base = system.base
    check_on_spec(base, point)
    values = [evaluate(f, point) for f in system.generators]
    if any(values) or evaluate(system.target, point):
        raise SingularityError("O caso 4 exige f_i(P) = 0 para todo i e f(P) = 0")
    matrix = tuple(
        tuple(evaluate(partial_derivative(f, j), point) for f in system.generators)
        for j in range(base.ngens)
    )
    rhs = tuple(-evaluate(partial_derivative(system.target, j), point) for j in range(base.ngens))
    solution = solve_affine(matrix, rhs, system.n, base.field.domain)
    return Case4System(matrix, rhs, solution)


def singular_locus_ideal(
    system: ForcingSystem,
    codim: Optional[int] = None,
    limits: Optional[EngineLimits] = None,
) -> IdealHandle:
    """
    Ideal gerado pelas relações de B e por todos os menores codim x codim
    da matriz jacobiana.

    Raises:
        SingularityError: codim fora do intervalo
    """
    matrix = jacobian(system)
    rows, cols = matrix.shape
    if codim is None:
        codim = system.algebra.ngens - default_algebra_dimension(system, limits)
    if codim < 0 or codim > min(rows, cols):
        raise SingularityError(f"Codimensão {codim} fora de 0..{min(rows, cols)}")

    ring = system.algebra.ring
    minors = []
    for row_set in combinations(range(rows), codim):
        for col_set in combinations(range(cols), codim):
            sub = [[matrix.rows[r][c] for c in col_set] for r in row_set]
            minor = polynomial_determinant(sub, ring)
            if minor:
                minors.append(minor)
    logger.info(f"Lugar singular: {len(minors)} menores {codim}x{codim} não nulos")
    return IdealHandle(system.algebra, minors, limits)


def point_in_locus(locus: IdealHandle, point: PointAssignment) -> bool:
    """Todo gerador do ideal do lugar singular (e toda relação) se anula em Q."""
    return all(not evaluate(g, point) for g in locus.ambient_generators)
