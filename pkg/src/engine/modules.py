"""
Sistemas lineares sobre anéis quocientes: decide se s pertence ao submódulo
de R^m gerado pelas colunas de A (base de Gröbner de módulo, ordem
posição-sobre-termo) e devolve a solução t com A t = s em R.
"""

import logging
from typing import Optional, Sequence, Tuple

from sympy.polys.rings import PolyElement

from src.algebra.rings import RingPresentation
from src.engine.groebner import EngineLimits, buchberger

logger = logging.getLogger(__name__)


def _matrix_shape(matrix: Sequence[Sequence], vector: Sequence) -> Tuple[int, int]:
    rows = len(matrix)
    if rows != len(vector):
        raise ValueError(f"Matriz com {rows} linhas e vetor com {len(vector)} entradas")
    widths = {len(row) for row in matrix}
    if len(widths) > 1:
        raise ValueError(f"Linhas de comprimentos diferentes: {sorted(widths)}")
    return rows, (widths.pop() if widths else 0)


def solve_linear_over_ring(
    matrix: Sequence[Sequence],
    vector: Sequence,
    presentation: RingPresentation,
    limits: Optional[EngineLimits] = None,
) -> Optional[Tuple[PolyElement, ...]]:
    """
    Resolve A t = s em R = K[x]/J.

    Args:
        matrix: Matriz m x n de polinômios (ou textos)
        vector: Lado direito s, de comprimento m
        presentation: Anel R
        limits: Limites do motor

    Returns:
        Solução t (entradas em forma normal módulo J) ou None quando o sistema
        comprovadamente não tem solução

    Raises:
        ComputationAborted: Limite de recursos excedido (nunca vira "sem solução")
    """
    rows, cols = _matrix_shape(matrix, vector)
    ring = presentation.ring
    entries = [[presentation.coerce(a) for a in row] for row in matrix]
    target = tuple(presentation.coerce(s) for s in vector)

    if rows == 0:
        return tuple([ring.zero] * cols)

    generators = [tuple(entries[i][j] for i in range(rows)) for j in range(cols)]
    for relation in presentation.relations:
        for i in range(rows):
            generators.append(
                tuple(relation if k == i else ring.zero for k in range(rows))
            )

    basis = buchberger(
        generators,
        ring,
        rank=rows,
        limits=limits or EngineLimits.from_config(),
        track=True,
    )
    quotients = basis.lift(target)
    if quotients is None:
        logger.debug("Sistema sem solução sobre o anel")
        return None

    solution = tuple(presentation.reduce(q) for q in quotients[:cols])
    for i in range(rows):
        residual = sum((entries[i][j] * solution[j] for j in range(cols)), ring.zero)
        if not presentation.is_zero(residual - target[i]):
            raise ArithmeticError(f"Solução não confere na linha {i + 1}")
    return solution
