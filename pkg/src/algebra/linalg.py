"""
Álgebra linear exata sobre o corpo de coeficientes (posto, sistemas afins)
e determinantes sobre anéis de polinômios, via DomainMatrix do sympy.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy.polys.matrices import DomainMatrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffineSolution:
    """Conjunto solução {particular + span(kernel)} de um sistema A t = b."""

    particular: Tuple
    kernel: Tuple[Tuple, ...] = field(default_factory=tuple)

    @property
    def dimension(self) -> int:
        return len(self.kernel)


def _matrix(rows: Sequence[Sequence], ncols: int, domain) -> DomainMatrix:
    return DomainMatrix([list(row) for row in rows], (len(rows), ncols), domain)


def rank(rows: Sequence[Sequence], ncols: int, domain) -> int:
    """Posto de uma matriz com entradas no domínio (um corpo)."""
    if not rows or ncols == 0:
        return 0
    return _matrix(rows, ncols, domain).rank()


def solve_affine(
    rows: Sequence[Sequence], rhs: Sequence, ncols: int, domain
) -> Optional[AffineSolution]:
    """
    Resolve A t = b sobre um corpo por eliminação de Gauss-Jordan.

    Args:
        rows: Linhas de A
        rhs: Lado direito b
        ncols: Número de incógnitas
        domain: Corpo (QQ ou GF(p))

    Returns:
        AffineSolution, ou None se o sistema for inconsistente
    """
    zero, one = domain.zero, domain.one
    if not rows:
        kernel = tuple(
            tuple(one if k == j else zero for k in range(ncols)) for j in range(ncols)
        )
        return AffineSolution(tuple([zero] * ncols), kernel)

    augmented = [list(row) + [value] for row, value in zip(rows, rhs)]
    reduced, pivots = _matrix(augmented, ncols + 1, domain).rref()
    entries = reduced.to_list()

    if ncols in pivots:
        return None

    particular = [zero] * ncols
    for r, c in enumerate(pivots):
        particular[c] = entries[r][ncols] / entries[r][c]

    kernel: List[Tuple] = []
    free = [c for c in range(ncols) if c not in pivots]
    for f in free:
        vector = [zero] * ncols
        vector[f] = one
        for r, c in enumerate(pivots):
            vector[c] = -entries[r][f] / entries[r][c]
        kernel.append(tuple(vector))
    return AffineSolution(tuple(particular), tuple(kernel))


def apply(rows: Sequence[Sequence], vector: Sequence, domain) -> list:
    """Produto matriz-vetor exato."""
    result = []
    for row in rows:
        total = domain.zero
        for a, t in zip(row, vector):
            total += a * t
        result.append(total)
    return result


def polynomial_determinant(rows: Sequence[Sequence], ring):
    """
    Determinante de uma matriz quadrada de polinômios (Bareiss, divisão exata
    no anel de polinômios).
    """
    size = len(rows)
    if size == 0:
        return ring.one
    return DomainMatrix([list(r) for r in rows], (size, size), ring.to_domain()).det()
