"""Famílias de álgebras forçantes em duas variáveis usadas no corpus e nos testes."""

from typing import Optional

from src.algebra.fields import CoefficientField
from src.algebra.rings import RingPresentation
from src.forcing.forcing_system import ForcingSystem


def plane(field: Optional[CoefficientField] = None) -> RingPresentation:
    return RingPresentation(("x", "y"), field)


def monomial_forcing(
    r: int, s: int, a: int, b: int, field: Optional[CoefficientField] = None
) -> ForcingSystem:
    """B = K[x,y,T1,T2]/(x^r T1 + y^s T2 + x^a y^b)."""
    if min(r, s, a, b) < 0:
        raise ValueError("Expoentes devem ser não negativos")
    base = plane(field)
    x, y = base.ring.gens
    return ForcingSystem.from_ideal(base, [x**r, y**s], x**a * y**b)


def affine_torsor_family(
    m: int, n: int, field: Optional[CoefficientField] = None
) -> ForcingSystem:
    """B_{m,n} = K[x,y,T1,T2]/(x^m T1 + y^n T2 - 1)."""
    if m < 1 or n < 1:
        raise ValueError("m e n devem ser pelo menos 1")
    base = plane(field)
    x, y = base.ring.gens
    return ForcingSystem.from_ideal(base, [x**m, y**n], -base.ring.one)
