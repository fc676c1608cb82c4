"""
Classes de Čech sobre quádricas usadas no corpus e nos testes: a quádrica
xv + yu + z(z - 1) = 0 e a quádrica UX + VY + WZ = 0 de dimensão cinco.
"""

from math import comb
from typing import Dict, Optional

from sympy.polys.rings import PolyElement

from src.algebra.fields import CoefficientField
from src.algebra.polynomials import Grading
from src.algebra.rings import RingPresentation
from src.cech.cocycles import CechCocycle
from src.forcing.forcing_system import ForcingSystem

QUADRIC_VARIABLES = ("x", "y", "z", "u", "v")


def quadric_ring(field: Optional[CoefficientField] = None) -> RingPresentation:
    """K[x,y,z,u,v]/(xv + yu + z^2 - z)."""
    return RingPresentation(QUADRIC_VARIABLES, field, ["x*v + y*u + z*(z - 1)"])


def quadric_class(field: Optional[CoefficientField] = None) -> CechCocycle:
    """((z - 1)/xy, -u/xz, v/yz) em U = D(x, y, z)."""
    base = quadric_ring(field)
    return CechCocycle(
        base,
        ["x", "y", "z"],
        1,
        {(1, 2): "z - 1", (1, 3): "-u", (2, 3): "v"},
    )


def quadric_power_class(k: int, field: Optional[CoefficientField] = None) -> CechCocycle:
    """
    Classe da k-ésima potência da equação xv + yu = z(1 - z):
    geradores (x^k, y, z^k) e numeradores
    b_12 = -(1 - z)^k, b_13 = -sum_{i<k} C(k,i) x^i v^i y^(k-i-1) u^(k-i), b_23 = v^k.
    """
    if k < 1:
        raise ValueError("k deve ser pelo menos 1")
    base = quadric_ring(field)
    x, y, z, u, v = base.ring.gens
    one = base.ring.one
    b13 = base.ring.zero
    for i in range(k):
        b13 += comb(k, i) * x**i * v**i * y ** (k - i - 1) * u ** (k - i)
    return CechCocycle(
        base,
        [x**k, y, z**k],
        1,
        {(1, 2): -((one - z) ** k), (1, 3): -b13, (2, 3): v**k},
    )


def five_dim_quadric_ring(field: Optional[CoefficientField] = None) -> RingPresentation:
    return RingPresentation(("X", "Y", "Z", "U", "V", "W"), field, ["U*X + V*Y + W*Z"])


def five_dim_quadric_class(field: Optional[CoefficientField] = None) -> CechCocycle:
    """(W/XY, -V/XZ, U/YZ) sobre K[X,Y,Z,U,V,W]/(UX + VY + WZ)."""
    base = five_dim_quadric_ring(field)
    return CechCocycle(
        base, ["X", "Y", "Z"], 1, {(1, 2): "W", (1, 3): "-V", (2, 3): "U"}
    )


def quadric_parametrization(system: ForcingSystem) -> Dict[str, PolyElement]:
    """
    Imagens de (z, u, v) em K[x, y, T1, T2, T3] para a álgebra forçante da
    classe quadric_class: z = y T1 - x T2 + 1, u = -z T1 + x T3, v = z T2 - y T3.
    """
    algebra = system.algebra
    x, y = algebra.gen("x"), algebra.gen("y")
    t1, t2, t3 = (algebra.gen(name) for name in system.t_names)
    z = y * t1 - x * t2 + 1
    return {"z": z, "u": -z * t1 + x * t3, "v": z * t2 - y * t3}


def quadric_bigrading(presentation: RingPresentation, t_names=("T1", "T2", "T3")) -> Grading:
    """
    Bigraduação da álgebra forçante da classe quadrática com k = 2:
    x (1,0), y (0,1), z (0,0), v (-1,0), u (0,-1), T1 (0,-1), T2 (-2,0), T3 (-2,-1).
    """
    weights = {
        "x": (1, 0),
        "y": (0, 1),
        "z": (0, 0),
        "u": (0, -1),
        "v": (-1, 0),
        t_names[0]: (0, -1),
        t_names[1]: (-2, 0),
        t_names[2]: (-2, -1),
    }
    return Grading.from_mapping(
        presentation, {name: weights[name] for name in presentation.variables}
    )
