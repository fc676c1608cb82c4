"""
Apresentações de anéis R = K[x_1..x_m]/(g_1..g_k) e ordens monomiais.

Os polinômios são os elementos esparsos exatos do sympy (PolyElement);
a apresentação guarda o anel ambiente, o corpo, as relações definidoras
e a base de Gröbner reduzida dessas relações (calculada uma única vez).
"""

import re
import logging
import threading
from typing import Iterable, Optional, Sequence, Tuple, Union

from sympy.polys.orderings import MonomialOrder, grevlex, grlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from src.config import validate_order
from src.algebra.fields import CoefficientField
from src.algebra.parser import format_polynomial, parse_polynomial

logger = logging.getLogger(__name__)

IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class RingMismatchError(ValueError):
    """Exceção levantada quando polinômios de anéis diferentes são misturados."""

    pass


class BlockOrder(MonomialOrder):
    """
    Ordem de blocos: degrevlex nas variáveis do primeiro bloco, com desempate
    por degrevlex nas demais. É uma ordem de eliminação para o primeiro bloco.
    """

    alias = "block"
    is_global = True
    is_default = False

    def __init__(self, block: Iterable[int]):
        self.block = tuple(sorted(set(block)))
        self._members = frozenset(self.block)

    def __call__(self, monomial):
        first = [monomial[i] for i in self.block]
        rest = [e for i, e in enumerate(monomial) if i not in self._members]
        return (
            sum(first),
            tuple(reversed([-e for e in first])),
            sum(rest),
            tuple(reversed([-e for e in rest])),
        )

    def __repr__(self):
        return f"BlockOrder({self.block})"

    def __str__(self):
        return f"block{list(self.block)}"

    def __eq__(self, other):
        return isinstance(other, BlockOrder) and other.block == self.block

    def __hash__(self):
        return hash((BlockOrder, self.block))


def monomial_order(spec: str, ngens: int) -> MonomialOrder:
    """
    Converte a especificação textual em uma ordem monomial do sympy.

    Args:
        spec: degrevlex, lex, grlex ou block:k
        ngens: Número de variáveis do anel

    Returns:
        Ordem monomial
    """
    validate_order(spec)
    if spec == "degrevlex":
        return grevlex
    if spec == "lex":
        return lex
    if spec == "grlex":
        return grlex
    size = int(spec.split(":", 1)[1])
    return BlockOrder(range(min(size, ngens)))


class RingPresentation:
    """Apresentação R = K[variáveis]/(relações) com ordem monomial fixa."""

    def __init__(
        self,
        variables: Sequence[str],
        field: Optional[CoefficientField] = None,
        relations: Iterable[Union[str, PolyElement]] = (),
        order: str = "degrevlex",
        monomial_key: Optional[MonomialOrder] = None,
    ):
        """
        Inicializa a apresentação.

        Args:
            variables: Nomes das variáveis (identificadores distintos)
            field: Corpo de coeficientes (QQ por padrão)
            relations: Relações definidoras (texto ou polinômios)
            order: Especificação da ordem monomial
            monomial_key: Ordem explícita (usada pelas ordens de eliminação)
        """
        self.variables = tuple(variables)
        if not self.variables:
            raise ValueError("O anel precisa de pelo menos uma variável")
        for name in self.variables:
            if not IDENTIFIER.match(name):
                raise ValueError(f"Nome de variável inválido: {name!r}")
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Variáveis repetidas: {self.variables}")

        self.field = field or CoefficientField()
        self.order = order
        key = monomial_key or monomial_order(order, len(self.variables))
        self.ring = PolyRing(self.variables, self.field.domain, key)

        coerced = (self.coerce(relation) for relation in relations)
        self.relations = tuple(relation for relation in coerced if relation)

        self._relations_basis = None
        self._lock = threading.Lock()

    # ------------------------------------------------------------------
    # Construção de elementos
    # ------------------------------------------------------------------

    def coerce(self, value) -> PolyElement:
        """
        Converte texto, inteiro ou polinômio de outro anel compatível em
        um elemento deste anel ambiente.
        """
        if isinstance(value, PolyElement):
            if value.ring == self.ring:
                return value
            if not set(value.ring.symbols) <= set(self.ring.symbols):
                raise RingMismatchError(
                    f"Polinômio de {value.ring.symbols} fora de {self.ring.symbols}"
                )
            return value.set_ring(self.ring)
        if isinstance(value, str):
            return parse_polynomial(value, self)
        if isinstance(value, int):
            return self.ring.ground_new(self.field.convert(value))
        raise TypeError(f"Não é possível converter {value!r} em polinômio")

    def gen(self, name: str) -> PolyElement:
        return self.ring.gens[self.index(name)]

    def index(self, name: Union[str, int]) -> int:
        if isinstance(name, int):
            if not 0 <= name < len(self.variables):
                raise IndexError(f"Índice de variável fora do intervalo: {name}")
            return name
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"Variável desconhecida: {name}")

    @property
    def ngens(self) -> int:
        return len(self.variables)

    @property
    def is_polynomial_ring(self) -> bool:
        return not self.relations

    def check_same_ring(self, *polys: PolyElement) -> None:
        for poly in polys:
            if poly.ring != self.ring:
                raise RingMismatchError(
                    f"Polinômio pertence a {poly.ring.symbols}, esperado {self.ring.symbols}"
                )

    # ------------------------------------------------------------------
    # Novas apresentações
    # ------------------------------------------------------------------

    def fresh_name(self, stem: str, taken: Iterable[str] = ()) -> str:
        """Nome de variável que não colide com as existentes."""
        used = set(self.variables) | set(taken)
        name = stem
        while name in used:
            name += "_"
        return name

    def extend(
        self, names: Sequence[str], relations: Iterable = (), order: Optional[str] = None
    ) -> "RingPresentation":
        """
        Adjunta novas variáveis (ao final) mantendo as relações atuais.

        Args:
            names: Novas variáveis
            relations: Relações adicionais (no anel estendido)
            order: Ordem do anel estendido (a mesma por padrão)
        """
        extended = RingPresentation(
            self.variables + tuple(names), self.field, order=order or self.order
        )
        lifted = [extended.coerce(relation) for relation in self.relations]
        return extended.with_relations(lifted + [extended.coerce(r) for r in relations])

    def with_relations(self, relations: Iterable) -> "RingPresentation":
        """Mesmas variáveis e ordem, relações substituídas."""
        return RingPresentation(
            self.variables,
            self.field,
            [self.coerce(r) for r in relations],
            self.order,
            self.ring.order,
        )

    def quotient(self, extra: Iterable) -> "RingPresentation":
        """Apresentação de R/(extra)."""
        return self.with_relations(list(self.relations) + [self.coerce(e) for e in extra])

    def with_monomial_key(self, key: MonomialOrder) -> "RingPresentation":
        """Mesma apresentação com outra ordem monomial (ex.: ordem de eliminação)."""
        presentation = RingPresentation(self.variables, self.field, (), self.order, key)
        return presentation.with_relations(self.relations)

    # ------------------------------------------------------------------
    # Base de Gröbner das relações (calculada uma vez)
    # ------------------------------------------------------------------

    def relations_basis(self, limits=None):
        """
        Base de Gröbner reduzida das relações definidoras (cacheada).

        Args:
            limits: EngineLimits usados no primeiro cálculo
        """
        from src.engine.groebner import EngineLimits, buchberger

        with self._lock:
            if self._relations_basis is None:
                self._relations_basis = buchberger(
                    [(g,) for g in self.relations],
                    self.ring,
                    rank=1,
                    limits=limits or EngineLimits.from_config(),
                )
                logger.debug(
                    f"Base das relações de {self.describe()}: "
                    f"{len(self._relations_basis.vectors)} elementos"
                )
        return self._relations_basis

    def reduce(self, value) -> PolyElement:
        """Forma normal de um elemento módulo as relações definidoras."""
        poly = self.coerce(value)
        if not self.relations:
            return poly
        return self.relations_basis().reduce((poly,))[0]

    def is_zero(self, value) -> bool:
        return not self.reduce(value)

    def describe(self) -> str:

        base = f"{self.field.describe()}[{', '.join(self.variables)}]"
        if not self.relations:
            return base
        rels = ", ".join(format_polynomial(r) for r in self.relations)
        return f"{base}/({rels})"

    def to_document(self) -> dict:
        """Bloco 'ring' do documento de entrada correspondente a esta apresentação."""

        return {
            "variables": list(self.variables),
            "characteristic": self.field.characteristic,
            "relations": [format_polynomial(r) for r in self.relations],
            "order": self.order,
        }

    def __repr__(self):
        return f"RingPresentation({self.describe()}, order={self.order})"
