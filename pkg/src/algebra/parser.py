"""
Leitura e escrita de polinômios no formato textual dos documentos.

Gramática aceita (espaços são ignorados):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('-' | '+') factor | atom ('^' nat)?
    atom   := NUMBER ('/' NUMBER)? | NAME | '(' expr ')'
"""

import re
import logging
from typing import TYPE_CHECKING, List, NamedTuple

from sympy.polys.rings import PolyElement

from src.algebra.fields import CoefficientField

if TYPE_CHECKING:
    from src.algebra.rings import RingPresentation

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(
    r"\s*(?:(?P<number>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))"
)

MAX_EXPONENT = 100_000


class PolynomialSyntaxError(ValueError):
    """Exceção levantada quando o texto não segue a gramática de polinômios."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (posição {position})")
        self.position = position


class UnknownVariableError(PolynomialSyntaxError):
    """Exceção levantada quando o texto usa uma variável que o anel não declara."""

    pass


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """
    Divide o texto em tokens (números, nomes e operadores).

    Raises:
        PolynomialSyntaxError: Caractere fora da gramática
    """
    tokens = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = TOKEN_PATTERN.match(text, position)
        if not match:
            # Pula espaços para apontar o caractere inválido
            while text[position].isspace():
                position += 1
            raise PolynomialSyntaxError(
                f"Caractere inesperado {text[position]!r}", position
            )
        kind = match.lastgroup
        tokens.append(Token(kind, match.group(kind), match.start(kind)))
        position = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    """Analisador descendente recursivo sobre a lista de tokens."""

    def __init__(self, text: str, presentation: "RingPresentation"):
        self.tokens = tokenize(text)
        self.index = 0
        self.presentation = presentation
        self.ring = presentation.ring
        self.field = presentation.field

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.index += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            raise PolynomialSyntaxError(
                f"Esperado {op!r}, encontrado {self.current.text or 'fim do texto'!r}",
                self.current.position,
            )

    def parse(self) -> PolyElement:
        if self.current.kind == "end":
            raise PolynomialSyntaxError("Texto vazio", 0)
        result = self.expr()
        if self.current.kind != "end":
            raise PolynomialSyntaxError(
                f"Token inesperado {self.current.text!r}", self.current.position
            )
        return result

    def expr(self) -> PolyElement:
        result = self.term()
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> PolyElement:
        result = self.factor()
        while self.accept("*"):
            result = result * self.factor()
        return result

    def factor(self) -> PolyElement:
        if self.accept("-"):
            return -self.factor()
        if self.accept("+"):
            return self.factor()
        base = self.atom()
        if self.accept("^"):
            token = self.current
            if token.kind != "number":
                raise PolynomialSyntaxError(
                    "Expoente deve ser um inteiro não negativo", token.position
                )
            self.advance()
            exponent = int(token.text)
            if exponent > MAX_EXPONENT:
                raise PolynomialSyntaxError(
                    f"Expoente grande demais: {exponent}", token.position
                )
            return base**exponent
        return base

    def atom(self) -> PolyElement:
        token = self.current
        if token.kind == "number":
            self.advance()
            numerator = int(token.text)
            denominator = 1
            if self.accept("/"):
                den_token = self.current
                if den_token.kind != "number":
                    raise PolynomialSyntaxError(
                        "Denominador deve ser um inteiro", den_token.position
                    )
                self.advance()
                denominator = int(den_token.text)
            return self.ring.ground_new(self.field.element(numerator, denominator))
        if token.kind == "name":
            self.advance()
            if token.text not in self.presentation.variables:
                raise UnknownVariableError(
                    f"Variável desconhecida {token.text!r}", token.position
                )
            return self.ring.gens[self.presentation.variables.index(token.text)]
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(
            f"Token inesperado {token.text or 'fim do texto'!r}", token.position
        )


def parse_polynomial(text: str, presentation: "RingPresentation") -> PolyElement:
    """
    Converte um texto na forma canônica esparsa do polinômio.

    Args:
        text: Expressão polinomial
        presentation: Anel onde as variáveis estão declaradas

    Returns:
        Polinômio no anel ambiente da apresentação

    Raises:
        PolynomialSyntaxError: Texto fora da gramática
        UnknownVariableError: Identificador não declarado
        CoefficientError: Coeficiente fora do corpo (ex.: 1/2 em F_2)
    """
    if not isinstance(text, str):
        raise PolynomialSyntaxError(f"Esperado texto, recebido {type(text).__name__}", 0)
    return _Parser(text, presentation).parse()


def _field_of(poly: PolyElement) -> CoefficientField:
    return CoefficientField(int(poly.ring.domain.characteristic()))


def format_monomial(monomial, names) -> str:
    factors = []
    for name, exponent in zip(names, monomial):
        if exponent == 1:
            factors.append(name)
        elif exponent > 1:
            factors.append(f"{name}^{exponent}")
    return "*".join(factors)


def format_polynomial(poly: PolyElement) -> str:
    """
    Texto canônico do polinômio: termos na ordem do anel, do maior para o menor.
    Polinômios iguais produzem textos idênticos e o texto é lido de volta
    por parse_polynomial sem alteração.
    """
    if not poly:
        return "0"
    field = _field_of(poly)
    names = [str(symbol) for symbol in poly.ring.symbols]

    pieces = []
    for monomial, coeff in poly.terms():
        num, den = field.as_fraction(coeff)
        negative = num < 0
        num = abs(num)
        scalar = str(num) if den == 1 else f"{num}/{den}"
        body = format_monomial(monomial, names)
        if not body:
            text = scalar
        elif scalar == "1":
            text = body
        else:
            text = f"{scalar}*{body}"

        if not pieces:
            pieces.append(f"-{text}" if negative else text)
        else:
            pieces.append(f" - {text}" if negative else f" + {text}")
    return "".join(pieces)
