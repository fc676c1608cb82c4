"""
Corpos de coeficientes: os racionais (característica 0) e os corpos primos F_p.
Toda a aritmética é exata e delegada aos domínios do sympy (QQ e GF(p)).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from sympy import GF, QQ, isprime

logger = logging.getLogger(__name__)

MAX_CHARACTERISTIC = 2**31

Scalar = Union[int, str, Fraction]


class CoefficientError(ValueError):
    """Exceção levantada quando um coeficiente não pertence ao corpo."""

    pass


@dataclass(frozen=True)
class CoefficientField:
    """Corpo de coeficientes: QQ (characteristic=0) ou F_p (characteristic=p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if p < 0 or p >= MAX_CHARACTERISTIC or (p != 0 and not isprime(p)):
            raise CoefficientError(
                f"Característica inválida: {p} (use 0 ou um primo abaixo de 2^31)"
            )

    @property
    def kind(self) -> str:
        return "rationals" if self.characteristic == 0 else "prime-field"

    @property
    def domain(self):
        """Domínio sympy correspondente."""
        if self.characteristic == 0:
            return QQ
        return GF(self.characteristic)

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def element(self, numerator: int, denominator: int = 1):
        """
        Constrói o elemento numerator/denominator do corpo.

        Args:
            numerator: Numerador inteiro
            denominator: Denominador inteiro

        Returns:
            Elemento do domínio sympy

        Raises:
            CoefficientError: Se o denominador não for invertível no corpo
        """
        domain = self.domain
        if denominator == 0 or (
            self.characteristic and denominator % self.characteristic == 0
        ):
            raise CoefficientError(
                f"{numerator}/{denominator} não pertence a {self.describe()}"
            )
        if self.characteristic == 0:
            return domain(numerator, denominator)
        return domain(numerator) / domain(denominator)

    def convert(self, value: Scalar):
        """
        Converte inteiros, frações ou textos 'a/b' em elementos do corpo.

        Args:
            value: Valor escalar

        Returns:
            Elemento do domínio sympy
        """
        if isinstance(value, Fraction):
            return self.element(value.numerator, value.denominator)
        if isinstance(value, int):
            return self.element(value)
        if isinstance(value, str):
            text = value.strip()
            try:
                if "/" in text:
                    num, den = text.split("/", 1)
                    return self.element(int(num), int(den))
                return self.element(int(text))
            except ValueError:
                raise CoefficientError(f"Escalar inválido: {value!r}")
        try:
            return self.domain.convert(value)
        except Exception:
            raise CoefficientError(f"Escalar inválido: {value!r}")

    def as_fraction(self, element) -> Tuple[int, int]:
        """
        Representante canônico (numerador, denominador) de um elemento.
        Em F_p o numerador fica em [0, p) e o denominador é 1.
        """
        value = self.domain.to_sympy(element)
        if self.characteristic:
            return int(value) % self.characteristic, 1
        return int(value.p), int(value.q)

    def format(self, element) -> str:
        num, den = self.as_fraction(element)
        return str(num) if den == 1 else f"{num}/{den}"

    def elements(self):
        """Enumera os elementos de um corpo finito (usado em oráculos exaustivos)."""
        if not self.characteristic:
            raise CoefficientError("QQ não é enumerável")
        return [self.element(i) for i in range(self.characteristic)]

    def describe(self) -> str:
        return "QQ" if self.characteristic == 0 else f"F_{self.characteristic}"

    @classmethod
    def rationals(cls) -> "CoefficientField":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "CoefficientField":
        return cls(p)
