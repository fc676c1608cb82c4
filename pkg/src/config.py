"""
Configuração do forca.
Lê variáveis de ambiente (e um arquivo .env, se existir) com python-dotenv.
"""

import os
import logging
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

# Define o caminho padrão para o banco de histórico de execuções
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
DEFAULT_DB_PATH = os.path.join(BASE_DIR, "data", "forca.db")

KNOWN_ORDERS = ("degrevlex", "lex", "grlex")


class ConfigError(ValueError):
    """Exceção levantada quando um valor de configuração é inválido."""

    pass


@dataclass(frozen=True)
class EngineConfig:
    """Configuração imutável do motor e da linha de comando."""

    order: str = "degrevlex"
    max_pairs: int = 100_000
    max_basis: int = 10_000
    max_degree: int = 400
    e_max: int = 5
    database_url: str = f"sqlite:///{DEFAULT_DB_PATH}"
    log_file: str = "forca.log"

    def __post_init__(self):
        validate_order(self.order)
        for name in ("max_pairs", "max_basis", "max_degree", "e_max"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} deve ser positivo: {getattr(self, name)}")

    def override(self, **values) -> "EngineConfig":
        """
        Retorna uma cópia com os valores não nulos substituídos.

        Args:
            values: Campos a substituir (None mantém o valor atual)
        """
        changes = {key: value for key, value in values.items() if value is not None}
        return replace(self, **changes)


def validate_order(order: str) -> str:
    """
    Valida a especificação de ordem monomial (degrevlex, lex, grlex ou block:k).

    Args:
        order: Especificação textual da ordem

    Returns:
        A própria especificação, se válida
    """
    if order in KNOWN_ORDERS:
        return order
    if order.startswith("block:"):
        size = order.split(":", 1)[1]
        if size.isdigit() and int(size) >= 1:
            return order
    raise ConfigError(f"Ordem monomial desconhecida: {order!r}")


def _int_from_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"Variável {name} deve ser inteira, recebido {raw!r}")


def load_config(env_file: Optional[str] = None) -> EngineConfig:
    """
    Monta a configuração a partir do ambiente.

    Args:
        env_file: Caminho opcional de um arquivo .env

    Returns:
        EngineConfig com os valores do ambiente aplicados
    """
    load_dotenv(env_file)
    defaults = EngineConfig()

    config = EngineConfig(
        order=os.getenv("FORCA_ORDER", defaults.order),
        max_pairs=_int_from_env("FORCA_MAX_PAIRS", defaults.max_pairs),
        max_basis=_int_from_env("FORCA_MAX_BASIS", defaults.max_basis),
        max_degree=_int_from_env("FORCA_MAX_DEGREE", defaults.max_degree),
        e_max=_int_from_env("FORCA_EMAX", defaults.e_max),
        database_url=os.getenv("FORCA_DATABASE_URL", defaults.database_url),
        log_file=os.getenv("FORCA_LOG_FILE", defaults.log_file),
    )
    logger.debug(f"Configuração carregada: {config}")
    return config


@lru_cache(maxsize=1)
def get_config() -> EngineConfig:
    """Configuração do processo, carregada uma única vez."""
    return load_config()
