import os
import logging
from contextlib import contextmanager

from sqlalchemy import create_engine
from sqlalchemy.ext.declarative import declarative_base
from sqlalchemy.orm import sessionmaker

from src.config import get_config

logger = logging.getLogger(__name__)

# O banco de histórico fica em data/forca.db, salvo FORCA_DATABASE_URL
DATABASE_URL = get_config().database_url

connect_args = {}
if DATABASE_URL.startswith("sqlite:///"):
    connect_args["check_same_thread"] = False
    if DATABASE_URL != "sqlite:///:memory:":
        os.makedirs(os.path.dirname(os.path.abspath(DATABASE_URL[len("sqlite:///"):])), exist_ok=True)

engine = create_engine(DATABASE_URL, connect_args=connect_args)

SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
Base = declarative_base()


def init_db():
    """Cria a tabela de histórico se ela ainda não existir."""
    from src.database import models  # noqa: F401

    Base.metadata.create_all(bind=engine)
    logger.debug(f"Banco de histórico pronto: {DATABASE_URL}")


@contextmanager
def get_db():
    """Sessão do histórico, fechada ao sair do bloco."""
    db = SessionLocal()
    try:
        yield db
    finally:
        db.close()
