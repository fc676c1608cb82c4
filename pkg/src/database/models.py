from sqlalchemy import Boolean, Column, DateTime, Float, Integer, String, UniqueConstraint
from sqlalchemy.sql import func
from .db_handler import Base


class JobRun(Base):
    __tablename__ = "job_runs"
    __table_args__ = (UniqueConstraint("document", "task", name="uq_job_runs_document_task"),)

    id = Column(Integer, primary_key=True, autoincrement=True)
    document = Column(String, nullable=False)
    task = Column(String, nullable=False)
    tag = Column(String, nullable=True)
    verdict = Column(String, nullable=False)
    passed = Column(Boolean, nullable=True)
    report_digest = Column(String(64), nullable=False)
    duration_ms = Column(Float, nullable=True)
    created_at = Column(DateTime, server_default=func.now())
