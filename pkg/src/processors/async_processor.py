"""
Módulo responsável pela execução assíncrona do corpus de exemplos.
Cada entrada roda numa thread própria; o resumo é reordenado por nome de
arquivo para ser determinístico.
"""

import asyncio
from pathlib import Path
from typing import List, Dict, Optional, Callable
import logging

from src.config import EngineConfig, get_config
from src.exporters.report_exporter import report_digest
from src.processors.job_processor import Report, engine_summary, load_document, run_job

logger = logging.getLogger(__name__)


class CorpusError(ValueError):
    """Exceção levantada quando o diretório do corpus não tem entradas."""

    pass


class AsyncCorpusProcessor:
    """
    Processador assíncrono do corpus.
    Fornece callbacks para acompanhamento em tempo real (CLI ou testes).
    """

    def __init__(
        self,
        corpus_dir: str,
        config: Optional[EngineConfig] = None,
        db_session=None,
        model_class=None,
        concurrency: int = 4,
    ):
        """
        Inicializa o processador.

        Args:
            corpus_dir: Diretório com os documentos *.json
            config: Configuração do motor
            db_session: Sessão do SQLAlchemy (None desativa o histórico)
            model_class: Classe do modelo JobRun
            concurrency: Número máximo de entradas simultâneas
        """
        self.corpus_dir = Path(corpus_dir)
        self.config = config or get_config()
        self.db_session = db_session
        self.model_class = model_class
        self.concurrency = max(1, concurrency)

        # Callbacks
        self.on_progress = None
        self.on_entry_start = None
        self.on_entry_complete = None
        self.on_error = None

        if not self.corpus_dir.is_dir():
            raise FileNotFoundError(f"Corpus não encontrado: {corpus_dir}")

    def set_callbacks(
        self,
        on_progress: Optional[Callable] = None,
        on_entry_start: Optional[Callable] = None,
        on_entry_complete: Optional[Callable] = None,
        on_error: Optional[Callable] = None,
    ):
        """
        Define callbacks assíncronos de acompanhamento.

        Args:
            on_progress: Callback(current, total, percentage)
            on_entry_start: Callback(nome_documento)
            on_entry_complete: Callback(nome_documento, report)
            on_error: Callback(nome_documento, error_message)
        """
        self.on_progress = on_progress
        self.on_entry_start = on_entry_start
        self.on_entry_complete = on_entry_complete
        self.on_error = on_error

    def list_entries(self) -> List[Path]:
        """
        Lista os documentos do corpus em ordem de nome.

        Raises:
            CorpusError: Diretório sem documentos
        """
        entries = sorted(self.corpus_dir.glob("*.json"))
        if not entries:
            raise CorpusError(f"Nenhum documento *.json em {self.corpus_dir}")
        logger.info(f"Corpus lido com sucesso: {len(entries)} entradas")
        return entries

    def _run_entry(self, path: Path) -> Report:
        doc = load_document(str(path), self.config)
        if doc.expect is None:
            raise CorpusError(f"{path.name}: entrada do corpus sem bloco 'expect'")
        return run_job(doc, self.config)

    async def process_all(self) -> Dict[str, object]:
        """
        Executa todas as entradas do corpus.

        Returns:
            Dict com estatísticas e a lista de relatórios ("relatorios")
        """
        entries = self.list_entries()
        total = len(entries)
        stats = {"total": total, "processadas": 0, "aprovadas": 0, "reprovadas": 0, "erros": 0}
        semaphore = asyncio.Semaphore(self.concurrency)
        done = 0
        reports: Dict[str, Report] = {}

        async def run(path: Path) -> None:
            nonlocal done
            name = path.name
            async with semaphore:
                try:
                    if self.on_entry_start:
                        await self.on_entry_start(name)
                    report = await asyncio.to_thread(self._run_entry, path)
                    stats["processadas"] += 1
                    if report.passed:
                        stats["aprovadas"] += 1
                    else:
                        stats["reprovadas"] += 1
                        logger.warning(f"Entrada {name} reprovada: {report.problems}")
                    if self.on_entry_complete:
                        await self.on_entry_complete(name, report)
                except Exception as e:
                    error_msg = f"{type(e).__name__}: {e}"
                    logger.error(f"Erro ao processar {name}: {error_msg}")
                    stats["erros"] += 1
                    report = Report(
                        task="?", document=name, tag="", verdict="error",
                        passed=False, problems=[error_msg],
                    )
                    if self.on_error:
                        await self.on_error(name, error_msg)
                reports[name] = report
                if self.db_session is not None:
                    try:
                        self._save_to_database(report)
                    except Exception as e:
                        logger.warning(f"Histórico não registrado para {name}: {e}")
                done += 1
                if self.on_progress:
                    await self.on_progress(done, total, int(done / total * 100))

        await asyncio.gather(*(run(path) for path in entries))
        stats["relatorios"] = [reports[path.name] for path in entries]
        logger.info(
            f"Corpus concluído: {stats['aprovadas']}/{total} aprovadas, "
            f"{stats['reprovadas']} reprovadas, {stats['erros']} erros"
        )
        return stats

    def _save_to_database(self, report: Report):
        """
        Registra a execução no histórico (upsert por documento e tarefa).

        Args:
            report: Relatório da entrada
        """
        save_run(self.db_session, self.model_class, report)


def save_run(db_session, model_class, report: Report):
    """
    Upsert de uma execução no histórico por (documento, tarefa).

    Args:
        db_session: Sessão do SQLAlchemy
        model_class: Classe do modelo JobRun
        report: Relatório a registrar
    """
    data = {
        "document": report.document,
        "task": report.task,
        "tag": report.tag,
        "verdict": report.verdict,
        "passed": report.passed,
        "report_digest": report_digest(report),
        "duration_ms": round(report.duration_ms, 3),
    }
    try:
        existing = (
            db_session.query(model_class)
            .filter_by(document=data["document"], task=data["task"])
            .first()
        )
        if existing:
            for key, value in data.items():
                setattr(existing, key, value)
            logger.info(f"Registro atualizado: {data['document']} ({data['task']})")
        else:
            db_session.add(model_class(**data))
            logger.info(f"Novo registro criado: {data['document']} ({data['task']})")
        db_session.commit()
    except Exception as e:
        logger.error(f"Erro ao salvar no banco: {str(e)}")
        db_session.rollback()
        raise


def summarize(
    stats: Dict[str, object], corpus_dir: str, config: Optional[EngineConfig] = None
) -> Report:
    """Relatório-resumo do corpus: uma linha por entrada, com tag e resultado."""
    reports: List[Report] = stats["relatorios"]
    entries = [
        {
            "document": r.document,
            "tag": r.tag,
            "task": r.task,
            "verdict": r.verdict,
            "passed": bool(r.passed),
            "problems": r.problems,
        }
        for r in reports
    ]
    passed = all(r.passed for r in reports)
    return Report(
        task="corpus",
        document=Path(corpus_dir).name,
        tag="",
        verdict="pass" if passed else "fail",
        details={
            "entries": entries,
            "total": stats["total"],
            "passed": stats["aprovadas"],
            "failed": stats["reprovadas"],
            "errors": stats["erros"],
        },
        engine=engine_summary(config or get_config()),
        duration_ms=sum(r.duration_ms for r in reports),
    )
