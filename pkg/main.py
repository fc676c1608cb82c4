"""
forca - Aplicação Principal
Álgebras forçantes: executa documentos de tarefa e o corpus de exemplos.
"""

import argparse
import asyncio
import logging
import sys
from contextlib import ExitStack
from pathlib import Path
from typing import List, Optional

from src.config import ConfigError, EngineConfig, load_config
from src.database.db_handler import get_db, init_db
from src.database.models import JobRun
from src.engine.groebner import ComputationAborted
from src.exporters.report_exporter import ReportExporter
from src.processors.async_processor import (
    AsyncCorpusProcessor,
    CorpusError,
    save_run,
    summarize,
)
from src.processors.job_processor import (
    TASKS,
    JobSchemaError,
    WitnessMismatchError,
    load_document,
    run_job,
)

logger = logging.getLogger("forca")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SCHEMA = 2
EXIT_RESOURCE = 3
EXIT_WITNESS = 4


def configure_logging(log_file: str) -> None:
    # Configuração de logging
    logging.basicConfig(
        level=logging.INFO,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.FileHandler(log_file), logging.StreamHandler()],
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forca",
        description="Álgebras forçantes, classes de Čech e verificação exata do corpus.",
    )
    parser.add_argument(
        "task",
        choices=sorted(TASKS) + ["corpus", "history"],
        help="Tarefa (ou 'corpus' para rodar um diretório, 'history' para o histórico)",
    )
    parser.add_argument("path", nargs="?", help="Documento JSON ou diretório do corpus")
    parser.add_argument("--order", help="Ordem monomial: degrevlex, lex, grlex ou block:k")
    parser.add_argument("--max-pairs", type=int, help="Limite de pares S do Buchberger")
    parser.add_argument("--char", type=int, help="Sobrescreve a característica do documento")
    parser.add_argument("--emax", type=int, help="Maior expoente e das potências de Frobenius")
    parser.add_argument("--json", help="Grava o relatório de máquina neste caminho")
    parser.add_argument("--limit", type=int, default=20, help="Linhas do histórico")
    parser.add_argument(
        "--no-history", action="store_true", help="Não registra a execução no histórico"
    )
    return parser


def _record(report, enabled: bool) -> None:
    if not enabled:
        return
    try:
        init_db()
        with get_db() as db_session:
            save_run(db_session, JobRun, report)
    except Exception as e:
        logger.warning(f"Histórico não registrado: {e}")


def run_single(args, config: EngineConfig) -> int:
    doc = load_document(args.path, config, characteristic=args.char, order=args.order)
    if doc.task != args.task:
        raise JobSchemaError(f"O documento declara a tarefa {doc.task!r}, não {args.task!r}")
    report = run_job(doc, config)
    print(report.to_text())
    if args.json:
        ReportExporter().export_json(report, args.json)
    _record(report, not args.no_history)
    return EXIT_OK


def run_corpus(args, config: EngineConfig) -> int:
    with ExitStack() as stack:
        db_session = None
        if not args.no_history:
            init_db()
            db_session = stack.enter_context(get_db())
        processor = AsyncCorpusProcessor(
            args.path, config, db_session=db_session, model_class=JobRun
        )

        async def on_complete(name, report):
            status = "OK" if report.passed else "FALHOU"
            print(f"{status:7} {name} [{report.tag}] -> {report.verdict}")

        async def on_error(name, message):
            print(f"ERRO    {name}: {message}")

        processor.set_callbacks(on_entry_complete=on_complete, on_error=on_error)
        stats = asyncio.run(processor.process_all())

    summary = summarize(stats, args.path, config)
    print(
        f"Corpus: {summary.details['passed']}/{summary.details['total']} aprovadas, "
        f"{summary.details['failed']} reprovadas, {summary.details['errors']} erros"
    )
    if args.json:
        exporter = ReportExporter()
        exporter.export_json(summary, args.json)
        exporter.export_summary_csv(
            stats["relatorios"], str(Path(args.json).with_suffix(".csv"))
        )
    return EXIT_OK if summary.verdict == "pass" else EXIT_FAILURE


def show_history(limit: int) -> int:
    init_db()
    with get_db() as db_session:
        runs = db_session.query(JobRun).order_by(JobRun.created_at.desc(), JobRun.id.desc()).limit(limit).all()
        if not runs:
            print("Histórico vazio")
        for run in runs:
            passed = "" if run.passed is None else (" OK" if run.passed else " FALHOU")
            print(
                f"{run.created_at}  {run.task:16} {run.document:40} "
                f"{run.verdict}{passed}  {run.report_digest[:12]}"
            )
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Função principal da linha de comando."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config().override(
            order=args.order, max_pairs=args.max_pairs, e_max=args.emax
        )
    except ConfigError as e:
        print(f"Configuração inválida: {e}", file=sys.stderr)
        return EXIT_SCHEMA
    configure_logging(config.log_file)

    if args.task == "history":
        return show_history(args.limit)
    if not args.path:
        parser.error(f"A tarefa {args.task} exige um caminho")

    try:
        if args.task == "corpus":
            return run_corpus(args, config)
        return run_single(args, config)
    except JobSchemaError as e:
        logger.error(f"Documento inválido: {e}")
        return EXIT_SCHEMA
    except ComputationAborted as e:
        logger.error(f"Limite de recursos atingido: {e}")
        return EXIT_RESOURCE
    except WitnessMismatchError as e:
        logger.error(f"Testemunha não confere: {e}")
        return EXIT_WITNESS
    except (CorpusError, FileNotFoundError) as e:
        logger.error(f"Corpus indisponível: {e}")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Erro inesperado: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
