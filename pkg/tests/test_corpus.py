import asyncio
import json
import shutil
from pathlib import Path

import pytest
from alembic.config import Config
from alembic.script import ScriptDirectory
from sqlalchemy import create_engine
from sqlalchemy.orm import sessionmaker
from sqlalchemy.pool import StaticPool

import main
from src.config import EngineConfig
from src.database.db_handler import Base
from src.database.models import JobRun
from src.processors.async_processor import (
    AsyncCorpusProcessor,
    CorpusError,
    save_run,
    summarize,
)
from src.processors.job_processor import Report, WitnessMismatchError

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


def _process(corpus_dir, **kwargs):
    processor = AsyncCorpusProcessor(str(corpus_dir), EngineConfig(), **kwargs)
    return processor, asyncio.run(processor.process_all())


def test_full_corpus_passes():
    _, stats = _process(CORPUS_DIR)
    failures = [(r.document, r.problems) for r in stats["relatorios"] if not r.passed]
    assert failures == []
    assert stats["aprovadas"] == stats["total"] == len(list(CORPUS_DIR.glob("*.json")))
    summary = summarize(stats, str(CORPUS_DIR))
    assert summary.verdict == "pass"
    assert [e["document"] for e in summary.details["entries"]] == sorted(
        p.name for p in CORPUS_DIR.glob("*.json")
    )


def test_perturbed_entry_fails(tmp_path):
    for name in ("member_char0.json", "radical_member.json"):
        shutil.copy(CORPUS_DIR / name, tmp_path / name)
    target = tmp_path / "member_char0.json"
    data = json.loads(target.read_text(encoding="utf-8"))
    data["expect"]["verdict"] = "true"
    target.write_text(json.dumps(data), encoding="utf-8")

    _, stats = _process(tmp_path)
    assert stats["aprovadas"] == 1
    assert stats["reprovadas"] == 1
    assert summarize(stats, str(tmp_path)).verdict == "fail"


def test_entry_without_expectation_is_an_error(tmp_path):
    data = json.loads((CORPUS_DIR / "radical_member.json").read_text(encoding="utf-8"))
    del data["expect"]
    (tmp_path / "sem_expect.json").write_text(json.dumps(data), encoding="utf-8")
    _, stats = _process(tmp_path)
    assert stats["erros"] == 1
    (report,) = stats["relatorios"]
    assert report.verdict == "error" and report.passed is False


def test_callbacks_are_awaited(tmp_path):
    shutil.copy(CORPUS_DIR / "radical_member.json", tmp_path / "radical_member.json")
    events = []

    async def on_start(name):
        events.append(("start", name))

    async def on_complete(name, report):
        events.append(("complete", name, report.passed))

    async def on_progress(current, total, percentage):
        events.append(("progress", current, total, percentage))

    processor = AsyncCorpusProcessor(str(tmp_path), EngineConfig())
    processor.set_callbacks(
        on_progress=on_progress, on_entry_start=on_start, on_entry_complete=on_complete
    )
    asyncio.run(processor.process_all())
    assert events == [
        ("start", "radical_member.json"),
        ("complete", "radical_member.json", True),
        ("progress", 1, 1, 100),
    ]


def test_empty_and_missing_corpus(tmp_path):
    with pytest.raises(CorpusError):
        AsyncCorpusProcessor(str(tmp_path), EngineConfig()).list_entries()
    with pytest.raises(FileNotFoundError):
        AsyncCorpusProcessor(str(tmp_path / "nada"), EngineConfig())


@pytest.fixture
def history_session():
    engine = create_engine(
        "sqlite://", connect_args={"check_same_thread": False}, poolclass=StaticPool
    )
    Base.metadata.create_all(bind=engine)
    session = sessionmaker(bind=engine)()
    yield session
    session.close()


def test_save_run_upserts_by_document_and_task(history_session):
    report = Report(task="gb", document="a.json", tag="", verdict="proper")
    save_run(history_session, JobRun, report)
    report.verdict = "unit"
    save_run(history_session, JobRun, report)
    runs = history_session.query(JobRun).all()
    assert len(runs) == 1
    assert runs[0].verdict == "unit"
    assert len(runs[0].report_digest) == 64


def test_corpus_run_records_history(history_session, tmp_path):
    shutil.copy(CORPUS_DIR / "radical_member.json", tmp_path / "radical_member.json")
    _process(tmp_path, db_session=history_session, model_class=JobRun)
    (run,) = history_session.query(JobRun).all()
    assert run.task == "radical" and run.passed is True


def test_alembic_config_reaches_the_history_migration():
    config = Config(str(CORPUS_DIR.parent / "alembic.ini"))
    assert config.get_main_option("sqlalchemy.url") == "sqlite:///data/forca.db"
    script = ScriptDirectory.from_config(config)
    assert [rev.revision for rev in script.walk_revisions()] == ["3f9a1c7e5d20"]
    assert {"loggers", "handlers", "formatters"} <= set(config.file_config.sections())


# ----------------------------------------------------------------------
# Linha de comando
# ----------------------------------------------------------------------


@pytest.fixture
def cli_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FORCA_LOG_FILE", str(tmp_path / "forca.log"))
    monkeypatch.delenv("FORCA_ORDER", raising=False)
    return tmp_path


def _write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


GB_DOC = {"task": "gb", "ring": {"variables": ["x", "y"]}, "ideal": ["x + y", "x - y"]}


def test_cli_single_task(cli_env, capsys):
    out = cli_env / "report.json"
    code = main.main(["gb", _write(cli_env / "gb.json", GB_DOC), "--no-history", "--json", str(out)])
    assert code == main.EXIT_OK
    assert "veredito: proper" in capsys.readouterr().out
    assert json.loads(out.read_text(encoding="utf-8"))["details"]["basis"] == ["x", "y"]


def test_cli_schema_errors(cli_env):
    broken = cli_env / "broken.json"
    broken.write_text("{", encoding="utf-8")
    assert main.main(["gb", str(broken), "--no-history"]) == main.EXIT_SCHEMA
    document = _write(cli_env / "gb.json", GB_DOC)
    assert main.main(["member", document, "--no-history"]) == main.EXIT_SCHEMA
    assert main.main(["gb", document, "--order", "bogus"]) == main.EXIT_SCHEMA


def test_cli_resource_limit(cli_env):
    document = _write(
        cli_env / "heavy.json",
        {
            "task": "gb",
            "ring": {"variables": ["x", "y", "z"]},
            "ideal": ["x^2 + y*z", "y^2 + x*z", "z^2 + x*y"],
        },
    )
    assert main.main(["gb", document, "--no-history", "--max-pairs", "1"]) == main.EXIT_RESOURCE


def test_cli_witness_mismatch(cli_env, monkeypatch):
    def broken_run(doc, config):
        raise WitnessMismatchError("cofatores")

    monkeypatch.setattr(main, "run_job", broken_run)
    document = _write(cli_env / "gb.json", GB_DOC)
    assert main.main(["gb", document, "--no-history"]) == main.EXIT_WITNESS


def test_cli_corpus_summary(cli_env, capsys):
    corpus = cli_env / "corpus"
    corpus.mkdir()
    shutil.copy(CORPUS_DIR / "radical_member.json", corpus / "radical_member.json")
    summary = cli_env / "resumo.json"
    code = main.main(["corpus", str(corpus), "--no-history", "--json", str(summary)])
    assert code == main.EXIT_OK
    assert json.loads(summary.read_text(encoding="utf-8"))["verdict"] == "pass"
    assert summary.with_suffix(".csv").exists()
    assert "1/1 aprovadas" in capsys.readouterr().out


def test_cli_missing_corpus(cli_env):
    assert main.main(["corpus", str(cli_env / "nada"), "--no-history"]) == main.EXIT_FAILURE


def test_cli_history(cli_env, capsys):
    document = _write(cli_env / "gb.json", GB_DOC)
    assert main.main(["gb", document]) == main.EXIT_OK
    capsys.readouterr()
    assert main.main(["history", "--limit", "5"]) == main.EXIT_OK
    assert "gb.json" in capsys.readouterr().out
