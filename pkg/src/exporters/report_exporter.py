"""
Módulo responsável pela exportação dos relatórios (JSON canônico, texto e CSV).
"""

import csv
import hashlib
import json
from pathlib import Path
from datetime import datetime
from typing import List, Optional
import logging

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["documento", "tag", "tarefa", "veredito", "passou", "problemas", "tempo_ms"]


def canonical_json(document: dict) -> str:
    """JSON com chaves ordenadas e separadores fixos, terminado em quebra de linha."""
    return json.dumps(document, sort_keys=True, ensure_ascii=False, indent=2, separators=(",", ": ")) + "\n"


def report_digest(report) -> str:
    """sha256 do relatório de máquina (sem tempo de execução)."""
    return hashlib.sha256(canonical_json(report.to_machine()).encode("utf-8")).hexdigest()


class ReportExporter:
    """Grava relatórios de tarefas e o resumo do corpus."""

    def __init__(self, export_dir: str = "exports"):
        """
        Inicializa o exportador.

        Args:
            export_dir: Diretório padrão dos arquivos gerados
        """
        self.export_dir = Path(export_dir)

    def _target(self, path: Optional[str], stem: str, suffix: str) -> Path:
        if path:
            target = Path(path)
        else:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            target = self.export_dir / f"{stem}_{timestamp}{suffix}"
        target.parent.mkdir(parents=True, exist_ok=True)
        return target

    def export_json(self, report, path: Optional[str] = None) -> str:
        """
        Grava o relatório de máquina.

        Args:
            report: Report (ou resumo do corpus)
            path: Caminho de destino (padrão: export_dir com timestamp)

        Returns:
            Caminho do arquivo gerado
        """
        target = self._target(path, f"forca_{report.task}", ".json")
        with open(target, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(canonical_json(report.to_machine()))
        logger.info(f"Relatório JSON gerado: {target}")
        return str(target)

    def export_summary_csv(self, reports: List, path: Optional[str] = None) -> Optional[str]:
        """
        Grava uma linha por entrada do corpus.

        Returns:
            Caminho do CSV, ou None se não houver entradas
        """
        if not reports:
            logger.warning("Nenhuma entrada do corpus para exportar")
            return None
        target = self._target(path, "forca_corpus", ".csv")
        try:
            with open(target, "w", newline="", encoding="utf-8-sig") as handle:
                writer = csv.DictWriter(handle, fieldnames=SUMMARY_COLUMNS)
                writer.writeheader()
                for report in reports:
                    writer.writerow(
                        {
                            "documento": report.document,
                            "tag": report.tag,
                            "tarefa": report.task,
                            "veredito": report.verdict,
                            "passou": "sim" if report.passed else "não",
                            "problemas": "; ".join(report.problems),
                            "tempo_ms": f"{report.duration_ms:.1f}",
                        }
                    )
            logger.info(f"Resumo CSV do corpus gerado: {target} ({len(reports)} entradas)")
            return str(target)
        except Exception as e:
            logger.error(f"Erro ao exportar resumo do corpus: {str(e)}")
            raise
