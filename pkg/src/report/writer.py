"""
Escrita e leitura dos resultados em CSV.
Linhas de metadados prefixadas com '#' precedem o cabeçalho.
"""

import io
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

import pandas as pd

from .table import ResultTable

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.9g"
TEXT_COLUMNS = ("arch", "flags")


def _metadata_lines(metadata: Dict[str, Any]) -> str:
    lines = []
    for key in metadata:
        value = json.dumps(metadata[key], sort_keys=True, default=str)
        lines.append(f"# {key}: {value}\n")
    return "".join(lines)


def _write(destination: Path, content: str) -> Path:
    try:
        destination.parent.mkdir(parents=True, exist_ok=True)
        with open(destination, "w", encoding="utf-8", newline="") as f:
            f.write(content)
    except OSError as e:
        raise OSError(f"falha ao escrever {destination}: {e}") from e
    return destination


def render_csv(table: ResultTable) -> str:
    """Conteúdo do CSV: metadados, cabeçalho e uma linha por amostra."""
    buffer = io.StringIO()
    buffer.write(_metadata_lines(table.metadata))
    table.to_frame().to_csv(buffer, index=False, float_format=FLOAT_FORMAT,
                            na_rep="nan", lineterminator="\n")
    return buffer.getvalue()


def emit_csv(table: ResultTable, destination: str) -> str:
    """
    Gera o arquivo CSV de amostras.

    Args:
        table: Tabela de resultados
        destination: Caminho do arquivo de saída

    Returns:
        Caminho do arquivo gerado
    """
    path = _write(Path(destination), render_csv(table))
    logger.info(f"CSV gerado: {path} ({len(table)} amostras)")
    return str(path)


def summary_path(destination: str) -> Path:
    path = Path(destination)
    return path.with_name(f"{path.stem}_summary{path.suffix or '.csv'}")


def emit_summary_csv(table: ResultTable, destination: str) -> str:
    """Gera <stem>_summary.csv ao lado do CSV de amostras."""
    buffer = io.StringIO()
    buffer.write(_metadata_lines(table.metadata))
    table.summary().to_csv(buffer, index=False, float_format=FLOAT_FORMAT,
                           na_rep="nan", lineterminator="\n")
    path = _write(summary_path(destination), buffer.getvalue())
    logger.info(f"Resumo gerado: {path}")
    return str(path)


def read_results(path: str) -> Tuple[Dict[str, Any], pd.DataFrame]:
    """
    Lê um CSV gerado por emit_csv.

    Returns:
        Tupla (metadados, DataFrame de amostras)
    """
    metadata: Dict[str, Any] = {}
    header: List[str] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("#"):
                header = line.strip().split(",")
                break
            key, _, value = line[1:].strip().partition(": ")
            metadata[key] = json.loads(value)

    # Colunas de texto preservam a string vazia; as numéricas leem 'nan'
    text = [c for c in header if c in TEXT_COLUMNS]
    frame = pd.read_csv(path, comment="#", keep_default_na=False,
                        na_values={c: ["nan"] for c in header if c not in TEXT_COLUMNS},
                        dtype={c: str for c in text})
    return metadata, frame
