"""
CSV 와 텍스트 산출물 기록 (원자적 쓰기: 임시 파일 후 rename)
"""

import csv
import io
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from src.core.exceptions import ScenarioError, UsageError

logger = logging.getLogger(__name__)

Table = Sequence[Mapping[str, object]]


def _cell(value: object) -> tuple[str, bool]:
    """(문자열, 유한하지 않은 실수 여부)"""
    if isinstance(value, (bool, np.bool_)):
        return ("true" if value else "false"), False
    if isinstance(value, (int, np.integer)):
        return str(int(value)), False
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return format(value, ".17g"), not math.isfinite(value)
    if value is None:
        return "", False
    return str(value.value if hasattr(value, "value") else value), False


def write_text(text: str, path: Path) -> Path:
    """text 를 path 에 원자적으로 씁니다 (LF 줄바꿈, UTF-8).

    Raises:
        ScenarioError: 디렉터리를 만들거나 쓸 수 없음
    """
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", newline="", dir=path.parent, prefix=f".{path.name}.", delete=False
        ) as handle:
            handle.write(text)
            tmp = handle.name
        os.replace(tmp, path)
    except OSError as exc:
        raise ScenarioError(f"cannot write {path}: {exc}") from exc
    return path


def emit_csv(table: Table, path: Path, columns: Sequence[str] | None = None) -> int:
    """직사각형 표를 CSV 로 씁니다.

    헤더 한 줄, '.' 소수점, 유효숫자 17자리, LF 줄바꿈. 같은 입력이면 같은 바이트가 나온다.

    Args:
        table: 같은 키 (순서 포함) 를 가진 행 목록
        path: 출력 경로
        columns: 빈 표에도 쓸 헤더 (기본값은 첫 행의 키)

    Returns:
        nan/inf 로 기록된 칸의 수

    Raises:
        UsageError: 행마다 열이 다름
        ScenarioError: 쓰기 실패
    """
    header = list(columns) if columns is not None else (list(table[0].keys()) if table else [])
    lines: list[list[str]] = [header]
    non_finite = 0
    for i, row in enumerate(table):
        if list(row.keys()) != header:
            raise UsageError(f"row {i} of {Path(path).name} has columns {list(row.keys())}, expected {header}")
        cells = []
        for value in row.values():
            text, bad = _cell(value)
            non_finite += bad
            cells.append(text)
        lines.append(cells)

    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\n").writerows(lines)
    write_text(buffer.getvalue(), path)
    if non_finite:
        logger.warning("%s: %d non-finite value(s) written as nan/inf", Path(path).name, non_finite)
    return non_finite
