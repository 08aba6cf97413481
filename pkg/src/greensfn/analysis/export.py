"""Atomic CSV/JSON writers for kernel snapshots, solutions and funnel bundles."""
import os
import tempfile
from typing import Any, Sequence

import numpy as np

from greensfn.analysis.report_generation import render_json
from greensfn.utils.logger import setup_logger

logger = setup_logger(__name__)


def write_atomic(path: str, text: str) -> str:
    """Write ``text`` to a temporary file next to ``path`` and rename it into place."""
    path = os.path.abspath(path)
    directory = os.path.dirname(path)
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    logger.debug("Wrote file", extra={"path": path, "bytes": len(text)})
    return path


def csv_text(header: Sequence[str], rows: np.ndarray) -> str:
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    lines = [",".join(header)]
    lines.extend(",".join("%.17g" % v for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_csv(path: str, header: Sequence[str], rows: np.ndarray) -> str:
    return write_atomic(path, csv_text(header, rows))


def write_json(path: str, report: Any) -> str:
    return write_atomic(path, render_json(report))


def write_matrix_csv(path: str, nodes: np.ndarray, matrix: np.ndarray) -> str:
    """Row-major matrix with a header row holding the column nodes s_j."""
    header = ["%.17g" % s for s in nodes]
    return write_csv(path, header, matrix)


def solution_rows(t: np.ndarray, x: np.ndarray, dx: np.ndarray, w: np.ndarray) -> np.ndarray:
    return np.column_stack([t, x, dx, w])


def solution_header(dim: int) -> list:
    return (
        ["t"]
        + [f"x_{k}" for k in range(1, dim + 1)]
        + [f"dx_{k}" for k in range(1, dim + 1)]
        + [f"w_{k}" for k in range(1, dim + 1)]
    )
