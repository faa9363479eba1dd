"""Deterministic file output: fixed-format CSV text, atomic writes, JSON
metadata sidecars.

Data files never contain timestamps, so identical runs produce identical
bytes; the sidecar carries the timestamp and parameters instead.
"""

from __future__ import annotations

import contextlib
import json
import os
import tempfile
from datetime import datetime, timezone
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "TOOL_VERSION",
    "format_value",
    "atomic_write_text",
    "matrix_csv_text",
    "dataset_csv_text",
    "dataset_basename",
    "sidecar_record",
    "write_sidecar",
]

try:
    from importlib.metadata import version as _dist_version
    TOOL_VERSION = _dist_version("artifact")
except Exception:  # not installed; tests may import from source tree
    TOOL_VERSION = "0+unknown"


def format_value(x) -> str:
    """17 significant digits for floats (round-trip safe); ints verbatim."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return "%.17g" % float(x)
    return str(x)


def atomic_write_text(path, text: str) -> None:
    """Write text via a same-directory temp file and an atomic rename."""
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".fraclap-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        with contextlib.suppress(OSError):
            os.unlink(tmp)
        raise


def matrix_csv_text(entries: np.ndarray, *, geometry, alpha, h, N, M) -> str:
    """Dense matrix as CSV under a geometry/alpha/h/N/M header comment."""
    lines = [f"# geometry={geometry} alpha={alpha} h={h} N={N} M={M}"]
    for row in np.asarray(entries, dtype=float):
        lines.append(",".join(format_value(x) for x in row))
    return "\n".join(lines) + "\n"


def dataset_csv_text(experiment: str, params: dict,
                     columns: Sequence[tuple[str, Iterable]]) -> str:
    """Column-oriented experiment CSV with self-describing header comments."""
    names = [name for name, _ in columns]
    series = [list(values) for _, values in columns]
    lengths = {len(s) for s in series}
    if len(lengths) != 1:
        raise ValueError(f"ragged columns {dict(zip(names, map(len, series)))}")
    header_params = " ".join(f"{k}={v}" for k, v in params.items())
    lines = [f"# experiment={experiment} {header_params}".rstrip(),
             "# columns: " + ",".join(names),
             ",".join(names)]
    for i in range(lengths.pop()):
        lines.append(",".join(format_value(s[i]) for s in series))
    return "\n".join(lines) + "\n"


def dataset_basename(experiment: str, alpha: float, h: float,
                     N: int, M: int) -> str:
    """Filename stem encoding (experiment, alpha, h, N, M)."""
    return f"{experiment}_alpha{alpha:g}_h{h:g}_N{int(N)}_M{int(M)}"


def sidecar_record(kind: str, params: dict, note: str | None = None) -> dict:
    rec = {
        "kind": kind,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "tool": "fraclap",
        "version": TOOL_VERSION,
        "parameters": params,
    }
    if note is not None:
        rec["note"] = note
    return rec


def write_sidecar(path, kind: str, params: dict,
                  note: str | None = None) -> None:
    """JSON sidecar next to a data file; carries timestamp and parameters."""
    record = sidecar_record(kind, params, note)
    atomic_write_text(path, json.dumps(record, indent=2, sort_keys=True) + "\n")
