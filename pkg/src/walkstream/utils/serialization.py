"""
Reading and writing experiment artifacts.

JSON is the canonical machine format (traces, fixtures, aggregate results);
CSV carries stream dumps and per-trial rows. Writers are deterministic: the
same input always produces byte-identical files.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from ..core.stream import Stream
from ..errors import StreamError

PathLike = Union[str, Path]

STREAM_COLUMNS = ("edge_u", "edge_v", "timestamp", "tiebreak")


def _plain(value: Any) -> Any:
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def to_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_plain) + "\n"


def write_json(obj: Any, path: PathLike) -> None:
    with open(path, "w") as f:
        f.write(to_json(obj))


def read_json(path: PathLike) -> Any:
    with open(path, "r") as f:
        return json.load(f)


def format_rows_csv(rows: Sequence[Dict[str, Any]], fieldnames: Optional[Sequence[str]] = None) -> str:
    """Dict rows as CSV text; columns default to the keys of the first row."""
    if fieldnames is None:
        fieldnames = list(rows[0].keys()) if rows else []
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: _cell(row.get(key)) for key in fieldnames})
    return buffer.getvalue()


def write_rows_csv(rows: Sequence[Dict[str, Any]], path: PathLike,
                   fieldnames: Optional[Sequence[str]] = None) -> None:
    with open(path, "w", newline="") as f:
        f.write(format_rows_csv(rows, fieldnames))


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return value


def read_rows_csv(path: PathLike) -> List[Dict[str, str]]:
    with open(path, "r", newline="") as f:
        return list(csv.DictReader(f))


def dump_stream_csv(stream: Stream, path: PathLike) -> None:
    """Dump every event in arrival order; ``repr`` keeps timestamps exact."""
    rows = (stream.event(i) for i in range(stream.m))
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(STREAM_COLUMNS)
        for e in rows:
            writer.writerow((e.u, e.v, repr(e.t), e.tiebreak))


def load_stream_csv(path: PathLike, directed: bool = False, n: Optional[int] = None) -> Stream:
    """Load a dump; files without a tiebreak column get row indices."""
    events: List[tuple] = []
    with open(path, "r", newline="") as f:
        reader = csv.DictReader(f)
        missing = {"edge_u", "edge_v", "timestamp"} - set(reader.fieldnames or ())
        if missing:
            raise StreamError(f"{path}: stream dump lacks columns {sorted(missing)}")
        for i, row in enumerate(reader):
            tiebreak = int(row["tiebreak"]) if row.get("tiebreak") not in (None, "") else i
            events.append((int(row["edge_u"]), int(row["edge_v"]), float(row["timestamp"]), tiebreak))
    return Stream.from_events(events, directed=directed, n=n)


def format_walks(walks: Iterable) -> str:
    """One walk per line as whitespace-separated vertex ids."""
    return "".join(" ".join(str(v) for v in walk) + "\n" for walk in walks)


def write_walks(walks: Iterable, path: PathLike) -> None:
    with open(path, "w") as f:
        f.write(format_walks(walks))
