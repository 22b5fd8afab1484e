import json

import pytest
import numpy as np

from walkstream.core.graph import Walk
from walkstream.core.stream import make_stream
from walkstream.errors import StreamError
from walkstream.utils.serialization import (
    STREAM_COLUMNS,
    dump_stream_csv,
    format_rows_csv,
    format_walks,
    load_stream_csv,
    read_json,
    read_rows_csv,
    to_json,
    write_json,
    write_rows_csv,
    write_walks,
)


def test_stream_dump_replays_exactly(tmp_path, cubic8):
    stream = make_stream(cubic8, 5)
    path = tmp_path / "stream.csv"
    dump_stream_csv(stream, path)
    assert path.read_text().splitlines()[0] == ",".join(STREAM_COLUMNS)
    loaded = load_stream_csv(path, n=cubic8.n)
    assert [loaded.event(i) for i in range(loaded.m)] == [stream.event(i) for i in range(stream.m)]
    assert loaded.to_graph() == cubic8


def test_stream_dump_without_tiebreak(tmp_path):
    path = tmp_path / "plain.csv"
    path.write_text("edge_u,edge_v,timestamp\n0,1,0.5\n1,2,0.25\n")
    loaded = load_stream_csv(path)
    assert loaded.edges() == [(1, 2), (0, 1)]
    assert loaded.event(1).tiebreak == 0


def test_stream_dump_missing_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("u,v\n0,1\n")
    with pytest.raises(StreamError, match="lacks columns"):
        load_stream_csv(path)


def test_json_is_deterministic_and_handles_numpy(tmp_path):
    record = {"b": np.int64(3), "a": np.float64(0.5), "walk": np.array([0, 1, 2])}
    text = to_json(record)
    assert text == to_json(dict(reversed(list(record.items()))))
    assert json.loads(text) == {"a": 0.5, "b": 3, "walk": [0, 1, 2]}
    path = tmp_path / "r.json"
    write_json(record, path)
    assert read_json(path) == {"a": 0.5, "b": 3, "walk": [0, 1, 2]}
    with pytest.raises(TypeError):
        to_json({"x": object()})


def test_rows_csv(tmp_path):
    rows = [{"trial": 0, "estimate": 0.1, "walk": [0, 1, 0]},
            {"trial": 1, "estimate": None, "walk": [2, 3]}]
    text = format_rows_csv(rows)
    assert text.splitlines() == ["trial,estimate,walk", "0,0.1,0 1 0", "1,,2 3"]
    path = tmp_path / "rows.csv"
    write_rows_csv(rows, path, fieldnames=["trial", "estimate"])
    assert read_rows_csv(path) == [{"trial": "0", "estimate": "0.1"}, {"trial": "1", "estimate": ""}]
    assert format_rows_csv([]).strip() == ""


def test_write_walks(tmp_path):
    path = tmp_path / "walks.txt"
    write_walks([Walk.of(0, 1, 2), Walk.of(3)], path)
    assert path.read_text() == "0 1 2\n3\n"
    assert format_walks([[4, 5], [6]]) == "4 5\n6\n"
    assert format_walks([]) == ""
