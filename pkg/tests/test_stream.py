from collections import Counter

import pytest
import numpy as np

from walkstream.core.generators import generate_graph
from walkstream.core.stream import (
    OrderStatisticStream,
    Stream,
    attach_timestamps,
    gen_order_statistics,
    make_stream,
    window,
)
from walkstream.errors import StreamError
from walkstream.oracles.metrics import same_law_pvalue, uniformity_pvalue


def test_make_stream_is_deterministic(cycle6):
    a = make_stream(cycle6, 11)
    b = make_stream(cycle6, 11)
    assert a.edges() == b.edges()
    assert np.array_equal(a.timestamps, b.timestamps)
    assert not np.array_equal(make_stream(cycle6, 12).timestamps, a.timestamps)


def test_make_stream_carries_every_edge_once(cubic8):
    s = make_stream(cubic8, 0)
    assert s.m == cubic8.num_edges
    assert s.n == cubic8.n
    assert s.to_graph() == cubic8
    t = s.timestamps
    assert np.all(t[1:] >= t[:-1])
    assert t[0] >= 0.0 and t[-1] < 1.0


def test_passes_are_counted(triangle):
    s = make_stream(triangle, 0)
    assert s.passes == 0
    events = list(s)
    assert len(events) == 3
    assert s.passes == 1
    s.edges()
    s.event(0)
    assert s.passes == 1
    list(s)
    assert s.passes == 2


def test_from_events_orders_by_time_then_tiebreak():
    s = Stream.from_events([(0, 1, 0.5, 2), (1, 2, 0.5, 1), (2, 3, 0.1, 9)])
    assert s.edges() == [(2, 3), (1, 2), (0, 1)]
    assert s.n == 4


def test_stream_rejects_bad_input():
    with pytest.raises(StreamError):
        Stream.from_events([(0, 1, 1.0)])
    with pytest.raises(StreamError):
        Stream.from_events([(0, 1, -0.1)])
    with pytest.raises(StreamError, match="Duplicate"):
        Stream.from_events([(0, 1, 0.5, 7), (1, 2, 0.5, 7)])
    with pytest.raises(StreamError):
        Stream.from_events([(0, 5, 0.5)], n=3)


def test_empty_stream():
    s = Stream.from_events([], n=3)
    assert s.m == 0
    assert list(s) == []
    assert window(s, 0.0, 1.0) == []


def test_window_bounds():
    s = Stream.from_events([(0, 1, 0.1), (1, 2, 0.2), (2, 3, 0.3), (3, 4, 0.9)])
    assert [e.edge for e in window(s, 0.1, 0.3)] == [(0, 1), (1, 2)]
    assert [e.edge for e in window(s, 0.3, 0.9, closed_hi=True)] == [(2, 3), (3, 4)]
    assert window(s, 0.4, 0.4) == []
    with pytest.raises(StreamError):
        window(s, 0.5, 0.4)
    with pytest.raises(StreamError):
        window(s, 0.0, 1.5)


def test_window_fraction_matches_width():
    big = make_stream(generate_graph("path", 1001), 4)
    assert abs(len(window(big, 0.2, 0.5)) - 300) < 60


def test_stream_order_is_a_uniform_permutation():
    star = generate_graph("star", 4)
    orders = Counter(tuple(make_stream(star, seed).edges()) for seed in range(12000))
    assert len(orders) == 6
    assert uniformity_pvalue(list(orders.values())) > 1e-3


def test_order_statistics_sorted_and_in_range():
    values = list(gen_order_statistics(1000, 5))
    assert len(values) == 1000
    assert all(0.0 < v < 1.0 for v in values)
    assert all(a <= b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("index", [0, 9, 24, 49])
def test_order_statistics_match_sorted_uniforms(index):
    rng = np.random.default_rng(8 + index)
    n = 50
    streamed = [list(OrderStatisticStream(n, rng))[index] for _ in range(2000)]
    sorted_uniforms = [np.sort(rng.random(n))[index] for _ in range(2000)]
    assert same_law_pvalue(streamed, sorted_uniforms) > 1e-3


def test_order_statistic_means():
    n = 100
    runs = np.array([list(gen_order_statistics(n, seed)) for seed in range(4000)])
    assert abs(runs[:, 0].mean() - 1 / 101) < 7e-4
    assert abs(runs[:, 49].mean() - 50 / 101) < 4e-3
    assert abs(runs[:, -1].mean() - 100 / 101) < 7e-4


def test_order_statistics_need_positive_n(rng):
    with pytest.raises(StreamError):
        OrderStatisticStream(0, rng)
    assert OrderStatisticStream.retained_values == 2


def test_attach_timestamps_keeps_input_order():
    edges = [(3, 4), (0, 1), (1, 2), (2, 3)]
    s = attach_timestamps(edges, seed=2)
    assert s.edges() == edges
    assert np.all(np.diff(s.timestamps) >= 0)
    assert attach_timestamps([], seed=2, n=2).m == 0
