import datetime as dt
import logging

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import D0, T0, make_series, make_tweet
from sentiq.corpus import (
    CorpusError,
    PricePoint,
    PriceSeries,
    TweetRecord,
    bucket_all_days,
    bucket_by_day,
    day_of,
    load_prices,
    load_tweets,
    round_price,
    write_prices,
    write_tweets,
)

DAY = 86_400


# ---------------------------------------------------------------------------
# round_price


def test_round_price_half_up():
    assert round_price("99.999") == 100.0
    assert round_price(99.999) == 100.0
    assert round_price("1.005") == 1.01
    assert round_price("1.004") == 1.0
    assert round_price(100) == 100.0


def test_round_price_ties_away_from_zero_for_negatives():
    assert round_price("-1.005") == -1.01


def test_round_price_rejects_garbage():
    with pytest.raises(CorpusError):
        round_price("abc")


# ---------------------------------------------------------------------------
# record validation


def test_tweet_record_rejects_negative_counts():
    for field in ("followers", "comments", "likes", "retweets"):
        with pytest.raises(CorpusError, match=field):
            make_tweet("t1", **{field: -1})


def test_tweet_record_rejects_empty_id_and_blank_text():
    with pytest.raises(CorpusError):
        make_tweet("")
    with pytest.raises(CorpusError):
        make_tweet("t1", text="   ")


def test_tweet_record_rejects_non_integer_fields():
    with pytest.raises(CorpusError):
        TweetRecord("t1", 1.5, "x", 0, 0, 0, 0)
    with pytest.raises(CorpusError):
        TweetRecord("t1", True, "x", 0, 0, 0, 0)
    with pytest.raises(CorpusError):
        TweetRecord("t1", T0, "x", 0, 0, 0, True)


def test_price_point_must_be_positive():
    with pytest.raises(CorpusError):
        PricePoint(D0, 0.0)
    with pytest.raises(CorpusError):
        PricePoint(D0, -5.0)


def test_price_series_rejects_gap_and_disorder():
    a = PricePoint(D0, 1.0)
    c = PricePoint(D0 + dt.timedelta(days=2), 1.0)
    with pytest.raises(CorpusError, match=str(D0 + dt.timedelta(days=1))):
        PriceSeries((a, c))
    with pytest.raises(CorpusError, match="strictly increasing"):
        PriceSeries((c, a))
    with pytest.raises(CorpusError, match="strictly increasing"):
        PriceSeries((a, a))
    with pytest.raises(CorpusError):
        PriceSeries(())


def test_price_series_accessors():
    series = make_series([10.0, 11.0, 12.0])
    assert len(series) == 3
    assert series[1].price == 11.0
    assert series.window() == (D0, D0 + dt.timedelta(days=2))
    assert series.slice(1, 3).dates == (D0 + dt.timedelta(days=1), D0 + dt.timedelta(days=2))
    assert series.prices == (10.0, 11.0, 12.0)


# ---------------------------------------------------------------------------
# load_tweets (CSV)


def write_lines(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


HEADER = "id,timestamp,text,followers,comments,likes,retweets"


def test_load_tweets_csv_well_formed(tmp_path):
    path = write_lines(
        tmp_path / "t.csv",
        [
            HEADER,
            f"a,{T0},first tweet,1,2,3,4",
            f"b,{T0 + 60},second tweet,5,6,7,8",
            f"c,{T0 + 120},third tweet,9,10,11,12",
        ],
    )
    result = load_tweets(path)
    assert len(result.records) == 3
    assert result.dropped_out_of_window == 0
    assert result.total_rows == 3
    assert result.records[0] == make_tweet(
        "a", T0, "first tweet", followers=1, comments=2, likes=3, retweets=4
    )


def test_load_tweets_negative_count_names_line(tmp_path):
    path = write_lines(
        tmp_path / "t.csv",
        [HEADER, f"a,{T0},ok,1,1,1,1", f"b,{T0},bad,-1,0,0,0"],
    )
    with pytest.raises(CorpusError, match=r":3: .*followers"):
        load_tweets(path)


def test_load_tweets_window_drops_and_warns(tmp_path, caplog):
    rows = [HEADER]
    for i, ts in enumerate([T0 - DAY, T0, T0 + DAY, T0 + 2 * DAY, T0 + 9 * DAY]):
        rows.append(f"t{i},{ts},text {i},0,0,0,0")
    path = write_lines(tmp_path / "t.csv", rows)
    window = (D0, D0 + dt.timedelta(days=2))
    with caplog.at_level(logging.WARNING):
        result = load_tweets(path, window=window)
    assert len(result.records) == 3
    assert result.dropped_out_of_window == 2
    assert result.total_rows == 5
    assert any("dropped 2 of 5" in rec.getMessage() for rec in caplog.records)


def test_load_tweets_duplicate_id(tmp_path):
    path = write_lines(
        tmp_path / "t.csv",
        [HEADER, f"a,{T0},one,0,0,0,0", f"a,{T0 + 1},two,0,0,0,0"],
    )
    with pytest.raises(CorpusError, match="duplicate tweet id"):
        load_tweets(path)


def test_load_tweets_structural_errors(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(CorpusError, match="empty file"):
        load_tweets(empty)

    bad_header = write_lines(tmp_path / "h.csv", ["id,timestamp,text", "a,1,x"])
    with pytest.raises(CorpusError, match="bad header"):
        load_tweets(bad_header)

    short_row = write_lines(tmp_path / "s.csv", [HEADER, f"a,{T0},x,0,0,0"])
    with pytest.raises(CorpusError, match=r":2: expected 7 fields"):
        load_tweets(short_row)

    bad_int = write_lines(tmp_path / "i.csv", [HEADER, "a,notanum,x,0,0,0,0"])
    with pytest.raises(CorpusError, match="timestamp"):
        load_tweets(bad_int)

    with pytest.raises(CorpusError, match="unknown tweet format"):
        load_tweets(short_row, format="xml")


# ---------------------------------------------------------------------------
# load_tweets (JSONL)


def test_load_tweets_jsonl(tmp_path):
    path = write_lines(
        tmp_path / "t.jsonl",
        [
            f'{{"id": "a", "timestamp": {T0}, "text": "first", "followers": 1, "comments": 0, "likes": 0, "retweets": 0}}',
            "",
            f'{{"id": "b", "timestamp": {T0 + 5}, "text": "second", "followers": 2, "comments": 0, "likes": 0, "retweets": 0}}',
        ],
    )
    result = load_tweets(path, format="jsonl")
    assert [r.id for r in result.records] == ["a", "b"]
    assert result.records[0].followers == 1


def test_load_tweets_jsonl_errors(tmp_path):
    bad_json = write_lines(tmp_path / "a.jsonl", ["{not json"])
    with pytest.raises(CorpusError, match=r":1: invalid JSON"):
        load_tweets(bad_json, format="jsonl")

    not_object = write_lines(tmp_path / "b.jsonl", ["[1, 2]"])
    with pytest.raises(CorpusError, match="expected an object"):
        load_tweets(not_object, format="jsonl")

    missing = write_lines(tmp_path / "c.jsonl", ['{"id": "a", "timestamp": 1}'])
    with pytest.raises(CorpusError, match="missing field 'text'"):
        load_tweets(missing, format="jsonl")


# ---------------------------------------------------------------------------
# write/load round trips


AWKWARD_TEXTS = [
    'comma, "quoted", done',
    "line one\nline two",
    "tab\there",
    "unicode ☃ emoji 🚀",
    "  padded  ",
]


@pytest.mark.parametrize("format", ["csv", "jsonl"])
def test_tweets_round_trip(tmp_path, format):
    records = [
        make_tweet(f"t{i}", T0 + i, text, followers=i, comments=2 * i, likes=3 * i, retweets=4 * i)
        for i, text in enumerate(AWKWARD_TEXTS)
    ]
    path = tmp_path / f"rt.{format}"
    assert write_tweets(records, path, format=format) == len(records)
    loaded = load_tweets(path, format=format)
    assert list(loaded.records) == records


def test_load_is_idempotent(tmp_path):
    records = [make_tweet(f"t{i}", T0 + i, f"text {i}") for i in range(10)]
    path = tmp_path / "t.csv"
    write_tweets(records, path)
    first = load_tweets(path)
    second = load_tweets(path)
    assert first.records == second.records


def test_prices_round_trip(tmp_path):
    series = make_series([100.0, 110.55, 99.01])
    path = tmp_path / "p.csv"
    assert write_prices(series, path) == 3
    assert load_prices(path) == series


# ---------------------------------------------------------------------------
# load_prices


def test_load_prices_basic(tmp_path):
    path = write_lines(tmp_path / "p.csv", ["date,price", "2021-03-01,100.00", "2021-03-02,110.00"])
    series = load_prices(path)
    assert len(series) == 2
    assert series.prices == (100.0, 110.0)


def test_load_prices_gap_names_missing_day(tmp_path):
    path = write_lines(tmp_path / "p.csv", ["date,price", "2021-03-01,100.00", "2021-03-03,120.00"])
    with pytest.raises(CorpusError, match="2021-03-02"):
        load_prices(path)


def test_load_prices_rounds_on_ingest(tmp_path):
    path = write_lines(tmp_path / "p.csv", ["date,price", "2021-03-01,99.999"])
    assert load_prices(path).prices == (100.0,)


def test_load_prices_errors(tmp_path):
    nonpos = write_lines(tmp_path / "a.csv", ["date,price", "2021-03-01,0"])
    with pytest.raises(CorpusError, match="positive"):
        load_prices(nonpos)

    unordered = write_lines(
        tmp_path / "b.csv", ["date,price", "2021-03-02,1", "2021-03-01,2"]
    )
    with pytest.raises(CorpusError, match="strictly increasing"):
        load_prices(unordered)

    bad_date = write_lines(tmp_path / "c.csv", ["date,price", "marchish,1"])
    with pytest.raises(CorpusError, match=r":2: .*not an ISO date"):
        load_prices(bad_date)

    bad_price = write_lines(tmp_path / "d.csv", ["date,price", "2021-03-01,lots"])
    with pytest.raises(CorpusError, match=r":2: .*not a number"):
        load_prices(bad_price)

    bad_header = write_lines(tmp_path / "e.csv", ["day,close", "2021-03-01,1"])
    with pytest.raises(CorpusError, match="bad header"):
        load_prices(bad_header)


# ---------------------------------------------------------------------------
# day bucketing


def test_bucket_by_day_empty_corpus():
    series = make_series([1.0, 1.5, 2.0])
    buckets = bucket_by_day([], series)
    assert len(buckets) == 3
    assert [b.date for b in buckets] == list(series.dates)
    assert all(b.tweets == () for b in buckets)


def test_bucket_by_day_groups_same_day():
    series = make_series([1.0, 1.5])
    tweets = [make_tweet("a", T0 + 10), make_tweet("b", T0 + 20)]
    buckets = bucket_by_day(tweets, series)
    assert len(buckets[0].tweets) == 2
    assert len(buckets[1].tweets) == 0


def test_bucket_by_day_midnight_boundary():
    series = make_series([1.0, 1.5])
    before = make_tweet("a", T0 + DAY - 1)  # 23:59:59 on day 0
    after = make_tweet("b", T0 + DAY + 1)  # 00:00:01 on day 1
    assert day_of(before.timestamp) == D0
    assert day_of(after.timestamp) == D0 + dt.timedelta(days=1)
    buckets = bucket_by_day([before, after], series)
    assert [t.id for t in buckets[0].tweets] == ["a"]
    assert [t.id for t in buckets[1].tweets] == ["b"]


def test_bucket_by_day_orders_by_timestamp_then_id():
    series = make_series([1.0])
    tweets = [
        make_tweet("z", T0 + 5),
        make_tweet("b", T0 + 9),
        make_tweet("a", T0 + 9),
    ]
    buckets = bucket_by_day(tweets, series)
    assert [t.id for t in buckets[0].tweets] == ["z", "a", "b"]


def test_bucket_by_day_ignores_out_of_span():
    series = make_series([1.0])
    tweets = [make_tweet("in", T0), make_tweet("out", T0 + 3 * DAY)]
    buckets = bucket_by_day(tweets, series)
    assert [t.id for t in buckets[0].tweets] == ["in"]


def test_bucket_all_days_groups_by_own_days():
    tweets = [make_tweet("a", T0), make_tweet("b", T0 + 2 * DAY), make_tweet("c", T0 + 1)]
    buckets = bucket_all_days(tweets)
    assert [b.date for b in buckets] == [D0, D0 + dt.timedelta(days=2)]
    assert [t.id for t in buckets[0].tweets] == ["a", "c"]


# ---------------------------------------------------------------------------
# partition property: every loaded tweet lands in exactly one bucket


@settings(max_examples=50, deadline=None)
@given(
    offsets=st.lists(st.integers(min_value=-2 * DAY, max_value=6 * DAY), max_size=40),
    n_days=st.integers(min_value=1, max_value=4),
)
def test_window_partition_property(tmp_path_factory, offsets, n_days):
    records = [make_tweet(f"t{i}", T0 + off, f"text {i}") for i, off in enumerate(offsets)]
    path = tmp_path_factory.mktemp("part") / "t.csv"
    write_tweets(records, path)
    series = make_series([10.0 + i for i in range(n_days)])
    loaded = load_tweets(path, window=series.window())
    assert loaded.total_rows == len(records)
    assert len(loaded.records) + loaded.dropped_out_of_window == loaded.total_rows
    buckets = bucket_by_day(loaded.records, series)
    assert sum(len(b.tweets) for b in buckets) == len(loaded.records)
    for bucket in buckets:
        assert all(t.day() == bucket.date for t in bucket.tweets)
