"""Shared builders and measurement helpers for the test suite."""

from __future__ import annotations

import datetime as dt
import subprocess
import sys

import numpy as np

from sentiq.attributes import Attribute, build_dataset
from sentiq.corpus import PricePoint, PriceSeries, TweetRecord, bucket_by_day
from sentiq.preprocess import clean_and_dedup
from sentiq.sentiment import DailySignal, daily_signals

D0 = dt.date(2021, 3, 1)
T0 = 1_614_556_800  # 2021-03-01T00:00:00Z


def make_tweet(
    id: str,
    timestamp: int = T0,
    text: str = "hello world",
    followers: int = 0,
    comments: int = 0,
    likes: int = 0,
    retweets: int = 0,
) -> TweetRecord:
    return TweetRecord(
        id=id,
        timestamp=timestamp,
        text=text,
        followers=followers,
        comments=comments,
        likes=likes,
        retweets=retweets,
    )


def make_series(prices, start: dt.date = D0) -> PriceSeries:
    return PriceSeries(
        tuple(
            PricePoint(start + dt.timedelta(days=i), float(p))
            for i, p in enumerate(prices)
        )
    )


def make_signals(series: PriceSeries, compounds) -> tuple[DailySignal, ...]:
    return tuple(
        DailySignal(date, float(c), 1) for date, c in zip(series.dates, compounds)
    )


def attribute_signal_series(tweets, series, lexicon, attribute: Attribute | None):
    """The canonical pipeline: bucket, clean+dedup, filter, daily signals."""
    buckets = clean_and_dedup(bucket_by_day(tweets, series))
    return daily_signals(build_dataset(buckets, attribute).buckets, lexicon)


def signal_return_correlation(tweets, series, lexicon, attribute: Attribute | None) -> float:
    """Correlation between a day's filtered mean compound and the next day's log return."""
    signals = attribute_signal_series(tweets, series, lexicon, attribute)
    next_day_return = np.diff(np.log(np.asarray(series.prices)))
    compound = np.array([s.mean_compound for s in signals])[:-1]
    return float(np.corrcoef(compound, next_day_return)[0, 1])


def run_cli(args, cwd) -> tuple[int, str, str]:
    proc = subprocess.run(
        [sys.executable, "-m", "sentiq.cli", *map(str, args)],
        capture_output=True,
        text=True,
        cwd=cwd,
    )
    return proc.returncode, proc.stdout, proc.stderr
