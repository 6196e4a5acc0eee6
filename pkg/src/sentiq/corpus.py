"""Tweet and daily-price ingestion.

File formats:

* tweets (CSV): header ``id,timestamp,text,followers,comments,likes,retweets``;
  ``timestamp`` is integer epoch seconds (UTC), the four trailing columns are
  non-negative integer engagement counts.
* tweets (JSONL): one object per line with the same seven keys.
* prices (CSV): header ``date,price``; ISO dates, one row per calendar day with
  no gaps, strictly increasing; prices are positive and rounded to two fraction
  digits (half away from zero) on ingest.

Day bucketing uses UTC calendar days throughout.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal, InvalidOperation
from pathlib import Path
from typing import Iterable, Iterator

from .errors import CorpusError

logger = logging.getLogger(__name__)

TWEET_FIELDS = ("id", "timestamp", "text", "followers", "comments", "likes", "retweets")
_COUNT_FIELDS = ("followers", "comments", "likes", "retweets")
_UTC = dt.timezone.utc


def round_price(value: float | int | str | Decimal) -> float:
    """Round to two fraction digits, ties away from zero (99.999 -> 100.0)."""
    try:
        quantized = Decimal(str(value)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)
    except InvalidOperation as exc:
        raise CorpusError(f"not a decimal number: {value!r}") from exc
    return float(quantized)


def day_of(timestamp: int) -> dt.date:
    """UTC calendar day containing an epoch-second timestamp."""
    return dt.datetime.fromtimestamp(timestamp, tz=_UTC).date()


@dataclass(frozen=True)
class TweetRecord:
    """One raw tweet with its engagement counts."""

    id: str
    timestamp: int
    text: str
    followers: int
    comments: int
    likes: int
    retweets: int

    def __post_init__(self) -> None:
        if not self.id:
            raise CorpusError("tweet id must be non-empty")
        if not isinstance(self.timestamp, int) or isinstance(self.timestamp, bool):
            raise CorpusError(f"tweet {self.id}: timestamp must be an integer")
        if not self.text.strip():
            raise CorpusError(f"tweet {self.id}: text is empty")
        for name in _COUNT_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise CorpusError(f"tweet {self.id}: {name} must be a non-negative integer")

    def day(self) -> dt.date:
        return day_of(self.timestamp)


@dataclass(frozen=True)
class PricePoint:
    """Closing price for one calendar day."""

    date: dt.date
    price: float

    def __post_init__(self) -> None:
        if not self.price > 0:
            raise CorpusError(f"price on {self.date} must be positive, got {self.price}")


@dataclass(frozen=True)
class PriceSeries:
    """Contiguous daily price series (strictly increasing dates, no gaps)."""

    points: tuple[PricePoint, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise CorpusError("price series is empty")
        for prev, cur in zip(self.points, self.points[1:]):
            if cur.date <= prev.date:
                raise CorpusError(
                    f"price dates not strictly increasing: {cur.date} after {prev.date}"
                )
            if (cur.date - prev.date).days != 1:
                raise CorpusError(
                    f"price series has a gap: missing {prev.date + dt.timedelta(days=1)}"
                )

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, index: int) -> PricePoint:
        return self.points[index]

    def __iter__(self) -> Iterator[PricePoint]:
        return iter(self.points)

    @property
    def dates(self) -> tuple[dt.date, ...]:
        return tuple(p.date for p in self.points)

    @property
    def prices(self) -> tuple[float, ...]:
        return tuple(p.price for p in self.points)

    def window(self) -> tuple[dt.date, dt.date]:
        """Inclusive (first day, last day) span of the series."""
        return self.points[0].date, self.points[-1].date

    def slice(self, start: int, stop: int) -> "PriceSeries":
        return PriceSeries(self.points[start:stop])


@dataclass(frozen=True)
class DayBucket:
    """All tweets of one UTC calendar day, ordered by (timestamp, id).

    ``tweets`` holds raw records after :func:`bucket_by_day` and cleaned
    records once the preprocessing stage has run.
    """

    date: dt.date
    tweets: tuple


@dataclass(frozen=True)
class TweetLoadResult:
    """Loaded tweets plus the ingest warning summary."""

    records: tuple[TweetRecord, ...]
    dropped_out_of_window: int
    total_rows: int


def _build_record(raw: dict, where: str) -> TweetRecord:
    tweet_id = raw["id"]
    if isinstance(tweet_id, int) and not isinstance(tweet_id, bool):
        tweet_id = str(tweet_id)
    if not isinstance(tweet_id, str) or not tweet_id:
        raise CorpusError(f"{where}: field 'id': must be a non-empty string")
    values: dict[str, int] = {}
    for name in ("timestamp",) + _COUNT_FIELDS:
        value = raw[name]
        if isinstance(value, str):
            try:
                value = int(value, 10)
            except ValueError:
                raise CorpusError(f"{where}: field '{name}': not an integer: {raw[name]!r}")
        if not isinstance(value, int) or isinstance(value, bool):
            raise CorpusError(f"{where}: field '{name}': not an integer: {raw[name]!r}")
        values[name] = value
    text = raw["text"]
    if not isinstance(text, str) or not text.strip():
        raise CorpusError(f"{where}: field 'text': must be non-empty text")
    try:
        return TweetRecord(id=tweet_id, text=text, **values)
    except CorpusError as exc:
        raise CorpusError(f"{where}: {exc}") from None


def _iter_csv_rows(path: Path) -> Iterator[tuple[int, dict]]:
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path}: empty file, expected header {','.join(TWEET_FIELDS)}")
        if tuple(header) != TWEET_FIELDS:
            raise CorpusError(
                f"{path}:1: bad header {','.join(header)!r}, expected {','.join(TWEET_FIELDS)}"
            )
        for row in reader:
            if not row:
                continue
            if len(row) != len(TWEET_FIELDS):
                raise CorpusError(
                    f"{path}:{reader.line_num}: expected {len(TWEET_FIELDS)} fields, got {len(row)}"
                )
            yield reader.line_num, dict(zip(TWEET_FIELDS, row))


def _iter_jsonl_rows(path: Path) -> Iterator[tuple[int, dict]]:
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            if not isinstance(obj, dict):
                raise CorpusError(f"{path}:{lineno}: expected an object per line")
            missing = [k for k in TWEET_FIELDS if k not in obj]
            if missing:
                raise CorpusError(f"{path}:{lineno}: missing field '{missing[0]}'")
            yield lineno, obj


def load_tweets(
    path: str | Path,
    format: str = "csv",
    window: tuple[dt.date, dt.date] | None = None,
) -> TweetLoadResult:
    """Load and validate a tweet file.

    Records dated (UTC) outside the inclusive ``window`` are dropped and
    counted in the returned summary; a warning is logged when any are dropped.
    Duplicate ids, unknown formats, and malformed rows raise
    :class:`~sentiq.errors.CorpusError` naming the offending line and field.
    """
    path = Path(path)
    if format == "csv":
        rows = _iter_csv_rows(path)
    elif format == "jsonl":
        rows = _iter_jsonl_rows(path)
    else:
        raise CorpusError(f"unknown tweet format {format!r}, expected 'csv' or 'jsonl'")

    records: list[TweetRecord] = []
    seen_ids: set[str] = set()
    dropped = 0
    total = 0
    for lineno, raw in rows:
        total += 1
        record = _build_record(raw, f"{path}:{lineno}")
        if record.id in seen_ids:
            raise CorpusError(f"{path}:{lineno}: duplicate tweet id {record.id!r}")
        seen_ids.add(record.id)
        if window is not None and not (window[0] <= record.day() <= window[1]):
            dropped += 1
            continue
        records.append(record)
    if dropped:
        logger.warning(
            "%s: dropped %d of %d tweets outside window [%s, %s]",
            path, dropped, total, window[0], window[1],
        )
    return TweetLoadResult(tuple(records), dropped, total)


def write_tweets(records: Iterable[TweetRecord], path: str | Path, format: str = "csv") -> int:
    """Write records in file order; returns the row count."""
    path = Path(path)
    records = list(records)
    if format == "csv":
        with path.open("w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(TWEET_FIELDS)
            for r in records:
                writer.writerow(
                    [r.id, r.timestamp, r.text, r.followers, r.comments, r.likes, r.retweets]
                )
    elif format == "jsonl":
        with path.open("w", encoding="utf-8") as handle:
            for r in records:
                handle.write(json.dumps({k: getattr(r, k) for k in TWEET_FIELDS}) + "\n")
    else:
        raise CorpusError(f"unknown tweet format {format!r}, expected 'csv' or 'jsonl'")
    return len(records)


def load_prices(path: str | Path) -> PriceSeries:
    """Load a daily price CSV (``date,price``), rounding prices on ingest."""
    path = Path(path)
    points: list[PricePoint] = []
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path}: empty file, expected header date,price")
        if tuple(header) != ("date", "price"):
            raise CorpusError(f"{path}:1: bad header {','.join(header)!r}, expected date,price")
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise CorpusError(f"{path}:{reader.line_num}: expected 2 fields, got {len(row)}")
            try:
                date = dt.date.fromisoformat(row[0])
            except ValueError:
                raise CorpusError(
                    f"{path}:{reader.line_num}: field 'date': not an ISO date: {row[0]!r}"
                )
            try:
                price = round_price(row[1])
            except CorpusError:
                raise CorpusError(
                    f"{path}:{reader.line_num}: field 'price': not a number: {row[1]!r}"
                )
            try:
                points.append(PricePoint(date, price))
            except CorpusError as exc:
                raise CorpusError(f"{path}:{reader.line_num}: {exc}") from None
    try:
        return PriceSeries(tuple(points))
    except CorpusError as exc:
        raise CorpusError(f"{path}: {exc}") from None


def write_prices(series: PriceSeries, path: str | Path) -> int:
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["date", "price"])
        for point in series:
            writer.writerow([point.date.isoformat(), f"{point.price:.2f}"])
    return len(series)


def bucket_all_days(records: Iterable[TweetRecord]) -> tuple[DayBucket, ...]:
    """Group tweets by their own UTC days (no price series required)."""
    by_day: dict[dt.date, list[TweetRecord]] = {}
    for record in records:
        by_day.setdefault(record.day(), []).append(record)
    return tuple(
        DayBucket(date, tuple(sorted(by_day[date], key=lambda r: (r.timestamp, r.id))))
        for date in sorted(by_day)
    )


def bucket_by_day(records: Iterable[TweetRecord], series: PriceSeries) -> tuple[DayBucket, ...]:
    """Group tweets into one bucket per series day, ordered by (timestamp, id).

    Tweets dated outside the series span do not belong to any bucket and are
    ignored; the canonical flow drops them earlier via ``load_tweets(window=...)``.
    """
    by_day: dict[dt.date, list[TweetRecord]] = {date: [] for date in series.dates}
    for record in records:
        day = record.day()
        if day in by_day:
            by_day[day].append(record)
    return tuple(
        DayBucket(date, tuple(sorted(by_day[date], key=lambda r: (r.timestamp, r.id))))
        for date in series.dates
    )
