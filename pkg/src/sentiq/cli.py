"""Command-line interface.

Subcommands mirror the pipeline stages: ``synth`` (corpus generation),
``preprocess`` (clean + per-day dedup), ``split`` (attribute top-half
dataset), ``sentiment`` (daily signal series), ``train`` / ``predict``
(Q-model), ``evaluate`` (accuracy report), and ``compare`` (classic vs
filtered benchmark).

Every value can come from three layers with rising precedence: built-in
defaults, a ``--config`` file of flat ``key = value`` lines, then explicit
flags. Unknown config keys are rejected. All outputs go to explicit
``--out`` style paths; nothing is written implicitly.

Exit codes: 0 success, 1 failure (one-line message on stderr), 2 usage.
"""

from __future__ import annotations

import argparse
import csv
import datetime as dt
import json
import logging
import sys
from pathlib import Path

from . import bench, corpus, preprocess, qlearn, synth
from .attributes import Attribute, build_dataset
from .errors import ConfigError, CorpusError, SentiqError
from .metrics import evaluate
from .sentiment import Lexicon, builtin_lexicon, daily_signals, load_lexicon

logger = logging.getLogger(__name__)

_INT_KEYS = {
    "action_min", "action_max", "episodes", "sentiment_bins", "seed",
    "days", "tweets_per_day",
}
_FLOAT_KEYS = {
    "gamma", "theta", "epsilon_start", "epsilon_end", "price_bucket_width",
    "price_max", "rho", "base_price", "daily_vol", "train_frac", "budget",
    "target_vaf", "timeout", "profile_interval",
}
_STR_KEYS = {
    "state", "reward", "attribute", "format", "tweets", "prices", "lexicon",
    "model", "out",
}
CONFIG_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS


def load_run_config(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` config file."""
    values: dict[str, str] = {}
    with Path(path).open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected key = value, got {stripped!r}")
            key, _, value = stripped.partition("=")
            key = key.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = value.strip()
    return values


class _Options:
    """Three-layer lookup: flag beats config file beats default."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.file = load_run_config(args.config) if getattr(args, "config", None) else {}

    def get(self, key: str, default=None):
        flag = getattr(self.args, key, None)
        if flag is not None:
            return flag
        if key in self.file:
            return self._cast(key, self.file[key])
        return default

    @staticmethod
    def _cast(key: str, raw: str):
        try:
            if key in _INT_KEYS:
                return int(raw)
            if key in _FLOAT_KEYS:
                return float(raw)
        except ValueError:
            raise ConfigError(f"config key {key!r}: not a number: {raw!r}") from None
        return raw


def _agent_config(opts: _Options) -> qlearn.AgentConfig:
    defaults = qlearn.AgentConfig()
    return qlearn.AgentConfig(
        gamma=opts.get("gamma", defaults.gamma),
        theta=opts.get("theta", defaults.theta),
        action_min=opts.get("action_min", defaults.action_min),
        action_max=opts.get("action_max", defaults.action_max),
        epsilon_start=opts.get("epsilon_start", defaults.epsilon_start),
        epsilon_end=opts.get("epsilon_end", defaults.epsilon_end),
        episodes=opts.get("episodes", defaults.episodes),
        price_bucket_width=opts.get("price_bucket_width", defaults.price_bucket_width),
        price_max=opts.get("price_max", defaults.price_max),
        sentiment_bins=opts.get("sentiment_bins", defaults.sentiment_bins),
        state_mode=opts.get("state", defaults.state_mode),
        seed=opts.get("seed", defaults.seed),
    )


def _attribute(opts: _Options, default: str = "none") -> Attribute | None:
    name = opts.get("attribute", default)
    if name == "none":
        return None
    try:
        return Attribute(name)
    except ValueError:
        raise ConfigError(
            f"unknown attribute {name!r}, expected followers|comments|likes|retweets|none"
        ) from None


def _lexicon(opts: _Options) -> Lexicon:
    path = opts.get("lexicon")
    return load_lexicon(path) if path else builtin_lexicon()


def _load_pipeline_inputs(opts: _Options):
    series = corpus.load_prices(opts.get("prices"))
    loaded = corpus.load_tweets(
        opts.get("tweets"), format=opts.get("format", "csv"), window=series.window()
    )
    buckets = corpus.bucket_by_day(loaded.records, series)
    return series, preprocess.clean_and_dedup(buckets)


def _signal_pipeline(opts: _Options, attribute: Attribute | None):
    series, buckets = _load_pipeline_inputs(opts)
    dataset = build_dataset(buckets, attribute)
    return series, dataset, daily_signals(dataset.buckets, _lexicon(opts))


def _write_cleaned(buckets, path: Path, format: str) -> int:
    records = [
        corpus.TweetRecord(
            id=t.original.id,
            timestamp=t.original.timestamp,
            text=t.clean_text,
            followers=t.original.followers,
            comments=t.original.comments,
            likes=t.original.likes,
            retweets=t.original.retweets,
        )
        for bucket in buckets
        for t in bucket.tweets
    ]
    return corpus.write_tweets(records, path, format=format)


def cmd_synth(args: argparse.Namespace) -> int:
    opts = _Options(args)
    cfg = synth.SynthConfig(
        days=opts.get("days", 100),
        tweets_per_day=opts.get("tweets_per_day", 50),
        rho=opts.get("rho", 0.8),
        base_price=opts.get("base_price", 20_000.0),
        daily_vol=opts.get("daily_vol", 0.02),
        seed=opts.get("seed", 0),
    )
    tweets, series = synth.gen_corpus(cfg)
    n = corpus.write_tweets(tweets, args.out_tweets, format=opts.get("format", "csv"))
    m = corpus.write_prices(series, args.out_prices)
    print(f"wrote {n} tweets to {args.out_tweets} and {m} prices to {args.out_prices}")
    return 0


def cmd_preprocess(args: argparse.Namespace) -> int:
    opts = _Options(args)
    format = opts.get("format", "csv")
    if opts.get("prices"):
        series = corpus.load_prices(opts.get("prices"))
        loaded = corpus.load_tweets(opts.get("tweets"), format=format, window=series.window())
        buckets = corpus.bucket_by_day(loaded.records, series)
    else:
        loaded = corpus.load_tweets(opts.get("tweets"), format=format)
        buckets = corpus.bucket_all_days(loaded.records)
    cleaned = preprocess.clean_and_dedup(buckets)
    n = _write_cleaned(cleaned, args.out, format)
    print(f"wrote {n} cleaned tweets to {args.out}")
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    opts = _Options(args)
    attribute = _attribute(opts)
    format = opts.get("format", "csv")
    if opts.get("prices"):
        series = corpus.load_prices(opts.get("prices"))
        loaded = corpus.load_tweets(opts.get("tweets"), format=format, window=series.window())
        buckets = corpus.bucket_by_day(loaded.records, series)
    else:
        loaded = corpus.load_tweets(opts.get("tweets"), format=format)
        buckets = corpus.bucket_all_days(loaded.records)
    dataset = build_dataset(preprocess.clean_and_dedup(buckets), attribute)
    n = _write_cleaned(dataset.buckets, args.out, format)
    meta = {
        "attribute": attribute.value if attribute else "none",
        "source": str(opts.get("tweets")),
        "days": len(dataset.buckets),
        "tweets": dataset.total_tweets,
    }
    meta_path = Path(str(args.out) + ".meta.json")
    meta_path.write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {n} tweets to {args.out} (attribute={meta['attribute']}, sidecar {meta_path})")
    return 0


def cmd_sentiment(args: argparse.Namespace) -> int:
    opts = _Options(args)
    series, dataset, signals = _signal_pipeline(opts, _attribute(opts))
    with Path(args.out).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["date", "mean_compound", "tweet_count"])
        for signal in signals:
            writer.writerow(
                [signal.date.isoformat(), f"{signal.mean_compound:.6f}", signal.tweet_count]
            )
    print(f"wrote {len(signals)} daily signals to {args.out}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    opts = _Options(args)
    attribute = _attribute(opts)
    cfg = _agent_config(opts)
    reward = opts.get("reward", qlearn.CDR)
    series, dataset, signals = _signal_pipeline(opts, attribute)
    model, log = qlearn.train(
        series, signals, reward, cfg, attribute=attribute.value if attribute else None
    )
    qlearn.save_model(model, args.out)
    if getattr(args, "log", None):
        Path(args.log).write_text(
            json.dumps(
                {"mean_rewards": list(log.mean_rewards), "epsilons": list(log.epsilons)},
                indent=2,
            )
            + "\n",
            encoding="utf-8",
        )
    print(
        f"trained {reward} model on {len(series)} days "
        f"({log.episodes} episodes, final mean reward {log.mean_rewards[-1]:.4f}); "
        f"saved to {args.out}"
    )
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    opts = _Options(args)
    model = qlearn.load_model(args.model)
    attribute = Attribute(model.attribute) if model.attribute else None
    series, dataset, signals = _signal_pipeline(opts, attribute)
    predictions = qlearn.predict_series(model, series, signals)
    with Path(args.out).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["date", "price"])
        for date, price in zip(series.dates[1:], predictions):
            writer.writerow([date.isoformat(), f"{price:.2f}"])
    print(f"wrote {len(predictions)} predictions to {args.out}")
    return 0


def _load_series_file(path: str | Path) -> dict[dt.date, float]:
    """date,price CSV as a mapping; no contiguity/positivity constraints."""
    out: dict[dt.date, float] = {}
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != ("date", "price"):
            raise CorpusError(f"{path}: expected header date,price")
        for row in reader:
            if not row:
                continue
            if len(row) != 2:
                raise CorpusError(f"{path}:{reader.line_num}: expected 2 fields, got {len(row)}")
            try:
                date = dt.date.fromisoformat(row[0])
                value = float(row[1])
            except ValueError:
                raise CorpusError(f"{path}:{reader.line_num}: bad date or price") from None
            if date in out:
                raise CorpusError(f"{path}:{reader.line_num}: duplicate date {date}")
            out[date] = value
    return out


def cmd_evaluate(args: argparse.Namespace) -> int:
    actual = _load_series_file(args.actual)
    predicted = _load_series_file(args.predicted)
    shared = sorted(set(actual) & set(predicted))
    if len(shared) < 2:
        raise CorpusError(
            f"need at least 2 shared dates to evaluate, got {len(shared)}"
        )
    report = evaluate([actual[d] for d in shared], [predicted[d] for d in shared])
    print(report.format_table())
    if getattr(args, "out", None):
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"wrote report to {args.out}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    opts = _Options(args)
    series = corpus.load_prices(opts.get("prices"))
    loaded = corpus.load_tweets(
        opts.get("tweets"), format=opts.get("format", "csv"), window=series.window()
    )
    cfg = bench.BenchConfig(
        agent=_agent_config(opts),
        reward=opts.get("reward", qlearn.CDR),
        train_frac=opts.get("train_frac", 0.7),
        timeout_seconds=opts.get("timeout", 600.0),
        profile_interval=opts.get("profile_interval", 0.25),
    )
    lexicon = _lexicon(opts)
    if args.mode == "time":
        budget = opts.get("budget")
        if budget is None:
            raise ConfigError("--budget is required for --mode time")
        report = bench.run_fixed_time(loaded.records, series, lexicon, budget, cfg)
    else:
        target = opts.get("target_vaf")
        if target is None:
            raise ConfigError("--target-vaf is required for --mode target")
        report = bench.run_to_target(loaded.records, series, lexicon, target, cfg)
    for result in (report.classic, report.proposed):
        flag = "" if result.converged is None else f" converged={result.converged}"
        print(
            f"{result.approach:<8} utilized={result.tweets_utilized} "
            f"wall={result.wall_seconds:.2f}s episodes={result.episodes_run} "
            f"vaf={result.final_vaf:.2f}{flag}"
        )
    if getattr(args, "out", None):
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"wrote report to {args.out}")
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key = value config file")
    sub.add_argument("--seed", type=int, help="random seed (unsigned 64-bit)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentiq",
        description="Tweet-sentiment Q-learning price prediction pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    _add_common(p)
    p.add_argument("--days", type=int)
    p.add_argument("--tweets-per-day", type=int, dest="tweets_per_day")
    p.add_argument("--rho", type=float, help="planted follower-signal strength in [0, 1]")
    p.add_argument("--base-price", type=float, dest="base_price")
    p.add_argument("--daily-vol", type=float, dest="daily_vol")
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--out-tweets", required=True, dest="out_tweets")
    p.add_argument("--out-prices", required=True, dest="out_prices")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("preprocess", help="clean texts and drop same-day duplicates")
    _add_common(p)
    p.add_argument("--tweets", required=True)
    p.add_argument("--prices", help="restrict to the price-series window")
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("split", help="keep each day's top half by an engagement attribute")
    _add_common(p)
    p.add_argument("--tweets", required=True)
    p.add_argument("--prices")
    p.add_argument("--attribute", choices=["followers", "comments", "likes", "retweets", "none"])
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("sentiment", help="daily mean-compound signal series")
    _add_common(p)
    p.add_argument("--tweets", required=True)
    p.add_argument("--prices", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--attribute", choices=["followers", "comments", "likes", "retweets", "none"])
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sentiment)

    p = sub.add_parser("train", help="train a Q-model on a corpus + price history")
    _add_common(p)
    p.add_argument("--tweets", required=True)
    p.add_argument("--prices", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--reward", choices=list(qlearn.REWARD_KINDS))
    p.add_argument("--attribute", choices=["followers", "comments", "likes", "retweets", "none"])
    p.add_argument("--state", choices=list(qlearn.STATE_MODES))
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--log", help="write per-episode training log JSON here")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="greedy next-day predictions from a saved model")
    _add_common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--tweets", required=True)
    p.add_argument("--prices", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score a prediction file against actuals")
    p.add_argument("--actual", required=True, help="date,price CSV of actual values")
    p.add_argument("--predicted", required=True, help="date,price CSV of predictions")
    p.add_argument("--out", help="also write the report as JSON")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="classic vs follower-filtered pipeline benchmark")
    _add_common(p)
    p.add_argument("--tweets", required=True)
    p.add_argument("--prices", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--mode", choices=["time", "target"], required=True)
    p.add_argument("--budget", type=float, help="wall-clock seconds per approach (time mode)")
    p.add_argument("--target-vaf", type=float, dest="target_vaf", help="accuracy target (target mode)")
    p.add_argument("--timeout", type=float, help="give up after this many seconds (target mode)")
    p.add_argument("--reward", choices=list(qlearn.REWARD_KINDS))
    p.add_argument("--train-frac", type=float, dest="train_frac")
    p.add_argument("--format", choices=["csv", "jsonl"])
    p.add_argument("--out", help="write the full comparison report JSON here")
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except SentiqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
