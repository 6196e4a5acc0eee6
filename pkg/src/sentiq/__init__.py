"""Tweet-sentiment signals driving a tabular Q-learning price predictor.

The pipeline, end to end: ingest tweets and daily prices (:mod:`.corpus`),
normalize and dedup texts (:mod:`.preprocess`), keep each day's top-half by
an engagement attribute (:mod:`.attributes`), reduce each day to a mean
sentiment compound (:mod:`.sentiment`), train and run a tabular Q-learning
next-day price predictor (:mod:`.qlearn`), score it (:mod:`.metrics`), and
compare the filtered pipeline against the everything-in baseline under a
resource profiler (:mod:`.bench`, :mod:`.profiler`). :mod:`.synth` makes
seeded corpora with a recoverable planted signal for experiments.
"""

from .attributes import Attribute, FilteredCorpus, attribute_value, build_dataset, rank_and_halve
from .bench import (
    ApproachResult,
    BenchConfig,
    ComparisonReport,
    chronological_split,
    run_fixed_time,
    run_to_target,
)
from .corpus import (
    DayBucket,
    PricePoint,
    PriceSeries,
    TweetLoadResult,
    TweetRecord,
    bucket_all_days,
    bucket_by_day,
    load_prices,
    load_tweets,
    round_price,
    write_prices,
    write_tweets,
)
from .errors import (
    AlignmentError,
    ConfigError,
    CorpusError,
    LexiconError,
    ModelFormatError,
    ProfilerError,
    SentiqError,
)
from .metrics import (
    EvalReport,
    MetricError,
    evaluate,
    mape,
    nse,
    r2,
    rmse,
    sample_variance,
    vaf,
    wmape,
)
from .preprocess import CleanTweet, clean, clean_and_dedup, clean_bucket, clean_buckets, dedup
from .profiler import ProfilerHandle, ResourceReport, ResourceSample, start, stop
from .qlearn import (
    CDR,
    RDR,
    REWARD_KINDS,
    SDR,
    AgentConfig,
    QLearnError,
    QModel,
    State,
    TrainLog,
    ZeroRewardGeometry,
    discretize_state,
    epsilon_at,
    load_model,
    predict_series,
    predicted_price,
    q_update,
    reward_cdr,
    reward_rdr,
    reward_sdr,
    save_model,
    select_action,
    train,
    zero_reward_points,
)
from .sentiment import (
    DailySignal,
    Lexicon,
    SentimentScore,
    builtin_lexicon,
    daily_signal,
    daily_signals,
    load_lexicon,
    score,
)
from .synth import SynthConfig, SynthError, gen_corpus

__version__ = "0.1.0"
