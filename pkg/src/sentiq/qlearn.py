"""Tabular Q-learning price predictor.

The agent walks the daily price series chronologically. On day ``t`` it sees
the state built from the previous day — the bucketed previous price and the
bucketed previous-day sentiment signal (strictly no lookahead) — and picks a
percent move ``a``; its prediction is ``PP_t = AP_{t-1} * (1 + a/100)``
(clamped at zero, rounded to cents). The reward compares ``PP_t`` with the
realized price ``AP_t`` under one of three shapes:

* ``sdr``: negative absolute dollar error, ``-|AP - PP|``.
* ``rdr``: negative percent error relative to the actual, ``-|AP - PP| / AP * 100``.
* ``cdr``: a normalized score that is 100 at a perfect hit and falls to 0 at
  the day's *zero-reward points*. Those points sit symmetrically around
  ``AP_t`` at distance ``l = |AP_t - PP_{t-1} * (1 + alpha)|`` where ``alpha``
  is the day's actual relative change — i.e. the error a naive carry-forward
  of yesterday's prediction would have made. Predictions worse than that
  baseline score negative, so the scale adapts to how volatile the day was.

Updates use the one-step bootstrap
``Q += theta * (r + gamma * max_a' Q(s', a') - Q)``; exploration is
epsilon-greedy with a linear per-episode epsilon decay, and greedy ties
resolve to the smallest percent.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .corpus import PriceSeries, round_price
from .errors import AlignmentError, ModelFormatError, SentiqError
from .sentiment import DailySignal

STATE_MODES = ("price+sentiment", "price-only")

_MAGIC = b"SQMODEL\x01"
_VERSION = 1


class QLearnError(SentiqError):
    """Invalid agent configuration or out-of-range state inputs."""


SDR = "sdr"
RDR = "rdr"
CDR = "cdr"
REWARD_KINDS = (SDR, RDR, CDR)


@dataclass(frozen=True)
class AgentConfig:
    """Hyperparameters and discretization grid for the predictor.

    ``action_min``/``action_max`` bound the percent moves the agent may pick;
    the default floor of -100 keeps predictions non-negative, and wider
    ranges are honored with the prediction clamped at zero.
    """

    gamma: float = 0.95
    theta: float = 0.1
    action_min: int = -100
    action_max: int = 1000
    epsilon_start: float = 1.0
    epsilon_end: float = 0.01
    episodes: int = 500
    price_bucket_width: float = 500.0
    price_max: float = 100_000.0
    sentiment_bins: int = 21
    state_mode: str = "price+sentiment"
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.gamma <= 1.0:
            raise QLearnError(f"gamma must be in [0, 1], got {self.gamma}")
        if not 0.0 < self.theta <= 1.0:
            raise QLearnError(f"theta must be in (0, 1], got {self.theta}")
        if int(self.action_min) != self.action_min or int(self.action_max) != self.action_max:
            raise QLearnError("action bounds must be integers")
        if self.action_min >= self.action_max:
            raise QLearnError(
                f"action_min {self.action_min} must be below action_max {self.action_max}"
            )
        for name in ("epsilon_start", "epsilon_end"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise QLearnError(f"{name} must be in [0, 1], got {value}")
        if self.epsilon_end > self.epsilon_start:
            raise QLearnError(
                f"epsilon_end {self.epsilon_end} must not exceed epsilon_start {self.epsilon_start}"
            )
        if self.episodes < 1:
            raise QLearnError(f"episodes must be >= 1, got {self.episodes}")
        if not self.price_bucket_width > 0:
            raise QLearnError(f"price_bucket_width must be positive, got {self.price_bucket_width}")
        if not self.price_max > self.price_bucket_width:
            raise QLearnError(
                f"price_max {self.price_max} must exceed price_bucket_width {self.price_bucket_width}"
            )
        if self.sentiment_bins < 1 or self.sentiment_bins % 2 == 0:
            raise QLearnError(f"sentiment_bins must be odd and positive, got {self.sentiment_bins}")
        if self.state_mode not in STATE_MODES:
            raise QLearnError(f"state_mode must be one of {STATE_MODES}, got {self.state_mode!r}")
        if not 0 <= self.seed < 2**64:
            raise QLearnError("seed must be an unsigned 64-bit integer")

    @property
    def n_price_bins(self) -> int:
        return -int(-self.price_max // self.price_bucket_width)

    @property
    def n_sentiment_bins(self) -> int:
        return self.sentiment_bins if self.state_mode == "price+sentiment" else 1

    @property
    def n_actions(self) -> int:
        return self.action_max - self.action_min + 1


class State(NamedTuple):
    price_bin: int
    sentiment_bin: int


def discretize_state(prev_price: float, prev_signal: DailySignal | float, cfg: AgentConfig) -> State:
    """Map the previous day's price and signal onto the discrete grid."""
    if not 0.0 <= prev_price < cfg.price_max:
        raise QLearnError(
            f"price {prev_price} outside the representable range [0, {cfg.price_max})"
        )
    price_bin = int(prev_price // cfg.price_bucket_width)
    if cfg.state_mode == "price-only":
        return State(price_bin, 0)
    compound = getattr(prev_signal, "mean_compound", prev_signal)
    raw = int(np.floor((compound + 1.0) / 2.0 * cfg.sentiment_bins))
    sentiment_bin = min(max(raw, 0), cfg.sentiment_bins - 1)
    return State(price_bin, sentiment_bin)


def predicted_price(prev_price: float, percent: int) -> float:
    """Price implied by a percent move, clamped at zero, rounded to cents."""
    return max(0.0, round_price(prev_price * (1.0 + percent / 100.0)))


def reward_sdr(ap: float, pp: float) -> float:
    """Negative absolute dollar error."""
    return -abs(ap - pp)


def reward_rdr(ap: float, pp: float) -> float:
    """Negative absolute error as a percent of the actual price."""
    if not ap > 0:
        raise QLearnError(f"actual price must be positive, got {ap}")
    return -abs(ap - pp) / ap * 100.0


@dataclass(frozen=True)
class ZeroRewardGeometry:
    """Day geometry for the normalized reward.

    ``zr1``/``zr2`` are the prediction values scoring exactly zero; they sit
    at ``ap -/+ l``. ``degenerate`` flags ``l`` below tolerance (yesterday's
    prediction carried forward hits today's price exactly), where the ratio
    form is undefined.
    """

    alpha: float
    l: float
    zr1: float
    zr2: float
    degenerate: bool
    tol: float


def zero_reward_points(
    ap: float, ap_prev: float, pp_prev: float, tol: float | None = None
) -> ZeroRewardGeometry:
    """Zero-score prediction values for a day, from the carry-forward baseline."""
    if not ap_prev > 0:
        raise QLearnError(f"previous actual price must be positive, got {ap_prev}")
    if not ap > 0:
        raise QLearnError(f"actual price must be positive, got {ap}")
    alpha = (ap - ap_prev) / ap_prev
    carried = pp_prev * (1.0 + alpha)
    l = abs(ap - carried)
    if tol is None:
        tol = 1e-9 * ap
    return ZeroRewardGeometry(
        alpha=alpha, l=l, zr1=ap - l, zr2=ap + l, degenerate=l < tol, tol=tol
    )


def reward_cdr(geometry: ZeroRewardGeometry, ap: float, pp: float) -> float:
    """Normalized reward: 100 at ``pp == ap``, 0 at the zero-reward points.

    Degenerate geometry scores 100 for an (effectively) exact prediction and
    falls back to the relative shape otherwise.
    """
    if geometry.degenerate:
        if abs(pp - ap) <= geometry.tol:
            return 100.0
        return reward_rdr(ap, pp)
    if pp <= ap:
        return (pp - geometry.zr1) / (ap - geometry.zr1) * 100.0
    return (pp - geometry.zr2) / (ap - geometry.zr2) * 100.0


@dataclass
class QModel:
    """Q-table over (price bin, sentiment bin, action index).

    ``reward`` and ``attribute`` record how the model was trained so a saved
    model replays the same dataset construction at prediction time.
    """

    config: AgentConfig
    table: np.ndarray
    reward: str | None = None
    attribute: str | None = None

    @classmethod
    def zeros(cls, cfg: AgentConfig, reward: str | None = None, attribute: str | None = None) -> "QModel":
        shape = (cfg.n_price_bins, cfg.n_sentiment_bins, cfg.n_actions)
        return cls(cfg, np.zeros(shape, dtype=np.float64), reward, attribute)

    def q_values(self, s: State) -> np.ndarray:
        return self.table[s.price_bin, s.sentiment_bin]

    def greedy_action(self, s: State) -> int:
        """Highest-Q percent for a state; ties resolve to the smallest percent."""
        return self.config.action_min + int(np.argmax(self.q_values(s)))


def q_update(model: QModel, s: State, a: int, r: float, s_next: State) -> float:
    """One bootstrap update; stores and returns the new Q(s, a)."""
    cfg = model.config
    if not cfg.action_min <= a <= cfg.action_max:
        raise QLearnError(f"action {a} outside [{cfg.action_min}, {cfg.action_max}]")
    if not math.isfinite(r):
        raise QLearnError(f"reward must be finite, got {r}")
    row = model.table[s.price_bin, s.sentiment_bin]
    idx = a - cfg.action_min
    best_next = float(model.table[s_next.price_bin, s_next.sentiment_bin].max())
    updated = row[idx] + cfg.theta * (r + cfg.gamma * best_next - row[idx])
    row[idx] = updated
    return float(updated)


def select_action(model: QModel, s: State, epsilon: float, rng: np.random.Generator) -> int:
    """Epsilon-greedy percent selection."""
    if not 0.0 <= epsilon <= 1.0:
        raise QLearnError(f"epsilon must be in [0, 1], got {epsilon}")
    cfg = model.config
    if epsilon > 0.0 and rng.random() < epsilon:
        return cfg.action_min + int(rng.integers(cfg.n_actions))
    return model.greedy_action(s)


def epsilon_at(cfg: AgentConfig, episode: int) -> float:
    """Linearly decayed epsilon for a zero-based episode index."""
    if cfg.episodes == 1:
        return cfg.epsilon_start
    frac = min(episode, cfg.episodes - 1) / (cfg.episodes - 1)
    return cfg.epsilon_start + (cfg.epsilon_end - cfg.epsilon_start) * frac


@dataclass(frozen=True)
class TrainLog:
    """Per-episode training trace."""

    mean_rewards: tuple[float, ...]
    epsilons: tuple[float, ...]

    @property
    def episodes(self) -> int:
        return len(self.mean_rewards)


def _check_alignment(prices: PriceSeries, signals: Sequence[DailySignal], min_len: int) -> None:
    if len(signals) != len(prices):
        raise AlignmentError(
            f"signals cover {len(signals)} days but prices cover {len(prices)}"
        )
    for point, signal in zip(prices, signals):
        if point.date != signal.date:
            raise AlignmentError(f"signal date {signal.date} does not match price date {point.date}")
    if len(prices) < min_len:
        raise AlignmentError(f"need at least {min_len} aligned days, got {len(prices)}")


def _day_states(prices: PriceSeries, signals: Sequence[DailySignal], cfg: AgentConfig) -> list[State]:
    return [
        discretize_state(point.price, signal, cfg)
        for point, signal in zip(prices, signals)
    ]


def run_episode(
    model: QModel,
    prices: Sequence[float],
    states: Sequence[State],
    kind: str,
    epsilon: float,
    rng: np.random.Generator,
) -> float:
    """One chronological pass over the training days; returns the mean reward.

    Internal engine shared by :func:`train` and the benchmark harness;
    ``states[t]`` must be the state derived from day ``t``.
    """
    total = 0.0
    pp_prev = prices[0]
    n = len(prices)
    for t in range(1, n):
        s = states[t - 1]
        a = select_action(model, s, epsilon, rng)
        pp = predicted_price(prices[t - 1], a)
        if kind == SDR:
            r = reward_sdr(prices[t], pp)
        elif kind == RDR:
            r = reward_rdr(prices[t], pp)
        else:
            geometry = zero_reward_points(prices[t], prices[t - 1], pp_prev)
            r = reward_cdr(geometry, prices[t], pp)
            pp_prev = pp
        q_update(model, s, a, r, states[t])
        total += r
    return total / (n - 1)


def train(
    prices: PriceSeries,
    signals: Sequence[DailySignal],
    kind: str,
    cfg: AgentConfig,
    attribute: str | None = None,
) -> tuple[QModel, TrainLog]:
    """Train a fresh model on an aligned price/signal history.

    Deterministic for a fixed config: the only randomness is the generator
    seeded from ``cfg.seed``.
    """
    if kind not in REWARD_KINDS:
        raise QLearnError(f"unknown reward kind {kind!r}, expected one of {REWARD_KINDS}")
    _check_alignment(prices, signals, min_len=3)
    rng = np.random.default_rng(cfg.seed)
    model = QModel.zeros(cfg, reward=kind, attribute=attribute)
    states = _day_states(prices, signals, cfg)
    day_prices = prices.prices
    mean_rewards = []
    epsilons = []
    for episode in range(cfg.episodes):
        epsilon = epsilon_at(cfg, episode)
        mean_rewards.append(run_episode(model, day_prices, states, kind, epsilon, rng))
        epsilons.append(epsilon)
    return model, TrainLog(tuple(mean_rewards), tuple(epsilons))


def predict_series(
    model: QModel, prices: PriceSeries, signals: Sequence[DailySignal]
) -> tuple[float, ...]:
    """Greedy next-day predictions for days 1..n-1 of an aligned series."""
    _check_alignment(prices, signals, min_len=2)
    cfg = model.config
    states = _day_states(prices, signals, cfg)
    day_prices = prices.prices
    return tuple(
        predicted_price(day_prices[t - 1], model.greedy_action(states[t - 1]))
        for t in range(1, len(day_prices))
    )


def save_model(model: QModel, path: str | Path) -> None:
    """Serialize a model: magic, version, JSON config block, row-major table."""
    meta = {
        "agent": asdict(model.config),
        "reward": model.reward,
        "attribute": model.attribute,
    }
    blob = json.dumps(meta, sort_keys=True).encode("utf-8")
    table = np.ascontiguousarray(model.table, dtype="<f8")
    with Path(path).open("wb") as handle:
        handle.write(_MAGIC)
        handle.write(struct.pack("<I", _VERSION))
        handle.write(struct.pack("<I", len(blob)))
        handle.write(blob)
        handle.write(struct.pack("<III", *table.shape))
        handle.write(table.tobytes(order="C"))


def load_model(path: str | Path) -> QModel:
    """Inverse of :func:`save_model`; rejects foreign or truncated files."""
    data = Path(path).read_bytes()
    if len(data) < len(_MAGIC) + 8 or not data.startswith(_MAGIC):
        raise ModelFormatError(f"{path}: not a serialized Q-model (bad magic)")
    offset = len(_MAGIC)
    (version,) = struct.unpack_from("<I", data, offset)
    offset += 4
    if version != _VERSION:
        raise ModelFormatError(f"{path}: unsupported model version {version}")
    (blob_len,) = struct.unpack_from("<I", data, offset)
    offset += 4
    if len(data) < offset + blob_len + 12:
        raise ModelFormatError(f"{path}: truncated model file")
    try:
        meta = json.loads(data[offset : offset + blob_len].decode("utf-8"))
        cfg = AgentConfig(**meta["agent"])
    except (ValueError, KeyError, TypeError, QLearnError) as exc:
        raise ModelFormatError(f"{path}: bad config block: {exc}") from None
    offset += blob_len
    shape = struct.unpack_from("<III", data, offset)
    offset += 12
    expected = (cfg.n_price_bins, cfg.n_sentiment_bins, cfg.n_actions)
    if shape != expected:
        raise ModelFormatError(f"{path}: table shape {shape} does not match config {expected}")
    n_bytes = shape[0] * shape[1] * shape[2] * 8
    if len(data) != offset + n_bytes:
        raise ModelFormatError(f"{path}: truncated model file")
    table = np.frombuffer(data[offset:], dtype="<f8").reshape(shape).copy()
    return QModel(cfg, table, meta.get("reward"), meta.get("attribute"))
