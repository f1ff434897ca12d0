"""Sliding-correlator channel sounder, simulated at complex baseband.

Chain: m-sequence -> multipath channel -> AWGN -> sliding correlation ->
power delay profile -> multipath extraction -> path loss.

Signal amplitudes are in sqrt(mW), so |x|^2 averaged over a PN period is
received power in mW and PDP bins read directly in dBm.

The correlator is modelled with a stepped slip: PDP bin k integrates one PN
period of the received stream starting at sample k*slide_factor against the
local reference offset by k samples. This is what a continuously slipping
reference produces when the slip over one integration window is small.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from os import PathLike
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    AliasingError,
    BelowSensitivityError,
    ConfigurationError,
    DomainError,
    InsufficientDataError,
    NoiseLimitedWarning,
    SchemaError,
)

# Primitive feedback polynomials, listed as exponents (the constant term is
# implicit). Order 11 uses x^11 + x^2 + 1.
DEFAULT_TAPS: dict[int, tuple[int, ...]] = {
    2: (2, 1),
    3: (3, 1),
    4: (4, 1),
    5: (5, 2),
    6: (6, 1),
    7: (7, 1),
    8: (8, 6, 5, 4),
    9: (9, 4),
    10: (10, 3),
    11: (11, 2),
    12: (12, 6, 4, 1),
    13: (13, 4, 3, 1),
    14: (14, 5, 3, 1),
    15: (15, 1),
    16: (16, 5, 3, 2),
    17: (17, 3),
    18: (18, 7),
    19: (19, 5, 2, 1),
    20: (20, 3),
}

DEFAULT_DYNAMIC_RANGE_DB = 145.0
DETECTION_MARGIN_DB = 5.0
_EULER_GAMMA = 0.5772156649015329
_TINY_MW = 1e-300
_NOISE_BLOCK = 1024


@dataclass(frozen=True)
class PnSequence:
    order: int
    taps: tuple[int, ...]
    chips: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.chips)


def generate_msequence(order: int = 11, taps: Sequence[int] | None = None) -> PnSequence:
    """Maximal-length +/-1 sequence from a Fibonacci shift register.

    The register obeys a[n+m] = a[n] xor (xor of a[n+t] for t in taps, t < m),
    which is the recurrence of x^m + sum(x^t) + 1. Bits map 1 -> +1, 0 -> -1.
    """
    if not isinstance(order, (int, np.integer)) or not 2 <= order <= 20:
        raise ConfigurationError(f"order must be an integer in 2..20, got {order!r}")
    if taps is None:
        taps = DEFAULT_TAPS[order]
    taps = tuple(sorted({int(t) for t in taps}, reverse=True))
    if not taps or taps[0] != order or taps[-1] < 1:
        raise ConfigurationError(
            f"taps {list(taps)} must include the order {order} and lie in 1..{order}"
        )

    length = (1 << order) - 1
    # bit j of `state` holds a[n+j]
    feedback_mask = 1
    for t in taps[1:]:
        feedback_mask |= 1 << t
    start = length  # all ones
    state = start
    bits = np.empty(length, dtype=np.int8)
    for n in range(length):
        bits[n] = state & 1
        fb = (state & feedback_mask).bit_count() & 1
        state = (state >> 1) | (fb << (order - 1))
        if state == start and n < length - 1:
            raise ConfigurationError(
                f"taps {list(taps)} are not primitive for order {order}: period {n + 1} < {length}"
            )
    if state != start:
        raise ConfigurationError(f"taps {list(taps)} do not generate a periodic sequence")
    chips = np.where(bits == 1, 1.0, -1.0)
    return PnSequence(order=int(order), taps=taps, chips=chips)


def circular_autocorrelation(chips: np.ndarray) -> np.ndarray:
    """Periodic autocorrelation via FFT, rounded for +/-1 input."""
    spec = np.fft.fft(chips)
    return np.fft.ifft(spec * np.conj(spec)).real


def processing_gain_db(order: int) -> float:
    """Correlation processing gain quoted as 20 log10(2^order)."""
    return 20.0 * order * math.log10(2.0)


@dataclass(frozen=True)
class SounderConfig:
    chip_rate: float = 2e9
    pn_order: int = 11
    slide_factor: int = 8000
    oversampling: int = 2
    if_frequency: float = 7e9
    lo_frequency: float = 11.25e9
    lo_multiplier: int = 12
    passband: tuple[float, float] = (139e9, 145e9)
    tx_power: float = 0.0
    tx_gain: float = 27.0
    rx_gain: float = 27.0
    # None -> calibrated so the maximum measurable path loss is 145 dB
    rx_sensitivity: float | None = None

    def __post_init__(self):
        if not self.chip_rate > 0:
            raise ConfigurationError("chip_rate must be positive")
        if int(self.slide_factor) != self.slide_factor or self.slide_factor < 2:
            raise ConfigurationError("slide_factor must be an integer >= 2")
        if int(self.oversampling) != self.oversampling or self.oversampling < 1:
            raise ConfigurationError("oversampling must be an integer >= 1")
        lo, hi = self.passband
        if not lo < hi:
            raise ConfigurationError("passband low edge must be below high edge")
        if self.rx_sensitivity is None:
            object.__setattr__(
                self,
                "rx_sensitivity",
                self.tx_power + self.tx_gain + self.rx_gain
                + processing_gain_db(self.pn_order) - DEFAULT_DYNAMIC_RANGE_DB,
            )
        rf_center_frequency(self)

    @property
    def sample_rate(self) -> float:
        return self.chip_rate * self.oversampling

    @property
    def pn_length(self) -> int:
        return (1 << self.pn_order) - 1

    @property
    def samples_per_period(self) -> int:
        return self.pn_length * self.oversampling

    @property
    def acquisition_period_s(self) -> float:
        """Dilated PDP duration, L * slide_factor / chip_rate."""
        return self.pn_length * self.slide_factor / self.chip_rate

    @property
    def detection_level_dbm(self) -> float:
        """Weakest PDP tap power the receiver is specified to see."""
        return self.rx_sensitivity - processing_gain_db(self.pn_order)


def rf_center_frequency(cfg: SounderConfig) -> float:
    """LO x multiplier + IF, checked against the RF band-pass filter."""
    f = cfg.lo_frequency * cfg.lo_multiplier + cfg.if_frequency
    lo, hi = cfg.passband
    if not lo <= f <= hi:
        raise ConfigurationError(
            f"RF center {f / 1e9:.3f} GHz lies outside passband {lo / 1e9:g}-{hi / 1e9:g} GHz"
        )
    return f


# --- channel ---------------------------------------------------------------


@dataclass(frozen=True)
class Tap:
    delay_s: float
    gain_db: float
    phase_rad: float = 0.0
    cluster: int = 0


@dataclass(frozen=True)
class ChannelSpec:
    """Static multipath channel. Tap gains are relative to the direct path,
    whose loss is ``path_loss_db``."""

    taps: tuple[Tap, ...]
    path_loss_db: float = 0.0

    def __post_init__(self):
        taps = tuple(self.taps)
        if not taps:
            raise DomainError("a channel needs at least one tap")
        delays = [t.delay_s for t in taps]
        if any(d < 0 or not math.isfinite(d) for d in delays):
            raise DomainError("tap delays must be finite and non-negative")
        if any(b < a for a, b in zip(delays, delays[1:])):
            raise DomainError("tap delays must be sorted")
        object.__setattr__(self, "taps", taps)

    @property
    def n_clusters(self) -> int:
        return len({t.cluster for t in self.taps})

    def cluster_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for t in self.taps:
            sizes[t.cluster] = sizes.get(t.cluster, 0) + 1
        return sizes

    @classmethod
    def single(cls, path_loss_db: float = 0.0) -> "ChannelSpec":
        return cls((Tap(0.0, 0.0),), path_loss_db)

    def to_text(self) -> str:
        lines = [f"# path_loss_db = {self.path_loss_db!r}", "delay_ns,gain_db,phase_rad,cluster_id"]
        for t in self.taps:
            lines.append(f"{t.delay_s * 1e9!r},{t.gain_db!r},{t.phase_rad!r},{t.cluster}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ChannelSpec":
        path_loss = 0.0
        taps = []
        header = False
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                if key.strip() == "path_loss_db":
                    path_loss = float(value)
                continue
            if not header:
                if [c.strip() for c in line.split(",")] != ["delay_ns", "gain_db", "phase_rad", "cluster_id"]:
                    raise SchemaError(f"line {lineno}: expected header delay_ns,gain_db,phase_rad,cluster_id")
                header = True
                continue
            parts = line.split(",")
            if len(parts) != 4:
                raise SchemaError(f"line {lineno}: expected 4 fields, got {len(parts)}")
            try:
                d, g, p, c = parts
                taps.append(Tap(float(d) * 1e-9, float(g), float(p), int(c)))
            except ValueError as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None
        return cls(tuple(taps), path_loss)

    def save(self, path: str | PathLike) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path: str | PathLike) -> "ChannelSpec":
        with open(path) as fh:
            return cls.from_text(fh.read())


def synth_channel(
    seed: int,
    mean_clusters: float = 5.9,
    mean_mpcs_per_cluster: float = 3.8,
    delay_scale: float = 20e-9,
    decay_db_per_ns: float = 0.2,
    *,
    intra_cluster_delay: float = 2e-9,
    cluster_shadow_db: float = 3.0,
    path_loss_db: float = 0.0,
) -> ChannelSpec:
    """Random clustered channel.

    Cluster count and per-cluster MPC count are Poisson, floored at 1.
    Cluster arrivals and intra-cluster arrivals are exponential with means
    ``delay_scale`` and ``intra_cluster_delay``. Tap power falls off
    linearly in dB with delay, plus per-cluster log-normal shadowing. The
    first tap is the direct path: delay 0, 0 dB, phase 0.
    """
    if not mean_clusters > 0 or not mean_mpcs_per_cluster > 0:
        raise DomainError("mean cluster and MPC counts must be positive")
    if not delay_scale > 0 or not intra_cluster_delay > 0:
        raise DomainError("delay scales must be positive")
    rng = np.random.default_rng(seed)
    n_clusters = max(1, int(rng.poisson(mean_clusters)))
    arrivals = np.concatenate(([0.0], np.cumsum(rng.exponential(delay_scale, n_clusters - 1))))
    taps = []
    for c, t_c in enumerate(arrivals):
        n_mpc = max(1, int(rng.poisson(mean_mpcs_per_cluster)))
        offsets = np.concatenate(([0.0], np.cumsum(rng.exponential(intra_cluster_delay, n_mpc - 1))))
        shadow = rng.normal(0.0, cluster_shadow_db)
        phases = rng.uniform(0.0, 2 * np.pi, n_mpc)
        for k, off in enumerate(offsets):
            tau = float(t_c + off)
            taps.append(Tap(tau, float(-decay_db_per_ns * tau * 1e9 + shadow), float(phases[k]), c))
    taps[0] = Tap(0.0, 0.0, 0.0, 0)
    taps.sort(key=lambda t: t.delay_s)
    return ChannelSpec(tuple(taps), path_loss_db)


# --- reception -------------------------------------------------------------


def sample_waveform(chips: np.ndarray, oversampling: int, delay_chips: float = 0.0) -> np.ndarray:
    """Point-sample one period of the NRZ chip waveform delayed by
    ``delay_chips``. Delays resolve to the sample grid."""
    n = len(chips) * oversampling
    t = np.arange(n) / oversampling - delay_chips
    idx = np.floor(t + 1e-9).astype(np.int64) % len(chips)
    return chips[idx]


@dataclass(frozen=True)
class RxStream:
    """Received baseband samples, produced lazily.

    The noiseless part is periodic (static channel, periodic probe), so one
    period is stored. Noise is drawn in fixed-size blocks, each seeded from
    ``(seed, block index)``, so any window is reproducible and overlapping
    windows agree.
    """

    periodic: np.ndarray = field(repr=False)
    n_samples: int
    noise_power_mw: float = 0.0
    seed: int = 0

    def __len__(self) -> int:
        return self.n_samples

    def _noise_block(self, b: int) -> np.ndarray:
        rng = np.random.default_rng([self.seed, b])
        scale = math.sqrt(self.noise_power_mw / 2.0)
        return scale * rng.standard_normal(2 * _NOISE_BLOCK).view(complex)

    def window(self, start: int, count: int, _cache: dict | None = None) -> np.ndarray:
        if start < 0 or start + count > self.n_samples:
            raise InsufficientDataError(
                f"window [{start}, {start + count}) outside stream of {self.n_samples} samples"
            )
        idx = (start + np.arange(count)) % len(self.periodic)
        out = self.periodic[idx].astype(complex)
        if self.noise_power_mw > 0:
            cache = {} if _cache is None else _cache
            b0, b1 = start // _NOISE_BLOCK, (start + count - 1) // _NOISE_BLOCK
            for b in list(cache):
                if b < b0:
                    del cache[b]
            blocks = []
            for b in range(b0, b1 + 1):
                if b not in cache:
                    cache[b] = self._noise_block(b)
                blocks.append(cache[b])
            off = start - b0 * _NOISE_BLOCK
            out += np.concatenate(blocks)[off : off + count]
        return out

    def windows(self, starts: Iterable[int], count: int) -> Iterator[np.ndarray]:
        """Windows at increasing ``starts``, reusing noise blocks."""
        cache: dict[int, np.ndarray] = {}
        for s in starts:
            yield self.window(s, count, cache)

    def mean_power_mw(self) -> float:
        """Expected power: periodic part plus noise."""
        return float(np.mean(np.abs(self.periodic) ** 2)) + self.noise_power_mw


@dataclass(frozen=True)
class _ArrayStream:
    samples: np.ndarray

    def __len__(self) -> int:
        return len(self.samples)

    def window(self, start: int, count: int) -> np.ndarray:
        return self.samples[start : start + count]


def required_samples(cfg: SounderConfig) -> int:
    """Stream length needed for one full dilated sweep."""
    n = cfg.samples_per_period
    return max(n * cfg.slide_factor, (n - 1) * cfg.slide_factor + n)


def propagate(
    pn: PnSequence,
    channel: ChannelSpec,
    cfg: SounderConfig,
    carrier_path_loss: float | None = None,
    noise_power: float | None = None,
    seed: int = 0,
    n_samples: int | None = None,
) -> RxStream:
    """Pass the probe through ``channel`` and add white Gaussian noise.

    Each tap contributes amplitude sqrt(Pt Gt Gr / PL * g_tap) e^{j phase}.
    ``carrier_path_loss`` defaults to the channel's own reference loss and
    ``noise_power`` (dBm, None for noiseless) is the total complex noise
    power per sample.
    """
    if len(pn) != cfg.pn_length:
        raise ConfigurationError(f"PN length {len(pn)} does not match config order {cfg.pn_order}")
    pl = channel.path_loss_db if carrier_path_loss is None else carrier_path_loss
    period_s = cfg.pn_length / cfg.chip_rate
    base_dbm = cfg.tx_power + cfg.tx_gain + cfg.rx_gain - pl
    rx = np.zeros(cfg.samples_per_period, dtype=complex)
    for tap in channel.taps:
        if tap.delay_s >= period_s:
            raise AliasingError(
                f"tap delay {tap.delay_s * 1e9:.3f} ns reaches the PN period {period_s * 1e9:.3f} ns"
            )
        amp = math.sqrt(10.0 ** ((base_dbm + tap.gain_db) / 10.0))
        wave = sample_waveform(pn.chips, cfg.oversampling, tap.delay_s * cfg.chip_rate)
        rx += amp * np.exp(1j * tap.phase_rad) * wave
    noise_mw = 0.0 if noise_power is None else 10.0 ** (noise_power / 10.0)
    if n_samples is None:
        n_samples = required_samples(cfg)
    return RxStream(rx, int(n_samples), noise_mw, seed)


def noise_power_for_sensitivity(cfg: SounderConfig) -> float:
    """Input noise power (dBm) that puts the PDP detection threshold
    (expected peak noise + 5 dB) at the configured sensitivity."""
    n = cfg.samples_per_period
    peak_factor_db = 10.0 * math.log10(math.log(n) + _EULER_GAMMA)
    mean_pdp_noise = cfg.detection_level_dbm - DETECTION_MARGIN_DB - peak_factor_db
    return mean_pdp_noise + 10.0 * math.log10(n)


# --- correlation -----------------------------------------------------------


@dataclass(frozen=True)
class PowerDelayProfile:
    """Correlator output on the dilated time axis. Powers in dBm."""

    dilated_time_s: np.ndarray = field(repr=False)
    power_dbm: np.ndarray = field(repr=False)
    slide_factor: int
    chip_rate: float
    noise_floor_dbm: float
    oversampling: int = 2

    def __len__(self) -> int:
        return len(self.power_dbm)

    @property
    def true_delay_s(self) -> np.ndarray:
        return self.dilated_time_s / self.slide_factor

    @property
    def sample_spacing_s(self) -> float:
        """Dilated spacing between bins."""
        return self.slide_factor / (self.chip_rate * self.oversampling)

    @property
    def duration_s(self) -> float:
        return len(self) * self.sample_spacing_s

    def to_text(self) -> str:
        lines = [
            f"# slide_factor = {self.slide_factor}",
            f"# chip_rate = {self.chip_rate!r}",
            f"# oversampling = {self.oversampling}",
            f"# noise_floor = {self.noise_floor_dbm!r}",
            "dilated_time_s,power_db",
        ]
        lines += [f"{t!r},{p!r}" for t, p in zip(self.dilated_time_s.tolist(), self.power_dbm.tolist())]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PowerDelayProfile":
        meta: dict[str, str] = {}
        t, p = [], []
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                k, _, v = line[1:].partition("=")
                meta[k.strip()] = v.strip()
                continue
            if line.startswith("dilated_time_s"):
                continue
            a, b = line.split(",")
            t.append(float(a))
            p.append(float(b))
        try:
            return cls(
                np.array(t),
                np.array(p),
                int(meta["slide_factor"]),
                float(meta["chip_rate"]),
                float(meta["noise_floor"]),
                int(meta.get("oversampling", 2)),
            )
        except KeyError as exc:
            raise SchemaError(f"PDP file missing metadata {exc}") from None

    def save(self, path: str | PathLike) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_text())

    @classmethod
    def load(cls, path: str | PathLike) -> "PowerDelayProfile":
        with open(path) as fh:
            return cls.from_text(fh.read())


def estimate_noise_floor(power_mw: np.ndarray) -> float:
    """Expected peak noise level (dBm) of a PDP.

    Noise bins are exponentially distributed; the median over the mean is
    ln 2 and the expected maximum of N bins is (ln N + gamma) times the mean.
    The median ignores the few signal bins.
    """
    mean = float(np.median(power_mw)) / math.log(2.0)
    peak = mean * (math.log(len(power_mw)) + _EULER_GAMMA)
    return 10.0 * math.log10(max(peak, _TINY_MW))


def _windows(rx, starts: Iterable[int], count: int) -> Iterator[np.ndarray]:
    if hasattr(rx, "windows"):
        yield from rx.windows(starts, count)
    else:
        for s in starts:
            yield rx.window(s, count)


def sliding_correlate(rx: RxStream | np.ndarray, pn: PnSequence, cfg: SounderConfig) -> PowerDelayProfile:
    """Correlate ``rx`` against a slower copy of the probe.

    Bin k holds |(1/N) sum_s rx[s] conj(ref[s - k])|^2 over the window
    s in [k*gamma, k*gamma + N), N samples per PN period.
    """
    if cfg.slide_factor < 2:
        raise ConfigurationError("slide_factor must be >= 2")
    if isinstance(rx, np.ndarray):
        rx = _ArrayStream(np.asarray(rx, dtype=complex))
    n = cfg.samples_per_period
    gamma = int(cfg.slide_factor)
    need = (n - 1) * gamma + n
    if len(rx) < need:
        raise InsufficientDataError(
            f"stream has {len(rx)} samples; one dilated period needs {need}"
        )
    ref = sample_waveform(pn.chips, cfg.oversampling)
    base = np.arange(n)
    corr = np.empty(n, dtype=complex)
    for k, w in enumerate(_windows(rx, (k * gamma for k in range(n)), n)):
        r = ref[(k * gamma + base - k) % n]
        corr[k] = np.vdot(r, w) / n
    power_mw = np.abs(corr) ** 2
    power_dbm = 10.0 * np.log10(np.maximum(power_mw, _TINY_MW))
    dilated = np.arange(n) * gamma / cfg.sample_rate
    return PowerDelayProfile(
        dilated_time_s=dilated,
        power_dbm=power_dbm,
        slide_factor=gamma,
        chip_rate=cfg.chip_rate,
        noise_floor_dbm=estimate_noise_floor(power_mw),
        oversampling=cfg.oversampling,
    )


def peak_to_sidelobe_db(pdp: PowerDelayProfile) -> float:
    """Peak over the strongest bin outside the +/-1 chip main lobe."""
    p = pdp.power_dbm
    k = int(np.argmax(p))
    n = len(p)
    half = pdp.oversampling
    mask = np.ones(n, dtype=bool)
    mask[(k + np.arange(-half, half + 1)) % n] = False
    return float(p[k] - p[mask].max())


def extract_multipath(pdp: PowerDelayProfile, threshold_below_peak: float = 30.0) -> list[tuple[float, float]]:
    """Detected taps as (true delay s, power dBm), sorted by delay.

    A bin qualifies if it is a local maximum (circularly), within
    ``threshold_below_peak`` of the peak and 5 dB above the noise floor.
    Issues :class:`NoiseLimitedWarning` when the requested threshold reaches
    into the noise.
    """
    if len(pdp) == 0:
        raise InsufficientDataError("empty PDP")
    if not threshold_below_peak > 0:
        raise DomainError("threshold_below_peak must be positive")
    p = pdp.power_dbm
    peak = float(p.max())
    noise_gate = pdp.noise_floor_dbm + DETECTION_MARGIN_DB
    if peak - threshold_below_peak < noise_gate:
        warnings.warn(
            f"threshold {peak - threshold_below_peak:.2f} dBm is below the noise gate "
            f"{noise_gate:.2f} dBm; detection is noise-limited",
            NoiseLimitedWarning,
            stacklevel=2,
        )
    gate = max(peak - threshold_below_peak, noise_gate)
    left, right = np.roll(p, 1), np.roll(p, -1)
    hits = np.flatnonzero((p > left) & (p >= right) & (p >= gate))
    delays = pdp.true_delay_s
    return sorted((float(delays[i]), float(p[i])) for i in hits)


def measured_path_loss(
    pdp: PowerDelayProfile, cfg: SounderConfig, threshold_below_peak: float = 30.0
) -> float:
    """Path loss with antenna gains removed: Pt + Gt + Gr - sum of tap powers.

    Taps weaker than the receiver sensitivity (referred to the PDP by the
    processing gain) are discarded.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoiseLimitedWarning)
        taps = extract_multipath(pdp, threshold_below_peak)
    level = cfg.detection_level_dbm
    usable = [pw for _, pw in taps if pw >= level]
    if not usable:
        raise BelowSensitivityError(
            f"no taps above detection level {level:.2f} dBm "
            f"(max measurable path loss {cfg.tx_power + cfg.tx_gain + cfg.rx_gain - level:.2f} dB)"
        )
    total_mw = sum(10.0 ** (pw / 10.0) for pw in usable)
    return cfg.tx_power + cfg.tx_gain + cfg.rx_gain - 10.0 * math.log10(total_mw)


def simulate(
    channel: ChannelSpec,
    cfg: SounderConfig | None = None,
    noise_power: float | None = None,
    seed: int = 0,
) -> PowerDelayProfile:
    """Convenience: generate the probe, propagate and correlate."""
    cfg = cfg or SounderConfig()
    pn = generate_msequence(cfg.pn_order, DEFAULT_TAPS.get(cfg.pn_order))
    return sliding_correlate(propagate(pn, channel, cfg, noise_power=noise_power, seed=seed), pn, cfg)


def with_gains(cfg: SounderConfig, tx_gain: float, rx_gain: float) -> SounderConfig:
    """Copy of ``cfg`` with new antenna gains and the same sensitivity."""
    return replace(cfg, tx_gain=tx_gain, rx_gain=rx_gain)
