"""Scalar RF arithmetic: dB conversions, Friis free-space loss, aperture/gain
relations and a small atmospheric excess-attenuation lookup.

All functions take SI units (Hz, m) unless the argument name says otherwise.
"""

from __future__ import annotations

import bisect
import csv
import math
from dataclasses import dataclass
from os import PathLike
from typing import Sequence

from .errors import DomainError, OutOfRangeError, SchemaError

C_M_S = 299_792_458.0
_FOUR_PI = 4.0 * math.pi


def _positive(name: str, value: float) -> float:
    if not (value > 0) or not math.isfinite(value):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return float(value)


def db_from_linear(x: float) -> float:
    """Power ratio to dB."""
    return 10.0 * math.log10(_positive("linear value", x))


def linear_from_db(db: float) -> float:
    if not math.isfinite(db):
        raise DomainError(f"dB value must be finite, got {db!r}")
    return 10.0 ** (db / 10.0)


def amplitude_db_from_linear(x: float) -> float:
    """Amplitude ratio to dB (20 log10)."""
    return 20.0 * math.log10(_positive("linear value", x))


def wavelength_m(frequency_hz: float) -> float:
    return C_M_S / _positive("frequency", frequency_hz)


def fspl_db(frequency_hz: float, distance_m: float) -> float:
    """Free-space path loss, 20 log10(4 pi d f / c)."""
    f = _positive("frequency", frequency_hz)
    d = _positive("distance", distance_m)
    return 20.0 * math.log10(_FOUR_PI * d * f / C_M_S)


def friis_received_power(
    pt_dbm: float,
    gt_dbi: float,
    gr_dbi: float,
    frequency_hz: float,
    distance_m: float,
) -> float:
    """Received power in dBm over a free-space link."""
    return pt_dbm + gt_dbi + gr_dbi - fspl_db(frequency_hz, distance_m)


@dataclass(frozen=True)
class Aperture:
    """Effective antenna capture area."""

    effective_area_cm2: float

    def __post_init__(self):
        _positive("effective aperture", self.effective_area_cm2)

    @property
    def area_m2(self) -> float:
        return self.effective_area_cm2 * 1e-4


def _area_m2(a: Aperture | float) -> float:
    if isinstance(a, Aperture):
        return a.area_m2
    return Aperture(a).area_m2


def gain_from_aperture(aperture: Aperture | float, frequency_hz: float) -> float:
    """Antenna gain in dBi for an effective area, G = 4 pi Ae / lambda^2.

    A bare float is read as cm^2.
    """
    lam = wavelength_m(frequency_hz)
    return 10.0 * math.log10(_FOUR_PI * _area_m2(aperture) / lam**2)


def aperture_from_gain(gain_dbi: float, frequency_hz: float) -> Aperture:
    lam = wavelength_m(frequency_hz)
    area_m2 = linear_from_db(gain_dbi) * lam**2 / _FOUR_PI
    return Aperture(area_m2 * 1e4)


def aperture_received_power(
    pt_dbm: float,
    ae_t: Aperture | float,
    ae_r: Aperture | float,
    frequency_hz: float,
    distance_m: float,
) -> float:
    """Received power (dBm) between two antennas of fixed physical aperture.

    Pr = Pt + 10 log10(At Ar / (d^2 lambda^2)); with area held constant the
    received power grows as f^2.
    """
    lam = wavelength_m(frequency_hz)
    d = _positive("distance", distance_m)
    ratio = _area_m2(ae_t) * _area_m2(ae_r) / (d**2 * lam**2)
    return pt_dbm + 10.0 * math.log10(ratio)


@dataclass(frozen=True)
class AtmosTable:
    """Excess attenuation (dB/km) versus frequency (GHz) anchor points."""

    entries: tuple[tuple[float, float], ...]

    def __post_init__(self):
        entries = tuple((float(f), float(a)) for f, a in self.entries)
        if len(entries) < 2:
            raise DomainError("atmospheric table needs at least two entries")
        for f, a in entries:
            if not (f > 0) or not math.isfinite(f):
                raise DomainError(f"table frequency must be positive, got {f!r}")
            if not (a >= 0) or not math.isfinite(a):
                raise DomainError(f"table attenuation must be non-negative, got {a!r}")
        freqs = [f for f, _ in entries]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise DomainError("table frequencies must be strictly increasing")
        object.__setattr__(self, "entries", entries)

    @property
    def frequencies_ghz(self) -> list[float]:
        return [f for f, _ in self.entries]

    def db_per_km(self, frequency_ghz: float) -> float:
        """Interpolate linearly in log-frequency, linearly in dB/km."""
        freqs = self.frequencies_ghz
        lo, hi = freqs[0], freqs[-1]
        if not (lo <= frequency_ghz <= hi):
            raise OutOfRangeError(
                f"{frequency_ghz} GHz outside table range [{lo}, {hi}] GHz"
            )
        i = bisect.bisect_left(freqs, frequency_ghz)
        if freqs[i] == frequency_ghz:
            return self.entries[i][1]
        (f0, a0), (f1, a1) = self.entries[i - 1], self.entries[i]
        t = math.log(frequency_ghz / f0) / math.log(f1 / f0)
        return a0 + t * (a1 - a0)

    @classmethod
    def from_csv(cls, path: str | PathLike) -> "AtmosTable":
        """Read a ``frequency_ghz,excess_db_per_km`` file with a header row."""
        with open(path, newline="") as fh:
            reader = csv.DictReader(
                line for line in fh if line.strip() and not line.lstrip().startswith("#")
            )
            cols = reader.fieldnames or []
            for col in ("frequency_ghz", "excess_db_per_km"):
                if col not in cols:
                    raise SchemaError(f"atmospheric table missing column {col!r}")
            rows = []
            for lineno, row in enumerate(reader, start=2):
                try:
                    rows.append((float(row["frequency_ghz"]), float(row["excess_db_per_km"])))
                except (TypeError, ValueError) as exc:
                    raise SchemaError(f"line {lineno}: {exc}") from None
        return cls(tuple(rows))

    def to_csv(self, path: str | PathLike) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["frequency_ghz", "excess_db_per_km"])
            for f, a in self.entries:
                w.writerow([repr(f), repr(a)])


# Approximate sea-level anchors. Only the windows at 77/140/240 GHz
# (<= 1 dB/km) are pinned by a published statement; the absorption peaks at
# 60/120/183/325/380 GHz are placed but their heights are rough, and the
# curve between anchors is interpolation, not physics. Override for real work.
DEFAULT_ATMOS_TABLE = AtmosTable(
    (
        (1.0, 0.006),
        (10.0, 0.015),
        (22.0, 0.2),
        (30.0, 0.1),
        (45.0, 0.3),
        (60.0, 15.0),
        (70.0, 0.5),
        (77.0, 0.4),
        (94.0, 0.4),
        (120.0, 2.0),
        (140.0, 0.8),
        (160.0, 1.2),
        (183.0, 30.0),
        (200.0, 2.5),
        (240.0, 1.0),
        (280.0, 4.0),
        (325.0, 35.0),
        (350.0, 10.0),
        (380.0, 150.0),
        (400.0, 30.0),
    )
)


def atmospheric_excess_db(
    frequency_hz: float,
    distance_km: float,
    table: AtmosTable = DEFAULT_ATMOS_TABLE,
) -> float:
    """Loss beyond free space from gaseous absorption over a path, in dB."""
    if not (distance_km >= 0) or not math.isfinite(distance_km):
        raise DomainError(f"distance must be non-negative, got {distance_km!r}")
    f_ghz = _positive("frequency", frequency_hz) / 1e9
    return table.db_per_km(f_ghz) * distance_km


def fspl_delta_db(f_high_hz: float, f_low_hz: float) -> float:
    """FSPL difference between two carriers at the same distance."""
    return 20.0 * math.log10(_positive("frequency", f_high_hz) / _positive("frequency", f_low_hz))


def received_power_grid(
    pt_dbm: float, frequencies_hz: Sequence[float], distances_m: Sequence[float], gt_dbi=0.0, gr_dbi=0.0
) -> list[tuple[float, float, float]]:
    """(frequency, distance, Pr) rows for plotting received power vs distance."""
    return [
        (f, d, friis_received_power(pt_dbm, gt_dbi, gr_dbi, f, d))
        for f in frequencies_hz
        for d in distances_m
    ]
