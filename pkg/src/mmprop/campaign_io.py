"""Measurement records, campaign configuration and report files.

Record files are comma-delimited with the header::

    freq_ghz,distance_m,pt_dbm,pr_dbm,gt_dbi,gr_dbi,env,mut_name,mut_thickness_cm,polarization

Extra columns (e.g. azimuth_deg, elevation_deg) are carried through untouched.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from os import PathLike
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from .errors import ConfigurationError, RecordValidationError, ReportIOError, SchemaError
from .linkbudget import Budget
from .penetration import MaterialResult, PenetrationMeasurement
from .plfit import MODELS, PlSample
from .rfmath import fspl_db
from .sounder import SounderConfig, processing_gain_db

log = logging.getLogger(__name__)

RECORD_COLUMNS = (
    "freq_ghz",
    "distance_m",
    "pt_dbm",
    "pr_dbm",
    "gt_dbi",
    "gr_dbi",
    "env",
    "mut_name",
    "mut_thickness_cm",
    "polarization",
)
REQUIRED_COLUMNS = RECORD_COLUMNS[:7]
ENVIRONMENTS = ("LOS", "NLOS", "FREESPACE")


@dataclass(frozen=True)
class MeasurementRecord:
    freq_ghz: float
    distance_m: float
    pt_dbm: float
    pr_dbm: float
    gt_dbi: float
    gr_dbi: float
    env: str = "FREESPACE"
    mut_name: str | None = None
    mut_thickness_cm: float | None = None
    polarization: str = "V-V"
    extra: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if not self.freq_ghz > 0:
            raise ValueError(f"freq_ghz must be positive, got {self.freq_ghz!r}")
        if not self.distance_m > 0:
            raise ValueError(f"distance_m must be positive, got {self.distance_m!r}")
        if self.env not in ENVIRONMENTS:
            raise ValueError(f"env must be one of {', '.join(ENVIRONMENTS)}, got {self.env!r}")
        if (self.mut_name is None) != (self.mut_thickness_cm is None):
            raise ValueError("mut_name and mut_thickness_cm must be given together")
        if self.mut_thickness_cm is not None and not self.mut_thickness_cm > 0:
            raise ValueError("mut_thickness_cm must be positive")

    @property
    def has_mut(self) -> bool:
        return self.mut_name is not None

    @property
    def frequency_hz(self) -> float:
        return self.freq_ghz * 1e9


def _float(row: Mapping[str, str], key: str) -> float:
    raw = (row.get(key) or "").strip()
    if not raw:
        raise ValueError(f"{key} is empty")
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{key}: malformed number {raw!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"{key}: non-finite value {raw!r}")
    return value


def _record_from_row(row: Mapping[str, str], extra_cols: Sequence[str]) -> MeasurementRecord:
    mut_name = (row.get("mut_name") or "").strip() or None
    thick_raw = (row.get("mut_thickness_cm") or "").strip()
    thick = _float(row, "mut_thickness_cm") if thick_raw else None
    return MeasurementRecord(
        freq_ghz=_float(row, "freq_ghz"),
        distance_m=_float(row, "distance_m"),
        pt_dbm=_float(row, "pt_dbm"),
        pr_dbm=_float(row, "pr_dbm"),
        gt_dbi=_float(row, "gt_dbi"),
        gr_dbi=_float(row, "gr_dbi"),
        env=(row.get("env") or "").strip().upper(),
        mut_name=mut_name,
        mut_thickness_cm=thick,
        polarization=(row.get("polarization") or "").strip() or "V-V",
        extra=tuple((c, row.get(c) or "") for c in extra_cols),
    )


def read_records(path: str | PathLike) -> tuple[list[MeasurementRecord], list[tuple[int, str]]]:
    """Parse every data line into a record or a ``(line, message)`` diagnostic.

    Blank lines and ``#`` comment lines are ignored. A missing required
    column raises :class:`SchemaError` outright.
    """
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise ReportIOError(f"cannot read {path}: {exc}") from exc
    with fh:
        lines = list(enumerate(fh, start=1))
    content = [(n, line) for n, line in lines if line.strip() and not line.lstrip().startswith("#")]
    if not content:
        raise SchemaError(f"{path}: no header row")
    header_no, header_line = content[0]
    header = [h.strip() for h in next(csv.reader([header_line]))]
    for col in REQUIRED_COLUMNS:
        if col not in header:
            raise SchemaError(f"{path}: missing required column {col!r}")
    extra_cols = [h for h in header if h not in RECORD_COLUMNS]
    records, diagnostics = [], []
    for n, line in content[1:]:
        values = next(csv.reader([line]))
        if len(values) != len(header):
            diagnostics.append((n, f"expected {len(header)} fields, got {len(values)}"))
            continue
        row = dict(zip(header, values))
        try:
            records.append(_record_from_row(row, extra_cols))
        except ValueError as exc:
            diagnostics.append((n, str(exc)))
    return records, diagnostics


def parse_records(path: str | PathLike) -> list[MeasurementRecord]:
    """All records, or :class:`RecordValidationError` listing every bad line."""
    records, diagnostics = read_records(path)
    if diagnostics:
        raise RecordValidationError(diagnostics)
    return records


def _fmt(value: float | None) -> str:
    return "" if value is None else repr(float(value))


def write_records(records: Sequence[MeasurementRecord], path: str | PathLike) -> None:
    extra_cols: list[str] = []
    for r in records:
        for k, _ in r.extra:
            if k not in extra_cols:
                extra_cols.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(RECORD_COLUMNS) + extra_cols)
    for r in records:
        extra = dict(r.extra)
        w.writerow(
            [
                _fmt(r.freq_ghz), _fmt(r.distance_m), _fmt(r.pt_dbm), _fmt(r.pr_dbm),
                _fmt(r.gt_dbi), _fmt(r.gr_dbi), r.env, r.mut_name or "",
                _fmt(r.mut_thickness_cm), r.polarization,
            ]
            + [extra.get(c, "") for c in extra_cols]
        )
    _write_text(path, buf.getvalue())


def to_pl_samples(records: Iterable[MeasurementRecord]) -> list[PlSample]:
    """Path loss with antenna gains removed, PL = Pt + Gt + Gr - Pr.

    Records carrying a material under test belong to penetration analysis
    and are excluded with a logged notice.
    """
    out, routed = [], 0
    for r in records:
        if r.has_mut:
            routed += 1
            continue
        out.append(PlSample(r.frequency_hz, r.distance_m, r.pt_dbm + r.gt_dbi + r.gr_dbi - r.pr_dbm))
    if routed:
        log.warning("%d record(s) with a material under test routed to penetration analysis", routed)
    return out


def to_penetration_measurements(records: Iterable[MeasurementRecord]) -> list[PenetrationMeasurement]:
    return [
        PenetrationMeasurement(
            r.pt_dbm, r.pr_dbm, r.gt_dbi, r.gr_dbi, r.distance_m, r.frequency_hz,
            r.mut_name, r.mut_thickness_cm, r.polarization,
        )
        for r in records
        if r.has_mut
    ]


def records_from_measurements(measurements: Iterable[PenetrationMeasurement], env: str = "LOS") -> list[MeasurementRecord]:
    return [
        MeasurementRecord(
            m.frequency_hz / 1e9, m.distance_m, m.pt, m.pr_mut, m.gt, m.gr, env,
            m.material_name, m.thickness_cm, m.polarization,
        )
        for m in measurements
    ]


def free_space_records(
    freqs_ghz: Sequence[float] = (28.0, 73.0, 140.0),
    distances_m: Sequence[float] = (1.0, 2.0, 3.0, 4.0, 5.0),
    pt: float = 0.0,
    gt: float = 27.0,
    gr: float = 27.0,
) -> list[MeasurementRecord]:
    """Friis-exact verification records on a frequency x distance grid."""
    return [
        MeasurementRecord(f, d, pt, pt + gt + gr - fspl_db(f * 1e9, d), gt, gr, "FREESPACE")
        for f in freqs_ghz
        for d in distances_m
    ]


def data_path(name: str) -> Path:
    """Path of a file bundled in ``mmprop/data`` (example records, config)."""
    return Path(__file__).with_name("data") / name


# --- configuration ---------------------------------------------------------

_SOUNDER_KEYS = {
    "chip_rate": ("chip_rate", float),
    "pn_order": ("pn_order", int),
    "slide_factor": ("slide_factor", int),
    "oversampling": ("oversampling", int),
    "if_frequency_hz": ("if_frequency", float),
    "lo_frequency_hz": ("lo_frequency", float),
    "lo_multiplier": ("lo_multiplier", int),
    "tx_power_dbm": ("tx_power", float),
    "tx_gain_dbi": ("tx_gain", float),
    "rx_gain_dbi": ("rx_gain", float),
    "rx_sensitivity_dbm": ("rx_sensitivity", float),
}
_OTHER_KEYS = {
    "passband_low_hz", "passband_high_hz", "dynamic_range_db", "d0_m", "f0_ghz",
    "models", "atmos_table", "noise_power_dbm", "frequency_ghz",
}


@dataclass
class CampaignConfig:
    sounder: SounderConfig = field(default_factory=SounderConfig)
    budget: Budget = field(default_factory=lambda: Budget.from_sounder(SounderConfig()))
    d0_m: float = 1.0
    f0_override_hz: float | None = None
    models: tuple[str, ...] = MODELS
    atmos_table: Path | None = None
    noise_power_dbm: float | None = None
    frequency_hz: float | None = None


def parse_config_text(text: str, base_dir: Path | None = None) -> CampaignConfig:
    """``key = value`` lines; ``#`` starts a comment."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise ConfigurationError(f"config line {lineno}: expected 'key = value'")
        if key not in _SOUNDER_KEYS and key not in _OTHER_KEYS:
            raise ConfigurationError(f"config line {lineno}: unknown key {key!r}")
        values[key] = value.strip()

    kwargs: dict[str, Any] = {}
    try:
        for key, (attr, conv) in _SOUNDER_KEYS.items():
            if key in values:
                kwargs[attr] = conv(values[key])
        if "passband_low_hz" in values or "passband_high_hz" in values:
            lo, hi = SounderConfig.passband
            kwargs["passband"] = (
                float(values.get("passband_low_hz", lo)),
                float(values.get("passband_high_hz", hi)),
            )
        if "dynamic_range_db" in values:
            if "rx_sensitivity_dbm" in values:
                raise ConfigurationError("give either rx_sensitivity_dbm or dynamic_range_db, not both")
            probe = SounderConfig(**kwargs)
            kwargs["rx_sensitivity"] = (
                probe.tx_power + probe.tx_gain + probe.rx_gain
                + processing_gain_db(probe.pn_order) - float(values["dynamic_range_db"])
            )
        sounder = SounderConfig(**kwargs)
        cfg = CampaignConfig(sounder=sounder, budget=Budget.from_sounder(sounder))
        if "d0_m" in values:
            cfg.d0_m = float(values["d0_m"])
        if "f0_ghz" in values:
            cfg.f0_override_hz = float(values["f0_ghz"]) * 1e9
        if "models" in values:
            models = tuple(m.strip().upper() for m in values["models"].split(",") if m.strip())
            bad = [m for m in models if m not in MODELS]
            if bad:
                raise ConfigurationError(f"unknown model(s) {bad}")
            cfg.models = models
        if "noise_power_dbm" in values:
            cfg.noise_power_dbm = float(values["noise_power_dbm"])
        if "frequency_ghz" in values:
            cfg.frequency_hz = float(values["frequency_ghz"]) * 1e9
    except ValueError as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"bad config value: {exc}") from None
    if "atmos_table" in values:
        p = Path(values["atmos_table"])
        if not p.is_absolute() and base_dir is not None:
            p = base_dir / p
        if not p.exists():
            raise ConfigurationError(f"atmospheric table {p} does not exist")
        cfg.atmos_table = p
    return cfg


def load_config(path: str | PathLike) -> CampaignConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ReportIOError(f"cannot read config {path}: {exc}") from exc
    return parse_config_text(text, Path(path).parent)


# --- reports ---------------------------------------------------------------

_DB_SUFFIXES = ("_db", "_dbm", "_dbi", "_db_per_cm")


def _is_db_key(key: str) -> bool:
    return key.endswith(_DB_SUFFIXES) or key == "sigma"


def _csv_cell(key: str, value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        text = f"{value:.2f}" if _is_db_key(key) else f"{value:.6g}"
        return text[1:] if text.startswith("-") and float(text) == 0 else text
    return str(value)


def _rows(results) -> list[dict]:
    if isinstance(results, Mapping):
        results = [results]
    rows = []
    for r in results:
        if isinstance(r, Mapping):
            rows.append(dict(r))
        elif hasattr(r, "as_dict"):
            rows.append(r.as_dict())
        elif isinstance(r, MaterialResult):
            rows.append(material_row(r))
        else:
            rows.append(dict(vars(r)))
    return rows


def material_row(r: MaterialResult) -> dict:
    row = {
        "material": r.material_name,
        "freq_ghz": r.frequency_ghz,
        "thickness_cm": r.thickness_cm,
        "loss_db": r.loss_db,
        "loss_db_per_cm": r.loss_per_cm,
        "count": r.count,
        "mixed_thickness": r.mixed_thickness,
    }
    if r.published_loss_per_cm is not None:
        row["published_db_per_cm"] = r.published_loss_per_cm
    return row


def render_report(results, fmt: str) -> str:
    rows = _rows(results)
    if not rows:
        raise ReportIOError("refusing to emit an empty report")
    if fmt == "json":
        return json.dumps(rows, indent=2, allow_nan=True) + "\n"
    if fmt == "csv":
        keys: list[str] = []
        for row in rows:
            for k in row:
                if k not in keys:
                    keys.append(k)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for row in rows:
            w.writerow([_csv_cell(k, row.get(k)) for k in keys])
        return buf.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def _write_text(path: str | PathLike, text: str) -> None:
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write {path}: {exc}") from exc


def emit_report(results, fmt: str, path: str | PathLike) -> None:
    """Write a report; json keeps full precision, csv rounds dB columns to
    two decimals. Nothing is written for empty results."""
    _write_text(path, render_report(results, fmt))
