"""Material penetration loss from co-polarized received power.

    L = Pt - Pr_MUT + Gt + Gr - PL(d)

with PL(d) the Friis free-space loss at the T-R separation.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError
from .rfmath import fspl_db


@dataclass(frozen=True)
class PenetrationMeasurement:
    pt: float
    pr_mut: float
    gt: float
    gr: float
    distance_m: float
    frequency_hz: float
    material_name: str
    thickness_cm: float
    polarization: str = "V-V"

    def __post_init__(self):
        if not self.thickness_cm > 0:
            raise DomainError(f"thickness must be positive, got {self.thickness_cm!r}")
        if not self.distance_m > 0:
            raise DomainError(f"distance must be positive, got {self.distance_m!r}")


@dataclass(frozen=True)
class MaterialResult:
    material_name: str
    frequency_hz: float
    thickness_cm: float
    loss_db: float
    count: int = 1
    mixed_thickness: bool = False
    # per-cm value as printed in a source table, kept for comparison only
    published_loss_per_cm: float | None = None

    @property
    def loss_per_cm(self) -> float:
        return self.loss_db / self.thickness_cm

    @property
    def frequency_ghz(self) -> float:
        return self.frequency_hz / 1e9


def penetration_loss(m: PenetrationMeasurement) -> float:
    if m.polarization.upper() != "V-V":
        raise DomainError(f"only co-polarized V-V processing is implemented, got {m.polarization!r}")
    return m.pt - m.pr_mut + m.gt + m.gr - fspl_db(m.frequency_hz, m.distance_m)


def avg_loss_per_cm(loss_db: float, thickness_cm: float) -> float:
    if not thickness_cm > 0:
        raise DomainError(f"thickness must be positive, got {thickness_cm!r}")
    return loss_db / thickness_cm


# (GHz, material, thickness cm, loss dB, printed dB/cm)
_TABLE = (
    (28, "Clear glass A", 1.2, 3.6, 3.0),
    (28, "Clear glass B", 1.2, 3.9, 3.25),
    (28, "Drywall A", 38.1, 6.8, 0.18),
    (73, "Clear glass C", 0.6, 7.72, 12.87),
    (73, "Clear glass D", 0.6, 7.1, 11.83),
    (73, "Drywall B", 14.5, 10.06, 0.73),
    (140, "Clear glass C", 0.6, 8.24, 13.73),
    (140, "Clear glass D", 0.6, 9.07, 15.12),
    (140, "Glass door (Front door)", 1.3, 16.2, 12.46),
    (140, "Drywall B", 14.5, 15.02, 1.04),
    (140, "Drywall with Whiteboard", 17.1, 16.69, 0.98),
)


def reference_table() -> list[MaterialResult]:
    """Published drywall and clear-glass losses at 28, 73 and 140 GHz."""
    return [
        MaterialResult(name, ghz * 1e9, thick, loss, published_loss_per_cm=per_cm)
        for ghz, name, thick, loss, per_cm in _TABLE
    ]


def replay_measurements(
    results: Sequence[MaterialResult] | None = None,
    distances_m: Sequence[float] = (3.0, 4.0, 5.0),
    pt: float = 0.0,
    gt: float = 27.0,
    gr: float = 27.0,
) -> list[PenetrationMeasurement]:
    """Measurements whose received power reproduces each result's loss.

    Rows are assigned distances round-robin from ``distances_m``.
    """
    results = reference_table() if results is None else results
    out = []
    for i, r in enumerate(results):
        d = distances_m[i % len(distances_m)]
        pr = pt + gt + gr - fspl_db(r.frequency_hz, d) - r.loss_db
        out.append(PenetrationMeasurement(pt, pr, gt, gr, d, r.frequency_hz, r.material_name, r.thickness_cm))
    return out


def aggregate_by_material(measurements: Iterable[PenetrationMeasurement]) -> list[MaterialResult]:
    """Mean loss per (material, frequency), then per-cm normalisation.

    A group with more than one thickness is split by thickness and each
    part is flagged ``mixed_thickness``.
    """
    groups: dict[tuple[str, float], dict[float, list[float]]] = {}
    for m in measurements:
        by_thick = groups.setdefault((m.material_name, m.frequency_hz), {})
        by_thick.setdefault(m.thickness_cm, []).append(penetration_loss(m))
    out = []
    for (name, freq), by_thick in groups.items():
        mixed = len(by_thick) > 1
        for thick, losses in by_thick.items():
            out.append(
                MaterialResult(name, freq, thick, math.fsum(losses) / len(losses), len(losses), mixed)
            )
    return out


def material_class(name: str) -> str:
    """Strip a trailing single-letter sample label: 'Clear glass C' -> 'clear glass'."""
    return re.sub(r"\s+[A-Z]$", "", name.strip()).lower()


@dataclass
class TrendEntry:
    material_class: str
    points: list[tuple[float, float]]  # (frequency GHz, mean dB/cm), ascending
    monotone_increasing: bool | None
    skipped: bool = False


def frequency_trend(results: Iterable[MaterialResult]) -> list[TrendEntry]:
    """Per material class: mean dB/cm at each frequency and whether it rises
    strictly with frequency. Classes seen at a single frequency are skipped."""
    acc: dict[str, dict[float, list[float]]] = {}
    for r in results:
        acc.setdefault(material_class(r.material_name), {}).setdefault(r.frequency_ghz, []).append(r.loss_per_cm)
    out = []
    for cls, by_f in sorted(acc.items()):
        pts = [(f, math.fsum(v) / len(v)) for f, v in sorted(by_f.items())]
        if len(pts) < 2:
            out.append(TrendEntry(cls, pts, None, skipped=True))
            continue
        rising = all(b[1] > a[1] for a, b in zip(pts, pts[1:]))
        out.append(TrendEntry(cls, pts, rising))
    return out
