"""Closed-form least-squares fits of large-scale path loss models.

Models (distances in m, frequencies in Hz, losses in dB):

    CI   PL = FSPL(f, d0) + 10 n log10(d/d0)
    FI   PL = alpha + 10 beta log10(d)
    CIF  PL = FSPL(f, d0) + 10 n (1 + b (f - f0)/f0) log10(d/d0)
    ABG  PL = 10 alpha log10(d/1 m) + beta + 10 gamma log10(f/1 GHz)

Sigma is the RMS residual, no degrees-of-freedom correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateFitError, DomainError
from .rfmath import fspl_db

MODELS = ("CI", "FI", "CIF", "ABG")


@dataclass(frozen=True)
class PlSample:
    frequency_hz: float
    distance_m: float
    path_loss_db: float


@dataclass(frozen=True)
class CiParams:
    ple: float
    sigma: float
    d0: float = 1.0


@dataclass(frozen=True)
class FiParams:
    alpha: float
    beta: float
    sigma: float


@dataclass(frozen=True)
class CifParams:
    ple: float
    b: float
    f0_hz: float
    sigma: float
    d0: float = 1.0


@dataclass(frozen=True)
class AbgParams:
    alpha: float
    beta: float
    gamma: float
    sigma: float


def _arrays(samples: Iterable[PlSample]):
    samples = list(samples)
    if not samples:
        raise DegenerateFitError("no samples")
    f = np.array([s.frequency_hz for s in samples], dtype=float)
    d = np.array([s.distance_m for s in samples], dtype=float)
    pl = np.array([s.path_loss_db for s in samples], dtype=float)
    if np.any(f <= 0) or np.any(d <= 0):
        raise DomainError("frequencies and distances must be positive")
    if not np.all(np.isfinite(pl)):
        raise DomainError("path loss values must be finite")
    return f, d, pl


def _fspl_vec(f: np.ndarray, d0: float) -> np.ndarray:
    return np.array([fspl_db(fi, d0) for fi in f])


def _rms(resid: np.ndarray) -> float:
    return float(np.sqrt(np.mean(resid**2)))


def _check_d0(d: np.ndarray, d0: float) -> None:
    if not d0 > 0:
        raise DomainError("reference distance must be positive")
    # small tolerance: distances are often written as d0 exactly
    if np.any(d < d0 * (1 - 1e-12)):
        raise DomainError(f"all distances must be >= reference distance {d0} m")


def eval_ci(p: CiParams, frequency_hz: float, distance_m: float) -> float:
    if distance_m < p.d0:
        raise DomainError(f"distance {distance_m} m is below d0 = {p.d0} m")
    return fspl_db(frequency_hz, p.d0) + 10.0 * p.ple * math.log10(distance_m / p.d0)


def eval_fi(p: FiParams, frequency_hz: float, distance_m: float) -> float:
    if not distance_m > 0:
        raise DomainError("distance must be positive")
    return p.alpha + 10.0 * p.beta * math.log10(distance_m)


def eval_cif(p: CifParams, frequency_hz: float, distance_m: float) -> float:
    if distance_m < p.d0:
        raise DomainError(f"distance {distance_m} m is below d0 = {p.d0} m")
    slope = p.ple * (1.0 + p.b * (frequency_hz - p.f0_hz) / p.f0_hz)
    return fspl_db(frequency_hz, p.d0) + 10.0 * slope * math.log10(distance_m / p.d0)


def eval_abg(p: AbgParams, frequency_hz: float, distance_m: float) -> float:
    if not distance_m > 0 or not frequency_hz > 0:
        raise DomainError("distance and frequency must be positive")
    return 10.0 * p.alpha * math.log10(distance_m) + p.beta + 10.0 * p.gamma * math.log10(frequency_hz / 1e9)


def fit_ci(samples: Sequence[PlSample], d0: float = 1.0) -> CiParams:
    """n = sum(A B) / sum(B^2), A = PL - FSPL(f, d0), B = 10 log10(d/d0)."""
    f, d, pl = _arrays(samples)
    _check_d0(d, d0)
    a = pl - _fspl_vec(f, d0)
    b = 10.0 * np.log10(d / d0)
    bb = float(np.dot(b, b))
    if bb == 0.0:
        raise DegenerateFitError("all samples lie at the reference distance; PLE is undetermined")
    n = float(np.dot(a, b)) / bb
    return CiParams(ple=n, sigma=_rms(a - n * b), d0=d0)


def fit_fi(samples: Sequence[PlSample]) -> FiParams:
    """Ordinary least squares of PL on 10 log10(d)."""
    _, d, pl = _arrays(samples)
    x = 10.0 * np.log10(d)
    xc = x - x.mean()
    sxx = float(np.dot(xc, xc))
    if len(np.unique(d)) < 2 or sxx == 0.0:
        raise DegenerateFitError("FI fit needs at least two distinct distances")
    beta = float(np.dot(xc, pl - pl.mean())) / sxx
    alpha = float(pl.mean() - beta * x.mean())
    return FiParams(alpha=alpha, beta=beta, sigma=_rms(pl - alpha - beta * x))


def default_f0(samples: Sequence[PlSample]) -> float:
    """Sample-count-weighted mean frequency."""
    return float(np.mean([s.frequency_hz for s in samples]))


def fit_cif(samples: Sequence[PlSample], f0_override: float | None = None, d0: float = 1.0) -> CifParams:
    """Two-parameter least squares for (n, n*b) on the basis
    {B, B (f - f0)/f0}, solved from the 2x2 normal equations."""
    f, d, pl = _arrays(samples)
    _check_d0(d, d0)
    if len(np.unique(f)) < 2:
        raise DegenerateFitError("CIF fit needs at least two distinct frequencies")
    if len(np.unique(d)) < 2:
        raise DegenerateFitError("CIF fit needs at least two distinct distances")
    f0 = default_f0(samples) if f0_override is None else float(f0_override)
    if not f0 > 0:
        raise DomainError("f0 must be positive")
    y = pl - _fspl_vec(f, d0)
    b1 = 10.0 * np.log10(d / d0)
    b2 = b1 * (f - f0) / f0
    s11, s12, s22 = np.dot(b1, b1), np.dot(b1, b2), np.dot(b2, b2)
    det = s11 * s22 - s12 * s12
    if det <= 1e-12 * max(s11 * s22, 1e-300):
        raise DegenerateFitError("CIF basis is singular (distance and frequency terms collinear)")
    t1, t2 = np.dot(b1, y), np.dot(b2, y)
    n = float((s22 * t1 - s12 * t2) / det)
    nb = float((s11 * t2 - s12 * t1) / det)
    if n == 0.0:
        raise DegenerateFitError("fitted PLE is zero; b is undefined")
    return CifParams(ple=n, b=nb / n, f0_hz=f0, sigma=_rms(y - n * b1 - nb * b2), d0=d0)


def fit_abg(samples: Sequence[PlSample]) -> AbgParams:
    """Three-parameter least squares via the normal equations."""
    f, d, pl = _arrays(samples)
    if len(np.unique(d)) < 2:
        raise DegenerateFitError("ABG design is rank-deficient in distance: need two or more distinct distances")
    if len(np.unique(f)) < 2:
        raise DegenerateFitError("ABG design is rank-deficient in frequency: need two or more distinct frequencies")
    x = np.column_stack([10.0 * np.log10(d), np.ones_like(d), 10.0 * np.log10(f / 1e9)])
    xtx = x.T @ x
    if np.linalg.cond(xtx) > 1e12:
        raise DegenerateFitError("ABG design is rank-deficient: distance and frequency are collinear")
    alpha, beta, gamma = np.linalg.solve(xtx, x.T @ pl)
    resid = pl - x @ np.array([alpha, beta, gamma])
    return AbgParams(alpha=float(alpha), beta=float(beta), gamma=float(gamma), sigma=_rms(resid))


def distance_exponent(params) -> float:
    """The slope-like parameter of each model (PLE, beta, or alpha)."""
    if isinstance(params, (CiParams, CifParams)):
        return params.ple
    if isinstance(params, FiParams):
        return params.beta
    if isinstance(params, AbgParams):
        return params.alpha
    raise TypeError(f"unknown params type {type(params).__name__}")


def fit_model(name: str, samples: Sequence[PlSample], d0: float = 1.0, f0_override: float | None = None):
    name = name.upper()
    if name == "CI":
        return fit_ci(samples, d0)
    if name == "FI":
        return fit_fi(samples)
    if name == "CIF":
        return fit_cif(samples, f0_override, d0)
    if name == "ABG":
        return fit_abg(samples)
    raise DomainError(f"unknown model {name!r}; expected one of {', '.join(MODELS)}")


def bootstrap_ple_std(
    samples: Sequence[PlSample],
    model: str,
    n_resamples: int = 100,
    seed: int = 0,
    d0: float = 1.0,
    f0_override: float | None = None,
) -> float:
    """Standard deviation of the distance exponent over bootstrap resamples.

    Resamples that happen to be degenerate are drawn again.
    """
    samples = list(samples)
    rng = np.random.default_rng(seed)
    exps: list[float] = []
    attempts = 0
    while len(exps) < n_resamples:
        attempts += 1
        if attempts > 20 * n_resamples:
            raise DegenerateFitError(f"too many degenerate bootstrap resamples for {model}")
        idx = rng.integers(0, len(samples), len(samples))
        try:
            p = fit_model(model, [samples[i] for i in idx], d0, f0_override)
        except DegenerateFitError:
            continue
        exps.append(distance_exponent(p))
    return float(np.std(exps))


@dataclass
class ModelRow:
    model: str
    params: object
    sigma: float
    distance_exponent: float
    ple_std: float | None = None

    def as_dict(self) -> dict:
        out = {"model": self.model}
        for k, v in vars(self.params).items():
            out[k] = v
        out["distance_exponent"] = self.distance_exponent
        if self.ple_std is not None:
            out["ple_std"] = self.ple_std
        return out


@dataclass
class ModelComparison:
    rows: list[ModelRow]
    skipped: dict[str, str] = field(default_factory=dict)


def compare_models(
    samples: Sequence[PlSample],
    models: Sequence[str] = MODELS,
    d0: float = 1.0,
    f0_override: float | None = None,
    bootstrap: int = 0,
    seed: int = 0,
) -> ModelComparison:
    """Fit each requested model; unfittable ones are recorded as skipped.

    Rows are sorted by sigma (ties keep the requested order).
    """
    samples = list(samples)
    rows: list[ModelRow] = []
    skipped: dict[str, str] = {}
    for name in models:
        name = name.upper()
        try:
            p = fit_model(name, samples, d0, f0_override)
        except DegenerateFitError as exc:
            skipped[name] = str(exc)
            continue
        std = bootstrap_ple_std(samples, name, bootstrap, seed, d0, f0_override) if bootstrap else None
        rows.append(ModelRow(name, p, p.sigma, distance_exponent(p), std))
    if not rows:
        raise DegenerateFitError(
            "no model could be fitted: " + "; ".join(f"{k}: {v}" for k, v in skipped.items())
        )
    rows.sort(key=lambda r: r.sigma)
    return ModelComparison(rows, skipped)


def synth_samples(
    model: str,
    params,
    frequencies_hz: Sequence[float],
    distances_m: Sequence[float],
    shadow_db: float = 0.0,
    seed: int = 0,
) -> list[PlSample]:
    """Samples on a frequency x distance grid from a model, plus Gaussian shadowing."""
    evaluate = {"CI": eval_ci, "FI": eval_fi, "CIF": eval_cif, "ABG": eval_abg}[model.upper()]
    rng = np.random.default_rng(seed)
    out = []
    for f in frequencies_hz:
        for d in distances_m:
            noise = rng.normal(0.0, shadow_db) if shadow_db > 0 else 0.0
            out.append(PlSample(float(f), float(d), evaluate(params, f, d) + noise))
    return out
