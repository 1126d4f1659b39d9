"""Numerical probes for formats outside the closed-form criterion.

``generic_rank_probe`` assembles the exact Jacobian at random integer points
for increasing r. Full column rank at one point proves generic rank <= r; the
other direction is only probabilistic. ``typical_rank_sample`` estimates how
much of the tensor space has rank <= r by fitting Gaussian tensors with ALS.
"""

from __future__ import annotations

import csv
import string
from dataclasses import asdict, dataclass, field

import numpy as np

from .exactrank import rank_exact
from .formats import Format, canonicalize, typical_rank_bounds
from .jacobian import assemble_jacobian
from .tensorcore import DenseTensor
from .witness import random_integer_point

RIDGE = 1e-12


@dataclass
class RankRecord:
    r: int
    rank: int
    full: bool
    trials: int


@dataclass
class ProbeReport:
    format: tuple[int, ...]
    records: list[RankRecord]
    generic_rank: int | None
    seed: int
    cols: int

    def to_json(self) -> dict:
        return {
            "format": list(self.format),
            "cols": self.cols,
            "records": [asdict(r) for r in self.records],
            "generic_rank": self.generic_rank,
            "seed": self.seed,
        }


@dataclass
class AlsConfig:
    samples: int = 100
    restarts: int = 5
    max_iters: int = 1000
    tol: float = 1e-6
    stop_tol: float = 1e-12
    seed: int = 42


@dataclass
class AlsReport:
    format: tuple[int, ...]
    r: int
    residuals: list[float]
    successes: int
    config: AlsConfig = field(default_factory=AlsConfig)

    @property
    def samples(self) -> int:
        return len(self.residuals)

    @property
    def success_fraction(self) -> float:
        return self.successes / self.samples if self.samples else 0.0

    def to_json(self) -> dict:
        return {
            "format": list(self.format),
            "r": self.r,
            "samples": self.samples,
            "successes": self.successes,
            "success_fraction": self.success_fraction,
            "residuals": self.residuals,
            **{k: v for k, v in asdict(self.config).items() if k != "samples"},
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["sample", "residual", "success"])
            for i, res in enumerate(self.residuals):
                w.writerow([i, repr(res), int(res < self.config.tol)])


def generic_rank_probe(f, max_r: int, trials: int = 3, seed: int = 42) -> ProbeReport:
    """Best exact Jacobian rank over ``trials`` random points for r = lower..max_r.

    Stops at the first r reaching full column rank.
    """
    f = canonicalize(f)
    lower = typical_rank_bounds(f).lower
    if max_r < lower:
        raise ValueError(f"max_r={max_r} is below the lower bound {lower} for {f}")
    cols = f.size
    records = []
    generic = None
    for r in range(lower, max_r + 1):
        best = 0
        for trial in range(trials):
            rng = np.random.default_rng([seed, r, trial])
            jac = assemble_jacobian(random_integer_point(f.dims, r, rng), f.dims)
            best = max(best, rank_exact(jac))
            if best == cols:
                break
        records.append(RankRecord(r, best, best == cols, trials))
        if best == cols:
            generic = r
            break
    return ProbeReport(f.dims, records, generic, seed, cols)


def _mttkrp(x: np.ndarray, factors: list[np.ndarray], mode: int) -> np.ndarray:
    letters = string.ascii_lowercase[: x.ndim]
    subs = [letters]
    ops = [x]
    for m, a in enumerate(factors):
        if m != mode:
            subs.append(letters[m] + "z")
            ops.append(a)
    return np.einsum(",".join(subs) + "->" + letters[mode] + "z", *ops)


def reconstruct(factors: list[np.ndarray]) -> np.ndarray:
    letters = string.ascii_lowercase[: len(factors)]
    return np.einsum(",".join(c + "z" for c in letters) + "->" + letters, *factors)


def als_fit(t, r: int, max_iters: int = 1000, tol: float = 1e-12, seed: int = 0, history=None):
    """CP fit of rank ``r`` by alternating least squares.

    Stops after ``max_iters`` sweeps or when the relative decrease of the
    squared error falls below ``tol``. Returns the relative residual
    ||t - fit|| / ||t|| and the factor matrices (p_j x r). If ``history`` is
    a list, the squared error after each sweep is appended to it.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    x = t.to_numpy() if isinstance(t, DenseTensor) else np.asarray(t, dtype=float)
    rng = np.random.default_rng(seed)
    factors = [rng.standard_normal((p, r)) for p in x.shape]
    norm2 = float(np.sum(x * x))
    if norm2 == 0.0:
        return 0.0, [np.zeros((p, r)) for p in x.shape]

    prev = np.inf
    obj = prev
    for _ in range(max_iters):
        for mode in range(x.ndim):
            gram = np.ones((r, r))
            for m, a in enumerate(factors):
                if m != mode:
                    gram *= a.T @ a
            rhs = _mttkrp(x, factors, mode)
            try:
                factors[mode] = np.linalg.solve(gram, rhs.T).T
            except np.linalg.LinAlgError:
                factors[mode] = np.linalg.solve(gram + RIDGE * np.eye(r), rhs.T).T
        diff = x - reconstruct(factors)
        obj = float(np.sum(diff * diff))
        if history is not None:
            history.append(obj)
        if obj <= 1e-30 * norm2 or prev - obj < tol * prev:
            break
        prev = obj
    return float(np.sqrt(obj / norm2)), factors


def typical_rank_sample(f, r: int, config: AlsConfig | None = None, **overrides) -> AlsReport:
    """Fraction of Gaussian tensors fitted to relative residual < tol at rank r."""
    cfg = config or AlsConfig()
    if overrides:
        cfg = AlsConfig(**{**asdict(cfg), **overrides})
    f = canonicalize(f)
    residuals = []
    for s in range(cfg.samples):
        rng = np.random.default_rng([cfg.seed, s])
        x = rng.standard_normal(f.dims)
        best = np.inf
        for k in range(cfg.restarts):
            res, _ = als_fit(x, r, cfg.max_iters, cfg.stop_tol, seed=[cfg.seed, s, k])
            best = min(best, res)
            if best < cfg.tol:
                break
        residuals.append(float(best))
    successes = sum(res < cfg.tol for res in residuals)
    return AlsReport(f.dims, r, residuals, successes, cfg)
