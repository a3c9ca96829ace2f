"""Monte Carlo driver: sample partitions, draw parts, and compare the
empirical joint distribution function against an exact or limiting reference.

Grid cells are integer pairs (k, s): k is the multiplicity (the bound d for
procedure 1) and s the size bound. For limit-law references the size axis is
read as t = c s / sqrt(n), the natural lattice of pi sigma / sqrt(6n).
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import limitlaws
from .counting import CountTable, build_count_table
from .errors import GridMismatch, ValidationError
from .oracle import DEFAULT_ENUMERATION_CAP, joint_table
from .sampler import C, ExactSampler, FristedtSampler, draw_part, make_rng

METHODS = ("exact", "fristedt")
REFERENCES = ("oracle", "limit")


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    procedure: int
    samples: int
    seed: int
    method: str = "exact"
    reference: str = "oracle"
    ks: tuple = tuple(range(1, 7))
    s_max: Optional[int] = None
    replicas: int = 1
    workers: int = 1
    max_trials: int = 10**7
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP

    def __post_init__(self):
        if self.samples < 1:
            raise ValidationError("sample count must be >= 1")
        if self.procedure not in (1, 2, 3):
            raise ValidationError(f"procedure must be 1, 2 or 3, got {self.procedure}")
        if self.n < 1:
            raise ValidationError("n must be positive")
        if self.method not in METHODS:
            raise ValidationError(f"method must be one of {METHODS}")
        if self.reference not in REFERENCES:
            raise ValidationError(f"reference must be one of {REFERENCES}")
        if not 1 <= self.replicas <= self.samples:
            raise ValidationError("need 1 <= replicas <= samples")
        if not self.ks or min(self.ks) < 1:
            raise ValidationError("multiplicity grid must be non-empty and positive")
        object.__setattr__(self, "ks", tuple(sorted(set(int(k) for k in self.ks))))

    @property
    def sizes(self) -> range:
        return range(1, min(self.s_max or self.n, self.n) + 1)

    @property
    def grid(self) -> list:
        return [(k, s) for k in self.ks for s in self.sizes]


@dataclass
class ComparisonReport:
    """Empirical vs reference values on the grid.

    ``cells`` rows are (k, s, hits, empirical, reference, |diff|) with
    empirical = hits / samples.
    """

    metadata: dict
    reference_kind: str
    cells: list = field(default_factory=list)
    ks_statistic: float = 0.0
    mass: Fraction = Fraction(0)

    def empirical(self) -> dict:
        return {(k, s): emp for k, s, _, emp, _, _ in self.cells}

    def reference(self) -> dict:
        return {(k, s): ref for k, s, _, _, ref, _ in self.cells}

    def to_json(self) -> str:
        body = {
            "metadata": self.metadata,
            "reference_kind": self.reference_kind,
            "ks": self.ks_statistic,
            "empirical_mass": f"{self.mass.numerator}/{self.mass.denominator}",
            "cells": [
                {"k": k, "s": s, "hits": h, "empirical": e, "reference": r, "diff": dd}
                for k, s, h, e, r, dd in self.cells
            ],
        }
        return json.dumps(body, indent=1, sort_keys=True)

    def to_csv(self) -> str:
        lines = ["k,s,hits,empirical,reference,diff"]
        for k, s, h, e, r, dd in self.cells:
            lines.append(f"{k},{s},{h},{e:.17g},{r:.17g},{dd:.17g}")
        return "\n".join(lines) + "\n"


def ks_distance(empirical: dict, reference: dict) -> float:
    """Sup-norm distance between two functions on the same finite grid."""
    if empirical.keys() != reference.keys():
        raise GridMismatch("empirical and reference grids differ")
    if not empirical:
        return 0.0
    return max(abs(float(empirical[c]) - float(reference[c])) for c in empirical)


def _replica_counts(cfg: ExperimentConfig, replica: int, draws: int, table: Optional[CountTable]):
    """Histogram of (mu, sigma) over ``draws`` draws from replica ``replica``'s stream."""
    rng = make_rng(cfg.seed, replica)
    n = cfg.n
    hist: dict = {}
    if cfg.method == "exact":
        sampler = ExactSampler(table or build_count_table(n), cache_limit=256)
        for _ in range(draws):
            lam = sampler.sample(n, rng)
            key = _draw_key(lam, cfg.procedure, rng)
            hist[key] = hist.get(key, 0) + 1
    else:
        fristedt = FristedtSampler(n, max_trials=cfg.max_trials)
        for lam in fristedt.sample_batch(draws, rng):
            key = _draw_key(lam, cfg.procedure, rng)
            hist[key] = hist.get(key, 0) + 1
    return hist


def _draw_key(lam, procedure, rng):
    d = draw_part(lam, procedure, rng)
    return d.mu, d.sigma


def _split(total: int, parts: int) -> list:
    base, extra = divmod(total, parts)
    return [base + (1 if r < extra else 0) for r in range(parts)]


def sample_histogram(cfg: ExperimentConfig, table: Optional[CountTable] = None) -> dict:
    """Merged (mu, sigma) -> count histogram over all replicas.

    Replica r draws its share with stream ``seed ^ r``; merging is in replica
    order, so the result does not depend on ``workers``.
    """
    shares = _split(cfg.samples, cfg.replicas)
    if cfg.method == "exact" and table is None:
        table = build_count_table(cfg.n)
    if cfg.workers > 1 and cfg.replicas > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_replica_counts, cfg, r, k, table) for r, k in enumerate(shares)]
            parts = [f.result() for f in futures]
    else:
        parts = [_replica_counts(cfg, r, k, table) for r, k in enumerate(shares)]
    merged: dict = {}
    for hist in parts:
        for key, v in hist.items():
            merged[key] = merged.get(key, 0) + v
    return merged


def empirical_cdf(hist: dict, cfg: ExperimentConfig) -> dict:
    """Grid of hit counts: #{mu <= k} (procedure 1) or #{mu = k} (2, 3), with sigma <= s."""
    n = cfg.n
    kmax = max(cfg.ks)
    # row kmax+1 collects mu > kmax; it is never read back
    rows = np.zeros((kmax + 2, n + 1), dtype=np.int64)
    for (mu, sigma), v in hist.items():
        rows[min(mu, kmax + 1), sigma] += v
    cum = np.cumsum(rows, axis=1)
    if cfg.procedure == 1:
        cum = np.cumsum(cum, axis=0)
    return {(k, s): int(cum[k, s]) for k, s in cfg.grid}


def reference_values(cfg: ExperimentConfig) -> dict:
    if cfg.reference == "oracle":
        jt = joint_table(cfg.n, cfg.procedure, cap=cfg.enumeration_cap)
        return {(k, s): jt.value(k, s) for k, s in cfg.grid}
    n = cfg.n
    if cfg.procedure == 1:
        logn = math.log(n)
        return {(k, s): limitlaws.F1(2 * math.log(k) / logn, 2 * math.log(s) / logn) for k, s in cfg.grid}
    scale = C / math.sqrt(n)
    return {(k, s): limitlaws.law(cfg.procedure, k, scale * s) for k, s in cfg.grid}


def run_monte_carlo(cfg: ExperimentConfig, table: Optional[CountTable] = None) -> ComparisonReport:
    """Sample, tabulate and compare; deterministic in ``cfg``."""
    if cfg.reference == "oracle" and cfg.n > cfg.enumeration_cap:
        raise ValidationError(f"oracle reference needs n <= {cfg.enumeration_cap}")
    hist = sample_histogram(cfg, table)
    return compare(cfg, hist)


def compare(cfg: ExperimentConfig, hist: dict) -> ComparisonReport:
    hits = empirical_cdf(hist, cfg)
    ref = reference_values(cfg)
    N = cfg.samples
    emp = {c: Fraction(h, N) for c, h in hits.items()}
    ks = ks_distance(emp, ref)
    cells = []
    for c in cfg.grid:
        e, r = float(emp[c]), float(ref[c])
        cells.append((c[0], c[1], hits[c], e, r, abs(e - r)))
    metadata = asdict(cfg)
    metadata["ks"] = list(cfg.ks)
    mass = Fraction(sum(hist.values()), N)
    return ComparisonReport(metadata, "oracle-exact" if cfg.reference == "oracle" else "limit-law",
                            cells, ks, mass)
