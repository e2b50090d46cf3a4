"""G(n, p) sampling and Monte-Carlo probes of the tmc >= f(n) threshold.

``log`` is the natural logarithm everywhere in this module.

Above n = exact_max_n, tmc is certified only through bounds:
    lower  m - n + 2 + (greedy leaf count)      (any spanning tree works)
    upper  m + n for K_n, else min(m + n - 2, m + delta)
The upper bound relaxes l(G) <= n - 1 in m - n + delta + 1 + l(G), so some
trials stay "unknown"; those are counted, never dropped.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .graph import Graph

RNG_NAME = "philox4x64-geometric-skip/v1"
SCHEMA = "tmc-lab/1"


# ------------------------------------------------------------------ f(n)

@dataclass(frozen=True)
class FSpec:
    """Target function f(n).

    kinds: ``power`` (coef * n**exponent), ``nlogn`` (coef * n * log n),
    ``quadratic`` (coef * n**2).
    """

    kind: str
    coef: float = 1.0
    exponent: float = 1.0

    def __post_init__(self):
        if self.kind not in ("power", "nlogn", "quadratic"):
            raise ValueError(f"unknown f kind {self.kind!r}")
        if self.coef <= 0:
            raise ValueError("f coefficient must be positive")

    def __call__(self, n: int) -> float:
        if self.kind == "power":
            return self.coef * n ** self.exponent
        if self.kind == "nlogn":
            return self.coef * n * math.log(n)
        return self.coef * n * n

    @property
    def tag(self) -> str:
        if self.kind == "power":
            return f"{self.coef:g}*n^{self.exponent:g}"
        if self.kind == "nlogn":
            return f"{self.coef:g}*n*log n"
        return f"{self.coef:g}*n^2"

    @classmethod
    def from_json(cls, d: dict) -> FSpec:
        return cls(d["kind"], float(d.get("coef", 1.0)), float(d.get("exponent", 1.0)))


def check_f_range(n: int, f: FSpec) -> float:
    val = f(n)
    cap = n * (n - 1) / 2 + n
    if not 1 <= val < cap:
        raise ValueError(f"f({n}) = {val:g} must satisfy 1 <= f(n) < {cap:g}")
    return val


def regime(n: int, f: FSpec) -> str:
    """``high`` when f is of order at least n log n, ``low`` when f = o(n log n)."""
    if f.kind == "nlogn":
        return "high"
    return "high" if f(n) >= n * math.log(n) else "low"


def threshold_p(n: int, f: FSpec) -> float:
    if n < 3:
        raise ValueError("n must be at least 3 so that log log n > 0")
    val = check_f_range(n, f)
    if regime(n, f) == "high":
        return (val + n * math.log(math.log(n))) / n**2
    return math.log(n) / n


def regime_constant(n: int, f: FSpec) -> float:
    """Multiplier C above which tmc >= f(n) holds a.s. in the high regime."""
    if regime(n, f) != "high":
        raise ValueError("the regime constant applies to the high regime only")
    if f(n) >= n * math.log(n):
        return 5.0
    return 5.0 / f.coef


def regime_constants(n: int, f: FSpec) -> tuple[float, float]:
    """(C, c): multipliers that make the property hold / fail almost surely."""
    if regime(n, f) == "high":
        return regime_constant(n, f), 1.0
    return 2.0, 0.5


# --------------------------------------------------------------- sampling

_TRIU: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _TRIU:
        _TRIU[n] = tuple(a.astype(np.int64) for a in np.triu_indices(n, 1))
    return _TRIU[n]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def sample_edges(n: int, p: float, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Each of the n(n-1)/2 pairs independently with probability p.

    Uses geometric gaps between successive chosen pairs in row-major
    upper-triangle order, so the cost scales with the edge count.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    total = n * (n - 1) // 2
    iu, ju = _pairs(n)
    if p == 0.0 or total == 0:
        return iu[:0], ju[:0]
    chunks = []
    last = -1
    est = int(total * p + 10 * math.sqrt(total * p) + 16)
    while last < total:
        gaps = rng.geometric(p, size=est)
        pos = last + np.cumsum(gaps)
        chunks.append(pos)
        last = int(pos[-1])
    pos = np.concatenate(chunks)
    pos = pos[pos < total]
    return iu[pos], ju[pos]


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    src, dst = sample_edges(n, p, make_rng(seed))
    return Graph(n, tuple(zip(src.tolist(), dst.tolist())))


def trial_seed(base: int, *key: int) -> int:
    """Per-trial seed derived from (base, cell, trial); order-independent."""
    return int(np.random.SeedSequence([base, *key]).generate_state(1, np.uint64)[0])


# ------------------------------------------------------------ experiment

@dataclass
class ExperimentConfig:
    n_values: list[int]
    f: FSpec
    multipliers: list = field(default_factory=lambda: ["C", "c"])
    trials: int = 100
    seed: int = 0
    exact_max_n: int = 7

    def __post_init__(self):
        for n in self.n_values:
            if n < 3:
                raise ValueError("n must be at least 3")
            check_f_range(n, self.f)
        if self.trials < 1:
            raise ValueError("trials must be positive")

    def resolve(self, n: int, mult) -> float:
        if isinstance(mult, str):
            C, c = regime_constants(n, self.f)
            if mult == "C":
                return C
            if mult == "c":
                return c
            raise ValueError(f"multiplier tag must be 'C' or 'c', got {mult!r}")
        return float(mult)

    @classmethod
    def from_json(cls, d: dict | str) -> ExperimentConfig:
        if isinstance(d, str):
            d = json.loads(d)
        return cls(
            n_values=[int(x) for x in d["n_values"]],
            f=FSpec.from_json(d["f"]),
            multipliers=list(d.get("multipliers", ["C", "c"])),
            trials=int(d.get("trials", 100)),
            seed=int(d.get("seed", 0)),
            exact_max_n=int(d.get("exact_max_n", 7)),
        )

    def to_json(self) -> dict:
        d = asdict(self)
        d["f"] = asdict(self.f)
        return d


RECORD_COLUMNS = ["n", "p", "multiplier", "trial", "seed", "m", "connected", "delta",
                  "l_lb", "tmc_lb", "tmc_ub", "f_value", "status"]


@dataclass(frozen=True)
class TrialRecord:
    n: int
    p: float
    multiplier: float
    trial: int
    seed: int
    m: int
    connected: bool
    delta: int
    l_lb: int
    tmc_lb: int
    tmc_ub: int
    f_value: float
    status: str

    def row(self) -> dict:
        return {
            "n": self.n,
            "p": f"{self.p:.12g}",
            "multiplier": f"{self.multiplier:g}",
            "trial": self.trial,
            "seed": self.seed,
            "m": self.m,
            "connected": int(self.connected),
            "delta": self.delta,
            "l_lb": self.l_lb,
            "tmc_lb": self.tmc_lb,
            "tmc_ub": self.tmc_ub,
            "f_value": f"{self.f_value:.12g}",
            "status": self.status,
        }


def certify_status(lb: int, ub: int, f_value: float) -> str:
    if lb >= f_value:
        return "yes"
    if ub < f_value:
        return "no"
    return "unknown"


def run_trial(n: int, p: float, mult: float, trial: int, seed: int, f_value: float, exact_max_n: int) -> TrialRecord:
    src, dst = sample_edges(n, p, make_rng(seed))
    m = int(src.size)
    deg = np.bincount(np.concatenate([src, dst]), minlength=n)
    delta = int(deg.min())
    connected = _kernels.count_components(n, src, dst) == 1
    if not connected:
        lb = ub = l_lb = 0
    elif n <= exact_max_n:
        from .solver import tmc_exact
        from .spanning import spanning_stats

        G = Graph(n, tuple(zip(src.tolist(), dst.tolist())))
        lb = ub = tmc_exact(G).value
        l_lb = spanning_stats(G).l
    else:
        indptr, indices = _kernels.csr_from_edges(n, src, dst)
        l_lb = _kernels.greedy_leaves(n, indptr, indices)
        lb = m - n + 2 + l_lb
        ub = m + n if m == n * (n - 1) // 2 else min(m + n - 2, m + delta)
    return TrialRecord(n, p, mult, trial, seed, m, connected, delta, l_lb, lb, ub, f_value,
                       certify_status(lb, ub, f_value))


def _run_trial_args(args):
    return run_trial(*args)


def run_threshold_experiment(cfg: ExperimentConfig, jobs: int = 1) -> tuple[list[TrialRecord], dict]:
    tasks = []
    cells = []
    for n in cfg.n_values:
        f_value = cfg.f(n)
        base_p = threshold_p(n, cfg.f)
        for mi, tag in enumerate(cfg.multipliers):
            mult = cfg.resolve(n, tag)
            p = min(1.0, mult * base_p)
            cells.append((n, tag, mult, p, f_value))
            for t in range(cfg.trials):
                tasks.append((n, p, mult, t, trial_seed(cfg.seed, n, mi, t), f_value, cfg.exact_max_n))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_trial_args, tasks, chunksize=16))
    else:
        records = [run_trial(*t) for t in tasks]

    summary_cells = []
    k = 0
    for n, tag, mult, p, f_value in cells:
        recs = records[k:k + cfg.trials]
        k += cfg.trials
        tot = len(recs)
        summary_cells.append({
            "n": n,
            "multiplier_tag": tag,
            "multiplier": mult,
            "regime": regime(n, cfg.f),
            "p": p,
            "f_value": f_value,
            "trials": tot,
            "yes": sum(r.status == "yes" for r in recs) / tot,
            "no": sum(r.status == "no" for r in recs) / tot,
            "unknown": sum(r.status == "unknown" for r in recs) / tot,
            "disconnected": sum(not r.connected for r in recs) / tot,
        })
    summary = {"schema": SCHEMA, "rng": RNG_NAME, "config": cfg.to_json(), "cells": summary_cells}
    return records, summary


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=RECORD_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


# ------------------------------------------------------------ connectivity

def erdos_renyi_limit(a: float) -> float:
    """Limiting probability that G(n, (log n + a)/n) is connected: exp(-exp(-a))."""
    return math.exp(-math.exp(-a))


def printed_limit(a: float) -> float:
    """exp(exp(-a)), the form with the sign of the outer exponent flipped; exceeds 1 for every a."""
    return math.exp(math.exp(-a))


def connectivity_probability(n: int, a: float, trials: int, seed: int) -> float:
    p = (math.log(n) + a) / n
    p = min(1.0, max(0.0, p))
    hits = 0
    for t in range(trials):
        src, dst = sample_edges(n, p, make_rng(trial_seed(seed, n, t)))
        hits += _kernels.count_components(n, src, dst) == 1
    return hits / trials
