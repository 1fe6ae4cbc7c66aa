"""Seeded sampling, timing, oracle validation and partition maps.

Random numbers come from numpy's PCG64 generator. Draws happen in a fixed
order (start x, y, heading, goal x, y, heading, radius; one array at a time),
so a seed pins down every configuration on any platform.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import asdict, dataclass, field, replace
from typing import Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from . import _pipeline as pl
from .errors import DomainError, InternalInconsistencyError
from .geometry import Pose

Range = Tuple[float, float]
WARMUP_QUERIES = 10_000
MODES = ("full", "q1")


def _as_range(v, name) -> Range:
    if isinstance(v, (int, float)):
        lo = hi = float(v)
    else:
        lo, hi = (float(a) for a in v)
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
        raise DomainError(f"{name} must be a finite interval lo <= hi, got {v!r}")
    return lo, hi


@dataclass(frozen=True)
class SampleSpec:
    """Distribution of random queries.

    Attributes:
        n: Number of queries.
        x_range: Interval for x coordinates.
        y_range: Interval for y coordinates.
        theta_range: Interval for headings.
        r_range: Interval for the turning radius, or a fixed value.
        seed: PCG64 seed.
        mode: ``"full"`` draws start and goal independently from the ranges
            (or fixes the start at ``p0``). ``"q1"`` fixes the start and
            draws goals whose left turning-circle center has ``x > r`` and
            ``y >= 0`` in the start's frame.
        p0: Fixed start pose; ``None`` means random in ``"full"`` mode and
            the origin in ``"q1"`` mode.
    """

    n: int
    x_range: Range = (-1000.0, 1000.0)
    y_range: Range = (-1000.0, 1000.0)
    theta_range: Range = (-math.pi, math.pi)
    r_range: Union[Range, float] = (1.0, 100.0)
    seed: int = 42
    mode: str = "full"
    p0: Optional[Pose] = None

    def validated(self) -> "SampleSpec":
        """Return self after checking every field.

        Raises:
            DomainError: If ``n < 1``, a range is empty or not finite, the
                radius range is not positive, or the mode is unknown.
        """
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        _as_range(self.x_range, "x_range")
        _as_range(self.y_range, "y_range")
        _as_range(self.theta_range, "theta_range")
        rlo, _ = _as_range(self.r_range, "r_range")
        if rlo <= 0.0:
            raise DomainError(f"r_range must be > 0, got {self.r_range!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed!r}")
        if self.mode not in MODES:
            raise DomainError(f"mode must be one of {MODES}, got {self.mode!r}")
        return self


def make_rng(seed: int) -> np.random.Generator:
    """The package's PRNG: PCG64 seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(int(seed)))


@dataclass
class ConfigBatch:
    """Structure-of-arrays query batch. Iterating yields ``(p0, pf, r)``."""

    x0: np.ndarray
    y0: np.ndarray
    th0: np.ndarray
    x1: np.ndarray
    y1: np.ndarray
    th1: np.ndarray
    r: np.ndarray

    def __len__(self) -> int:
        return int(self.x0.size)

    def __iter__(self) -> Iterator[Tuple[Pose, Pose, float]]:
        for i in range(len(self)):
            yield self[i]

    def __getitem__(self, i):
        if isinstance(i, slice):
            return ConfigBatch(*(a[i] for a in self.arrays()))
        return (Pose(self.x0[i], self.y0[i], self.th0[i]),
                Pose(self.x1[i], self.y1[i], self.th1[i]), float(self.r[i]))

    def arrays(self):
        return (self.x0, self.y0, self.th0, self.x1, self.y1, self.th1, self.r)


def _uniform(rng, rng_range: Range, n: int) -> np.ndarray:
    lo, hi = rng_range
    return rng.uniform(lo, hi, n) if hi > lo else np.full(n, lo)


def _wrap(a: np.ndarray) -> np.ndarray:
    v = np.fmod(a + math.pi, 2 * math.pi)
    v = np.where(v < 0.0, v + 2 * math.pi, v) - math.pi
    v = np.where(v >= math.pi, v - 2 * math.pi, v)
    return np.where((a >= -math.pi) & (a < math.pi), a, v)


def generate_configs(spec: SampleSpec) -> ConfigBatch:
    """Draw ``spec.n`` queries; identical specs give identical batches."""
    spec.validated()
    n = int(spec.n)
    rng = make_rng(spec.seed)
    xr, yr = _as_range(spec.x_range, "x"), _as_range(spec.y_range, "y")
    tr, rr = _as_range(spec.theta_range, "theta"), _as_range(spec.r_range, "r")

    if spec.mode == "full":
        if spec.p0 is None:
            x0, y0, th0 = _uniform(rng, xr, n), _uniform(rng, yr, n), _wrap(_uniform(rng, tr, n))
        else:
            x0, y0, th0 = (np.full(n, v) for v in spec.p0.as_tuple())
        x1, y1, th1 = _uniform(rng, xr, n), _uniform(rng, yr, n), _wrap(_uniform(rng, tr, n))
        r = _uniform(rng, rr, n)
        return ConfigBatch(x0, y0, th0, x1, y1, th1, r)

    p0 = spec.p0 or Pose(0.0, 0.0, 0.0)
    th = _wrap(_uniform(rng, tr, n))
    r = _uniform(rng, rr, n)
    lo_x = np.maximum(xr[0], r)
    if np.any(lo_x > xr[1]) or yr[1] < 0.0:
        raise DomainError("q1 mode needs x_range above r and y_range reaching y >= 0")
    cx = lo_x + rng.uniform(0.0, 1.0, n) * (xr[1] - lo_x)
    cy = _uniform(rng, (max(yr[0], 0.0), yr[1]), n)
    # goal from its left turning-circle center, in the start's frame
    lx = cx + r * np.sin(th)
    ly = cy - r * np.cos(th)
    c, s = math.cos(p0.theta), math.sin(p0.theta)
    x1 = p0.x + c * lx - s * ly
    y1 = p0.y + s * lx + c * ly
    th1 = _wrap(th + p0.theta)
    x0, y0, th0 = (np.full(n, v) for v in p0.as_tuple())
    return ConfigBatch(x0, y0, th0, x1, y1, th1, r)


@dataclass
class SolverTiming:
    name: str
    mean_us: float


@dataclass
class BenchReport:
    """Timing and accuracy of the partitioned solver against the oracle.

    ``speedup`` is the exhaustive mean time divided by the partitioned one.
    Length errors are absolute, in world units.
    """

    n: int
    seed: int
    solvers: List[SolverTiming]
    speedup: float
    max_len_err: float
    mean_len_err: float

    def mean_time(self, name: str) -> float:
        for s in self.solvers:
            if s.name == name:
                return s.mean_us
        raise KeyError(name)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _time_solver(batch: ConfigBatch, accelerated: bool, warmup: int) -> float:
    arrays = batch.arrays()
    n = len(batch)
    reps = max(1, math.ceil(warmup / n)) if warmup else 0
    for _ in range(reps):
        pl.batch_timed(*(a[:warmup] for a in arrays), accelerated)
    t0 = time.perf_counter_ns()
    pl.batch_timed(*arrays, accelerated)
    elapsed = time.perf_counter_ns() - t0
    return elapsed / 1000.0 / n


def run_benchmark(spec: SampleSpec, warmup: int = WARMUP_QUERIES) -> BenchReport:
    """Time both solvers on the same pre-generated queries, single-threaded.

    Each solver first runs ``warmup`` queries untimed (this also triggers
    compilation). The timed region covers only the solver loop.
    """
    batch = generate_configs(spec)
    n = len(batch)
    t_acc = _time_solver(batch, True, warmup)
    t_exh = _time_solver(batch, False, warmup)

    la, lo = np.empty(n), np.empty(n)
    tags = np.empty(n, dtype=np.int64)
    pl.batch_lengths(*batch.arrays(), True, la, tags)
    pl.batch_lengths(*batch.arrays(), False, lo, tags)
    err = np.abs(la - lo)
    return BenchReport(
        n=n,
        seed=int(spec.seed),
        solvers=[SolverTiming("accelerated", t_acc), SolverTiming("exhaustive", t_exh)],
        speedup=t_exh / t_acc if t_acc > 0 else math.inf,
        max_len_err=float(err.max()),
        mean_len_err=float(err.mean()),
    )


@dataclass
class ValidationSummary:
    """Worst and mean errors over a validation run.

    ``max_rel_len_err`` is ``|L - L_oracle| / max(1, L_oracle)``.
    ``inconsistencies`` counts queries whose dispatched type was infeasible.
    """

    n: int
    seed: int
    max_len_err: float
    mean_len_err: float
    max_rel_len_err: float
    max_pos_err: float
    mean_pos_err: float
    max_head_err: float
    mean_head_err: float
    inconsistencies: int
    type_counts: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)


def validate(spec: SampleSpec) -> ValidationSummary:
    """Solve, integrate and compare every query against the oracle."""
    batch = generate_configs(spec)
    n = len(batch)
    lengths, len_err = np.empty(n), np.empty(n)
    pos_err, head_err = np.empty(n), np.empty(n)
    tags = np.empty(n, dtype=np.int64)
    pl.batch_validate(*batch.arrays(), lengths, len_err, pos_err, head_err, tags)
    rel = len_err / np.maximum(1.0, lengths)
    ids, counts = np.unique(np.abs(tags), return_counts=True)
    return ValidationSummary(
        n=n,
        seed=int(spec.seed),
        max_len_err=float(len_err.max()),
        mean_len_err=float(len_err.mean()),
        max_rel_len_err=float(rel.max()),
        max_pos_err=float(pos_err.max()),
        mean_pos_err=float(pos_err.mean()),
        max_head_err=float(head_err.max()),
        mean_head_err=float(head_err.mean()),
        inconsistencies=int((tags < 0).sum()),
        type_counts={f"P{int(i)}": int(c) for i, c in zip(ids, counts)},
    )


@dataclass
class PartitionMap:
    """Goal poses with their dispatched type numbers (1..22)."""

    x: np.ndarray
    y: np.ndarray
    theta: np.ndarray
    type_id: np.ndarray

    def __len__(self) -> int:
        return int(self.x.size)

    def counts(self) -> dict:
        ids, c = np.unique(self.type_id, return_counts=True)
        return {int(i): int(k) for i, k in zip(ids, c)}

    def write_csv(self, fh: TextIO) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "theta", "type_id"])
        w.writerows(
            (repr(float(a)), repr(float(b)), repr(float(c)), f"P{int(d)}")
            for a, b, c, d in zip(self.x, self.y, self.theta, self.type_id)
        )


def partition_map(p0: Pose, spec: SampleSpec) -> PartitionMap:
    """Dispatched type of every goal drawn from ``spec`` with start ``p0``.

    Raises:
        InternalInconsistencyError: If any dispatched type is infeasible.
    """
    spec = replace(spec, p0=p0)
    batch = generate_configs(spec)
    tags = np.empty(len(batch), dtype=np.int64)
    pl.batch_classify(*batch.arrays(), tags)
    if np.any(tags < 0):
        i = int(np.argmax(tags < 0))
        raise InternalInconsistencyError(f"infeasible dispatch for query {i}: {batch[i]}")
    return PartitionMap(batch.x1, batch.y1, batch.th1, tags)


def fig_partition_spec(n: int = 1_000_000, seed: int = 42) -> SampleSpec:
    """The coverage distribution: goals in a 200 x 200 box, radius 20."""
    return SampleSpec(n=n, x_range=(-100.0, 100.0), y_range=(-100.0, 100.0),
                      r_range=20.0, seed=seed, p0=Pose(0.0, 0.0, 0.0))


def lengths_for(batch: ConfigBatch, accelerated: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    """Path lengths and tags (type numbers or formula indices) for a batch."""
    n = len(batch)
    out = np.empty(n)
    tags = np.empty(n, dtype=np.int64)
    pl.batch_lengths(*batch.arrays(), accelerated, out, tags)
    return out, tags


def batch_from_arrays(p0s: Sequence, pfs: Sequence, r) -> ConfigBatch:
    """Build a :class:`ConfigBatch` from ``(n, 3)`` pose arrays."""
    a = np.asarray(p0s, dtype=float)
    b = np.asarray(pfs, dtype=float)
    rr = np.broadcast_to(np.asarray(r, dtype=float), (a.shape[0],)).copy()
    return ConfigBatch(a[:, 0].copy(), a[:, 1].copy(), a[:, 2].copy(),
                       b[:, 0].copy(), b[:, 1].copy(), b[:, 2].copy(), rr)
