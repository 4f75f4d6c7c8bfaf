"""Monte Carlo estimators over products of unit disks.

Sampling contract: sample i is a pure function of (seed, i).  Streams are
built from the counter-based Philox generator with the chunk index placed
in the high half of the counter, so chunk j never overlaps chunk k and the
partition into fixed 2^16-sample chunks is identical no matter how many
workers process them.  Chunk partials are reduced in index order, which
makes every estimate bit-identical across worker counts.

Samples landing exactly on zeros or poles of the integrand (a measure-zero
set) are discarded and counted; a discard rate above 1e-6 signals a
degenerate expression and raises.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DegenerateExpressionError
from .expr import Expr, evaluate_array, log_abs_array, variables

__all__ = ["MCEstimate", "chunk_generator", "sample_disk",
           "mc_areal_mm", "mc_higher_mm", "mc_max_mm", "mc_zeta_mm"]

CHUNK = 1 << 16
DISCARD_RATE_CAP = 1e-6


@dataclass(frozen=True)
class MCEstimate:
    """Sample mean with its standard error and the reproducibility handles."""

    mean: float
    stderr: float
    count: int
    seed: int
    discarded: int


def chunk_generator(seed: int, chunk_index: int) -> np.random.Generator:
    """Independent substream for one chunk: Philox keyed by seed, counter offset."""
    bit = np.random.Philox(key=seed & (2 ** 64 - 1), counter=chunk_index << 64)
    return np.random.Generator(bit)


def sample_disk(gen: np.random.Generator) -> complex:
    """One point uniform on the closed unit disk: radius sqrt(u), angle 2 pi v."""
    u, v = gen.random(2)
    return math.sqrt(u) * complex(math.cos(2.0 * math.pi * v),
                                  math.sin(2.0 * math.pi * v))


def _disk_block(gen: np.random.Generator, n: int) -> np.ndarray:
    u = gen.random(n)
    v = gen.random(n)
    return np.sqrt(u) * np.exp(2j * math.pi * v)


def _run_chunked(names: Sequence[str], value_block, samples: int, seed: int,
                 workers: int = 1) -> MCEstimate:
    """Mean/stderr of value_block(env) over `samples` polydisk points.

    value_block receives a dict of complex sample arrays (one per variable,
    drawn in sorted-name order) and returns a float array; non-finite
    entries are discarded and counted.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    n_chunks = (samples + CHUNK - 1) // CHUNK

    def do_chunk(index: int):
        size = min(CHUNK, samples - index * CHUNK)
        gen = chunk_generator(seed, index)
        env = {name: _disk_block(gen, size) for name in names}
        vals = value_block(env)
        finite = np.isfinite(vals)
        kept = vals[finite]
        return kept.sum(), (kept * kept).sum(), kept.size, size - kept.size

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(do_chunk, range(n_chunks)))
    else:
        partials = map(do_chunk, range(n_chunks))

    total = 0.0
    total_sq = 0.0
    kept = 0
    discarded = 0
    for s, s2, k, d in partials:  # fixed reduction order
        total += float(s)
        total_sq += float(s2)
        kept += k
        discarded += d

    if kept == 0:
        raise DegenerateExpressionError("all samples were discarded")
    if discarded > DISCARD_RATE_CAP * samples:
        raise DegenerateExpressionError(
            f"discard rate {discarded / samples:.2e} exceeds {DISCARD_RATE_CAP}"
        )
    mean = total / kept
    if kept > 1:
        var = max(0.0, (total_sq - kept * mean * mean) / (kept - 1))
        stderr = math.sqrt(var / kept)
    else:
        stderr = math.inf
    return MCEstimate(mean=mean, stderr=stderr, count=kept, seed=seed,
                      discarded=discarded)


def mc_areal_mm(expr: Expr, samples: int, seed: int, *, workers: int = 1) -> MCEstimate:
    """Estimate the areal Mahler measure: mean of log|P| over the polydisk."""
    names = variables(expr)
    return _run_chunked(names, lambda env: log_abs_array(expr, env),
                        samples, seed, workers)


def _union_variables(exprs: Sequence[Expr]) -> tuple:
    if not exprs:
        raise ValueError("at least one expression is required")
    names: set = set()
    for e in exprs:
        names.update(variables(e))
    return tuple(sorted(names))


def mc_higher_mm(exprs: Sequence[Expr], powers: Sequence[int], samples: int,
                 seed: int, *, workers: int = 1) -> MCEstimate:
    """Higher/multiple areal measure: mean of prod_i log^{h_i}|P_i|."""
    exprs = list(exprs)
    powers = [int(h) for h in powers]
    if len(exprs) != len(powers):
        raise ValueError("one power per expression is required")
    if any(h < 1 for h in powers):
        raise ValueError("powers must be positive")
    names = _union_variables(exprs)

    def block(env):
        acc = None
        for e, h in zip(exprs, powers):
            term = log_abs_array(e, env) ** h
            acc = term if acc is None else acc * term
        return acc

    return _run_chunked(names, block, samples, seed, workers)


def mc_max_mm(exprs: Sequence[Expr], samples: int, seed: int, *,
              workers: int = 1) -> MCEstimate:
    """Generalized areal measure: mean of max_i log|P_i|."""
    exprs = list(exprs)
    names = _union_variables(exprs)

    def block(env):
        return np.maximum.reduce([log_abs_array(e, env) for e in exprs])

    return _run_chunked(names, block, samples, seed, workers)


def mc_zeta_mm(expr: Expr, s: float, samples: int, seed: int, *,
               workers: int = 1) -> MCEstimate:
    """Zeta areal measure: mean of |P|^s; integrable for the supported family needs s > -1."""
    if not s > -1:
        raise ValueError("mc_zeta_mm requires s > -1")
    names = variables(expr)

    def block(env):
        with np.errstate(all="ignore"):
            return np.abs(evaluate_array(expr, env)) ** s

    return _run_chunked(names, block, samples, seed, workers)
