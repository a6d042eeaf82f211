# Copyright 2025 Mission Critical Email LLC. All rights reserved.
# Licensed under the MIT License. See LICENSE file in the project root.
#
# DISCLAIMER:
# This software is provided "AS IS" without warranty of any kind, either express
# or implied, including but not limited to the implied warranties of
# merchantability and fitness for a particular purpose. Use at your own risk.
# In no event shall Mission Critical Email LLC be liable for any damages
# whatsoever arising out of the use of or inability to use this software.

"""Monte-Carlo simulation of dx/dtau = x + (p2 + alpha q2) x^2 with telegraph noise.

Between flips of alpha the logistic flow is applied exactly, so the only
error left is sampling error. Every path owns a counter-based Philox stream
keyed by the seed with counter (0, block, path, 0); block b of a path holds
DRAWS_PER_BLOCK uniforms. In block 0, draw 0 fixes the initial sign of alpha,
draw 1 samples x0, and the remaining draws are exponential waiting times.
Later blocks hold only waiting times. Output is therefore independent of
batch size and thread count.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from ..errors import BlowUpError, SimulationError, ValidationError
from ..verhulst.initial import InitialDensity
from ..verhulst.params import VerhulstParams

logger = logging.getLogger(__name__)

DRAWS_PER_BLOCK = 64
FIRST_WAIT_DRAW = 2
MAX_SEED = 2 ** 64


def flow_exact(x0: float, c: float, dtau: float) -> float:
    """Exact solution of dx/dtau = x + c x^2 after time dtau.

    Raises:
        BlowUpError: If the solution reaches its pole within the segment
    """
    growth = np.exp(dtau)
    denominator = 1.0 - c * x0 * (growth - 1.0)
    if denominator <= 0:
        raise BlowUpError(x0=x0, c=c, dt=dtau, operation="flow_exact")
    return float(x0 * growth / denominator)


def _flow_vec(x0: np.ndarray, c: np.ndarray, dtau: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised flow; second result flags segments that hit the pole."""
    growth = np.exp(dtau)
    denominator = 1.0 - c * x0 * (growth - 1.0)
    blown = denominator <= 0
    with np.errstate(divide='ignore', invalid='ignore'):
        x = np.where(blown, np.nan, x0 * growth / np.where(blown, 1.0, denominator))
    return x, blown


def path_uniforms(seed: int, path: int, block: int, size: int = DRAWS_PER_BLOCK) -> np.ndarray:
    """Uniforms of block `block` of path `path` from a Philox counter stream."""
    bit_generator = np.random.Philox(key=seed, counter=[0, block, path, 0])
    return np.random.Generator(bit_generator).random(size)


@dataclass
class McConfig:
    """Monte-Carlo run description."""

    params: VerhulstParams
    init: InitialDensity
    paths: int
    checkpoints: Sequence[float]
    seed: int = 0
    batch_size: int = 4096
    threads: int = 1
    flip_rate: float = 1.0

    def __post_init__(self):
        self.checkpoints = tuple(float(t) for t in self.checkpoints)
        if self.paths < 1:
            raise ValidationError(f"paths must be >= 1, got {self.paths}")
        if self.batch_size < 1:
            raise ValidationError(f"batch_size must be >= 1, got {self.batch_size}")
        if self.threads < 1:
            raise ValidationError(f"threads must be >= 1, got {self.threads}")
        if not self.checkpoints:
            raise ValidationError("at least one checkpoint is required")
        if any(t < 0 for t in self.checkpoints):
            raise ValidationError("checkpoints must be >= 0")
        if list(self.checkpoints) != sorted(self.checkpoints):
            raise ValidationError("checkpoints must be sorted ascending")
        if not 0 <= self.seed < MAX_SEED:
            raise ValidationError(f"seed must be in [0, 2^64), got {self.seed}")
        if self.flip_rate < 0:
            raise ValidationError(f"flip rate must be >= 0, got {self.flip_rate}")


@dataclass
class EmpiricalEnsemble:
    """Sorted samples of x per checkpoint."""

    samples: Dict[float, np.ndarray]
    seed: int
    paths: int
    checkpoints: Tuple[float, ...] = field(default_factory=tuple)

    def at(self, tau: float) -> np.ndarray:
        return self.samples[float(tau)]


class _PathStreams:
    """Per-path uniform blocks for one batch, extended on demand."""

    def __init__(self, seed: int, start: int, stop: int):
        self.seed = seed
        self.start = start
        self.blocks = np.stack([path_uniforms(seed, p, 0) for p in range(start, stop)])
        self.block_index = np.zeros(stop - start, dtype=np.int64)
        self.cursor = np.full(stop - start, FIRST_WAIT_DRAW, dtype=np.int64)

    def take(self, idx: np.ndarray) -> np.ndarray:
        """Next uniform for each local path index in idx."""
        exhausted = idx[self.cursor[idx] >= DRAWS_PER_BLOCK]
        for i in exhausted:
            self.block_index[i] += 1
            self.blocks[i] = path_uniforms(self.seed, self.start + int(i), int(self.block_index[i]))
            self.cursor[i] = 0
        values = self.blocks[idx, self.cursor[idx]]
        self.cursor[idx] += 1
        return values


def _waiting_times(u: np.ndarray, rate: float) -> np.ndarray:
    if rate == 0:
        return np.full_like(u, np.inf)
    return -np.log1p(-u) / rate


class TelegraphSimulator:
    """Runs path batches and merges them in path order."""

    def __init__(self, config: McConfig):
        self.config = config

    def _run_batch(self, start: int, stop: int) -> Tuple[List[np.ndarray], int]:
        cfg = self.config
        n = stop - start
        streams = _PathStreams(cfg.seed, start, stop)
        alpha = np.where(streams.blocks[:, 0] < 0.5, 1.0, -1.0)
        x = np.asarray(cfg.init.sampler(streams.blocks[:, 1]), dtype=float)
        t = np.zeros(n)
        everyone = np.arange(n)
        next_flip = _waiting_times(streams.take(everyone), cfg.flip_rate)
        blown_any = np.zeros(n, dtype=bool)
        p2, q2 = cfg.params.p2, cfg.params.q2

        recorded = []
        for tc in cfg.checkpoints:
            while True:
                idx = np.nonzero(next_flip <= tc)[0]
                if idx.size == 0:
                    break
                x[idx], blown = _flow_vec(x[idx], p2 + alpha[idx] * q2, next_flip[idx] - t[idx])
                blown_any[idx] |= blown
                t[idx] = next_flip[idx]
                alpha[idx] = -alpha[idx]
                next_flip[idx] = t[idx] + _waiting_times(streams.take(idx), cfg.flip_rate)
            x, blown = _flow_vec(x, p2 + alpha * q2, tc - t)
            blown_any |= blown
            t[:] = tc
            recorded.append(x.copy())

        logger.debug(f"Batch [{start}, {stop}) done, {int(blown_any.sum())} blow-ups")
        return recorded, int(blown_any.sum())

    def run(self) -> EmpiricalEnsemble:
        """Simulate all paths.

        Raises:
            BlowUpError: If any path reached a pole
            SimulationError: If a path ended on a non-finite position
        """
        cfg = self.config
        bounds = [(s, min(s + cfg.batch_size, cfg.paths)) for s in range(0, cfg.paths, cfg.batch_size)]
        logger.info(f"Simulating {cfg.paths} paths in {len(bounds)} batches "
                    f"({cfg.threads} threads, seed {cfg.seed})")

        if cfg.threads > 1:
            with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
                results = list(pool.map(lambda b: self._run_batch(*b), bounds))
        else:
            results = [self._run_batch(*b) for b in bounds]

        blown = sum(count for _, count in results)
        if blown:
            logger.error(f"{blown} of {cfg.paths} paths blew up")
            raise BlowUpError(operation="simulate")

        samples = {}
        for n, tc in enumerate(cfg.checkpoints):
            merged = np.concatenate([recorded[n] for recorded, _ in results])
            bad = int(np.count_nonzero(~np.isfinite(merged)))
            if bad:
                logger.error(f"{bad} of {cfg.paths} paths are not finite at tau={tc:g}")
                raise SimulationError(f"{bad} non-finite samples at tau={tc:g}", operation="simulate")
            samples[tc] = np.sort(merged)
        return EmpiricalEnsemble(samples=samples, seed=cfg.seed, paths=cfg.paths,
                                 checkpoints=cfg.checkpoints)


def simulate(config: McConfig) -> EmpiricalEnsemble:
    """Run a Monte-Carlo simulation; see TelegraphSimulator."""
    return TelegraphSimulator(config).run()


def noise_autocorrelation(lags: Sequence[float], paths: int, seed: int = 0,
                          flip_rate: float = 1.0) -> np.ndarray:
    """Empirical <alpha(0) alpha(s)> at the given lags, from the simulation streams.

    For flips at rate r the exact value is exp(-2 r s).
    """
    lags = np.asarray(sorted(float(s) for s in lags))
    corr = np.zeros(lags.size)
    streams = _PathStreams(seed, 0, paths)
    everyone = np.arange(paths)
    flip_time = _waiting_times(streams.take(everyone), flip_rate)
    parity = np.ones(paths)
    for n, lag in enumerate(lags):
        while True:
            idx = np.nonzero(flip_time <= lag)[0]
            if idx.size == 0:
                break
            parity[idx] = -parity[idx]
            flip_time[idx] += _waiting_times(streams.take(idx), flip_rate)
        # alpha(0) alpha(s) = (-1)^(flips in [0, s]) whatever the initial sign
        corr[n] = float(np.mean(parity))
    logger.info(f"Noise autocorrelation over {paths} paths: {np.round(corr, 4).tolist()}")
    return corr
