"""Phenomenological noise channels and the memory-experiment harness.

Code-capacity model only: i.i.d. single-qubit Pauli noise, perfect syndrome
extraction. X and Z components are decoded independently (the CSS split),
each against its own check matrix, and a shot succeeds only if both sides
end with a zero-syndrome residual inside the stabilizer row space.

Per-shot randomness derives from ``(master seed, p index, shot index)``, so
aggregate counts are identical however shots are scheduled.
"""

from __future__ import annotations

import csv
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .codes import CSSCode
from .collab import QCCNRConfig, qccnr_decode
from .gf2 import SparseBinaryMatrix, in_rowspace, syndrome
from .minsum import DecoderConfig, DecoderGraph, decode
from .tanner import TannerGraph

SUCCESS = "converged-success"
MISMATCH = "syndrome-mismatch"
LOGICAL = "logical-failure"

CSV_COLUMNS = ["code", "decoder", "p", "shots", "failures", "ler", "stderr", "seconds"]


@dataclass(frozen=True)
class NoiseModel:
    """Either pure bit flips with probability p, or depolarizing noise that
    splits p equally across X, Y and Z (so each part sees a 2p/3 marginal)."""

    kind: str
    p: float

    def __post_init__(self):
        if self.kind not in ("bitflip", "depolarizing"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError("p must be in [0, 1]")

    def marginal_flip_prob(self) -> float:
        """Per-part flip probability, used as the decoder prior."""
        return self.p if self.kind == "bitflip" else 2.0 * self.p / 3.0


def sample_error(model: NoiseModel, n: int, seed) -> tuple[np.ndarray, np.ndarray]:
    """Draw one (x_part, z_part) error pair."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    if model.kind == "bitflip":
        x = (rng.random(n) < model.p).astype(np.uint8)
        return x, np.zeros(n, dtype=np.uint8)
    u = rng.random(n)
    x = (u < 2.0 * model.p / 3.0).astype(np.uint8)          # X or Y
    z = ((u >= model.p / 3.0) & (u < model.p)).astype(np.uint8)  # Y or Z
    return x, z


def is_logical_failure(code: CSSCode, injected: np.ndarray, estimate: np.ndarray,
                       side: str) -> str:
    """Classify one side's correction.

    The residual error is a success when it is invisible to the opposite
    checks and lies in the stabilizer row space (degenerate corrections
    count as success); a zero-syndrome residual outside it is a logical
    failure.
    """
    if side == "x":
        h_check, h_stab = code.h_z, code.h_x
    elif side == "z":
        h_check, h_stab = code.h_x, code.h_z
    else:
        raise ValueError("side must be 'x' or 'z'")
    resid = (np.asarray(injected, dtype=np.uint8) ^ np.asarray(estimate, dtype=np.uint8))
    if syndrome(h_check, resid).any():
        return MISMATCH
    if in_rowspace(h_stab, resid):
        return SUCCESS
    return LOGICAL


@dataclass(frozen=True)
class DecoderSpec:
    """Which decoder the harness runs, and with what parameters."""

    name: str                       # "bp" | "qccnr"
    max_iter: int = 100
    scaling_factor: float = 0.625
    max_sub: int = 100
    fr: int = 200
    tol: int = 11
    df_schedule: tuple[tuple[int, int, int], ...] = ((1, 100, 6), (101, 200, 1))

    def __post_init__(self):
        if self.name not in ("bp", "qccnr"):
            raise ValueError(f"unknown decoder {self.name!r}")


@dataclass
class ShotRecord:
    shot: int
    seed: int
    x_support: list[int]
    z_support: list[int]
    x_class: str
    z_class: str

    @property
    def failed(self) -> bool:
        return self.x_class != SUCCESS or self.z_class != SUCCESS


@dataclass
class SimSummary:
    code: str
    decoder: str
    p: float
    shots: int
    failures: int
    seconds: float
    records: list[ShotRecord] | None = field(default=None, repr=False)

    @property
    def ler(self) -> float:
        return self.failures / self.shots if self.shots else 0.0

    @property
    def stderr(self) -> float:
        if not self.shots:
            return 0.0
        return float(np.sqrt(self.ler * (1.0 - self.ler) / self.shots))

    def csv_row(self) -> list:
        return [self.code, self.decoder, f"{self.p:.10g}", self.shots,
                self.failures, f"{self.ler:.10g}", f"{self.stderr:.10g}",
                f"{self.seconds:.3f}"]


class _SideDecoder:
    """Decoder bound to one check matrix, reusing the prepared graphs."""

    def __init__(self, H: SparseBinaryMatrix, spec: DecoderSpec, prior: float):
        self.H = H
        self.spec = spec
        self.prior = min(max(prior, 1e-12), 1.0 - 1e-12)
        self.graph = DecoderGraph(H)
        self.tanner = TannerGraph(H) if spec.name == "qccnr" else None

    def __call__(self, s: np.ndarray, shot_seed: int) -> np.ndarray:
        if self.spec.name == "bp":
            cfg = DecoderConfig(max_iterations=self.spec.max_iter,
                                scaling_factor=self.spec.scaling_factor,
                                channel_error_prob=self.prior)
            return decode(self.graph, s, cfg).hard_decision
        cfg = QCCNRConfig(max_iter=self.spec.max_iter, max_sub=self.spec.max_sub,
                          fr=self.spec.fr, tol=self.spec.tol,
                          df_schedule=self.spec.df_schedule,
                          scaling_factor=self.spec.scaling_factor,
                          channel_error_prob=self.prior, rng_seed=shot_seed)
        return qccnr_decode(self.H, s, cfg, graph=self.graph, tanner=self.tanner).estimate


def _shot_seed(master_seed: int, p_index: int, shot: int) -> int:
    return int(np.random.SeedSequence((master_seed & 0xFFFFFFFFFFFFFFFF,
                                       p_index, shot)).generate_state(1, dtype=np.uint64)[0])


def _run_shot(code: CSSCode, dec_x: _SideDecoder, dec_z: _SideDecoder,
              model: NoiseModel, shot: int, seed: int) -> ShotRecord:
    ex, ez = sample_error(model, code.n, seed)
    sx = syndrome(code.h_z, ex)
    est_x = dec_x(sx, seed) if sx.any() or ex.any() else np.zeros(code.n, dtype=np.uint8)
    x_class = is_logical_failure(code, ex, est_x, "x")
    sz = syndrome(code.h_x, ez)
    est_z = dec_z(sz, seed ^ 0x5A5A5A5A) if sz.any() or ez.any() else np.zeros(code.n, dtype=np.uint8)
    z_class = is_logical_failure(code, ez, est_z, "z")
    return ShotRecord(shot=shot, seed=seed,
                      x_support=[int(i) for i in np.flatnonzero(ex)],
                      z_support=[int(i) for i in np.flatnonzero(ez)],
                      x_class=x_class, z_class=z_class)


_WORKER_STATE: dict = {}


def _worker_init(code, spec, model):
    prior = model.marginal_flip_prob()
    _WORKER_STATE["code"] = code
    _WORKER_STATE["dec_x"] = _SideDecoder(code.h_z, spec, prior)
    _WORKER_STATE["dec_z"] = _SideDecoder(code.h_x, spec, prior)
    _WORKER_STATE["model"] = model


def _worker_shot(args):
    shot, seed = args
    return _run_shot(_WORKER_STATE["code"], _WORKER_STATE["dec_x"],
                     _WORKER_STATE["dec_z"], _WORKER_STATE["model"], shot, seed)


def run_memory_experiment(code: CSSCode, spec: DecoderSpec, model: NoiseModel,
                          p_values, shots: int, seed: int, threads: int = 1,
                          keep_records: bool = False) -> list[SimSummary]:
    """Monte Carlo logical-error-rate estimate at each physical error rate."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    summaries = []
    for p_index, p in enumerate(p_values):
        model_p = replace(model, p=float(p))
        prior = model_p.marginal_flip_prob()
        start = time.perf_counter()
        tasks = [(shot, _shot_seed(seed, p_index, shot)) for shot in range(shots)]
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads, initializer=_worker_init,
                                     initargs=(code, spec, model_p)) as pool:
                records = list(pool.map(_worker_shot, tasks, chunksize=32))
        else:
            dec_x = _SideDecoder(code.h_z, spec, prior)
            dec_z = _SideDecoder(code.h_x, spec, prior)
            records = [_run_shot(code, dec_x, dec_z, model_p, shot, sd)
                       for shot, sd in tasks]
        failures = sum(1 for r in records if r.failed)
        summaries.append(SimSummary(code=code.name, decoder=spec.name, p=float(p),
                                    shots=shots, failures=failures,
                                    seconds=time.perf_counter() - start,
                                    records=records if keep_records else None))
    return summaries


def write_csv(summaries: list[SimSummary], path_or_buf) -> None:
    own = isinstance(path_or_buf, (str, bytes, os.PathLike))
    fh = open(path_or_buf, "w", newline="") if own else path_or_buf
    try:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for s in summaries:
            writer.writerow(s.csv_row())
    finally:
        if own:
            fh.close()


def summaries_to_csv_text(summaries: list[SimSummary]) -> str:
    buf = io.StringIO()
    write_csv(summaries, buf)
    return buf.getvalue()


@dataclass
class ThresholdScan:
    """All raw points per code plus pairwise crossing estimates."""

    points: dict[str, list[SimSummary]]
    crossings: dict[tuple[str, str], float | None]


def _crossing_from_curves(ps, ler_a, ler_b, floor: float) -> float | None:
    """Log-linear interpolation of the first sign change of ler_a - ler_b."""
    la = np.log(np.maximum(np.asarray(ler_a, dtype=float), floor))
    lb = np.log(np.maximum(np.asarray(ler_b, dtype=float), floor))
    diff = la - lb
    for i in range(len(ps) - 1):
        d0, d1 = diff[i], diff[i + 1]
        if d0 == 0.0:
            return float(ps[i])
        if d0 * d1 < 0.0:
            t = d0 / (d0 - d1)
            return float(ps[i] + t * (ps[i + 1] - ps[i]))
    if diff[-1] == 0.0:
        return float(ps[-1])
    return None


def threshold_scan(codes: list[CSSCode], spec: DecoderSpec, model: NoiseModel,
                   p_values, shots: int, seed: int, threads: int = 1,
                   runner=None) -> ThresholdScan:
    """LER curves per code and pairwise crossing points.

    ``runner`` defaults to :func:`run_memory_experiment`; tests may inject a
    stub with known closed-form curves.
    """
    if len(codes) < 2:
        raise ValueError("threshold scan needs at least two codes")
    run = runner if runner is not None else run_memory_experiment
    points = {c.name: run(c, spec, model, p_values, shots, seed, threads)
              for c in codes}
    floor = 0.5 / shots
    crossings: dict[tuple[str, str], float | None] = {}
    names = [c.name for c in codes]
    ps = [float(p) for p in p_values]
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            a, b = names[i], names[j]
            ler_a = [s.ler for s in points[a]]
            ler_b = [s.ler for s in points[b]]
            if ler_a == ler_b:
                crossings[(a, b)] = None
            else:
                crossings[(a, b)] = _crossing_from_curves(ps, ler_a, ler_b, floor)
    return ThresholdScan(points=points, crossings=crossings)
