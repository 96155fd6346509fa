"""Two-mode collaborative decoder.

Main mode runs min-sum on the unmodified matrix until it converges or its
predicted syndrome stops changing. Sub-decoding rounds then repeatedly
deselect high-information-measurement checks around the still-unsatisfied
syndrome bits, decode the residual on the thinned matrix, fold the estimate
into the running one, and give the full-matrix decoder another pass. All
bookkeeping is mod-2 accumulation against the original syndrome, so the
reported residual is exactly ``s + syndrome(H, estimate)`` at every round.

Termination is residual-zero: the decoder stops as soon as the accumulated
estimate explains the entire syndrome, or after ``fr`` rounds otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import SparseBinaryMatrix
from .gf2 import syndrome as gf2_syndrome
from .minsum import DecodeOutcome, DecoderConfig, DecoderGraph, decode, decode_traced_stall
from .removal import RemovalConfig, qcnr
from .tanner import TannerGraph

DEFAULT_DF_SCHEDULE: tuple[tuple[int, int, int], ...] = ((1, 100, 6), (101, 200, 1))


@dataclass
class QCCNRConfig:
    """Budgets and the deselection-degree schedule.

    ``df_schedule`` is a sequence of ``(first_round, last_round, df)``
    entries; the ranges must tile rounds 1 onward without gaps or overlaps
    and reach at least ``fr`` (anything beyond is unused). The default
    removes six checks per round for the first half (quantum trapping sets
    first) and one for the second half (weak-node removal for the classical
    kind).
    """

    max_iter: int = 100
    max_sub: int = 100
    fr: int = 200
    tol: int = 11
    df_schedule: tuple[tuple[int, int, int], ...] = DEFAULT_DF_SCHEDULE
    scaling_factor: float = 0.625
    channel_error_prob: float = 0.03
    rng_seed: int = 0

    def __post_init__(self):
        if self.fr < 0:
            raise ValueError("fr must be non-negative")
        if self.tol < 1:
            raise ValueError("tol must be at least 1")
        if self.fr > 0:
            covered = []
            for lo, hi, df in self.df_schedule:
                if df < 0:
                    raise ValueError("deselection degree must be non-negative")
                covered.append((lo, hi))
            covered.sort()
            expect = 1
            for lo, hi in covered:
                if lo != expect or hi < lo:
                    raise ValueError(f"df_schedule ranges must partition [1, {self.fr}] "
                                     "without gaps or overlaps")
                expect = hi + 1
            if expect <= self.fr:
                raise ValueError(f"df_schedule must cover rounds 1..{self.fr}")

    def df_for_round(self, round_index: int) -> int:
        for lo, hi, df in self.df_schedule:
            if lo <= round_index <= hi:
                return df
        raise ValueError(f"round {round_index} outside the df schedule")

    def bp_config(self, max_iterations: int) -> DecoderConfig:
        return DecoderConfig(max_iterations=max_iterations,
                             scaling_factor=self.scaling_factor,
                             channel_error_prob=self.channel_error_prob)


@dataclass
class RoundRecord:
    """One sub-decoding round of the trace."""

    round_index: int
    df: int
    removed_checks: list[int]
    unsat_before: int
    unsat_after: int
    sub_iterations: int
    main_iterations: int

    @property
    def newly_satisfied(self) -> int:
        return self.unsat_before - self.unsat_after


@dataclass
class QCCNRResult:
    estimate: np.ndarray
    residual_syndrome: np.ndarray
    sub_rounds_used: int
    trace: list[RoundRecord] = field(repr=False)
    main_outcome: DecodeOutcome | None = field(default=None, repr=False)
    stalled: bool = False
    iterations_total: int = 0

    @property
    def converged(self) -> bool:
        return not self.residual_syndrome.any()


def residual(H: SparseBinaryMatrix, s: np.ndarray, estimate: np.ndarray) -> np.ndarray:
    """Mod-2 difference between the target syndrome and the estimate's."""
    s = np.asarray(s, dtype=np.uint8)
    if s.shape != (H.rows,):
        raise ValueError("syndrome length does not match row count")
    return s ^ gf2_syndrome(H, estimate)


def _round_seed(seed: int, round_index: int) -> int:
    return int(np.random.SeedSequence((seed & 0xFFFFFFFFFFFFFFFF, round_index))
               .generate_state(1, dtype=np.uint64)[0])


def qccnr_decode(H: SparseBinaryMatrix, s: np.ndarray, cfg: QCCNRConfig,
                 graph: DecoderGraph | None = None,
                 tanner: TannerGraph | None = None) -> QCCNRResult:
    """Run the collaborative decoder against one syndrome."""
    s = np.asarray(s, dtype=np.uint8)
    if s.shape != (H.rows,):
        raise ValueError(f"syndrome length {s.shape} does not match {H.rows} rows")
    dec_graph = graph if graph is not None else DecoderGraph(H)
    main_cfg = cfg.bp_config(cfg.max_iter)

    # With sub-decoding disabled the decoder is plain min-sum: the stall
    # watch exists only to decide when to switch modes.
    if cfg.fr == 0:
        outcome = decode(dec_graph, s, main_cfg)
        stalled = False
    else:
        outcome, stalled = decode_traced_stall(dec_graph, s, main_cfg, cfg.tol)

    estimate = outcome.hard_decision.copy()
    total_iters = outcome.iterations_used
    r = s ^ dec_graph.predicted_syndrome(estimate)
    if outcome.converged or not r.any():
        return QCCNRResult(estimate=estimate, residual_syndrome=r,
                           sub_rounds_used=0, trace=[], main_outcome=outcome,
                           stalled=stalled, iterations_total=total_iters)

    tg = tanner if tanner is not None else TannerGraph(H)
    sub_cfg = cfg.bp_config(cfg.max_sub)
    trace: list[RoundRecord] = []
    rounds = 0
    for i in range(1, cfg.fr + 1):
        rounds = i
        df = cfg.df_for_round(i)
        unsat = np.flatnonzero(r)
        unsat_before = len(unsat)
        removal = qcnr(H, unsat, RemovalConfig(deselection_degree=df,
                                               rng_seed=_round_seed(cfg.rng_seed, i)),
                       graph=tg)
        kept = removal.row_map >= 0
        sub_outcome = decode(removal.modified_matrix, r[kept], sub_cfg)
        estimate ^= sub_outcome.hard_decision
        r = s ^ dec_graph.predicted_syndrome(estimate)
        total_iters += sub_outcome.iterations_used

        main_pass = decode(dec_graph, r, main_cfg)
        estimate ^= main_pass.hard_decision
        r = s ^ dec_graph.predicted_syndrome(estimate)
        total_iters += main_pass.iterations_used

        trace.append(RoundRecord(round_index=i, df=df,
                                 removed_checks=removal.removed_checks,
                                 unsat_before=unsat_before,
                                 unsat_after=int(r.sum()),
                                 sub_iterations=sub_outcome.iterations_used,
                                 main_iterations=main_pass.iterations_used))
        if not r.any():
            break
    return QCCNRResult(estimate=estimate, residual_syndrome=r,
                       sub_rounds_used=rounds, trace=trace, main_outcome=outcome,
                       stalled=stalled, iterations_total=total_iters)
