"""Syndrome-based min-sum belief propagation with a flooding schedule.

Each iteration runs a full check-node update (scaled min of the extrinsic
magnitudes, sign product, syndrome sign) followed by a full qubit-node
update using the fresh check messages, then takes hard decisions from the
soft outputs and tests the predicted syndrome for the early exit. A soft
output of exactly zero decodes to 0, biasing ties toward the lower-weight
estimate.

The per-iteration edge kernel is compiled with numba when available; the
pure-python fallback is only suitable for toy matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf2 import SparseBinaryMatrix

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap


# Magnitude assigned to the extrinsic min over an empty set (degree-one
# checks); large enough to dominate, small enough to keep sums exact-ish.
_EMPTY_MIN = 1e9


@dataclass
class DecoderConfig:
    """Knobs for one min-sum decode."""

    max_iterations: int = 100
    scaling_factor: float = 0.625
    channel_error_prob: float = 0.03

    def __post_init__(self):
        if not (0.0 < self.scaling_factor <= 1.0):
            raise ValueError("scaling_factor must be in (0, 1]")
        if not (0.0 < self.channel_error_prob < 1.0):
            raise ValueError("channel_error_prob must be in (0, 1)")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")

    @property
    def prior_llr(self) -> float:
        p = self.channel_error_prob
        return float(np.log((1.0 - p) / p))


@dataclass
class DecodeOutcome:
    """Result of a decode: hard decisions, soft outputs, and bookkeeping.

    ``converged`` implies the hard decision reproduces the target syndrome
    exactly. ``per_iteration_syndrome`` holds the predicted syndrome after
    each iteration when tracing was requested.
    """

    hard_decision: np.ndarray
    soft_outputs: np.ndarray
    converged: bool
    iterations_used: int
    per_iteration_syndrome: list[np.ndarray] | None = field(default=None, repr=False)


class DecoderGraph:
    """Edge-array view of a parity-check matrix for the message kernel."""

    __slots__ = ("H", "m", "n", "edge_qubit", "check_start", "qubit_edges", "qubit_start")

    def __init__(self, H: SparseBinaryMatrix):
        self.H = H
        self.m, self.n = H.rows, H.cols
        degrees = H.row_weights()
        self.check_start = np.zeros(self.m + 1, dtype=np.int64)
        np.cumsum(degrees, out=self.check_start[1:])
        total = int(self.check_start[-1])
        self.edge_qubit = np.empty(total, dtype=np.int64)
        for r in range(self.m):
            self.edge_qubit[self.check_start[r]:self.check_start[r + 1]] = H.row_support[r]
        order = np.argsort(self.edge_qubit, kind="stable")
        self.qubit_edges = order
        counts = np.bincount(self.edge_qubit, minlength=self.n)
        self.qubit_start = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(counts, out=self.qubit_start[1:])

    def predicted_syndrome(self, hard: np.ndarray) -> np.ndarray:
        out = np.zeros(self.m, dtype=np.uint8)
        if len(self.edge_qubit) == 0:
            return out
        bits = hard[self.edge_qubit]
        nonempty = self.check_start[:-1] < self.check_start[1:]
        if nonempty.any():
            acc = np.bitwise_xor.reduceat(bits, self.check_start[:-1][nonempty])
            out[nonempty] = acc
        return out


@njit(cache=True, nogil=True)
def _iterate(check_start, edge_qubit, qubit_start, qubit_edges,
             syn_sign, lam, alpha, msg_vc, msg_cv, gamma):
    m = check_start.shape[0] - 1
    n = qubit_start.shape[0] - 1
    for j in range(m):
        lo, hi = check_start[j], check_start[j + 1]
        neg = 0
        min1 = 1e300
        min2 = 1e300
        arg1 = -1
        for e in range(lo, hi):
            v = msg_vc[e]
            if v < 0.0:
                neg += 1
            a = abs(v)
            if a < min1:
                min2 = min1
                min1 = a
                arg1 = e
            elif a < min2:
                min2 = a
        total_sign = -1.0 if (neg & 1) else 1.0
        for e in range(lo, hi):
            v = msg_vc[e]
            self_sign = -1.0 if v < 0.0 else 1.0
            if hi - lo == 1:
                w = _EMPTY_MIN
            elif e == arg1:
                w = min2
            else:
                w = min1
            msg_cv[e] = syn_sign[j] * alpha * total_sign * self_sign * w
    for i in range(n):
        lo, hi = qubit_start[i], qubit_start[i + 1]
        total = lam
        for k in range(lo, hi):
            total += msg_cv[qubit_edges[k]]
        gamma[i] = total
        for k in range(lo, hi):
            e = qubit_edges[k]
            msg_vc[e] = total - msg_cv[e]


def _support_key(s: np.ndarray) -> bytes:
    return np.flatnonzero(s).astype(np.int64).tobytes()


def _run(graph: DecoderGraph, s: np.ndarray, cfg: DecoderConfig,
         trace: bool, stall_tol: int | None) -> tuple[DecodeOutcome, bool]:
    m, n = graph.m, graph.n
    s = np.asarray(s, dtype=np.uint8)
    if s.shape != (m,):
        raise ValueError(f"syndrome length {s.shape} does not match {m} rows")
    lam = cfg.prior_llr
    syn_sign = np.where(s == 1, -1.0, 1.0)
    msg_vc = np.full(len(graph.edge_qubit), lam, dtype=np.float64)
    msg_cv = np.zeros_like(msg_vc)
    gamma = np.full(n, lam, dtype=np.float64)
    trace_syndromes: list[np.ndarray] | None = [] if trace else None
    history: list[bytes] = []
    unchanged = 0
    stalled = False
    hard = np.zeros(n, dtype=np.uint8)
    iterations = 0
    converged = False
    for it in range(1, cfg.max_iterations + 1):
        iterations = it
        _iterate(graph.check_start, graph.edge_qubit, graph.qubit_start,
                 graph.qubit_edges, syn_sign, lam, cfg.scaling_factor,
                 msg_vc, msg_cv, gamma)
        hard = (gamma < 0.0).astype(np.uint8)
        pred = graph.predicted_syndrome(hard)
        if trace_syndromes is not None:
            trace_syndromes.append(pred)
        if np.array_equal(pred, s):
            converged = True
            break
        if stall_tol is not None:
            key = _support_key(pred)
            if history and (key == history[-1] or (len(history) > 1 and key == history[-2])):
                unchanged += 1
            else:
                unchanged = 0
            history.append(key)
            if len(history) > 2:
                history.pop(0)
            if unchanged >= stall_tol:
                stalled = True
                break
    outcome = DecodeOutcome(hard_decision=hard, soft_outputs=gamma.copy(),
                            converged=converged, iterations_used=iterations,
                            per_iteration_syndrome=trace_syndromes)
    return outcome, stalled


def decode(H: SparseBinaryMatrix | DecoderGraph, s: np.ndarray, cfg: DecoderConfig,
           trace: bool = False) -> DecodeOutcome:
    """Run flooding min-sum until the syndrome is matched or iterations run out."""
    graph = H if isinstance(H, DecoderGraph) else DecoderGraph(H)
    outcome, _ = _run(graph, s, cfg, trace, stall_tol=None)
    return outcome


def decode_traced_stall(H: SparseBinaryMatrix | DecoderGraph, s: np.ndarray,
                        cfg: DecoderConfig, tol: int) -> tuple[DecodeOutcome, bool]:
    """Decode while watching for a stuck predicted syndrome.

    The stall counter increments when the predicted-syndrome support equals
    the prediction from one or two iterations prior (covering fixed points
    and period-2 oscillations) and the decode stops once it reaches ``tol``
    before convergence.
    """
    if tol < 1:
        raise ValueError("tol must be at least 1")
    graph = H if isinstance(H, DecoderGraph) else DecoderGraph(H)
    return _run(graph, s, cfg, trace=True, stall_tol=tol)
