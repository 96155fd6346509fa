"""Quantum LDPC decoding toolkit.

Construction of two-block CSS codes over rings of circulants, syndrome-based
min-sum belief propagation, trapping-set / qubit-separation / information-
measurement analysis, collaborative check-node-removal decoding, and a
Monte Carlo memory-experiment harness.
"""

from .codes import CSSCode, build_gb, build_ghp, ghp_882_24, load_code
from .collab import QCCNRConfig, QCCNRResult, qccnr_decode, residual
from .gf2 import (SparseBinaryMatrix, delete_rows, from_support, in_rowspace,
                  nullspace_basis, rank, support, syndrome)
from .minsum import DecodeOutcome, DecoderConfig, decode, decode_traced_stall
from .noise import (DecoderSpec, NoiseModel, is_logical_failure,
                    run_memory_experiment, sample_error, threshold_scan)
from .removal import RemovalConfig, RemovalOutcome, cnr, qcnr
from .rings import Protograph, RingElement, lift_to_binary
from .tanner import (ComputationTree, IMTable, TannerGraph, TrappingSetKind,
                     TrappingSetSpec, build_ct, cts_fixture, find_ims,
                     leaf_checks, limiting_checks, qts_fixture, qubit_separation)

__all__ = [
    "CSSCode", "build_gb", "build_ghp", "ghp_882_24", "load_code",
    "QCCNRConfig", "QCCNRResult", "qccnr_decode", "residual",
    "SparseBinaryMatrix", "delete_rows", "from_support", "in_rowspace",
    "nullspace_basis", "rank", "support", "syndrome",
    "DecodeOutcome", "DecoderConfig", "decode", "decode_traced_stall",
    "DecoderSpec", "NoiseModel", "is_logical_failure",
    "run_memory_experiment", "sample_error", "threshold_scan",
    "RemovalConfig", "RemovalOutcome", "cnr", "qcnr",
    "Protograph", "RingElement", "lift_to_binary",
    "ComputationTree", "IMTable", "TannerGraph", "TrappingSetKind",
    "TrappingSetSpec", "build_ct", "cts_fixture", "find_ims", "leaf_checks",
    "limiting_checks", "qts_fixture", "qubit_separation",
]

__version__ = "0.1.0"
