import numpy as np
import pytest

from qldpc_cnr.codes import build_gb
from qldpc_cnr.gf2 import from_support
from qldpc_cnr.noise import (LOGICAL, MISMATCH, SUCCESS, DecoderSpec, NoiseModel,
                             SimSummary, is_logical_failure, run_memory_experiment,
                             sample_error, summaries_to_csv_text, threshold_scan,
                             write_csv)
from qldpc_cnr.rings import RingElement

BP = DecoderSpec(name="bp")
QCCNR = DecoderSpec(name="qccnr")


def small_code():
    a = RingElement.from_exponents(7, [0, 1, 3])
    b = RingElement.from_exponents(7, [1, 2, 4])
    return build_gb(a, b, name="gb-toy")


class TestSampling:
    def test_p_zero_empty(self):
        x, z = sample_error(NoiseModel("bitflip", 0.0), 50, seed=1)
        assert not x.any() and not z.any()

    def test_p_one_bitflip_flips_everything(self):
        x, z = sample_error(NoiseModel("bitflip", 1.0), 50, seed=1)
        assert x.all() and not z.any()

    def test_determinism(self):
        a = sample_error(NoiseModel("depolarizing", 0.2), 100, seed=9)
        b = sample_error(NoiseModel("depolarizing", 0.2), 100, seed=9)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])

    def test_depolarizing_marginals(self):
        p = 0.3
        n = 100_000
        x, z = sample_error(NoiseModel("depolarizing", p), n, seed=4)
        target = 2 * p / 3
        sigma = np.sqrt(target * (1 - target) / n)
        assert abs(x.mean() - target) < 3 * sigma
        assert abs(z.mean() - target) < 3 * sigma
        # Y events contribute to both parts with probability p/3
        both = (x & z).mean()
        sigma_y = np.sqrt((p / 3) * (1 - p / 3) / n)
        assert abs(both - p / 3) < 3 * sigma_y

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            NoiseModel("amplitude", 0.1)


class TestFailureClassification:
    def test_exact_estimate_succeeds(self, builtin):
        e = from_support(882, [5, 80])
        assert is_logical_failure(builtin, e, e, "x") == SUCCESS

    def test_stabilizer_residual_succeeds(self, builtin):
        e = from_support(882, [5, 80])
        row = np.zeros(882, dtype=np.uint8)
        row[builtin.h_x.row_support[17]] = 1
        assert is_logical_failure(builtin, e, e ^ row, "x") == SUCCESS

    def test_logical_residual_fails(self, builtin):
        e = from_support(882, [5, 80])
        est = e ^ builtin.logical_x[0]
        assert is_logical_failure(builtin, e, est, "x") == LOGICAL

    def test_syndrome_mismatch(self, builtin):
        e = from_support(882, [5])
        est = from_support(882, [6])
        assert is_logical_failure(builtin, e, est, "x") == MISMATCH

    def test_z_side_mirrored(self, builtin):
        e = from_support(882, [5, 80])
        row = np.zeros(882, dtype=np.uint8)
        row[builtin.h_z.row_support[17]] = 1
        assert is_logical_failure(builtin, e, e ^ row, "z") == SUCCESS
        assert is_logical_failure(builtin, e, e ^ builtin.logical_z[0], "z") == LOGICAL


class TestMemoryExperiment:
    def test_p_zero_no_failures(self):
        code = small_code()
        (summary,) = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.0),
                                           [0.0], shots=20, seed=1)
        assert summary.failures == 0
        assert summary.ler == 0.0

    def test_shot_accounting_and_stderr(self):
        code = small_code()
        (summary,) = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.1),
                                           [0.1], shots=40, seed=2, keep_records=True)
        assert summary.shots == 40
        assert len(summary.records) == 40
        assert summary.ler == summary.failures / 40
        expect = np.sqrt(summary.ler * (1 - summary.ler) / 40)
        assert summary.stderr == pytest.approx(expect)

    def test_rejects_zero_shots(self):
        with pytest.raises(ValueError):
            run_memory_experiment(small_code(), BP, NoiseModel("bitflip", 0.1),
                                  [0.1], shots=0, seed=1)

    def test_same_seed_same_csv(self):
        # byte-identical up to the wall-clock column
        code = small_code()
        runs = [summaries_to_csv_text(
                    run_memory_experiment(code, BP, NoiseModel("bitflip", 0.08),
                                          [0.05, 0.08], shots=60, seed=5))
                for _ in range(2)]
        strip = [[",".join(line.split(",")[:-1]) for line in r.splitlines()]
                 for r in runs]
        assert strip[0] == strip[1]

    def test_seed_matters(self):
        code = small_code()
        a = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.12),
                                  [0.12], shots=80, seed=5)[0]
        b = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.12),
                                  [0.12], shots=80, seed=6)[0]
        assert a.records != b.records or a.failures != b.failures

    def test_parallel_equals_serial(self):
        code = small_code()
        serial = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.1),
                                       [0.06, 0.1], shots=30, seed=3)
        parallel = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.1),
                                         [0.06, 0.1], shots=30, seed=3, threads=2)
        assert [s.failures for s in serial] == [s.failures for s in parallel]

    def test_ler_monotone_in_p_for_bp(self):
        code = small_code()
        summaries = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.1),
                                          [0.02, 0.3], shots=400, seed=8)
        lo, hi = summaries
        spread = 3 * np.sqrt(lo.stderr ** 2 + hi.stderr ** 2)
        assert hi.ler - lo.ler > -spread

    def test_csv_format(self, tmp_path):
        code = small_code()
        summaries = run_memory_experiment(code, BP, NoiseModel("bitflip", 0.05),
                                          [0.05], shots=10, seed=1)
        out = tmp_path / "r.csv"
        write_csv(summaries, out)
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "code,decoder,p,shots,failures,ler,stderr,seconds"
        assert len(lines) == 2
        fields = lines[1].split(",")
        assert fields[0] == "gb-toy" and fields[1] == "bp"
        assert int(fields[3]) == 10


class TestThresholdScan:
    def test_needs_two_codes(self):
        with pytest.raises(ValueError):
            threshold_scan([small_code()], BP, NoiseModel("depolarizing", 0.1),
                           [0.1], shots=10, seed=1)

    def test_identical_codes_report_no_crossing(self):
        code = small_code()
        code_b = build_gb(RingElement.from_exponents(7, [0, 1, 3]),
                          RingElement.from_exponents(7, [1, 2, 4]), name="gb-toy-b")
        scan = threshold_scan([code, code_b], BP, NoiseModel("depolarizing", 0.1),
                              [0.05, 0.1], shots=25, seed=4)
        # same construction, same seeds: identical curves, no crossing
        assert scan.crossings[("gb-toy", "gb-toy-b")] is None

    def test_synthetic_stub_recovers_planted_crossing(self):
        # two closed-form curves crossing at p* = 0.15
        p_star = 0.15

        def planted(code, spec, model, p_values, shots, seed, threads=1,
                    keep_records=False):
            steep = 3.0 if code.name.endswith("254-like") else 1.5
            out = []
            for idx, p in enumerate(p_values):
                ler = min(0.5, 0.5 * (float(p) / p_star) ** steep)
                rng = np.random.default_rng((seed, idx, hash(code.name) & 0xFFFF))
                fails = int(rng.binomial(shots, ler))
                out.append(SimSummary(code=code.name, decoder=spec.name, p=float(p),
                                      shots=shots, failures=fails, seconds=0.0))
            return out

        code_a = small_code()
        code_b = build_gb(RingElement.from_exponents(7, [0, 2, 3]),
                          RingElement.from_exponents(7, [1, 3, 5]),
                          name="gb-254-like")
        grid = [0.09, 0.12, 0.15, 0.18, 0.21]
        scan = threshold_scan([code_a, code_b], BP, NoiseModel("depolarizing", 0.1),
                              grid, shots=40_000, seed=9, runner=planted)
        crossing = scan.crossings[(code_a.name, code_b.name)]
        assert crossing is not None
        assert abs(crossing - p_star) <= 0.03  # one grid step

    def test_qccnr_spec_accepted(self):
        code = small_code()
        code_b = build_gb(RingElement.from_exponents(7, [0, 2, 3]),
                          RingElement.from_exponents(7, [1, 3, 5]), name="gb-toy-2")
        scan = threshold_scan([code, code_b], QCCNR, NoiseModel("depolarizing", 0.2),
                              [0.2], shots=8, seed=2)
        assert set(scan.points) == {"gb-toy", "gb-toy-2"}
