import numpy as np
import pytest

from oracles import naive_find_ims
from qldpc_cnr.gf2 import SparseBinaryMatrix, delete_rows, from_support, support, syndrome
from qldpc_cnr.tanner import (TannerGraph, TrappingSetKind, build_ct, cts_fixture,
                              find_ims, leaf_checks, limiting_checks, qts_fixture,
                              qubit_separation, validate_qts)

TABLE_LIMITING = {
    0: [351, 352, 357, 405, 406, 411],
    351: [0, 1, 6, 405, 406, 411],
    405: [0, 1, 6, 351, 352, 357],
}


def M(dense):
    return SparseBinaryMatrix.from_dense(np.array(dense, dtype=np.uint8))


class TestComputationTree:
    def test_check_root_level_one_shape(self):
        # 3-regular qubits, 4-regular checks on a small random-ish matrix
        dense = np.zeros((6, 8), dtype=np.uint8)
        rng = np.random.default_rng(2)
        for q in range(8):
            rows = rng.choice(6, size=3, replace=False)
            dense[rows, q] = 1
        g = TannerGraph(M(dense))
        root = 0
        tree = build_ct(g, "check", root, 1)
        qubit_children = tree.level_nodes(1, "qubit")
        assert len(qubit_children) == len(g.check_neighbors[root])
        for child_pos in tree.children(0):
            grandchildren = tree.children(child_pos)
            assert len(grandchildren) == len(g.qubit_neighbors[tree.nodes[child_pos].index]) - 1

    def test_qubit_root_three_regular(self, hz_tanner):
        tree = build_ct(hz_tanner, "qubit", 10, 1)
        assert sorted(nd.index for nd in tree.level_nodes(1, "check")) == \
            sorted(int(c) for c in hz_tanner.qubit_neighbors[10])

    def test_fig3_landmarks(self, hz_tanner):
        # root v0: checks {c0, c1, c6}; under c0 the qubit children are
        # {v57, v62, v477, v513, v567}
        tree = build_ct(hz_tanner, "qubit", 0, 2)
        level1_checks = {nd.index for nd in tree.level_nodes(1, "check")}
        assert level1_checks == {0, 1, 6}
        c0_pos = next(i for i, nd in enumerate(tree.nodes)
                      if nd.kind == "check" and nd.index == 0)
        children = {tree.nodes[i].index for i in tree.children(c0_pos)}
        assert children == {57, 62, 477, 513, 567}

    def test_positional_revisit(self, hz_tanner):
        # v57 appears twice at depth 2 of T(v0): once under c57/c58 paths
        tree = build_ct(hz_tanner, "qubit", 0, 3)
        count_57 = sum(1 for nd in tree.nodes if nd.kind == "qubit" and nd.index == 57)
        assert count_57 >= 2

    def test_rejects_bad_root(self, hz_tanner):
        with pytest.raises(IndexError):
            build_ct(hz_tanner, "check", 441, 1)
        with pytest.raises(ValueError):
            build_ct(hz_tanner, "qubit", 0, 0)


class TestLeafChecks:
    def test_counting_bound(self, hz_tanner):
        for root in (0, 100, 440):
            leaves = leaf_checks(hz_tanner, root)
            assert len(leaves) <= hz_tanner.d_c * (hz_tanner.d_v - 1)
            assert root not in leaves

    def test_weak_node_in_cts_neighborhood(self, hz_tanner):
        # c5 sits one level below c0 via v62 and is the weak node whose
        # removal raises v0's separation
        assert 5 in leaf_checks(hz_tanner, 0)

    def test_degree_one_chain_empty(self):
        g = TannerGraph(M([[1]]))
        assert leaf_checks(g, 0) == []


class TestFindIms:
    def test_no_unsatisfied_checks(self, hz_tanner):
        table = find_ims(hz_tanner, [], [0, 5, 10])
        assert set(table.check_values.values()) == {0}

    def test_single_isolated_check(self):
        g = TannerGraph(M([[1]]))
        table = find_ims(g, [0], [0])
        assert table.check_values == {0: 1}
        assert table.qubit_values == {0: 1}

    def test_rejects_duplicates(self, hz_tanner):
        with pytest.raises(ValueError):
            find_ims(hz_tanner, [0], [1, 1])

    def test_matches_naive_oracle_random(self):
        rng = np.random.default_rng(23)
        for _ in range(500):
            m = int(rng.integers(2, 14))
            n = int(rng.integers(2, 14))
            dense = (rng.random((m, n)) < 0.3).astype(np.uint8)
            H = M(dense)
            g = TannerGraph(H)
            unsat = [int(c) for c in rng.choice(m, size=rng.integers(0, m),
                                                replace=False)]
            checks = [int(c) for c in rng.choice(m, size=rng.integers(1, m + 1),
                                                 replace=False)]
            expected = naive_find_ims(g.check_neighbors, g.qubit_neighbors,
                                      unsat, checks)
            assert find_ims(g, unsat, checks).check_values == expected

    def test_bounded_by_degrees(self, builtin, hz_tanner):
        e = from_support(882, [0, 351, 405])
        unsat = support(syndrome(builtin.h_z, e))
        table = find_ims(hz_tanner, unsat, list(range(441)))
        bound = hz_tanner.d_c * hz_tanner.d_v
        assert all(0 <= v <= bound for v in table.check_values.values())

    def test_qts_per_root_maxima(self, builtin, hz_tanner):
        # for each of the nine violated checks, the maximum-IM leaves are
        # the other two unsatisfied neighbors of its trapped qubit plus
        # the two opposite-half checks behind its twin qubit
        e = from_support(882, [0, 351, 405])
        unsat = support(syndrome(builtin.h_z, e))
        expected = {
            0: [1, 6, 351, 405], 1: [0, 6, 352, 406], 6: [0, 1, 357, 411],
            351: [0, 352, 357, 405], 352: [1, 351, 357, 406],
            357: [6, 351, 352, 411], 405: [0, 351, 406, 411],
            406: [1, 352, 405, 411], 411: [6, 357, 405, 406],
        }
        union = set()
        for root in unsat:
            table = find_ims(hz_tanner, unsat, leaf_checks(hz_tanner, root))
            assert table.max_checks() == expected[root]
            union.update(table.max_checks())
        for q, lim in TABLE_LIMITING.items():
            assert set(lim) <= union


class TestSeparation:
    def test_cts_v0_separation_two(self, hz_tanner):
        assert qubit_separation(hz_tanner, 0, cts_fixture(), k_max=4) == 2

    def test_cts_all_members(self, hz_tanner):
        spec = cts_fixture()
        for q in spec.qubits:
            assert qubit_separation(hz_tanner, q, spec, k_max=4) == 2

    def test_isolated_qubit_capped_at_k_max(self):
        # a private degree-one check and nothing else below it
        g = TannerGraph(M([[1, 0], [0, 1]]))
        from qldpc_cnr.tanner import TrappingSetSpec
        spec = TrappingSetSpec(kind=TrappingSetKind.CTS, label=(1, 1),
                               qubits=frozenset({0}), odd_checks=frozenset({0}))
        assert qubit_separation(g, 0, spec, k_max=5) == 5

    def test_qts_limited_then_released(self, builtin, hz_tanner):
        spec = qts_fixture()
        before = qubit_separation(hz_tanner, 0, spec, k_max=4)
        assert before == 1
        sub, _ = delete_rows(builtin.h_z, TABLE_LIMITING[0])
        g2 = TannerGraph(sub)
        after = qubit_separation(g2, 0, spec, k_max=4)
        assert after > before

    def test_rejects_non_member(self, hz_tanner):
        with pytest.raises(ValueError):
            qubit_separation(hz_tanner, 99, cts_fixture(), k_max=3)


class TestLimitingChecks:
    def test_counts_are_dv_times_dv_minus_one(self, hz_tanner):
        spec = qts_fixture()
        for q in spec.qubits:
            assert len(limiting_checks(hz_tanner, q, spec)) == 6

    def test_table_rows_verbatim(self, hz_tanner):
        spec = qts_fixture()
        for q, expected in TABLE_LIMITING.items():
            assert sorted(limiting_checks(hz_tanner, q, spec)) == expected

    def test_rejects_cts(self, hz_tanner):
        with pytest.raises(ValueError):
            limiting_checks(hz_tanner, 0, cts_fixture())


class TestFixtures:
    def test_qts_partition_symmetry(self, hz_tanner):
        assert validate_qts(hz_tanner, qts_fixture())

    def test_qts_common_neighborhood(self, hz_tanner):
        spec = qts_fixture()
        va, vb = spec.partition
        na = {int(c) for q in va for c in hz_tanner.qubit_neighbors[q]}
        nb = {int(c) for q in vb for c in hz_tanner.qubit_neighbors[q]}
        assert na == nb
        assert na == {0, 1, 6, 351, 352, 357, 405, 406, 411}

    def test_cts_syndrome_support(self, builtin):
        spec = cts_fixture()
        e = from_support(882, sorted(spec.qubits))
        assert support(syndrome(builtin.h_z, e)) == sorted(spec.odd_checks)

    def test_subset_selection(self):
        spec = qts_fixture()
        assert spec.subset_for(0) == frozenset({0, 351, 405})
        assert spec.subset_for(478) == frozenset({477, 478, 483})
        with pytest.raises(ValueError):
            spec.subset_for(9)
