import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qldpc_cnr.codes import (CSSValidationError, build_gb, build_ghp,
                             code_from_config_text, css_product_is_zero,
                             ghp_882_24, load_code, parse_keyvalue)
from qldpc_cnr.gf2 import from_support, in_rowspace, rank, support, syndrome
from qldpc_cnr.rings import Protograph, RingElement


def random_polynomial_exponents(L, rng, min_terms=0, max_terms=4):
    terms = int(rng.integers(min_terms, min(L, max_terms) + 1))
    return sorted(int(e) for e in rng.choice(L, size=terms, replace=False))


def random_protograph(L, size, rng):
    grid = [[random_polynomial_exponents(L, rng, 0, 2) for _ in range(size)]
            for _ in range(size)]
    return Protograph.from_exponent_grid(L, grid)


class TestBuiltin:
    def test_parameters(self, builtin):
        assert builtin.n == 882
        assert builtin.k == 24
        assert (builtin.h_x.rows, builtin.h_x.cols) == (441, 882)
        assert (builtin.h_z.rows, builtin.h_z.cols) == (441, 882)

    def test_css_condition(self, builtin):
        assert css_product_is_zero(builtin.h_x, builtin.h_z)

    def test_degrees(self, builtin):
        assert set(int(w) for w in builtin.h_x.row_weights()) == {6}
        assert set(int(w) for w in builtin.h_z.row_weights()) == {6}
        assert set(int(w) for w in builtin.h_x.col_weights()) == {3}
        assert set(int(w) for w in builtin.h_z.col_weights()) == {3}

    def test_rank_split(self, builtin):
        assert rank(builtin.h_x) == 429
        assert rank(builtin.h_z) == 429

    def test_paper_adjacency_landmarks(self, builtin):
        hz = builtin.h_z
        assert [int(c) for c in hz.row_support[0]] == [0, 57, 62, 477, 513, 567]
        assert [int(r) for r in hz.col_support[477]] == [0, 351, 405]
        assert [int(r) for r in hz.col_support[0]] == [0, 1, 6]

    def test_logicals(self, builtin):
        assert len(builtin.logical_x) == 24
        assert len(builtin.logical_z) == 24
        for lx in builtin.logical_x:
            assert not syndrome(builtin.h_z, lx).any()
            assert not in_rowspace(builtin.h_x, lx)
        for lz in builtin.logical_z:
            assert not syndrome(builtin.h_x, lz).any()
            assert not in_rowspace(builtin.h_z, lz)


class TestBuildGhp:
    def test_two_qubit_degenerate(self):
        code = build_ghp(Protograph([[RingElement.one(1)]]), RingElement.one(1))
        assert code.n == 2 and code.k == 0
        assert np.array_equal(code.h_x.to_dense(), [[1, 1]])
        assert np.array_equal(code.h_z.to_dense(), [[1, 1]])
        assert code.logical_x == [] and code.logical_z == []

    def test_rejects_non_square(self):
        p = Protograph([[RingElement.one(3), RingElement.one(3)]])
        with pytest.raises(ValueError):
            build_ghp(p, RingElement.one(3))

    def test_rejects_lift_mismatch(self):
        with pytest.raises(ValueError):
            build_ghp(Protograph([[RingElement.one(3)]]), RingElement.one(4))

    def test_random_products_are_css(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            L = int(rng.integers(2, 8))
            size = int(rng.integers(1, 4))
            a = random_protograph(L, size, rng)
            b = RingElement.from_exponents(
                L, random_polynomial_exponents(L, rng, 1, 3))
            code = build_ghp(a, b, with_logicals=False)
            assert css_product_is_zero(code.h_x, code.h_z)


class TestBuildGb:
    def test_four_qubit_degenerate(self):
        code = build_gb(RingElement.one(2), RingElement.one(2))
        assert code.n == 4 and code.k == 0

    def test_commutativity_cancellation(self):
        code = build_gb(RingElement.x(5, 1), RingElement.x(5, 2))
        assert css_product_is_zero(code.h_x, code.h_z)

    def test_random_polynomial_pairs_are_css(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            L = int(rng.integers(2, 17))
            a = RingElement.from_exponents(L, random_polynomial_exponents(L, rng, 1))
            b = RingElement.from_exponents(L, random_polynomial_exponents(L, rng, 1))
            code = build_gb(a, b, with_logicals=False)
            assert css_product_is_zero(code.h_x, code.h_z)

    def test_noncommuting_protographs_rejected(self):
        zero, one, x = RingElement.zero(3), RingElement.one(3), RingElement.x(3, 1)
        a = Protograph([[one, x], [zero, one]])
        b = Protograph([[one, zero], [x, one]])
        with pytest.raises(CSSValidationError):
            build_gb(a, b)


class TestConfig:
    def test_keyvalue_parser(self):
        cfg = parse_keyvalue("a = 1\n# comment\nb = two words  # trailing\n\n")
        assert cfg == {"a": "1", "b": "two words"}

    def test_keyvalue_rejects_bad_line(self):
        with pytest.raises(ValueError):
            parse_keyvalue("just text\n")

    def test_keyvalue_rejects_duplicate(self):
        with pytest.raises(ValueError):
            parse_keyvalue("a = 1\na = 2\n")

    def test_ghp_config_matches_builtin(self, builtin):
        code = load_code("configs/ghp-882-24.cfg")
        assert code.h_x == builtin.h_x
        assert code.h_z == builtin.h_z
        assert code.k == 24

    def test_gb_example_config(self):
        code = load_code("configs/gb-126-12.cfg")
        assert code.name == "gb-126-12"
        assert code.n == 126 and code.k == 12
        assert set(int(w) for w in code.h_x.col_weights()) == {3}

    def test_missing_template(self):
        with pytest.raises(ValueError):
            code_from_config_text("lift = 4\na = 0\nb = 1\n")

    def test_bad_cell_key(self):
        with pytest.raises(ValueError):
            code_from_config_text(
                "template = ghp\nlift = 4\nrows = 1\ncols = 1\na[2][0] = 1\nb = 0\n")

    def test_unknown_code_name(self):
        with pytest.raises(ValueError):
            load_code("no-such-code")
