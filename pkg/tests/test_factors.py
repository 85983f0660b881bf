import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mm33.factors import (
    BUILTIN_FACTOR_TEXT,
    FactorFileError,
    Scheme,
    builtin_scheme,
    flat_index,
    parse_factor_file,
    row_col,
    serialize_factor_file,
)

from oracles import random_scheme


def unit(coord):
    return tuple(1 if i == coord else 0 for i in range(9))


ZERO_ROW = (0,) * 9


class TestIndexing:
    def test_flat_round_trip(self):
        for flat in range(9):
            assert flat_index(*row_col(flat)) == flat

    def test_row_major(self):
        assert flat_index(1, 2) == 5
        assert row_col(7) == (2, 1)


class TestBuiltinScheme:
    def test_rank(self):
        assert builtin_scheme().rank == 23

    def test_all_entries_ternary(self):
        s = builtin_scheme()
        for factor in (s.u, s.v, s.w):
            assert all(entry in (-1, 0, 1) for row in factor for entry in row)

    def test_product_17_is_plain_entry_product(self):
        # product 17 multiplies A_0 by B_0 and feeds output 0
        s = builtin_scheme()
        assert s.u[17] == unit(0)
        assert s.v[17] == unit(0)

    def test_product_13_rows(self):
        # product 13 is A_2 * B_6 and contributes only to output 0
        s = builtin_scheme()
        assert s.u[13] == unit(2)
        assert s.w[13] == unit(0)

    def test_product_5_right_factor(self):
        # product 5 is A_4 * B_5
        assert builtin_scheme().v[5] == unit(5)

    def test_cached_instance(self):
        assert builtin_scheme() is builtin_scheme()


class TestParse:
    def test_parses_embedded_table(self):
        assert parse_factor_file(BUILTIN_FACTOR_TEXT) == builtin_scheme()

    def test_rank_one_zero_scheme(self):
        text = "\n".join(["0"] * 9 + ["#"] + ["0"] * 9 + ["#"] + ["0"] * 9)
        s = parse_factor_file(text)
        assert s.rank == 1
        assert s.u == s.v == s.w == (ZERO_ROW,)

    def test_transposed_storage(self):
        # block row c, column r maps to factor row r, coordinate c
        text = "\n".join(
            [" 1  0"] + ["0 0"] * 8 + ["#", "0 1"] + [" 0  0"] * 8 + ["#"] + ["1 1"] * 9
        )
        s = parse_factor_file(text)
        assert s.u[0] == unit(0) and s.u[1] == ZERO_ROW
        assert s.v[0] == ZERO_ROW and s.v[1] == unit(0)
        assert s.w[0] == s.w[1] == (1,) * 9

    def test_crlf_and_padding_tolerated(self):
        text = BUILTIN_FACTOR_TEXT.replace("\n", "\r\n")
        assert parse_factor_file("\n\n  " + text + "\n\n") == builtin_scheme()

    def test_separator_with_leading_blanks(self):
        text = BUILTIN_FACTOR_TEXT.replace("#", "   # blocks may be annotated")
        assert parse_factor_file(text) == builtin_scheme()

    def test_bad_token_names_line(self):
        lines = BUILTIN_FACTOR_TEXT.splitlines()
        lines[4] = lines[4].replace(" 1", " 2", 1)
        with pytest.raises(FactorFileError, match=r"line 5: bad token '2'"):
            parse_factor_file("\n".join(lines))

    def test_ragged_row_names_line(self):
        lines = BUILTIN_FACTOR_TEXT.splitlines()
        lines[3] += "  1"
        with pytest.raises(FactorFileError, match=r"line 4: row has 24 tokens"):
            parse_factor_file("\n".join(lines))

    def test_missing_block(self):
        first = BUILTIN_FACTOR_TEXT.split("#")[0]
        with pytest.raises(FactorFileError, match="1 blocks, expected 3"):
            parse_factor_file(first)

    def test_fourth_block_rejected(self):
        with pytest.raises(FactorFileError, match="more than 3 blocks"):
            parse_factor_file(BUILTIN_FACTOR_TEXT + "#\n0\n")

    def test_trailing_separator_rejected(self):
        with pytest.raises(FactorFileError, match="more than 3 blocks"):
            parse_factor_file(BUILTIN_FACTOR_TEXT + "#\n")

    def test_short_block_names_row_count(self):
        lines = BUILTIN_FACTOR_TEXT.splitlines()
        del lines[2]
        with pytest.raises(FactorFileError, match="block 1 has 8 rows"):
            parse_factor_file("\n".join(lines))

    def test_long_block_rejected(self):
        lines = BUILTIN_FACTOR_TEXT.splitlines()
        lines.insert(4, lines[3])
        with pytest.raises(FactorFileError, match="more than 9 rows"):
            parse_factor_file("\n".join(lines))

    def test_empty_input(self):
        with pytest.raises(FactorFileError):
            parse_factor_file("")


class TestSerialize:
    def test_builtin_matches_embedded_text(self):
        assert serialize_factor_file(builtin_scheme()) == BUILTIN_FACTOR_TEXT

    def test_rank_one_zero_scheme(self):
        s = Scheme(1, (ZERO_ROW,), (ZERO_ROW,), (ZERO_ROW,))
        blocks = serialize_factor_file(s).split("#\n")
        assert len(blocks) == 3
        assert all(block == " 0\n" * 9 for block in blocks)

    def test_tokens_right_aligned(self):
        s = Scheme(2, (unit(0), tuple(-x for x in unit(0))),
                   ((0,) * 9,) * 2, ((0,) * 9,) * 2)
        first_line = serialize_factor_file(s).splitlines()[0]
        assert first_line == " 1 -1"

    @settings(max_examples=60, deadline=None)
    @given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=2**32))
    def test_round_trip_random_schemes(self, rank, seed):
        s = random_scheme(random.Random(seed), rank)
        assert parse_factor_file(serialize_factor_file(s)) == s


class TestSchemeValidation:
    def test_rank_must_match_rows(self):
        with pytest.raises(ValueError, match="expected rank"):
            Scheme(2, (ZERO_ROW,), (ZERO_ROW,) * 2, (ZERO_ROW,) * 2)

    def test_rows_must_have_nine_entries(self):
        with pytest.raises(ValueError, match="expected 9"):
            Scheme(1, ((0,) * 8,), (ZERO_ROW,), (ZERO_ROW,))

    def test_entries_must_be_ternary(self):
        row = (2,) + (0,) * 8
        with pytest.raises(ValueError, match="outside"):
            Scheme(1, (row,), (ZERO_ROW,), (ZERO_ROW,))
