from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evspace import core
from evspace.core import (CondTriple, CorrelationVector, EventTable, FormatError,
                          Ternary, parse_correlation_vector, parse_event_table,
                          prob, serialize_correlation_vector, serialize_event_table)

FIG1 = """
# comment line
A,B,C
1,1,1 x1
1,1,0 x1
1,0,1 x0
1,0,0 x3
0,1,1 x3
0,1,0 x0
0,0,1 x1
0,0,0 x1
"""


class TestProb:
    def test_basic_value(self):
        assert prob(13, 18) == F(13, 18)

    def test_zero(self):
        assert prob(0, 5) == F(0)

    def test_reduction(self):
        assert prob(4, 8) == F(1, 2)

    @pytest.mark.parametrize("num,den", [(-1, 2), (3, 2), (1, 0), (1, -4)])
    def test_out_of_range(self, num, den):
        with pytest.raises(ValueError):
            prob(num, den)

    @given(st.integers(1, 500), st.integers(0, 500), st.integers(1, 20))
    def test_reduction_canonical(self, den, num, k):
        num = num % (den + 1)
        assert prob(k * num, k * den) == prob(num, den)


class TestRationalParsing:
    def test_fraction_literal(self):
        assert core.parse_rational("3/5") == F(3, 5)

    def test_decimal_is_exact(self):
        assert core.parse_prob("0.25") == F(1, 4)
        assert core.parse_prob("0.1") == F(1, 10)

    def test_garbage(self):
        with pytest.raises(FormatError):
            core.parse_rational("one half")

    def test_range_check(self):
        with pytest.raises(FormatError):
            core.parse_prob("7/5")


class TestEventTable:
    def test_fig1_shape(self):
        table = parse_event_table(FIG1)
        assert table.observables == ("A", "B", "C")
        assert table.total == 10
        # the two x0 rows are normalized away
        assert len(table.rows) == 6

    def test_empty_is_error(self):
        with pytest.raises(FormatError, match="empty table"):
            parse_event_table("A,B,C\n")

    def test_unknown_cells(self):
        table = parse_event_table("A,B\n?,1\n0,?\n1,1 x2")
        unknown = sum(
            count for cells, count in table.rows if Ternary.UNKNOWN in cells)
        assert unknown == 2

    def test_arity_mismatch(self):
        with pytest.raises(FormatError):
            parse_event_table("A,B\n1,0,1\n")

    def test_unknown_symbol(self):
        with pytest.raises(FormatError):
            parse_event_table("A,B\n1,2\n")

    def test_count_suffix_comma_form(self):
        table = parse_event_table("A\n1,x3\n0")
        assert table.total == 4

    def test_roundtrip(self):
        table = parse_event_table(FIG1)
        again = parse_event_table(serialize_event_table(table))
        assert again == table

    @given(st.lists(
        st.tuples(st.tuples(*[st.sampled_from(list(Ternary))] * 3),
                  st.integers(1, 9)),
        min_size=1, max_size=12))
    def test_roundtrip_random(self, rows):
        table = EventTable(("A", "B", "C"), tuple(rows))
        assert parse_event_table(serialize_event_table(table)) == table


class TestCondTriple:
    def test_range_validation(self):
        with pytest.raises(ValueError):
            CondTriple(F(3, 2), F(0), F(0))

    def test_marginal_open_interval(self):
        with pytest.raises(ValueError):
            CondTriple(F(1, 2), F(1, 2), F(1, 2), marginal=F(0))

    def test_immutable(self):
        t = CondTriple(F(1, 2), F(1, 2), F(1, 2))
        with pytest.raises(AttributeError):
            t.p = F(1)


class TestCorrelationVector:
    def test_parse(self):
        v = parse_correlation_vector("n=3\np1=1/2\np2=0.5\np3=1/2\np1,2=1/4\n")
        assert v.n == 3
        assert v.unary[2] == F(1, 2)
        assert v.pairwise[(1, 2)] == F(1, 4)
        assert not v.is_complete

    def test_bad_pair_order(self):
        with pytest.raises(FormatError):
            parse_correlation_vector("n=2\np2,1=1/4\n")

    def test_roundtrip(self):
        text = "n=2\np1=1/2\np2=1/2\np1,2=3/5\n"
        v = parse_correlation_vector(text)
        assert serialize_correlation_vector(v) == text

    def test_index_bounds(self):
        with pytest.raises(ValueError):
            CorrelationVector(2, {3: F(1, 2)})


class TestComparisonMode:
    def teardown_method(self):
        core.set_exact_comparison()

    def test_exact_default(self):
        assert not core.values_equal(F(1, 3), F(1, 3) + F(1, 10**12))

    def test_float_mode(self):
        core.set_float_comparison(F(1, 10**9))
        assert core.values_equal(F(1, 3), F(1, 3) + F(1, 10**12))
        assert core.values_leq(F(1, 3) + F(1, 10**12), F(1, 3))

    @given(st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
    def test_exact_comparison_transitive(self, a, b, c):
        if core.values_leq(a, b) and core.values_leq(b, c):
            assert core.values_leq(a, c)
