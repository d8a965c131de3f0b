import pytest
from hypothesis import given, settings, strategies as st

from wittlab.multipoly import MultiPoly, binomial_power


def poly_from_dict(nvars, d):
    return MultiPoly(nvars, d)


small_polys = st.dictionaries(
    st.tuples(
        st.integers(min_value=0, max_value=4), st.integers(min_value=0, max_value=4)
    ),
    st.integers(min_value=-9, max_value=9),
    max_size=5,
).map(lambda d: poly_from_dict(2, d))


class TestArithmetic:
    def test_add_cancels(self):
        p = MultiPoly(2, {(1, 0): 3})
        q = MultiPoly(2, {(1, 0): -3, (0, 1): 1})
        assert (p + q).terms == {(0, 1): 1}

    def test_mul_small(self):
        # (x + y)^2 = x^2 + 2xy + y^2
        p = MultiPoly(2, {(1, 0): 1, (0, 1): 1})
        sq = p * p
        assert sq.terms == {(2, 0): 1, (1, 1): 2, (0, 2): 1}

    def test_pow_matches_binomial(self):
        p = MultiPoly(2, {(1, 0): 1, (0, 1): 1})
        assert p.pow(7) == binomial_power(2, 0, 1, 7)

    @settings(max_examples=80, deadline=None)
    @given(small_polys, small_polys, small_polys)
    def test_ring_axioms(self, a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a - a).is_zero()

    def test_exact_div(self):
        p = MultiPoly(1, {(3,): 6, (0,): -9})
        q = p.exact_div(3)
        assert q.terms == {(3,): 2, (0,): -3}

    def test_exact_div_failure_is_hard(self):
        p = MultiPoly(1, {(1,): 5})
        with pytest.raises(ArithmeticError):
            p.exact_div(2)

    def test_substitute(self):
        # f(x) = x^2 at x = y + 1
        f = MultiPoly(1, {(2,): 1})
        y_plus_1 = MultiPoly(1, {(1,): 1, (0,): 1})
        g = f.substitute([y_plus_1])
        assert g.terms == {(2,): 1, (1,): 2, (0,): 1}

    def test_evaluate_over_integers(self):
        f = MultiPoly(2, {(2, 1): 3, (0, 0): -1})
        val = f.evaluate(
            (2, 5), lambda a, b: a + b, lambda a, b: a * b, lambda c, x: c * x, 0, 1
        )
        assert val == 3 * 4 * 5 - 1


class TestSerialization:
    def test_graded_lex_order(self):
        p = MultiPoly(2, {(0, 2): 1, (1, 0): 2, (2, 0): 3, (0, 0): 4})
        exps = [e for e, _ in p.sorted_terms()]
        assert exps == [(0, 0), (1, 0), (0, 2), (2, 0)]

    def test_render_parse_round_trip(self):
        p = MultiPoly(3, {(1, 0, 2): -17, (0, 0, 0): 5, (2, 2, 2): 1})
        assert MultiPoly.parse(3, p.render()) == p

    def test_zero_render(self):
        z = MultiPoly.zero(4)
        assert z.render() == "0"
        assert MultiPoly.parse(4, "0") == z

    def test_render_is_canonical(self):
        p = MultiPoly(2, {(1, 1): 2, (0, 0): 1})
        q = MultiPoly(2, {(0, 0): 1, (1, 1): 2})
        assert p.render() == q.render()
