from __future__ import annotations

from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdes import (
    ONE,
    ZERO,
    FuzzyMatrix,
    Grade,
    GradeError,
    ShapeError,
    fuzzy_tensor,
    godel_residuum,
    grade,
    join,
    matrix_leq,
    maxmin_product,
)
from fdes.algebra import meet

TENTHS = [Grade(k * 1000) for k in range(11)]
grades = st.sampled_from(TENTHS)


def matrices(rows, cols):
    return st.lists(
        st.lists(grades, min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(FuzzyMatrix)


dims = st.integers(1, 3)


def M(*rows):
    return FuzzyMatrix([list(r) for r in rows])


class TestGrade:
    def test_parse_decimal_strings(self):
        assert grade("0.9") == Grade(9000)
        assert grade("1") is ONE or grade("1") == ONE
        assert grade("0") == ZERO
        assert grade("0.0001") == Grade(1)
        assert grade(".5") == Grade(5000)
        assert grade(Decimal("0.25")) == Grade(2500)

    @pytest.mark.parametrize("bad", ["1.2", "0.33333", "-0.1", "abc", "", "1e-1", "2"])
    def test_parse_rejects(self, bad):
        with pytest.raises(GradeError):
            grade(bad)

    def test_floats_refused(self):
        with pytest.raises(GradeError):
            grade(0.5)

    def test_integers_only_zero_or_one(self):
        assert grade(1) == ONE
        with pytest.raises(GradeError):
            grade(2)

    def test_numerator_range(self):
        with pytest.raises(GradeError):
            Grade(10001)
        with pytest.raises(GradeError):
            Grade(-1)

    def test_str_round_trip(self):
        for text in ["0", "1", "0.1", "0.25", "0.0001", "0.9999"]:
            assert str(grade(text)) == text

    def test_complement_is_exact(self):
        for g in TENTHS:
            assert g + g.complement() == ONE
        assert grade("0.7").complement() == grade("0.3")


class TestProduct:
    def test_vector_times_matrix(self):
        x0 = M(["0.9", "0.1"])
        s = M(["0.9", "0.8"], ["0", "0.1"])
        assert maxmin_product(x0, s) == M(["0.9", "0.8"])

    def test_identity_and_zero(self):
        v = M(["0.3", "0.7", "1"])
        assert v @ FuzzyMatrix.identity(3) == v
        assert v @ FuzzyMatrix.zeros(3, 3) == FuzzyMatrix.zeros(1, 3)

    def test_shape_error_names_both_shapes(self):
        with pytest.raises(ShapeError, match=r"\(1, 2\).*\(3, 3\)"):
            maxmin_product(M([0, 1]), FuzzyMatrix.identity(3))


class TestTensor:
    def test_initial_vectors(self):
        assert fuzzy_tensor(M([1, 0]), M([1, 0, 0])) == M([1, 0, 0, 0, 0, 0])

    def test_min_by_element(self):
        assert fuzzy_tensor(M(["0.4", "0.8"]), M(["0.5"])) == M(["0.4", "0.5"])

    def test_block_layout(self):
        a = M(["0.5", "1"], [0, "0.3"])
        b = M([1, "0.2"], ["0.6", 0])
        t = fuzzy_tensor(a, b)
        assert t.shape == (4, 4)
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        assert t[i * 2 + k, j * 2 + l] == min(a[i, j], b[k, l])


class TestOrderAndJoin:
    def test_leq(self):
        a = M(["0.2", "0.9"])
        assert matrix_leq(a, a)
        assert matrix_leq(FuzzyMatrix.zeros(1, 2), a)
        assert not matrix_leq(M([1, "0.5"]), M(["0.5", "0.5"]))

    def test_leq_shape_mismatch(self):
        with pytest.raises(ShapeError):
            matrix_leq(M([1]), M([1, 1]))

    def test_join(self):
        a = M(["0.2", "0.9"])
        assert join(a, a) == a
        assert join(a, FuzzyMatrix.zeros(1, 2)) == a
        assert join(a, M(["0.4", "0.1"])) == M(["0.4", "0.9"])
        assert (a | M(["0.4", "0.1"])) == M(["0.4", "0.9"])


class TestResiduum:
    def test_cases(self):
        assert godel_residuum(grade("0.3"), grade("0.7")) == ONE
        assert godel_residuum(grade("0.8"), grade("0.3")) == grade("0.3")
        for g in TENTHS:
            assert godel_residuum(g, g) == ONE

    def test_adjunction(self):
        for a in TENTHS:
            for b in TENTHS:
                r = godel_residuum(a, b)
                for x in TENTHS:
                    assert (min(a, x) <= b) == (x <= r)


@settings(max_examples=200, deadline=None)
@given(st.data(), dims, dims, dims, dims, dims, dims)
def test_interchange_law(data, m1, n1, p1, m2, n2, p2):
    a = data.draw(matrices(m1, n1))
    c = data.draw(matrices(n1, p1))
    b = data.draw(matrices(m2, n2))
    d = data.draw(matrices(n2, p2))
    assert fuzzy_tensor(a, b) @ fuzzy_tensor(c, d) == fuzzy_tensor(a @ c, b @ d)


@settings(max_examples=200, deadline=None)
@given(st.data(), dims, dims, dims, dims)
def test_product_associative(data, m, n, p, q):
    a, b, c = data.draw(matrices(m, n)), data.draw(matrices(n, p)), data.draw(matrices(p, q))
    assert (a @ b) @ c == a @ (b @ c)


@settings(max_examples=200, deadline=None)
@given(st.data(), dims, dims, dims)
def test_product_distributes_over_join(data, m, n, p):
    a, b = data.draw(matrices(m, n)), data.draw(matrices(m, n))
    c, d = data.draw(matrices(n, p)), data.draw(matrices(n, p))
    assert (a | b) @ c == (a @ c) | (b @ c)
    assert a @ (c | d) == (a @ c) | (a @ d)


@settings(max_examples=200, deadline=None)
@given(st.data(), dims, dims, dims)
def test_monotone(data, m, n, p):
    a, a2 = data.draw(matrices(m, n)), data.draw(matrices(m, n))
    b, b2 = data.draw(matrices(n, p)), data.draw(matrices(n, p))
    lo_a, hi_a = meet(a, a2), join(a, a2)
    lo_b, hi_b = meet(b, b2), join(b, b2)
    assert matrix_leq(lo_a @ lo_b, hi_a @ hi_b)
    assert matrix_leq(fuzzy_tensor(lo_a, lo_b), fuzzy_tensor(hi_a, hi_b))


@settings(max_examples=200, deadline=None)
@given(st.data(), dims, dims, dims)
def test_no_new_grades(data, m, n, p):
    a, b = data.draw(matrices(m, n)), data.draw(matrices(n, p))
    inputs = a.values() | b.values()
    assert (a @ b).values() <= inputs
    assert fuzzy_tensor(a, b).values() <= inputs
    for x in inputs:
        for y in inputs:
            assert godel_residuum(x, y) in inputs | {ONE}


def test_matrix_is_immutable_and_hashable():
    a = M([1, "0.5"])
    assert hash(a) == hash(M([1, "0.5"]))
    with pytest.raises(AttributeError):
        a._rows = ()  # type: ignore[misc]
    with pytest.raises(ShapeError):
        FuzzyMatrix([[1, 0], [1]])
