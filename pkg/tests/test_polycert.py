from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import fraction_rank, random_orderable_family
from lintersect import (
    CertificateSizeError,
    IntersectionSpec,
    MultilinearPoly,
    NotLIntersectingError,
    NotOrderedError,
    SetFamily,
    apex_difference_poly,
    auxiliary_supports,
    certify,
    char_vector,
    coefficient_matrix,
    exact_rank,
    gen_sharp_mixed,
    gen_sharp_no_apex,
    intersection_poly,
    linear_form,
    make_ordered,
    matrix_to_text,
    monomial_basis,
    triangular_check,
)

L = IntersectionSpec.from_values


# ---------------------------------------------------------------------------
# polynomial arithmetic
# ---------------------------------------------------------------------------

def test_char_vector_is_reinterpretation():
    assert char_vector(0b101) == 0b101
    assert char_vector(0) == 0


def test_linear_form_examples():
    assert linear_form(0b101, 3).terms == {0b001: 1, 0b100: 1}
    assert linear_form(0, 3).terms == {}
    assert linear_form(0b010, 3).terms == {0b010: 1}


def test_mul_is_idempotent_on_variables():
    x1 = MultilinearPoly.variable(3, 1)
    assert (x1 * x1).terms == {0b001: 1}


def test_mul_identity_and_zero():
    p = MultilinearPoly(3, {0b011: 4, 0: -2})
    assert (p * MultilinearPoly.one(3)).terms == p.terms
    assert (p * MultilinearPoly.zero(3)).terms == {}
    assert (p * 1).terms == p.terms


def test_reduced_square_of_two_term_form():
    # (x1 + x3)(x1 + x3 - 1) reduces to 2*x1*x3; checked at all 8 points too
    form = linear_form(0b101, 3)
    product = form * (form - 1)
    assert product.terms == {0b101: 2}
    for point in range(8):
        raw = form.evaluate(point) * (form.evaluate(point) - 1)
        assert product.evaluate(point) == raw


def test_ambient_mismatch_rejected():
    with pytest.raises(ValueError, match="ambient"):
        MultilinearPoly.one(2) * MultilinearPoly.one(3)


def test_poly_str():
    p = MultilinearPoly(3, {0b101: 2, 0: -1})
    assert str(p) == "-1 + 2*x1*x3"
    assert str(MultilinearPoly.zero(2)) == "0"


@st.composite
def linear_factor_products(draw):
    n = draw(st.integers(1, 6))
    count = draw(st.integers(1, 3))
    factors = [(draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n)),
                draw(st.integers(0, n)))
               for _ in range(count)]
    return n, factors


@given(linear_factor_products())
def test_reduced_products_match_unreduced_evaluation(case):
    n, factors = case
    product = MultilinearPoly.one(n)
    for coeffs, const in factors:
        form = MultilinearPoly(n, {1 << i: c for i, c in enumerate(coeffs)})
        product = product * (form - const)
    assert product.degree <= n
    for point in range(1 << n):
        unreduced = 1
        for coeffs, const in factors:
            unreduced *= sum(c for i, c in enumerate(coeffs) if point >> i & 1) - const
        assert product.evaluate(point) == unreduced


# ---------------------------------------------------------------------------
# certificate building blocks
# ---------------------------------------------------------------------------

def test_intersection_poly_examples():
    assert intersection_poly(0b101, L([0, 1]), 3).terms == {0b101: 2}
    assert intersection_poly(0, L([0, 1]), 3).terms == {0: 1}
    assert intersection_poly(0b010, L([0]), 3).terms == {0b010: 1}


def test_intersection_poly_stays_inside_support():
    spec = L([0, 1, 2])
    p = intersection_poly(0b1011, spec, 5)
    assert p.variables() & ~0b1011 == 0
    assert p.degree <= len(spec)


def test_apex_difference_poly_examples():
    assert apex_difference_poly(0, 3).terms == {0b100: 1, 0: -1}
    assert apex_difference_poly(0b001, 3).terms == {0b101: 1, 0b001: -1}
    assert apex_difference_poly(0b011, 4).terms == {0b1011: 1, 0b011: -1}
    with pytest.raises(ValueError, match="apex"):
        apex_difference_poly(0b100, 3)


def test_evaluate_examples():
    assert MultilinearPoly(3, {0b101: 2}).evaluate(0b101) == 2
    assert MultilinearPoly(3, {0: 7, 0b1: 3}).evaluate(0) == 7
    assert MultilinearPoly(3, {0b100: 1, 0: -1}).evaluate(0b011) == -1


def test_triangular_check_examples():
    one = MultilinearPoly.one(1)
    x1 = MultilinearPoly.variable(1, 1)
    check = triangular_check([one, x1], [0, 1])
    assert check and check.matrix == ((1, 1), (0, 1))

    check = triangular_check([x1, x1], [1, 1])
    assert not check and check.matrix == ((1, 1), (1, 1))

    with pytest.raises(ValueError, match="polynomials vs"):
        triangular_check([one], [0, 1])


def test_triangular_check_on_extremal_family():
    family, spec = gen_sharp_no_apex(3, 1)
    polys = [intersection_poly(f, spec, 3) for f in family.sets]
    check = triangular_check(polys, list(family.sets))
    assert check.ok
    assert check.matrix == ((1, 1, 1), (0, 1, 0), (0, 0, 1))


def test_monomial_basis_order():
    assert monomial_basis(3, 2) == (0, 1, 2, 4, 3, 5, 6)
    assert monomial_basis(2, 5) == (0, 1, 2, 3)


def test_auxiliary_supports_order():
    assert auxiliary_supports(4, 3) == (0, 1, 2, 4, 3, 5, 6)
    assert auxiliary_supports(4, 0) == ()


def test_coefficient_matrix_examples():
    one = MultilinearPoly.one(2)
    x1 = MultilinearPoly.variable(2, 1)
    x2 = MultilinearPoly.variable(2, 2)
    assert coefficient_matrix([one, x1, x2], 2, 1) == [
        [1, 0, 0], [0, 1, 0], [0, 0, 1]]

    g = apex_difference_poly(0, 3)
    assert coefficient_matrix([g], 3, 1) == [[-1, 0, 0, 1]]

    p = MultilinearPoly(3, {0b101: 2})
    row = coefficient_matrix([p], 3, 2)[0]
    basis = monomial_basis(3, 2)
    assert row[basis.index(0b101)] == 2 and sum(map(abs, row)) == 2


def test_coefficient_matrix_errors():
    deep = MultilinearPoly(3, {0b111: 1})
    with pytest.raises(ValueError, match="polynomial 1 has degree 3"):
        coefficient_matrix([MultilinearPoly.one(3), deep], 3, 2)
    with pytest.raises(ValueError, match="ambient"):
        coefficient_matrix([MultilinearPoly.one(2)], 3, 2)


# ---------------------------------------------------------------------------
# exact rank
# ---------------------------------------------------------------------------

def test_exact_rank_examples():
    assert exact_rank([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 3
    assert exact_rank([[0, 0, 0, 0], [0, 0, 0, 0]]) == 0
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank([]) == 0


def test_exact_rank_rejects_ragged_input():
    with pytest.raises(ValueError, match="unequal"):
        exact_rank([[1, 2], [3]])


@given(st.integers(1, 9).flatmap(
    lambda rows: st.integers(1, 9).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-9, 9), min_size=cols, max_size=cols),
            min_size=rows, max_size=rows))))
def test_exact_rank_matches_rational_elimination(matrix):
    assert exact_rank(matrix) == fraction_rank(matrix)


def test_matrix_to_text():
    assert matrix_to_text([[1, -2], [0, 3]]) == "1 -2\n0 3\n"


# ---------------------------------------------------------------------------
# the full certificate
# ---------------------------------------------------------------------------

def test_certify_no_apex_extremal():
    family, spec = gen_sharp_no_apex(3, 1)
    report = certify(family, spec)
    assert (report.m, report.r, report.N, report.dim_v) == (3, 0, 1, 4)
    assert report.q_triangular and report.g_triangular and report.q_apex_free
    assert report.rank == 4 and report.verdict
    assert report.g_matrix == ((-1,),)


def test_certify_mixed_extremal():
    family, spec = gen_sharp_mixed(3, 1)
    report = certify(family, spec)
    assert (report.m, report.r, report.N) == (3, 1, 1)
    assert report.rank == 4 and report.verdict


def test_certify_requires_ordered_indexing():
    family = SetFamily.from_sets(3, ([1, 3], [2]))
    with pytest.raises(NotOrderedError) as exc:
        certify(family, L([0]))
    assert exc.value.failure.condition == "cardinality"


def test_certify_requires_l_intersecting():
    family = SetFamily.from_sets(3, ([1, 3], [1, 2, 3]))
    with pytest.raises(NotLIntersectingError) as exc:
        certify(family, L([0]))
    assert exc.value.violation == (1, 2, 2)


def test_certify_respects_cell_budget():
    family, spec = gen_sharp_no_apex(5, 2)
    with pytest.raises(CertificateSizeError, match="cells"):
        certify(family, spec, max_cells=10)


def test_certify_empty_and_singleton_families():
    report = certify(SetFamily(3, ()), L([0]))
    assert report.m == 0 and report.rank == report.N == 1 and report.verdict
    report = certify(SetFamily.from_sets(2, ([2],)), L([0]))
    assert report.m == 1 and report.verdict


def test_certify_report_json_shape():
    family, spec = gen_sharp_no_apex(3, 1)
    report = certify(family, spec)
    slim = report.to_json_dict()
    assert list(slim) == ["m", "r", "N", "dim_v", "q_triangular",
                          "g_triangular", "q_apex_free", "rank", "verdict"]
    full = report.to_json_dict(full=True)
    assert full["q_matrix"] == [[1, 1, 1], [0, 1, 0], [0, 0, 1]]
    assert full["g_matrix"] == [[-1]]


def test_certificates_on_random_orderable_families():
    rng = random.Random(20260810)
    for _ in range(60):
        n = rng.randint(2, 6)
        size = rng.randint(1, 2)
        spec = IntersectionSpec(tuple(sorted(rng.sample(range(n), size))))
        family = random_orderable_family(rng, n, spec)
        ordered, witness = make_ordered(family)
        report = certify(ordered, spec)
        assert report.verdict and report.rank == report.m + report.N
        assert report.m <= report.dim_v - report.N
        # diagonal values are the fully determined products of (|F_i| - l)
        for i, f in enumerate(ordered.sets):
            card = f.bit_count()
            expected = 1
            for l in spec.values:
                if l < card:
                    expected *= card - l
            assert report.q_matrix[i][i] == expected
        for j in range(report.N):
            assert report.g_matrix[j][j] == -1
