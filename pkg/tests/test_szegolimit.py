import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fpsz.errors import DegenerateLaw
from fpsz.freemoments import FLOAT, RATIONAL, FreeFamily
from fpsz.laws import arcsine, circle_cosine, free_poisson, haar_unitary, semicircle, two_point
from fpsz.orthopoly1d import jacobi_coefficients, verblunsky_coefficients
from fpsz.szegolimit import (
    convergence_trace,
    cumulative_recursion,
    cumulative_recursion_closed_form,
    entropy_from_jacobi,
    entropy_from_verblunsky,
    entropy_number,
    level_log,
    level_log_enumerated,
    level_log_unrolled_variant,
    level_logs,
    level_product_exact,
    limit_prediction,
    richardson_extrapolation,
)

LN2 = math.log(2.0)


def mixed(backend=RATIONAL):
    return FreeFamily((semicircle(), arcsine()), backend=backend)


# ---------------------------------------------------------------------------
# entropy numbers
# ---------------------------------------------------------------------------


def test_semicircle_entropy_is_exactly_zero():
    for n in (2, 3, 5):
        assert entropy_number(semicircle(), n, truncation=30).value == 0.0


def test_haar_entropy_is_exactly_zero():
    assert entropy_number(haar_unitary(), 2, truncation=30).value == 0.0
    est = entropy_from_verblunsky(verblunsky_coefficients(haar_unitary(), 30), 3)
    assert est.value == 0.0


def test_scaled_semicircle_entropy_closed_form():
    # norms a^(2j) and sum j 2^-j = 2 give E_2 = 4 ln a
    for a in (Fraction(2), Fraction(1, 3)):
        est = entropy_number(semicircle(a), 2, truncation=60)
        assert abs(est.value - 4.0 * math.log(float(a))) < 1e-10


def test_truncation_error_within_tail_bound():
    for law in (arcsine(), semicircle(Fraction(2)), circle_cosine()):
        short = entropy_number(law, 2, truncation=20)
        long = entropy_number(law, 2, truncation=40)
        assert abs(short.value - long.value) <= short.tail_bound


def test_entropy_route_equivalence_jacobi():
    for law in (arcsine(), semicircle(Fraction(2)), free_poisson(Fraction(2))):
        for n in (2, 3):
            direct = entropy_number(law, n, truncation=48)
            routed = entropy_from_jacobi(jacobi_coefficients(law, 48), n)
            assert abs(direct.value - routed.value) < 1e-10, law.name


def test_entropy_route_equivalence_verblunsky():
    for n in (2, 4):
        direct = entropy_number(circle_cosine(), n, truncation=48)
        routed = entropy_from_verblunsky(verblunsky_coefficients(circle_cosine(), 48), n)
        assert abs(direct.value - routed.value) < 1e-10


def test_variant_prefactors_are_reported_and_differ():
    est = entropy_from_jacobi(jacobi_coefficients(arcsine(), 30), 2)
    assert est.variant_value is not None
    assert abs(est.variant_value - est.value) > 1e-3
    # single nonzero reflection coefficient: routes still agree
    cos_est = entropy_from_verblunsky(verblunsky_coefficients(circle_cosine(), 40), 2)
    assert cos_est.variant_value is not None
    assert abs(cos_est.variant_value - cos_est.value) > 1e-3


def test_degenerate_law_raises():
    with pytest.raises(DegenerateLaw):
        entropy_number(two_point(), 2, truncation=10)


def test_limit_prediction_values():
    assert limit_prediction(FreeFamily((semicircle(), semicircle()))).value == 0.0
    scaled = FreeFamily((semicircle(Fraction(2)), semicircle(Fraction(2))))
    assert abs(limit_prediction(scaled, truncation=60).value - 4 * LN2) < 1e-10
    haars = FreeFamily((haar_unitary(),) * 3)
    assert limit_prediction(haars).value == 0.0


def test_limit_scale_sensitivity():
    # replacing every x_k by a x_k shifts the limit by 2 n ln(a)/(n-1)
    a = Fraction(3)
    base = FreeFamily((semicircle(), arcsine()))
    scaled = FreeFamily((semicircle(a), arcsine(halfwidth=2 * a)))
    shift = limit_prediction(scaled, truncation=60).value \
        - limit_prediction(base, truncation=60).value
    assert abs(shift - 2 * 2 * math.log(float(a)) / (2 - 1)) < 1e-9


# ---------------------------------------------------------------------------
# level products
# ---------------------------------------------------------------------------


def test_level_product_routes_agree_exactly_n2():
    fam = mixed()
    for q in range(1, 5):
        words = level_product_exact(fam, q, "words")
        gram = level_product_exact(fam, q, "gram")
        assert words == gram


def test_level_product_routes_agree_exactly_n3():
    fam = FreeFamily((semicircle(), arcsine(), free_poisson(Fraction(2))),
                     backend=RATIONAL)
    for q in range(1, 4):
        assert level_product_exact(fam, q, "words") == \
            level_product_exact(fam, q, "gram")


def test_scaled_level_logs_closed_form():
    # every length-q word contributes 2q ln a, so ln s_q / n^q = 2 q ln a
    a = 2.0
    fam = FreeFamily((semicircle(Fraction(2)), semicircle(Fraction(2))))
    levels = level_logs(fam, 12)
    for q in range(1, 13):
        assert abs(levels.scaled[q - 1] - 2 * q * math.log(a)) < 1e-9 * q


def test_enumeration_matches_closed_form():
    fam = mixed(FLOAT)
    levels = level_logs(fam, 10)
    for q in range(1, 11):
        enum = level_log_enumerated(fam, q)
        assert abs(enum - levels.scaled[q - 1]) < 1e-10 * max(1.0, abs(enum))
    assert level_log(fam, 4, route="enumerate") == level_log_enumerated(fam, 4)
    assert level_log(fam, 4, route="closed_form") == levels.scaled[3]


def test_level_recursion_forcing_term():
    # ln s_q - (n-1) sum_{j<q} ln s_j equals the one-variable forcing term
    # d_q, with the enumeration route as ground truth
    fam = mixed(FLOAT)
    n = fam.n
    levels = [level_log_enumerated(fam, q) * n**q for q in range(1, 9)]
    from fpsz.orthopoly1d import orthogonal_norms

    per_var = [orthogonal_norms(law, 8, backend=FLOAT) for law in fam.marginals]
    c = [sum(nv.log(j) for nv in per_var) for j in range(1, 9)]
    for q in range(1, 9):
        d_q = (n - 1) * sum(n ** (q - j - 1) * c[j - 1] for j in range(1, q)) \
            + c[q - 1]
        lhs = levels[q - 1] - (n - 1) * sum(levels[: q - 1])
        assert abs(lhs - d_q) < 1e-7 * max(1.0, abs(d_q))


def test_unrolled_variant_disagrees_by_known_amount():
    # the (q-2-j) multiplicity variant undercounts by exactly
    # (n-1)^2 sum_{j<=q-2} n^(q-2-j) C_j / n^q relative to the recursion
    fam = mixed(FLOAT)
    n = fam.n
    from fpsz.orthopoly1d import orthogonal_norms

    per_var = [orthogonal_norms(law, 6, backend=FLOAT) for law in fam.marginals]
    c = [sum(nv.log(j) for nv in per_var) for j in range(1, 7)]
    levels = level_logs(fam, 6)
    for q in (3, 4, 5, 6):
        variant = level_log_unrolled_variant(fam, q)
        expected_gap = (n - 1) ** 2 * sum(
            n ** (q - 2 - j) * c[j - 1] for j in range(1, q - 1)
        ) / n**q
        assert expected_gap > 0
        assert abs((levels.scaled[q - 1] - variant) - expected_gap) < 1e-12


def test_degenerate_family_level_logs():
    fam = FreeFamily((two_point(), semicircle()))
    with pytest.raises(DegenerateLaw):
        level_logs(fam, 4)


# ---------------------------------------------------------------------------
# the cumulative recursion
# ---------------------------------------------------------------------------


def test_cumulative_recursion_doubling_example():
    # r = 1, c_1 = 1, no forcing: c_q = 2^(q-2) for q >= 2
    out = cumulative_recursion_closed_form(1, 1, [0, 0, 0])
    assert out == [1, 1, 2, 4]
    assert cumulative_recursion(1, 1, [0, 0, 0]) == out


def test_cumulative_recursion_zero_case():
    assert cumulative_recursion_closed_form(Fraction(5, 3), 0, [0, 0]) == [0, 0, 0]


fractions_st = st.fractions(min_value=-10, max_value=10, max_denominator=20)
positive_fractions_st = st.fractions(
    min_value=Fraction(1, 20), max_value=10, max_denominator=20)


@given(positive_fractions_st, fractions_st,
       st.lists(fractions_st, max_size=10))
def test_cumulative_recursion_closed_form_property(ratio, c1, forcing):
    assert cumulative_recursion(ratio, c1, forcing) == \
        cumulative_recursion_closed_form(ratio, c1, forcing)


# ---------------------------------------------------------------------------
# convergence traces
# ---------------------------------------------------------------------------


def test_trace_is_identically_zero_for_standard_semicirculars():
    trace = convergence_trace(FreeFamily((semicircle(), semicircle())),
                              q_direct_max=3, q_factored_max=10)
    for row in trace.rows:
        assert row.level_log_scaled == 0.0
        assert row.determinant_ratio == 0.0
        assert row.gap == 0.0
    assert trace.max_crosscheck_delta() == 0.0


def test_trace_matches_analytic_expression_for_scaled_family():
    fam = FreeFamily((semicircle(Fraction(2)), semicircle(Fraction(2))))
    trace = convergence_trace(fam, q_direct_max=0, q_factored_max=30,
                              truncation=50)
    factored = [r for r in trace.rows if r.route == "factored"]
    previous = -math.inf
    for row in factored:
        q = row.q
        analytic = 2 * LN2 * ((q - 1) * 2 ** (q + 1) + 2) / (q * 2**q)
        assert abs(row.determinant_ratio - analytic) <= 1e-12 * analytic
        assert row.determinant_ratio > previous  # monotone from below
        previous = row.determinant_ratio
        assert row.gap < 0
    assert abs(trace.predicted - 4 * LN2) < 1e-10
    assert abs(richardson_extrapolation(trace) - 4 * LN2) < 1e-8


def test_trace_direct_route_crosschecks_factored():
    fam = mixed(FLOAT)
    trace = convergence_trace(fam, q_direct_max=5, q_factored_max=12,
                              truncation=40)
    directs = [r for r in trace.rows if r.route == "direct"]
    assert len(directs) == 5
    for row in directs:
        assert row.crosscheck_delta is not None
        assert abs(row.crosscheck_delta) < 1e-9
    facts = [r for r in trace.rows if r.route == "factored"]
    assert [r.q for r in facts] == list(range(1, 13))


def test_trace_exact_backend_direct_route():
    fam = mixed(RATIONAL)
    trace = convergence_trace(fam, q_direct_max=4, q_factored_max=6,
                              truncation=30)
    assert trace.max_crosscheck_delta() < 1e-12


def test_trace_csv_roundtrip_and_determinism(tmp_path):
    fam = FreeFamily((semicircle(Fraction(2)), arcsine()))
    trace = convergence_trace(fam, q_direct_max=2, q_factored_max=8)
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    trace.write_csv(p1)
    trace.write_csv(p2)
    assert p1.read_bytes() == p2.read_bytes()
    header = p1.read_text().splitlines()[0]
    assert header == "q,route,ln_sq_scaled,lnD_ratio,predicted,gap,crosscheck_delta"
