import math
from fractions import Fraction

import pytest

from fpsz import _linalg
from fpsz.errors import InvalidMoments, OrderUnsupported
from fpsz.laws import (
    arcsine,
    arcsine_density,
    catalan,
    circle_cosine,
    class_g_check,
    DensitySpec,
    free_poisson,
    from_moments,
    haar_unitary,
    law_from_config,
    moment_matrix,
    semicircle,
    semicircle_density,
    two_point,
    uniform_density,
)
from fpsz.quadrature import tanh_sinh


def quadrature_moment(k):
    """Oracle: integrate t^k against the standard semicircle density."""
    res = tanh_sinh(
        lambda t: t**k * math.sqrt(4.0 - t * t) / (2.0 * math.pi), -2.0, 2.0
    )
    return res.value


def test_semicircle_moments_are_catalan():
    law = semicircle()
    assert [law.moment(2 * k) for k in range(6)] == [1, 1, 2, 5, 14, 42]
    assert all(law.moment(2 * k + 1) == 0 for k in range(6))
    assert law.moment(4) == 2  # Catalan C_2


@pytest.mark.parametrize("k", range(7))
def test_semicircle_moments_match_quadrature(k):
    assert abs(float(semicircle().moment(k)) - quadrature_moment(k)) < 1e-8


def test_semicircle_scaling_property():
    a = Fraction(3, 2)
    law = semicircle(a)
    base = semicircle()
    for k in range(10):
        assert law.moment(k) == a**k * base.moment(k)


def test_haar_moments():
    law = haar_unitary()
    assert law.moment(0) == 1
    assert law.moment(3) == 0
    assert law.moment(-5) == 0


def test_two_point_moments():
    law = two_point()
    assert law.moment(5) == 0
    assert law.moment(6) == 1


def test_free_poisson_moments():
    # lambda = 1 gives the Catalan numbers
    law = free_poisson(1)
    assert [law.moment(k) for k in range(1, 7)] == [catalan(k) for k in range(1, 7)]
    # lambda = 2: m_1 = 2, m_2 = 6, m_3 = 22 (Narayana row sums)
    law2 = free_poisson(2)
    assert [law2.moment(k) for k in range(1, 4)] == [2, 6, 22]


def test_arcsine_moments():
    assert [arcsine().moment(2 * k) for k in range(4)] == [1, 2, 6, 20]
    assert [arcsine(halfwidth=1).moment(2 * k) for k in range(4)] == [
        1, Fraction(1, 2), Fraction(3, 8), Fraction(5, 16)]


@pytest.mark.parametrize("law", [
    semicircle(), semicircle(Fraction(1, 3)), arcsine(), arcsine(halfwidth=1),
    free_poisson(1), free_poisson(Fraction(5, 2)), two_point(),
    haar_unitary(), circle_cosine(),
])
def test_moment_matrices_are_psd_up_to_order_16(law):
    size = 9 if law.kind == "selfadjoint" else 17  # uses moments up to order 16
    assert _linalg.is_psd(moment_matrix(law, size), exact=True)


def test_float_parameter_demotes_to_float_backend():
    law = semicircle(1.5)
    assert not law.rational
    assert isinstance(law.moment(2), float)


def test_explicit_table_supports_and_raises():
    law = from_moments("selfadjoint", [1, 0, 1, 0, 3])
    assert law.moment(4) == 3
    with pytest.raises(OrderUnsupported):
        law.moment(5)


def test_explicit_table_validation():
    with pytest.raises(InvalidMoments):
        from_moments("selfadjoint", [2, 0, 1])  # not unital
    with pytest.raises(InvalidMoments):
        from_moments("selfadjoint", [1, 0, -1])  # m_2 < m_1^2: not PSD


def test_unitary_table_conjugate_symmetry():
    law = from_moments("unitary", [1, "1/2", 0])
    assert law.moment(-1) == Fraction(1, 2)


def test_negative_order_rejected_for_selfadjoint():
    with pytest.raises(ValueError):
        semicircle().moment(-2)


def test_law_from_config():
    law = law_from_config({"kind": "selfadjoint", "law": "semicircle",
                           "params": {"a": "2"}})
    assert law.moment(2) == 4
    with pytest.raises(ValueError):
        law_from_config({"law": "nope"})
    with pytest.raises(ValueError):
        law_from_config({"kind": "unitary", "law": "semicircle"})


def test_class_g_accepts_arcsine_and_uniform():
    rep = class_g_check(arcsine_density())
    assert rep.in_class
    # w(cos t)|sin t| = 1/pi, so the weight integral is 2 and the log
    # integral is 2 pi log(pi)
    assert abs(rep.weight_integral - 2.0) < 1e-8
    assert abs(rep.log_integral - 2.0 * math.pi * math.log(math.pi)) < 1e-6

    assert class_g_check(uniform_density()).in_class
    assert class_g_check(semicircle_density()).in_class


def test_class_g_rejects_zero_weight():
    rep = class_g_check(DensitySpec("zero", lambda t: 0.0))
    assert not rep.in_class
    assert "not positive" in rep.reason


def test_density_exact_moments():
    uni = uniform_density()
    assert uni.moment_fn(4) == Fraction(1, 5)
    semi = semicircle_density()
    assert semi.moment_fn(4) == Fraction(2, 16)
