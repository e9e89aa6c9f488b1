"""Marginal *-distributions represented by their moment functionals.

A law is moment-first: every downstream computation consumes tau(x^k) (real
line) or tau(u^k) (circle), never a density.  Densities appear only in the
Szego integrability check and the one-variable norm asymptote.

Built-in families keep rational parameters exactly rational so that the
exact backend stays exact; a float parameter silently demotes the law to
float-only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import _linalg
from .errors import InvalidMoments, NotClassG, OrderUnsupported
from .quadrature import tanh_sinh
from .words import SELFADJOINT, UNITARY


def _numeric(x, what: str):
    """Coerce a parameter: int/str/Fraction stay exact, float stays float."""
    if isinstance(x, bool):
        raise ValueError(f"{what} must be a number, got {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return x
    raise ValueError(f"{what} must be int, Fraction, fraction string or float, got {type(x)}")


def catalan(k: int) -> int:
    return math.comb(2 * k, k) // (k + 1)


def narayana(k: int, j: int) -> Fraction:
    return Fraction(math.comb(k, j) * math.comb(k, j - 1), k)


@dataclass(frozen=True)
class MarginalLaw:
    """One variable's moment functional.

    kind is "selfadjoint" (real moments m_k, k >= 0) or "unitary" (circle
    moments c_k for any integer k, with c_{-k} = conj(c_k)).  `rational`
    marks exact-backend capability; `max_order` bounds explicit tables.
    """

    kind: str
    name: str
    rational: bool
    moment_fn: Callable[[int], object]
    max_order: int | None = None

    def moment(self, k: int):
        if self.kind == SELFADJOINT and k < 0:
            raise ValueError(f"negative moment order {k} for self-adjoint law {self.name!r}")
        if self.max_order is not None and abs(k) > self.max_order:
            raise OrderUnsupported(self.name, k, self.max_order)
        return self.moment_fn(k)

    def __repr__(self):
        return f"MarginalLaw({self.name!r}, kind={self.kind!r}, rational={self.rational})"


def semicircle(a=1) -> MarginalLaw:
    """Semicircular law scaled so the support is [-2a, 2a].

    a = 1 is the standard semicircle: even moments the Catalan numbers.
    """
    a = _numeric(a, "semicircle scale")
    if (isinstance(a, Fraction) and a <= 0) or (isinstance(a, float) and a <= 0):
        raise ValueError("semicircle scale must be positive")
    rational = isinstance(a, Fraction)
    a2 = a * a

    def mom(k: int):
        if k % 2:
            return Fraction(0) if rational else 0.0
        return a2 ** (k // 2) * catalan(k // 2)

    return MarginalLaw(SELFADJOINT, f"semicircle(a={a})", rational, mom)


def arcsine(halfwidth=2) -> MarginalLaw:
    """Arcsine law on [-c, c]: even moments (c/2)^(2k) binom(2k, k).

    The default c = 2 gives central binomial moments; c = 1 is the classical
    Chebyshev weight 1/(pi sqrt(1-t^2)).
    """
    c = _numeric(halfwidth, "arcsine halfwidth")
    if (isinstance(c, Fraction) and c <= 0) or (isinstance(c, float) and c <= 0):
        raise ValueError("arcsine halfwidth must be positive")
    rational = isinstance(c, Fraction)
    ratio = (c / 2) ** 2

    def mom(k: int):
        if k % 2:
            return Fraction(0) if rational else 0.0
        return ratio ** (k // 2) * math.comb(k, k // 2)

    return MarginalLaw(SELFADJOINT, f"arcsine(halfwidth={c})", rational, mom)


def free_poisson(lam=1) -> MarginalLaw:
    """Free Poisson (Marchenko-Pastur) law with rate lambda > 0."""
    lam = _numeric(lam, "free Poisson rate")
    if (isinstance(lam, Fraction) and lam <= 0) or (isinstance(lam, float) and lam <= 0):
        raise ValueError("free Poisson rate must be positive")
    rational = isinstance(lam, Fraction)

    def mom(k: int):
        if k == 0:
            return Fraction(1) if rational else 1.0
        val = sum(narayana(k, j) * lam**j for j in range(1, k + 1))
        return val if rational else float(val)

    return MarginalLaw(SELFADJOINT, f"free_poisson(lambda={lam})", rational, mom)


def two_point(a=-1, b=1, p="1/2") -> MarginalLaw:
    """Two-atom law p*delta_a + (1-p)*delta_b; default the symmetric +-1 law."""
    a = _numeric(a, "first atom")
    b = _numeric(b, "second atom")
    p = _numeric(p, "first atom weight")
    rational = all(isinstance(v, Fraction) for v in (a, b, p))
    if not 0 <= p <= 1:
        raise ValueError("atom weight must lie in [0, 1]")

    def mom(k: int):
        return p * a**k + (1 - p) * b**k

    return MarginalLaw(SELFADJOINT, f"two_point({a},{b},p={p})", rational, mom)


def haar_unitary() -> MarginalLaw:
    """Haar unitary: every nonzero integer moment vanishes."""

    def mom(k: int):
        return Fraction(1) if k == 0 else Fraction(0)

    return MarginalLaw(UNITARY, "haar_unitary", True, mom)


def circle_cosine() -> MarginalLaw:
    """Unitary law with density (1 + cos t)/(2 pi): c_0 = 1, c_{+-1} = 1/2."""

    def mom(k: int):
        if k == 0:
            return Fraction(1)
        if abs(k) == 1:
            return Fraction(1, 2)
        return Fraction(0)

    return MarginalLaw(UNITARY, "circle_cosine", True, mom)


def point_mass_unitary() -> MarginalLaw:
    """Point mass at 1 on the circle: c_k = 1 for every k (degenerate)."""

    def mom(k: int):
        return Fraction(1)

    return MarginalLaw(UNITARY, "point_mass_unitary", True, mom)


def from_moments(kind: str, moments, name: str = "moments") -> MarginalLaw:
    """Law from an explicit table m_0..m_K (or c_0..c_K for unitary laws).

    Validated eagerly: m_0 = 1 and the moment matrix (Hankel for the line,
    Toeplitz for the circle) must be PSD up to the table length, so bad
    input fails at load time, not in the middle of a determinant.
    """
    if kind not in (SELFADJOINT, UNITARY):
        raise ValueError(f"unknown law kind {kind!r}")
    vals = [_numeric(v, f"moment[{i}]") for i, v in enumerate(moments)]
    if not vals:
        raise InvalidMoments("empty moment table")
    rational = all(isinstance(v, Fraction) for v in vals)
    if vals[0] != 1:
        raise InvalidMoments(f"moment(0) must be 1 (state is unital), got {vals[0]}")
    max_order = len(vals) - 1

    def mom(k: int):
        if abs(k) > max_order:
            raise OrderUnsupported(name, k, max_order)
        if k >= 0:
            return vals[k]
        v = vals[-k]
        return v.conjugate() if isinstance(v, complex) else v

    law = MarginalLaw(kind, name, rational, mom, max_order=max_order)
    _validate_psd(law)
    return law


def _validate_psd(law: MarginalLaw):
    size = (law.max_order // 2 if law.kind == SELFADJOINT else law.max_order) + 1
    mat = moment_matrix(law, size)
    if not _linalg.is_psd(mat, exact=law.rational):
        raise InvalidMoments(
            f"moment table of {law.name!r} is not positive semidefinite"
        )


def moment_matrix(law: MarginalLaw, size: int):
    """The size x size moment Gram matrix of 1, x, ..., x^(size-1).

    Hankel (m_{i+j}) for a self-adjoint law, Toeplitz (c_{j-i}) for a
    unitary one.
    """
    if law.kind == SELFADJOINT:
        return [[law.moment(i + j) for j in range(size)] for i in range(size)]
    return [[law.moment(j - i) for j in range(size)] for i in range(size)]


_BUILTIN_FACTORIES = {
    "semicircle": (semicircle, SELFADJOINT),
    "arcsine": (arcsine, SELFADJOINT),
    "free_poisson": (free_poisson, SELFADJOINT),
    "two_point": (two_point, SELFADJOINT),
    "haar": (haar_unitary, UNITARY),
    "circle_cosine": (circle_cosine, UNITARY),
}


def law_from_config(cfg: dict) -> MarginalLaw:
    """Build a law from its JSON configuration.

    Schema: {"kind": "selfadjoint"|"unitary", "law": <family>,
             "params": {...}, "moments": [...], "name": ...}.
    """
    if not isinstance(cfg, dict):
        raise ValueError(f"law config must be an object, got {type(cfg)}")
    family = cfg.get("law")
    kind = cfg.get("kind")
    if family == "moments":
        if kind is None:
            raise ValueError("explicit moment tables need a 'kind'")
        if "moments" not in cfg:
            raise ValueError("law 'moments' needs a 'moments' array")
        return from_moments(kind, cfg["moments"], name=cfg.get("name", "moments"))
    if family not in _BUILTIN_FACTORIES:
        raise ValueError(f"unknown law family {family!r}")
    factory, expected_kind = _BUILTIN_FACTORIES[family]
    if kind is not None and kind != expected_kind:
        raise ValueError(f"law {family!r} has kind {expected_kind!r}, config says {kind!r}")
    params = cfg.get("params", {})
    if not isinstance(params, dict):
        raise ValueError("'params' must be an object")
    return factory(**params)


# ---------------------------------------------------------------------------
# densities and the Szego integrability class
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensitySpec:
    """A weight w(t) >= 0 on [-1, 1].

    `moment_fn`, when present, gives exact moments (so high-order norms stay
    exact); otherwise moments come from quadrature and are float-only.
    `angle_weight`, when present, evaluates w(cos t)|sin t| directly: near
    t = 0 or pi the product is often finite while the two factors are not
    representable (1/sqrt(1-cos^2 t) overflows once cos t rounds to 1), so
    the angle form is what the integrability check and the Szego integral
    consume whenever it is available.
    """

    name: str
    weight: Callable[[float], float]
    moment_fn: Callable[[int], object] | None = None
    angle_weight: Callable[[float], float] | None = None
    rel_tol: float = 1e-8
    max_level: int = 12

    def weight_times_sine(self, theta: float) -> float:
        if self.angle_weight is not None:
            return self.angle_weight(theta)
        return self.weight(math.cos(theta)) * abs(math.sin(theta))

    def to_law(self, max_order: int | None = None) -> MarginalLaw:
        if self.moment_fn is not None:
            return MarginalLaw(SELFADJOINT, self.name, True, self.moment_fn)

        def mom(k: int):
            res = tanh_sinh(lambda t: t**k * self.weight(t), -1.0, 1.0,
                            rel_tol=self.rel_tol, max_level=self.max_level)
            return res.value

        return MarginalLaw(SELFADJOINT, self.name, False, mom, max_order=max_order)


def arcsine_density() -> DensitySpec:
    return DensitySpec(
        "arcsine_density",
        lambda t: 1.0 / (math.pi * math.sqrt(1.0 - t * t)),
        moment_fn=arcsine(halfwidth=1).moment_fn,
        angle_weight=lambda theta: 1.0 / math.pi,
    )


def uniform_density() -> DensitySpec:
    def mom(k: int):
        return Fraction(0) if k % 2 else Fraction(1, k + 1)

    return DensitySpec("uniform_density", lambda t: 0.5, moment_fn=mom,
                       angle_weight=lambda theta: 0.5 * abs(math.sin(theta)))


def semicircle_density() -> DensitySpec:
    def mom(k: int):
        return Fraction(0) if k % 2 else Fraction(catalan(k // 2), 4 ** (k // 2))

    sin2 = lambda theta: (2.0 / math.pi) * math.sin(theta) ** 2
    return DensitySpec(
        "semicircle_density",
        lambda t: (2.0 / math.pi) * math.sqrt(max(1.0 - t * t, 0.0)),
        moment_fn=mom,
        angle_weight=sin2,
    )


_DENSITY_FACTORIES = {
    "arcsine": arcsine_density,
    "uniform": uniform_density,
    "semicircle": semicircle_density,
}


def density_from_config(cfg: dict) -> DensitySpec:
    name = cfg.get("density")
    if name not in _DENSITY_FACTORIES:
        raise ValueError(f"unknown density {name!r}")
    return _DENSITY_FACTORIES[name]()


@dataclass(frozen=True)
class ClassGReport:
    in_class: bool
    weight_integral: float
    log_integral: float | None
    reason: str = ""


def class_g_check(density: DensitySpec) -> ClassGReport:
    """Test Szego integrability of a weight on [-1, 1].

    Checks that int w(cos t)|sin t| dt is positive and finite and that
    int |log(w(cos t)|sin t|)| dt is finite.  Both integrals run over
    (0, pi) in the angle variable (the integrands are even) with node
    doubling; failure to stabilize raises QuadratureFailure, a divergent
    log integral reports not-in-class.
    """
    g = density.weight_times_sine

    first = tanh_sinh(g, 0.0, math.pi, rel_tol=density.rel_tol,
                      max_level=density.max_level)
    if first.diverged or not math.isfinite(first.value):
        return ClassGReport(False, math.nan, None, "weight integral diverges")
    weight_integral = 2.0 * first.value
    if weight_integral <= 0.0:
        return ClassGReport(False, weight_integral, None,
                            "weight integral is not positive")

    def absolute_log(theta: float) -> float:
        v = g(theta)
        if v <= 0.0:
            return math.inf
        return abs(math.log(v))

    second = tanh_sinh(absolute_log, 0.0, math.pi, rel_tol=density.rel_tol,
                       max_level=density.max_level)
    if second.diverged or not math.isfinite(second.value):
        return ClassGReport(False, weight_integral, None, "log integral diverges")
    return ClassGReport(True, weight_integral, 2.0 * second.value)


def require_class_g(density: DensitySpec) -> ClassGReport:
    report = class_g_check(density)
    if not report.in_class:
        raise NotClassG(f"{density.name}: {report.reason}")
    return report
