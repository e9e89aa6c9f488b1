"""One-variable orthogonal polynomial machinery.

Monic polynomials throughout: P_q = x^q - (projection of x^q on lower
degrees), so squared norms are Gram pivots.  Recurrence coefficients are
extracted from inner-product ratios (three-term recurrence on the line,
coupled reflection recurrence on the circle), with determinants kept as an
independent cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .errors import DegenerateAt
from .laws import DensitySpec, MarginalLaw, moment_matrix, require_class_g
from .quadrature import tanh_sinh
from .words import SELFADJOINT, UNITARY

RATIONAL = "rational"
FLOAT = "float"


def _resolve_backend(law: MarginalLaw, backend: str | None) -> str:
    if backend is None:
        return RATIONAL if law.rational else FLOAT
    if backend == RATIONAL and not law.rational:
        raise ValueError(f"law {law.name!r} cannot run on the rational backend")
    return backend


def _matrix(law: MarginalLaw, size: int, backend: str):
    mat = moment_matrix(law, size)
    if backend == FLOAT:
        mat = [[complex(v) if isinstance(v, complex) else float(v) for v in row]
               for row in mat]
    return mat


def hankel_determinant_1d(law: MarginalLaw, q: int, backend: str | None = None):
    """Determinant of the q x q moment matrix (m_{i+j}); q = 0 gives 1.

    Computed by pivoted elimination, independently of the Gram-Schmidt
    pivot product, so the two can cross-check each other.
    """
    if law.kind != SELFADJOINT:
        raise ValueError("1d Hankel determinants need a self-adjoint law")
    if q < 0:
        raise ValueError("q must be >= 0")
    backend = _resolve_backend(law, backend)
    if q == 0:
        return Fraction(1) if backend == RATIONAL else 1.0
    return _linalg.determinant(_matrix(law, q, backend))


@dataclass(frozen=True)
class NormSequence:
    """Squared Gram-Schmidt norms |P_q|^2 for q = 1..count.

    Truncated at the first nonpositive pivot; `degenerate_at` then holds
    that q (an algebraic relation: the law has finite support there).
    """

    values: tuple
    backend: str
    kind: str
    degenerate_at: int | None = None

    @property
    def count(self) -> int:
        return len(self.values)

    def value(self, q: int):
        if q == 0:
            return Fraction(1) if self.backend == RATIONAL else 1.0
        if q > len(self.values):
            raise IndexError(f"norm of order {q} not computed (have {len(self.values)})")
        return self.values[q - 1]

    def log(self, q: int) -> float:
        return _linalg.log_fraction(self.value(q))


def orthogonal_norms(law: MarginalLaw, q_max: int, backend: str | None = None) -> NormSequence:
    """|P_q|^2 for q = 1..q_max via moment-matrix Gram-Schmidt pivots.

    Works for both kinds: Hankel pivots on the line, Toeplitz pivots on the
    circle.  Truncates at the first degenerate pivot instead of raising.
    """
    backend = _resolve_backend(law, backend)
    mat = _matrix(law, q_max + 1, backend)
    pivots, bad = _linalg.ldl_pivots(mat, exact=(backend == RATIONAL))
    # pivots[0] = tau(I) = 1 is the q = 0 norm; drop it
    values = tuple(pivots[1:])
    degenerate_at = None if bad is None else bad
    return NormSequence(values, backend, law.kind, degenerate_at)


@dataclass(frozen=True)
class JacobiCoefficients:
    """Three-term recurrence data: x P_q = P_{q+1} + b_{q+1} P_q + a_q^2 P_{q-1}.

    a_sq[q-1] is a_q^2 (exact under the rational backend; a_q itself may be
    irrational, so only its square is stored exactly).
    """

    a_sq: tuple
    b: tuple
    backend: str

    @property
    def count(self) -> int:
        return len(self.a_sq)

    @property
    def a(self) -> tuple:
        return tuple(math.sqrt(v) for v in self.a_sq)

    def norm_sq(self, q: int):
        """|P_q|^2 = prod_{j<=q} a_j^2."""
        out = Fraction(1) if self.backend == RATIONAL else 1.0
        for j in range(q):
            out = out * self.a_sq[j]
        return out


def _poly_inner(p, q, moments):
    """<p, q> = sum_i sum_j p_i q_j m_{i+j} for real coefficient lists."""
    total = 0
    for i, pi in enumerate(p):
        if pi == 0:
            continue
        for j, qj in enumerate(q):
            if qj == 0:
                continue
            total = total + pi * qj * moments[i + j]
    return total


def jacobi_coefficients(law: MarginalLaw, count: int, backend: str | None = None) -> JacobiCoefficients:
    """Recurrence coefficients a_1..a_count (squared) and b_1..b_count.

    Stieltjes procedure on the moment functional: monic polynomials are
    carried as coefficient vectors, a_q^2 as successive norm ratios and
    b_{q+1} as Rayleigh quotients <x P_q, P_q>/<P_q, P_q>.  Raises
    DegenerateAt(q) if the law degenerates before `count`.
    """
    if law.kind != SELFADJOINT:
        raise ValueError("Jacobi coefficients need a self-adjoint law")
    if count < 1:
        raise ValueError("count must be >= 1")
    backend = _resolve_backend(law, backend)
    moments = [law.moment(k) for k in range(2 * count + 1)]
    if backend == FLOAT:
        moments = [float(v) for v in moments]

    a_sq, b = [], []
    p_prev = None
    p_cur = [moments[0] / moments[0]]  # [1] in the backend scalar type
    norm_prev = None
    norm_cur = moments[0]
    for q in range(count):
        # b_{q+1} = <x P_q, P_q> / <P_q, P_q>
        shifted = [0 * norm_cur] + p_cur
        bq = _poly_inner(shifted, p_cur, moments) / norm_cur
        b.append(bq)
        # P_{q+1} = (x - b_{q+1}) P_q - a_q^2 P_{q-1}
        nxt = [0 * norm_cur] * (q + 2)
        for i, c in enumerate(p_cur):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - bq * c
        if p_prev is not None:
            ratio = norm_cur / norm_prev
            for i, c in enumerate(p_prev):
                nxt[i] = nxt[i] - ratio * c
        p_prev, p_cur = p_cur, nxt
        norm_prev, norm_cur = norm_cur, _poly_inner(p_cur, p_cur, moments)
        if backend == RATIONAL:
            degenerate = norm_cur <= 0
        else:
            degenerate = norm_cur <= _linalg.FLOAT_PIVOT_TOL * max(1.0, norm_prev)
        if degenerate:
            raise DegenerateAt(q + 1, f"law {law.name!r} supports only {q + 1} orthogonal polynomials")
        a_sq.append(norm_cur / norm_prev)
    return JacobiCoefficients(tuple(a_sq), tuple(b), backend)


@dataclass(frozen=True)
class VerblunskyCoefficients:
    """Reflection coefficients alpha_0, alpha_1, ... of a circle law.

    |P_q|^2 = prod_{j<q} (1 - |alpha_j|^2); the measure is nondegenerate
    exactly while every |alpha_j| < 1.
    """

    alpha: tuple
    backend: str

    @property
    def count(self) -> int:
        return len(self.alpha)

    def norm_sq(self, q: int):
        out = Fraction(1) if self.backend == RATIONAL else 1.0
        for j in range(q):
            aj = self.alpha[j]
            out = out * (1 - aj * aj.conjugate())
        return out


def verblunsky_coefficients(law: MarginalLaw, count: int, backend: str | None = None) -> VerblunskyCoefficients:
    """alpha_0..alpha_{count-1} via the coupled reflection recurrence.

    Maintains the monic polynomial phi_q and its reversal phi_q*:
        conj(alpha_q) = <z phi_q, 1> / |phi_q|^2
        phi_{q+1}  = z phi_q - conj(alpha_q) phi_q*
        phi*_{q+1} = phi_q* - alpha_q z phi_q
    Raises DegenerateAt(q+1) when |alpha_q| reaches 1 (finite support).
    """
    if law.kind != UNITARY:
        raise ValueError("Verblunsky coefficients need a unitary law")
    if count < 1:
        raise ValueError("count must be >= 1")
    backend = _resolve_backend(law, backend)

    def mom(k: int):
        v = law.moment(k)
        if backend == FLOAT and isinstance(v, (Fraction, int)):
            v = float(v)
        return v

    one = Fraction(1) if backend == RATIONAL else 1.0
    phi = [one]
    phi_star = [one]
    norm_sq = one
    alphas = []
    for q in range(count):
        # <z phi_q, 1> = sum_k phi_k c_{k+1}
        inner = sum(c * mom(k + 1) for k, c in enumerate(phi))
        alpha_bar = inner / norm_sq
        alpha = alpha_bar.conjugate()
        alphas.append(alpha)
        shifted = [0 * one] + phi
        phi_next = [s - alpha_bar * t for s, t in zip(shifted, phi_star + [0 * one])]
        phi_star_next = [t - alpha * s for s, t in zip(shifted, phi_star + [0 * one])]
        phi, phi_star = phi_next, phi_star_next
        gap = 1 - alpha * alpha.conjugate()
        if isinstance(gap, complex):
            gap = gap.real
        if backend == RATIONAL:
            degenerate = gap <= 0
        else:
            degenerate = gap <= _linalg.FLOAT_PIVOT_TOL
        if degenerate:
            raise DegenerateAt(q + 1, f"law {law.name!r} has finite support of size {q + 1}")
        norm_sq = norm_sq * gap
    return VerblunskyCoefficients(tuple(alphas), backend)


# ---------------------------------------------------------------------------
# classical norm asymptote on [-1, 1]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymptoteRow:
    q: int
    norm: float
    predicted: float
    ratio: float


@dataclass(frozen=True)
class AsymptoteReport:
    """Norm sequence against the classical prediction.

    `szego_constant` is exp((1/4pi) int log(w(cos t)|sin t|) dt); the
    classical prediction is sqrt(2 pi) 2^(-q) times that constant (the form
    the arcsine closed form |P_q|^2 = 2^(1-2q) pins down).  `alt_prediction`
    per row carries the alternative 2^(+q)/sqrt(pi) normalization with the
    constant exp(-(1/2pi) int log w(t) dt / sqrt(1-t^2)); it disagrees with
    the arcsine closed form and is reported rather than silently chosen.
    """

    rows: tuple
    szego_constant: float
    log_weight_integral: float
    alt_constant: float
    alt_predictions: tuple
    weight_integral: float


def szego_norm_prediction(q: int, szego_constant: float) -> float:
    return math.sqrt(2.0 * math.pi) * 2.0 ** (-q) * szego_constant


def szego_asymptote_1d(density: DensitySpec, q_range, backend: str | None = None) -> AsymptoteReport:
    """Compare actual monic norms |P_q| against the Szego prediction.

    The density must pass the integrability check.  Norms come from the
    density's moments (exact when the density carries a closed-form moment
    function); the constant comes from node-doubling quadrature of the log
    integral in the angle variable, which tames the endpoint singularity.
    """
    report = require_class_g(density)
    q_range = sorted(set(int(q) for q in q_range))
    if not q_range or q_range[0] < 1:
        raise ValueError("q_range must contain integers >= 1")
    q_max = q_range[-1]

    def log_weight_angle(theta: float) -> float:
        v = density.weight_times_sine(theta)
        if v <= 0.0:
            return -math.inf
        return math.log(v)

    quad = tanh_sinh(log_weight_angle, 0.0, math.pi,
                     rel_tol=density.rel_tol, max_level=density.max_level)
    log_integral = 2.0 * quad.value  # over (-pi, pi)
    constant = math.exp(log_integral / (4.0 * math.pi))

    def log_weight_only(theta: float) -> float:
        # log w(cos t) = log(w(cos t)|sin t|) - log|sin t|, stable at the ends
        v = density.weight_times_sine(theta)
        if v <= 0.0:
            return -math.inf
        return math.log(v) - math.log(math.sin(theta))

    alt_quad = tanh_sinh(log_weight_only, 0.0, math.pi,
                         rel_tol=density.rel_tol, max_level=density.max_level)
    alt_constant = math.exp(-alt_quad.value / (2.0 * math.pi))

    law = density.to_law(max_order=2 * q_max + 2)
    norms = orthogonal_norms(law, q_max, backend=backend)
    rows = []
    alt_rows = []
    for q in q_range:
        if norms.degenerate_at is not None and q >= norms.degenerate_at:
            break
        norm = math.exp(0.5 * norms.log(q))
        predicted = szego_norm_prediction(q, constant)
        rows.append(AsymptoteRow(q, norm, predicted, norm / predicted))
        alt_rows.append((math.pi ** -0.5) * 2.0**q * alt_constant)
    return AsymptoteReport(tuple(rows), constant, log_integral,
                           alt_constant, tuple(alt_rows), report.weight_integral)
