"""Entropy numbers and the Hankel-determinant growth limit, by two routes.

For a free family the squared-norm product over all words of a fixed
length q factors (one-variable norms per block), so the scaled log of the
length-q product - here `level_log(q)` - can be computed three ways:

  * enumerate every length-q word and sum its block norm logs (ground truth,
    exponential in q);
  * read the pivots of the direct Gram determinant (independent, expensive);
  * solve the cumulative recursion  L_q = (n-1) * sum_{j<q} L_j + d_q
    driven by one-variable data (cheap, reaches large q).

The determinant ratio ln D_{q+1} / (q n^q) is the cumulative sum of level
logs; its limit is ((n-1)/n) * sum of per-variable entropy numbers.

All level and determinant logs are carried divided by n^q: the raw values
grow like q n^q and would overflow float range by q ~ 40.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .errors import DegenerateAt, DegenerateLaw
from .freemoments import RATIONAL, FreeFamily
from .grammat import hankel_determinant
from .laws import MarginalLaw
from .orthopoly1d import (
    JacobiCoefficients,
    VerblunskyCoefficients,
    orthogonal_norms,
)
from .words import DEFAULT_ENUMERATION_CAP, words_of_length

ROUTE_ENUMERATE = "enumerate"
ROUTE_CLOSED_FORM = "closed_form"


# ---------------------------------------------------------------------------
# entropy numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntropyEstimate:
    """Partial sum of sum_j ln|P_j|^2 / n^j with a geometric tail bound.

    `variant_value`, when set, is the same series under the alternative
    prefactor convention for the route (see entropy_from_jacobi /
    entropy_from_verblunsky); it is reported alongside so the two
    conventions can be compared instead of one being silently dropped.
    """

    n: int
    value: float
    truncation: int
    tail_bound: float
    terms: tuple
    route: str
    variant_value: float | None = None


def _tail_bound(log_norms: list[float], n: int, truncation: int) -> float:
    """Bound sum_{j>J} |ln|P_j|^2| / n^j by fitting |ln|P_j|^2| <= c1 + c2 j.

    Least squares on the later half of the computed logs, doubled to be
    conservative; the linear-growth form is justified by the operator-norm
    bound |P_q| <= |x|^q.
    """
    tail_from = max(1, len(log_norms) // 2)
    pts = [(j + 1.0, abs(v)) for j, v in enumerate(log_norms) if j + 1 >= tail_from]
    m = len(pts)
    if m == 1:
        c1, c2 = pts[0][1], 0.0
    else:
        sx = sum(p[0] for p in pts)
        sy = sum(p[1] for p in pts)
        sxx = sum(p[0] * p[0] for p in pts)
        sxy = sum(p[0] * p[1] for p in pts)
        denom = m * sxx - sx * sx
        c2 = (m * sxy - sx * sy) / denom
        c1 = (sy - c2 * sx) / m
        c2 = max(c2, 0.0)
        c1 = max(c1, 0.0)
    c1, c2 = 2.0 * c1, 2.0 * c2
    x = 1.0 / n
    j1 = truncation + 1
    geom = x**j1 / (1.0 - x)
    lin = x**j1 * (j1 - truncation * x) / (1.0 - x) ** 2
    return c1 * geom + c2 * lin


def entropy_number(law: MarginalLaw, n: int, truncation: int = 40,
                   backend: str | None = None) -> EntropyEstimate:
    """Definition-route entropy number: sum_{j<=J} ln|P_j(x)|^2 / n^j.

    Norms are moment-matrix pivots (Hankel on the line, Toeplitz on the
    circle).  A law that degenerates before J has entropy -infinity;
    DegenerateLaw is raised instead of returning a junk float.
    """
    if n < 2:
        raise ValueError("entropy numbers need n >= 2")
    norms = orthogonal_norms(law, truncation, backend=backend)
    if norms.degenerate_at is not None:
        raise DegenerateLaw(
            f"law {law.name!r} degenerates at order {norms.degenerate_at}; "
            "its entropy number is -infinity"
        )
    logs = [norms.log(q) for q in range(1, truncation + 1)]
    terms = tuple(v / n**j for j, v in enumerate(logs, start=1))
    return EntropyEstimate(n, math.fsum(terms), truncation,
                           _tail_bound(logs, n, truncation), terms, "norms")


def entropy_from_jacobi(coeffs: JacobiCoefficients, n: int) -> EntropyEstimate:
    """Entropy number from recurrence coefficients.

    Substituting ln|P_j|^2 = 2 sum_{m<=j} ln a_m into the definition and
    exchanging the summations gives (2n/(n-1)) sum_j ln a_j / n^j; that is
    the constant implemented.  `variant_value` reports the same series
    scaled by 2(n-1)/n instead, an alternative convention that does not
    match the definition route and is surfaced for comparison only.
    """
    if n < 2:
        raise ValueError("entropy numbers need n >= 2")
    log_a = [0.5 * _linalg.log_fraction(v) for v in coeffs.a_sq]
    series = math.fsum(v / n**j for j, v in enumerate(log_a, start=1))
    logs = [2.0 * math.fsum(log_a[:j]) for j in range(1, len(log_a) + 1)]
    terms = tuple(v / n**j for j, v in enumerate(logs, start=1))
    return EntropyEstimate(
        n, 2.0 * n / (n - 1) * series, coeffs.count,
        _tail_bound(logs, n, coeffs.count), terms, "jacobi",
        variant_value=2.0 * (n - 1) / n * series,
    )


def entropy_from_verblunsky(coeffs: VerblunskyCoefficients, n: int) -> EntropyEstimate:
    """Entropy number from reflection coefficients.

    With ln|P_j|^2 = sum_{i<j} ln(1-|a_i|^2) the exchanged series is
    (1/(n-1)) sum_{j>=0} ln(1-|alpha_j|^2) / n^j, including the j = 0 term.
    `variant_value` reports ((n-1)/n) sum_{j>=1} of the same logs, the
    alternative convention, for comparison.
    """
    if n < 2:
        raise ValueError("entropy numbers need n >= 2")
    gaps = []
    for a in coeffs.alpha:
        g = 1 - a * a.conjugate()
        gaps.append(g.real if isinstance(g, complex) else g)
    log_gaps = [_linalg.log_fraction(g) for g in gaps]
    value = math.fsum(v / n**j for j, v in enumerate(log_gaps)) / (n - 1)
    variant = (n - 1) / n * math.fsum(
        v / n**j for j, v in enumerate(log_gaps[1:], start=1)
    )
    logs = [math.fsum(log_gaps[:j]) for j in range(1, len(log_gaps) + 1)]
    terms = tuple(v / n**j for j, v in enumerate(logs, start=1))
    return EntropyEstimate(n, value, coeffs.count,
                           _tail_bound(logs, n, coeffs.count), terms,
                           "verblunsky", variant_value=variant)


@dataclass(frozen=True)
class LimitPrediction:
    """((n-1)/n) * sum of per-variable entropy numbers, with tail bounds."""

    value: float
    tail_bound: float
    per_variable: tuple


def limit_prediction(family: FreeFamily, truncation: int = 40) -> LimitPrediction:
    if family.n < 2:
        raise ValueError("the determinant-growth limit needs n >= 2")
    estimates = [entropy_number(law, family.n, truncation=truncation)
                 for law in family.marginals]
    factor = (family.n - 1) / family.n
    return LimitPrediction(
        factor * math.fsum(e.value for e in estimates),
        factor * math.fsum(e.tail_bound for e in estimates),
        tuple(estimates),
    )


# ---------------------------------------------------------------------------
# level products: the length-q squared-norm product, three ways
# ---------------------------------------------------------------------------


def _norm_logs_per_variable(family: FreeFamily, q_max: int) -> list[list[float]]:
    """log|P_j(x_k)|^2 for each variable k and j = 1..q_max."""
    out = []
    for law in family.marginals:
        norms = orthogonal_norms(law, q_max, backend=family.backend)
        if norms.degenerate_at is not None and norms.degenerate_at <= q_max:
            raise DegenerateLaw(
                f"law {law.name!r} degenerates at order {norms.degenerate_at}"
            )
        out.append([norms.log(j) for j in range(1, q_max + 1)])
    return out


def level_log_enumerated(family: FreeFamily, q: int,
                         cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """Scaled level log by brute enumeration: ground truth.

    Sums, over every length-q word, the block-factored squared-norm logs,
    then divides by n^q.  Exponential in q; guarded by the enumeration cap.
    """
    per_var = _norm_logs_per_variable(family, q)
    total = 0.0
    for word in words_of_length(family.n, q, cap=cap):
        total += math.fsum(per_var[var - 1][abs(exp) - 1] for var, exp in word.blocks)
    return total / family.n**q


def level_product_exact(family: FreeFamily, q: int, route: str = "words",
                        cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """The exact length-q squared-norm product (rational backend only).

    route "words": product over words of per-block one-variable norms.
    route "gram": product of the direct Gram pivots at length q, an
    independent check through the full matrix machinery.
    """
    if family.backend != RATIONAL:
        raise ValueError("exact level products need the rational backend")
    if route == "words":
        norms = [orthogonal_norms(law, q, backend=RATIONAL)
                 for law in family.marginals]
        for law, ns in zip(family.marginals, norms):
            if ns.degenerate_at is not None and ns.degenerate_at <= q:
                raise DegenerateLaw(
                    f"law {law.name!r} degenerates at order {ns.degenerate_at}"
                )
        total = Fraction(1)
        for word in words_of_length(family.n, q, cap=cap):
            for var, exp in word.blocks:
                total *= norms[var - 1].value(abs(exp))
        return total
    if route == "gram":
        report = hankel_determinant(family, q + 1, cap=cap)
        if report.is_singular:
            raise DegenerateAt(report.singular, "family is algebraically degenerate")
        total = Fraction(1)
        for word, pivot in zip(report.index_words, report.pivots):
            if word.length == q:
                total *= pivot
        return total
    raise ValueError(f"unknown exact route {route!r}")


@dataclass(frozen=True)
class LevelLogs:
    """Closed-form level logs c_q = ln s_q and their cumulative sums.

    scaled[q-1]      = c_q / n^q
    cumulative[q-1]  = (sum_{j<=q} c_j) / n^q, i.e. ln D_{q+1} / n^q
    Everything is carried pre-divided by n^q to stay in float range.
    """

    n: int
    scaled: tuple
    cumulative: tuple

    def determinant_ratio(self, q: int) -> float:
        """ln D_{q+1} / (q n^q)."""
        return self.cumulative[q - 1] / q


def level_logs(family: FreeFamily, q_max: int) -> LevelLogs:
    """Level logs for q = 1..q_max via the cumulative recursion.

    The one-variable factorization turns the level product into
        L_q = (n-1) * sum_{j<q} L_j + d_q,
        d_q = (n-1) * sum_{j<q} n^(q-j-1) C_j + C_q,
    with C_j the sum over variables of ln|P_j|^2.  The recursion is solved
    directly (O(q_max) work) in scaled variables.
    """
    n = family.n
    per_var = _norm_logs_per_variable(family, q_max)
    c = [math.fsum(col) for col in zip(*per_var)]
    scaled = []
    cumulative = []
    cum = 0.0       # (sum_{j<q} L_j) / n^(q-1)
    weighted = 0.0  # sum_{j<q} C_j / n^j  ( = (sum_{j<q} n^(q-1-j) C_j) / n^(q-1) )
    for q in range(1, q_max + 1):
        cq_scaled = c[q - 1] / n**q
        d_scaled = (n - 1) / n * weighted + cq_scaled
        level = (n - 1) / n * cum + d_scaled
        scaled.append(level)
        cum = cum / n + level  # now (sum_{j<=q} L_j) / n^q
        cumulative.append(cum)
        weighted += cq_scaled
    return LevelLogs(n, tuple(scaled), tuple(cumulative))


def level_log_unrolled_variant(family: FreeFamily, q: int) -> float:
    """A closed-form expansion variant with multiplicity (q-2-j).

    Disagrees with the recursion (and with enumeration) from q = 3 on,
    where the correct multiplicity is (q-1-j); kept callable so reports can
    show the discrepancy instead of hiding it.
    """
    n = family.n
    per_var = _norm_logs_per_variable(family, q)
    c = [math.fsum(col) for col in zip(*per_var)]
    total = c[q - 1]
    for j in range(1, q):
        total += 2.0 * (n - 1) * n ** (q - 1 - j) * c[j - 1]
    for j in range(1, q - 1):
        total += (n - 1) ** 2 * (q - 2 - j) * n ** (q - 2 - j) * c[j - 1]
    return total / n**q


def level_log(family: FreeFamily, q: int, route: str = ROUTE_CLOSED_FORM,
              cap: int = DEFAULT_ENUMERATION_CAP) -> float:
    """Scaled level log ln s_q / n^q by the requested route."""
    if route == ROUTE_CLOSED_FORM:
        return level_logs(family, q).scaled[q - 1]
    if route == ROUTE_ENUMERATE:
        return level_log_enumerated(family, q, cap=cap)
    raise ValueError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# the cumulative recursion and its closed form
# ---------------------------------------------------------------------------


def cumulative_recursion(ratio, c1, forcing):
    """Run c_q = r * sum_{j<q} c_j + d_q directly.

    `forcing` supplies d_2, d_3, ...; returns [c_1, c_2, ...].
    """
    out = [c1]
    total = c1
    for d in forcing:
        nxt = ratio * total + d
        out.append(nxt)
        total += nxt
    return out


def cumulative_recursion_closed_form(ratio, c1, forcing):
    """Closed form c_q = r (1+r)^(q-2) c_1 + r sum_{j=2}^{q-1} (1+r)^(q-1-j) d_j + d_q.

    Same sequence as cumulative_recursion, in one pass per term.
    """
    out = [c1]
    base = 1 + ratio
    weighted = 0  # sum_{j=2}^{q-1} (1+r)^(q-1-j) d_j, updated per step
    for q, d in enumerate(forcing, start=2):
        power = base ** (q - 2)
        out.append(ratio * power * c1 + ratio * weighted + d)
        weighted = weighted * base + d
    return out


# ---------------------------------------------------------------------------
# convergence traces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceRow:
    q: int
    route: str
    level_log_scaled: float
    determinant_ratio: float
    predicted: float
    gap: float
    crosscheck_delta: float | None = None


@dataclass(frozen=True)
class ConvergenceTrace:
    rows: tuple
    predicted: float
    predicted_tail: float

    def max_crosscheck_delta(self) -> float:
        deltas = [abs(r.crosscheck_delta) for r in self.rows
                  if r.crosscheck_delta is not None]
        return max(deltas, default=0.0)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["q", "route", "ln_sq_scaled", "lnD_ratio",
                             "predicted", "gap", "crosscheck_delta"])
            for r in self.rows:
                writer.writerow([
                    r.q, r.route, repr(r.level_log_scaled),
                    repr(r.determinant_ratio), repr(r.predicted), repr(r.gap),
                    "" if r.crosscheck_delta is None else repr(r.crosscheck_delta),
                ])


def convergence_trace(family: FreeFamily, q_direct_max: int = 0,
                      q_factored_max: int = 20, truncation: int = 40,
                      cap: int = DEFAULT_ENUMERATION_CAP,
                      threads: int | None = None) -> ConvergenceTrace:
    """Determinant-growth ratios against the predicted limit.

    Factored rows (cheap, large q) come from the cumulative recursion;
    direct rows recompute ln D_{q+1} from the actual Gram determinant and
    carry the factored-vs-direct delta on the scaled ratio.
    """
    if q_factored_max < 1:
        raise ValueError("q_factored_max must be >= 1")
    prediction = limit_prediction(family, truncation=truncation)
    levels = level_logs(family, q_factored_max)
    n = family.n
    rows = []
    for q in range(1, q_factored_max + 1):
        ratio = levels.determinant_ratio(q)
        rows.append(TraceRow(q, "factored", levels.scaled[q - 1], ratio,
                             prediction.value, ratio - prediction.value))
    for q in range(1, min(q_direct_max, q_factored_max) + 1):
        report = hankel_determinant(family, q + 1, cap=cap, threads=threads)
        if report.is_singular:
            raise DegenerateAt(report.singular, "family is algebraically degenerate")
        if family.backend == RATIONAL:
            logs = [_linalg.log_fraction(p) for p in report.pivots]
        else:
            logs = [math.log(p) for p in report.pivots]
        level = math.fsum(
            lg for w, lg in zip(report.index_words, logs) if w.length == q
        ) / n**q
        ratio = math.fsum(logs) / (q * n**q)
        rows.append(TraceRow(q, "direct", level, ratio, prediction.value,
                             ratio - prediction.value,
                             crosscheck_delta=ratio - levels.determinant_ratio(q)))
    rows.sort(key=lambda r: (r.q, r.route != "factored"))
    return ConvergenceTrace(tuple(rows), prediction.value, prediction.tail_bound)


def richardson_extrapolation(trace: ConvergenceTrace, route: str = "factored") -> float:
    """q r_q - (q-1) r_{q-1} on the last two ratios: kills the 1/q term."""
    ratios = [(r.q, r.determinant_ratio) for r in trace.rows if r.route == route]
    if len(ratios) < 2:
        raise ValueError("need at least two rows to extrapolate")
    (q0, r0), (q1, r1) = ratios[-2], ratios[-1]
    if q1 != q0 + 1:
        raise ValueError("extrapolation needs consecutive q values")
    return q1 * r1 - q0 * r0
