"""Gram matrices over word index sets, their determinants and pivots.

A cut selects the index set: an integer q means all words of length < q,
a Word g means all words strictly before g.  Both produce the same machinery;
only the enumerated set differs.  Determinants are pivot products (exact
backend) or pivot-log sums (float backend, since the determinants grow like
exp(q n^q) and would overflow immediately in the linear domain).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .errors import DegenerateAt
from .freemoments import RATIONAL, FreeFamily, gram_entry, mixed_moment
from .words import (
    DEFAULT_ENUMERATION_CAP,
    Word,
    concat,
    star_word,
    words_before,
    words_below_length,
)


def index_words(n: int, cut, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Word]:
    """The ordered word index set selected by a length or word cut."""
    if isinstance(cut, Word):
        return words_before(cut, cap=cap)
    if isinstance(cut, int):
        if cut < 1:
            raise ValueError("length cut must be >= 1")
        return words_below_length(n, cut, cap=cap)
    raise TypeError(f"cut must be an int or a Word, got {type(cut)}")


def _thread_count(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    env = os.environ.get("FPSZ_THREADS")
    return max(1, int(env)) if env else 1


def gram_matrix(family: FreeFamily, cut, cap: int = DEFAULT_ENUMERATION_CAP,
                threads: int | None = None):
    """The Hermitian PSD matrix (tau(a* b)) over the cut's index words.

    Returns (index_words, rows).  Entries above the diagonal are computed
    (in parallel when threads > 1; the trace engine is pure, so concurrent
    evaluation is safe) and mirrored by conjugate symmetry.
    """
    idx = index_words(family.n, cut, cap=cap)
    dim = len(idx)
    kinds = family.kinds
    stars = [star_word(w, kinds) for w in idx]
    rows = [[family.zero] * dim for _ in range(dim)]

    def entry(i: int, j: int):
        return mixed_moment(family, concat(stars[i], idx[j]))

    pairs = [(i, j) for i in range(dim) for j in range(i, dim)]
    workers = _thread_count(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(lambda p: entry(*p), pairs))
    else:
        values = [entry(i, j) for i, j in pairs]
    for (i, j), v in zip(pairs, values):
        rows[i][j] = v
        rows[j][i] = v.conjugate() if isinstance(v, complex) else v
    return idx, rows


@dataclass(frozen=True)
class GramReport:
    """Determinant and per-word pivots of a cut Gram matrix.

    When nonsingular, `determinant` (exact backend) is the pivot product
    and `log_determinant` the pivot-log sum.  A nonpositive pivot stops the
    factorization: `singular` names the first relation-bearing word, the
    determinant is 0 and the pivot list ends just before that word.
    """

    index_words: tuple
    dimension: int
    backend: str
    pivots: tuple
    determinant: Fraction | None
    log_determinant: float
    singular: Word | None = None

    @property
    def is_singular(self) -> bool:
        return self.singular is not None


def hankel_determinant(family: FreeFamily, cut, cap: int = DEFAULT_ENUMERATION_CAP,
                       threads: int | None = None) -> GramReport:
    """Gram determinant over a length or word cut, with pivot diagnostics."""
    idx, rows = gram_matrix(family, cut, cap=cap, threads=threads)
    exact = family.backend == RATIONAL
    pivots, bad = _linalg.ldl_pivots(rows, exact=exact)
    if bad is not None:
        det = Fraction(0) if exact else None
        return GramReport(tuple(idx), len(idx), family.backend, tuple(pivots),
                          det, -math.inf, singular=idx[bad])
    if exact:
        det = Fraction(1)
        for p in pivots:
            det *= p
        logdet = _linalg.log_fraction(det) if det > 0 else -math.inf
    else:
        det = None
        logdet = sum(math.log(p) for p in pivots)
    return GramReport(tuple(idx), len(idx), family.backend, tuple(pivots),
                      det, logdet)


def orthogonal_norm(family: FreeFamily, word: Word,
                    cap: int = DEFAULT_ENUMERATION_CAP):
    """|P_word|^2: the word's Gram-Schmidt pivot.

    Equals the ratio of the word-cut determinants just after and at `word`;
    computed as the last pivot of the Gram matrix over {b : b <= word}.
    Raises DegenerateAt on any nonpositive pivot at or before `word`.
    """
    below = words_before(word, cap=cap)
    idx = below + [word]
    kinds = family.kinds
    stars = [star_word(w, kinds) for w in idx]
    rows = [[mixed_moment(family, concat(si, wj)) for wj in idx] for si in stars]
    pivots, bad = _linalg.ldl_pivots(rows, exact=(family.backend == RATIONAL))
    if bad is not None:
        raise DegenerateAt(idx[bad], "algebraic relation among the variables")
    return pivots[-1]


@dataclass(frozen=True)
class PolyExpansion:
    """Monic expansion of P_word over the monomials {b : b <= word}.

    coefficients maps each word to its coefficient; the target word itself
    carries 1.
    """

    word: Word
    coefficients: dict

    def coefficient(self, w: Word):
        return self.coefficients.get(w, 0)


def gram_schmidt_expansion(family: FreeFamily, word: Word,
                           cap: int = DEFAULT_ENUMERATION_CAP) -> PolyExpansion:
    """Solve the normal equations for P_word = x_word - sum c_b x_b.

    The solved coefficients make tau(x_b* P_word) vanish for every b before
    `word` (exactly on the rational backend).
    """
    below = words_before(word, cap=cap)
    if not below:
        return PolyExpansion(word, {word: family.one})
    _, rows = gram_matrix(family, word, cap=cap)
    rhs = [gram_entry(family, b, word) for b in below]
    lower, pivots, bad = _linalg.ldl_factor(rows, exact=(family.backend == RATIONAL))
    if bad is not None:
        raise DegenerateAt(below[bad], "algebraic relation among the variables")
    solution = _linalg.ldl_solve(lower, pivots, rhs)
    coeffs = {word: family.one}
    for b, c in zip(below, solution):
        if c != 0:
            coeffs[b] = -c
    return PolyExpansion(word, coeffs)


def expansion_via_cofactors(family: FreeFamily, word: Word,
                            cap: int = DEFAULT_ENUMERATION_CAP) -> PolyExpansion:
    """P_word by cofactor expansion of the bordered Gram determinant.

    Exponential in the dimension; kept as an independent cross-check of
    gram_schmidt_expansion on tiny cuts.
    """
    below = words_before(word, cap=cap)
    idx = below + [word]
    dim = len(idx)
    if dim == 1:
        return PolyExpansion(word, {word: family.one})
    kinds = family.kinds
    stars = [star_word(b, kinds) for b in below]
    # rows: <y_j, y_i> = tau(y_i* y_j) for i over `below`, j over idx
    top = [[mixed_moment(family, concat(si, wj)) for wj in idx] for si in stars]
    denom = _linalg.determinant([row[:-1] for row in top])
    if denom == 0:
        raise DegenerateAt(word, "bordered determinant is singular")
    coeffs = {}
    for j in range(dim):
        minor = [[row[k] for k in range(dim) if k != j] for row in top]
        sign = -1 if (dim - 1 + j) % 2 else 1
        c = sign * _linalg.determinant(minor) / denom
        if c != 0:
            coeffs[idx[j]] = c
    return PolyExpansion(word, coeffs)


def expansion_residuals(family: FreeFamily, expansion: PolyExpansion):
    """tau(x_b* P) for each b before the target; all zero iff orthogonal."""
    out = {}
    for b in words_before(expansion.word):
        total = family.zero
        for w, c in expansion.coefficients.items():
            total = total + c * gram_entry(family, b, w)
        out[b] = total
    return out
