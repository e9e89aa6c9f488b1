"""Seeded self-checks of the library's core invariants.

Run from the CLI as `fpsz selftest --seed N`.  Each check prints one
PASS/FAIL line; the suite returns the number of failures.  These duplicate
the spirit of the pytest property suite in a dependency-free form so a
deployed install can vouch for itself.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import szegolimit
from .freemoments import FLOAT, RATIONAL, FreeFamily, mixed_moment
from .grammat import hankel_determinant
from .laws import arcsine, catalan, circle_cosine, haar_unitary, semicircle
from .orthopoly1d import jacobi_coefficients, verblunsky_coefficients
from .words import canonicalize, star_word, words_of_length


def _alternating_blocks(rng: random.Random, n: int, max_blocks: int = 6,
                        max_exp: int = 4):
    m = rng.randint(2, max_blocks)
    blocks = []
    prev = 0
    for _ in range(m):
        var = rng.choice([v for v in range(1, n + 1) if v != prev])
        blocks.append((var, rng.randint(1, max_exp)))
        prev = var
    return blocks


def centered_alternating_trace(family: FreeFamily, blocks) -> object:
    """tau(prod_j (y_j - tau(y_j))) by explicit expansion over subsets."""
    m = len(blocks)
    traces = [family.block_trace(var, exp) for var, exp in blocks]
    total = family.zero
    for mask in range(2**m):
        kept = [blocks[j] for j in range(m) if mask & (1 << j)]
        coeff = family.one
        for j in range(m):
            if not mask & (1 << j):
                coeff = coeff * -traces[j]
        word = canonicalize(kept, family.n)
        total = total + coeff * mixed_moment(family, word)
    return total


def check_word_order(seed: int, samples: int = 300) -> bool:
    rng = random.Random(seed)
    n = 3
    words = []
    for _ in range(samples):
        m = rng.randint(0, 5)
        blocks = [(rng.randint(1, n), rng.randint(1, 3)) for _ in range(m)]
        words.append(canonicalize(blocks, n))
    ok = True
    for _ in range(samples):
        a, b, c = rng.choice(words), rng.choice(words), rng.choice(words)
        # trichotomy and consistency
        ok &= (a < b) + (b < a) + (a == b) == 1
        if a < b and b < c:
            ok &= a < c
    ordered = words_of_length(2, 4)
    ok &= all(x < y for x, y in zip(ordered, ordered[1:]))
    ok &= len(set(ordered)) == len(ordered)
    return bool(ok)


def check_star_involution(seed: int, samples: int = 200) -> bool:
    rng = random.Random(seed)
    kinds_pool = [("selfadjoint", "selfadjoint"), ("unitary", "unitary"),
                  ("selfadjoint", "unitary")]
    ok = True
    for _ in range(samples):
        kinds = rng.choice(kinds_pool)
        blocks = []
        prev = 0
        for _ in range(rng.randint(0, 5)):
            var = rng.choice([v for v in (1, 2) if v != prev])
            exp = rng.randint(1, 3)
            if kinds[var - 1] == "unitary" and rng.random() < 0.5:
                exp = -exp
            blocks.append((var, exp))
            prev = var
        w = canonicalize(blocks, 2)
        ok &= star_word(star_word(w, kinds), kinds) == w
    return bool(ok)


def check_freeness_axiom(seed: int, samples: int = 200) -> bool:
    rng = random.Random(seed)
    family = FreeFamily((semicircle(), arcsine(), semicircle(a=Fraction(1, 2))),
                        backend=RATIONAL)
    for _ in range(samples):
        blocks = _alternating_blocks(rng, family.n)
        if centered_alternating_trace(family, blocks) != 0:
            return False
    return True


def check_free_clt(k_max: int = 4) -> bool:
    family = FreeFamily((semicircle(), semicircle()), backend=RATIONAL)
    for k in range(1, k_max + 1):
        total = Fraction(0)
        for word in words_of_length(2, 2 * k, cap=10**7):
            total += mixed_moment(family, word)
        if total != 2**k * catalan(k):
            return False
    return True


def check_route_equivalence() -> bool:
    family = FreeFamily((semicircle(), arcsine()), backend=RATIONAL)
    ok = True
    for q in range(1, 4):
        ok &= (szegolimit.level_product_exact(family, q, "words")
               == szegolimit.level_product_exact(family, q, "gram"))
    fam_float = FreeFamily((semicircle(), arcsine()), backend=FLOAT)
    trace = szegolimit.convergence_trace(fam_float, q_direct_max=5,
                                         q_factored_max=8, truncation=30)
    ok &= trace.max_crosscheck_delta() < 1e-9
    return bool(ok)


def check_cumulative_recursion(seed: int, samples: int = 300) -> bool:
    rng = random.Random(seed)
    for _ in range(samples):
        r = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        c1 = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        d = [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
             for _ in range(rng.randint(0, 8))]
        if szegolimit.cumulative_recursion(r, c1, d) != \
                szegolimit.cumulative_recursion_closed_form(r, c1, d):
            return False
    return True


def check_entropy_routes() -> bool:
    ok = True
    law = arcsine()
    e_norm = szegolimit.entropy_number(law, 2, truncation=40)
    e_jac = szegolimit.entropy_from_jacobi(jacobi_coefficients(law, 40), 2)
    ok &= abs(e_norm.value - e_jac.value) < 1e-10
    ulaw = circle_cosine()
    e_norm_u = szegolimit.entropy_number(ulaw, 2, truncation=40)
    e_ver = szegolimit.entropy_from_verblunsky(verblunsky_coefficients(ulaw, 40), 2)
    ok &= abs(e_norm_u.value - e_ver.value) < 1e-10
    ok &= szegolimit.entropy_number(haar_unitary(), 3, truncation=20).value == 0.0
    return bool(ok)


def check_cache_transparency(seed: int) -> bool:
    rng = random.Random(seed)
    baseline = FreeFamily((semicircle(), arcsine()), backend=RATIONAL)
    uncached = FreeFamily((semicircle(), arcsine()), backend=RATIONAL,
                          use_cache=False)
    for _ in range(25):
        blocks = _alternating_blocks(rng, 2, max_blocks=5, max_exp=3)
        w = canonicalize(blocks, 2)
        if mixed_moment(baseline, w) != mixed_moment(uncached, w):
            return False
    return True


def check_haar_gram_identity() -> bool:
    family = FreeFamily((haar_unitary(), haar_unitary(), haar_unitary()),
                        backend=RATIONAL)
    report = hankel_determinant(family, 3)
    return report.determinant == 1 and all(p == 1 for p in report.pivots)


CHECKS = [
    ("word order is a graded-lex total order", check_word_order, True),
    ("star involution", check_star_involution, True),
    ("centered alternating words have zero trace", check_freeness_axiom, True),
    ("free central limit moments", lambda seed: check_free_clt(), False),
    ("level product route equivalence", lambda seed: check_route_equivalence(), False),
    ("cumulative recursion closed form", check_cumulative_recursion, True),
    ("entropy route equivalence", lambda seed: check_entropy_routes(), False),
    ("trace cache transparency", check_cache_transparency, True),
    ("haar gram matrix is the identity", lambda seed: check_haar_gram_identity(), False),
]


def run_selftest(seed: int = 0, out=print) -> int:
    failures = 0
    for label, fn, _seeded in CHECKS:
        ok = fn(seed)
        out(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            failures += 1
    return failures
