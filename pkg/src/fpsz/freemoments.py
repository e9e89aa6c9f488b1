"""Traces of words in a free family, from marginal moments alone.

The engine evaluates tau(w) by decomposing w into its alternating blocks
y_1 ... y_m (each a power of one variable) and expanding the vanishing
centered product tau(prod_j (y_j - tau(y_j) I)) = 0:

    tau(y_1...y_m) = - sum over proper subsets S of {1..m} of
                     (-1)^(m-|S|) (prod_{j not in S} tau(y_j)) tau(reduce(S)),

where reduce(S) concatenates the kept blocks and re-merges newly adjacent
powers of the same variable.  Every reduce(S) has strictly fewer blocks, so
the recursion terminates; canonical words memoize shared subproblems.
Subsets whose removed blocks include a zero-trace block contribute nothing
and are skipped, which makes centered families (semicircle, Haar) cheap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConfigError
from .laws import MarginalLaw, law_from_config
from .words import SELFADJOINT, Word, concat, merge_blocks, star_word

RATIONAL = "rational"
FLOAT = "float"


@dataclass
class FreeFamily:
    """n marginal laws declared mutually free, plus a trace cache.

    The cache maps canonical block tuples to trace values; it is sound
    because words are value objects and the family fixes every marginal.
    """

    marginals: tuple[MarginalLaw, ...]
    backend: str = RATIONAL
    use_cache: bool = True
    _cache: dict = field(default_factory=dict, repr=False)
    _block_traces: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.marginals = tuple(self.marginals)
        if not self.marginals:
            raise ValueError("a free family needs at least one variable")
        if self.backend not in (RATIONAL, FLOAT):
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.backend == RATIONAL:
            bad = [law.name for law in self.marginals if not law.rational]
            if bad:
                raise ConfigError(
                    f"rational backend requires rational-parameter laws; offending: {bad}"
                )

    @property
    def n(self) -> int:
        return len(self.marginals)

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(law.kind for law in self.marginals)

    @property
    def zero(self):
        return Fraction(0) if self.backend == RATIONAL else 0.0

    @property
    def one(self):
        return Fraction(1) if self.backend == RATIONAL else 1.0

    def block_trace(self, var: int, exp: int):
        """tau of a single power x_var^exp, in the backend's scalar type."""
        key = (var, exp)
        cached = self._block_traces.get(key)
        if cached is not None:
            return cached
        law = self.marginals[var - 1]
        if law.kind == SELFADJOINT and exp < 0:
            raise ValueError(
                f"negative exponent {exp} on self-adjoint variable x{var}"
            )
        value = law.moment(exp)
        if self.backend == FLOAT and isinstance(value, (Fraction, int)):
            value = float(value)
        self._block_traces[key] = value
        return value

    def clear_cache(self):
        self._cache.clear()
        self._block_traces.clear()


def family_from_config(cfg: dict) -> FreeFamily:
    """Build a family from {"backend": ..., "variables": [law configs]}."""
    if not isinstance(cfg, dict):
        raise ConfigError(f"family config must be an object, got {type(cfg)}")
    try:
        variables = cfg["variables"]
    except KeyError:
        raise ConfigError("family config needs a 'variables' array") from None
    if not isinstance(variables, list) or not variables:
        raise ConfigError("'variables' must be a non-empty array")
    try:
        laws = tuple(law_from_config(v) for v in variables)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"bad law config: {exc}") from exc
    declared_n = cfg.get("n")
    if declared_n is not None and declared_n != len(laws):
        raise ConfigError(f"config says n={declared_n} but lists {len(laws)} variables")
    backend = cfg.get("backend", RATIONAL)
    return FreeFamily(laws, backend=backend)


def _trace_blocks(family: FreeFamily, blocks: tuple) -> object:
    cache = family._cache if family.use_cache else None
    if cache is not None:
        hit = cache.get(blocks)
        if hit is not None:
            return hit
    m = len(blocks)
    if m == 0:
        value = family.one
    elif m == 1:
        value = family.block_trace(*blocks[0])
    else:
        traces = [family.block_trace(var, exp) for var, exp in blocks]
        # positions whose removal can contribute: blocks with nonzero trace
        removable = [j for j in range(m) if traces[j] != 0]
        total = family.zero
        for r in range(1, len(removable) + 1):
            sign = 1 if r % 2 else -1
            for removed in itertools.combinations(removable, r):
                coeff = traces[removed[0]]
                for j in removed[1:]:
                    coeff = coeff * traces[j]
                kept = merge_blocks(
                    blocks[j] for j in range(m) if j not in removed
                )
                total = total + sign * coeff * _trace_blocks(family, kept)
        value = total
    if cache is not None:
        cache[blocks] = value
    return value


def mixed_moment(family: FreeFamily, word: Word):
    """tau(word) for any star-word over the family."""
    if word.n != family.n:
        raise ValueError(f"word over {word.n} generators, family has {family.n}")
    return _trace_blocks(family, word.blocks)


def gram_entry(family: FreeFamily, alpha: Word, beta: Word):
    """tau(alpha* beta): the Gram inner product of the monomials."""
    return mixed_moment(family, concat(star_word(alpha, family.kinds), beta))
