"""Words of the unital free semigroup on n generators.

A word is stored in canonical block form: a tuple of (variable, exponent)
pairs in which adjacent blocks carry distinct variables, matching the normal
form x_{i1}^{j1} ... x_{im}^{jm}.  Positive exponents are ordinary powers;
a negative exponent encodes the adjoint power of a unitary generator
(self-adjoint generators only ever carry positive exponents, since x* = x).

The order used everywhere is graded lexicographic: shorter words first, ties
broken letter by letter, so e < x1 < x2 < ... < xn < x1^2 < x1 x2 < ...
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import EnumerationCapExceeded

Block = tuple[int, int]

DEFAULT_ENUMERATION_CAP = 10_000_000

SELFADJOINT = "selfadjoint"
UNITARY = "unitary"


def merge_blocks(blocks) -> tuple[Block, ...]:
    """Merge adjacent same-variable blocks, dropping cancelled ones.

    Cancellation cascades: if a merge produces exponent zero the block is
    removed and its new neighbours are merged in turn.
    """
    out: list[Block] = []
    for var, exp in blocks:
        if exp == 0:
            continue
        if out and out[-1][0] == var:
            merged = out[-1][1] + exp
            if merged == 0:
                out.pop()
            else:
                out[-1] = (var, merged)
        else:
            out.append((var, exp))
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A canonical-form word over generators x1..xn.

    Instances are immutable value objects; equal block sequences compare and
    hash equal, which is what makes them usable as trace-cache keys.
    """

    blocks: tuple[Block, ...]
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"generator count must be >= 1, got {self.n}")
        prev = None
        for var, exp in self.blocks:
            if not 1 <= var <= self.n:
                raise ValueError(f"variable index {var} outside 1..{self.n}")
            if exp == 0:
                raise ValueError("zero exponent in canonical word")
            if var == prev:
                raise ValueError("adjacent blocks share a variable; not canonical")
            prev = var

    @property
    def length(self) -> int:
        return sum(abs(exp) for _, exp in self.blocks)

    @property
    def is_identity(self) -> bool:
        return not self.blocks

    def sort_key(self):
        """Graded-lex key: (length, expanded letter sequence).

        Each block expands to |exp| letters; an adjoint letter sorts just
        after the plain letter of the same variable.  Index words are always
        positive-power, so the adjoint tie-break only matters for star-words.
        """
        letters = []
        for var, exp in self.blocks:
            letters.extend([(var, 0 if exp > 0 else 1)] * abs(exp))
        return (self.length, tuple(letters))

    def _check_comparable(self, other: "Word"):
        if not isinstance(other, Word):
            return NotImplemented
        if self.n != other.n:
            raise ValueError(f"cannot compare words over {self.n} and {other.n} generators")
        return other

    def __lt__(self, other):
        other = self._check_comparable(other)
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        other = self._check_comparable(other)
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        other = self._check_comparable(other)
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        other = self._check_comparable(other)
        return self.sort_key() >= other.sort_key()

    def __str__(self):
        return word_to_text(self)

    def __repr__(self):
        return f"Word({word_to_text(self)!r}, n={self.n})"


def identity_word(n: int) -> Word:
    return Word((), n)


def canonicalize(letters, n: int) -> Word:
    """Build the canonical word from a raw (variable, exponent) sequence."""
    for var, _ in letters:
        if not 1 <= var <= n:
            raise ValueError(f"variable index {var} outside 1..{n}")
    return Word(merge_blocks(letters), n)


def concat(a: Word, b: Word) -> Word:
    if a.n != b.n:
        raise ValueError("cannot concatenate words over different generator counts")
    return Word(merge_blocks(a.blocks + b.blocks), a.n)


def compare(a: Word, b: Word) -> int:
    """Three-way graded-lex comparison: -1, 0 or 1."""
    if a.n != b.n:
        raise ValueError(f"cannot compare words over {a.n} and {b.n} generators")
    ka, kb = a.sort_key(), b.sort_key()
    return (ka > kb) - (ka < kb)


def star_word(word: Word, kinds) -> Word:
    """Adjoint of a word: block order reversed, unitary exponents negated.

    `kinds` gives each variable's kind ("selfadjoint" or "unitary"), indexed
    by variable - 1.  Adjoints of self-adjoint powers are themselves, so
    their exponents stay positive.
    """
    if len(kinds) != word.n:
        raise ValueError(f"need {word.n} kinds, got {len(kinds)}")
    rev = []
    for var, exp in reversed(word.blocks):
        kind = kinds[var - 1]
        if kind == UNITARY:
            rev.append((var, -exp))
        elif kind == SELFADJOINT:
            if exp < 0:
                raise ValueError("self-adjoint variable with negative exponent")
            rev.append((var, exp))
        else:
            raise ValueError(f"unknown variable kind {kind!r}")
    return Word(merge_blocks(rev), word.n)


def count_words_of_length(n: int, q: int) -> int:
    return n**q


def count_words_below_length(n: int, q_max: int) -> int:
    if n == 1:
        return q_max
    return (n**q_max - 1) // (n - 1)


def _check_cap(count: int, cap: int):
    if count > cap:
        raise EnumerationCapExceeded(count, cap)


def words_of_length(n: int, q: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Word]:
    """All words of length exactly q, in graded-lex order."""
    if n < 1 or q < 0:
        raise ValueError("need n >= 1 and q >= 0")
    _check_cap(count_words_of_length(n, q), cap)
    if q == 0:
        return [identity_word(n)]
    out = []
    for letters in itertools.product(range(1, n + 1), repeat=q):
        out.append(Word(merge_blocks((v, 1) for v in letters), n))
    return out


def words_below_length(n: int, q_max: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Word]:
    """All words of length < q_max, in graded-lex order."""
    if n < 1 or q_max < 0:
        raise ValueError("need n >= 1 and q_max >= 0")
    _check_cap(count_words_below_length(n, q_max), cap)
    out = []
    for q in range(q_max):
        out.extend(words_of_length(n, q, cap=cap))
    return out


def words_before(word: Word, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Word]:
    """All words strictly preceding `word` in graded-lex order."""
    for _, exp in word.blocks:
        if exp < 0:
            raise ValueError("index cuts require positive-power words")
    q = word.length
    out = words_below_length(word.n, q, cap=cap)
    key = word.sort_key()
    for cand in words_of_length(word.n, q, cap=cap):
        if cand.sort_key() < key:
            out.append(cand)
    return out


_TOKEN_RE = re.compile(r"^x(\d+)(\*)?(?:\^(\d+))?$")


def parse_word(text: str, n: int, kinds=None) -> Word:
    """Parse the space-separated text format.

    Tokens are `x<k>`, `x<k>^<p>`, `x<k>*`, `x<k>*^<p>`; the empty word is the
    literal `e`.  A starred token means the adjoint: exponent -p for a unitary
    variable, p unchanged for a self-adjoint one (when `kinds` is supplied;
    without kinds, stars are read as unitary adjoints).
    """
    text = text.strip()
    if text == "e":
        return identity_word(n)
    letters = []
    for token in text.split():
        m = _TOKEN_RE.match(token)
        if not m:
            raise ValueError(f"bad word token {token!r}")
        var = int(m.group(1))
        if not 1 <= var <= n:
            raise ValueError(f"variable index {var} outside 1..{n} in token {token!r}")
        starred = m.group(2) is not None
        power = int(m.group(3)) if m.group(3) else 1
        if power == 0:
            raise ValueError(f"zero power in token {token!r}")
        if starred and kinds is not None and kinds[var - 1] == SELFADJOINT:
            starred = False
        letters.append((var, -power if starred else power))
    return canonicalize(letters, n)


def word_to_text(word: Word) -> str:
    if word.is_identity:
        return "e"
    parts = []
    for var, exp in word.blocks:
        star = "*" if exp < 0 else ""
        p = abs(exp)
        parts.append(f"x{var}{star}" + (f"^{p}" if p != 1 else ""))
    return " ".join(parts)
