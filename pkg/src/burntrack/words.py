"""Exact words over finite alphabets, with formal inverses and repetition search.

Letters live in an :class:`Alphabet` (plain, for monoid substitutions) or an
:class:`InverseAlphabet` (closed under a fixed-point-free involution, for
group words and edge paths).  A :class:`Word` is an immutable sequence of
letters; a :class:`GroupWord` is additionally freely reduced.  All values
here are immutable and every function is pure, so they are safe to share
between threads.

Repetition search is exact.  ``find_power_runs`` reports each maximal
periodic stretch once, keyed by its primitive period, and
``max_power_index`` derives the largest integer power from those stretches.
The detector does quadratic work overall (a periodicity scan per period
length, vectorized for long words); the cubic brute-force scan lives in the
test suite as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

__all__ = [
    "Alphabet",
    "InverseAlphabet",
    "Word",
    "GroupWord",
    "PowerRun",
    "reduce",
    "flip",
    "cyclic_reduce",
    "primitive_root",
    "max_power_index",
    "find_power_runs",
]

_INV_SUFFIX = "^-1"

# Words at least this long take the vectorized periodicity scan.
_NUMPY_CUTOFF = 192


def _check_letter_name(name: str) -> str:
    if not isinstance(name, str) or not name:
        raise ValueError(f"letter names must be nonempty strings, got {name!r}")
    if any(ch.isspace() for ch in name) or any(ch in "^()" for ch in name):
        raise ValueError(f"letter name {name!r} may not contain whitespace, '^', '(' or ')'")
    return name


class Alphabet:
    """Ordered finite set of letters, without inverses."""

    __slots__ = ("_letters", "_index")

    has_inverses = False

    def __init__(self, letters: Iterable[str]):
        if isinstance(letters, str):
            letters = tuple(letters)
        lst = tuple(_check_letter_name(x) for x in letters)
        if not lst:
            raise ValueError("an alphabet needs at least one letter")
        index: dict[str, int] = {}
        for i, name in enumerate(lst):
            if name in index:
                raise ValueError(f"duplicate letter {name!r}")
            index[name] = i
        self._letters = lst
        self._index = index

    @property
    def letters(self) -> tuple[str, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self._letters)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown letter {name!r} for {self!r}") from None

    def name(self, i: int) -> str:
        return self._letters[i]

    # Token <-> index translation used by the word syntax.  A plain alphabet
    # accepts exact letter names only.
    def parse_token(self, tok: str) -> int:
        return self.index(tok)

    def token(self, i: int) -> str:
        return self._letters[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Alphabet):
            return NotImplemented
        return self.has_inverses == other.has_inverses and self._letters == other._letters

    def __hash__(self) -> int:
        return hash((self.has_inverses, self._letters))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self._letters)!r})"


class InverseAlphabet(Alphabet):
    """Alphabet closed under a fixed-point-free involution.

    Built from positive letter names; the inverse of letter ``x`` is the
    letter named ``x^-1``.  Letters are stored interleaved, so the involution
    on indices is ``i ^ 1``.  Tokens for inverse letters may be written
    ``x^-1``, ``inv(x)``, or (for single lowercase names) uppercase ``X``;
    output always uses the ``x^-1`` form.

    An optional ``colors`` mapping tags letters; tags are constant on each
    pair ``{x, x^-1}`` and are keyed by the positive name.
    """

    __slots__ = ("_positive", "_colors")

    has_inverses = True

    def __init__(self, positive: Iterable[str], colors: Mapping[str, str] | None = None):
        if isinstance(positive, str):
            positive = tuple(positive)
        pos = tuple(_check_letter_name(x) for x in positive)
        interleaved: list[str] = []
        for name in pos:
            interleaved.append(name)
            interleaved.append(name + _INV_SUFFIX)
        # Alphabet.__init__ rejects '^' in names, so build the tables by hand.
        if not pos:
            raise ValueError("an alphabet needs at least one letter")
        index: dict[str, int] = {}
        for i, name in enumerate(interleaved):
            if name in index:
                raise ValueError(f"duplicate letter {name!r}")
            index[name] = i
        self._letters = tuple(interleaved)
        self._index = index
        self._positive = pos
        if colors is not None:
            bad = set(colors) - set(pos)
            if bad:
                raise ValueError(f"colors must be keyed by positive letters, got {sorted(bad)!r}")
            self._colors = dict(colors)
        else:
            self._colors = {}

    @property
    def positive_letters(self) -> tuple[str, ...]:
        return self._positive

    @property
    def rank(self) -> int:
        return len(self._positive)

    def inv(self, i: int) -> int:
        return i ^ 1

    def is_positive(self, i: int) -> bool:
        return (i & 1) == 0

    def positive_index(self, i: int) -> int:
        """Index of the positive representative of letter i among positives."""
        return i >> 1

    def color(self, i: int) -> str | None:
        return self._colors.get(self._positive[i >> 1])

    def parse_token(self, tok: str) -> int:
        got = self._index.get(tok)
        if got is not None:
            return got
        if tok.startswith("inv(") and tok.endswith(")"):
            inner = tok[4:-1]
            got = self._index.get(inner)
            if got is not None:
                return got ^ 1
        if len(tok) == 1 and tok.isupper():
            got = self._index.get(tok.lower())
            if got is not None:
                return got ^ 1
        raise ValueError(f"unknown letter token {tok!r} for {self!r}")

    def __repr__(self) -> str:
        return f"InverseAlphabet({list(self._positive)!r})"


class Word:
    """Immutable word over an :class:`Alphabet`.

    Equal words have equal alphabets (same letters, same inverse structure)
    and equal letter sequences.  Concatenation with ``*`` requires equal
    alphabets.
    """

    __slots__ = ("_alphabet", "_seq")

    def __init__(self, alphabet: Alphabet, letters: Iterable[str] = ()):
        seq = tuple(alphabet.parse_token(x) for x in letters)
        self._alphabet = alphabet
        self._seq = seq
        self._validate()

    def _validate(self) -> None:
        pass

    @classmethod
    def from_indices(cls, alphabet: Alphabet, indices: Iterable[int]) -> "Word":
        self = object.__new__(cls)
        seq = tuple(indices)
        n = len(alphabet.letters)
        for i in seq:
            if not 0 <= i < n:
                raise ValueError(f"letter index {i} out of range for {alphabet!r}")
        self._alphabet = alphabet
        self._seq = seq
        self._validate()
        return self

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Word":
        """Parse the whitespace-separated token syntax."""
        return cls(alphabet, text.split())

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    @property
    def indices(self) -> tuple[int, ...]:
        return self._seq

    @property
    def letters(self) -> tuple[str, ...]:
        alph = self._alphabet
        return tuple(alph.token(i) for i in self._seq)

    @property
    def is_trivial(self) -> bool:
        return not self._seq

    def __len__(self) -> int:
        return len(self._seq)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word.from_indices(self._alphabet, self._seq[key])
        return self._alphabet.token(self._seq[key])

    def __iter__(self) -> Iterator[str]:
        alph = self._alphabet
        return (alph.token(i) for i in self._seq)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if self._alphabet != other._alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        return Word.from_indices(self._alphabet, self._seq + other._seq)

    def __pow__(self, m: int) -> "Word":
        if m < 0:
            raise ValueError("use flip() for inverses; exponents must be >= 0")
        return Word.from_indices(self._alphabet, self._seq * m)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._seq == other._seq and self._alphabet == other._alphabet

    def __hash__(self) -> int:
        return hash((self._alphabet, self._seq))

    def __str__(self) -> str:
        return " ".join(self._alphabet.token(i) for i in self._seq)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def compact(self) -> str:
        """Single-string rendering: ``abA`` style when unambiguous.

        Positive letters must be single lowercase characters; inverses print
        uppercase.  Falls back to the token syntax otherwise.
        """
        alph = self._alphabet
        out = []
        for i in self._seq:
            tok = alph.token(i)
            if len(tok) == 1 and not tok.isupper():
                out.append(tok)
            elif (
                alph.has_inverses
                and tok.endswith(_INV_SUFFIX)
                and len(tok) == 1 + len(_INV_SUFFIX)
                and tok[0].islower()
            ):
                out.append(tok[0].upper())
            else:
                return str(self)
        return "".join(out)


class GroupWord(Word):
    """Freely reduced word over an :class:`InverseAlphabet`."""

    __slots__ = ()

    def _validate(self) -> None:
        if not self._alphabet.has_inverses:
            raise ValueError("GroupWord needs an InverseAlphabet")
        seq = self._seq
        for k in range(len(seq) - 1):
            if seq[k] == seq[k + 1] ^ 1:
                raise ValueError(
                    f"word is not freely reduced at position {k}: "
                    f"{self._alphabet.token(seq[k])} {self._alphabet.token(seq[k + 1])}"
                )

    @property
    def is_cyclically_reduced(self) -> bool:
        seq = self._seq
        return len(seq) < 2 or seq[0] != seq[-1] ^ 1


def reduce(word: Word) -> GroupWord:
    """Freely reduce, cancelling adjacent inverse pairs until none remain."""
    if not word.alphabet.has_inverses:
        raise ValueError("reduce needs a word over an InverseAlphabet")
    out: list[int] = []
    push = out.append
    pop = out.pop
    for i in word.indices:
        if out and out[-1] == i ^ 1:
            pop()
        else:
            push(i)
    return GroupWord.from_indices(word.alphabet, out)


def flip(word: Word) -> Word:
    """Reverse the word and invert each letter.

    For a freely reduced word this is the group inverse; the result keeps
    the input's class (flipping preserves reducedness).
    """
    if not word.alphabet.has_inverses:
        raise ValueError("flip needs a word over an InverseAlphabet")
    cls = GroupWord if isinstance(word, GroupWord) else Word
    return cls.from_indices(word.alphabet, tuple(i ^ 1 for i in reversed(word.indices)))


def cyclic_reduce(word: Word) -> tuple[GroupWord, GroupWord]:
    """Split into conjugator and cyclically reduced core.

    Returns (core, c) with word = c core c^-1 as group elements and core
    cyclically reduced.  The input is freely reduced first if needed.
    """
    w = word if isinstance(word, GroupWord) else reduce(word)
    seq = w.indices
    i, j = 0, len(seq)
    while j - i >= 2 and seq[i] == seq[j - 1] ^ 1:
        i += 1
        j -= 1
    alph = w.alphabet
    return (
        GroupWord.from_indices(alph, seq[i:j]),
        GroupWord.from_indices(alph, seq[:i]),
    )


def _border_table(seq: Sequence[int]) -> list[int]:
    """Failure function: border[i] = longest proper border of seq[:i]."""
    n = len(seq)
    border = [0] * (n + 1)
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = border[k]
        if seq[i] == seq[k]:
            k += 1
        border[i + 1] = k
    return border


def _smallest_period(seq: Sequence[int]) -> int:
    if not seq:
        raise ValueError("empty sequence has no period")
    border = _border_table(seq)
    return len(seq) - border[len(seq)]


def _is_primitive_seq(seq: Sequence[int]) -> bool:
    p = _smallest_period(seq)
    n = len(seq)
    return p == n or n % p != 0


def primitive_root(word: Word) -> tuple[Word, int]:
    """Largest m with word = u^m, returning (u, m); u is primitive."""
    n = len(word)
    if n == 0:
        raise ValueError("the empty word has no primitive root")
    seq = word.indices
    p = _smallest_period(seq)
    if n % p == 0:
        return word[:p], n // p
    return word, 1


def _runs_pure(seq: Sequence[int]) -> list[tuple[int, int, int]]:
    """All maximal periodic stretches as (start, period_length, stretch_length).

    A stretch is reported for its primitive period only, and must contain at
    least two full periods.  Quadratic scan, one pass per period length.
    """
    n = len(seq)
    out: list[tuple[int, int, int]] = []
    for p in range(1, n // 2 + 1):
        k = 0
        limit = n - p
        while k < limit:
            if seq[k] != seq[k + p]:
                k += 1
                continue
            j = k
            while j < limit and seq[j] == seq[j + p]:
                j += 1
            # equality block [k, j) means seq has period p on [k, j + p)
            length = j + p - k
            if length >= 2 * p and _is_primitive_seq(seq[k : k + p]):
                out.append((k, p, length))
            k = j + 1
    out.sort(key=lambda r: (r[0], r[1]))
    return out


def _runs_numpy(seq: Sequence[int]) -> list[tuple[int, int, int]]:
    """Same contract as _runs_pure, vectorized per period length."""
    n = len(seq)
    arr = np.asarray(seq, dtype=np.int64)
    out: list[tuple[int, int, int]] = []
    for p in range(1, n // 2 + 1):
        eq = arr[:-p] == arr[p:]
        if not eq.any():
            continue
        padded = np.empty(eq.size + 2, dtype=np.int8)
        padded[0] = 0
        padded[-1] = 0
        padded[1:-1] = eq
        edges = np.diff(padded)
        starts = np.flatnonzero(edges == 1)
        ends = np.flatnonzero(edges == -1)
        for k, j in zip(starts.tolist(), ends.tolist()):
            length = j + p - k
            if length >= 2 * p and _is_primitive_seq(seq[k : k + p]):
                out.append((k, p, length))
    out.sort(key=lambda r: (r[0], r[1]))
    return out


def _maximal_runs(seq: Sequence[int]) -> list[tuple[int, int, int]]:
    if len(seq) >= _NUMPY_CUTOFF:
        return _runs_numpy(seq)
    return _runs_pure(seq)


@dataclass(frozen=True)
class PowerRun:
    """One maximal periodic stretch.

    The stretch occupies ``[start, start + exponent*|period| + remainder)``;
    the period is primitive and ``exponent`` is the integer power used when
    the run feeds a rewriting move.  ``multiplicity`` is the exact rational
    stretch length over the period length.
    """

    start: int
    period: Word
    exponent: int
    remainder: int

    def __post_init__(self):
        if len(self.period) == 0:
            raise ValueError("a run needs a nonempty period")
        if self.exponent < 1 or not 0 <= self.remainder < len(self.period):
            raise ValueError("malformed run")

    @property
    def multiplicity(self) -> Fraction:
        p = len(self.period)
        return Fraction(self.exponent * p + self.remainder, p)

    @property
    def end(self) -> int:
        """End of the integer-power part consumed by moves."""
        return self.start + self.exponent * len(self.period)

    @property
    def stretch_end(self) -> int:
        return self.start + self.exponent * len(self.period) + self.remainder


def find_power_runs(word: Word, min_exponent: int) -> list[PowerRun]:
    """All maximal runs u^m with u primitive and integer exponent m >= min_exponent.

    Each maximal periodic stretch is reported once; conjugate shifts of the
    period inside the same stretch are not repeated.  Sorted by start index,
    then period length.
    """
    if min_exponent < 2:
        raise ValueError(f"min_exponent must be >= 2, got {min_exponent}")
    seq = word.indices
    runs = []
    for start, p, length in _maximal_runs(seq):
        m = length // p
        if m >= min_exponent:
            runs.append(
                PowerRun(
                    start=start,
                    period=word[start : start + p],
                    exponent=m,
                    remainder=length - m * p,
                )
            )
    return runs


def max_power_index(word: Word) -> int:
    """Largest m such that u^m is a factor of the word for some nonempty u.

    The empty word has index 0; any nonempty word has index at least 1.
    """
    seq = word.indices
    if not seq:
        return 0
    best = 1
    for _, p, length in _maximal_runs(seq):
        m = length // p
        if m > best:
            best = m
    return best
