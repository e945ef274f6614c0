"""Words layer: alphabets, reduction, flips, and repetition search."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burntrack.words import (
    Alphabet,
    GroupWord,
    InverseAlphabet,
    PowerRun,
    Word,
    cyclic_reduce,
    find_power_runs,
    flip,
    max_power_index,
    primitive_root,
    reduce,
)
from burntrack.words import _runs_numpy, _runs_pure

from .oracles import (
    is_primitive_seq,
    maximal_runs_bruteforce,
    power_index_bruteforce,
)

AB = Alphabet("ab")
FREE2 = InverseAlphabet("ab")
FREE3 = InverseAlphabet("abc")


def word(text, alphabet=AB):
    return Word(alphabet, text)


def runs_as_tuples(runs):
    return [(r.start, len(r.period), r.exponent, r.remainder) for r in runs]


class TestAlphabets:
    def test_plain_basics(self):
        assert AB.letters == ("a", "b")
        assert len(AB) == 2
        assert AB.index("b") == 1
        assert AB.name(0) == "a"
        assert "a" in AB and "c" not in AB
        assert not AB.has_inverses

    def test_rejects_bad_names(self):
        with pytest.raises(ValueError):
            Alphabet(["a", "a"])
        with pytest.raises(ValueError):
            Alphabet(["a b"])
        with pytest.raises(ValueError):
            Alphabet(["x^2"])
        with pytest.raises(ValueError):
            Alphabet([])
        with pytest.raises(ValueError):
            Alphabet([""])

    def test_inverse_interleaving(self):
        assert FREE2.letters == ("a", "a^-1", "b", "b^-1")
        assert FREE2.positive_letters == ("a", "b")
        assert FREE2.rank == 2
        for i in range(4):
            assert FREE2.inv(FREE2.inv(i)) == i
            assert FREE2.inv(i) != i
        assert FREE2.is_positive(0) and not FREE2.is_positive(1)
        assert FREE2.positive_index(2) == 1 and FREE2.positive_index(3) == 1

    def test_token_forms(self):
        assert FREE2.parse_token("a") == 0
        assert FREE2.parse_token("a^-1") == 1
        assert FREE2.parse_token("inv(a)") == 1
        assert FREE2.parse_token("A") == 1
        assert FREE2.parse_token("B") == 3
        with pytest.raises(ValueError):
            FREE2.parse_token("c")
        with pytest.raises(ValueError):
            FREE2.parse_token("inv(c)")
        with pytest.raises(ValueError):
            AB.parse_token("A")

    def test_colors(self):
        alph = InverseAlphabet("ab", colors={"a": "yellow", "b": "red"})
        assert alph.color(0) == "yellow"
        assert alph.color(1) == "yellow"  # same tag on the inverse
        assert alph.color(2) == "red"
        assert InverseAlphabet("ab").color(0) is None
        with pytest.raises(ValueError):
            InverseAlphabet("ab", colors={"c": "red"})

    def test_equality_separates_structures(self):
        assert Alphabet("ab") == Alphabet("ab")
        assert Alphabet("ab") != Alphabet("ba")
        assert InverseAlphabet("ab") == InverseAlphabet("ab")
        assert Alphabet("ab") != InverseAlphabet("ab")


class TestWords:
    def test_parse_and_str(self):
        w = Word.parse(FREE2, "a b a^-1")
        assert w.letters == ("a", "b", "a^-1")
        assert str(w) == "a b a^-1"
        assert w.compact() == "abA"
        assert Word.parse(FREE2, "a b inv(a)") == w
        assert Word(FREE2, ["a", "b", "A"]) == w

    def test_compact_falls_back_for_long_names(self):
        alph = InverseAlphabet(["x1", "y"])
        w = Word(alph, ["x1", "y^-1"])
        assert w.compact() == str(w) == "x1 y^-1"

    def test_concat_and_power(self):
        w = word("ab")
        assert (w * word("ba")).letters == ("a", "b", "b", "a")
        assert (w ** 3).letters == ("a", "b") * 3
        assert (w ** 0).is_trivial
        with pytest.raises(ValueError):
            w ** -1
        with pytest.raises(ValueError):
            word("ab") * Word(FREE2, ["a", "b"])

    def test_slicing(self):
        w = word("abab")
        assert w[1:3].letters == ("b", "a")
        assert w[0] == "a"
        assert len(w[2:]) == 2

    def test_from_indices_bounds(self):
        with pytest.raises(ValueError):
            Word.from_indices(AB, (0, 2))

    def test_group_word_must_be_reduced(self):
        with pytest.raises(ValueError):
            GroupWord(FREE2, ["a", "a^-1"])
        with pytest.raises(ValueError):
            GroupWord(AB, ["a"])
        w = GroupWord(FREE2, ["a", "b", "a"])
        assert w.is_cyclically_reduced
        assert not GroupWord(FREE2, ["a", "b", "a^-1"]).is_cyclically_reduced
        assert GroupWord(FREE2, []).is_cyclically_reduced


class TestReduceFlip:
    def test_reduce_examples(self):
        w = Word(FREE3, ["a", "b", "b^-1", "c"])
        r = reduce(w)
        assert isinstance(r, GroupWord)
        assert r.letters == ("a", "c")
        assert reduce(Word(FREE2, ["a", "a^-1"])).is_trivial
        # nested cancellation
        assert reduce(Word.parse(FREE2, "a b b^-1 a^-1 a b")).letters == ("a", "b")

    def test_reduce_needs_inverses(self):
        with pytest.raises(ValueError):
            reduce(word("ab"))

    def test_flip_examples(self):
        w = GroupWord(FREE2, ["a", "b"])
        assert flip(w).letters == ("b^-1", "a^-1")
        assert isinstance(flip(w), GroupWord)
        raw = Word(FREE2, ["a", "a^-1"])
        assert flip(raw).letters == ("a", "a^-1")
        assert isinstance(flip(raw), Word) and not isinstance(flip(raw), GroupWord)
        with pytest.raises(ValueError):
            flip(word("ab"))

    @given(st.lists(st.integers(0, 5), max_size=40))
    def test_reduce_idempotent(self, seq):
        w = Word.from_indices(FREE3, seq)
        r = reduce(w)
        assert reduce(r) == r

    @given(st.lists(st.integers(0, 5), max_size=40))
    def test_flip_involution(self, seq):
        w = Word.from_indices(FREE3, seq)
        assert flip(flip(w)) == w

    @given(st.lists(st.integers(0, 5), max_size=40))
    def test_flip_gives_group_inverse(self, seq):
        w = reduce(Word.from_indices(FREE3, seq))
        assert reduce(w * flip(w)).is_trivial
        assert reduce(flip(w) * w).is_trivial

    def test_cyclic_reduce_examples(self):
        core, conj = cyclic_reduce(Word.parse(FREE2, "a b a b^-1 a^-1"))
        assert core.letters == ("a",)
        assert conj.letters == ("a", "b") and conj.compact() == "ab"
        core, conj = cyclic_reduce(GroupWord(FREE2, ["a", "b"]))
        assert core.compact() == "ab" and conj.is_trivial
        # a lone letter conjugated by itself stays put: a a a^-1 = a
        core, conj = cyclic_reduce(Word.parse(FREE2, "a a a^-1"))
        assert core.letters == ("a",) and conj.is_trivial

    @given(st.lists(st.integers(0, 5), max_size=40))
    def test_cyclic_reduce_reassembles(self, seq):
        w = reduce(Word.from_indices(FREE3, seq))
        core, conj = cyclic_reduce(w)
        assert core.is_cyclically_reduced
        assert reduce(conj * core * flip(conj)) == w


class TestPrimitiveRoot:
    def test_golden(self):
        u, m = primitive_root(word("abab"))
        assert u.letters == ("a", "b") and m == 2
        u, m = primitive_root(word("aba"))
        assert u.letters == ("a", "b", "a") and m == 1
        u, m = primitive_root(word("aaaa"))
        assert u.letters == ("a",) and m == 4

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            primitive_root(Word(AB, []))

    @given(st.lists(st.integers(0, 2), min_size=1, max_size=48))
    def test_root_is_primitive_and_reassembles(self, seq):
        alph = Alphabet("abc")
        w = Word.from_indices(alph, seq)
        u, m = primitive_root(w)
        assert u ** m == w
        assert is_primitive_seq(u.indices)
        assert len(u) * m == len(w)


class TestPowerRuns:
    def test_run_record(self):
        run = PowerRun(start=1, period=word("ab"), exponent=2, remainder=1)
        assert run.multiplicity == 5 / 2 and run.multiplicity.denominator == 2
        assert run.end == 5
        assert run.stretch_end == 6
        with pytest.raises(ValueError):
            PowerRun(start=0, period=word("ab"), exponent=0, remainder=0)
        with pytest.raises(ValueError):
            PowerRun(start=0, period=word("ab"), exponent=2, remainder=2)
        with pytest.raises(ValueError):
            PowerRun(start=0, period=Word(AB, []), exponent=2, remainder=0)

    def test_min_exponent_floor(self):
        with pytest.raises(ValueError):
            find_power_runs(word("aaaa"), 1)

    def test_golden_runs(self):
        assert runs_as_tuples(find_power_runs(word("aaaaab"), 3)) == [(0, 1, 5, 0)]
        abc = word("abababc", Alphabet("abc"))
        assert runs_as_tuples(find_power_runs(abc, 2)) == [(0, 2, 3, 0)]
        assert find_power_runs(word("abaababa"), 3) == []
        got = runs_as_tuples(find_power_runs(word("abaababa"), 2))
        assert got == [(0, 3, 2, 0), (2, 1, 2, 0), (3, 2, 2, 1)]

    def test_periods_reported_primitive(self):
        # the square period "abab" collapses to "ab"
        runs = find_power_runs(word("abababab"), 2)
        assert runs_as_tuples(runs) == [(0, 2, 4, 0)]
        assert runs[0].period.letters == ("a", "b")

    def test_index_golden(self):
        assert max_power_index(Word(AB, [])) == 0
        assert max_power_index(word("a")) == 1
        assert max_power_index(word("ab")) == 1
        assert max_power_index(word("aa")) == 2
        assert max_power_index(word("abaababa")) == 2

    def test_exhaustive_binary_against_bruteforce(self):
        for n in range(0, 11):
            for seq in itertools.product((0, 1), repeat=n):
                w = Word.from_indices(AB, seq)
                assert max_power_index(w) == power_index_bruteforce(seq), seq
                assert (
                    runs_as_tuples(find_power_runs(w, 2))
                    == maximal_runs_bruteforce(seq, 2)
                ), seq

    def test_random_ternary_against_bruteforce(self):
        rng = random.Random(20260816)
        alph = Alphabet("abc")
        for _ in range(150):
            n = rng.randrange(0, 51)
            seq = tuple(rng.randrange(3) for _ in range(n))
            w = Word.from_indices(alph, seq)
            assert max_power_index(w) == power_index_bruteforce(seq), seq
            assert (
                runs_as_tuples(find_power_runs(w, 2))
                == maximal_runs_bruteforce(seq, 2)
            ), seq

    def test_numpy_path_matches_pure(self):
        rng = random.Random(7)
        for _ in range(40):
            n = rng.randrange(200, 400)
            seq = tuple(rng.randrange(2) for _ in range(n))
            assert _runs_numpy(seq) == _runs_pure(seq)
        seq = (0, 1) * 120 + (2,)
        assert _runs_numpy(seq) == _runs_pure(seq) == [(0, 2, 240)]

    def test_long_word_against_bruteforce(self):
        # exercises the vectorized path end to end
        rng = random.Random(11)
        seq = tuple(rng.randrange(2) for _ in range(250))
        w = Word.from_indices(AB, seq)
        assert max_power_index(w) == power_index_bruteforce(seq)
        assert runs_as_tuples(find_power_runs(w, 2)) == maximal_runs_bruteforce(seq, 2)

    @given(st.lists(st.integers(0, 1), max_size=80))
    @settings(max_examples=60, deadline=None)
    def test_runs_property(self, seq):
        w = Word.from_indices(AB, seq)
        for r in find_power_runs(w, 2):
            assert is_primitive_seq(r.period.indices)
            assert r.exponent >= 2
            p = len(r.period)
            # the stretch really repeats with period p and is maximal
            for k in range(r.start, r.stretch_end - p):
                assert seq[k] == seq[k + p]
            if r.start > 0:
                assert seq[r.start - 1] != seq[r.start - 1 + p]
            if r.stretch_end < len(seq):
                assert seq[r.stretch_end] != seq[r.stretch_end - p]
