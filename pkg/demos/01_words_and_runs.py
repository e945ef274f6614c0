"""Reduced words and repetition detection, end to end."""

from burntrack import (
    GroupWord,
    InverseAlphabet,
    Word,
    cyclic_reduce,
    find_power_runs,
    flip,
    max_power_index,
    primitive_root,
    reduce,
)

F2 = InverseAlphabet(["a", "b"])

# Words can be built from tokens or parsed from the packed form where
# uppercase means inverse.
w = Word(F2, ["a", "b", "b^-1", "a", "a^-1", "b"])
print("raw     ", w)
print("reduced ", reduce(w).compact())

# flip reverses and inverts; on a reduced word it gives the group inverse
g = reduce(Word(F2, tuple("abAAb")))
print("word    ", g.compact())
print("flip    ", flip(g).compact())
print("product ", reduce(g * flip(g)).compact() or "(trivial)")

# cyclic reduction splits off the conjugator: word = conj core conj^-1
c = reduce(Word(F2, tuple("AbaBa")))
core, conj = cyclic_reduce(c)
print("cyclic  ", core.compact(), "conjugated by", conj.compact())

# primitive_root factors a word as u^k with u primitive
u, k = primitive_root(Word(F2, tuple("ababab")))
print("root    ", u.compact(), "^", k)

# Maximal runs: every maximal periodic piece with exponent >= 2, each with
# its primitive period.  start/exponent/remainder describe u^m u' exactly.
word = reduce(Word(F2, tuple("aababababbb")))
for run in find_power_runs(word, 2):
    print(
        f"run at {run.start}: period={run.period.compact()} "
        f"m={run.exponent} remainder={run.remainder}"
    )

# The index of the largest power anywhere in the word.
print("max power index:", max_power_index(word))

# A quick scan along the golden-ratio orbit: no fourth powers ever appear.
from burntrack import Alphabet, Substitution

fib = Substitution(Alphabet(["a", "b"]), {"a": "a b", "b": "a"})
v = Word(fib.alphabet, ["b"])
for p in range(1, 11):
    v = fib.apply(v)
    assert max_power_index(v) < 4
print("first ten Fibonacci iterates are 4th-power-free")
