"""Primitive substitutions, their matrices, and fixed-point structure."""

from burntrack import (
    Alphabet,
    NoPeriodUpTo,
    Periodic,
    Substitution,
    Word,
    certify_aperiodic_by_eigenvalue,
    detect_shift_period,
    fixed_point_prefix,
    is_primitive,
    orbit,
    pf_eigenvalue,
)

# a -> ab, b -> c, c -> abc.  Its fixed point turns out to be (abc)^infinity.
ABC = Alphabet(["a", "b", "c"])
s = Substitution(ABC, {"a": "a b", "b": "c", "c": "a b c"})

M = s.transition_matrix()
print("M   =", M.rows)
print("M^2 =", (M * M).rows)
print("primitive:", is_primitive(M))

pf = pf_eigenvalue(M)
print(f"leading eigenvalue {pf.eigenvalue:.9f} (residual {pf.residual:.2e})")

# detect_shift_period proves periodicity by exhibiting the block: the image
# of abc is (abc)^2, so every power of the block is a prefix.
result = detect_shift_period(s, "a", 20)
assert isinstance(result, Periodic)
print(f"fixed point = ({result.block.compact()})^inf, subst(block) = block^{result.power}")

# The golden-ratio substitution behaves differently: same machinery, no
# period, and the eigenvalue test certifies there never will be one.
fib = Substitution(Alphabet(["a", "b"]), {"a": "a b", "b": "a"})
check = detect_shift_period(fib, "a", 30)
assert isinstance(check, NoPeriodUpTo)
print("fibonacci fixed point: no period up to", check.bound)
print("aperiodicity certified:", certify_aperiodic_by_eigenvalue(fib))

print("prefix:", fixed_point_prefix(fib, "a", 21).compact())

# orbit() yields successive images of a seed word
for p, w in orbit(fib, Word(fib.alphabet, ["b"]), 7):
    print(p, w.compact())
