"""Free group basis maps: abelianization, growth, composition."""

from burntrack import (
    BasisMap,
    InverseAlphabet,
    Word,
    abelianization,
    growth_rank2,
    growth_rate_estimate,
    verify_automorphism,
)
from burntrack.automorphisms import compose

F2 = InverseAlphabet(["a", "b"])

# The golden-ratio map is invertible; its inverse is easy to write down.
phi = BasisMap(F2, {"a": "a b", "b": "a"})
phi_inv = BasisMap(F2, {"a": "b", "b": "b^-1 a"})
print("phi is an automorphism:", verify_automorphism(phi, phi_inv))

ab = abelianization(phi)
print("abelianized matrix", ab.rows, "det", ab.det)

# Rank-two growth is decided exactly by |trace(M^2)|
print("phi growth:", growth_rank2(phi))

twist = BasisMap(F2, {"a": "a", "b": "b a"})
print("twist growth:", growth_rank2(twist))

# Iterating the twist only adds letters linearly; phi doubles them.
for f, name in [(phi, "phi"), (twist, "twist")]:
    est = growth_rate_estimate(f, depth=14)
    print(f"{name}: lengths {est.lengths[:6]}... estimate {est.estimate:.4f}")

# Composition is a basis map again; images are reduced as they are built.
square = compose(phi, phi)
print("phi^2(a) =", square.image("a"))
print("phi^2(b) =", square.image("b"))
assert square.apply(Word(F2, ["b"])) == phi.apply(phi.apply(Word(F2, ["b"])))

# power() reuses composition under a letter budget
print("phi^5(b) =", phi.power(5).image("b").compact())
