"""A stratified graph map from top to bottom: strata, legality, projections.

The running example is the rose map
    a -> a, b -> ba, c -> cbcd, d -> c
with heights a:1, b:2, c/d:3.  The top stratum is exponential and everything
below it only shuffles and pads.
"""

import math

from burntrack import (
    EdgePath,
    Graph,
    StratifiedGraphMap,
    StratumKind,
    build_turn_table,
    check_rtt,
    classify_strata,
    f_sharp,
    induced_substitution,
    pf_length,
    red_projection,
    yellow_loop_audit,
    yellow_red_split,
)

g = Graph.rose(["a", "b", "c", "d"], {"a": 1, "b": 2, "c": 3, "d": 3})
f = StratifiedGraphMap(g, {"*": "*"}, {"a": "a", "b": "b a", "c": "c b c d", "d": "c"})

# --- strata ---------------------------------------------------------------
for r in classify_strata(f):
    line = f"stratum {r.height} {r.edges}: {r.kind}"
    if r.kind is StratumKind.EXPONENTIAL:
        line += f", lambda = {r.eigenvalue:.6f}"
    print(line)

report = check_rtt(f)
print("train track conditions pass:", report.passed)

# --- iterated images ------------------------------------------------------
d = EdgePath(g, "d")
for p in range(1, 5):
    print(f"f^{p}(d) =", f_sharp(f, d, p).word.compact())

# --- turns ----------------------------------------------------------------
table = build_turn_table(f)
for pair in [("c", "d"), ("c", "d^-1"), ("c^-1", "d")]:
    print("turn", pair, "legal" if table.legal(*pair) else "ILLEGAL")

# --- yellow/red decomposition --------------------------------------------
# Split a legal path into maximal pieces by color; yellow is everything
# below the top stratum and projects away.
path = f_sharp(f, d, 3)
pieces = [(color, piece.word.compact()) for color, piece in yellow_red_split(f, path)]
print("split:", pieces)
print("red projection:", red_projection(path).compact())

# The projection intertwines f with a substitution on the red letters.
sigma = induced_substitution(f)
print("induced: c ->", sigma.image("c").compact(), " d ->", sigma.image("d").compact())
check = red_projection(f_sharp(f, path, 1)) == sigma.apply(red_projection(path))
print("commutation holds:", check)

# PF lengths weigh red letters by the eigenvector, so they scale exactly
lam = 1 + math.sqrt(2)
for p in (1, 5, 9):
    ratio = pf_length(f, f_sharp(f, d, p)) / pf_length(f, d)
    print(f"p={p}: |f^p(d)|_PF / |d|_PF = {ratio:.6f} vs lambda^p = {lam**p:.6f}")

# --- the audit ------------------------------------------------------------
# Yellow subpaths that close up are exactly the obstruction to pushing
# this structure into a quotient argument; the rose has them.
audit = yellow_loop_audit(f, "d", 3)
print("rose audit passed:", audit.passed)
print("yellow loops:", sorted({p.path.word.compact() for p in audit.pieces if p.is_loop}))

# A two-vertex cover of the same picture has none: the yellow edge now runs
# between distinct vertices, so no yellow piece can be a loop.
import warnings

g2 = Graph(["u", "v"], [("y", "u", "v", 1), ("c", "u", "v", 2), ("d", "v", "u", 2)])
with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # not a homotopy equivalence, fine here
    f2 = StratifiedGraphMap(
        g2, {"u": "u", "v": "v"}, {"y": "y", "c": "c d c y^-1 c", "d": "d c d"}
    )
print("cover audit passed:", yellow_loop_audit(f2, "c", 3).passed)
