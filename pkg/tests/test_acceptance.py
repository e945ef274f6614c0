"""Acceptance suite: one test per shipping criterion, run in order.

Every expected value here is frozen; tolerances and time budgets are stated
inline.  Each test prints one ``ACCEPT-NN pass`` line on success (visible
with ``pytest -s`` or in captured output), and the ``pytest -v`` status line
doubles as the per-criterion verdict.
"""

import math
import random
import time
from pathlib import Path

from burntrack.automorphisms import (
    BasisMap,
    Growth,
    abelianization,
    growth_rank2,
    polynomial_order_bound,
)
from burntrack.burnside import (
    MoveParams,
    Order,
    burnside_oracle,
    find_elementary_moves,
    induced_order,
)
from burntrack.cli import main as cli_main
from burntrack.graphmap import (
    EdgePath,
    Graph,
    StratifiedGraphMap,
    f_sharp,
    induced_substitution,
    path_is_k_legal,
    pf_length,
    red_projection,
    yellow_loop_audit,
)
from burntrack.matrices import is_primitive, pf_eigenvalue
from burntrack.substitutions import Periodic, Substitution, detect_shift_period
from burntrack.words import Alphabet, InverseAlphabet, Word, max_power_index, reduce

from .oracles import power_index_bruteforce

# frozen word-for-word: the golden-ratio orbit of b and the two printed
# iterates of d
FIB_TABLE = [
    "a",
    "ab",
    "aba",
    "abaab",
    "abaababa",
    "abaababaabaab",
    "abaababaabaababaababa",
]
PSI3_OF_D = "cbcdbacbcdc"
PSI4_OF_D = "cbcdbacbcdcbaacbcdbacbcdccbcd"

F2 = InverseAlphabet(["a", "b"])
AB = Alphabet(["a", "b"])


def report(num: int, detail: str) -> None:
    print(f"ACCEPT-{num:02d} pass {detail}")


def fib_subst() -> Substitution:
    return Substitution(AB, {"a": "a b", "b": "a"})


def dehn_twist() -> BasisMap:
    return BasisMap(F2, {"a": "a", "b": "b a"})


def phi_n(n: int) -> BasisMap:
    block = " b" + " a" * n
    return BasisMap(F2, {"a": "a" + block * n, "b": "b" + " a" * n})


def psi_rose():
    g = Graph.rose(["a", "b", "c", "d"], {"a": 1, "b": 2, "c": 3, "d": 3})
    f = StratifiedGraphMap(g, {"*": "*"}, {"a": "a", "b": "b a", "c": "c b c d", "d": "c"})
    return g, f


def cover_example():
    import warnings

    g = Graph(["u", "v"], [("y", "u", "v", 1), ("c", "u", "v", 2), ("d", "v", "u", 2)])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        f = StratifiedGraphMap(
            g, {"u": "u", "v": "v"}, {"y": "y", "c": "c d c y^-1 c", "d": "d c d"}
        )
    return g, f


def test_criterion_01_fibonacci_orbit(capsys):
    session = Path(__file__).resolve().parent.parent / "demos" / "session.bt"
    start = time.perf_counter()
    code = cli_main(["-s", str(session), "orbit", "fib", "b", "--depth", "7"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    assert code == 0
    assert out.splitlines() == [f"{p} {w}" for p, w in enumerate(FIB_TABLE, start=1)]
    assert elapsed < 1.0
    with capsys.disabled():
        report(1, f"seven orbit words exact, {elapsed:.3f}s < 1s")


def test_criterion_02_fourth_power_freeness(capsys):
    start = time.perf_counter()
    s = fib_subst()
    fast = []
    w = Word(AB, ["b"])
    for p in range(1, 21):
        w = s.apply(w)
        fast.append(max_power_index(w))
    assert all(k < 4 for k in fast), fast

    w = Word(AB, ["b"])
    for p in range(1, 13):
        w = s.apply(w)
        brute = power_index_bruteforce(w)
        assert brute == fast[p - 1], (p, brute, fast[p - 1])
        assert brute < 4
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    with capsys.disabled():
        report(2, f"index < 4 through p=20, brute oracle agrees on p<=12, {elapsed:.2f}s < 10s")


def test_criterion_03_psi_iterates_exact(capsys):
    g, f = psi_rose()
    d = EdgePath(g, "d")
    assert f_sharp(f, d, 3).word.compact() == PSI3_OF_D
    assert f_sharp(f, d, 4).word.compact() == PSI4_OF_D
    with capsys.disabled():
        report(3, "psi^3(d) and psi^4(d) character-for-character")


def test_criterion_04_red_commutation(capsys):
    g, f = psi_rose()
    sigma = induced_substitution(f)
    start = time.perf_counter()

    # deep check on the generating edge
    cur = EdgePath(g, "d")
    red = red_projection(cur)
    for p in range(1, 13):
        cur = f_sharp(f, cur)
        red = sigma.apply(red)
        assert red_projection(cur) == red, f"alpha=d p={p}"

    # exhaustive check: every legal tight path of length <= 6, p <= 5
    alph = g.edge_alphabet
    degree = len(alph.letters)
    checked = 0
    stack = [(i,) for i in range(degree)]
    while stack:
        seq = stack.pop()
        path = EdgePath(g, Word.from_indices(alph, seq))
        if path_is_k_legal(f, path, 3):
            checked += 1
            cur, red = path, red_projection(path)
            for p in range(1, 6):
                cur = f_sharp(f, cur)
                red = sigma.apply(red)
                assert red_projection(cur) == red, (seq, p)
        if len(seq) < 6:
            stack.extend(seq + (j,) for j in range(degree) if j != seq[-1] ^ 1)
    elapsed = time.perf_counter() - start
    assert checked > 100_000
    with capsys.disabled():
        report(4, f"exact on d to p=12 and on {checked} legal paths to p=5, {elapsed:.1f}s")


def test_criterion_05_remark_substitution(capsys):
    s = Substitution(Alphabet(["a", "b", "c"]), {"a": "a b", "b": "c", "c": "a b c"})
    m = s.transition_matrix()
    assert m.rows == ((1, 0, 1), (1, 0, 1), (0, 1, 1))
    assert (m * m).rows == ((1, 1, 2), (1, 1, 2), (1, 1, 2))
    assert is_primitive(m)
    result = detect_shift_period(s, "a", 20)
    assert isinstance(result, Periodic)
    assert result.block.compact() == "abc" and result.power == 2
    pf = pf_eigenvalue(m)
    assert pf.residual < 1e-9
    assert abs(pf.eigenvalue - 2.0) < 1e-9
    with capsys.disabled():
        report(5, f"matrices exact, block=abc q=2, lambda residual {pf.residual:.2e} < 1e-9")


def test_criterion_06_trace_formula(capsys):
    for n in range(1, 6):
        f = phi_n(n)
        assert abelianization(f).trace_of_square() == n**4 + 4 * n**2 + 2, n
        assert growth_rank2(f) is Growth.EXPONENTIAL, n
    assert abelianization(dehn_twist()).trace_of_square() == 2
    assert growth_rank2(dehn_twist()) is Growth.POLYNOMIAL
    with capsys.disabled():
        report(6, "trace(M^2) = n^4+4n^2+2 for n=1..5, twist polynomial")


def test_criterion_07_burnside_orders(capsys):
    def classical_order(r, n):
        # independent of the library: 2^r, and 3^(r + C(r,2) + C(r,3))
        if n == 2:
            return 2**r
        return 3 ** (r + math.comb(r, 2) + math.comb(r, 3))

    timings = {}
    for rank, exponent in [(2, 2), (3, 2), (2, 3), (3, 3)]:
        start = time.perf_counter()
        q = burnside_oracle(rank, exponent, cached=False)
        timings[rank, exponent] = time.perf_counter() - start
        assert q.order == classical_order(rank, exponent), (rank, exponent)
        assert q.exponent_certified
    assert timings[2, 3] < 5.0
    assert timings[3, 3] < 120.0
    with capsys.disabled():
        report(
            7,
            "orders 4, 8, 27, 2187 certified; "
            f"(2,3) {timings[2, 3]:.2f}s < 5s, (3,3) {timings[3, 3]:.2f}s < 120s",
        )


def test_criterion_08_induced_orders(capsys):
    quotient = burnside_oracle(2, 3)
    start = time.perf_counter()
    twist = induced_order(dehn_twist(), quotient)
    t_twist = time.perf_counter() - start
    start = time.perf_counter()
    phi3 = induced_order(phi_n(3), quotient)
    t_phi = time.perf_counter() - start
    assert twist == Order(3)
    assert phi3 == Order(1)
    assert 9 % twist.value == 0
    assert t_twist < 5.0 and t_phi < 5.0
    with capsys.disabled():
        report(8, f"twist -> 3 ({t_twist:.2f}s), Phi_3 -> 1 ({t_phi:.2f}s), both < 5s")


def test_criterion_09_move_soundness_thousand(capsys):
    quotient = burnside_oracle(2, 3)
    params = MoveParams(3)
    rng = random.Random(90210)
    letters = len(F2.letters)

    def random_reduced(max_len):
        out = []
        for _ in range(rng.randrange(max_len + 1)):
            choices = [i for i in range(letters) if not out or i != out[-1] ^ 1]
            out.append(rng.choice(choices))
        return out

    pairs = 0
    while pairs < 1000:
        period = random_reduced(3) or [0]
        m = rng.randrange(params.m_min, params.m_min + 4)
        seq = random_reduced(4) + period * m + random_reduced(4)
        word = reduce(Word.from_indices(F2, seq))
        for move in find_elementary_moves(word, params):
            if pairs == 1000:
                break
            assert quotient.eval_word(move.source) == quotient.eval_word(move.result), move
            pairs += 1
    assert pairs == 1000
    with capsys.disabled():
        report(9, "1000 random (word, move) pairs agree in certified B(2,3), zero failures")


def test_criterion_10_pf_scaling_law(capsys):
    g, f = psi_rose()
    lam = 1 + math.sqrt(2)
    d = EdgePath(g, "d")
    base = pf_length(f, d)
    assert base > 0
    cur = d
    for p in range(1, 11):
        cur = f_sharp(f, cur)
        ratio = pf_length(f, cur) / base
        assert math.isclose(ratio, lam**p, rel_tol=1e-6 * p), (p, ratio)
    with capsys.disabled():
        report(10, "|psi^p(d)|_PF / |d|_PF = lambda^p within rel 1e-6*p for p <= 10")


def test_criterion_11_polynomial_order_bound(capsys):
    assert polynomial_order_bound(2, 3) == 9
    assert polynomial_order_bound(3, 2) == 64

    quotient = burnside_oracle(2, 3)
    # the unipotent polynomially growing test maps; the bound's hypothesis
    # excludes finite-order maps such as a basis swap
    twists = {
        "identity": BasisMap.identity(F2),
        "twist": dehn_twist(),
        "twist squared": dehn_twist().power(2),
        "inverse twist": BasisMap(F2, {"a": "a", "b": "b a^-1"}),
        "other corner": BasisMap(F2, {"a": "a b", "b": "b"}),
    }
    orders = {}
    for name, f in twists.items():
        assert growth_rank2(f) is Growth.POLYNOMIAL, name
        result = induced_order(f, quotient)
        assert isinstance(result, Order), name
        assert 9 % result.value == 0, (name, result)
        orders[name] = result.value
    with capsys.disabled():
        report(11, f"p(2,3)=9, p(3,2)=64; induced orders {sorted(set(orders.values()))} all divide 9")


def test_criterion_12_yellow_loop_audit(capsys):
    _, psi = psi_rose()
    bad = yellow_loop_audit(psi, "d", 3)
    assert not bad.passed
    witnesses = {p.path.word.compact() for p in bad.pieces if p.is_loop}
    assert "ba" in witnesses

    _, cover = cover_example()
    for edge in ("c", "d"):
        assert yellow_loop_audit(cover, edge, 3).passed
    with capsys.disabled():
        report(12, f"rose fails at depth 3 (yellow loops {sorted(witnesses)}), cover passes")
