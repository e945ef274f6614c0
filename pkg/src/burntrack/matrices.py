"""Nonnegative integer matrices: irreducibility, primitivity, Perron root.

Entries are exact Python integers of arbitrary size.  Structure tests
(irreducibility, primitivity, permutation detection) are exact decision
procedures; only the Perron eigenvalue itself is numeric, computed by power
iteration with an explicit residual.  The equality "dominant eigenvalue is
exactly 1" is never decided in floating point: for an irreducible integer
matrix it holds precisely when the matrix is a transitive permutation
matrix, and that is what callers should test.

Everything here is immutable and pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "NonnegIntMatrix",
    "PFResult",
    "PowerIterationError",
    "is_irreducible",
    "is_primitive",
    "pf_eigenvalue",
    "pf_eigenvalue_via_shift",
    "is_transitive_permutation",
    "int_determinant",
]


class NonnegIntMatrix:
    """Square matrix of nonnegative integers."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Iterable[Iterable[int]]):
        rws = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(rws)
        if n == 0:
            raise ValueError("matrix must be nonempty")
        for row in rws:
            if len(row) != n:
                raise ValueError(f"matrix must be square, got row of length {len(row)} in size {n}")
            for x in row:
                if x < 0:
                    raise ValueError(f"entries must be nonnegative, got {x}")
        self._rows = rws

    @classmethod
    def identity(cls, n: int) -> "NonnegIntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "NonnegIntMatrix":
        return cls(tuple((0,) * n for _ in range(n)))

    @property
    def size(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def entry(self, i: int, j: int) -> int:
        return self._rows[i][j]

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def column_sum(self, j: int) -> int:
        return sum(row[j] for row in self._rows)

    def trace(self) -> int:
        return sum(self._rows[i][i] for i in range(self.size))

    def __add__(self, other: "NonnegIntMatrix") -> "NonnegIntMatrix":
        if not isinstance(other, NonnegIntMatrix):
            return NotImplemented
        if self.size != other.size:
            raise ValueError("size mismatch")
        return NonnegIntMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self._rows, other._rows)
            )
        )

    def __mul__(self, other: "NonnegIntMatrix") -> "NonnegIntMatrix":
        if not isinstance(other, NonnegIntMatrix):
            return NotImplemented
        if self.size != other.size:
            raise ValueError("size mismatch")
        n = self.size
        cols = tuple(zip(*other._rows))
        return NonnegIntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self._rows
            )
        )

    def __pow__(self, p: int) -> "NonnegIntMatrix":
        if p < 0:
            raise ValueError("negative matrix powers are not defined here")
        result = NonnegIntMatrix.identity(self.size)
        base = self
        while p:
            if p & 1:
                result = result * base
            base = base * base if p > 1 else base
            p >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NonnegIntMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self._rows)

    def __repr__(self) -> str:
        return f"NonnegIntMatrix({[list(r) for r in self._rows]!r})"


def is_irreducible(matrix: NonnegIntMatrix) -> bool:
    """True when every index reaches every index by a path of length >= 1.

    This is strong connectivity of the digraph with an edge i -> j when
    entry (i, j) is positive.  For size 1 the single vertex needs a loop, so
    the 1x1 zero matrix is not irreducible (the usual convention for
    substitution and stratum matrices, where the zero stratum is a separate
    case).
    """
    rows = matrix.rows
    n = matrix.size
    if n == 1:
        return rows[0][0] > 0
    fwd = [[j for j in range(n) if rows[i][j] > 0] for i in range(n)]
    bwd = [[i for i in range(n) if rows[i][j] > 0] for j in range(n)]

    def reaches_all(adj: list[list[int]]) -> bool:
        seen = [False] * n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        return count == n

    return reaches_all(fwd) and reaches_all(bwd)


def _bool_rows(matrix: NonnegIntMatrix) -> list[int]:
    # row i as a bitmask of positive columns
    out = []
    for row in matrix.rows:
        bits = 0
        for j, x in enumerate(row):
            if x > 0:
                bits |= 1 << j
        out.append(bits)
    return out


def _bool_mul(a: list[int], b: list[int], n: int) -> list[int]:
    out = []
    for i in range(n):
        bits = 0
        ai = a[i]
        j = 0
        while ai:
            if ai & 1:
                bits |= b[j]
            ai >>= 1
            j += 1
        out.append(bits)
    return out


def is_primitive(matrix: NonnegIntMatrix) -> bool:
    """True when some power of the matrix is entrywise positive.

    Decided exactly through the Wielandt bound: a primitive matrix of size
    n has M^(n^2 - 2n + 2) entrywise positive, and once a power is positive
    all later powers are, so testing that single exponent decides.
    """
    if not is_irreducible(matrix):
        return False
    n = matrix.size
    exponent = n * n - 2 * n + 2
    full = (1 << n) - 1
    base = _bool_rows(matrix)
    result = [1 << i for i in range(n)]  # identity
    e = exponent
    while e:
        if e & 1:
            result = _bool_mul(result, base, n)
        e >>= 1
        if e:
            base = _bool_mul(base, base, n)
    return all(bits == full for bits in result)


def is_transitive_permutation(matrix: NonnegIntMatrix) -> bool:
    """True for a permutation matrix whose permutation is a single cycle."""
    rows = matrix.rows
    n = matrix.size
    image = [-1] * n
    seen_cols = [False] * n
    for i, row in enumerate(rows):
        ones = [j for j, x in enumerate(row) if x != 0]
        if len(ones) != 1 or row[ones[0]] != 1:
            return False
        j = ones[0]
        if seen_cols[j]:
            return False
        seen_cols[j] = True
        image[i] = j
    # single cycle through all n points
    k = 0
    steps = 0
    while steps < n:
        k = image[k]
        steps += 1
        if k == 0:
            break
    return steps == n and k == 0


@dataclass(frozen=True)
class PFResult:
    """Perron eigenvalue estimate with its residual certificate.

    ``residual`` is the max-norm of M v - lambda v for the returned
    eigenvector v (normalized to unit coordinate sum).
    """

    eigenvalue: float
    eigenvector: tuple[float, ...]
    residual: float
    iterations: int


class PowerIterationError(RuntimeError):
    """Power iteration failed to reach the residual tolerance.

    Happens for irreducible but imprimitive matrices, whose peripheral
    spectrum makes the iteration oscillate; callers should test
    ``is_primitive`` first, or use :func:`pf_eigenvalue_via_shift`.
    The last iterate is attached for diagnosis.
    """

    def __init__(self, message: str, last: PFResult):
        super().__init__(message)
        self.last = last


def _power_iteration(rows: Sequence[Sequence[int]], tol: float, max_iterations: int) -> PFResult:
    n = len(rows)
    v = [1.0 / n] * n
    lam = 0.0
    resid = float("inf")
    for it in range(1, max_iterations + 1):
        u = [sum(row[j] * v[j] for j in range(n)) for row in rows]
        lam = sum(u)  # v has unit coordinate sum
        resid = max(abs(u[i] - lam * v[i]) for i in range(n))
        if resid < tol:
            return PFResult(lam, tuple(v), resid, it)
        v = [x / lam for x in u]
    raise PowerIterationError(
        f"no convergence to residual {tol} within {max_iterations} iterations "
        f"(last residual {resid:.3e}); the matrix may be imprimitive",
        PFResult(lam, tuple(v), resid, max_iterations),
    )


def pf_eigenvalue(matrix: NonnegIntMatrix, tol: float = 1e-10, max_iterations: int = 100_000) -> PFResult:
    """Perron eigenvalue and positive eigenvector by plain power iteration.

    Requires an irreducible matrix.  Deterministic: the start vector is the
    all-ones vector (normalized), so repeated calls agree bit for bit.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_irreducible(matrix):
        raise ValueError("pf_eigenvalue needs an irreducible matrix")
    return _power_iteration(matrix.rows, tol, max_iterations)


def pf_eigenvalue_via_shift(matrix: NonnegIntMatrix, tol: float = 1e-10, max_iterations: int = 100_000) -> PFResult:
    """Perron data computed on I + M, reported for M.

    I + M is primitive whenever M is irreducible, so this converges even for
    imprimitive matrices.  The eigenvector is shared and (I + M) v - mu v
    equals M v - (mu - 1) v, so the residual printed is still the residual
    for M.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not is_irreducible(matrix):
        raise ValueError("pf_eigenvalue_via_shift needs an irreducible matrix")
    shifted = NonnegIntMatrix.identity(matrix.size) + matrix
    res = _power_iteration(shifted.rows, tol, max_iterations)
    return PFResult(res.eigenvalue - 1.0, res.eigenvector, res.residual, res.iterations)


def int_determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss elimination)."""
    n = len(rows)
    if n == 0:
        raise ValueError("empty matrix")
    a = [list(map(int, row)) for row in rows]
    for row in a:
        if len(row) != n:
            raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]
