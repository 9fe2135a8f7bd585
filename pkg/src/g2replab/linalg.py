"""Exact dense linear algebra over the scalar fields.

Matrices are immutable tuples of row tuples.  For prime fields the heavy
kernels (product, elimination, characteristic polynomial) unwrap entries to
plain ints and work modulo ``p``; every other field goes through the element
operators.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import QQ, Field, PrimeField, field_of


class Matrix:
    """An immutable ``nrows x ncols`` matrix over a field."""

    __slots__ = ("F", "rows", "_hash")

    def __init__(self, F: Field, rows: Iterable[Iterable]):
        self.F = F
        self.rows = tuple(tuple(F(x) for x in r) for r in rows)
        self._hash = None

    @classmethod
    def _raw(cls, F: Field, rows: tuple) -> "Matrix":
        m = object.__new__(cls)
        m.F = F
        m.rows = rows
        m._hash = None
        return m

    @classmethod
    def identity(cls, F: Field, n: int) -> "Matrix":
        one, zero = F.one, F.zero
        return cls._raw(F, tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, F: Field, n: int, m: int | None = None) -> "Matrix":
        m = n if m is None else m
        return cls._raw(F, tuple((F.zero,) * m for _ in range(n)))

    @classmethod
    def diag(cls, F: Field, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls(F, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, F: Field, cols: Sequence[Sequence]) -> "Matrix":
        return cls(F, list(zip(*cols)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.F, tuple(zip(*self.rows)))

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix._raw(self.F, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix._raw(self.F, tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.F, tuple(tuple(-a for a in r) for r in self.rows))

    def scale(self, c) -> "Matrix":
        c = self.F(c)
        return Matrix._raw(self.F, tuple(tuple(c * a for a in r) for r in self.rows))

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return matmul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def apply(self, vec: Sequence) -> tuple:
        """Matrix times column vector."""
        if isinstance(self.F, PrimeField):
            p = self.F.p
            v = [int(x) for x in vec]
            cls = self.F.element_class
            return tuple(cls(sum(int(a) * b for a, b in zip(r, v))) for r in self.rows)
        zero = self.F.zero
        out = []
        for r in self.rows:
            acc = zero
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, n: int) -> "Matrix":
        if n < 0:
            return inverse(self) ** (-n)
        result = Matrix.identity(self.F, self.nrows)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def trace(self):
        acc = self.F.zero
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def is_identity(self) -> bool:
        one = self.F.one
        return all((x == one) if i == j else not x for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(self.F, tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def hstack(self, other: "Matrix") -> "Matrix":
        return Matrix._raw(self.F, tuple(r + s for r, s in zip(self.rows, other.rows)))

    def vstack(self, other: "Matrix") -> "Matrix":
        return Matrix._raw(self.F, self.rows + other.rows)

    def map(self, fn) -> "Matrix":
        return Matrix(self.F, [[fn(x) for x in r] for r in self.rows])

    def to_strings(self) -> list[list[str]]:
        return [[self.F.format(x) for x in r] for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.F.format(x) for x in r) for r in self.rows)
        return f"Matrix[{self.F!r}]({body})"


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A.ncols != B.nrows:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    F = A.F
    if isinstance(F, PrimeField):
        p = F.p
        cls = F.element_class
        bcols = [[int(x) for x in c] for c in zip(*B.rows)]
        rows = []
        for r in A.rows:
            ri = [int(x) for x in r]
            rows.append(tuple(cls(sum(a * b for a, b in zip(ri, c))) for c in bcols))
        return Matrix._raw(F, tuple(rows))
    bcols = list(zip(*B.rows))
    zero = F.zero
    rows = []
    for r in A.rows:
        out = []
        for c in bcols:
            acc = zero
            for a, b in zip(r, c):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        rows.append(tuple(out))
    return Matrix._raw(F, tuple(rows))


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------


def _rref_mod_p(rows: list[list[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    rows = [r[:] for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c] % p
                if f:
                    ri = rows[i]
                    rows[i] = [(x - f * y) % p for x, y in zip(ri, pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def _rref_generic(F: Field, rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.one / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pr = rows[r]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(F: Field, rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns of a list of rows."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [], []
    if isinstance(F, PrimeField):
        ints = [[int(F(x)) for x in r] for r in rows]
        red, piv = _rref_mod_p(ints, F.p, ncols)
        cls = F.element_class
        return [[cls(x) for x in r] for r in red], piv
    return _rref_generic(F, [[F(x) for x in r] for r in rows], ncols)


def rank(M: Matrix | Sequence[Sequence], F: Field | None = None) -> int:
    if isinstance(M, Matrix):
        F, rows = M.F, M.rows
    else:
        rows = M
    if not rows:
        return 0
    _, piv = rref(F, rows)
    return len(piv)


def nullspace(M: Matrix) -> list[tuple]:
    """Basis of the right kernel {v : M v = 0}."""
    F = M.F
    n = M.ncols
    red, piv = rref(F, M.rows, n) if M.nrows else ([], [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [F.zero] * n
        v[f] = F.one
        for r, c in enumerate(piv):
            v[c] = -red[r][f]
        basis.append(tuple(v))
    return basis


def row_space_basis(F: Field, vectors: Sequence[Sequence]) -> list[tuple]:
    """Echelon basis of the span of ``vectors`` (canonical for the span)."""
    if not vectors:
        return []
    red, piv = rref(F, vectors)
    return [tuple(red[i]) for i in range(len(piv))]


def in_span(F: Field, basis: Sequence[Sequence], v: Sequence) -> bool:
    return rank([*basis, v], F) == rank(list(basis), F) if basis else all(not x for x in v)


def solve_square(F: Field, rows: Sequence[Sequence], rhs: Sequence) -> list:
    """Unique solution of a nonsingular square system."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(F, aug, n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [red[i][n] for i in range(n)]


def inverse(M: Matrix) -> Matrix:
    F = M.F
    n = M.nrows
    I = Matrix.identity(F, n)
    aug = [list(r) + list(s) for r, s in zip(M.rows, I.rows)]
    red, piv = rref(F, aug, n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw(F, tuple(tuple(r[n:]) for r in red))


def det(M: Matrix):
    """Determinant by Gaussian elimination (exact over any field)."""
    F = M.F
    n = M.nrows
    if n != M.ncols:
        raise ValueError("det of a non-square matrix")
    if n == 0:
        return F.one
    if isinstance(F, PrimeField):
        p = F.p
        a = [[int(x) for x in r] for r in M.rows]
        d = 1
        for c in range(n):
            piv = next((i for i in range(c, n) if a[i][c] % p), None)
            if piv is None:
                return F.zero
            if piv != c:
                a[c], a[piv] = a[piv], a[c]
                d = -d
            d = d * a[c][c] % p
            inv = pow(a[c][c], -1, p)
            for i in range(c + 1, n):
                f = a[i][c] * inv % p
                if f:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
        return F(d)
    a = [list(r) for r in M.rows]
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def det_rows(F: Field, rows: Sequence[Sequence]):
    return det(Matrix(F, rows))


def charpoly(M: Matrix) -> list:
    """Coefficients of det(X I - M), lowest degree first, monic (Berkowitz)."""
    F = M.F
    n = M.nrows
    if isinstance(F, PrimeField):
        p = F.p
        a = [[int(x) for x in r] for r in M.rows]
        coeffs = _berkowitz(a, lambda x: x % p, 0, 1)
        return [F(c) for c in coeffs]
    return _berkowitz([list(r) for r in M.rows], lambda x: x, F.zero, F.one)


def _berkowitz(a, red, zero, one) -> list:
    # Returns det(X I - A) as low-first coefficients.  Division free.
    n = len(a)
    # c holds the char poly of the leading r x r block, highest degree first
    c = [one]
    for r in range(n):
        # A_r = leading r x r, R = row r (first r entries), Ccol = column r, arr = a[r][r]
        if r == 0:
            c = [one, red(zero - a[0][0])]
            continue
        R = a[r][:r]
        Ccol = [a[i][r] for i in range(r)]
        arr = a[r][r]
        # Toeplitz column: [1, -arr, -R C, -R A C, -R A^2 C, ...]
        col = [one, red(zero - arr)]
        v = Ccol[:]
        for _ in range(r):
            s = zero
            for x, y in zip(R, v):
                s = s + x * y
            col.append(red(zero - s))
            # v <- A_r v
            v = [red(sum((a[i][j] * v[j] for j in range(r)), zero)) for i in range(r)]
        # new c = T * c, T lower-triangular Toeplitz of size (r+2) x (r+1)
        new = []
        for i in range(r + 2):
            s = zero
            for j in range(r + 1):
                if 0 <= i - j < len(col):
                    s = s + col[i - j] * c[j]
            new.append(red(s))
        c = new
    return list(reversed(c))


def kron_commutant_system(F: Field, gens: Sequence[Matrix]) -> Matrix:
    """Linear system whose kernel is {A : A g = g A for all g} (vec row-major)."""
    n = gens[0].nrows
    eqs = []
    for g in gens:
        G = g.rows
        # (A g - g A)[i][j] = sum_k A[i][k] g[k][j] - g[i][k] A[k][j]
        for i in range(n):
            for j in range(n):
                row = [F.zero] * (n * n)
                for k in range(n):
                    row[i * n + k] = row[i * n + k] + G[k][j]
                    row[k * n + j] = row[k * n + j] - G[i][k]
                eqs.append(row)
    return Matrix._raw(F, tuple(tuple(r) for r in eqs))


def is_symmetric(M: Matrix) -> bool:
    return M.rows == M.transpose().rows


def matrix_over(values: Sequence[Sequence], F: Field | None = None) -> Matrix:
    if F is None:
        F = field_of(values[0][0]) if values and values[0] else QQ
    return Matrix(F, values)
