"""Truncated power series in ``t`` with Laurent polynomial coefficients.

A :class:`Series` stores, for each ``t``-degree ``n < N``, a Laurent
polynomial in one or more auxiliary variables (``q``, optionally ``z``) as a
dict from exponent tuples to exact coefficients.  Degrees at or beyond the
truncation order are absent, not zero: comparing series with different
truncation orders is an error.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


class TruncationError(ValueError):
    """Raised when a requested coefficient lies beyond the truncation order."""


class Series:
    __slots__ = ("vars", "N", "terms")

    def __init__(self, vars: Sequence[str], N: int, terms: Sequence[dict] | None = None):
        self.vars = tuple(vars)
        self.N = N
        if terms is None:
            terms = [{} for _ in range(N)]
        if len(terms) != N:
            raise ValueError("need exactly one Laurent polynomial per t-degree")
        self.terms = tuple({e: c for e, c in d.items() if c} for d in terms)

    @classmethod
    def one(cls, vars: Sequence[str], N: int) -> "Series":
        zero = (0,) * len(vars)
        return cls(vars, N, [{zero: Fraction(1)} if n == 0 else {} for n in range(N)])

    @classmethod
    def monomial(cls, vars: Sequence[str], N: int, tdeg: int, exps: Sequence[int], coeff=1) -> "Series":
        terms = [{} for _ in range(N)]
        if tdeg < N:
            terms[tdeg] = {tuple(exps): Fraction(coeff)}
        return cls(vars, N, terms)

    def _check(self, other: "Series"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
        if self.N != other.N:
            raise TruncationError(f"truncation mismatch {self.N} vs {other.N}")

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        out = []
        for a, b in zip(self.terms, other.terms):
            d = dict(a)
            for e, c in b.items():
                d[e] = d.get(e, 0) + c
            out.append(d)
        return Series(self.vars, self.N, out)

    def __neg__(self) -> "Series":
        return Series(self.vars, self.N, [{e: -c for e, c in d.items()} for d in self.terms])

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other: "Series") -> "Series":
        self._check(other)
        N = self.N
        out = [{} for _ in range(N)]
        for i, a in enumerate(self.terms):
            if not a:
                continue
            for j in range(N - i):
                b = other.terms[j]
                if not b:
                    continue
                d = out[i + j]
                for ea, ca in a.items():
                    for eb, cb in b.items():
                        e = tuple(x + y for x, y in zip(ea, eb))
                        d[e] = d.get(e, 0) + ca * cb
        return Series(self.vars, N, out)

    def truncate(self, N: int) -> "Series":
        if N > self.N:
            raise TruncationError(f"cannot extend truncation from {self.N} to {N}")
        return Series(self.vars, N, self.terms[:N])

    def shift_laurent(self, exps: Sequence[int], coeff=1) -> "Series":
        """Multiply by the ``t``-free monomial ``coeff * vars^exps``."""
        out = [{tuple(x + y for x, y in zip(e, exps)): c * coeff for e, c in d.items()} for d in self.terms]
        return Series(self.vars, self.N, out)

    def divide_geometric(self, exps: Sequence[int], coeff=1) -> "Series":
        """Multiply by ``1/(1 - coeff * vars^exps * t)``.

        Uses the recurrence g_n = f_n + m g_{n-1}, so the expansion is exact
        through the truncation order and nothing past it is ever formed.
        """
        exps = tuple(exps)
        out = []
        prev: dict = {}
        for n in range(self.N):
            d = dict(self.terms[n])
            for e, c in prev.items():
                ne = tuple(x + y for x, y in zip(e, exps))
                d[ne] = d.get(ne, 0) + coeff * c
            d = {e: c for e, c in d.items() if c}
            out.append(d)
            prev = d
        return Series(self.vars, self.N, out)

    def coefficient(self, tdeg: int, exps: Sequence[int] | None = None):
        if tdeg >= self.N:
            raise TruncationError(f"t^{tdeg} is beyond truncation order {self.N}")
        if exps is None:
            exps = (0,) * len(self.vars)
        return self.terms[tdeg].get(tuple(exps), Fraction(0))

    def laurent_part(self, tdeg: int) -> dict:
        if tdeg >= self.N:
            raise TruncationError(f"t^{tdeg} is beyond truncation order {self.N}")
        return dict(self.terms[tdeg])

    def extract(self, index: int, exponent: int) -> "Series":
        """Coefficient of ``vars[index]^exponent``, as a series in the other variables."""
        vars = self.vars[:index] + self.vars[index + 1:]
        out = []
        for d in self.terms:
            nd = {}
            for e, c in d.items():
                if e[index] == exponent:
                    ne = e[:index] + e[index + 1:]
                    nd[ne] = nd.get(ne, 0) + c
            out.append(nd)
        return Series(vars, self.N, out)

    def t_coefficients(self) -> list:
        """List of scalar coefficients for a series with no Laurent variables."""
        if self.vars:
            raise ValueError("series still has Laurent variables " + ",".join(self.vars))
        return [d.get((), Fraction(0)) for d in self.terms]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __repr__(self) -> str:
        return f"Series(vars={self.vars}, N={self.N}, nonzero_degrees={[n for n, d in enumerate(self.terms) if d]})"


def geometric_product(vars: Sequence[str], N: int, factors: Sequence[Sequence[int]]) -> Series:
    """Expand prod 1/(1 - vars^e t) over the exponent tuples ``factors``."""
    s = Series.one(vars, N)
    for e in factors:
        s = s.divide_geometric(e)
    return s


def laurent_residue_extract(H: Series, var: str = "q", needed: int | None = None) -> Series:
    """Coefficient of q^-1 in -(q - q^-1) H, i.e. [q^0]H - [q^-2]H.

    ``needed`` is the number of t-degrees the caller requires; a series
    truncated below that raises :class:`TruncationError`.
    """
    if needed is not None and needed > H.N:
        raise TruncationError(f"series truncated at t^{H.N}, {needed} degrees requested")
    idx = H.vars.index(var)
    return H.extract(idx, 0) - H.extract(idx, -2)
