"""Dense univariate polynomials over a scalar field."""

from __future__ import annotations

from typing import Sequence

from .scalar import QQ, Field


class Poly:
    """Polynomial with coefficients stored lowest degree first.

    The zero polynomial has an empty coefficient tuple; there are never
    trailing zeros, so equality is coefficientwise.
    """

    __slots__ = ("F", "c")

    def __init__(self, F: Field, coeffs: Sequence = ()):
        cs = [F(x) for x in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.F = F
        self.c = tuple(cs)

    @classmethod
    def x(cls, F: Field) -> "Poly":
        return cls(F, [0, 1])

    @classmethod
    def from_high(cls, F: Field, coeffs: Sequence) -> "Poly":
        """Build from coefficients listed highest degree first."""
        return cls(F, list(reversed(list(coeffs))))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    @property
    def lead(self):
        return self.c[-1] if self.c else self.F.zero

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self.F.zero

    def _lift(self, o) -> "Poly":
        if isinstance(o, Poly):
            return o
        return Poly(self.F, [o])

    def __add__(self, o) -> "Poly":
        o = self._lift(o)
        n = max(len(self.c), len(o.c))
        return Poly(self.F, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.F, [-x for x in self.c])

    def __sub__(self, o) -> "Poly":
        return self + (-self._lift(o))

    def __rsub__(self, o) -> "Poly":
        return self._lift(o) - self

    def __mul__(self, o) -> "Poly":
        o = self._lift(o)
        if not self.c or not o.c:
            return Poly(self.F)
        out = [self.F.zero] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        out[i + j] = out[i + j] + a * b
        return Poly(self.F, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        result = Poly(self.F, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, d: "Poly") -> tuple["Poly", "Poly"]:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [self.F.zero] * max(0, len(rem) - len(d.c) + 1)
        inv_lead = self.F.one / d.lead
        dd = d.degree
        for k in range(len(rem) - 1, dd - 1, -1):
            f = rem[k] * inv_lead
            if f:
                q[k - dd] = f
                for i, b in enumerate(d.c):
                    rem[k - dd + i] = rem[k - dd + i] - f * b
        return Poly(self.F, q), Poly(self.F, rem[:dd] if dd > 0 else [])

    def __floordiv__(self, d: "Poly") -> "Poly":
        return self.divmod(d)[0]

    def __mod__(self, d: "Poly") -> "Poly":
        return self.divmod(d)[1]

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def __call__(self, x):
        acc = self.F.zero
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def monic(self) -> "Poly":
        return Poly(self.F, [x / self.lead for x in self.c])

    def derivative(self) -> "Poly":
        return Poly(self.F, [i * self.c[i] for i in range(1, len(self.c))])

    def __eq__(self, o) -> bool:
        if isinstance(o, Poly):
            return self.c == o.c
        return self.c == Poly(self.F, [o]).c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return poly_str(self)

    def high_first(self) -> list:
        return list(reversed(self.c))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_str(f: Poly, var: str = "X") -> str:
    if f.is_zero():
        return "0"
    terms = []
    for i in range(f.degree, -1, -1):
        c = f.c[i]
        if not c:
            continue
        s = f.F.format(c)
        if i == 0:
            terms.append(s)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if s == "1":
            terms.append(mono)
        elif s == "-1":
            terms.append(f"-{mono}")
        else:
            terms.append(f"({s})*{mono}" if " " in s or "/" in s else f"{s}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def poly_divides_cyclotomic_power(f: Poly, n: int, k: int) -> bool:
    """True iff ``f`` divides ``(X^n - 1)^k`` over its coefficient field."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    F = f.F
    base = Poly(F, [-1] + [0] * (n - 1) + [1])
    # reduce powers modulo f instead of expanding (X^n - 1)^k
    acc = Poly(F, [1])
    b = base % f
    for _ in range(k):
        acc = (acc * b) % f
    return acc.is_zero()


def int_poly(coeffs_high: Sequence[int], F: Field = QQ) -> Poly:
    return Poly.from_high(F, coeffs_high)
