"""Exact scalar fields: the rationals, prime fields and simple extensions.

Elements of the rationals are plain :class:`fractions.Fraction` values.  Prime
field elements are instances of a per-prime subclass of :class:`Fp`, so the
usual arithmetic operators work on them and mix with Python ints.  Extension
elements are reduced polynomial residues (:class:`ExtElement`).

All values are immutable.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class FieldError(ValueError):
    """Raised for unsupported fields or mismatched operands."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


_FRACTION_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_fraction(text: str) -> Fraction:
    """Parse a canonical exact string such as ``"-3/5"`` or ``"7"``."""
    m = _FRACTION_RE.match(text)
    if m is None:
        raise ValueError(f"not an exact rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


class Field:
    """Common interface of the scalar fields used throughout the package."""

    characteristic: int = 0
    #: number of elements, ``None`` for infinite fields
    order: int | None = None

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> Iterator:
        raise FieldError(f"{self} is not finite")

    def contains(self, x) -> bool:
        raise NotImplementedError

    def sqrt(self, a):
        raise FieldError(f"square roots are not supported over {self}")

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def canonical_key(self, x):
        """Sort key of the canonical representative of ``x``."""
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        return self(parse_fraction(text))


class RationalField(Field):
    characteristic = 0
    order = None

    def __call__(self, x) -> Fraction:
        if isinstance(x, (Fp, ExtElement)):
            raise FieldError(f"cannot coerce {x!r} into QQ")
        if isinstance(x, str):
            return parse_fraction(x)
        return Fraction(x)

    def contains(self, x) -> bool:
        return isinstance(x, (int, Fraction)) and not isinstance(x, bool)

    def random_element(self, rng: random.Random, height: int = 9) -> Fraction:
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def sqrt(self, a) -> Fraction | None:
        a = Fraction(a)
        if a < 0:
            return None
        n, d = _isqrt_exact(a.numerator), _isqrt_exact(a.denominator)
        if n is None or d is None:
            return None
        return Fraction(n, d)

    def canonical_key(self, x):
        return Fraction(x)

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


QQ = RationalField()


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = _isqrt(n)
    return r if r * r == n else None


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


class Fp:
    """Element of a prime field; concrete subclasses fix ``p``."""

    __slots__ = ("v",)
    p: int = 0
    field: "PrimeField"

    def __init__(self, v: int):
        self.v = v % self.p

    def _coerce(self, o):
        t = type(o)
        if t is type(self):
            return o.v
        if t is int:
            return o
        if t is Fraction:
            return o.numerator * pow(o.denominator, -1, self.p)
        if isinstance(o, Fp):
            raise FieldError(f"mixing GF({self.p}) with GF({o.p})")
        return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return type(self)(self.v + o)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return type(self)(self.v - o)

    def __rsub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return type(self)(o - self.v)

    def __mul__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return type(self)(self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return type(self)(self.v * pow(o, -1, self.p))

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return type(self)(o * pow(self.v, -1, self.p))

    def __neg__(self):
        return type(self)(-self.v)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            if self.v == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.p})")
            return type(self)(pow(pow(self.v, -1, self.p), -n, self.p))
        return type(self)(pow(self.v, n, self.p))

    def __eq__(self, o) -> bool:
        t = type(o)
        if t is type(self):
            return self.v == o.v
        if t is int:
            return (self.v - o) % self.p == 0
        if t is Fraction:
            return self.v == self._coerce(o) % self.p
        return False

    def __hash__(self) -> int:
        return hash((self.p, self.v))

    def __bool__(self) -> bool:
        return self.v != 0

    def __int__(self) -> int:
        return self.v

    def __repr__(self) -> str:
        return f"{self.v}"


class PrimeField(Field):
    """The field with ``p`` elements, ``p`` prime."""

    def __init__(self, p: int, element_class: type):
        self.p = p
        self.characteristic = p
        self.order = p
        self.element_class = element_class

    def __call__(self, x):
        t = type(x)
        if t is self.element_class:
            return x
        if t is int or t is bool:
            return self.element_class(int(x))
        if t is Fraction:
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return self.element_class(x.numerator * pow(x.denominator, -1, self.p))
        if t is str:
            return self(parse_fraction(x))
        if isinstance(x, Fp):
            raise FieldError(f"cannot coerce GF({x.p}) element into GF({self.p})")
        raise FieldError(f"cannot coerce {x!r} into GF({self.p})")

    def contains(self, x) -> bool:
        return type(x) is self.element_class

    def elements(self) -> Iterator[Fp]:
        cls = self.element_class
        return (cls(v) for v in range(self.p))

    def random_element(self, rng: random.Random) -> Fp:
        return self.element_class(rng.randrange(self.p))

    def sqrt(self, a) -> Fp | None:
        a = self(a)
        r = sqrt_mod_p(a.v, self.p)
        return None if r is None else self.element_class(r)

    def canonical_key(self, x) -> int:
        return self(x).v

    def format(self, x) -> str:
        return str(self(x).v)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def __reduce__(self):
        return (GF, (self.p,))


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """Return the (cached) prime field of order ``p``.  Requires ``p >= 5``."""
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if p in (2, 3):
        raise FieldError("characteristic 2 and 3 are not supported (1/2 and 1/3 are needed)")
    cls = type(f"GF{p}", (Fp,), {"__slots__": (), "p": p})
    field = PrimeField(p, cls)
    cls.field = field
    cls.__reduce__ = lambda self: (_fp_element, (self.p, self.v))
    return field


def _fp_element(p: int, v: int) -> Fp:
    return GF(p)(v)


def field_of(x) -> Field:
    """Return the field an element belongs to."""
    if isinstance(x, Fp):
        return x.field
    if isinstance(x, ExtElement):
        return x.parent
    if isinstance(x, (int, Fraction)):
        return QQ
    raise FieldError(f"not a scalar: {x!r}")


# ---------------------------------------------------------------------------
# Number theory helpers on prime fields
# ---------------------------------------------------------------------------


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime ``p``."""
    if not is_prime(p) or p < 5:
        raise FieldError(f"legendre requires a prime p >= 5, got {p}")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def sqrt_mod_p(a: int, p: int) -> int | None:
    """Smaller of the two square roots of ``a`` mod ``p`` (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# Simple algebraic extensions
# ---------------------------------------------------------------------------


class ExtElement:
    """Residue class of a polynomial modulo the defining minimal polynomial."""

    __slots__ = ("parent", "c")

    def __init__(self, parent: "ExtensionField", coeffs: tuple):
        self.parent = parent
        self.c = coeffs

    def _coerce(self, o):
        if isinstance(o, ExtElement):
            if o.parent is not self.parent and o.parent != self.parent:
                raise FieldError("mixing elements of different extensions")
            return o
        try:
            return self.parent(o)
        except FieldError:
            return NotImplemented

    def __add__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return ExtElement(self.parent, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return ExtElement(self.parent, tuple(-x for x in self.c))

    def __sub__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return ExtElement(self.parent, tuple(x - y for x, y in zip(self.c, o.c)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self.parent._mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return self * self.parent._inv(o)

    def __rtruediv__(self, o):
        o = self._coerce(o)
        if o is NotImplemented:
            return o
        return o * self.parent._inv(self)

    def __pow__(self, n: int):
        if n < 0:
            return self.parent._inv(self) ** (-n)
        result, base = self.parent.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, o) -> bool:
        if not isinstance(o, ExtElement):
            try:
                o = self.parent(o)
            except (FieldError, ZeroDivisionError, TypeError):
                return False
        return self.c == o.c

    def __hash__(self) -> int:
        if all(x == 0 for x in self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __bool__(self) -> bool:
        return any(bool(x) for x in self.c)

    def __repr__(self) -> str:
        return self.parent.format(self)


class ExtensionField(Field):
    """``base[X]/(minpoly)`` for a monic irreducible ``minpoly`` of degree 2 or 3."""

    def __init__(self, base: Field, minpoly: Sequence, name: str = "X"):
        coeffs = tuple(base(c) for c in minpoly)
        if coeffs[-1] != base.one:
            raise FieldError("minimal polynomial must be monic")
        self.base = base
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.name = name
        self.characteristic = base.characteristic
        self.order = None if base.order is None else base.order ** self.degree
        if self.degree < 1:
            raise FieldError("minimal polynomial must have positive degree")
        if self.degree > 3:
            raise FieldError("only extensions of degree <= 3 are supported")
        if _has_root(base, coeffs):
            raise FieldError(f"{self._poly_str()} is reducible over {base}")
        self.gen = ExtElement(self, tuple(base.one if i == 1 else base.zero for i in range(self.degree))) \
            if self.degree > 1 else None

    def _poly_str(self) -> str:
        return " + ".join(f"{c}*{self.name}^{i}" for i, c in enumerate(self.minpoly) if c)

    def __call__(self, x) -> ExtElement:
        if isinstance(x, ExtElement):
            if x.parent == self:
                return x
            raise FieldError("element from a different extension")
        b = self.base(x)
        return ExtElement(self, (b,) + (self.base.zero,) * (self.degree - 1))

    def from_coeffs(self, coeffs: Sequence) -> ExtElement:
        cs = [self.base(c) for c in coeffs]
        if len(cs) > self.degree:
            return self._reduce(cs)
        cs += [self.base.zero] * (self.degree - len(cs))
        return ExtElement(self, tuple(cs))

    def _reduce(self, cs: list) -> ExtElement:
        d = self.degree
        m = self.minpoly
        cs = list(cs)
        for k in range(len(cs) - 1, d - 1, -1):
            lead = cs[k]
            if lead:
                for i in range(d):
                    cs[k - d + i] = cs[k - d + i] - lead * m[i]
            cs[k] = self.base.zero
        cs = cs[:d] + [self.base.zero] * max(0, d - len(cs))
        return ExtElement(self, tuple(cs))

    def _mul(self, x: ExtElement, y: ExtElement) -> ExtElement:
        d = self.degree
        prod = [self.base.zero] * (2 * d - 1)
        for i, a in enumerate(x.c):
            if a:
                for j, b in enumerate(y.c):
                    prod[i + j] = prod[i + j] + a * b
        return self._reduce(prod)

    def _inv(self, x: ExtElement) -> ExtElement:
        if not x:
            raise ZeroDivisionError("division by zero in extension field")
        # Solve x*y = 1 as a linear system over the base field.
        d = self.degree
        cols = []
        for j in range(d):
            e = self.from_coeffs([self.base.one if i == j else self.base.zero for i in range(d)])
            cols.append(self._mul(x, e).c)
        from .linalg import solve_square

        rows = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [self.base.one] + [self.base.zero] * (d - 1)
        sol = solve_square(self.base, rows, rhs)
        return ExtElement(self, tuple(sol))

    def contains(self, x) -> bool:
        return isinstance(x, ExtElement) and x.parent == self

    def elements(self) -> Iterator[ExtElement]:
        import itertools

        base_elems = list(self.base.elements())
        for cs in itertools.product(base_elems, repeat=self.degree):
            yield ExtElement(self, tuple(cs))

    def random_element(self, rng: random.Random) -> ExtElement:
        return ExtElement(self, tuple(self.base.random_element(rng) for _ in range(self.degree)))

    def canonical_key(self, x):
        x = self(x)
        return tuple(reversed([self.base.canonical_key(c) for c in x.c]))

    def sqrt(self, a) -> ExtElement | None:
        a = self(a)
        if not a:
            return a
        if self.is_finite:
            return _finite_field_sqrt(self, a)
        if isinstance(self.base, RationalField) and self.degree == 2:
            return _quadratic_rational_sqrt(self, a)
        raise FieldError(f"square roots are not supported over {self}")

    def format(self, x) -> str:
        terms = []
        for i, c in enumerate(x.c):
            if not c:
                continue
            s = self.base.format(c)
            if i == 0:
                terms.append(s)
            elif i == 1:
                terms.append(f"{s}*{self.name}")
            else:
                terms.append(f"{s}*{self.name}^{i}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"{self.base!r}[{self.name}]/({self._poly_str()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, ExtensionField) and other.base == self.base and other.minpoly == self.minpoly

    def __hash__(self) -> int:
        return hash((self.base, self.minpoly))


def _has_root(base: Field, coeffs: tuple) -> bool:
    def ev(x):
        acc = base.zero
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    if base.is_finite:
        return any(not ev(x) for x in base.elements())
    if isinstance(base, RationalField):
        # rational root test, after clearing denominators
        import math

        den = 1
        for c in coeffs:
            den = den * Fraction(c).denominator // math.gcd(den, Fraction(c).denominator)
        ints = [int(Fraction(c) * den) for c in coeffs]
        if ints[0] == 0:
            return True
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for s in (1, -1):
                    if not ev(Fraction(s * p, q)):
                        return True
        return False
    raise FieldError(f"cannot test irreducibility over {base}")


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _finite_field_sqrt(F: Field, a):
    q = F.order
    if pow_elem(a, (q - 1) // 2) != F.one:
        return None
    # Tonelli-Shanks in the multiplicative group of order q - 1
    s, t = 0, q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    z = next(x for x in F.elements() if x and pow_elem(x, (q - 1) // 2) != F.one)
    m, c, tt, r = s, pow_elem(z, t), pow_elem(a, t), pow_elem(a, (t + 1) // 2)
    while tt != F.one:
        i, t2 = 0, tt
        while t2 != F.one:
            t2 = t2 * t2
            i += 1
        b = pow_elem(c, 1 << (m - i - 1))
        m, c = i, b * b
        tt, r = tt * c, r * b
    other = -r
    return min((r, other), key=F.canonical_key)


def _quadratic_rational_sqrt(F: ExtensionField, a: ExtElement) -> ExtElement | None:
    # minpoly X^2 + m1 X + m0; only the pure case X^2 - d is needed here
    m0, m1 = F.minpoly[0], F.minpoly[1]
    if m1 != 0:
        raise FieldError("square roots need a minimal polynomial of the form X^2 - d")
    d = -m0
    a0, a1 = a.c
    cands = []
    if a1 == 0:
        r = QQ.sqrt(a0)
        if r is not None:
            cands.append(F.from_coeffs([r, 0]))
        r = QQ.sqrt(a0 / d)
        if r is not None:
            cands.append(F.from_coeffs([0, r]))
    else:
        disc = QQ.sqrt(a0 * a0 - d * a1 * a1)
        if disc is not None:
            for x2 in ((a0 + disc) / 2, (a0 - disc) / 2):
                x = QQ.sqrt(x2)
                if x:
                    cands.append(F.from_coeffs([x, a1 / (2 * x)]))
    for r in cands:
        if r * r == a:
            return r
    return None


def pow_elem(x, n: int):
    if n < 0:
        return pow_elem(1 / x, -n)
    result = field_of(x).one
    while n:
        if n & 1:
            result = result * x
        x = x * x
        n >>= 1
    return result


def sqrt_in_field(a, field: Field | None = None):
    """Square root of ``a`` in its field, or ``None`` when none exists.

    Over finite fields the root with the smaller canonical representative is
    returned; over the rationals the nonnegative root.
    """
    F = field if field is not None else field_of(a)
    return F.sqrt(F(a))


def minpoly_roots_mod_p(coeffs: Sequence[int], p: int) -> list[Fp]:
    """All roots in GF(p) of an integer polynomial given low degree first."""
    F = GF(p)
    cs = [F(c) for c in coeffs]
    roots = []
    for x in F.elements():
        acc = F.zero
        for c in reversed(cs):
            acc = acc * x + c
        if not acc:
            roots.append(x)
    return sorted(roots, key=lambda r: r.v)


def make_field(spec) -> Field:
    """Build a field from ``"rational"``/``"QQ"``, an int prime, or ``{"p": prime}``."""
    if isinstance(spec, Field):
        return spec
    if spec in ("rational", "QQ", "Q", None, 0):
        return QQ
    if isinstance(spec, dict) and "p" in spec:
        return GF(int(spec["p"]))
    if isinstance(spec, int):
        return GF(spec)
    raise FieldError(f"unrecognised field spec {spec!r}")


def field_spec(F: Field):
    """Inverse of :func:`make_field` for the JSON-serialisable fields."""
    if isinstance(F, RationalField):
        return "rational"
    if isinstance(F, PrimeField):
        return {"p": F.p}
    raise FieldError(f"{F!r} has no JSON spec")


def as_elements(F: Field, values: Iterable) -> tuple:
    return tuple(F(v) for v in values)
