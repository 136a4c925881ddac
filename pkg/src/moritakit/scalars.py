"""Exact ground fields (Q, GF(p), GF(p^n)) and explicit finite Galois extensions.

Field elements are plain Python values so the linear-algebra kernels stay cheap:

* ``Q``        -> :class:`fractions.Fraction`
* ``GF(p)``    -> ``int`` in ``range(p)``
* extensions   -> ``tuple`` of base-field values (coordinates in a fixed basis)

:class:`Scalar` wraps a value together with its field for user-facing arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, Sequence


class RingMismatch(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class InvalidRing(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Common interface; subclasses keep values canonical so ``==`` is equality."""

    kind = "abstract"
    order: int | None = None
    char = 0

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def is_finite(self) -> bool:
        return self.order is not None

    def elements(self) -> Iterator:
        raise InvalidRing(f"{self} is infinite")

    def random(self, rng):
        raise NotImplementedError

    def encode(self, a) -> Any:
        raise NotImplementedError

    def decode(self, obj) -> Any:
        raise NotImplementedError

    def spec(self) -> dict:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec() == other.spec()

    def __hash__(self):
        return hash(repr(self.spec()))


class RationalField(Field):
    kind = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def random(self, rng, height: int = 3):
        num = rng.randint(-height, height)
        return Fraction(num, rng.randint(1, height))

    def encode(self, a):
        a = Fraction(a)
        return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def decode(self, obj):
        return Fraction(obj)

    def spec(self):
        return {"ring": "Q"}

    def __repr__(self):
        return "Q"


class PrimeField(Field):
    kind = "GF"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise InvalidRing(f"{p} is not prime")
        self.p = self.char = self.order = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero(f"inverse of 0 in GF({self.p})")
        return pow(a, -1, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def elements(self):
        return iter(range(self.p))

    def random(self, rng):
        return rng.randrange(self.p)

    def encode(self, a):
        return int(a)

    def decode(self, obj):
        return int(obj) % self.p

    def spec(self):
        return {"ring": "GF", "p": self.p, "n": 1}

    def __repr__(self):
        return f"GF({self.p})"


class ExtensionField(Field):
    """A finite field extension of ``base`` given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``b_i * b_j``; ``unit`` is the
    coordinate vector of 1. ``modulus`` (low-to-high coefficients) is kept only
    for serialization of ``GF(p^n)``.
    """

    kind = "ext"

    def __init__(self, base: Field, table, unit, modulus: Sequence[int] | None = None):
        self.base = base
        self.n = len(unit)
        self.table = [[tuple(table[i][j]) for j in range(self.n)] for i in range(self.n)]
        self.unit = tuple(unit)
        self.modulus = list(modulus) if modulus is not None else None
        self.char = base.char
        self.order = base.order ** self.n if base.order is not None else None
        self._terms = [(i, j, k, self.table[i][j][k])
                       for i in range(self.n) for j in range(self.n) for k in range(self.n)
                       if not base.is_zero(self.table[i][j][k])]
        self._zero = tuple(base.zero() for _ in range(self.n))

    def zero(self):
        return self._zero

    def one(self):
        return self.unit

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        out = [B.zero()] * self.n
        for i, j, k, c in self._terms:
            ai = a[i]
            if B.is_zero(ai):
                continue
            bj = b[j]
            if B.is_zero(bj):
                continue
            out[k] = B.add(out[k], B.mul(B.mul(ai, bj), c))
        return tuple(out)

    def scale(self, k, a):
        """Multiply by an element of the base field."""
        return tuple(self.base.mul(k, x) for x in a)

    def embed(self, k):
        return self.scale(k, self.unit)

    def mult_matrix(self, a):
        """Base-field matrix of ``x -> a*x`` (columns = images of basis)."""
        cols = [self.mul(a, tuple(self.base.one() if t == j else self.base.zero()
                                  for t in range(self.n))) for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def inv(self, a):
        from . import linalg
        if self.is_zero(a):
            raise DivisionByZero("inverse of 0 in extension field")
        x = linalg.solve(self.base, self.mult_matrix(a), list(self.unit))
        if x is None:
            raise DivisionByZero("element is not invertible; the algebra is not a field")
        return tuple(x)

    def is_zero(self, a):
        return a == self._zero

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def power(self, a, e: int):
        out, base = self.unit, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def elements(self):
        return (tuple(v) for v in itertools.product(list(self.base.elements()), repeat=self.n))

    def random(self, rng):
        return tuple(self.base.random(rng) for _ in range(self.n))

    def encode(self, a):
        return [self.base.encode(x) for x in a]

    def decode(self, obj):
        if isinstance(obj, (int, str)) and not isinstance(obj, bool):
            return self.embed(self.base.decode(obj))
        return tuple(self.base.decode(x) for x in obj)

    def spec(self):
        if self.modulus is not None and isinstance(self.base, PrimeField):
            return {"ring": "GF", "p": self.base.p, "n": self.n, "modulus": list(self.modulus)}
        return {"ring": "ext", "base": self.base.spec(),
                "mult_table": [[self.base.encode(c) for c in row] for row in
                               [list(itertools.chain.from_iterable(r)) for r in self.table]],
                "unit": [self.base.encode(c) for c in self.unit]}

    def __repr__(self):
        if self.modulus is not None and isinstance(self.base, PrimeField):
            return f"GF({self.base.p}^{self.n})"
        return f"{self.base!r}[ext {self.n}]"


def _poly_table(p: int, modulus: Sequence[int]):
    """Structure constants of GF(p)[t]/(modulus) in the basis 1, t, ..., t^(n-1)."""
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p != 1:
        raise InvalidRing("modulus must be monic of degree >= 1")
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = [0] * (2 * n - 1)
            coeffs[i + j] = 1
            for d in range(2 * n - 2, n - 1, -1):
                c = coeffs[d]
                if c:
                    coeffs[d] = 0
                    for k in range(n):
                        coeffs[d - n + k] = (coeffs[d - n + k] - c * modulus[k]) % p
            row.append(tuple(coeffs[:n]))
        table.append(row)
    return table


def _irreducible(p: int, modulus: Sequence[int]) -> bool:
    # no factor of degree <= n/2: brute force over monic polynomials
    n = len(modulus) - 1
    for d in range(1, n // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            rem = [c % p for c in modulus]
            for top in range(n, d - 1, -1):
                c = rem[top]
                if c:
                    for k in range(d + 1):
                        rem[top - d + k] = (rem[top - d + k] - c * divisor[k]) % p
            if not any(rem[:d]):
                return False
    return True


def gf(p: int, n: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """``GF(p)`` or ``GF(p^n) = GF(p)[t]/(modulus)``."""
    base = PrimeField(p)
    if n == 1 and modulus is None:
        return base
    if modulus is None:
        raise InvalidRing("GF(p^n) needs an explicit modulus")
    modulus = [c % p for c in modulus]
    if len(modulus) != n + 1:
        raise InvalidRing(f"modulus must have {n + 1} coefficients")
    if not _irreducible(p, modulus):
        raise InvalidRing(f"modulus {modulus} is reducible over GF({p})")
    unit = tuple(1 if k == 0 else 0 for k in range(n))
    return ExtensionField(base, _poly_table(p, modulus), unit, modulus)


QQ = RationalField()


def field_from_spec(spec: dict) -> Field:
    ring = spec.get("ring")
    if ring == "Q":
        return QQ
    if ring == "GF":
        n = spec.get("n", 1)
        return gf(spec["p"], n, spec.get("modulus") if n > 1 else None)
    if ring == "ext":
        base = field_from_spec(spec["base"])
        unit = [base.decode(c) for c in spec["unit"]]
        n = len(unit)
        flat = spec["mult_table"]
        table = [[tuple(base.decode(c) for c in flat[i][j * n:(j + 1) * n]) for j in range(n)]
                 for i in range(n)]
        return ExtensionField(base, table, unit)
    raise InvalidRing(f"unknown ring spec {spec!r}")


@dataclass(frozen=True)
class Scalar:
    ring: Field
    value: Any

    def _check(self, other):
        if not isinstance(other, Scalar):
            return Scalar(self.ring, self.ring.from_int(other))
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    def __truediv__(self, other):
        other = self._check(other)
        return Scalar(self.ring, self.ring.div(self.value, other.value))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def inv(self):
        return Scalar(self.ring, self.ring.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, int):
            other = Scalar(self.ring, self.ring.from_int(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ring == other.ring and self.value == other.value

    def __hash__(self):
        return hash((repr(self.ring), self.value))

    def __repr__(self):
        return f"Scalar({self.ring!r}, {self.ring.encode(self.value)!r})"


class GaloisExtension:
    """L/K with L given by structure constants over K and G by explicit matrices.

    ``group[s]`` is the K-matrix of the automorphism number ``s`` acting on
    coordinate columns; index 0 must be the identity.
    """

    def __init__(self, base: Field, mult_table, unit, group, modulus=None):
        self.base = base
        self.field = ExtensionField(base, mult_table, unit, modulus)
        self.n = self.field.n
        self.group = [[list(row) for row in g] for g in group]
        self.order = len(self.group)
        self._index = {self._key(g): s for s, g in enumerate(self.group)}
        if len(self._index) != self.order:
            raise InvalidRing("repeated group element")
        self.mul_table = [[self._index.get(self._key(self._matmul(a, b)), -1)
                           for b in self.group] for a in self.group]
        if any(-1 in row for row in self.mul_table):
            raise InvalidRing("automorphism matrices are not closed under composition")
        self.inverse = [row.index(0) for row in self.mul_table]
        problems = self.validate()
        if problems:
            raise InvalidRing("; ".join(problems))

    @staticmethod
    def _key(m):
        return tuple(tuple(r) for r in m)

    def _matmul(self, a, b):
        from . import linalg
        return linalg.mat_mul(self.base, a, b)

    def validate(self) -> list[str]:
        from . import linalg
        K, L, n = self.base, self.field, self.n
        problems = []
        ident = linalg.identity(K, n)
        if self.group[0] != ident:
            problems.append("group[0] is not the identity")
        if self.order != n:
            problems.append(f"|G| = {self.order} but [L:K] = {n}")
        basis = [tuple(K.one() if t == i else K.zero() for t in range(n)) for i in range(n)]
        for s in range(self.order):
            if self.apply(s, L.one()) != L.one():
                problems.append(f"sigma_{s} does not fix 1")
            for a in basis:
                for b in basis:
                    if self.apply(s, L.mul(a, b)) != L.mul(self.apply(s, a), self.apply(s, b)):
                        problems.append(f"sigma_{s} is not multiplicative")
                        break
        stacked = [row for g in self.group[1:] for row in linalg.mat_sub(K, g, ident)]
        if stacked and len(linalg.nullspace(K, stacked)) != 1:
            problems.append("fixed field of G is not K")
        return problems

    def apply(self, s: int, x):
        if not 0 <= s < self.order:
            raise IndexError(f"group index {s} out of range")
        K = self.base
        g = self.group[s]
        out = []
        for row in g:
            acc = K.zero()
            for c, v in zip(row, x):
                if not K.is_zero(c) and not K.is_zero(v):
                    acc = K.add(acc, K.mul(c, v))
            out.append(acc)
        return tuple(out)

    def embed(self, k):
        return self.field.embed(k)

    def frobenius_matrix(self):
        """Matrix of x -> x^p (finite base field only)."""
        K, L = self.base, self.field
        p = K.char
        cols = [L.power(tuple(K.one() if t == j else K.zero() for t in range(self.n)), p)
                for j in range(self.n)]
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    def spec(self) -> dict:
        K = self.base
        n = self.n
        return {
            "base": K.spec(),
            "n": n,
            "mult_table": [[K.encode(c) for j in range(n) for c in self.field.table[i][j]]
                           for i in range(n)],
            "unit": [K.encode(c) for c in self.field.unit],
            "group": [[[K.encode(c) for c in row] for row in g] for g in self.group],
            **({"modulus": self.field.modulus} if self.field.modulus else {}),
        }

    @classmethod
    def from_spec(cls, spec: dict) -> "GaloisExtension":
        K = field_from_spec(spec["base"])
        unit = [K.decode(c) for c in spec["unit"]]
        n = len(unit)
        flat = spec["mult_table"]
        table = [[tuple(K.decode(c) for c in flat[i][j * n:(j + 1) * n]) for j in range(n)]
                 for i in range(n)]
        group = [[[K.decode(c) for c in row] for row in g] for g in spec["group"]]
        return cls(K, table, unit, group, spec.get("modulus"))

    def __repr__(self):
        return f"GaloisExtension({self.field!r}/{self.base!r})"


def gf_extension(p: int, n: int, modulus: Sequence[int]) -> GaloisExtension:
    """GF(p^n)/GF(p) with G generated by Frobenius (powers listed in order)."""
    L = gf(p, n, modulus)
    K = L.base
    from . import linalg
    cols = [L.power(tuple(1 if t == j else 0 for t in range(n)), p) for j in range(n)]
    frob = [[cols[j][i] for j in range(n)] for i in range(n)]
    group = [linalg.identity(K, n)]
    for _ in range(n - 1):
        group.append(linalg.mat_mul(K, frob, group[-1]))
    return GaloisExtension(K, L.table, L.unit, group, L.modulus)


def quadratic_extension(d: int) -> GaloisExtension:
    """Q(sqrt d)/Q in the basis 1, sqrt d; d must not be a square."""
    F = Fraction
    table = [[(F(1), F(0)), (F(0), F(1))], [(F(0), F(1)), (F(d), F(0))]]
    group = [[[F(1), F(0)], [F(0), F(1)]], [[F(1), F(0)], [F(0), F(-1)]]]
    return GaloisExtension(QQ, table, (F(1), F(0)), group)


def GF4() -> GaloisExtension:
    return gf_extension(2, 2, [1, 1, 1])


def GF9() -> GaloisExtension:
    return gf_extension(3, 2, [1, 0, 1])


def QI() -> GaloisExtension:
    return quadratic_extension(-1)
