"""Exact arithmetic over GF(p), GF(p^k) and the rationals.

A :class:`Field` works on *raw* element values so that matrix code can run
tight loops without wrapper objects:

* prime fields use residues ``0 <= v < p``;
* extension fields use the integer code ``c0 + c1*p + ... + c_{k-1}*p^(k-1)``
  of the coefficient vector (low degree first), reduced modulo the field's
  monic modulus polynomial;
* the rational field uses :class:`fractions.Fraction`.

:class:`Scalar` is the user-facing element type that pairs a raw value with
its field.
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from typing import Iterable, Sequence

PRIME = "prime"
EXTENSION = "extension"
RATIONAL = "rational"

# full add/mul tables are built for extension fields up to this order
_TABLE_LIMIT = 256


class FieldError(ValueError):
    """Invalid field description or element literal."""


class FieldMismatchError(FieldError):
    """Operands belong to different fields."""


class NotEnumerableError(FieldError):
    """The field is infinite."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# -- polynomials over GF(p) as coefficient lists, low degree first ----------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _polymod_p(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` by the monic polynomial ``m`` over GF(p)."""
    r = _trim([x % p for x in a])
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        lead = r[-1]
        shift = len(r) - 1 - dm
        for i, mc in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * mc) % p
        _trim(r)
    return r


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive irreducibility test for a monic polynomial over GF(p).

    Tries every monic divisor of degree up to ``deg // 2``; meant for the
    small degrees used here.
    """
    k = len(modulus) - 1
    if k < 1 or modulus[-1] % p != 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            divisor = list(low) + [1]
            if not _polymod_p(modulus, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``k`` over GF(p).

    Coefficients are compared low degree first.
    """
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(low) + (1,)
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """An exact field: GF(p), GF(p^k) = GF(p)[t]/(modulus), or Q.

    Instances are immutable value objects; equality compares the defining
    data. Arithmetic methods take and return raw values (see module docs).
    """

    __slots__ = (
        "kind", "p", "k", "modulus", "q",
        "add", "sub", "mul", "neg", "inv",
        "_add_t", "_mul_t", "_neg_t", "_inv_t", "_exp", "_log",
    )

    def __init__(self, kind: str, p: int = 0, k: int = 1,
                 modulus: Sequence[int] | None = None):
        if kind == RATIONAL:
            p, k, modulus = 0, 1, None
        elif kind in (PRIME, EXTENSION):
            if not is_prime(p):
                raise FieldError(f"{p} is not prime")
            if k < 1:
                raise FieldError("extension degree must be >= 1")
            if kind == PRIME or k == 1:
                kind, k, modulus = PRIME, 1, None
            else:
                if modulus is None:
                    modulus = smallest_irreducible(p, k)
                modulus = tuple(int(c) % p for c in modulus)
                if len(modulus) != k + 1:
                    raise FieldError(f"modulus must have {k + 1} coefficients")
                if modulus[-1] != 1:
                    raise FieldError("modulus must be monic")
                if not is_irreducible(modulus, p):
                    raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        else:
            raise FieldError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.p = p
        self.k = k
        self.modulus = modulus
        self.q = p ** k if p else None
        self._bind()

    # -- construction helpers ------------------------------------------------

    def _bind(self) -> None:
        if self.kind == PRIME:
            p = self.p
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: (a * b) % p
            self.neg = lambda a: (-a) % p
            self.inv = self._inv_prime
        elif self.kind == RATIONAL:
            self.add = lambda a, b: a + b
            self.sub = lambda a, b: a - b
            self.mul = lambda a, b: a * b
            self.neg = lambda a: -a
            self.inv = self._inv_rational
        else:
            self._build_log_tables()
            q = self.q
            if q <= _TABLE_LIMIT:
                add_t = [[self._add_digits(a, b) for b in range(q)] for a in range(q)]
                mul_t = [[self._mul_log(a, b) for b in range(q)] for a in range(q)]
                self._add_t, self._mul_t = add_t, mul_t
                self.add = lambda a, b: add_t[a][b]
                self.mul = lambda a, b: mul_t[a][b]
            else:
                self._add_t = self._mul_t = None
                self.add = self._add_digits
                self.mul = self._mul_log
            neg_t = [self._neg_digits(a) for a in range(q)]
            inv_t = [0] + [self._exp[(q - 1 - self._log[a]) % (q - 1)] for a in range(1, q)]
            self._neg_t, self._inv_t = neg_t, inv_t
            self.neg = lambda a: neg_t[a]
            self.sub = lambda a, b: self.add(a, neg_t[b])
            self.inv = self._inv_ext

    def _digits(self, a: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            out.append(a % p)
            a //= p
        return out

    def _code(self, digits: Iterable[int]) -> int:
        v = 0
        for c in reversed(list(digits)):
            v = v * self.p + c
        return v

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        return self._code((x + y) % p for x, y in zip(self._digits(a), self._digits(b)))

    def _neg_digits(self, a: int) -> int:
        p = self.p
        return self._code((-x) % p for x in self._digits(a))

    def _mul_poly(self, a: int, b: int) -> int:
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        r = _polymod_p(prod, self.modulus, self.p)
        return self._code(r + [0] * (self.k - len(r)))

    def _build_log_tables(self) -> None:
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = g
            while x != 1:
                exp.append(x)
                x = self._mul_poly(x, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - the multiplicative group is cyclic
            raise FieldError("no primitive element found")
        log = [0] * q
        for i, x in enumerate(exp):
            log[x] = i
        self._exp, self._log = exp, log

    def _mul_log(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def _inv_prime(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def _inv_rational(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def _inv_ext(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._inv_t[a]

    # -- basic properties ------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONAL

    @property
    def zero(self):
        return Fraction(0) if self.kind == RATIONAL else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == RATIONAL else 1

    def _key(self):
        return (self.kind, self.p, self.k, self.modulus)

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Field({self.descriptor()!r})"

    def descriptor(self) -> str:
        if self.kind == RATIONAL:
            return "q"
        if self.kind == PRIME:
            return f"gf {self.p}"
        return f"gf {self.p} {self.k} " + ",".join(map(str, self.modulus))

    # -- derived arithmetic ----------------------------------------------------

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def axpy(self, y: Sequence, a, x: Sequence) -> list:
        """Return ``y + a*x`` componentwise."""
        if self.kind == PRIME:
            p = self.p
            return [(u + a * v) % p for u, v in zip(y, x)]
        if self.kind == RATIONAL:
            return [u + a * v for u, v in zip(y, x)]
        if self._add_t is not None:
            add_t, row = self._add_t, self._mul_t[a]
            return [add_t[u][row[v]] for u, v in zip(y, x)]
        add, mul = self.add, self.mul
        return [add(u, mul(a, v)) for u, v in zip(y, x)]

    def scale_vec(self, a, x: Sequence) -> list:
        if self.kind == PRIME:
            p = self.p
            return [(a * v) % p for v in x]
        if self.kind == RATIONAL:
            return [a * v for v in x]
        mul = self.mul
        return [mul(a, v) for v in x]

    def dot(self, x: Sequence, y: Sequence):
        if self.kind == PRIME:
            return sum(u * v for u, v in zip(x, y)) % self.p
        if self.kind == RATIONAL:
            return sum((u * v for u, v in zip(x, y)), Fraction(0))
        add, mul = self.add, self.mul
        acc = 0
        for u, v in zip(x, y):
            if u and v:
                acc = add(acc, mul(u, v))
        return acc

    def sum(self, values: Iterable):
        if self.kind == PRIME:
            return sum(values) % self.p
        if self.kind == RATIONAL:
            return sum(values, Fraction(0))
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    # -- conversion ------------------------------------------------------------

    def coerce(self, x):
        """Map an int, Fraction, coefficient sequence or Scalar to a raw value."""
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatchError(f"{x!r} does not belong to {self!r}")
            return x.value
        if self.kind == RATIONAL:
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise FieldError(f"cannot interpret {x!r} as a rational")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.p, x.denominator % self.p)
        if isinstance(x, (tuple, list)) and self.kind == EXTENSION:
            coeffs = [int(c) % self.p for c in x]
            r = _polymod_p(coeffs, self.modulus, self.p) if len(coeffs) > self.k else _trim(coeffs)
            return self._code(r + [0] * (self.k - len(r)))
        raise FieldError(f"cannot interpret {x!r} in {self!r}")

    def from_int(self, v: int):
        """Raw value for the integer ``v`` viewed in the prime subfield."""
        return Fraction(v) if self.kind == RATIONAL else v % self.p

    def coefficients(self, a) -> tuple[int, ...]:
        """Coefficient vector (low degree first) of an extension element."""
        return tuple(self._digits(a))

    def is_canonical(self, a) -> bool:
        if self.kind == RATIONAL:
            return isinstance(a, Fraction)
        return isinstance(a, int) and 0 <= a < self.q

    def format_element(self, a) -> str:
        if self.kind == PRIME:
            return str(a)
        if self.kind == RATIONAL:
            return f"{a.numerator}/{a.denominator}"
        return ",".join(map(str, self._digits(a)))

    def parse_element(self, text: str):
        text = text.strip()
        try:
            if self.kind == RATIONAL:
                return Fraction(text)
            if self.kind == PRIME:
                if "/" in text:
                    return self.coerce(Fraction(text))
                return int(text) % self.p
            parts = text.split(",")
            if len(parts) == 1:
                return int(parts[0]) % self.p
            if len(parts) != self.k:
                raise FieldError(f"expected {self.k} coefficients in {text!r}")
            return self.coerce([int(c) for c in parts])
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, FieldError):
                raise
            raise FieldError(f"bad element literal {text!r}") from exc

    # -- enumeration and sampling -----------------------------------------------

    def elements(self) -> list:
        """All elements, zero first, then canonical code order."""
        if not self.is_finite:
            raise NotEnumerableError("the rational field cannot be enumerated")
        return list(range(self.q))

    def nonzero_elements(self) -> list:
        return self.elements()[1:]

    def random_element(self, rng, nonzero: bool = False):
        if self.kind == RATIONAL:
            while True:
                v = Fraction(rng.randint(-3, 3))
                if v or not nonzero:
                    return v
        if nonzero:
            return rng.randrange(1, self.q)
        return rng.randrange(self.q)

    def sample_values(self) -> list:
        """Elements used for scans: all of K when finite, a small box for Q."""
        if self.is_finite:
            return self.elements()
        return [Fraction(v) for v in (0, 1, -1, 2, -2, 3, -3)]


class Scalar:
    """A field element bound to its field.

    ``value`` is taken as a raw value when it already is one (an extension
    element's integer code, a reduced residue, a Fraction); anything else
    goes through :meth:`Field.coerce`. Use :meth:`of` to always coerce, so
    that ``Scalar.of(F, 3)`` means the integer 3 of the prime subfield.
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value if field.is_canonical(value) else field.coerce(value)

    @classmethod
    def of(cls, field: Field, x) -> "Scalar":
        return cls(field, field.coerce(x))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Scalar(self.field, self.field.div(self.value, o))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return Scalar(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.value))

    def __repr__(self) -> str:
        return f"Scalar({self.field.descriptor()!r}, {self})"

    def __str__(self) -> str:
        return self.field.format_element(self.value)


_DESCRIPTOR = re.compile(r"^gf\s*(\d+)(?:\s+(\d+)(?:\s+([-\d,\s]+))?)?$")


def make_field(descriptor: str) -> Field:
    """Build a field from ``gf p``, ``gf p k``, ``gf p k c0,...,ck`` or ``q``.

    ``gfp`` without a space is accepted as a shorthand for ``gf p``.

    >>> make_field("gf 2 2").modulus
    (1, 1, 1)
    """
    text = " ".join(descriptor.strip().lower().split())
    if text in ("q", "qq", "rational"):
        return Field(RATIONAL)
    m = _DESCRIPTOR.match(text)
    if not m:
        raise FieldError(f"bad field descriptor {descriptor!r}")
    p = int(m.group(1))
    k = int(m.group(2)) if m.group(2) else 1
    modulus = None
    if m.group(3):
        try:
            modulus = [int(c) for c in m.group(3).replace(" ", "").split(",") if c]
        except ValueError as exc:
            raise FieldError(f"bad modulus in {descriptor!r}") from exc
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if k < 1:
        raise FieldError("extension degree must be >= 1")
    return Field(EXTENSION if k > 1 else PRIME, p, k, modulus)


def field_arith(kind: str, a: Scalar, b: Scalar) -> Scalar:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown operation {kind!r}")


def field_inverse(a: Scalar) -> Scalar:
    return a.inverse()


def enumerate_field(field: Field) -> list[Scalar]:
    return [Scalar(field, v) for v in field.elements()]
