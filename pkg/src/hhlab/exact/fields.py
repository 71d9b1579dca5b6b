"""Exact coefficient fields: Q, F_p, Q(zeta_d) and Q(t).

Every field is a :class:`Field` instance; elements are :class:`Scalar`
objects that carry their field and a canonical payload, so equality of
values is equality of payloads.

    >>> K = Field.cyclotomic(4)
    >>> z = K.gen()
    >>> z * z == -1
    True
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from . import polys

INFINITY = math.inf


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class Field:
    """One of the four supported exact fields.

    Use the constructors :meth:`rationals`, :meth:`prime_field`,
    :meth:`cyclotomic` and :meth:`rational_functions`; instances compare by
    kind and parameter.
    """

    __slots__ = ("kind", "param", "_modulus")

    def __init__(self, kind: str, param: int | None = None):
        if kind == "rationals" or kind == "rational_functions":
            param = None
        elif kind == "prime_field":
            if not _is_prime(param):
                raise ValueError(f"{param} is not prime")
        elif kind == "cyclotomic":
            if param is None or param < 1:
                raise ValueError("cyclotomic index must be >= 1")
        else:
            raise ValueError(f"unknown field kind {kind!r}")
        self.kind = kind
        self.param = param
        self._modulus = polys.cyclotomic_polynomial(param) if kind == "cyclotomic" else None

    @classmethod
    def rationals(cls):
        return cls("rationals")

    @classmethod
    def prime_field(cls, p: int):
        return cls("prime_field", p)

    @classmethod
    def cyclotomic(cls, d: int):
        return cls("cyclotomic", d)

    @classmethod
    def rational_functions(cls):
        return cls("rational_functions")

    @classmethod
    def from_spec(cls, spec: str) -> "Field":
        """Parse 'Q', 'Q(t)', 'GF(p)' or 'cyclotomic(d)' (also 'Q(z4)')."""
        s = spec.strip().replace(" ", "")
        low = s.lower()
        if low in ("q", "qq", "rationals"):
            return cls.rationals()
        if low in ("q(t)", "qq(t)", "rational_functions"):
            return cls.rational_functions()
        m = re.fullmatch(r"(?:gf|f|prime_field)\((\d+)\)", low)
        if m:
            return cls.prime_field(int(m.group(1)))
        m = re.fullmatch(r"(?:cyclotomic\((\d+)\)|q\(z(\d+)\))", low)
        if m:
            return cls.cyclotomic(int(m.group(1) or m.group(2)))
        raise ValueError(f"unknown field spec {spec!r}")

    @property
    def characteristic(self) -> int:
        return self.param if self.kind == "prime_field" else 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.kind == other.kind and self.param == other.param

    def __hash__(self):
        return hash((self.kind, self.param))

    def __repr__(self):
        return f"Field.{self.kind}({'' if self.param is None else self.param})"

    def __str__(self):
        return {
            "rationals": "Q",
            "rational_functions": "Q(t)",
            "prime_field": f"GF({self.param})",
            "cyclotomic": f"cyclotomic({self.param})",
        }[self.kind]

    # -- construction -------------------------------------------------

    def _make(self, payload) -> "Scalar":
        s = Scalar.__new__(Scalar)
        s.field = self
        s.v = payload
        return s

    def _from_fraction(self, c: Fraction):
        k = self.kind
        if k == "rationals":
            return c
        if k == "prime_field":
            p = self.param
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"{c} has no image in GF({p})")
            return c.numerator * pow(c.denominator, -1, p) % p
        if k == "cyclotomic":
            return polys.const(c)
        return (polys.const(c), polys.ONE)

    def __call__(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field != self:
                raise TypeError(f"cannot coerce element of {x.field} into {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)):
            return self._make(self._from_fraction(Fraction(x)))
        raise TypeError(f"cannot coerce {x!r} into {self}")

    @property
    def zero(self) -> "Scalar":
        return self(0)

    @property
    def one(self) -> "Scalar":
        return self(1)

    def gen(self) -> "Scalar":
        """t for Q(t), a primitive root zeta for cyclotomic fields."""
        if self.kind == "rational_functions":
            return self._make((polys.monomial(1, 1), polys.ONE))
        if self.kind == "cyclotomic":
            if self.param <= 2:
                return self(1 if self.param == 1 else -1)
            return self._make(polys.monomial(1, 1))
        raise ValueError(f"{self} has no distinguished generator")

    def parse(self, text: str) -> "Scalar":
        s = text.strip()
        k = self.kind
        if k == "rationals":
            return self._make(Fraction(s.replace(" ", "")))
        if k == "prime_field":
            m = re.fullmatch(r"\s*(-?\d+(?:/\d+)?)\s*(?:mod\s*(\d+))?\s*", s)
            if not m:
                raise ValueError(f"cannot parse {text!r} in {self}")
            if m.group(2) and int(m.group(2)) != self.param:
                raise ValueError(f"modulus mismatch in {text!r}")
            return self._make(self._from_fraction(Fraction(m.group(1))))
        if k == "cyclotomic":
            f = polys.parse(s, "z")
            return self._make(polys.divmod_poly(f, self._modulus)[1])
        s = s.replace(" ", "")
        try:
            return self._make(_rf_normalize(polys.parse(s, "t"), polys.ONE))
        except ValueError:
            pass
        # split at the last '/' outside parentheses: "(num)/(den)", "1/t", ...
        depth, cut = 0, -1
        for k, ch in enumerate(s):
            depth += (ch == "(") - (ch == ")")
            if ch == "/" and depth == 0:
                cut = k
        if cut < 0:
            if s.startswith("(") and s.endswith(")"):
                return self.parse(s[1:-1])
            raise ValueError(f"cannot parse {text!r} in {self}")
        return self.parse(s[:cut]) / self.parse(s[cut + 1:])

    def random_element(self, rng, nonzero=False) -> "Scalar":
        """A small random element drawn with ``rng`` (a random.Random)."""
        while True:
            k = self.kind
            if k == "rationals":
                x = self(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
            elif k == "prime_field":
                x = self(rng.randrange(self.param))
            elif k == "cyclotomic":
                deg = len(self._modulus) - 1
                x = self._make(polys.trim(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(deg)))
            else:
                num = polys.trim(rng.randint(-3, 3) for _ in range(rng.randint(1, 3)))
                den = polys.trim(rng.randint(-3, 3) for _ in range(rng.randint(1, 2)))
                if not den:
                    den = polys.ONE
                x = self._make(_rf_normalize(num, den))
            if x or not nonzero:
                return x

    # -- arithmetic on payloads ------------------------------------------

    def _add(self, a, b):
        k = self.kind
        if k == "rationals":
            return a + b
        if k == "prime_field":
            return (a + b) % self.param
        if k == "cyclotomic":
            return polys.add(a, b)
        (an, ad), (bn, bd) = a, b
        if ad == bd:
            return _rf_normalize(polys.add(an, bn), ad)
        return _rf_normalize(polys.add(polys.mul(an, bd), polys.mul(bn, ad)), polys.mul(ad, bd))

    def _neg(self, a):
        k = self.kind
        if k == "rationals":
            return -a
        if k == "prime_field":
            return -a % self.param
        if k == "cyclotomic":
            return polys.neg(a)
        return (polys.neg(a[0]), a[1])

    def _mul(self, a, b):
        k = self.kind
        if k == "rationals":
            return a * b
        if k == "prime_field":
            return a * b % self.param
        if k == "cyclotomic":
            return polys.divmod_poly(polys.mul(a, b), self._modulus)[1]
        (an, ad), (bn, bd) = a, b
        if not an or not bn:
            return (polys.ZERO, polys.ONE)
        return _rf_normalize(polys.mul(an, bn), polys.mul(ad, bd))

    def _inv(self, a):
        k = self.kind
        if k == "rationals":
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if k == "prime_field":
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return pow(a, -1, self.param)
        if k == "cyclotomic":
            if not a:
                raise ZeroDivisionError("inverse of zero")
            g, s, _ = polys.xgcd(a, self._modulus)
            assert g == polys.ONE
            return polys.divmod_poly(s, self._modulus)[1]
        if not a[0]:
            raise ZeroDivisionError("inverse of zero")
        return _rf_normalize(a[1], a[0])

    def _str(self, a) -> str:
        k = self.kind
        if k == "rationals":
            return str(a)
        if k == "prime_field":
            return f"{a} mod {self.param}"
        if k == "cyclotomic":
            return polys.to_str(a, "z")
        num, den = a
        if den == polys.ONE:
            return polys.to_str(num, "t")
        return f"({polys.to_str(num, 't')})/({polys.to_str(den, 't')})"


def _rf_normalize(num, den):
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (polys.ZERO, polys.ONE)
    if len(den) > 1:
        g = polys.gcd(num, den)
        if len(g) > 1:
            num = polys.divmod_poly(num, g)[0]
            den = polys.divmod_poly(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = polys.scale(num, 1 / lead)
        den = polys.scale(den, 1 / lead)
    return (num, den)


class Scalar:
    """An element of a :class:`Field`; immutable."""

    __slots__ = ("field", "v")

    def __init__(self, field: Field, value=0):
        s = field(value)
        self.field = field
        self.v = s.v

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise TypeError(f"mixed fields: {self.field} and {other.field}")
            return other.v
        if isinstance(other, (int, Fraction)):
            return self.field._from_fraction(Fraction(other))
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.field._make(self.field._add(self.v, o))

    __radd__ = __add__

    def __neg__(self):
        return self.field._make(self.field._neg(self.v))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        return f._make(f._add(self.v, f._neg(o)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        return f._make(f._add(o, f._neg(self.v)))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self.field._make(self.field._mul(self.v, o))

    __rmul__ = __mul__

    def inverse(self):
        return self.field._make(self.field._inv(self.v))

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        return f._make(f._mul(self.v, f._inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        f = self.field
        return f._make(f._mul(o, f._inv(self.v)))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        f = self.field
        out, base = f._from_fraction(Fraction(1)), self.v
        while k:
            if k & 1:
                out = f._mul(out, base)
            base = f._mul(base, base)
            k >>= 1
        return f._make(out)

    def __bool__(self):
        v = self.v
        if self.field.kind == "rational_functions":
            return bool(v[0])
        return bool(v)

    def __eq__(self, other):
        o = self._other(other) if isinstance(other, (Scalar, int, Fraction)) else None
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        v = self.v
        if self.field.kind == "rationals":
            return hash(v)
        return hash((self.field, v))

    def __repr__(self):
        return f"Scalar({self.field}, {self})"

    def __str__(self):
        return self.field._str(self.v)

    def is_one(self):
        return self == 1


def order_of(x: Scalar):
    """Least d >= 1 with x**d == 1, or math.inf when x is not a root of unity."""
    if not x:
        raise ZeroDivisionError("order of zero is undefined")
    F = x.field
    if F.kind in ("rationals", "rational_functions"):
        if x == 1:
            return 1
        if x == -1 and F.characteristic != 2:
            return 2
        return INFINITY
    if F.kind == "prime_field":
        n = F.param - 1
        for p in _prime_factors(F.param - 1):
            while n % p == 0 and (x ** (n // p)) == 1:
                n //= p
        return n
    N = math.lcm(2, F.param)
    if x ** N != 1:
        return INFINITY
    for e in range(1, N + 1):
        if N % e == 0 and x ** e == 1:
            return e
    raise AssertionError("unreachable")
