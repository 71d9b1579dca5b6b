"""Dense univariate polynomials over Q.

A polynomial is a tuple of Fractions, lowest degree first, with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import re
from fractions import Fraction

Poly = tuple  # tuple[Fraction, ...]

ZERO: Poly = ()
ONE: Poly = (Fraction(1),)


def trim(coeffs) -> Poly:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(Fraction(x) for x in c)


def const(c) -> Poly:
    return trim((Fraction(c),))


def monomial(c, k: int) -> Poly:
    if not c:
        return ZERO
    return (Fraction(0),) * k + (Fraction(c),)


def degree(f: Poly) -> int:
    return len(f) - 1


def add(f: Poly, g: Poly) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def neg(f: Poly) -> Poly:
    return tuple(-c for c in f)


def sub(f: Poly, g: Poly) -> Poly:
    return add(f, neg(g))


def scale(f: Poly, c) -> Poly:
    if not c:
        return ZERO
    return tuple(x * c for x in f)


def mul(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ZERO
    if len(f) == 1:
        return scale(g, f[0])
    if len(g) == 1:
        return scale(f, g[0])
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def divmod_poly(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return ZERO, f
    r = list(f)
    lead = g[-1]
    dg = len(g) - 1
    q = [Fraction(0)] * (len(f) - dg)
    for k in range(len(f) - 1, dg - 1, -1):
        c = r[k]
        if not c:
            continue
        c = c / lead
        q[k - dg] = c
        for i, b in enumerate(g):
            r[k - dg + i] -= c * b
    return trim(q), trim(r[:dg])


def monic(f: Poly) -> Poly:
    if not f or f[-1] == 1:
        return f
    lead = f[-1]
    return tuple(c / lead for c in f)


def gcd(f: Poly, g: Poly) -> Poly:
    while g:
        f, g = g, divmod_poly(f, g)[1]
    return monic(f)


def xgcd(f: Poly, g: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (d, s, t) with s*f + t*g = d = gcd(f, g), d monic."""
    r0, r1 = f, g
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return ZERO, ZERO, ZERO
    lead = r0[-1]
    return monic(r0), scale(s0, 1 / lead), scale(t0, 1 / lead)


def power(f: Poly, k: int) -> Poly:
    out = ONE
    base = f
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def content_normalize(f: Poly) -> Poly:
    """Scale f so its leading coefficient is 1 (over Q this is the content-1 form)."""
    return monic(f)


def _frac_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def to_str(f: Poly, var: str) -> str:
    if not f:
        return "0"
    parts = []
    for k, c in enumerate(f):
        if not c:
            continue
        if k == 0:
            body = _frac_str(c)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            if c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{_frac_str(c)}*{mono}"
        if parts and not body.startswith("-"):
            parts.append("+")
        parts.append(body)
    return "".join(parts)


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse(text: str, var: str) -> Poly:
    """Parse the output of :func:`to_str` (also tolerates '+-' and spaces)."""
    s = text.replace(" ", "").replace("+-", "-").replace("--", "+")
    if not s:
        raise ValueError("empty polynomial string")
    out = ZERO
    pos = 0
    for m in _TERM.finditer(s):
        if m.start() != pos:
            raise ValueError(f"cannot parse polynomial {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        coeff = Fraction(1)
        k = 0
        if var in body:
            head, _, tail = body.partition(var)
            if head:
                if not head.endswith("*"):
                    raise ValueError(f"cannot parse term {body!r}")
                coeff = Fraction(head[:-1])
            if tail:
                if not tail.startswith("^"):
                    raise ValueError(f"cannot parse term {body!r}")
                k = int(tail[1:])
            else:
                k = 1
        else:
            coeff = Fraction(body)
        out = add(out, monomial(sign * coeff, k))
    if pos != len(s):
        raise ValueError(f"cannot parse polynomial {text!r}")
    return out


def cyclotomic_polynomial(d: int, _cache: dict = {}) -> Poly:
    """Phi_d via x^d - 1 = prod_{e | d} Phi_e."""
    if d < 1:
        raise ValueError("cyclotomic index must be >= 1")
    if d in _cache:
        return _cache[d]
    f = add(monomial(1, d), const(-1))
    for e in range(1, d):
        if d % e == 0:
            f, r = divmod_poly(f, cyclotomic_polynomial(e))
            assert not r
    _cache[d] = f
    return f
