"""The four algebra families and the predicted shapes of their graded centers.

Families
--------
``Lambda_q(m)``
    Cyclic quiver 0..m-1 with a_i: i -> i+1 and b_i: i+1 -> i, relations
    a_i a_{i+1}, b_{i+1} b_i and q_i a_i b_i - b_{i-1} a_{i-1}.
``Gamma_q(m)``
    Lambda_q(m) plus a vertex -1 and arrows c_i: i -> -1, with the extra
    relations a_i c_{i+1}.
``Lambda_mn(m, n)``
    Torus quiver on Z_n x Z_m with a_ij: (i,j) -> (i,j+1) and
    b_ij: (i,j) -> (i+1,j), relations a a, b b and a_ij b_i,j+1 + q_ij b_ij a_i+1,j.
``Gamma_mn(m, n)``
    Lambda_mn plus c_ij: (i,j) -> -1 and the relations a_ij c_i,j+1.

Arrow names are ``a0``, ``b1``, ``c2`` for the cyclic families and
``a0_1`` (row 0, column 1) for the torus families.  The q parameters are a
length-m vector, or an n x m matrix ``q[i][j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .exact import INFINITY, Field, Scalar, order_of
from .quadratic import QuadraticPresentation, opposite_name, quadratic_dual
from .quiver import LinCombo, Quiver

FAMILIES = ("Lambda_q", "Gamma_q", "Lambda_mn", "Gamma_mn")
_ALIASES = {f.lower(): f for f in FAMILIES}
_ALIASES.update({"lambda": "Lambda_q", "gamma": "Gamma_q"})


@dataclass(frozen=True)
class FamilyParams:
    family: str
    m: int
    n: int
    q: tuple
    field: Field

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.torus:
            if len(self.q) != self.n or any(len(row) != self.m for row in self.q):
                raise ValueError(f"q must be an {self.n}x{self.m} matrix")
            entries = [c for row in self.q for c in row]
        else:
            if self.n != 1:
                raise ValueError("cyclic families take n = 1")
            if len(self.q) != self.m:
                raise ValueError(f"q must have {self.m} entries")
            entries = list(self.q)
        for c in entries:
            if not isinstance(c, Scalar) or c.field != self.field:
                raise TypeError("q entries must be Scalars of the declared field")
            if not c:
                raise ValueError("q entries must be nonzero")

    @property
    def torus(self) -> bool:
        return self.family in ("Lambda_mn", "Gamma_mn")

    @property
    def coextended(self) -> bool:
        return self.family in ("Gamma_q", "Gamma_mn")

    def qc(self, k: int) -> Scalar:
        """q_k with the index taken mod m (cyclic families)."""
        return self.q[k % self.m]

    def qt(self, i: int, j: int) -> Scalar:
        """q_ij with i mod n and j mod m (torus families)."""
        return self.q[i % self.n][j % self.m]

    def entries(self) -> list[Scalar]:
        return [c for row in self.q for c in row] if self.torus else list(self.q)

    def describe(self) -> dict:
        q = [[str(c) for c in row] for row in self.q] if self.torus else [str(c) for c in self.q]
        return {"family": self.family, "m": self.m, "n": self.n, "field": str(self.field), "q": q}


def _coerce(field: Field, x) -> Scalar:
    return field(x)


def make_params(family: str, m: int, n: int | None = None, q=None, field: Field | str | None = None) -> FamilyParams:
    """Convenient constructor: ``q`` may hold ints, Fractions, strings or Scalars.

    A missing ``q`` means all ones; a single value is broadcast.
    """
    family = _ALIASES.get(family.lower(), family)
    if isinstance(field, str):
        field = Field.from_spec(field)
    field = field or Field.rationals()
    torus = family in ("Lambda_mn", "Gamma_mn")
    n = (n or m) if torus else 1
    if q is None:
        q = 1
    if not isinstance(q, (list, tuple)):
        q = [[q] * m for _ in range(n)] if torus else [q] * m
    if torus:
        qq = tuple(tuple(_coerce(field, c) for c in row) for row in q)
    else:
        qq = tuple(_coerce(field, c) for c in q)
    return FamilyParams(family, m, n, qq, field)


def parse_q(text: str, field: Field, torus: bool):
    """Rows separated by ';', entries by ','; e.g. "t,1;1,1"."""
    rows = [r for r in text.split(";") if r.strip()]
    parsed = [[field.parse(c) for c in r.split(",")] for r in rows]
    if torus:
        return parsed
    if len(parsed) != 1:
        raise ValueError("cyclic families take a single row of q values")
    return parsed[0]


def load_config(text: str) -> FamilyParams:
    """Parse a family config: ``family:``, ``m:``, ``n:``, ``field:``, ``q:`` lines."""
    vals = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            k, _, v = line.partition(":")
            vals[k.strip().lower()] = v.strip()
    family = _ALIASES.get(vals["family"].lower(), vals["family"])
    field = Field.from_spec(vals.get("field", "Q"))
    m = int(vals["m"])
    n = int(vals["n"]) if "n" in vals else None
    torus = family in ("Lambda_mn", "Gamma_mn")
    q = parse_q(vals["q"], field, torus) if "q" in vals else None
    return make_params(family, m, n, q, field)


def dump_config(fp: FamilyParams) -> str:
    q = ";".join(",".join(str(c) for c in row) for row in fp.q) if fp.torus else ",".join(str(c) for c in fp.q)
    lines = [f"family: {fp.family}", f"m: {fp.m}"]
    if fp.torus:
        lines.append(f"n: {fp.n}")
    lines += [f"field: {fp.field}", f"q: {q}"]
    return "\n".join(lines) + "\n"


# -- quivers and presentations ------------------------------------------------

def _cyclic_quiver(m: int, coextended: bool) -> Quiver:
    verts = list(range(m)) + ([-1] if coextended else [])
    arrows = [(f"a{i}", i, (i + 1) % m) for i in range(m)]
    arrows += [(f"b{i}", (i + 1) % m, i) for i in range(m)]
    if coextended:
        arrows += [(f"c{i}", i, -1) for i in range(m)]
    return Quiver(verts, arrows)


def _torus_quiver(m: int, n: int, coextended: bool) -> Quiver:
    verts = [(i, j) for i in range(n) for j in range(m)] + ([-1] if coextended else [])
    arrows = [(f"a{i}_{j}", (i, j), (i, (j + 1) % m)) for i in range(n) for j in range(m)]
    arrows += [(f"b{i}_{j}", (i, j), ((i + 1) % n, j)) for i in range(n) for j in range(m)]
    if coextended:
        arrows += [(f"c{i}_{j}", (i, j), -1) for i in range(n) for j in range(m)]
    return Quiver(verts, arrows)


def arrow_names(fp: FamilyParams, letter: str) -> list[str]:
    if fp.torus:
        return [f"{letter}{i}_{j}" for i in range(fp.n) for j in range(fp.m)]
    return [f"{letter}{i}" for i in range(fp.m)]


def _order(fp: FamilyParams, letters: str) -> list[str]:
    out = []
    for letter in letters:
        if letter == "c" and not fp.coextended:
            continue
        out += arrow_names(fp, letter)
    return out


def build_presentation(fp: FamilyParams) -> QuadraticPresentation:
    """The algebra itself, as a quadratic presentation over its quiver.

    Both coextended families are ordered b < a < c: with a < b the overlap
    (b a c) does not resolve, while b < a makes the relations a Groebner
    basis.  The other two families use a < b.
    """
    F = fp.field
    one = F.one
    m, n = fp.m, fp.n
    if fp.torus:
        Q = _torus_quiver(m, n, fp.coextended)
        P = lambda *w: Q.path(*w)  # noqa: E731
        rels = []
        for i in range(n):
            for j in range(m):
                a, b = f"a{i}_{j}", f"b{i}_{j}"
                rels.append(LinCombo({P(a, f"a{i}_{(j + 1) % m}"): one}, F))
                rels.append(LinCombo({P(b, f"b{(i + 1) % n}_{j}"): one}, F))
                rels.append(LinCombo({P(a, f"b{i}_{(j + 1) % m}"): one,
                                      P(b, f"a{(i + 1) % n}_{j}"): fp.qt(i, j)}, F))
                if fp.coextended:
                    rels.append(LinCombo({P(a, f"c{i}_{(j + 1) % m}"): one}, F))
        name = f"{fp.family}({m},{n})"
    else:
        Q = _cyclic_quiver(m, fp.coextended)
        P = lambda *w: Q.path(*w)  # noqa: E731
        rels = []
        for i in range(m):
            rels.append(LinCombo({P(f"a{i}", f"a{(i + 1) % m}"): one}, F))
            rels.append(LinCombo({P(f"b{(i + 1) % m}", f"b{i}"): one}, F))
            rels.append(LinCombo({P(f"a{i}", f"b{i}"): fp.qc(i),
                                  P(f"b{(i - 1) % m}", f"a{(i - 1) % m}"): -one}, F))
            if fp.coextended:
                rels.append(LinCombo({P(f"a{i}", f"c{(i + 1) % m}"): one}, F))
        name = f"{fp.family}({m})"
    order = _order(fp, "bac" if fp.coextended else "abc")
    return QuadraticPresentation(Q, rels, F, order, name=name)


def dual_weights(fp: FamilyParams) -> dict:
    """Second grading on the dual: a and c have degree 1, b has degree -1."""
    w = {a: 1 for a in arrow_names(fp, "a")}
    w.update({b: -1 for b in arrow_names(fp, "b")})
    if fp.coextended:
        w.update({c: 1 for c in arrow_names(fp, "c")})
    return w


def dual_presentation(fp: FamilyParams, view: str = "kq") -> QuadraticPresentation:
    """The quadratic dual, by default re-read on the original quiver.

    In the kq view the dual is ordered a < b < c, so its leading words are
    b.a and b.c and its normal words are a-runs followed by a b-run or c.
    """
    P = build_presentation(fp)
    if view == "kq":
        order = _order(fp, "abc")
        return quadratic_dual(P, "kq", order, dual_weights(fp), name=f"E({P.name})")
    return quadratic_dual(P, "op", name=f"E({P.name})")


def explicit_dual(fp: FamilyParams) -> QuadraticPresentation:
    """The dual relations written out by hand, on the opposite quiver.

    Used as an independent fixture for :func:`quadratic_dual`.
    """
    F = fp.field
    one = F.one
    P = build_presentation(fp)
    Q = P.quiver
    dq = Quiver(Q.vertices, [(opposite_name(nm), t, s) for nm, s, t in Q.arrows])

    def op(x, y):
        return dq.path(opposite_name(y), opposite_name(x))

    rels = []
    m, n = fp.m, fp.n
    if fp.torus:
        for i in range(n):
            for j in range(m):
                a, b = f"a{i}_{j}", f"b{i}_{j}"
                rels.append(LinCombo({op(a, f"b{i}_{(j + 1) % m}"): one,
                                      op(b, f"a{(i + 1) % n}_{j}"): -fp.qt(i, j).inverse()}, F))
                if fp.coextended:
                    rels.append(LinCombo({op(b, f"c{(i + 1) % n}_{j}"): one}, F))
    else:
        for i in range(m):
            rels.append(LinCombo({op(f"a{i}", f"b{i}"): fp.qc(i).inverse(),
                                  op(f"b{(i - 1) % m}", f"a{(i - 1) % m}"): one}, F))
            if fp.coextended:
                rels.append(LinCombo({op(f"b{i}", f"c{i}"): one}, F))
    return QuadraticPresentation(dq, rels, F, [opposite_name(a) for a in P.arrow_order],
                                 view="op", name=f"E({P.name})")


# -- parameters and predicted centers -----------------------------------------------

def parameter_product(fp: FamilyParams) -> Scalar:
    out = fp.field.one
    for c in fp.entries():
        out = out * c
    return out


def _qrun(fp: FamilyParams, k: int, r: int) -> Scalar:
    """q_k q_{k+1} ... q_{k+r-1}, indices mod m; the empty run is 1."""
    out = fp.field.one
    for s in range(k, k + r):
        out = out * fp.qc(s)
    return out


def _w_coefficients(fp: FamilyParams, e: int) -> list[Scalar]:
    """u_i = (-1)^{ie} prod_{k=1}^{i} (q_k ... q_{k+e-1})^{-1}, so u_0 = 1."""
    F = fp.field
    out = []
    acc = F.one
    for i in range(fp.m):
        if i:
            acc = acc * _qrun(fp, i, e).inverse()
        out.append(acc * (-1) ** (i * e))
    return out


@dataclass(frozen=True)
class GammaCase:
    """The case of the cyclic coextended family that a given (m, char, d) falls in."""

    label: str
    e: int        # w = sum u_i gamma_i^e delta_i^e
    xy: int       # |x| = |y|
    p: int        # relation w^p = eps x y

    @property
    def w_length(self) -> int:
        return 2 * self.e


def gamma_case(m: int, char: int, d: int) -> GammaCase:
    if m % 2 == 0 or char == 2:
        return GammaCase("m even or char 2", d, m * d, m)
    if d % 2 == 1:
        return GammaCase("m odd, d odd", 2 * d, 2 * m * d, m)
    if d % 4 == 0:
        return GammaCase("m odd, d = 0 mod 4", d, m * d, m)
    return GammaCase("m odd, d = 2 mod 4", d // 2, m * d, 2 * m)


def epsilon_d(fp: FamilyParams, d: int | None = None, sign_fix: bool = True):
    """The constant in w^p = eps x y, and the exponent p.

    Each case is the double product over (l, k) of (q_k ... q_{k+e-1})^{-1}
    with l < p and k <= l e, times a sign.  The sign is (-1)^{md/2} when m
    is even, 1 in characteristic 2 or when m is odd and d is not 2 mod 4.
    For m odd with d = 2 mod 4, commuting e-runs of b past e-runs of a
    costs (-1)^{e^2} = -1 per step, which multiplies the product by
    (-1)^{m(2m-1)} = -1.  ``sign_fix=False`` leaves that factor out.
    """
    if fp.family != "Gamma_q":
        raise ValueError("epsilon_d is defined for the Gamma_q family")
    zeta = parameter_product(fp)
    true_d = order_of(zeta)
    if d is None:
        d = true_d
    if true_d != d:
        raise ValueError(f"parameter product has order {true_d}, not {d}")
    if d == INFINITY:
        raise ValueError("parameter product is not a root of unity")
    F = fp.field
    m = fp.m
    case = gamma_case(m, F.characteristic, d)
    e, p = case.e, case.p
    prod = F.one
    for l in range(1, p):
        for k in range(1, l * e + 1):
            prod = prod * _qrun(fp, k, e).inverse()
    if case.label == "m even or char 2":
        if F.characteristic == 2:
            sign = 1
        else:
            assert (m * d) % 2 == 0, "m d must be even in this branch"
            sign = (-1) ** (m * d // 2)
    elif case.label == "m odd, d = 2 mod 4" and sign_fix:
        sign = (-1) ** (m * (2 * m - 1))
    else:
        sign = 1
    return prod * sign, p


@dataclass(frozen=True)
class CenterModel:
    """Predicted graded center; lengths are None where a generator is absent."""

    shape: str                    # ScalarsOnly | KPlusXYIdeal | KPlusXYIdealEven | TruncatedCone
    x_len: int | None = None
    y_len: int | None = None
    w_len: int | None = None
    p: int | None = None
    epsilon: Scalar | None = None
    d: object = None
    notes: tuple = dc_field(default=())

    def __post_init__(self):
        if self.shape == "TruncatedCone":
            if self.p is None or self.p * self.w_len != self.x_len + self.y_len:
                raise ValueError("TruncatedCone needs p |w| = |x| + |y|")

    @property
    def gen_lengths(self):
        return (self.x_len, self.y_len, self.w_len)

    def label(self) -> str:
        return f"TruncatedCone({self.p})" if self.shape == "TruncatedCone" else self.shape


def predicted_model(fp: FamilyParams) -> CenterModel:
    if not fp.coextended:
        raise ValueError("center models are stated for the coextended families")
    F = fp.field
    d = order_of(parameter_product(fp))
    if d == INFINITY:
        return CenterModel("ScalarsOnly", d=d)
    if fp.family == "Gamma_q":
        case = gamma_case(fp.m, F.characteristic, d)
        eps, p = epsilon_d(fp, d)
        return CenterModel("TruncatedCone", case.xy, case.xy, case.w_length, p, eps, d, (case.label,))
    ex, ey = torus_exponents(fp.m, fp.n, F.characteristic, d)
    even = F.characteristic != 2 and fp.m % 2 == 1 and fp.n % 2 == 1 and d % 2 == 1
    return CenterModel("KPlusXYIdealEven" if even else "KPlusXYIdeal", fp.m * ex, fp.n * ey, d=d)


def torus_exponents(m: int, n: int, char: int, d: int) -> tuple[int, int]:
    """Powers e_x, e_y with x = (sum c alpha)^e_x and y = (sum c' beta)^e_y.

    With char != 2, m and n of different parity and d odd, the power on the
    odd-length loop doubles; otherwise both are d.
    """
    if char != 2 and (m - n) % 2 == 1 and d % 2 == 1:
        return (2 * d, d) if m % 2 == 1 else (d, 2 * d)
    return d, d


def gamma_word(i: int, s: int, m: int) -> tuple:
    """gamma_i^s = a_i a_{i+1} ... a_{i+s-1}."""
    return tuple(f"a{(i + k) % m}" for k in range(s))


def delta_word(i: int, t: int, m: int) -> tuple:
    """delta_i^t = b_{i+t-1} ... b_{i+1} b_i."""
    return tuple(f"b{(i + k) % m}" for k in range(t - 1, -1, -1))


def alpha_word(i: int, j: int, m: int, s: int = 1) -> tuple:
    """alpha_ij^s: s turns around the a-loop at (i, j)."""
    return tuple(f"a{i}_{(j + k) % m}" for k in range(m * s))


def beta_word(i: int, j: int, n: int, t: int = 1) -> tuple:
    return tuple(f"b{(i + k) % n}_{j}" for k in range(n * t))


def predicted_generators(fp: FamilyParams, d=None, E: QuadraticPresentation | None = None) -> dict:
    """x, y (and w for Gamma_q) as normal-form LinCombos in the dual algebra."""
    if not fp.coextended:
        raise ValueError("generators are predicted for the coextended families")
    F = fp.field
    true_d = order_of(parameter_product(fp))
    d = true_d if d is None else d
    if d == INFINITY or d != true_d:
        raise ValueError("parameter product must have finite order d")
    E = E or dual_presentation(fp)
    R = E.reduction_system()
    m, n = fp.m, fp.n
    if fp.family == "Gamma_q":
        case = gamma_case(m, F.characteristic, d)
        u = _w_coefficients(fp, case.e)
        w = {gamma_word(i, case.e, m) + delta_word(i, case.e, m): u[i] for i in range(m)}
        x = {gamma_word(i, case.xy, m): F.one for i in range(m)}
        y = {delta_word(i, case.xy, m): F.one for i in range(m)}
        out = {"x": x, "y": y, "w": w}
    else:
        ex, ey = torus_exponents(m, n, F.characteristic, d)
        ca, cb = {}, {}
        for i in range(n):
            for j in range(m):
                pa = F.one
                for p_ in range(i):
                    for l in range(m):
                        pa = pa * fp.qt(p_, l)
                pb = F.one
                for l in range(j):
                    for p_ in range(n):
                        pb = pb * fp.qt(p_, l)
                ca[alpha_word(i, j, m)] = pa.inverse()
                cb[beta_word(i, j, n)] = pb
        out = {"x": _power(R, ca, ex), "y": _power(R, cb, ey)}
    return {k: E.element(R.reduce(v)) for k, v in out.items()}


def _power(R, x: dict, k: int) -> dict:
    out = x
    for _ in range(k - 1):
        out = R.multiply(out, x)
    return out


def undeformed_lambda(m: int, field: Field | None = None) -> FamilyParams:
    """The undeformed cyclic algebra: Lambda_q with every q_i = 1."""
    return make_params("Lambda_q", m, q=1, field=field)


__all__ = [
    "FAMILIES",
    "FamilyParams",
    "CenterModel",
    "GammaCase",
    "make_params",
    "parse_q",
    "load_config",
    "dump_config",
    "build_presentation",
    "dual_presentation",
    "explicit_dual",
    "dual_weights",
    "parameter_product",
    "epsilon_d",
    "gamma_case",
    "torus_exponents",
    "predicted_model",
    "predicted_generators",
    "gamma_word",
    "delta_word",
    "alpha_word",
    "beta_word",
    "undeformed_lambda",
]
