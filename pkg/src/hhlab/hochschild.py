"""Hochschild cohomology of Lambda_mn through parallel pairs.

A cochain of degree l is a combination of pairs (g, x) where g is a
generator of P_l and x a basis word of the algebra with the same endpoints
as g.  The pair stands for the bimodule map sending g to x and every other
generator to zero, so Hom(P_l, Lambda) is identified with the span of the
pairs and the coboundary is f -> f o d_{l+1}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import INFINITY, SparseMatrix, kernel_basis, order_of, rank, solve
from .families import FamilyParams, parameter_product
from .resolution import Resolution, _add, label_str


class LiftingError(ValueError):
    """The lifting equations have no solution (the input is not a cocycle)."""


@dataclass
class CochainSpace:
    l: int
    basis: list                 # (label, word) pairs in order
    index: dict = field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def by_label(self) -> dict:
        out: dict = {}
        for k, (lab, w) in enumerate(self.basis):
            out.setdefault(lab, []).append((k, w))
        return out


@dataclass
class Cocycle:
    l: int
    vector: list
    name: str = ""

    def __bool__(self):
        return any(self.vector)


def closed_form_dimension(l: int, n: int) -> int:
    """dim M^l for m = n, summing every matching residue branch.

    Pairs with x = e need l = l0 n; with x = a or b, l = l0 n + 1; with
    x = ab, l = l0 n + 2.  Each branch contributes (l0 + 1) n^2 per basis
    element.  For n = 2 the first and third branches overlap.
    """
    total = 0
    for shift, count in ((0, 1), (1, 2), (2, 1)):
        if l >= shift and (l - shift) % n == 0:
            total += count * ((l - shift) // n + 1) * n * n
    return total


class Hochschild:
    """Cochain complex, cohomology dimensions and low-degree cup products."""

    def __init__(self, fp: FamilyParams, res: Resolution | None = None):
        self.fp = fp
        self.res = res or Resolution(fp)
        self.field = fp.field
        self._spaces: dict = {}
        self._deltas: dict = {}
        self._ranks: dict = {}
        self._blocks: dict = {}

    # -- cochains ---------------------------------------------------------------------

    def _x_key(self, label, w):
        src = self.res.endpoints(label)[0]
        return (len(w), self.res.P.word_key(w) if w else (), src)

    def cochain_space(self, l: int) -> CochainSpace:
        hit = self._spaces.get(l)
        if hit is not None:
            return hit
        pairs = []
        for lab in self.res.labels(l):
            s, t = self.res.endpoints(lab)
            pairs.extend((lab, w) for w in self.res.basis(s, t))
        pairs.sort(key=lambda pr: (pr[0][1], self._x_key(*pr)))
        sp = CochainSpace(l, pairs, {pr: k for k, pr in enumerate(pairs)})
        self._spaces[l] = sp
        return sp

    def cochain(self, l: int, pairs: dict, name: str = "") -> Cocycle:
        """Cochain from {(label, word): coefficient}."""
        sp = self.cochain_space(l)
        vec = [self.field.zero] * sp.dimension
        for pr, c in pairs.items():
            vec[sp.index[pr]] = vec[sp.index[pr]] + self.field(c)
        return Cocycle(l, vec, name)

    def value(self, f: Cocycle, label) -> dict:
        """f(g) as a dict of normal words."""
        sp = self.cochain_space(f.l)
        out = {}
        for k, w in sp.by_label().get(label, []):
            if f.vector[k]:
                out[w] = f.vector[k]
        return out

    # -- coboundaries --------------------------------------------------------------------

    def delta_induced(self, l: int) -> SparseMatrix:
        """Matrix of f -> f o d_l from M^{l-1} to M^l."""
        hit = self._deltas.get(l)
        if hit is not None:
            return hit
        if l < 1:
            raise ValueError("delta is defined for l >= 1")
        src, dst = self.cochain_space(l - 1), self.cochain_space(l)
        by_label = src.by_label()
        A = SparseMatrix(dst.dimension, src.dimension, self.field)
        res = self.res
        for lab in res.labels(l):
            for (x, lab2, y), c in res.differential_of(lab).items():
                for col, w in by_label.get(lab2, []):
                    # x w y, with the empty word meaning an idempotent
                    for xw, c1 in res.mul(x, w).items():
                        for z, c2 in res.mul(xw, y).items():
                            A.add_to(dst.index[(lab, z)], col, c * c1 * c2)
        self._deltas[l] = A
        return A

    def delta_closed_form(self, l: int) -> SparseMatrix:
        """The four-term coboundary formula on pairs (g[l-1,p,i,j], x); needs m = n."""
        if self.fp.family != "Lambda_mn" or self.fp.m != self.fp.n:
            raise ValueError("the closed form is stated for Lambda_mn with m = n")
        if l < 1:
            raise ValueError("delta is defined for l >= 1")
        res = self.res
        src, dst = self.cochain_space(l - 1), self.cochain_space(l)
        A = SparseMatrix(dst.dimension, src.dimension, self.field)
        sign = -1 if l % 2 else 1
        n, m = res.n, res.m
        one = self.field.one

        def put(col, lab, left, x, right, coef):
            lab = (lab[0], lab[1], lab[2] % n, lab[3] % m)
            for xw, c1 in res.mul(left, x).items():
                for z, c2 in res.mul(xw, right).items():
                    A.add_to(dst.index[(lab, z)], col, coef * c1 * c2)

        for col, ((_, p, i, j), x) in enumerate(src.basis):
            put(col, (l, p, i, j - 1), (res.a(i, j - 1),), x, (), one)
            put(col, (l, p + 1, i - 1, j), (res.b(i - 1, j),), x, (), res.qrow(i - 1, j, l - p - 1))
            put(col, (l, p + 1, i, j), (), x, (res.b(i + p, j + l - p - 1),), one * sign)
            put(col, (l, p, i, j), (), x, (res.a(i + p, j + l - p - 1),),
                res.qcol(i, j + l - p - 1, p) * sign)
        return A

    def rank_delta(self, l: int) -> int:
        if l < 1:
            return 0
        if l not in self._ranks:
            D = self.delta_induced(l)
            self._ranks[l] = rank(D) if D.nrows and D.ncols else 0
        return self._ranks[l]

    def hh_dimension(self, l: int) -> int:
        return self.cochain_space(l).dimension - self.rank_delta(l + 1) - self.rank_delta(l)

    def hh_table(self, max_degree: int) -> list[dict]:
        rows = []
        for l in range(max_degree + 1):
            rows.append({
                "degree": l,
                "dim_M": self.cochain_space(l).dimension,
                "rank_delta_l": self.rank_delta(l),
                "rank_delta_next": self.rank_delta(l + 1),
                "dim_HH": self.hh_dimension(l),
            })
        return rows

    def is_closed(self, f: Cocycle) -> bool:
        D = self.delta_induced(f.l + 1)
        return not any(D.matvec(f.vector))

    def is_coboundary(self, f: Cocycle) -> bool:
        if f.l == 0:
            return not f
        D = self.delta_induced(f.l)
        if D.ncols == 0:
            return not f
        return solve(D, f.vector) is not None

    def same_class(self, f: Cocycle, g: Cocycle) -> bool:
        if f.l != g.l:
            raise ValueError("classes live in different degrees")
        return self.is_coboundary(Cocycle(f.l, [a - b for a, b in zip(f.vector, g.vector)]))

    def center_dimension(self) -> int:
        """dim Z(Lambda) from z a = a z over the algebra's basis, for comparison with HH^0."""
        res = self.res
        words = [w for (u, v), ws in res.basis_words.items() if u == v for w in ws]
        verts = [u for (u, v), ws in res.basis_words.items() if u == v for _ in ws]
        rows: dict = {}
        entries = []
        for col, (w, v) in enumerate(zip(words, verts)):
            for g in res.Q.arrow_names:
                s, t = res.Q.source(g), res.Q.target(g)
                acc: dict = {}
                if t == v:
                    for z, c in res.mul((g,), w).items():
                        _add(acc, (s, z), c)
                if s == v:
                    for z, c in res.mul(w, (g,)).items():
                        _add(acc, (s, z), -c)
                for key, c in acc.items():
                    r = rows.setdefault((g, key), len(rows))
                    entries.append(((r, col), c))
        A = SparseMatrix(len(rows), len(words), self.field, entries)
        return len(kernel_basis(A))

    # -- named classes ----------------------------------------------------------------

    def unit(self) -> Cocycle:
        return self.cochain(0, {((0, 0, i, j), ()): 1 for i in range(self.res.n) for j in range(self.res.m)}, "1")

    def f_a(self) -> Cocycle:
        r = self.res
        return self.cochain(1, {((1, 0, i, j), (r.a(i, j),)): 1 for i in range(r.n) for j in range(r.m)}, "u")

    def f_b(self) -> Cocycle:
        r = self.res
        return self.cochain(1, {((1, 1, i, j), (r.b(i, j),)): 1 for i in range(r.n) for j in range(r.m)}, "v")

    def f_ab(self) -> Cocycle:
        r = self.res
        return self.cochain(2, {((2, 1, i, j), (r.a(i, j), r.b(i, j + 1))): 1
                                for i in range(r.n) for j in range(r.m)}, "uv")

    # -- lifting and products --------------------------------------------------------

    def _block(self, k, s, t):
        key = (k, s, t)
        if key not in self._blocks:
            res = self.res
            rows = res.basis(s, t) if k == 0 else res.module_block_basis(k - 1, s, t)
            self._blocks[key] = (res.block_matrix(k, s, t), {b: r for r, b in enumerate(rows)},
                                 res.module_block_basis(k, s, t))
        return self._blocks[key]

    def _solve_block(self, k, s, t, target: dict) -> dict:
        A, ridx, cols = self._block(k, s, t)
        rhs = [self.field.zero] * A.nrows
        for key, c in target.items():
            rhs[ridx[key]] = c
        x = solve(A, rhs) if A.ncols else (None if any(rhs) else [])
        if x is None:
            raise LiftingError(f"no lift in degree {k} for the block {s} -> {t}")
        return {cols[r]: c for r, c in enumerate(x) if c}

    def lift(self, g: Cocycle, up_to: int) -> list[dict]:
        """Chain map psi_k : P_{l+k} -> P_k (k <= up_to) over the cocycle g of degree l."""
        res = self.res
        b = g.l
        psis = []
        psi0 = {}
        for lab in res.labels(b):
            s, t = res.endpoints(lab)
            psi0[lab] = self._solve_block(0, s, t, self.value(g, lab))
        psis.append(psi0)
        for k in range(1, up_to + 1):
            psik = {}
            for lab in res.labels(b + k):
                s, t = res.endpoints(lab)
                target = res.apply_map(psis[-1], res.differential_of(lab))
                psik[lab] = self._solve_block(k, s, t, target)
            psis.append(psik)
        return psis

    def compose(self, f: Cocycle, psi: dict, degree: int) -> Cocycle:
        """The cochain f o psi on P_degree."""
        res = self.res
        out: dict = {}
        for lab, img in psi.items():
            for (x, lab2, y), c in img.items():
                for w, c0 in self.value(f, lab2).items():
                    for xw, c1 in res.mul(x, w).items():
                        for z, c2 in res.mul(xw, y).items():
                            _add(out, (lab, z), c * c0 * c1 * c2)
        return self.cochain(degree, out)

    def cup_product(self, f: Cocycle, g: Cocycle) -> Cocycle:
        """Product of the classes of f and g: lift g to a chain map, then compose with f."""
        for h in (f, g):
            if not self.is_closed(h):
                raise LiftingError(f"cochain {h.name or ''} is not closed")
        psis = self.lift(g, f.l)
        prod = self.compose(f, psis[f.l], f.l + g.l)
        prod.name = f"{f.name}*{g.name}" if f.name and g.name else ""
        return prod

    def explicit_lift_of_v(self) -> list[dict]:
        """Hand-written psi_0, psi_1 over v = f_b, used as a regression fixture."""
        r = self.res
        F = self.field
        psi0, psi1 = {}, {}
        for i in range(r.n):
            for j in range(r.m):
                psi0[(1, 0, i, j)] = {}
                psi0[(1, 1, i, j)] = {((r.b(i, j),), (0, 0, (i + 1) % r.n, j), ()): F.one}
                psi1[(2, 0, i, j)] = {}
                psi1[(2, 1, i, j)] = {((r.b(i, j),), (1, 0, (i + 1) % r.n, j), ()): -r.q(i, j)}
                psi1[(2, 2, i, j)] = {((r.b(i, j),), (1, 1, (i + 1) % r.n, j), ()): -F.one}
        return [psi0, psi1]

    def is_chain_map(self, g: Cocycle, psis: list[dict]) -> bool:
        """mu psi_0 = g and d_k psi_k = psi_{k-1} d_{l+k}."""
        res = self.res
        for lab, img in psis[0].items():
            got: dict = {}
            for (x, _, y), c in img.items():
                for z, c1 in res.mul(x, y).items():
                    _add(got, z, c * c1)
            if got != self.value(g, lab):
                return False
        for k in range(1, len(psis)):
            dk = res.differential(k)
            for lab, img in psis[k].items():
                lhs = res.apply_map(dk, img)
                rhs = res.apply_map(psis[k - 1], res.differential_of(lab))
                if lhs != rhs:
                    return False
        return True


# -- ring verdict ---------------------------------------------------------------------

@dataclass
class RingVerdict:
    skipped: bool
    notice: str = ""
    dims: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.skipped and all(self.checks.values())

    def to_dict(self) -> dict:
        return {"skipped": self.skipped, "notice": self.notice, "dims": self.dims,
                "checks": dict(self.checks), "exterior_algebra": self.ok}


def hypothesis_holds(fp: FamilyParams) -> bool:
    """True when the product of all q entries has infinite multiplicative order."""
    return order_of(parameter_product(fp)) == INFINITY


def hh_ring_low_degree(fp: FamilyParams, max_degree: int | None = None, hh: Hochschild | None = None) -> RingVerdict:
    """Check dims (1, 2, 1, 0, ...) and the exterior relations on u = f_a, v = f_b."""
    if not hypothesis_holds(fp):
        return RingVerdict(True, "parameter product is a root of unity; no claim is made")
    hh = hh or Hochschild(fp)
    top = max_degree if max_degree is not None else 3 * fp.n + 2
    dims = [hh.hh_dimension(l) for l in range(top + 1)]
    out = RingVerdict(False, dims=dims)
    expected = [1, 2, 1] + [0] * (top - 2)
    out.checks["dims 1,2,1,0,..."] = dims == expected[: top + 1]
    u, v = hh.f_a(), hh.f_b()
    out.checks["u, v closed"] = hh.is_closed(u) and hh.is_closed(v)
    out.checks["u, v independent in HH^1"] = _independent(hh, [u, v])
    uv, vu = hh.cup_product(u, v), hh.cup_product(v, u)
    out.checks["u*v nonzero"] = not hh.is_coboundary(uv)
    if hh.field.characteristic == 2:
        out.checks["u*v = v*u"] = hh.same_class(uv, vu)
    else:
        out.checks["u*v + v*u = 0"] = hh.is_coboundary(Cocycle(2, [a + b for a, b in zip(uv.vector, vu.vector)]))
    out.checks["u*u = 0"] = hh.is_coboundary(hh.cup_product(u, u))
    out.checks["v*v = 0"] = hh.is_coboundary(hh.cup_product(v, v))
    out.checks["u*v ~ f_ab"] = hh.same_class(uv, hh.f_ab())
    return out


def _independent(hh: Hochschild, fs: list[Cocycle]) -> bool:
    """The classes of fs are linearly independent modulo coboundaries."""
    l = fs[0].l
    D = hh.delta_induced(l) if l >= 1 else None
    dim = hh.cochain_space(l).dimension
    base = rank(D) if D is not None and D.ncols else 0
    stacked = SparseMatrix(dim, (D.ncols if D is not None else 0) + len(fs), hh.field)
    if D is not None:
        for (r, c), v in D.entries.items():
            stacked.add_to(r, c, v)
    off = D.ncols if D is not None else 0
    for k, f in enumerate(fs):
        for r, v in enumerate(f.vector):
            if v:
                stacked.add_to(r, off + k, v)
    return rank(stacked) == base + len(fs)


__all__ = [
    "CochainSpace",
    "Cocycle",
    "Hochschild",
    "LiftingError",
    "RingVerdict",
    "closed_form_dimension",
    "hh_ring_low_degree",
    "hypothesis_holds",
    "label_str",
]
