"""Minimal projective bimodule resolution of the torus algebras Lambda_mn.

P_l is the free bimodule on generators g[l,p,i,j], 0 <= p <= l, one for
every vertex (i, j) of the torus.  The generator g[l,p,i,j] is a
combination of length-l paths from (i, j) to (i+p, j+l-p), each with
exactly p b-arrows.

An element of P_l is a dict ``{(left, label, right): Scalar}`` where
``left`` and ``right`` are normal words of the algebra (``()`` stands for
the idempotent at the matching end of the generator) and ``label`` is the
tuple (l, p, i, j).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb

from .exact import SparseMatrix, kernel_basis, rank
from .families import FamilyParams, build_presentation
from .quiver import enumerate_paths

PATH_CAP = 200_000


class SizeCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ResGenerator:
    l: int
    p: int
    i: int
    j: int
    source: tuple
    target: tuple
    expansion: dict  # word -> Scalar, in the free path algebra

    @property
    def label(self):
        return (self.l, self.p, self.i, self.j)

    def monomial_count(self) -> int:
        return len(self.expansion)


def _add(acc: dict, key, c):
    v = acc.get(key)
    v = c if v is None else v + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def label_str(label) -> str:
    return "g[{},{},{},{}]".format(*label)


class Resolution:
    """Generators, differentials and checks for one Lambda_mn algebra."""

    def __init__(self, fp: FamilyParams):
        if fp.family != "Lambda_mn":
            raise ValueError("the resolution is built for the Lambda_mn family")
        self.fp = fp
        self.m, self.n = fp.m, fp.n
        self.field = fp.field
        self.P = build_presentation(fp)
        self.R = self.P.reduction_system()
        self.Q = self.P.quiver
        self._gens: dict = {}
        self._lock = threading.Lock()
        self._basis_from: dict = {}
        self._build_basis()

    # -- the algebra ---------------------------------------------------------------

    def _build_basis(self):
        """Normal words grouped by (source, target); () is the idempotent."""
        self.basis_words = {}
        for v in self.Q.vertices:
            self.basis_words.setdefault((v, v), []).append(())
        L = 1
        while True:
            words = self.R.normal_words(L)
            if not words:
                break
            for w in words:
                self.basis_words.setdefault((self.Q.source(w[0]), self.Q.target(w[-1])), []).append(w)
            L += 1
        self.max_length = L - 1

    def basis(self, u, v) -> list[tuple]:
        return self.basis_words.get((u, v), [])

    def word_ends(self, w: tuple, at=None):
        if not w:
            return at, at
        return self.Q.source(w[0]), self.Q.target(w[-1])

    def mul(self, w1: tuple, w2: tuple) -> dict:
        """Normal form of w1 w2 (caller guarantees the endpoints meet)."""
        if not w1:
            return {w2: self.field.one}
        if not w2:
            return {w1: self.field.one}
        return self.R.reduce_word(w1 + w2)

    def q(self, i, j):
        return self.fp.qt(i, j)

    def qrow(self, i, j, count):
        """q_{i,j} q_{i,j+1} ... (count factors)."""
        out = self.field.one
        for s in range(count):
            out = out * self.q(i, j + s)
        return out

    def qcol(self, i, j, count):
        """q_{i,j} q_{i+1,j} ... (count factors)."""
        out = self.field.one
        for r in range(count):
            out = out * self.q(i + r, j)
        return out

    def a(self, i, j) -> str:
        return f"a{i % self.n}_{j % self.m}"

    def b(self, i, j) -> str:
        return f"b{i % self.n}_{j % self.m}"

    def endpoints(self, label):
        l, p, i, j = label
        return (i % self.n, j % self.m), ((i + p) % self.n, (j + l - p) % self.m)

    def labels(self, l: int) -> list[tuple]:
        return [(l, p, i, j) for p in range(l + 1) for i in range(self.n) for j in range(self.m)]

    # -- generators ----------------------------------------------------------------

    def generator(self, l: int, p: int, i: int, j: int):
        """g[l,p,i,j] expanded in the free path algebra; None when p is out of range."""
        if p < 0 or p > l:
            return None
        i, j = i % self.n, j % self.m
        key = (l, p, i, j)
        hit = self._gens.get(key)
        if hit is not None:
            return hit
        F = self.field
        src, tgt = self.endpoints(key)
        if l == 0:
            exp = {(): F.one}
        elif l <= 2:
            exp = self._low_degree(l, p, i, j)
        else:
            exp = {}
            g1 = self.generator(l - 1, p, i, j + 1)
            if g1 is not None:
                for w, c in g1.expansion.items():
                    _add(exp, (self.a(i, j),) + w, c)
            g2 = self.generator(l - 1, p - 1, i + 1, j)
            if g2 is not None:
                coef = self.qrow(i, j, l - p)
                for w, c in g2.expansion.items():
                    _add(exp, (self.b(i, j),) + w, coef * c)
        gen = ResGenerator(l, p, i, j, src, tgt, exp)
        with self._lock:
            self._gens.setdefault(key, gen)
        return self._gens[key]

    def _low_degree(self, l, p, i, j) -> dict:
        F = self.field
        a, b = self.a, self.b
        if l == 1:
            return {(a(i, j),) if p == 0 else (b(i, j),): F.one}
        if p == 0:
            return {(a(i, j), a(i, j + 1)): F.one}
        if p == 2:
            return {(b(i, j), b(i + 1, j)): F.one}
        out = {(a(i, j), b(i, j + 1)): F.one}
        _add(out, (b(i, j), a(i + 1, j)), self.q(i, j))
        return out

    def left_recursion(self, l, p, i, j) -> dict:
        """a_ij g[l-1,p,i,j+1] + q_ij...q_i,j+l-p-1 b_ij g[l-1,p-1,i+1,j]."""
        exp: dict = {}
        g1 = self.generator(l - 1, p, i, j + 1)
        if g1 is not None:
            for w, c in g1.expansion.items():
                _add(exp, (self.a(i, j),) + w, c)
        g2 = self.generator(l - 1, p - 1, i + 1, j)
        if g2 is not None:
            coef = self.qrow(i, j, l - p)
            for w, c in g2.expansion.items():
                _add(exp, (self.b(i, j),) + w, coef * c)
        return exp

    def right_recursion(self, l, p, i, j) -> dict:
        """g[l-1,p-1,i,j] b_{i+p-1,j+l-p} + q_{i,j+l-p-1}...q_{i+p-1,j+l-p-1} g[l-1,p,i,j] a_{i+p,j+l-p-1}."""
        exp: dict = {}
        g1 = self.generator(l - 1, p - 1, i, j)
        if g1 is not None:
            for w, c in g1.expansion.items():
                _add(exp, w + (self.b(i + p - 1, j + l - p),), c)
        g2 = self.generator(l - 1, p, i, j)
        if g2 is not None:
            coef = self.qcol(i, j + l - p - 1, p)
            for w, c in g2.expansion.items():
                _add(exp, w + (self.a(i + p, j + l - p - 1),), coef * c)
        return exp

    def right_recursion_check(self, l, p, i, j) -> bool:
        if l < 1:
            raise ValueError("l must be at least 1")
        g = self.generator(l, p, i, j)
        return g is not None and g.expansion == self.right_recursion(l, p, i, j)

    # -- the oracle K_l ------------------------------------------------------------

    def K_space_oracle(self, l: int, cap: int = PATH_CAP) -> dict:
        """Basis of the intersection of X^s R X^t (s + t = l - 2), per endpoint block.

        Returns ``{(source, target): (words, list of dense vectors)}``.
        """
        if l < 2:
            raise ValueError("l must be at least 2")
        paths = enumerate_paths(self.Q, l, order=self.P.arrow_order)
        if len(paths) > cap:
            raise SizeCapExceeded(f"{len(paths)} paths of length {l} exceed the cap {cap}")
        F = self.field
        blocks: dict = {}
        for p in paths:
            blocks.setdefault((p.source, p.target), []).append(p.arrows)
        rels = [{p.arrows: c for p, c in r} for r in self.P.relations]
        out = {}
        for key, words in blocks.items():
            idx = {w: k for k, w in enumerate(words)}
            ann_rows = []
            for s in range(l - 1):
                # spanning set of X^s R X^t inside this block
                span = []
                seen = set()
                for w in words:
                    head, mid, tail = w[:s], w[s:s + 2], w[s + 2:]
                    for r in rels:
                        if mid in r and (head, tail, id(r)) not in seen:
                            seen.add((head, tail, id(r)))
                            vec = {}
                            for rw, c in r.items():
                                full = head + rw + tail
                                if full in idx:
                                    vec[idx[full]] = c
                            span.append(vec)
                A = SparseMatrix(len(span), len(words), F, [((r, c), v) for r, vec in enumerate(span) for c, v in vec.items()])
                ann_rows.extend(kernel_basis(A))
            B = SparseMatrix(len(ann_rows), len(words), F)
            for r, vec in enumerate(ann_rows):
                for c, v in enumerate(vec):
                    if v:
                        B.add_to(r, c, v)
            out[key] = (words, kernel_basis(B))
        return out

    def span_matches_oracle(self, l: int) -> bool:
        """span{g[l,...]} equals the oracle space, block by block."""
        K = self.K_space_oracle(l)
        F = self.field
        gens_by_block: dict = {}
        for lab in self.labels(l):
            g = self.generator(*lab)
            gens_by_block.setdefault((g.source, g.target), []).append(g)
        keys = set(K) | set(gens_by_block)
        for key in keys:
            words, kvecs = K.get(key, ([], []))
            gens = gens_by_block.get(key, [])
            idx = {w: k for k, w in enumerate(words)}
            G = SparseMatrix(len(gens), len(words), F)
            for r, g in enumerate(gens):
                for w, c in g.expansion.items():
                    if w not in idx:
                        return False
                    G.add_to(r, idx[w], c)
            both = SparseMatrix(len(gens) + len(kvecs), len(words), F, G.entries)
            for r, vec in enumerate(kvecs, start=len(gens)):
                for c, v in enumerate(vec):
                    if v:
                        both.add_to(r, c, v)
            rg = rank(G)
            if rg != len(gens) or rg != len(kvecs) or rank(both) != rg:
                return False
        return True

    # -- differentials -----------------------------------------------------------------

    def differential_of(self, label) -> dict:
        """d_l(1 (x) g (x) 1) as a P_{l-1} element."""
        l, p, i, j = label
        if l < 1:
            raise ValueError("d_l is defined for l >= 1")
        F = self.field
        sign = -1 if l % 2 else 1
        out: dict = {}
        n, m = self.n, self.m
        if p <= l - 1:
            _add(out, ((self.a(i, j),), (l - 1, p, i % n, (j + 1) % m), ()), F.one)
        if p >= 1:
            _add(out, ((self.b(i, j),), (l - 1, p - 1, (i + 1) % n, j % m), ()), self.qrow(i, j, l - p))
            _add(out, ((), (l - 1, p - 1, i % n, j % m), (self.b(i + p - 1, j + l - p),)), F(sign))
        if p <= l - 1:
            _add(out, ((), (l - 1, p, i % n, j % m), (self.a(i + p, j + l - p - 1),)),
                 self.qcol(i, j + l - p - 1, p) * sign)
        return out

    def differential(self, l: int) -> dict:
        return {lab: self.differential_of(lab) for lab in self.labels(l)}

    def apply_map(self, images: dict, elem: dict) -> dict:
        """Extend ``images`` (label -> element of the target module) bimodule-linearly."""
        out: dict = {}
        for (x, lab, y), c in elem.items():
            img = images.get(lab)
            if not img:
                continue
            for (x2, lab2, y2), c2 in img.items():
                lefts = self.mul(x, x2)
                rights = self.mul(y2, y)
                for lw, lc in lefts.items():
                    for rw, rc in rights.items():
                        _add(out, (lw, lab2, rw), c * c2 * lc * rc)
        return out

    def d_squared_zero(self, l: int, differential=None) -> bool:
        """d_l o d_{l+1} = 0, checked on every generator of P_{l+1}."""
        dl = differential(l) if differential else self.differential(l)
        for lab in self.labels(l + 1):
            src = differential(l + 1)[lab] if differential else self.differential_of(lab)
            if self.apply_map(dl, src):
                return False
        return True

    def minimality_check(self, l: int, differential=None) -> bool:
        """Every term of d_l has a left or right factor of positive length."""
        d = differential if differential is not None else self.differential(l)
        for lab, img in d.items():
            for (x, _, y), c in img.items():
                if not x and not y:
                    return False
        return True

    def minimality_violations(self, l: int, differential) -> list:
        out = []
        for lab, img in differential.items():
            for (x, lab2, y), c in img.items():
                if not x and not y:
                    out.append((lab, lab2, c))
        return out

    # -- exactness -------------------------------------------------------------------

    def module_block_basis(self, l: int, u, v) -> list[tuple]:
        """Basis (x, label, y) of e_u P_l e_v."""
        out = []
        for lab in self.labels(l):
            s, t = self.endpoints(lab)
            for x in self.basis(u, s):
                for y in self.basis(t, v):
                    out.append((x, lab, y))
        return out

    def block_matrix(self, l: int, u, v) -> SparseMatrix:
        """Matrix of d_l : e_u P_l e_v -> e_u P_{l-1} e_v (d_0 is multiplication)."""
        cols = self.module_block_basis(l, u, v)
        F = self.field
        if l == 0:
            rows = self.basis(u, v)
            ridx = {w: k for k, w in enumerate(rows)}
            A = SparseMatrix(len(rows), len(cols), F)
            for c, (x, lab, y) in enumerate(cols):
                for w, coef in self.mul(x, y).items():
                    A.add_to(ridx[w], c, coef)
            return A
        rows = self.module_block_basis(l - 1, u, v)
        ridx = {b: k for k, b in enumerate(rows)}
        dl = {}
        A = SparseMatrix(len(rows), len(cols), F)
        for c, (x, lab, y) in enumerate(cols):
            if lab not in dl:
                dl[lab] = self.differential_of(lab)
            img = self.apply_map({lab: dl[lab]}, {(x, lab, y): F.one})
            for key, coef in img.items():
                A.add_to(ridx[key], c, coef)
        return A

    def exactness_spot_check(self, l: int, at=None, cap: int = PATH_CAP) -> bool:
        """dim ker d_l = rank d_{l+1} on e_u P_l e_v (all vertex pairs by default).

        At l = 0 the map d_0 is multiplication P_0 -> Lambda.
        """
        pairs = [at] if at is not None else [(u, v) for u in self.Q.vertices for v in self.Q.vertices]
        for u, v in pairs:
            size = len(self.module_block_basis(l, u, v))
            if size > cap:
                raise SizeCapExceeded(f"block of size {size} exceeds the cap {cap}")
            Dl = self.block_matrix(l, u, v)
            Dn = self.block_matrix(l + 1, u, v)
            if Dl.ncols - rank(Dl) != rank(Dn):
                return False
        return True

    def augmentation_surjective(self) -> bool:
        for (u, v), words in self.basis_words.items():
            if rank(self.block_matrix(0, u, v)) != len(words):
                return False
        return True

    # -- text dump ---------------------------------------------------------------------

    def dump(self, max_l: int) -> str:
        lines = []
        for l in range(max_l + 1):
            for lab in self.labels(l):
                g = self.generator(*lab)
                terms = " + ".join(f"{c}*{'.'.join(w) if w else 'e'}" for w, c in
                                   sorted(g.expansion.items(), key=lambda it: self.P.word_key(it[0])))
                lines.append(f"{label_str(lab)} = {terms}")
            if l >= 1:
                for lab in self.labels(l):
                    img = self.differential_of(lab)
                    terms = " + ".join(
                        f"{c}*({'.'.join(x) or 'e'}|{label_str(lab2)}|{'.'.join(y) or 'e'})"
                        for (x, lab2, y), c in sorted(img.items(), key=lambda it: (it[0][1], it[0][0], it[0][2])))
                    lines.append(f"d[{l}]({label_str(lab)}) = {terms}")
        return "\n".join(lines) + "\n"


def expected_generator_count(l: int, m: int, n: int) -> int:
    return (l + 1) * m * n


def expected_monomials(l: int, p: int) -> int:
    return comb(l, p)
