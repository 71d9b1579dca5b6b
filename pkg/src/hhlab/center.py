"""Length-truncated graded centers of Koszul duals.

An element z of length L is in the graded center when e z = z e for every
trivial path e and g z = (-1)^L z g for every arrow g.  For a fixed L this
is a linear system over the normal words of length L; when the presentation
carries degree weights the system splits into one block per degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exact import SparseMatrix, kernel_basis, rank
from .families import FamilyParams, predicted_generators, predicted_model
from .quadratic import QuadraticPresentation
from .quiver import LinCombo, Path, _raw


def _residual_terms(E: QuadraticPresentation, R, word: tuple, g: str, sign: int) -> dict:
    """Normal form of g*word - sign*word*g for one nontrivial word."""
    Q = E.quiver
    out: dict = {}
    if Q.target(g) == Q.source(word[0]):
        out.update(R.reduce_word((g,) + word))
    if Q.target(word[-1]) == Q.source(g):
        for w, c in R.reduce_word(word + (g,)).items():
            v = out.get(w)
            v = -c * sign if v is None else v - c * sign
            if v:
                out[w] = v
            else:
                del out[w]
    return out


def _homogeneous_length(z: LinCombo) -> int:
    lengths = z.lengths()
    if len(lengths) > 1:
        raise ValueError("element is not length-homogeneous")
    return lengths.pop() if lengths else 0


def centrality_residual(E: QuadraticPresentation, z: LinCombo) -> list[LinCombo]:
    """Residuals e z - z e (each vertex) then g z - (-1)^|z| z g (each arrow)."""
    L = _homogeneous_length(z)
    R = E.reduction_system()
    F = E.field
    Q = E.quiver
    sign = -1 if L % 2 else 1
    out = []
    for v in Q.vertices:
        terms = {}
        for p, c in z:
            if (p.source == v) != (p.target == v):
                terms[p] = c if p.source == v else -c
        out.append(_raw(terms, F))
    for g in E.arrow_order:
        acc: dict = {}
        for p, c in z:
            if p.arrows:
                res = _residual_terms(E, R, p.arrows, g, sign)
            else:
                res = {}
                if Q.target(g) == p.source:
                    res[(g,)] = F.one
                if Q.source(g) == p.source:
                    res[(g,)] = res.get((g,), F.zero) - sign
                res = {w: x for w, x in res.items() if x}
            for w, x in res.items():
                nv = acc.get(w)
                nv = c * x if nv is None else nv + c * x
                if nv:
                    acc[w] = nv
                else:
                    del acc[w]
        out.append(E.element(acc))
    return out


def is_central(E: QuadraticPresentation, z: LinCombo) -> bool:
    return all(not r for r in centrality_residual(E, z))


@dataclass
class CenterPiece:
    length: int
    basis: list
    degrees: list = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def by_degree(self) -> dict:
        out: dict = {}
        for z, d in zip(self.basis, self.degrees):
            out.setdefault(d, []).append(z)
        return out


def identity_element(E: QuadraticPresentation) -> LinCombo:
    return _raw({Path(v, v, ()): E.field.one for v in E.quiver.vertices}, E.field)


def center_piece(E: QuadraticPresentation, length: int) -> CenterPiece:
    """Basis of the graded center in the given length, degree block by block."""
    F = E.field
    Q = E.quiver
    R = E.reduction_system()
    if length == 0:
        verts = Q.vertices
        idx = {v: k for k, v in enumerate(verts)}
        rows = []
        for g in E.arrow_order:
            row = {}
            s, t = idx[Q.source(g)], idx[Q.target(g)]
            # g e_v - e_v g has coefficient [t == v] - [s == v] on g
            row[t] = row.get(t, F.zero) + 1
            row[s] = row.get(s, F.zero) - 1
            rows.append({k: x for k, x in row.items() if x})
        A = SparseMatrix(len(rows), len(verts), F)
        for r, row in enumerate(rows):
            for c, x in row.items():
                A.add_to(r, c, x)
        basis = [_raw({Path(verts[k], verts[k], ()): x for k, x in enumerate(vec) if x}, F) for vec in kernel_basis(A)]
        return CenterPiece(0, basis, [0] * len(basis) if E.degree_weights else [])
    sign = -1 if length % 2 else 1
    # e z = z e for all e means only closed words can appear
    loops = [w for w in R.normal_words(length) if Q.source(w[0]) == Q.target(w[-1])]
    if E.degree_weights:
        blocks: dict = {}
        for w in loops:
            blocks.setdefault(E.degree(w), []).append(w)
        ordered = sorted(blocks.items())
    else:
        ordered = [(None, loops)]
    basis, degrees = [], []
    for deg, words in ordered:
        rowkey: dict = {}
        entries = []
        for col, w in enumerate(words):
            for g in E.arrow_order:
                for rw, c in _residual_terms(E, R, w, g, sign).items():
                    r = rowkey.setdefault((g, rw), len(rowkey))
                    entries.append(((r, col), c))
        A = SparseMatrix(len(rowkey), len(words), F, entries)
        for vec in kernel_basis(A):
            basis.append(E.element({w: c for w, c in zip(words, vec) if c}))
            degrees.append(deg)
    return CenterPiece(length, basis, degrees if E.degree_weights else [])


# -- predicted models -------------------------------------------------------------

def model_monomials(model, length: int) -> list[tuple]:
    """Exponent triples (a, b, c) for x^a y^b w^c counted by :func:`model_hilbert`."""
    if length == 0:
        return [(0, 0, 0)]
    shape = model.shape
    if shape == "ScalarsOnly":
        return []
    out = []
    X, Y = model.x_len, model.y_len
    if shape == "TruncatedCone":
        W, p = model.w_len, model.p
        for c in range(p):
            rest = length - c * W
            if rest < 0:
                break
            for a in range(rest // X + 1):
                r2 = rest - a * X
                if r2 % Y:
                    continue
                b = r2 // Y
                if a >= 1 and b == 0 and c == 0:
                    continue
                out.append((a, b, c))
        return out
    for s in range(length // X + 1):
        r2 = length - s * X
        if r2 % Y:
            continue
        t = r2 // Y
        if t < 1:
            continue
        if shape == "KPlusXYIdealEven" and (s + t) % 2:
            continue
        out.append((s, t, 0))
    return out


def model_hilbert(model, length: int) -> int:
    return len(model_monomials(model, length))


@dataclass
class MatchReport:
    model: object
    L_max: int
    rows: list = field(default_factory=list)          # (length, computed, predicted)
    verdicts: dict = field(default_factory=dict)      # name -> bool
    details: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return all(c == p for _, c, p in self.rows) and all(self.verdicts.values())

    def table(self) -> str:
        lines = [f"model: {self.model.label()}"]
        if self.model.shape != "ScalarsOnly":
            x, y, w = self.model.gen_lengths
            lines.append(f"generator lengths: |x|={x} |y|={y}" + (f" |w|={w}" if w else ""))
        if self.model.epsilon is not None:
            lines.append(f"epsilon: {self.model.epsilon}")
        lines.append(f"{'length':>6} {'computed':>9} {'predicted':>9}")
        for L, c, p in self.rows:
            flag = "" if c == p else "  MISMATCH"
            lines.append(f"{L:>6} {c:>9} {p:>9}{flag}")
        for name, ok in self.verdicts.items():
            lines.append(f"{name}: {'ok' if ok else 'FAIL'}")
        lines.append(f"consistent up to length {self.L_max}: {self.consistent}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        m = self.model
        return {
            "model": m.label(),
            "gen_lengths": list(m.gen_lengths),
            "epsilon": None if m.epsilon is None else str(m.epsilon),
            "L_max": self.L_max,
            "rows": [{"length": L, "computed": c, "predicted": p} for L, c, p in self.rows],
            "verdicts": dict(self.verdicts),
            "details": self.details,
            "consistent": self.consistent,
        }


def default_L_max(model) -> int:
    if model.shape == "ScalarsOnly":
        return 12
    return 2 * (model.x_len + model.y_len)


def _dict_power(R, x: dict, k: int) -> dict:
    out = x
    for _ in range(k - 1):
        out = R.multiply(out, x)
    return out


def _words(z: LinCombo) -> dict:
    return {p.arrows: c for p, c in z}


def match_structure(E: QuadraticPresentation, fp: FamilyParams, L_max: int | None = None) -> MatchReport:
    """Compare computed center pieces with the predicted model up to L_max."""
    model = predicted_model(fp)
    L_max = default_L_max(model) if L_max is None else L_max
    report = MatchReport(model, L_max)
    R = E.reduction_system()
    pieces = [center_piece(E, L) for L in range(L_max + 1)]
    for L, piece in enumerate(pieces):
        report.rows.append((L, piece.dimension, model_hilbert(model, L)))
    if model.shape == "ScalarsOnly":
        return report
    gens = predicted_generators(fp, E=E)
    x, y = _words(gens["x"]), _words(gens["y"])
    w = _words(gens["w"]) if "w" in gens else None
    xy = R.multiply(x, y)
    if model.shape == "KPlusXYIdealEven":
        # only even products survive: y^2 and x y are central, y is not
        report.verdicts["y^2 central"] = is_central(E, E.element(R.multiply(y, y)))
        report.verdicts["y not central"] = not is_central(E, gens["y"])
    else:
        report.verdicts["y central"] = is_central(E, gens["y"])
    yx = R.multiply(y, x)
    report.verdicts["x*y central"] = is_central(E, E.element(xy))
    if w is not None:
        report.verdicts["w central"] = is_central(E, gens["w"])
        lhs = _dict_power(R, w, model.p)
        diff = dict(lhs)
        for word, c in xy.items():
            v = diff.get(word)
            v = -model.epsilon * c if v is None else v - model.epsilon * c
            if v:
                diff[word] = v
            else:
                diff.pop(word, None)
        report.verdicts[f"w^{model.p} = eps*x*y"] = not diff
        report.details["relation"] = f"w^{model.p} - ({model.epsilon})*x*y"
    else:
        report.verdicts["x*y = y*x"] = xy == yx
    # pure powers of x are nonzero but never central
    excluded = True
    i = 1
    xi = x
    while True:
        if not xi or is_central(E, E.element(xi)):
            excluded = False
            break
        i += 1
        if i * model.x_len > L_max:
            break
        xi = R.multiply(xi, x)
    report.verdicts["x^i nonzero and not central"] = excluded
    # model monomials map to independent central elements spanning each piece
    independent = True
    powers = {"x": [None, x], "y": [None, y], "w": [None, w]}

    def power(name, k):
        lst = powers[name]
        while len(lst) <= k:
            lst.append(R.multiply(lst[-1], lst[1]))
        return lst[k]

    for L in range(1, L_max + 1):
        elems = []
        for a, b, c in model_monomials(model, L):
            parts = [power("x", a) if a else None, power("y", b) if b else None, power("w", c) if c else None]
            acc = None
            for part in parts:
                if part is None:
                    continue
                acc = part if acc is None else R.multiply(acc, part)
            elems.append(acc)
        if not elems:
            continue
        basis = pieces[L].basis
        words = sorted({wd for e in elems for wd in e} | {p.arrows for z in basis for p, _ in z}, key=E.word_key)
        idx = {wd: k for k, wd in enumerate(words)}
        A = SparseMatrix(len(elems), len(words), E.field)
        for r, e in enumerate(elems):
            for wd, c in e.items():
                A.add_to(r, idx[wd], c)
        B = SparseMatrix(len(elems) + len(basis), len(words), E.field, A.entries)
        for r, z in enumerate(basis, start=len(elems)):
            for p, c in z:
                B.add_to(r, idx[p.arrows], c)
        if rank(A) != len(elems) or rank(B) != len(elems):
            independent = False
            break
    report.verdicts["model monomials independent and spanning"] = independent
    return report



__all__ = [
    "CenterPiece",
    "MatchReport",
    "centrality_residual",
    "is_central",
    "center_piece",
    "identity_element",
    "model_hilbert",
    "model_monomials",
    "match_structure",
    "default_L_max",
]
