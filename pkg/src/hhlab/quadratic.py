"""Quadratic path-algebra presentations and their rewriting theory.

Monomials are ordered length-left-lexicographically: shorter words are
smaller, and words of equal length compare letter by letter using the
presentation's arrow order.  Every relation is solved for its largest
monomial, giving a quadratic reduction system.  Confluence on length-3
overlaps certifies a Groebner basis, hence a PBW basis and Koszulity.

Inside the engine a nontrivial monomial is a tuple of arrow names and an
element is a dict ``{word: Scalar}``; :class:`~hhlab.quiver.LinCombo` is the
public face.
"""

from __future__ import annotations

import random
import re
import threading

from .exact import Field, SparseMatrix, echelon, kernel_basis
from .quiver import LinCombo, Path, Quiver, _raw, enumerate_paths, parse_vertex

OP_SUFFIX = "^o"


def opposite_name(name: str) -> str:
    return name[: -len(OP_SUFFIX)] if name.endswith(OP_SUFFIX) else name + OP_SUFFIX


class ReductionConflict(ValueError):
    """Two relations share a leading monomial without being proportional."""


class NotConfluent(RuntimeError):
    pass


class QuadraticPresentation:
    """A quiver with homogeneous length-2 relations and an arrow order.

    ``view`` records whether a dual is read on the opposite quiver ("op") or
    re-read on the original quiver ("kq"); it is None for presentations
    that are not duals.
    """

    def __init__(self, quiver: Quiver, relations, field: Field, arrow_order=None,
                 degree_weights=None, view=None, name: str = ""):
        self.quiver = quiver
        self.field = field
        self.arrow_order = list(arrow_order or quiver.arrow_names)
        if sorted(self.arrow_order) != sorted(quiver.arrow_names):
            raise ValueError("arrow_order must list every arrow exactly once")
        self.rank = {a: i for i, a in enumerate(self.arrow_order)}
        self.degree_weights = dict(degree_weights) if degree_weights else None
        self.view = view
        self.name = name
        rels = []
        for r in relations:
            if not isinstance(r, LinCombo):
                raise TypeError("relations must be LinCombo objects")
            if not r:
                continue
            if r.lengths() != {2}:
                raise ValueError(f"relation {r!r} is not homogeneous of length 2")
            if not r.is_uniform():
                raise ValueError(f"relation {r!r} is not uniform")
            for p in r.paths():
                quiver.path(*p.arrows)
            rels.append(r)
        self.relations = rels
        if self.degree_weights is not None:
            for r in rels:
                if len({self.degree(p.arrows) for p in r.paths()}) != 1:
                    raise ValueError(f"relation {r!r} is not degree-homogeneous")
        self._reduction = None
        self._lock = threading.Lock()

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"QuadraticPresentation({tag} {len(self.quiver.vertices)} vertices, {len(self.quiver.arrows)} arrows, {len(self.relations)} relations)"

    def word_key(self, word: tuple):
        rank = self.rank
        return (len(word), [rank[a] for a in word])

    def path_key(self, p: Path):
        if not p.arrows:
            return (0, [], self.quiver.vertices.index(p.source))
        return (len(p.arrows), [self.rank[a] for a in p.arrows], 0)

    def degree(self, word: tuple) -> int:
        if self.degree_weights is None:
            raise ValueError("presentation has no degree weights")
        w = self.degree_weights
        return sum(w.get(a, 0) for a in word)

    def path(self, word) -> Path:
        return self.quiver.path(*word)

    def element(self, word_dict: dict) -> LinCombo:
        return _raw({self.path(w): c for w, c in word_dict.items()}, self.field)

    def lc(self, *terms) -> LinCombo:
        """Build a LinCombo from (coefficient, "a.b") pairs."""
        return LinCombo({self.quiver.path(w): self.field(c) for c, w in terms}, self.field)

    def reduction_system(self) -> "ReductionSystem":
        with self._lock:
            if self._reduction is None:
                self._reduction = build_reduction_system(self)
            return self._reduction

    def relation_span_rank(self) -> int:
        words = sorted({p.arrows for r in self.relations for p in r.paths()})
        idx = {w: i for i, w in enumerate(words)}
        A = SparseMatrix(len(self.relations), len(words), self.field)
        for i, r in enumerate(self.relations):
            for p, c in r:
                A.add_to(i, idx[p.arrows], c)
        return len(echelon(A, reduced=False))

    # -- text format ----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"field: {self.field}"]
        if self.name:
            lines.append(f"name: {self.name}")
        if self.view:
            lines.append(f"view: {self.view}")
        lines.append(self.quiver.to_text().rstrip("\n"))
        for r in self.relations:
            lines.append("rel: " + r.to_str(self.rank))
        lines.append("order: " + " < ".join(self.arrow_order))
        if self.degree_weights:
            for a in self.arrow_order:
                if a in self.degree_weights:
                    lines.append(f"degree: {a}={self.degree_weights[a]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "QuadraticPresentation":
        field = Field.rationals()
        quiver_lines, rel_lines = [], []
        order = None
        weights = {}
        view = None
        name = ""
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(":")
            head, rest = head.strip(), rest.strip()
            if head == "field":
                field = Field.from_spec(rest)
            elif head == "name":
                name = rest
            elif head == "view":
                view = rest or None
            elif head == "rel":
                rel_lines.append(rest)
            elif head == "order":
                order = [a.strip() for a in rest.split("<")]
            elif head == "degree":
                a, _, w = rest.partition("=")
                weights[a.strip()] = int(w)
            else:
                quiver_lines.append(line)
        quiver = Quiver.from_text("\n".join(quiver_lines))
        rels = [parse_lincombo(s, quiver, field) for s in rel_lines]
        return cls(quiver, rels, field, order, weights or None, view, name)


_TRIVIAL = re.compile(r"e\[(.*)\]")


def parse_lincombo(text: str, quiver: Quiver, field: Field) -> LinCombo:
    """Parse ``c1*path1 + c2*path2``; paths are dot-joined arrow names or e[v]."""
    terms = []
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        if not chunk or chunk == "0":
            continue
        if "*" in chunk:
            coeff, _, ptext = chunk.rpartition("*")
        else:
            coeff, ptext = "1", chunk
        ptext = ptext.strip()
        if ptext.startswith("-"):
            coeff, ptext = "-1", ptext[1:]
        if coeff == "-":
            coeff = "-1"
        m = _TRIVIAL.fullmatch(ptext)
        p = quiver.trivial(parse_vertex(m.group(1))) if m else quiver.path(*ptext.split("."))
        terms.append((p, field.parse(coeff)))
    return LinCombo(terms, field)


class ReductionSystem:
    """Rules ``key word -> combination of smaller words`` for a presentation.

    Normal forms are memoised per word.  The memo only grows and each
    entry is final once written, so concurrent readers are safe.
    """

    def __init__(self, P: QuadraticPresentation, rules: dict):
        self.presentation = P
        self.field = P.field
        self.rules = rules
        self._memo: dict = {}
        self._basis: dict = {}
        self._certificate = None

    def __repr__(self):
        return f"ReductionSystem({len(self.rules)} rules)"

    def is_normal(self, word: tuple) -> bool:
        rules = self.rules
        return not any((word[k], word[k + 1]) in rules for k in range(len(word) - 1))

    def reduce_word(self, word: tuple) -> dict:
        """Normal form of a single nontrivial word, as {word: Scalar}."""
        memo = self._memo
        hit = memo.get(word)
        if hit is not None:
            return hit
        rules = self.rules
        for k in range(len(word) - 1):
            rhs = rules.get((word[k], word[k + 1]))
            if rhs is not None:
                out: dict = {}
                head, tail = word[:k], word[k + 2:]
                for w2, c in rhs.items():
                    for w3, c3 in self.reduce_word(head + w2 + tail).items():
                        v = out.get(w3)
                        v = c * c3 if v is None else v + c * c3
                        if v:
                            out[w3] = v
                        else:
                            del out[w3]
                break
        else:
            out = {word: self.field.one}
        memo[word] = out
        return out

    def reduce(self, x: dict) -> dict:
        out: dict = {}
        for w, c in x.items():
            for w2, c2 in self.reduce_word(w).items():
                v = out.get(w2)
                v = c * c2 if v is None else v + c * c2
                if v:
                    out[w2] = v
                else:
                    del out[w2]
        return out

    def multiply(self, x: dict, y: dict) -> dict:
        """Normal form of the product of two word dicts (endpoints checked)."""
        Q = self.presentation.quiver
        out: dict = {}
        for w1, c1 in x.items():
            t = Q.target(w1[-1])
            for w2, c2 in y.items():
                if Q.source(w2[0]) != t:
                    continue
                c = c1 * c2
                for w3, c3 in self.reduce_word(w1 + w2).items():
                    v = out.get(w3)
                    v = c * c3 if v is None else v + c * c3
                    if v:
                        out[w3] = v
                    else:
                        del out[w3]
        return out

    def reduce_randomly(self, x: dict, rng: random.Random) -> dict:
        """Normal form by applying rules at random positions (no memo)."""
        rules = self.rules
        todo = dict(x)
        out: dict = {}
        while todo:
            w = rng.choice(sorted(todo))
            c = todo.pop(w)
            spots = [k for k in range(len(w) - 1) if (w[k], w[k + 1]) in rules]
            if not spots:
                v = out.get(w)
                v = c if v is None else v + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
                continue
            k = rng.choice(spots)
            for w2, c2 in rules[(w[k], w[k + 1])].items():
                nw = w[:k] + w2 + w[k + 2:]
                v = todo.get(nw)
                v = c * c2 if v is None else v + c * c2
                if v:
                    todo[nw] = v
                else:
                    todo.pop(nw, None)
        return out

    def normal_words(self, length: int) -> list[tuple]:
        """All normal words of a positive length, sorted in the monomial order."""
        if length in self._basis:
            return self._basis[length]
        P = self.presentation
        Q = P.quiver
        if length == 1:
            words = [(a,) for a in P.arrow_order]
        else:
            words = []
            rules = self.rules
            for w in self.normal_words(length - 1):
                last = w[-1]
                for a in Q.out_arrows(Q.target(last)):
                    if (last, a) not in rules:
                        words.append(w + (a,))
        words.sort(key=P.word_key)
        self._basis[length] = words
        return words


def build_reduction_system(P: QuadraticPresentation) -> ReductionSystem:
    F = P.field
    lead_of = {}
    for r in P.relations:
        words = {p.arrows: c for p, c in r}
        lead = max(words, key=P.word_key)
        prev = lead_of.get(lead)
        if prev is not None:
            ratio = words[lead] / prev[lead]
            if any(prev.get(w, F.zero) * ratio != c for w, c in words.items()) or len(prev) != len(words):
                raise ReductionConflict(
                    f"relations {_fmt(prev, P)} and {_fmt(words, P)} share the leading monomial {'.'.join(lead)}"
                )
        else:
            lead_of[lead] = words
    cols = sorted({w for rel in lead_of.values() for w in rel}, key=P.word_key, reverse=True)
    idx = {w: i for i, w in enumerate(cols)}
    A = SparseMatrix(len(lead_of), len(cols), F)
    for i, rel in enumerate(lead_of.values()):
        for w, c in rel.items():
            A.add_to(i, idx[w], c)
    rules = {}
    for c, row in echelon(A, reduced=True):
        key = cols[c]
        rules[key] = {cols[cc]: -v for cc, v in row.items() if cc != c}
    return ReductionSystem(P, rules)


def _fmt(words: dict, P) -> str:
    return " + ".join(f"{c}*{'.'.join(w)}" for w, c in sorted(words.items(), key=lambda it: P.word_key(it[0])))


def _to_words(x: LinCombo):
    words, trivial = {}, {}
    for p, c in x:
        if p.arrows:
            words[p.arrows] = c
        else:
            trivial[p] = c
    return words, trivial


def normal_form(P: QuadraticPresentation, R: ReductionSystem, x: LinCombo) -> LinCombo:
    words, trivial = _to_words(x)
    out = P.element(R.reduce(words))
    out.terms.update(trivial)
    return out


class Certificate:
    def __init__(self, overlaps_checked: int, failures: list):
        self.overlaps_checked = overlaps_checked
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return f"Certificate(ok, {self.overlaps_checked} overlaps)"
        return f"Certificate({len(self.failures)} unresolved of {self.overlaps_checked})"


def _apply_at(R: ReductionSystem, word: tuple, k: int) -> dict:
    out: dict = {}
    for w2, c in R.rules[(word[k], word[k + 1])].items():
        for w3, c3 in R.reduce_word(word[:k] + w2 + word[k + 2:]).items():
            v = out.get(w3)
            v = c * c3 if v is None else v + c * c3
            if v:
                out[w3] = v
            else:
                del out[w3]
    return out


def confluence_check(P: QuadraticPresentation, R: ReductionSystem | None = None) -> Certificate:
    """Resolve every overlap x.y.z with x.y and y.z both leading monomials."""
    R = R or P.reduction_system()
    by_first: dict = {}
    for x, y in R.rules:
        by_first.setdefault(x, []).append(y)
    checked = 0
    failures = []
    for x, y in sorted(R.rules, key=P.word_key):
        for z in sorted(by_first.get(y, []), key=P.rank.get):
            word = (x, y, z)
            checked += 1
            left, right = _apply_at(R, word, 0), _apply_at(R, word, 1)
            if left != right:
                failures.append((word, P.element(left), P.element(right)))
    cert = Certificate(checked, failures)
    if R.presentation is P:
        R._certificate = cert
    return cert


def monomial_basis(P: QuadraticPresentation, R: ReductionSystem | None = None, length: int = 0) -> list[Path]:
    R = R or P.reduction_system()
    if R._certificate is None:
        confluence_check(P, R)
    if not R._certificate.ok:
        raise NotConfluent(f"{P!r} has {len(R._certificate.failures)} unresolved overlaps")
    if length == 0:
        return [Path(v, v, ()) for v in P.quiver.vertices]
    return [P.path(w) for w in R.normal_words(length)]


def graded_dimensions(P: QuadraticPresentation, up_to: int) -> list[int]:
    R = P.reduction_system()
    return [len(monomial_basis(P, R, k)) for k in range(up_to + 1)]


def _length2_blocks(Q: Quiver) -> dict:
    blocks: dict = {}
    for p in enumerate_paths(Q, 2):
        blocks.setdefault((p.source, p.target), []).append(p.arrows)
    return blocks


def quadratic_dual(P: QuadraticPresentation, view: str = "op", arrow_order=None,
                   degree_weights=None, name: str = "") -> QuadraticPresentation:
    """The quadratic dual, block by block as an orthogonal complement.

    With ``view="op"`` the dual lives on the opposite quiver, whose arrows
    carry the suffix ``^o`` (applied twice it cancels).  With ``view="kq"``
    the reversed words are read back on the original quiver, which amounts
    to the orthogonal complement under the standard pairing of words.
    """
    if view not in ("op", "kq"):
        raise ValueError("view must be 'op' or 'kq'")
    F = P.field
    Q = P.quiver
    blocks = _length2_blocks(Q)
    rel_by_block: dict = {}
    for r in P.relations:
        rel_by_block.setdefault(r.endpoints(), []).append(r)
    if view == "op":
        dual_q = Quiver(Q.vertices, [(opposite_name(n), t, s) for n, s, t in Q.arrows])
        default_order = [opposite_name(a) for a in P.arrow_order]
    else:
        dual_q = Q
        default_order = P.arrow_order
    duals = []
    for (u, v), words in sorted(blocks.items(), key=lambda kv: (Q.vertices.index(kv[0][0]), Q.vertices.index(kv[0][1]))):
        words = sorted(words, key=P.word_key)
        idx = {w: i for i, w in enumerate(words)}
        rels = rel_by_block.get((u, v), [])
        A = SparseMatrix(len(rels), len(words), F)
        for i, r in enumerate(rels):
            for p, c in r:
                A.add_to(i, idx[p.arrows], c)
        for vec in kernel_basis(A):
            terms = []
            for w, c in zip(words, vec):
                if not c:
                    continue
                if view == "op":
                    dw = (opposite_name(w[1]), opposite_name(w[0]))
                else:
                    dw = w
                terms.append((dual_q.path(*dw), c))
            duals.append(LinCombo(terms, F))
    if degree_weights is None and P.degree_weights and view == "kq":
        degree_weights = P.degree_weights
    return QuadraticPresentation(dual_q, duals, F, arrow_order or default_order, degree_weights,
                                 view=view, name=name or (f"E({P.name})" if P.name else ""))


def same_relation_span(P1: QuadraticPresentation, P2: QuadraticPresentation) -> bool:
    """True when both presentations have equal relation spans on equal quivers."""
    if P1.field != P2.field or set(P1.quiver.arrows) != set(P2.quiver.arrows):
        return False
    words = sorted({p.arrows for r in P1.relations + P2.relations for p in r.paths()})
    idx = {w: i for i, w in enumerate(words)}

    def rk(rels):
        A = SparseMatrix(len(rels), len(words), P1.field)
        for i, r in enumerate(rels):
            for p, c in r:
                A.add_to(i, idx[p.arrows], c)
        return len(echelon(A, reduced=False))

    r1, r2 = rk(P1.relations), rk(P2.relations)
    return r1 == r2 == rk(P1.relations + P2.relations)
