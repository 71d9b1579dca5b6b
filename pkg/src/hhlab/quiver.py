"""Finite quivers, paths and linear combinations of paths.

Arrows compose left to right: the path ``a.b`` means "first a, then b", so
it exists exactly when the target of ``a`` is the source of ``b``.
"""

from __future__ import annotations

from typing import NamedTuple

from .exact import Field, Scalar


class Path(NamedTuple):
    source: object
    target: object
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self):
        if not self.arrows:
            return f"e[{vertex_str(self.source)}]"
        return ".".join(self.arrows)


def vertex_str(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def parse_vertex(s: str):
    s = s.strip()
    if "," in s:
        return tuple(int(x) for x in s.split(","))
    try:
        return int(s)
    except ValueError:
        return s


def compose(p: Path, r: Path):
    """Concatenate p then r, or return None when the endpoints do not meet."""
    if p.target != r.source:
        return None
    return Path(p.source, r.target, p.arrows + r.arrows)


class Quiver:
    """A finite quiver with labelled vertices and uniquely named arrows."""

    def __init__(self, vertices, arrows):
        self.vertices = list(vertices)
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self.arrows = [tuple(a) for a in arrows]
        self._arrow = {}
        for name, s, t in self.arrows:
            if name in self._arrow:
                raise ValueError(f"duplicate arrow label {name!r}")
            if s not in vset or t not in vset:
                raise ValueError(f"arrow {name!r} has an undeclared endpoint")
            self._arrow[name] = (s, t)
        self._out: dict = {v: [] for v in self.vertices}
        self._in: dict = {v: [] for v in self.vertices}
        for name, s, t in self.arrows:
            self._out[s].append(name)
            self._in[t].append(name)

    def __eq__(self, other):
        return isinstance(other, Quiver) and self.vertices == other.vertices and self.arrows == other.arrows

    def __repr__(self):
        return f"Quiver({len(self.vertices)} vertices, {len(self.arrows)} arrows)"

    @property
    def arrow_names(self) -> list[str]:
        return [a[0] for a in self.arrows]

    def source(self, arrow: str):
        return self._arrow[arrow][0]

    def target(self, arrow: str):
        return self._arrow[arrow][1]

    def out_arrows(self, v) -> list[str]:
        return self._out[v]

    def in_arrows(self, v) -> list[str]:
        return self._in[v]

    def trivial(self, v) -> Path:
        if v not in self._out:
            raise KeyError(v)
        return Path(v, v, ())

    def path(self, *names) -> Path:
        """The path through the given arrows; raises if they do not compose."""
        if len(names) == 1 and isinstance(names[0], str) and "." in names[0]:
            names = tuple(names[0].split("."))
        if not names:
            raise ValueError("use trivial(v) for length-0 paths")
        for x, y in zip(names, names[1:]):
            if self.target(x) != self.source(y):
                raise ValueError(f"{x} and {y} do not compose")
        return Path(self.source(names[0]), self.target(names[-1]), tuple(names))

    def word_endpoints(self, word: tuple):
        return self.source(word[0]), self.target(word[-1])

    def opposite(self, suffix: str = "") -> "Quiver":
        return Quiver(self.vertices, [(n + suffix, t, s) for n, s, t in self.arrows])

    def adjacency(self) -> list[list[int]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        M = [[0] * len(self.vertices) for _ in self.vertices]
        for _, s, t in self.arrows:
            M[idx[s]][idx[t]] += 1
        return M

    def to_text(self) -> str:
        lines = [f"vertex: {vertex_str(v)}" for v in self.vertices]
        lines += [f"{n}: {vertex_str(s)} -> {vertex_str(t)}" for n, s, t in self.arrows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Quiver":
        vertices, arrows = [], []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, _, rest = line.partition(":")
            if head.strip() == "vertex":
                vertices.append(parse_vertex(rest))
            elif "->" in rest:
                s, _, t = rest.partition("->")
                arrows.append((head.strip(), parse_vertex(s), parse_vertex(t)))
            else:
                raise ValueError(f"cannot parse quiver line {raw!r}")
        return cls(vertices, arrows)


def enumerate_paths(q: Quiver, length: int, source=None, target=None, order=None) -> list[Path]:
    """All paths of the given length, sorted lexicographically by arrow rank.

    ``order`` is a list of arrow names; it defaults to the quiver's own arrow
    order.
    """
    if length < 0:
        raise ValueError("length must be nonnegative")
    starts = [source] if source is not None else q.vertices
    if length == 0:
        return [Path(v, v, ()) for v in starts if target is None or v == target]
    rank = {a: i for i, a in enumerate(order or q.arrow_names)}
    out = []
    frontier = [((a,), q.target(a)) for v in starts for a in q.out_arrows(v)]
    for _ in range(length - 1):
        frontier = [(w + (a,), q.target(a)) for w, end in frontier for a in q.out_arrows(end)]
    for w, end in frontier:
        if target is None or end == target:
            out.append(Path(q.source(w[0]), end, w))
    out.sort(key=lambda p: [rank[a] for a in p.arrows])
    return out


class LinCombo:
    """A finite linear combination of paths with nonzero coefficients."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field: Field | None = None):
        self.field = field
        clean: dict[Path, Scalar] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for p, c in items:
                if self.field is None and isinstance(c, Scalar):
                    self.field = c.field
                c = self.field(c) if self.field is not None else c
                new = clean[p] + c if p in clean else c
                if new:
                    clean[p] = new
                else:
                    clean.pop(p, None)
        self.terms = clean
        if self.field is None:
            raise ValueError("cannot infer the field of a LinCombo")

    @classmethod
    def of(cls, path: Path, field: Field, coeff=1):
        return cls({path: field(coeff)}, field)

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def paths(self) -> list[Path]:
        return list(self.terms)

    def coeff(self, p: Path):
        return self.terms.get(p, self.field.zero)

    def __eq__(self, other):
        if isinstance(other, LinCombo):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LinCombo"):
        out = dict(self.terms)
        for p, c in other.terms.items():
            new = out[p] + c if p in out else c
            if new:
                out[p] = new
            else:
                del out[p]
        return _raw(out, self.field)

    def __neg__(self):
        return _raw({p: -c for p, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinCombo":
        c = self.field(c)
        if not c:
            return _raw({}, self.field)
        return _raw({p: v * c for p, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, LinCombo):
            out: dict[Path, Scalar] = {}
            for p, c in self.terms.items():
                for r, d in other.terms.items():
                    pr = compose(p, r)
                    if pr is not None:
                        v = out[pr] + c * d if pr in out else c * d
                        if v:
                            out[pr] = v
                        else:
                            del out[pr]
            return _raw(out, self.field)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def is_uniform(self) -> bool:
        ends = {(p.source, p.target) for p in self.terms}
        return len(ends) == 1

    def endpoints(self):
        ends = {(p.source, p.target) for p in self.terms}
        if len(ends) != 1:
            raise ValueError("combination is not uniform")
        return next(iter(ends))

    def lengths(self) -> set[int]:
        return {p.length for p in self.terms}

    def sorted_terms(self, rank=None):
        def key(item):
            p = item[0]
            return (p.length, [rank[a] for a in p.arrows] if rank else list(p.arrows), str(p.source))

        return sorted(self.terms.items(), key=key)

    def to_str(self, rank=None) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{p}" for p, c in self.sorted_terms(rank))

    def __repr__(self):
        return f"LinCombo({self.to_str()})"


def _raw(terms: dict, field) -> LinCombo:
    lc = LinCombo.__new__(LinCombo)
    lc.terms = terms
    lc.field = field
    return lc


def parallel_pairs(X, Y) -> list[tuple[int, int]]:
    """Index pairs (i, j) with X[i] and Y[j] sharing source and target."""
    ends_x = []
    for x in X:
        if not x.is_uniform():
            raise ValueError(f"non-uniform element {x!r}")
        ends_x.append(x.endpoints())
    by_end: dict = {}
    for j, y in enumerate(Y):
        if not y.is_uniform():
            raise ValueError(f"non-uniform element {y!r}")
        by_end.setdefault(y.endpoints(), []).append(j)
    return [(i, j) for i, e in enumerate(ends_x) for j in by_end.get(e, [])]
