"""Path algebras with homogeneous relations: elements, graded bases, cocenters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .linalg import SpanBuilder
from .quivers import Path, Quiver, build_doubled_affine_dynkin, frame

_ZERO = Fraction(0)


class AlgebraElement:
    """A finite rational linear combination of paths of a single quiver."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: Quiver, terms: Mapping[Path, Fraction] | None = None) -> None:
        self.quiver = quiver
        data = {}
        if terms:
            for p, c in terms.items():
                c = Fraction(c)
                if c:
                    data[p] = c
        self.terms = data

    @staticmethod
    def zero(quiver: Quiver) -> "AlgebraElement":
        return AlgebraElement(quiver)

    @staticmethod
    def from_path(path: Path, coefficient=1) -> "AlgebraElement":
        return AlgebraElement(path.quiver, {path: Fraction(coefficient)})

    @staticmethod
    def idempotent(quiver: Quiver, vertex: str) -> "AlgebraElement":
        return AlgebraElement.from_path(Path.idempotent(quiver, vertex))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, AlgebraElement)
                and self.quiver == other.quiver and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.quiver, frozenset(self.terms.items())))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for p, c in other.terms.items():
            v = out.get(p, _ZERO) + c
            if v:
                out[p] = v
            else:
                out.pop(p, None)
        return AlgebraElement(self.quiver, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.quiver, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(self.quiver, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Bilinear function-order product; non-composable path pairs vanish."""
        out: dict[Path, Fraction] = {}
        for p, cp in self.terms.items():
            for q, cq in other.terms.items():
                if q.target != p.source:
                    continue
                r = p * q
                v = out.get(r, _ZERO) + cp * cq
                if v:
                    out[r] = v
                else:
                    out.pop(r, None)
        return AlgebraElement(self.quiver, out)

    # -- homogeneity -------------------------------------------------------

    def is_homogeneous(self, weights: Mapping[str, int] | None = None) -> bool:
        """Same degree, source and target across all terms (zero counts).

        Degree is path length, or total arrow weight when ``weights`` is
        given (arrows missing from the mapping weigh 1).
        """
        if weights is None:
            sig = {(p.length, p.source, p.target) for p in self.terms}
        else:
            sig = {(sum(weights.get(a, 1) for a in p.arrows), p.source, p.target)
                   for p in self.terms}
        return len(sig) <= 1

    def _unique(self, values: set, what: str):
        if not values:
            raise ValueError(f"zero element has no {what}")
        if len(values) > 1:
            raise ValueError(f"element has no single {what}")
        return next(iter(values))

    @property
    def length(self) -> int:
        return self._unique({p.length for p in self.terms}, "length")

    @property
    def source(self) -> str:
        return self._unique({p.source for p in self.terms}, "source")

    @property
    def target(self) -> str:
        return self._unique({p.target for p in self.terms}, "target")

    def on_quiver(self, quiver: Quiver) -> "AlgebraElement":
        """Rebuild this element over another quiver sharing its arrow names."""
        out = {}
        for p, c in self.terms.items():
            out[Path(quiver, p.base, p.arrows)] = c
        return AlgebraElement(quiver, out)

    def sorted_terms(self) -> list[tuple[Path, Fraction]]:
        return sorted(self.terms.items(), key=lambda it: (it[0].length, it[0].key))

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.sorted_terms():
            body = p.text()
            if c == 1:
                s = body
            elif c == -1:
                s = f"-{body}"
            else:
                s = f"{c}*{body}"
            parts.append(s)
        out = parts[0]
        for s in parts[1:]:
            out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return out

    def __repr__(self) -> str:
        return f"AlgebraElement({self.text()})"


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Product x*y in the path algebra (y acts first)."""
    return x * y


class RelationSet:
    """Homogeneous two-sided ideal generators for a path algebra quotient.

    Every generator must be nonzero, of uniform positive degree, and with
    all terms sharing source and target.  An optional arrow-weight mapping
    switches the degree from path length to total weight, which lets
    relations mix word lengths (as presentations of corner algebras do).
    """

    def __init__(self, quiver: Quiver, relations: Iterable[AlgebraElement],
                 weights: Mapping[str, int] | None = None) -> None:
        self.quiver = quiver
        self.weights = dict(weights) if weights else None
        rels = tuple(relations)
        for r in rels:
            if not r:
                raise ValueError("zero relation")
            if r.quiver != quiver:
                raise ValueError("relation over a different quiver")
            if not r.is_homogeneous(self.weights):
                raise ValueError(f"inhomogeneous relation {r.text()!r}")
            if any(not p.arrows for p in r.terms):
                raise ValueError("relations must have positive length")
        self.relations = rels

    def __iter__(self):
        return iter(self.relations)

    def __len__(self) -> int:
        return len(self.relations)

    def __getitem__(self, i: int) -> AlgebraElement:
        return self.relations[i]

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RelationSet)
                and self.quiver == other.quiver
                and self.relations == other.relations
                and self.weights == other.weights)

    def on_quiver(self, quiver: Quiver) -> "RelationSet":
        return RelationSet(quiver, (r.on_quiver(quiver) for r in self.relations),
                           self.weights)

    def __repr__(self) -> str:
        return f"RelationSet({len(self.relations)} relations)"


def star_pairing(quiver: Quiver) -> dict[str, str]:
    """Pair arrows with their ``*``-partners; error on any unpaired arrow."""
    pairs = {}
    for a in quiver.arrows:
        if a.name.endswith("*"):
            base = a.name[:-1]
            if not quiver.has_arrow(base):
                raise ValueError(f"unpaired arrow {a.name!r}")
            continue
        partner = a.name + "*"
        if not quiver.has_arrow(partner):
            raise ValueError(f"unpaired arrow {a.name!r}")
        b = quiver.arrow(partner)
        if (b.source, b.target) != (a.target, a.source):
            raise ValueError(f"arrows {a.name!r} and {partner!r} are not mutually reverse")
        pairs[a.name] = partner
    return pairs


def preprojective_relations(quiver: Quiver) -> RelationSet:
    """Per-vertex moment-map relations of a doubled quiver.

    At each vertex i the generator is
    sum over arrows a with target i of a a*  minus  sum over arrows a with
    source i of a* a, running over the chosen-orientation (unstarred) arrows.
    Vertices where the sum is empty contribute nothing.
    """
    pairs = star_pairing(quiver)
    rels = []
    for v in quiver.vertices:
        terms: dict[Path, Fraction] = {}
        for name, star in pairs.items():
            a = quiver.arrow(name)
            if a.target == v:
                # a a*: apply a* first, then a; a cycle at v
                p = Path(quiver, v, (star, name))
                terms[p] = terms.get(p, _ZERO) + 1
            if a.source == v:
                p = Path(quiver, v, (name, star))
                terms[p] = terms.get(p, _ZERO) - 1
        el = AlgebraElement(quiver, terms)
        if el:
            rels.append(el)
    return RelationSet(quiver, rels)


def framed_affine_preprojective(kind: str, rank: int) -> tuple[Quiver, RelationSet]:
    """Framed doubled affine ADE quiver with its preprojective relations.

    The framing arrow takes part in no relation.
    """
    base = build_doubled_affine_dynkin(kind, rank)
    rels = preprojective_relations(base)
    framed = frame(base, "0")
    return framed, rels.on_quiver(framed)


# -- graded bases ------------------------------------------------------------


class GradedBasis:
    """Degreewise monomial basis and normal form data for a quotient algebra.

    The quotient of the path algebra by the homogeneous ideal generated by
    ``relations`` is processed degree by degree up to ``cutoff``.  The
    monomial order (within a degree: lex on the source index followed by the
    arrow indices in application order) is multiplicative, so the leading
    paths of the ideal form a two-sided monomial ideal and every factor of a
    standard path is standard.  That keeps the work per degree proportional
    to the quotient, not to the raw path count:

    * candidates in degree d are the standard paths of degree d-1 extended
      by one arrow acting after them;
    * the degree-d slice of the ideal is spanned, in those coordinates, by
      the products r*s over relations r and standard paths s acting first
      (rows with a longer acts-last cofactor rewrite to zero through the
      degree d-1 normal forms);
    * max-key elimination then leaves the lexicographically smallest
      surviving candidates as the standard basis.

    If some degree turns out empty the algebra is flagged finite-dimensional
    (no candidates can ever reappear) and ``top_degree`` records the last
    nonzero degree.
    """

    def __init__(self, quiver: Quiver, relations: RelationSet, cutoff: int) -> None:
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        if relations.quiver != quiver:
            raise ValueError("relations belong to a different quiver")
        self.quiver = quiver
        self.relations = relations
        self.cutoff = cutoff
        self._cands: list[list[Path]] = []
        self._by_key: list[dict[tuple, Path]] = []
        self._std: list[list[Path]] = []
        self._std_by_target: list[dict[str, list[Path]]] = []
        self._repl: list[dict[tuple, dict[tuple, Fraction]]] = []
        self._resolved: list[dict[tuple, dict[tuple, Fraction]]] = []
        self.finite_dimensional = False
        self.top_degree: int | None = None
        self._dims: list[int] = []
        self._build()

    # -- construction ----------------------------------------------------

    def _build(self) -> None:
        quiver = self.quiver
        for d in range(self.cutoff + 1):
            if d == 0:
                cands = [Path.idempotent(quiver, v) for v in quiver.vertices]
            else:
                # standard lists are key-sorted, so this enumeration is too
                cands = [p.extend(a) for p in self._std[d - 1]
                         for a in quiver.arrows_from(p.target)]
            self._cands.append(cands)
            self._by_key.append({p.key: p for p in cands})
            repl: dict[tuple, dict[tuple, Fraction]] = {}
            self._repl.append(repl)
            self._resolved.append({})
            for row in self._relation_rows(d):
                self._insert_row(repl, row)
            std = [p for p in cands if p.key not in repl]
            self._std.append(std)
            by_t: dict[str, list[Path]] = {v: [] for v in quiver.vertices}
            for p in std:
                by_t[p.target].append(p)
            self._std_by_target.append(by_t)
            self._dims.append(len(std))
        if any(n == 0 for n in self._dims):
            self.finite_dimensional = True
            self.top_degree = max((d for d, n in enumerate(self._dims) if n),
                                  default=0)

    def _relation_rows(self, d: int):
        index = self.quiver.arrow_index
        for rel in self.relations:
            e = rel.length
            if e > d:
                continue
            for s in self._std_by_target[d - e][rel.source]:   # s acts first
                row: dict[tuple, Fraction] = {}
                for p, c in rel.terms.items():
                    last = index(p.arrows[-1])
                    prefix = s.key + tuple(index(a) for a in p.arrows[:-1])
                    for m, cm in self._resolve(d - 1, prefix).items():
                        key = m + (last,)
                        v = row.get(key, _ZERO) + c * cm
                        if v:
                            row[key] = v
                        else:
                            row.pop(key, None)
                if row:
                    yield row

    @staticmethod
    def _insert_row(repl: dict, row: dict) -> None:
        row = dict(row)
        while row:
            lead = max(row)
            sub = repl.get(lead)
            if sub is None:
                inv = 1 / row.pop(lead)
                repl[lead] = {k: -c * inv for k, c in row.items()}
                return
            factor = row.pop(lead)
            for k, c in sub.items():
                v = row.get(k, _ZERO) + factor * c
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)

    # -- queries ----------------------------------------------------------

    @property
    def truncated(self) -> bool:
        return not self.finite_dimensional

    @property
    def dimensions(self) -> list[int]:
        """Graded dimensions for degrees 0..cutoff."""
        return list(self._dims)

    def dimension(self, d: int) -> int:
        self._check_degree(d)
        return self._dims[d]

    def paths(self, d: int) -> list[Path]:
        """The degree-d spanning candidates (standard extensions), key order."""
        self._check_degree(d)
        return list(self._cands[d])

    def basis(self, d: int) -> list[Path]:
        self._check_degree(d)
        return list(self._std[d])

    def _check_degree(self, d: int) -> None:
        if d < 0 or d > self.cutoff:
            raise ValueError(f"degree {d} exceeds the cutoff {self.cutoff}")

    def _resolve(self, d: int, key: tuple) -> dict[tuple, Fraction]:
        """Coordinates of a degree-d raw path key over the standard paths.

        A candidate key reduces within its degree; any other path is rebuilt
        one arrow at a time from its base, staying in standard coordinates
        throughout, so the cost is bounded by the quotient dimensions.
        """
        if self.finite_dimensional and self.top_degree is not None and d > self.top_degree:
            return {}
        if d == 0 or key in self._by_key[d]:
            return self._resolve_cand(d, key)
        coords: dict[tuple, Fraction] = {key[:1]: Fraction(1)}
        for pos, ai in enumerate(key[1:], start=1):
            new: dict[tuple, Fraction] = {}
            for m, cm in coords.items():
                for s, cs in self._resolve_cand(pos, m + (ai,)).items():
                    v = new.get(s, _ZERO) + cm * cs
                    if v:
                        new[s] = v
                    else:
                        new.pop(s, None)
            coords = new
            if not coords:
                break
        return coords

    def _resolve_cand(self, d: int, key: tuple) -> dict[tuple, Fraction]:
        """Standard coordinates of a degree-d candidate key (memoized)."""
        repl = self._repl[d]
        memo = self._resolved[d]
        if key not in repl:
            return {key: Fraction(1)}
        stack = [key]
        while stack:
            k = stack[-1]
            if k in memo:
                stack.pop()
                continue
            sub = repl.get(k)
            if sub is None:
                memo[k] = {k: Fraction(1)}
                stack.pop()
                continue
            pending = [t for t in sub if t in repl and t not in memo]
            if pending:
                stack.extend(pending)
                continue
            out: dict[tuple, Fraction] = {}
            for t, c in sub.items():
                if t in repl:
                    for s, cs in memo[t].items():
                        v = out.get(s, _ZERO) + c * cs
                        if v:
                            out[s] = v
                        else:
                            out.pop(s, None)
                else:
                    v = out.get(t, _ZERO) + c
                    if v:
                        out[t] = v
                    else:
                        out.pop(t, None)
            memo[k] = out
            stack.pop()
        return memo[key]

    def nf_path(self, path: Path) -> dict[Path, Fraction]:
        """Normal form of a single path as a basis-path combination."""
        d = path.length
        self._check_degree(d)
        coords = self._resolve(d, path.key)
        table = self._by_key[d]
        return {table[k]: c for k, c in coords.items()}

    def reduce(self, x: AlgebraElement) -> AlgebraElement:
        """Canonical representative of x supported on standard paths."""
        if x.quiver != self.quiver:
            raise ValueError("element over a different quiver")
        out: dict[Path, Fraction] = {}
        for p, c in x.terms.items():
            for q, cq in self.nf_path(p).items():
                v = out.get(q, _ZERO) + c * cq
                if v:
                    out[q] = v
                else:
                    out.pop(q, None)
        return AlgebraElement(self.quiver, out)

    def normal_form(self, x: AlgebraElement) -> dict[int, tuple[Fraction, ...]]:
        """Degreewise coordinates of the class of x in the graded basis.

        The result maps each degree occurring in x to the coordinate vector
        over ``basis(d)``; x lies in the ideal exactly when every vector is
        zero.
        """
        reduced = self.reduce(x)
        degrees = sorted({p.length for p in x.terms})
        out = {}
        for d in degrees:
            basis = self.basis(d)
            index = {p: i for i, p in enumerate(basis)}
            vec = [Fraction(0)] * len(basis)
            for p, c in reduced.terms.items():
                if p.length == d:
                    vec[index[p]] = c
            out[d] = tuple(vec)
        return out

    def __repr__(self) -> str:
        kind = "finite" if self.finite_dimensional else f"truncated@{self.cutoff}"
        return f"GradedBasis(dims={self._dims}, {kind})"


def graded_basis(quiver: Quiver, relations: RelationSet, max_degree: int) -> GradedBasis:
    """Degreewise basis of the quotient algebra up to max_degree."""
    return GradedBasis(quiver, relations, max_degree)


def normal_form(x: AlgebraElement, basis: GradedBasis) -> dict[int, tuple[Fraction, ...]]:
    return basis.normal_form(x)


def restrict_to_vertices(quiver: Quiver, relations: RelationSet,
                         keep: Iterable[str]) -> tuple[Quiver, RelationSet]:
    """Quotient data for killing the idempotents of all vertices not kept.

    The result is the full subquiver on ``keep`` together with the surviving
    relations: generators whose endpoints were killed disappear, and in the
    rest every term passing through a killed vertex is dropped.
    """
    keep_set = set(keep)
    for v in keep_set:
        if v not in quiver.partition:
            raise ValueError(f"unknown vertex {v!r}")
    vertices = tuple(v for v in quiver.vertices if v in keep_set)
    arrows = tuple(a for a in quiver.arrows
                   if a.source in keep_set and a.target in keep_set)
    partition = {v: quiver.tag(v) for v in vertices}
    sub = Quiver(vertices, arrows, partition)
    rels = []
    for r in relations:
        if r.source not in keep_set or r.target not in keep_set:
            continue
        terms = {}
        for p, c in r.terms.items():
            if all(v in keep_set for v in p.vertices_visited()):
                terms[Path(sub, p.base, p.arrows)] = c
        el = AlgebraElement(sub, terms)
        if el:
            rels.append(el)
    return sub, RelationSet(sub, rels)


# -- cocenter ---------------------------------------------------------------


@dataclass(frozen=True)
class Cocenter:
    """Graded dimensions and representatives of A modulo [A, A]."""

    degree_dims: tuple[int, ...]
    representatives: tuple[tuple[Path, ...], ...]
    truncated: bool


def cocenter(basis: GradedBasis, cutoff: int | None = None) -> Cocenter:
    """Degreewise quotient of the algebra by the span of all commutators.

    For each degree d the commutator subspace is spanned by xy - yx over
    basis classes of complementary degrees; representatives are the standard
    basis paths whose coordinates complete that span.
    """
    if cutoff is None:
        cutoff = basis.top_degree if basis.finite_dimensional else basis.cutoff
        assert cutoff is not None
    if cutoff > basis.cutoff:
        raise ValueError(f"cocenter cutoff {cutoff} exceeds basis cutoff {basis.cutoff}")
    dims = []
    reps = []
    for d in range(cutoff + 1):
        span = SpanBuilder()
        for p in range(d + 1):
            for x in basis.basis(p):
                for y in basis.basis(d - p):
                    row: dict[tuple, Fraction] = {}
                    if y.target == x.source:
                        for k, c in basis._resolve(d, (x * y).key).items():
                            row[k] = row.get(k, _ZERO) + c
                    if x.target == y.source:
                        for k, c in basis._resolve(d, (y * x).key).items():
                            v = row.get(k, _ZERO) - c
                            if v:
                                row[k] = v
                            else:
                                row.pop(k, None)
                    if row:
                        span.add(row)
        pivot_keys = set(span.leads)
        degree_reps = tuple(p for p in basis.basis(d) if p.key not in pivot_keys)
        dims.append(basis.dimension(d) - span.rank)
        reps.append(degree_reps)
        assert len(degree_reps) == dims[-1]
    return Cocenter(tuple(dims), tuple(reps), truncated=not basis.finite_dimensional)
