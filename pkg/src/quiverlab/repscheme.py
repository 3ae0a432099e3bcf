"""Representation schemes: coordinate rings, relation ideals, invariants.

A dimension vector attaches a generic matrix of fresh variables to every
arrow; relations become matrix equations whose entries generate the defining
ideal.  Invariant generators are traces of cycles through the gauged (I)
vertices and entries of paths between framing (F) vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .algebra import AlgebraElement, RelationSet
from .corner import CornerPresentation
from .linalg import Mat
from .quivers import (FRAMING_ARROW, FRAMING_VERTEX, DimensionVector,
                      Path, Quiver)
from .polynomials import Polynomial, PolyRing

PolyMatrix = list  # list of rows of Polynomial


def variable_name(arrow: str, row: int, col: int) -> str:
    """Coordinate name for the (row, col) entry of an arrow's matrix, 1-based."""
    return f"x_{arrow}_{row}_{col}"


class RepCoordinates:
    """The coordinate ring of the matrix space attached to (quiver, dims).

    The matrix of an arrow a: s -> t has shape dims[t] x dims[s]; its (i, j)
    entry is the ring variable ``x_a_i_j`` (1-based).  Variables are ordered
    by (arrow index, row, col).
    """

    def __init__(self, quiver: Quiver, dims: DimensionVector,
                 order: str = "degrevlex") -> None:
        if set(dims) != set(quiver.vertices):
            raise ValueError("dimension vector must cover exactly the vertices")
        self.quiver = quiver
        self.dims = dims
        names = []
        for a in quiver.arrows:
            for i in range(1, dims[a.target] + 1):
                for j in range(1, dims[a.source] + 1):
                    names.append(variable_name(a.name, i, j))
        self.ring = PolyRing(names, order)

    def matrix(self, arrow: str) -> PolyMatrix:
        a = self.quiver.arrow(arrow)
        return [[self.ring.variable(variable_name(arrow, i, j))
                 for j in range(1, self.dims[a.source] + 1)]
                for i in range(1, self.dims[a.target] + 1)]

    def identity(self, vertex: str) -> PolyMatrix:
        n = self.dims[vertex]
        one, zero = self.ring.one(), self.ring.zero()
        return [[one if i == j else zero for j in range(n)] for i in range(n)]

    def path_matrix(self, path: Path) -> PolyMatrix:
        """Product of the arrow matrices along the path (idempotent: identity)."""
        out = self.identity(path.source)
        for name in path.arrows:
            out = _pm_mul(self.ring, self.matrix(name), out)
        return out

    def element_matrix(self, element: AlgebraElement) -> PolyMatrix:
        """Matrix of a homogeneous-endpoint element (sum over its terms)."""
        rows = self.dims[element.target]
        cols = self.dims[element.source]
        out = _pm_zero(self.ring, rows, cols)
        for p, c in element.terms.items():
            out = _pm_add(out, _pm_scale(self.path_matrix(p), c))
        return out

    def __repr__(self) -> str:
        return f"RepCoordinates({self.ring.nvars} variables)"


def _pm_zero(ring: PolyRing, rows: int, cols: int) -> PolyMatrix:
    zero = ring.zero()
    return [[zero for _ in range(cols)] for _ in range(rows)]

def _pm_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]

def _pm_scale(a: PolyMatrix, c: Fraction) -> PolyMatrix:
    return [[x.scale(c) for x in row] for row in a]

def _pm_mul(ring: PolyRing, a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = _pm_zero(ring, rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if not aik:
                continue
            for j in range(cols):
                if b[k][j]:
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


@dataclass(frozen=True)
class RepIdeal:
    """Defining ideal of the locus where every relation's matrix vanishes.

    Generators appear relation by relation, row-major within each, and
    identically zero entries are kept so the count is sum of v_t * v_s.
    """

    coords: RepCoordinates
    relations: RelationSet
    generators: tuple[Polynomial, ...]

    @property
    def ring(self) -> PolyRing:
        return self.coords.ring

    def nonzero_generators(self) -> list[Polynomial]:
        return [g for g in self.generators if g]


def rep_ideal(coords: RepCoordinates, relations: RelationSet) -> RepIdeal:
    if relations.quiver != coords.quiver:
        raise ValueError("relations belong to a different quiver")
    gens: list[Polynomial] = []
    for rel in relations:
        mat = coords.element_matrix(rel)
        for row in mat:
            gens.extend(row)
    return RepIdeal(coords, relations, tuple(gens))


# -- invariants ---------------------------------------------------------------


@dataclass(frozen=True)
class InvariantGenerator:
    """A polynomial invariant: a cycle trace or a framing-to-framing entry."""

    kind: str                 # "trace" or "entry"
    path: Path
    row: int | None
    col: int | None
    polynomial: Polynomial

    def describe(self) -> str:
        if self.kind == "trace":
            return f"tr({self.path.text()})"
        return f"{self.path.text()}[{self.row},{self.col}]"


def trace_generator(coords: RepCoordinates, path: Path) -> InvariantGenerator:
    """Trace of a cycle's matrix; a length-0 cycle gives the constant dims."""
    if path.source != path.target:
        raise ValueError("trace needs a cycle")
    mat = coords.path_matrix(path)
    total = coords.ring.zero()
    for i in range(len(mat)):
        total = total + mat[i][i]
    return InvariantGenerator("trace", path, None, None, total)


def entry_generator(coords: RepCoordinates, path: Path,
                    row: int, col: int) -> InvariantGenerator:
    mat = coords.path_matrix(path)
    return InvariantGenerator("entry", path, row, col, mat[row - 1][col - 1])


def _cycles(quiver: Quiver, allowed: frozenset, bound: int) -> Iterable[Path]:
    """Rotation-canonical cycles within the allowed vertex set, length 1..bound."""
    for base in quiver.vertices:
        if base not in allowed:
            continue
        stack = [Path.idempotent(quiver, base)]
        while stack:
            p = stack.pop()
            for a in quiver.arrows_from(p.target):
                if a.target not in allowed:
                    continue
                q = p.extend(a)
                if q.target == base:
                    rots = [q.arrows[k:] + q.arrows[:k] for k in range(q.length)]
                    if q.arrows == min(rots):
                        yield q
                if q.length < bound:
                    stack.append(q)


def invariant_generators(coords: RepCoordinates,
                         cycle_bound: int | None = None,
                         path_bound: int | None = None) -> list[InvariantGenerator]:
    """Trace and framing-entry invariants up to the given length bounds.

    Defaults follow the classical degree bound: cycles up to the square of
    the total gauged dimension, framing paths two longer.  Trace generators
    are deduplicated by cycle rotation and by the realized polynomial, and
    identically zero polynomials are dropped.
    """
    quiver = coords.quiver
    gauged = frozenset(quiver.i_vertices)
    if cycle_bound is None:
        cycle_bound = sum(coords.dims[v] for v in gauged) ** 2
    if path_bound is None:
        path_bound = cycle_bound + 2
    out: list[InvariantGenerator] = []
    seen: set = set()
    for cycle in sorted(_cycles(quiver, gauged, cycle_bound),
                        key=lambda p: (p.length, p.key)):
        gen = trace_generator(coords, cycle)
        fingerprint = frozenset(gen.polynomial.terms.items())
        if not gen.polynomial or fingerprint in seen:
            continue
        seen.add(fingerprint)
        out.append(gen)
    f_set = frozenset(quiver.f_vertices)
    frontier = [Path.idempotent(quiver, v) for v in quiver.f_vertices]
    for d in range(path_bound + 1):
        for p in frontier:
            if p.target in f_set:
                for i in range(1, coords.dims[p.target] + 1):
                    for j in range(1, coords.dims[p.source] + 1):
                        out.append(entry_generator(coords, p, i, j))
        if d < path_bound:
            frontier = [p.extend(a) for p in frontier
                        for a in quiver.arrows_from(p.target)]
    return out


# -- pullback along adding a fixed interior module ---------------------------


def _mat_path(matrices: Mapping[str, Mat], dims: Mapping[str, int],
              path: Path) -> Mat:
    out = Mat.identity(dims[path.source])
    for name in path.arrows:
        out = matrices[name] * out
    return out


def add_pullback(coords: RepCoordinates, vk_dims: Mapping[str, int],
                 vk_matrices: Mapping[str, Mat],
                 rels: RelationSet | None = None,
                 ) -> tuple[RepCoordinates, Callable[[Polynomial], Polynomial]]:
    """Pullback of functions along block-adding a fixed K-supported module.

    Returns coordinates for the enlarged dimension vector together with the
    ring map taking each enlarged variable to its value on block matrices
    with the generic module top-left and the fixed one bottom-right.  When
    ``rels`` is given, the fixed matrices are first checked to satisfy them.
    """
    quiver = coords.quiver
    vk = {v: int(vk_dims.get(v, 0)) for v in quiver.vertices}
    for v in quiver.vertices:
        if vk[v] and quiver.tag(v) != "K":
            raise ValueError(f"added module must be supported on K vertices, "
                             f"not {v!r}")
    for a in quiver.arrows:
        m = vk_matrices.get(a.name, Mat.zero(vk[a.target], vk[a.source]))
        if (m.rows, m.cols) != (vk[a.target], vk[a.source]):
            raise ValueError(f"fixed matrix for {a.name!r} has the wrong shape")
    mats = {a.name: vk_matrices.get(a.name, Mat.zero(vk[a.target], vk[a.source]))
            for a in quiver.arrows}
    if rels is not None:
        for rel in rels:
            total = Mat.zero(vk[rel.target], vk[rel.source])
            for p, c in rel.terms.items():
                total = total + _mat_path(mats, vk, p).scale(c)
            if not total.is_zero():
                raise ValueError("fixed matrices do not satisfy the relations")

    big_dims = DimensionVector({v: coords.dims[v] + vk[v] for v in quiver.vertices})
    big = RepCoordinates(quiver, big_dims, coords.ring.order)

    images: dict[str, Polynomial] = {}
    for a in quiver.arrows:
        st, ss = coords.dims[a.target], coords.dims[a.source]
        for i in range(1, big_dims[a.target] + 1):
            for j in range(1, big_dims[a.source] + 1):
                name = variable_name(a.name, i, j)
                if i <= st and j <= ss:
                    images[name] = coords.ring.variable(name)
                elif i > st and j > ss:
                    images[name] = coords.ring.constant(
                        mats[a.name].entry(i - st - 1, j - ss - 1))
                else:
                    images[name] = coords.ring.zero()

    def hom(f: Polynomial) -> Polynomial:
        if f.ring != big.ring:
            raise ValueError("polynomial does not live on the enlarged scheme")
        return f.substitute(coords.ring, images)

    return big, hom


def corner_comparison_map(pres: CornerPresentation, coords: RepCoordinates,
                          ) -> tuple[RepCoordinates, Callable[[Polynomial], Polynomial]]:
    """Pullback of corner-presentation coordinates along restriction.

    A representation of the ambient algebra restricts to one of the corner
    presentation; on coordinate rings this sends each presentation variable
    to the matching entry of the underlying path's matrix.
    """
    small_dims = coords.dims.restrict(pres.quiver.vertices)
    small = RepCoordinates(pres.quiver, small_dims, coords.ring.order)
    images: dict[str, Polynomial] = {}
    for a in pres.quiver.arrows:
        mat = coords.path_matrix(pres.generator_paths[a.name])
        for i in range(1, small_dims[a.target] + 1):
            for j in range(1, small_dims[a.source] + 1):
                images[variable_name(a.name, i, j)] = mat[i - 1][j - 1]

    def hom(f: Polynomial) -> Polynomial:
        if f.ring != small.ring:
            raise ValueError("polynomial does not live on the presentation scheme")
        return f.substitute(coords.ring, images)

    return small, hom


# -- framed-affine surgery ----------------------------------------------------


def _check_framed_affine(quiver: Quiver) -> None:
    if quiver.f_vertices != (FRAMING_VERTEX,):
        raise ValueError("expected exactly the framing vertex tagged F")
    if quiver.j_vertices != ("0",):
        raise ValueError("expected exactly vertex 0 tagged J")
    if not quiver.has_arrow(FRAMING_ARROW):
        raise ValueError("missing the framing arrow")
    iota = quiver.arrow(FRAMING_ARROW)
    if (iota.source, iota.target) != (FRAMING_VERTEX, "0"):
        raise ValueError("the framing arrow must run from the framing vertex to 0")
    for a in quiver.arrows:
        if a.name != FRAMING_ARROW and FRAMING_VERTEX in (a.source, a.target):
            raise ValueError("no arrow besides the framing arrow may touch the "
                             "framing vertex")


def build_astar(quiver: Quiver, relations: RelationSet) -> RelationSet:
    """Extend the relations by killing every arrow from K into vertex 0."""
    _check_framed_affine(quiver)
    extra = [AlgebraElement.from_path(Path(quiver, a.source, (a.name,)))
             for a in quiver.arrows_into("0") if quiver.tag(a.source) == "K"]
    return RelationSet(quiver, tuple(relations) + tuple(extra))


def build_acircledast(quiver: Quiver,
                      relations: RelationSet) -> tuple[Quiver, RelationSet]:
    """Delete the framing data and the K-to-0 arrows; re-tag 0 as framing.

    Relation terms using a deleted arrow are dropped, and relations left
    empty disappear entirely.
    """
    _check_framed_affine(quiver)
    killed = {FRAMING_ARROW}
    killed.update(a.name for a in quiver.arrows_into("0")
                  if quiver.tag(a.source) == "K")
    vertices = tuple(v for v in quiver.vertices if v != FRAMING_VERTEX)
    arrows = tuple(a for a in quiver.arrows if a.name not in killed)
    partition = {v: ("F" if v == "0" else "K") for v in vertices}
    small = Quiver(vertices, arrows, partition)
    rels = []
    for r in relations:
        terms = {}
        for p, c in r.terms.items():
            if not killed.intersection(p.arrows):
                terms[Path(small, p.base, p.arrows)] = c
        el = AlgebraElement(small, terms)
        if el:
            rels.append(el)
    return small, RelationSet(small, rels)


def product_split_check(generators: Iterable[Polynomial],
                        variables: Iterable[str]) -> bool:
    """True when no generator involves any of the given variables.

    A defining ideal passing this check cuts out a product along the split
    of coordinates into the given variables and the rest.
    """
    targets = set(variables)
    for g in generators:
        ring = g.ring
        indices = [i for i, v in enumerate(ring.variables) if v in targets]
        for exps in g.terms:
            if any(exps[i] for i in indices):
                return False
    return True
