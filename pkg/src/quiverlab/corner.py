"""Cornered algebras: generators, bimodule generators, finite presentations.

For a graded quotient algebra whose vertex set splits into framing (F),
interface (J) and interior (K) vertices, the corner is the subalgebra cut out
by the idempotents of H = F ∪ J.  Provided the interior quotient (kill all
H idempotents) is finite dimensional with top nonzero degree n, the corner is
generated in degrees <= n + 2 and the column space over the corner is
generated in degrees <= n + 1; both computations verify the claimed spanning
degreewise against the full graded basis and refuse to return unverified
output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, GradedBasis, restrict_to_vertices
from .errors import VerificationError
from .linalg import SpanBuilder, kernel_combos
from .quivers import Arrow, DimensionVector, Path, Quiver

_ZERO = Fraction(0)


@dataclass(frozen=True)
class CornerGenerator:
    """One generator, represented by a standard path of the ambient algebra."""

    name: str
    path: Path
    degree: int
    source: str
    target: str

    def element(self) -> AlgebraElement:
        return AlgebraElement.from_path(self.path)


@dataclass(frozen=True)
class CornerGenerators:
    """Minimized algebra generators of the corner, with verified spanning."""

    basis: GradedBasis
    h_vertices: tuple[str, ...]
    k_top_degree: int
    generators: tuple[CornerGenerator, ...]
    verified_to: int

    @property
    def degree_bound(self) -> int:
        """Largest generator degree the theory allows: k_top_degree + 2."""
        return self.k_top_degree + 2

    def names(self) -> list[str]:
        return [g.name for g in self.generators]


@dataclass(frozen=True)
class BimoduleGenerators:
    """Generators of the column space e_H-side module, with verified spanning.

    The paths with source in H form a right module over the corner; the
    retained generators (the H idempotents plus minimized H-to-K paths)
    span it degreewise up to ``verified_to``.
    """

    corner: CornerGenerators
    generators: tuple[CornerGenerator, ...]
    verified_to: int

    @property
    def count(self) -> int:
        return len(self.generators)


def _h_block(basis: GradedBasis, d: int, h_set: frozenset) -> list[Path]:
    return [p for p in basis.basis(d) if p.source in h_set and p.target in h_set]


def _product_coords(basis: GradedBasis, gen_path: Path,
                    vec: dict) -> dict:
    """Normal-form coordinates of gen * (element with coordinates vec)."""
    out: dict = {}
    for key, c in vec.items():
        p = basis._by_key[len(key) - 1][key]
        if p.target != gen_path.source:
            continue
        prod = gen_path * p
        for k2, c2 in basis._resolve(prod.length, prod.key).items():
            v = out.get(k2, _ZERO) + c * c2
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
    return out


def corner_generators(basis: GradedBasis, verify_cutoff: int | None = None,
                      safety_bound: int = 64) -> CornerGenerators:
    """Minimized generating set of the corner subalgebra e_H A e_H.

    The interior quotient (restrict to the K vertices) must come out finite
    dimensional within ``safety_bound`` degrees; its top nonzero degree n
    bounds the generator search at n + 2.  Candidates are the standard basis
    paths between H vertices, scanned in (degree, path-key) order, and a
    candidate is retained exactly when it is not a combination of products of
    earlier retained generators.  Spanning of the whole H block is then
    verified degree by degree up to ``verify_cutoff`` (default: the basis
    cutoff); failure raises VerificationError rather than returning a wrong
    answer.
    """
    quiver = basis.quiver
    h_set = frozenset(quiver.h_vertices)
    if not h_set:
        raise ValueError("quiver has no F or J vertices to corner at")
    if verify_cutoff is None:
        verify_cutoff = basis.cutoff
    if verify_cutoff > basis.cutoff:
        raise ValueError(f"verify_cutoff {verify_cutoff} exceeds basis cutoff {basis.cutoff}")

    sub, subrels = restrict_to_vertices(quiver, basis.relations, quiver.k_vertices)
    interior = GradedBasis(sub, subrels, safety_bound)
    if not interior.finite_dimensional:
        raise VerificationError(
            f"interior quotient is still nonzero at degree {safety_bound}; "
            "the corner may not be finitely generated")
    k_top = interior.top_degree or 0
    bound = k_top + 2
    if basis.cutoff < bound:
        raise ValueError(
            f"basis cutoff {basis.cutoff} is below the generation bound {bound}")

    retained: list[CornerGenerator] = []
    # span data per degree: independent spanning coordinate vectors + builder
    vecs: list[list[dict]] = [[{Path.idempotent(quiver, h).key: Fraction(1)}
                               for h in quiver.h_vertices]]
    builders: list[SpanBuilder] = [SpanBuilder()]
    for v in vecs[0]:
        builders[0].add(v)

    for d in range(1, verify_cutoff + 1):
        builder = SpanBuilder()
        degree_vecs: list[dict] = []
        for gen in retained:
            k = gen.degree
            if k > d:
                continue
            for vec in vecs[d - k]:
                coords = _product_coords(basis, gen.path, vec)
                if coords and builder.add(coords):
                    degree_vecs.append(coords)
        if d <= bound:
            for cand in _h_block(basis, d, h_set):
                coords = {cand.key: Fraction(1)}
                if builder.contains(coords):
                    continue
                name = (cand.arrows[0] if cand.length == 1
                        else f"g{sum(1 for g in retained if g.path.length > 1) + 1}")
                retained.append(CornerGenerator(
                    name, cand, d, cand.source, cand.target))
                builder.add(coords)
                degree_vecs.append(coords)
        expected = len(_h_block(basis, d, h_set))
        if builder.rank != expected:
            raise VerificationError(
                f"corner generators span only {builder.rank} of {expected} "
                f"dimensions in degree {d}")
        vecs.append(degree_vecs)
        builders.append(builder)

    return CornerGenerators(basis, quiver.h_vertices, k_top,
                            tuple(retained), verify_cutoff)


def bimodule_generators(corner: CornerGenerators,
                        verify_cutoff: int | None = None) -> BimoduleGenerators:
    """Generators of the source-in-H column space as a right corner module.

    The H idempotents are retained up front; the remaining candidates are
    standard H-to-K paths of degree <= k_top_degree + 1, scanned in (degree,
    key) order and retained when independent of products (earlier generator)
    * (corner element).  Spanning against every standard path with source in
    H is verified degreewise up to ``verify_cutoff``.
    """
    basis = corner.basis
    quiver = basis.quiver
    h_set = frozenset(quiver.h_vertices)
    if verify_cutoff is None:
        verify_cutoff = corner.verified_to
    if verify_cutoff > corner.verified_to:
        raise ValueError(
            f"verify_cutoff {verify_cutoff} exceeds the corner verification "
            f"degree {corner.verified_to}")
    bound = corner.k_top_degree + 1

    retained: list[CornerGenerator] = [
        CornerGenerator(f"e_{h}", Path.idempotent(quiver, h), 0, h, h)
        for h in quiver.h_vertices
    ]
    # corner spanning is verified, so the corner in degree e is the full
    # H-to-H block of the standard basis
    corner_block = {e: _h_block(basis, e, h_set) for e in range(verify_cutoff + 1)}

    for d in range(verify_cutoff + 1):
        builder = SpanBuilder()
        for gen in retained:
            k = gen.degree
            if k > d:
                continue
            for q in corner_block[d - k]:
                coords = _product_coords(basis, gen.path,
                                         {q.key: Fraction(1)})
                builder.add(coords)
        if 1 <= d <= bound:
            for cand in basis.basis(d):
                if cand.source not in h_set or cand.target in h_set:
                    continue
                coords = {cand.key: Fraction(1)}
                if builder.contains(coords):
                    continue
                name = (cand.arrows[0] if cand.length == 1
                        else f"m{sum(1 for g in retained if g.path.length > 1) + 1}")
                retained.append(CornerGenerator(
                    name, cand, d, cand.source, cand.target))
                builder.add(coords)
        expected = sum(1 for p in basis.basis(d) if p.source in h_set)
        if builder.rank != expected:
            raise VerificationError(
                f"bimodule generators span only {builder.rank} of {expected} "
                f"dimensions in degree {d}")

    return BimoduleGenerators(corner, tuple(retained), verify_cutoff)


def sufficient_dimension_bound(bimod: BimoduleGenerators,
                               v_h: DimensionVector) -> DimensionVector:
    """Dimension vector certainly large enough for any induced module.

    Keeps v_h on the H vertices and allots (number of generators) * (total of
    v_h) to every K vertex.
    """
    quiver = bimod.corner.basis.quiver
    if set(v_h) != set(quiver.h_vertices):
        raise ValueError("v_h must be supported exactly on the H vertices")
    slack = bimod.count * v_h.total()
    out = {h: v_h[h] for h in quiver.h_vertices}
    out.update({k: slack for k in quiver.k_vertices})
    return DimensionVector(out)


# -- presentations -----------------------------------------------------------


@dataclass(frozen=True)
class CornerPresentation:
    """The corner as a quiver with weighted arrows and truncated relations.

    ``quiver`` lives on the H vertices with one arrow per positive-degree
    generator; ``weights`` records each arrow's degree in the ambient
    algebra.  ``relations`` are weighted-homogeneous combinations of arrow
    words found up to the stated cutoff — the ``completeness`` tag records
    that higher-degree relations may exist.
    """

    quiver: Quiver
    weights: dict[str, int]
    relations: tuple[AlgebraElement, ...]
    generator_paths: dict[str, Path]
    cutoff: int
    completeness: str

    def arrow_path(self, name: str) -> Path:
        """Ambient-algebra path underlying a presentation arrow."""
        return self.generator_paths[name]

    def weighted_degree(self, path: Path) -> int:
        return sum(self.weights[a] for a in path.arrows)

    def check_module(self, module) -> tuple[bool, list]:
        from .modules import check_relations
        return check_relations(module, self.relations)


def _weighted_words(quiver: Quiver, weights: dict[str, int],
                    cutoff: int) -> list[list[Path]]:
    """All arrow words grouped by total weight 0..cutoff, in key order."""
    words: list[list[Path]] = [[Path.idempotent(quiver, v) for v in quiver.vertices]]
    for wd in range(1, cutoff + 1):
        layer = []
        for a in quiver.arrows:
            w = weights[a.name]
            if w > wd:
                continue
            for p in words[wd - w]:
                if p.target == a.source:
                    layer.append(p.extend(a))
        layer.sort(key=lambda p: p.key)
        words.append(layer)
    return words


def corner_presentation(corner: CornerGenerators,
                        cutoff: int | None = None) -> CornerPresentation:
    """Quiver-with-relations presentation of the corner, truncated in degree.

    Builds the generator quiver, then for each weighted degree finds all
    linear dependencies among evaluated arrow words and keeps those not
    already in the two-sided ideal of relations found earlier.  Every kept
    relation is re-evaluated in the ambient algebra (it must vanish) and the
    word-space ranks must agree with the corner's graded dimensions.
    """
    basis = corner.basis
    big = basis.quiver
    if cutoff is None:
        cutoff = corner.verified_to
    if cutoff > corner.verified_to:
        raise ValueError(
            f"cutoff {cutoff} exceeds the corner verification degree "
            f"{corner.verified_to}")
    h_set = frozenset(big.h_vertices)

    arrows = []
    weights: dict[str, int] = {}
    gen_paths: dict[str, Path] = {}
    for g in corner.generators:
        arrows.append(Arrow(g.name, g.source, g.target))
        weights[g.name] = g.degree
        gen_paths[g.name] = g.path
    partition = {h: big.tag(h) for h in big.h_vertices}
    qh = Quiver(big.h_vertices, arrows, partition)
    words = _weighted_words(qh, weights, cutoff)

    def ambient(word: Path) -> Path:
        arrs: tuple[str, ...] = ()
        for name in word.arrows:
            arrs = arrs + gen_paths[name].arrows
        return Path(big, word.base, arrs)

    relations: list[tuple[int, AlgebraElement]] = []   # (weighted degree, element)
    for wd in range(1, cutoff + 1):
        layer = words[wd]
        index = {p.key: i for i, p in enumerate(layer)}
        evals = [basis._resolve(wd, ambient(p).key) for p in layer]
        combos = kernel_combos(evals)
        if len(layer) - len(combos) != len(_h_block(basis, wd, h_set)):
            raise VerificationError(
                f"word evaluations in weighted degree {wd} have rank "
                f"{len(layer) - len(combos)}, expected the corner dimension "
                f"{len(_h_block(basis, wd, h_set))}")
        ideal = SpanBuilder()
        for rd, rel in relations:
            for post_w in range(wd - rd + 1):
                pre_w = wd - rd - post_w
                for post in words[post_w]:        # applied after the relation
                    if post.source != rel.target:
                        continue
                    for pre in words[pre_w]:      # applied before it
                        if pre.target != rel.source:
                            continue
                        row: dict = {}
                        for p, c in rel.terms.items():
                            full = Path(qh, pre.base,
                                        pre.arrows + p.arrows + post.arrows)
                            j = index[full.key]
                            v = row.get(j, _ZERO) + c
                            if v:
                                row[j] = v
                            else:
                                row.pop(j, None)
                        if row:
                            ideal.add(row)
        for combo in combos:
            if ideal.contains(combo):
                continue
            el = AlgebraElement(qh, {layer[i]: c for i, c in combo.items()})
            check: dict = {}
            for p, c in el.terms.items():
                for k, cv in basis._resolve(wd, ambient(p).key).items():
                    v = check.get(k, _ZERO) + c * cv
                    if v:
                        check[k] = v
                    else:
                        check.pop(k, None)
            if check:
                raise VerificationError(
                    "a found relation does not vanish in the ambient algebra")
            relations.append((wd, el))
            ideal.add(combo)

    return CornerPresentation(
        quiver=qh,
        weights=weights,
        relations=tuple(el for _, el in relations),
        generator_paths=gen_paths,
        cutoff=cutoff,
        completeness=f"truncated-at-{cutoff}",
    )
