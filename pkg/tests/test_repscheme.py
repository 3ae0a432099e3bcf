"""Representation scheme coordinates, invariants, pullbacks, framing surgery."""

import random
from fractions import Fraction

import pytest

from quiverlab.algebra import framed_affine_preprojective, preprojective_relations
from quiverlab.linalg import Mat
from quiverlab.polynomials import buchberger
from quiverlab.quivers import (
    Arrow,
    DimensionVector,
    Path,
    Quiver,
    build_doubled_dynkin,
)
from quiverlab.repscheme import (
    RepCoordinates,
    build_acircledast,
    add_pullback,
    build_astar,
    corner_comparison_map,
    entry_generator,
    invariant_generators,
    product_split_check,
    rep_ideal,
    trace_generator,
    variable_name,
)



def test_variable_name():
    assert variable_name("a*", 2, 3) == "x_a*_2_3"


def test_coordinate_ring_layout():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 2, "2": 3}))
    assert coords.ring.nvars == 12
    mat = coords.matrix("a")
    assert len(mat) == 3 and len(mat[0]) == 2
    assert mat[2][0].text() == "x_a_3_1"
    with pytest.raises(ValueError):
        RepCoordinates(q, DimensionVector({"1": 2}))


def test_path_matrix_multiplies_along_the_path():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 2, "2": 2}))
    loop = coords.path_matrix(Path(q, "1", ("a", "a*")))
    a, astar = coords.matrix("a"), coords.matrix("a*")
    for i in range(2):
        for j in range(2):
            expect = astar[i][0] * a[0][j] + astar[i][1] * a[1][j]
            assert loop[i][j] == expect
    ident = coords.path_matrix(Path.idempotent(q, "1"))
    assert ident[0][0] == coords.ring.one() and ident[0][1] == coords.ring.zero()


def test_rep_ideal_a2():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 1, "2": 1}))
    ideal = rep_ideal(coords, preprojective_relations(q))
    assert [g.text() for g in ideal.generators] == [
        "-x_a_1_1*x_a*_1_1", "x_a_1_1*x_a*_1_1"]
    gb = buchberger(ideal.nonzero_generators())
    assert gb.texts() == ["x_a_1_1*x_a*_1_1"]


def test_rep_ideal_d4_trace_identity(d4_rep_ideal):
    coords, ideal = d4_rep_ideal
    # one square generator block per vertex: 1 + 4 + 1 + 1 entries
    assert len(ideal.generators) == 7
    assert all(g.degree == 2 for g in ideal.nonzero_generators())
    # the per-vertex traces sum to zero: a global linear dependence
    total = coords.ring.zero()
    for rel in ideal.relations:
        mat = coords.element_matrix(rel)
        for i in range(len(mat)):
            total = total + mat[i][i]
    assert not total


def test_rep_ideal_quiver_mismatch():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 1, "2": 1}))
    with pytest.raises(ValueError):
        rep_ideal(coords, preprojective_relations(build_doubled_dynkin("A", 3)))


def test_trace_generator_cyclic_invariance():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 2, "2": 2}))
    t1 = trace_generator(coords, Path(q, "1", ("a", "a*")))
    t2 = trace_generator(coords, Path(q, "2", ("a*", "a")))
    assert t1.polynomial == t2.polynomial
    assert t1.describe() == "tr(a*.a)"
    with pytest.raises(ValueError):
        trace_generator(coords, Path(q, "1", ("a",)))


@pytest.mark.parametrize("seed", range(3))
def test_trace_generator_conjugation_invariant(seed):
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 2, "2": 2}))
    gen = trace_generator(coords, Path(q, "1", ("a", "a*", "a", "a*")))
    rng = random.Random(seed)

    def env_from(mats):
        out = {}
        for name, m in mats.items():
            for i in range(2):
                for j in range(2):
                    out[variable_name(name, i + 1, j + 1)] = m.entry(i, j)
        return out

    mats = {name: Mat.from_rows([[rng.randint(-3, 3) for _ in range(2)]
                                 for _ in range(2)])
            for name in ("a", "a*")}
    g1 = Mat.from_rows([[1, rng.randint(-2, 2)], [0, 1]])
    g2 = Mat.from_rows([[1, 0], [rng.randint(-2, 2), 1]])
    # conjugate by the vertexwise change of basis (g1 at 1, g2 at 2)
    moved = {"a": g2 * mats["a"] * g1.inverse(),
             "a*": g1 * mats["a*"] * g2.inverse()}
    assert gen.polynomial.evaluate(env_from(mats)) == gen.polynomial.evaluate(env_from(moved))


def test_entry_generator_literal():
    q = Quiver(["∞", "0"], [Arrow("ι", "∞", "0"), Arrow("π", "0", "∞")],
               {"∞": "F", "0": "J"})
    coords = RepCoordinates(q, DimensionVector({"∞": 1, "0": 2}))
    back = entry_generator(coords, Path(q, "∞", ("ι", "π")), 1, 1)
    assert back.polynomial.text() == "x_ι_1_1*x_π_1_1 + x_ι_2_1*x_π_1_2"
    assert back.describe() == "π.ι[1,1]"


def test_invariant_generators_a2():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 1, "2": 1}))
    gens = invariant_generators(coords)
    assert [g.describe() for g in gens] == ["tr(a*.a)", "tr(a*.a.a*.a)"]
    # the default bounds are the square of the gauged total and two more
    explicit = invariant_generators(coords, cycle_bound=4, path_bound=6)
    assert [g.polynomial for g in gens] == [g.polynomial for g in explicit]


def test_invariant_generators_framing_entries():
    q = Quiver(["∞", "0"], [Arrow("ι", "∞", "0"), Arrow("π", "0", "∞")],
               {"∞": "F", "0": "K"})
    coords = RepCoordinates(q, DimensionVector({"∞": 1, "0": 1}))
    gens = invariant_generators(coords, cycle_bound=2, path_bound=2)
    entries = {g.describe() for g in gens if g.kind == "entry"}
    assert "π.ι[1,1]" in entries
    # cycles through the framing vertex are not gauged, so no traces here
    assert not any(g.kind == "trace" for g in gens)


def test_product_split_check():
    from quiverlab.polynomials import PolyRing
    R = PolyRing(["x", "y", "z"])
    gens = [R.parse("x*y - z^2")]
    assert product_split_check(gens, ["w_unused"])
    assert not product_split_check(gens, ["x"])
    assert product_split_check([], ["x"])


# -- pullback along adding a fixed interior module ----------------------------


def test_add_pullback_images():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 1, "2": 1}))
    big, hom = add_pullback(coords, {"2": 1}, {}, rels=preprojective_relations(q))
    assert dict(big.dims) == {"1": 1, "2": 2}
    ring = big.ring
    assert hom(ring.variable("x_a_1_1")).text() == "x_a_1_1"
    assert not hom(ring.variable("x_a_2_1"))            # cross block
    assert not hom(ring.variable("x_a*_1_2"))           # cross block
    # generic-block trace pulls back to the small trace
    t_big = trace_generator(big, Path(q, "1", ("a", "a*"))).polynomial
    t_small = trace_generator(coords, Path(q, "1", ("a", "a*"))).polynomial
    assert hom(t_big) == t_small
    # degree-zero cycle picks up the fixed block's dimension
    e2_big = trace_generator(big, Path.idempotent(q, "2")).polynomial
    assert hom(e2_big) == coords.ring.constant(2)


def test_add_pullback_fixed_block_contributes():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 1, "2": 1}))
    fixed = {"a": Mat.from_rows([[2]]), "a*": Mat.from_rows([[0]])}
    big, hom = add_pullback(coords, {"1": 1, "2": 1}, fixed)
    t_big = trace_generator(big, Path(q, "1", ("a", "a*"))).polynomial
    t_small = trace_generator(coords, Path(q, "1", ("a", "a*"))).polynomial
    # fixed block is 2 * 0 so only the generic corner survives
    assert hom(t_big) == t_small
    entry = big.ring.variable("x_a_2_2")
    assert hom(entry) == coords.ring.constant(2)


def test_add_pullback_guards():
    q, rels = framed_affine_preprojective("A", 1)
    coords = RepCoordinates(q, DimensionVector({"∞": 1, "0": 1, "1": 1}))
    with pytest.raises(ValueError):
        add_pullback(coords, {"0": 1}, {})        # J vertex
    with pytest.raises(ValueError):
        add_pullback(coords, {"1": 1}, {"a": Mat.zero(2, 2)})
    bad = {"a": Mat.from_rows([[1]]), "a*": Mat.from_rows([[1]]),
           "b": Mat.from_rows([[0]]), "b*": Mat.from_rows([[0]])}
    with pytest.raises(ValueError):
        add_pullback(coords, {"1": 1}, bad, rels=rels)


def test_add_pullback_wrong_ring_rejected():
    q = build_doubled_dynkin("A", 2)
    coords = RepCoordinates(q, DimensionVector({"1": 1, "2": 1}))
    big, hom = add_pullback(coords, {"2": 1}, {})
    with pytest.raises(ValueError):
        hom(coords.ring.variable("x_a_1_1"))


# -- corner comparison --------------------------------------------------------


def test_corner_comparison_map(framed_a1, framed_a1_corner):
    quiver, rels, basis = framed_a1
    _, _, pres = framed_a1_corner
    coords = RepCoordinates(quiver, DimensionVector({"∞": 1, "0": 1, "1": 1}))
    small, hom = corner_comparison_map(pres, coords)
    assert small.quiver is pres.quiver
    assert dict(small.dims) == {"∞": 1, "0": 1}
    assert hom(small.ring.variable("x_g1_1_1")).text() == "x_a_1_1*x_a*_1_1"
    assert hom(small.ring.variable("x_ι_1_1")).text() == "x_ι_1_1"
    # presentation relations land inside the ambient rep ideal
    gb = buchberger(rep_ideal(coords, rels).nonzero_generators())
    for r in pres.relations:
        mat = small.element_matrix(r)
        for row in mat:
            for f in row:
                assert not gb.normal_form(hom(f))
    with pytest.raises(ValueError):
        hom(coords.ring.variable("x_a_1_1"))


# -- framing surgery ----------------------------------------------------------


def test_astar_adds_degree_one_relations():
    q, rels = framed_affine_preprojective("A", 1)
    out = build_astar(q, rels)
    assert [r.text() for r in out] == ["-a*.a - b*.b", "a.a* + b.b*", "a*", "b*"]
    q4, rels4 = framed_affine_preprojective("D", 4)
    out4 = build_astar(q4, rels4)
    assert [r.text() for r in out4][len(rels4):] == ["a*"]


def test_astar_requires_framed_affine_shape():
    q = build_doubled_dynkin("A", 2)
    with pytest.raises(ValueError):
        build_astar(q, preprojective_relations(q))


def test_acircledast_framed_a1():
    q, rels = framed_affine_preprojective("A", 1)
    small, srels = build_acircledast(q, rels)
    assert small.vertices == ("0", "1")
    assert small.tag("0") == "F" and small.tag("1") == "K"
    assert [(a.name, a.source, a.target) for a in small.arrows] == [
        ("a", "0", "1"), ("b", "0", "1")]
    assert len(srels) == 0


def test_acircledast_framed_d4_matches_finite_d4():
    q, rels = framed_affine_preprojective("D", 4)
    small, srels = build_acircledast(q, rels)
    assert [(a.name, a.source, a.target) for a in small.arrows] == [
        ("a", "0", "2"),
        ("b", "1", "2"), ("b*", "2", "1"),
        ("c", "2", "3"), ("c*", "3", "2"),
        ("d", "2", "4"), ("d*", "4", "2"),
    ]
    finite = [r.text() for r in preprojective_relations(build_doubled_dynkin("D", 4))]
    fixed = []
    for text in (r.text() for r in srels):
        for old, new in (("b*", "A*"), ("b", "A"), ("c*", "B*"), ("c", "B"),
                         ("d*", "C*"), ("d", "C")):
            text = text.replace(old, new)
        fixed.append(text.lower())
    assert fixed == finite
