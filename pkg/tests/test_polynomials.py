"""Exact polynomial arithmetic, Gröbner bases, nilpotent witness search."""

import random
from fractions import Fraction

import pytest

from quiverlab.errors import BudgetExceeded
from quiverlab.polynomials import (
    PolyRing,
    Polynomial,
    buchberger,
    ideal_multigrading,
    nilpotent_witness_search,
    standard_monomials,
)


@pytest.fixture
def R():
    return PolyRing(["x", "y", "z"])


def test_ring_validation():
    with pytest.raises(ValueError):
        PolyRing(["x", "x"])
    for bad in ["2x", "a+b", "", "a b"]:
        with pytest.raises(ValueError):
            PolyRing([bad])
    with pytest.raises(ValueError):
        PolyRing(["x"], order="grlex")


def test_parse_text_round_trip(R):
    for text in ["x^2*y - 3/2*z + 1", "x + y", "-x*y*z", "7", "0", "x^4 - x"]:
        f = R.parse(text)
        assert R.parse(f.text()) == f
    assert R.parse("x^2*y - 3/2*z + 1").text() == "x^2*y - 3/2*z + 1"
    assert R.parse("0").text() == "0"


def test_parse_errors(R):
    for bad in ["w + 1", "x +", "x^", "(x", "x**2"]:
        with pytest.raises(ValueError):
            R.parse(bad)


def test_arithmetic(R):
    x, y = R.variable("x"), R.variable("y")
    assert ((x + y) ** 2).text() == "x^2 + 2*x*y + y^2"
    assert (x - x) == R.zero()
    assert x ** 0 == R.one()
    assert (x * y).scale(Fraction(1, 2)) - (x * y).scale(Fraction(1, 2)) == R.zero()
    assert (x + y) * (x - y) == x ** 2 - y ** 2


def test_monomial_orders():
    f = lambda ring: ring.variable("x") + ring.variable("y") ** 2
    assert f(PolyRing(["x", "y"])).lead_exps() == (0, 2)          # degree first
    assert f(PolyRing(["x", "y"], order="lex")).lead_exps() == (1, 0)


def test_evaluate_and_substitute(R):
    f = R.parse("x^2*y - 3/2*z + 1")
    env = {"x": Fraction(2), "y": Fraction(-1), "z": Fraction(4)}
    assert f.evaluate(env) == Fraction(-9)
    S = PolyRing(["u", "v"])
    g = f.substitute(S, {"x": S.parse("u"), "y": S.parse("v^2"), "z": S.parse("u*v")})
    assert g == S.parse("u^2*v^2 - 3/2*u*v + 1")


def test_buchberger_reduced_basis(R):
    gb = buchberger([R.parse("x^2 - 1"), R.parse("x*y - 1")])
    assert gb.texts() == ["x - y", "y^2 - 1"]
    member, rem = gb.ideal_member(R.parse("y - x"))
    assert member and not rem
    member, rem = gb.ideal_member(R.parse("x + 1"))
    assert not member and rem


def test_buchberger_guards(R):
    with pytest.raises(ValueError):
        buchberger([])
    gb = buchberger([], ring=R)
    assert len(gb) == 0
    f = R.parse("x^3 + y")
    assert gb.normal_form(f) == f
    other = PolyRing(["u"])
    with pytest.raises(ValueError):
        buchberger([R.parse("x"), other.parse("u")])
    with pytest.raises(BudgetExceeded):
        buchberger([R.parse("x^3 - y*z"), R.parse("y^2 - x*z"), R.parse("z^2 - x^2*y")],
                   max_steps=1)


@pytest.mark.parametrize("seed", range(4))
def test_normal_form_is_linear_and_multiplicative(R, seed):
    gb = buchberger([R.parse("x^2 - y"), R.parse("y^3 - z")])
    rng = random.Random(seed)

    def rand_poly():
        out = R.zero()
        for _ in range(4):
            exps = tuple(rng.randint(0, 2) for _ in range(3))
            out = out + R.monomial(exps, Fraction(rng.randint(-3, 3)))
        return out

    f, g = rand_poly(), rand_poly()
    assert gb.normal_form(f + g) == gb.normal_form(f) + gb.normal_form(g)
    assert gb.normal_form(f * g) == gb.normal_form(gb.normal_form(f) * gb.normal_form(g))
    assert gb.normal_form(gb.normal_form(f)) == gb.normal_form(f)


def test_standard_monomials():
    R2 = PolyRing(["x", "y"])
    gb = buchberger([R2.parse("x^2"), R2.parse("y^3")])
    mono_texts = [p.text() for p in standard_monomials(gb, 4)]
    assert mono_texts == ["x", "y", "x*y", "y^2", "x*y^2"]
    assert all(not gb.is_standard(g.lead_exps()) for g in gb)


def test_ideal_multigrading(R):
    gb = buchberger([R.parse("x*y - z^2")])
    weights = ideal_multigrading(gb)
    assert len(weights) == 2
    for w in weights:
        for g in gb:
            values = {sum(wi * e for wi, e in zip(w, exps)) for exps in g.terms}
            assert len(values) == 1


def test_ideal_multigrading_trivial_cases(R):
    # a monomial ideal is homogeneous under every grading
    assert len(ideal_multigrading(buchberger([R.parse("x*y^2")]))) == 3
    # x + 1 only under the zero weight on x
    gb = buchberger([R.parse("x + 1")])
    weights = ideal_multigrading(gb)
    assert all(w[0] == 0 for w in weights)


def test_witness_found_for_square_free_generatorless_radical():
    L = PolyRing(["x", "y"])
    assert nilpotent_witness_search(buchberger([L.parse("x^2 - y^2")]), 2, 3) is None


def test_witness_single_monomial():
    L = PolyRing(["x", "y"])
    w = nilpotent_witness_search(buchberger([L.parse("x^2*y")]), 2, 2)
    assert (w.element.text(), w.power) == ("x*y", 2)
    gb = buchberger([L.parse("x^2*y")])
    assert gb.normal_form(w.element)
    assert not gb.normal_form(w.element ** w.power)


def test_witness_needs_two_terms():
    # no standard monomial is nilpotent here; the paired phase finds x + y
    L = PolyRing(["x", "y"])
    gb = buchberger([L.parse("x^2 + 2*x*y + y^2")])
    w = nilpotent_witness_search(gb, 1, 2)
    assert (w.element.text(), w.power) == ("x + y", 2)
    again = nilpotent_witness_search(gb, 1, 2)
    assert again.element == w.element and again.power == w.power


def test_witness_power_bound_respected():
    L = PolyRing(["x"])
    gb = buchberger([L.parse("x^4")])
    assert nilpotent_witness_search(gb, 1, 3) is None
    w = nilpotent_witness_search(gb, 1, 4)
    assert (w.element.text(), w.power) == ("x", 4)


def test_witness_guards():
    L = PolyRing(["x", "y"])
    gb = buchberger([L.parse("x^2*y")])
    with pytest.raises(ValueError):
        nilpotent_witness_search(gb, 0, 2)
    with pytest.raises(ValueError):
        nilpotent_witness_search(gb, 2, 1)
    with pytest.raises(BudgetExceeded):
        nilpotent_witness_search(gb, 3, 3, max_ops=2)


def test_d4_groebner_shape(d4_groebner):
    assert len(d4_groebner) == 22
    weights = ideal_multigrading(d4_groebner)
    # three independent vertex scalings survive killing the global one,
    # plus total degree
    assert len(weights) >= 4
    for w in weights:
        for g in d4_groebner:
            values = {sum(wi * e for wi, e in zip(w, exps)) for exps in g.terms}
            assert len(values) == 1
