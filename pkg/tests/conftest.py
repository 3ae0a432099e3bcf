import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quiverlab.algebra import framed_affine_preprojective, graded_basis, preprojective_relations
from quiverlab.corner import bimodule_generators, corner_generators, corner_presentation
from quiverlab.polynomials import buchberger
from quiverlab.quivers import build_doubled_dynkin, delta_k
from quiverlab.repscheme import RepCoordinates, rep_ideal

FIXTURES = Path(__file__).parent.parent / "fixtures"


@pytest.fixture(scope="session")
def framed_a1():
    quiver, rels = framed_affine_preprojective("A", 1)
    basis = graded_basis(quiver, rels, 12)
    return quiver, rels, basis


@pytest.fixture(scope="session")
def framed_a1_corner(framed_a1):
    _, _, basis = framed_a1
    corner = corner_generators(basis, verify_cutoff=8)
    bimod = bimodule_generators(corner, verify_cutoff=8)
    pres = corner_presentation(corner, cutoff=8)
    return corner, bimod, pres


@pytest.fixture(scope="session")
def framed_d4():
    quiver, rels = framed_affine_preprojective("D", 4)
    basis = graded_basis(quiver, rels, 12)
    return quiver, rels, basis


@pytest.fixture(scope="session")
def framed_d4_corner(framed_d4):
    _, _, basis = framed_d4
    corner = corner_generators(basis, verify_cutoff=12)
    bimod = bimodule_generators(corner, verify_cutoff=12)
    pres = corner_presentation(corner, cutoff=12)
    return corner, bimod, pres


@pytest.fixture(scope="session")
def d4_rep_ideal():
    quiver = build_doubled_dynkin("D", 4)
    coords = RepCoordinates(quiver, delta_k("D", 4))
    ideal = rep_ideal(coords, preprojective_relations(quiver))
    return coords, ideal


@pytest.fixture(scope="session")
def d4_groebner(d4_rep_ideal):
    _, ideal = d4_rep_ideal
    return buchberger([g for g in ideal.generators if g.terms])
