import pytest

from deligne_kit.artin import parse_artin, residue_field
from deligne_kit.dgla import (DgLieAlgebra, cohomology, cohomology_dims, lower_central_series, make_dgla,
                              nilpotency_class, tensor_with_ideal, validate)
from deligne_kit.fields import GF, QQ, FieldMismatch
from deligne_kit.glin import ShapeMismatch
from deligne_kit.library import DGLA_NAMES, MUTANTS, abelian, builtin_dgla, builtin_mutant

from oracles import bracket_vec

ARTINS = ("F5[e]/e^2", "F5[t]/t^3", "F5[x,y]/m^2")


def test_abelian_and_obstruction_validate(ab5, ob5):
    assert validate(ab5).ok
    assert validate(ob5).ok


def test_obstruction_jacobi_by_hand(ob5):
    # [e,[e,e]] = [e,f] = 0 is the only triple; the table must agree
    e = ob5.basis_vector(1, 0)
    ee = ob5.bracket(1, e, 1, e)
    assert ee == (1,)
    assert ob5.bracket(1, e, 2, ee) == ()


def test_inconsistent_differential_breaks_leibniz(F5):
    g = make_dgla(F5, {1: ["e"], 2: ["f"], 3: ["h"]}, [("e", "f", 1)],
                  [("e", "e", "f", 1), ("e", "f", "h", 1)])
    rep = validate(g)
    assert rep["leibniz"].witness == ("e", "e")


@pytest.mark.parametrize("name", sorted(n for n, (kind, _) in MUTANTS.items() if kind == "dgla"))
def test_mutants_fail_with_witness(name):
    kind, obj = builtin_mutant(name)
    rep = validate(obj)
    assert not rep.ok
    assert rep.failed()[0].witness


def test_expected_mutant_checks():
    assert validate(builtin_mutant("broken-antisymmetry")[1]).failed()[0].name == "antisymmetry"
    assert validate(builtin_mutant("broken-jacobi")[1]).failed()[0].name == "jacobi"
    assert validate(builtin_mutant("broken-leibniz")[1]).failed()[0].name == "leibniz"
    assert validate(builtin_mutant("broken-d-squared")[1]).failed()[0].name == "d_squared"


def test_cohomology_examples(F5, ac5, ob5):
    assert cohomology(abelian(F5, 2, 0), 1).dim == 2
    assert cohomology_dims(ac5) == {0: 0, 1: 0}
    H1, H2 = cohomology(ob5, 1), cohomology(ob5, 2)
    assert (H1.dim, H2.dim) == (1, 1)
    assert ob5.format(1, H1.section.col(0)) == "e"


def test_nilpotency_examples(F5, ab5, ob5, heis5):
    assert nilpotency_class(ab5) == 1
    assert nilpotency_class(ob5) == 2
    assert nilpotency_class(make_dgla(F5, {0: ["x"]})) == 1
    assert nilpotency_class(heis5) == 2
    sl = make_dgla(F5, {0: ["h", "e", "f"]}, bracket=[("h", "e", "e", 2), ("h", "f", "f", -2), ("e", "f", "h", 1)])
    assert validate(sl).ok
    assert nilpotency_class(sl) is None


def test_lower_central_series_shape(ob5):
    L = lower_central_series(ob5)
    assert [sum(map(len, x.values())) for x in L] == [2, 1, 0]


def test_tensor_with_residue_field_is_zero(ob5):
    h = tensor_with_ideal(ob5, residue_field(GF(5)))
    assert sum(h.dim(d) for d in h.degrees) == 0
    assert nilpotency_class(h) == 1


def test_tensor_abelian_dual(F5, dual5):
    h = tensor_with_ideal(abelian(F5, 1, 0), dual5)
    assert h.degrees == [1] and h.dim(1) == 1


def test_tensor_obstruction_t3(ob5, t3_5):
    h = tensor_with_ideal(ob5, t3_5)
    assert h.names(1) == ("t*e", "t^2*e") and h.names(2) == ("t*f", "t^2*f")
    te = h.basis_vector(1, 0)
    assert h.bracket(1, te, 1, te) == (0, 1)
    assert bracket_vec(h, 1, te, 1, te) == [0, 1]
    t2e = h.basis_vector(1, 1)
    assert h.bracket(1, te, 1, t2e) == (0, 0)


def test_tensor_field_mismatch(ob5):
    with pytest.raises(FieldMismatch):
        tensor_with_ideal(ob5, parse_artin("F7[e]/e^2"))


@pytest.mark.parametrize("name", DGLA_NAMES)
@pytest.mark.parametrize("artin", ARTINS)
def test_base_change_preserves_axioms_and_nilpotency(name, artin):
    A = parse_artin(artin)
    g = builtin_dgla(name, "F5")
    h = tensor_with_ideal(g, A)
    assert validate(h).ok
    assert nilpotency_class(h) <= A.nilpotency_order()


@pytest.mark.parametrize("name", DGLA_NAMES)
def test_flat_base_change_of_cohomology(name, dual5):
    g = builtin_dgla(name, "F5")
    h = tensor_with_ideal(g, dual5)
    for d in g.degrees:
        assert cohomology(h, d).dim == dual5.m_dim * cohomology(g, d).dim


def test_make_dgla_rejects_malformed(F5):
    with pytest.raises(ShapeMismatch):
        make_dgla(F5, {1: ["e"], 2: ["f"]}, [("e", "e", 1)])
    with pytest.raises(ShapeMismatch):
        make_dgla(F5, {0: ["x"], 1: ["x"]})
    with pytest.raises(ShapeMismatch):
        make_dgla(F5, {1: ["e"], 2: ["f"]}, bracket=[("e", "f", "f", 1)])
    with pytest.raises(ShapeMismatch):
        make_dgla(F5, {0: ["x"]}, bracket=[("x", "x", "x", 1)])
    with pytest.raises(ShapeMismatch):
        make_dgla(F5, {-1: ["x"]})


def test_json_roundtrip(rnd5):
    g = DgLieAlgebra.from_json(rnd5.to_json())
    assert g.to_json() == rnd5.to_json()
    assert g.change_field(QQ).field is QQ


def test_truncate_drops_high_degrees(ob5):
    g = ob5.truncate(1)
    assert g.degrees == [1] and g.truncated_above == 1
    assert validate(g).ok
