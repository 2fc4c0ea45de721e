import itertools

import pytest

from deligne_kit.artin import (ArtinAlgebra, ArtinMorphism, enumerate_homs, identity_morphism,
                               make_truncated_polynomial, parse_artin, quotient_by_monomial_relations,
                               residue_field)
from deligne_kit.fields import GF, QQ, InfiniteField
from deligne_kit.library import ARTIN_NAMES, builtin_mutant

from oracles import homs_brute, square_zero_count


def dual_xi(F):
    return make_truncated_polynomial(F, ["xi"], 2)


def test_truncated_polynomial_examples():
    D = make_truncated_polynomial(QQ, ["e"], 2)
    assert D.dim == 2 and not D.m_power_basis(2)
    T = make_truncated_polynomial(GF(5), ["t"], 3)
    assert T.names == ("1", "t", "t^2")
    assert not any(T.mul(T.basis_vector(1), T.basis_vector(2)))
    P = make_truncated_polynomial(QQ, ["x", "y"], 2)
    assert P.dim == 3 and not any(P.mul(P.basis_vector(1), P.basis_vector(2)))


@pytest.mark.parametrize("name", ARTIN_NAMES)
def test_builtins_validate(name):
    assert parse_artin(name).validate().ok


def test_shorthand_labels_and_errors():
    assert parse_artin("F5[t]/t^3").label == "F5[t]/t^3"
    assert parse_artin("Q[x,y]/m^2").dim == 3
    assert parse_artin("F7").dim == 1
    for bad in ("F5[t]/s^3", "F5[x,y]/x^2", "F5 t"):
        with pytest.raises(ValueError):
            parse_artin(bad)


def test_unit_in_m_is_not_local(F5):
    A = ArtinAlgebra(F5, ["1", "e"], [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    rep = A.validate()
    assert not rep.ok


def test_associativity_break_has_witness():
    rep = builtin_mutant("broken-associative")[1].validate()
    assert rep["associative"].witness == ("a", "a", "b")
    assert not builtin_mutant("broken-idempotent")[1].validate().ok


def test_nilpotency_and_adapted_basis(t3_5, xy5):
    assert t3_5.nilpotency_order() == 3
    assert [w for w, _ in t3_5.adapted_m_basis()] == [1, 2]
    assert xy5.nilpotency_order() == 2
    assert t3_5.generator_indices() == [1]


def test_homs_dual_to_dual(F5, dual5):
    homs = enumerate_homs(dual_xi(F5), dual5)
    assert len(homs) == 5
    brute = homs_brute(1, dual5, lambda imgs: not any(dual5.mul(imgs[0], imgs[0])))
    assert sorted(h.images[0] for h in homs) == sorted(i[0] for i in brute)


def test_homs_dual_to_t3(F5, t3_5):
    homs = enumerate_homs(dual_xi(F5), t3_5)
    assert len(homs) == 5
    assert all(h.images[0][1] == 0 for h in homs)


def test_homs_from_residue_field(t3_5):
    assert len(enumerate_homs(residue_field(GF(5)), t3_5)) == 1


def test_homs_need_finite_field():
    D = make_truncated_polynomial(QQ, ["e"], 2)
    with pytest.raises(InfiniteField):
        enumerate_homs(D, D)


@pytest.mark.parametrize("target", ["F5[e]/e^2", "F5[t]/t^3", "F5[x,y]/m^2", "F7[t]/t^3"])
def test_square_zero_count_law(target):
    A = parse_artin(target)
    assert len(enumerate_homs(dual_xi(A.field), A)) == square_zero_count(A)


@pytest.mark.parametrize("pair", [("F5[t]/t^3", "F5[t]/t^3"), ("F5[e]/e^2", "F5[x,y]/m^2"),
                                  ("F5[x,y]/m^2", "F5[t]/t^3")])
def test_category_closure(pair):
    A, B = (parse_artin(x) for x in pair)
    AA = enumerate_homs(A, A)
    assert identity_morphism(A) in AA
    AB = set(enumerate_homs(A, B))
    assert all(f.is_homomorphism() for f in AB)
    for f in AA:
        for g in list(AB)[:6]:
            assert g.compose(f) in AB


def test_homs_match_brute_force_t3_to_t3(t3_5):
    homs = enumerate_homs(t3_5, t3_5)

    def ok(imgs):
        t = imgs[0]
        cube = t3_5.mul(t3_5.mul(t, t), t)
        return not any(cube)
    assert len(homs) == len(homs_brute(1, t3_5, ok)) == 25


def test_quotient_by_relations(F5):
    R = quotient_by_monomial_relations(F5, ["xi1"], [{(2,): 1}], 3)
    assert R.dim == 2 and R.validate().ok
    R2 = quotient_by_monomial_relations(F5, ["a", "b"], [], 2)
    assert R2.dim == 6


def test_json_roundtrip(xy5):
    A = ArtinAlgebra.from_json(xy5.to_json())
    assert A.table == xy5.table and A.validate().ok


def test_non_homomorphism_detected(t3_5):
    bad = ArtinMorphism(t3_5, t3_5, [t3_5.basis_vector(1), t3_5.basis_vector(1)])
    assert not bad.is_homomorphism()
