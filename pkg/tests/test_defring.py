import pytest

from deligne_kit.artin import ArtinMorphism, enumerate_homs, make_truncated_polynomial, parse_artin
from deligne_kit.defring import (HypothesisViolated, ce_truncation, compare_ce_kuranishi, def_ring, kuranishi,
                                 naturality_check, tangent_dim, theorem2_check)
from deligne_kit.dgla import cohomology, make_dgla, validate
from deligne_kit.fields import GF, QQ
from deligne_kit.library import builtin_dgla

H0_ZERO = ("abelian", "abelian(1,0)", "abelian(1,1)", "acyclic", "obstruction", "random", "random:3", "random:7")


def cross(F):
    """``[a,b] = c`` with zero differential: obstruction ``ξ1·ξ2``."""
    return make_dgla(F, {1: ["a", "b"], 2: ["c"]}, bracket=[("a", "b", "c", 1)], name="cross")


def cubic(F):
    """``[a,a] = du`` is killed at second order; the correction meets ``[a,u] = c`` at third."""
    return make_dgla(F, {1: ["a", "u"], 2: ["w", "c"]}, [("u", "w", 1)],
                     [("a", "a", "w", 1), ("a", "u", "c", 1)], name="cubic")


def test_handmade_algebras_are_dglas():
    for F in (QQ, GF(7)):
        assert validate(cross(F)).ok and validate(cubic(F)).ok


@pytest.mark.parametrize("field", ["Q", "F7"])
def test_obstruction_presentation(field):
    pres = def_ring(builtin_dgla("obstruction", field), 3)
    assert str(pres) == "gens=[xi1] rels=[xi1^2]"
    assert pres.as_artin().dim == 2


def test_obstruction_kuranishi_map():
    kd = kuranishi(builtin_dgla("obstruction", "Q"), 3)
    assert kd.obstruction == [{(2,): QQ(1) / 2}]


@pytest.mark.parametrize("name,gens", [("abelian", 2), ("abelian(1,0)", 1), ("acyclic", 0), ("random", 1)])
def test_unobstructed_presentations(name, gens):
    pres = def_ring(builtin_dgla(name, "Q"), 3)
    assert tangent_dim(pres) == gens and pres.relations == []


def test_cross_relation():
    assert str(def_ring(cross(QQ), 3)) == "gens=[xi1, xi2] rels=[xi1*xi2]"


def test_cubic_relation_appears_at_order_three():
    assert def_ring(cubic(QQ), 2).relations == []
    assert str(def_ring(cubic(QQ), 3)) == "gens=[xi1] rels=[xi1^3]"
    assert def_ring(cubic(GF(7)), 4).as_artin().dim == 3


@pytest.mark.parametrize("name", H0_ZERO)
@pytest.mark.parametrize("field", ["Q", "F7"])
def test_tangent_is_h1(name, field):
    g = builtin_dgla(name, field)
    assert tangent_dim(def_ring(g, 3)) == cohomology(g, 1).dim


@pytest.mark.parametrize("make", [cross, cubic, lambda F: builtin_dgla("obstruction", F)])
def test_presentation_stable_in_order(make):
    g = make(GF(7))
    R3, R4 = def_ring(g, 3).as_artin(), def_ring(g, 4).as_artin()
    assert R3.dim == R4.dim - len(R4.m_power_basis(4))


@pytest.mark.parametrize("name", ["heisenberg"])
def test_h0_nonzero_refused(name):
    g = builtin_dgla(name, "Q")
    with pytest.raises(HypothesisViolated):
        def_ring(g, 3)
    with pytest.raises(HypothesisViolated):
        theorem2_check(builtin_dgla(name, "F7"), parse_artin("F7[e]/e^2"))
    assert not ce_truncation(g, 3).hypothesis_h0_zero


@pytest.mark.parametrize("make", [lambda F: builtin_dgla("obstruction", F), lambda F: builtin_dgla("random", F),
                                  lambda F: builtin_dgla("acyclic", F), cross, cubic])
def test_ce_truncation_checks(make):
    ce = ce_truncation(make(GF(7)), 4)
    assert ce.checks().ok, ce.checks().failed()


def test_ce_abelian_is_polynomial_ring():
    g = builtin_dgla("abelian", "Q")
    # words of length <= W: k[t1, t2] truncated above degree W
    assert ce_truncation(g, 3).algebra.dim == 1 + 2 + 3 + 4
    ce = ce_truncation(g, 4)
    assert ce.algebra.dim == 1 + 2 + 3 + 4 + 5
    assert ce.algebra.validate().ok and ce.algebra.nilpotency_order() == 5


@pytest.mark.parametrize("make", [lambda F: builtin_dgla(n, F) for n in H0_ZERO] + [cross, cubic])
@pytest.mark.parametrize("field", [QQ, GF(7)])
def test_ce_matches_kuranishi(make, field):
    c = compare_ce_kuranishi(make(field), 3)
    assert c.ok, c.report.failed()
    assert c.ce_dim - len(c.ce.algebra.m_power_basis(4)) == c.def_dim


@pytest.mark.parametrize("make", [lambda F: builtin_dgla(n, F) for n in ("obstruction", "random", "abelian", "acyclic")]
                         + [cross, cubic])
@pytest.mark.parametrize("artin", ["F7[e]/e^2", "F7[t]/t^3", "F7[x,y]/m^2"])
def test_hom_count_equals_pi0(make, artin):
    A = parse_artin(artin)
    r = theorem2_check(make(A.field), A)
    assert r.match and not r.failures, r.failures
    assert len({c for _, c in r.bijection}) == r.rhs


def test_cubic_against_t4():
    A = make_truncated_polynomial(GF(7), ["t"], 4)
    r = theorem2_check(cubic(GF(7)), A)
    # ξ ↦ c with c³ = 0 in k[t]/t⁴: c has no linear term
    assert r.lhs == 49 and r.match


def test_obstruction_hom_count_by_hand():
    A = parse_artin("F7[t]/t^3")
    r = theorem2_check(builtin_dgla("obstruction", "F7"), A)
    # ξ² = 0 forces ξ ↦ βt²
    assert r.lhs == 7


def test_order_below_nilpotency_rejected():
    with pytest.raises(ValueError):
        theorem2_check(builtin_dgla("obstruction", "F7"), parse_artin("F7[t]/t^3"), N=2)


@pytest.mark.parametrize("make", [lambda F: builtin_dgla("obstruction", F), lambda F: builtin_dgla("random", F), cross])
def test_naturality(make):
    F = GF(7)
    A = parse_artin("F7[t]/t^3")
    B = parse_artin("F7[x,y]/m^2")
    g = make(F)
    for f in enumerate_homs(A, B)[::7]:
        assert naturality_check(g, f).ok
    proj = ArtinMorphism(A, parse_artin("F7[e]/e^2"), [(0, 1), (0, 0)])
    assert proj.is_homomorphism() and naturality_check(g, proj).ok
