"""Named built-in examples and deliberately broken mutants."""
from __future__ import annotations

import random
import re

from .artin import ArtinAlgebra, parse_artin
from .descent import CoverDiagram, _identity_maps, constant_cover, split_cover
from .dgla import make_dgla
from .fields import parse_field
from .glin import Matrix
from .repdef import Representation, cyclic_group, cyclic_rep, trivial_rep


def abelian(field, n1=2, n2=1):
    """Zero differential and bracket, ``g¹ = k^{n1}``, ``g² = k^{n2}``."""
    basis = {}
    if n1:
        basis[1] = [f"a{i + 1}" for i in range(n1)]
    if n2:
        basis[2] = [f"c{i + 1}" for i in range(n2)]
    return make_dgla(field, basis, name=f"abelian({n1},{n2})" if (n1, n2) != (2, 1) else "abelian")


def acyclic(field):
    return make_dgla(field, {0: ["x"], 1: ["e"]}, [("x", "e", 1)], name="acyclic")


def obstruction(field):
    return make_dgla(field, {1: ["e"], 2: ["f"]}, bracket=[("e", "e", "f", 1)], name="obstruction")


def heisenberg(field):
    return make_dgla(field, {0: ["x", "y", "z"]}, bracket=[("x", "y", "z", 1)], name="heisenberg")


def random_dgla(field, seed=0):
    """Seeded member of a family that satisfies the axioms for every parameter choice.

    ``x⁰; a, b, u¹; c²`` with ``dx = αa``, ``du = γc``, ``[x,b] = βu``,
    ``[a,b] = (βγ/α)c`` and ``[b,b] = κc``; ``α, β, γ ≠ 0``.
    """
    F = parse_field(field)
    rng = random.Random(seed)
    p = F.characteristic
    pick = (lambda nz: F(rng.randrange(1, p) if nz else rng.randrange(p))) if p else \
        (lambda nz: F(rng.choice([1, 2, 3, -1, -2, 5]) if nz else rng.choice([0, 1, -1, 2])))
    al, be, ga, ka = pick(True), pick(True), pick(True), pick(False)
    br = [("x", "b", "u", be), ("a", "b", "c", F.div(F.reduce(be * ga), al))]
    if ka:
        br.append(("b", "b", "c", ka))
    return make_dgla(F, {0: ["x"], 1: ["a", "b", "u"], 2: ["c"]}, [("x", "a", al), ("u", "c", ga)], br,
                     name=f"random:{seed}")


_DGLA = {
    "abelian": lambda F: abelian(F),
    "acyclic": acyclic,
    "obstruction": obstruction,
    "heisenberg": heisenberg,
    "random": lambda F: random_dgla(F, 0),
}

_ABELIAN = re.compile(r"abelian\((\d+),(\d+)\)")
_RANDOM = re.compile(r"random:(\d+)")


def builtin_dgla(name, field="F5"):
    F = parse_field(field)
    m = _ABELIAN.fullmatch(name.replace(" ", ""))
    if m:
        return abelian(F, int(m.group(1)), int(m.group(2)))
    m = _RANDOM.fullmatch(name)
    if m:
        return random_dgla(F, int(m.group(1)))
    if name not in _DGLA:
        raise KeyError(f"unknown built-in dgla {name!r}")
    return _DGLA[name](F)


DGLA_NAMES = ("abelian", "abelian(1,0)", "abelian(1,1)", "acyclic", "obstruction", "heisenberg", "random")
ARTIN_NAMES = ("F5[e]/e^2", "F5[t]/t^3", "F5[x,y]/m^2", "F7[e]/e^2", "F7[t]/t^3", "F7[x,y]/m^2", "F5", "Q[e]/e^2")


def builtin_artin(name):
    return parse_artin(name)


# covers ----------------------------------------------------------------------

def _cover_base(rest):
    if ":" in rest:
        base, field = rest.rsplit(":", 1)
        return base, field
    return rest, "F5"


def builtin_cover(name):
    """``constant2:<dgla>[:<field>]``, ``constant3:…`` or ``split:…``."""
    kind, _, rest = name.partition(":")
    base, field = _cover_base(rest or "obstruction")
    g = builtin_dgla(base, field)
    if kind in ("constant1", "constant2", "constant3"):
        return constant_cover(g, int(kind[-1]), name=name)
    if kind == "split":
        return split_cover(g, name=name)
    raise KeyError(f"unknown built-in cover {name!r}")


COVER_NAMES = ("constant2:abelian", "constant3:abelian", "constant2:obstruction", "constant3:obstruction",
               "constant2:acyclic", "split:obstruction")


# representations ---------------------------------------------------------------

def builtin_rep(name):
    """``C<n>-trivial``, ``C2-sign2``, ``C3-rot2``, ``C<p>-unipotent`` with optional ``:<field>``."""
    base, _, field = name.partition(":")
    F = parse_field(field or "F5")
    kind, _, what = base.partition("-")
    n = int(kind[1:])
    p = F.characteristic
    if what == "trivial":
        r = trivial_rep(cyclic_group(n), F)
    elif what == "trivial2":
        r = trivial_rep(cyclic_group(n), F, 2)
    elif what == "sign2" and n == 2:
        r = cyclic_rep(2, F, [[1, 0], [0, -1]])
    elif what == "rot2" and n == 3:
        r = cyclic_rep(3, F, [[0, -1], [1, -1]])
    elif what == "unipotent" and n == p:
        r = cyclic_rep(n, F, [[1, 1], [0, 1]])
    else:
        raise KeyError(f"unknown built-in representation {name!r}")
    r.name = name
    return r


REP_NAMES = ("C2-trivial", "C3-trivial", "C5-trivial", "C2-sign2", "C3-rot2", "C5-unipotent",
             "C2-trivial:F7", "C3-trivial:F7", "C5-trivial:F7", "C2-sign2:F7", "C3-rot2:F7", "C5-trivial2:F7")


# mutants -----------------------------------------------------------------------

def _mutant_antisymmetry(F):
    return heisenberg(F).with_bracket_entry("x", "z", "y", 1)


def _mutant_jacobi(F):
    return make_dgla(F, {0: ["x", "y", "z"]},
                     bracket=[("x", "y", "z", 1), ("y", "z", "x", 1), ("z", "x", "x", 1)], name="broken-jacobi")


def _mutant_leibniz(F):
    return make_dgla(F, {0: ["x", "y"], 1: ["e"]}, [("x", "e", 1)], [("x", "y", "x", 1)], name="broken-leibniz")


def _mutant_d_squared(F):
    return make_dgla(F, {0: ["x"], 1: ["e"], 2: ["f"]}, [("x", "e", 1), ("e", "f", 1)], name="broken-d-squared")


def _mutant_artin_nilpotent(F):
    # e·e = e: m is not nilpotent
    return ArtinAlgebra(F, ["1", "e"], [[[1, 0], [0, 1]], [[0, 1], [0, 1]]], label="broken-idempotent")


def _mutant_artin_associative(F):
    # a·a = b, a·b = 0, b·b = b: (a·a)·b = b but a·(a·b) = 0
    z = [0, 0, 0]
    table = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
             [[0, 1, 0], [0, 0, 1], list(z)],
             [[0, 0, 1], list(z), [0, 0, 1]]]
    return ArtinAlgebra(F, ["1", "a", "b"], table, label="broken-associative")


def _mutant_cover(F):
    g = obstruction(F)
    doubled = {1: Matrix(F, [[2]]), 2: Matrix.identity(F, 1)}
    return CoverDiagram(["1", "2"], {(0,): g, (1,): g, (0, 1): g},
                        {((0,), (0, 1)): doubled, ((1,), (0, 1)): _identity_maps(g)}, depth=2,
                        name="broken-restriction")


def _mutant_rep(F):
    G = cyclic_group(3)
    return Representation(G, F, [[[1]], [[2]], [[2]]], name="broken-multiplicative")


MUTANTS = {
    "broken-antisymmetry": ("dgla", _mutant_antisymmetry),
    "broken-jacobi": ("dgla", _mutant_jacobi),
    "broken-leibniz": ("dgla", _mutant_leibniz),
    "broken-d-squared": ("dgla", _mutant_d_squared),
    "broken-idempotent": ("artin", _mutant_artin_nilpotent),
    "broken-associative": ("artin", _mutant_artin_associative),
    "broken-restriction": ("cover", _mutant_cover),
    "broken-multiplicative": ("representation", _mutant_rep),
}


def builtin_mutant(name, field="F5"):
    kind, make = MUTANTS[name]
    return kind, make(parse_field(field))


def catalog():
    """``(kind, name)`` for every shipped example, in canonical order."""
    out = [("dgla", n) for n in DGLA_NAMES]
    out += [("artin", n) for n in ARTIN_NAMES]
    out += [("cover", n) for n in COVER_NAMES]
    out += [("representation", n) for n in REP_NAMES]
    out += [("mutant", n) for n in MUTANTS]
    return out


def load_example(kind, name):
    if kind == "dgla":
        return builtin_dgla(name)
    if kind == "artin":
        return builtin_artin(name)
    if kind == "cover":
        return builtin_cover(name)
    if kind == "representation":
        return builtin_rep(name)
    if kind == "mutant":
        return builtin_mutant(name)[1]
    raise KeyError(kind)
