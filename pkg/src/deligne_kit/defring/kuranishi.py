"""Kuranishi germ, obstruction map and the presented deformation ring."""
from __future__ import annotations

from dataclasses import dataclass

from ..artin import quotient_by_monomial_relations
from ..dgla import cohomology
from ..fields import require_denominators
from ..glin import Matrix, span_basis, split_complex
from ..polys import monomial_name, monomials, poly_str


class HypothesisViolated(ValueError):
    """Raised when ``H⁰(g) ≠ 0`` but the construction needs no infinitesimal automorphisms."""


def _germ_bracket(g, y, z, order):
    out = {}
    for e1, c1 in y.items():
        d1 = sum(e1)
        for e2, c2 in z.items():
            if d1 + sum(e2) > order:
                continue
            v = g.bracket(1, c1, 1, c2)
            if any(v):
                e = tuple(a + b for a, b in zip(e1, e2))
                prev = out.get(e)
                out[e] = v if prev is None else g.add(prev, v)
    return {e: v for e, v in out.items() if any(v)}


def _apply(M, germ):
    out = {}
    for e, v in germ.items():
        w = M.apply(v)
        if any(w):
            out[e] = w
    return out


@dataclass
class KuranishiData:
    g: object
    order: int
    splitting: object
    h1_basis: list      # cycle representatives in g¹, one per ξ-coordinate
    germ: dict          # exponent -> g¹ vector: y(ξ)
    obstruction: list   # one polynomial per H² coordinate: K(ξ)

    @property
    def nvars(self):
        return len(self.h1_basis)

    def curvature_germ(self):
        """``dy(ξ) + ½[y(ξ), y(ξ)]`` as an exponent -> g² map."""
        g = self.g
        F = g.field
        half = F.inv(F(2))
        out = {}
        for e, v in self.germ.items():
            w = g.differential(1, v)
            if any(w):
                out[e] = w
        for e, v in _germ_bracket(g, self.germ, self.germ, self.order).items():
            prev = out.get(e, g.zero(2))
            out[e] = g.add(prev, v, half)
        return {e: v for e, v in out.items() if any(v)}

    def evaluate(self, A, values):
        """``y(a)`` in ``m_A ⊗ g¹`` (tensor basis order) for ``ξ_i ↦ values[i] ∈ m_A``."""
        g = self.g
        n1 = g.dim(1)
        powers = {tuple([0] * self.nvars): A.one}

        def power(e):
            if e in powers:
                return powers[e]
            i = next(k for k, x in enumerate(e) if x)
            prev = list(e)
            prev[i] -= 1
            v = A.mul(power(tuple(prev)), values[i])
            powers[e] = v
            return v

        out = [0] * (A.m_dim * n1)
        for e, c in self.germ.items():
            a = power(e)
            for p in range(A.m_dim):
                ap = a[p + 1]
                if ap:
                    for j, cj in enumerate(c):
                        if cj:
                            out[p * n1 + j] += ap * cj
        return tuple(A.field.reduce(x) for x in out)


def kuranishi(g, N):
    """Iterate ``y ← ξ − ½ h[y,y]`` to order ``N``; ``K = π_{H²}(½[y,y])``."""
    F = g.field
    require_denominators(F, N + 1, "Kuranishi iteration")
    split = split_complex(g.d)
    s1 = split.degrees.get(1)
    h1 = list(s1.H) if s1 else []
    r = len(h1)
    linear = {}
    for i, v in enumerate(h1):
        e = [0] * r
        e[i] = 1
        linear[tuple(e)] = tuple(v)
    h2 = split.h.at(2)
    half = F.inv(F(2))
    y = dict(linear)
    for _ in range(N):
        corr = _apply(h2, _germ_bracket(g, y, y, N))
        nxt = dict(linear)
        for e, v in corr.items():
            nxt[e] = g.add(nxt.get(e, g.zero(1)), v, -half)
        nxt = {e: v for e, v in nxt.items() if any(v)}
        if nxt == y:
            break
        y = nxt
    s2 = split.degrees.get(2)
    obstruction = []
    if s2 and s2.H:
        Q = _germ_bracket(g, y, y, N)
        for j in range(len(s2.H)):
            poly = {}
            for e, v in Q.items():
                c = F.reduce(half * sum(a * b for a, b in zip(s2.to_H.rows[j], v)))
                if c:
                    poly[e] = c
            obstruction.append(poly)
    return KuranishiData(g, N, split, h1, y, obstruction)


@dataclass
class DeformationRingPresentation:
    """``k[ξ₁..ξ_r] / (relations) + m^{N+1}`` with ``r = dim H¹``."""
    field: object
    generators: tuple
    relations: list     # normalized polynomials {exponent: coeff}
    order: int
    kuranishi: KuranishiData

    _artin = None

    def as_artin(self):
        if self._artin is None:
            label = f"Def[{', '.join(self.generators)}]/{self.order}" if self.generators else "k"
            self._artin = quotient_by_monomial_relations(self.field, self.generators, self.relations,
                                                         self.order, label=label)
        return self._artin

    def relation_strings(self):
        return [poly_str(self.field, r, self.generators) for r in self.relations]

    def __str__(self):
        return f"gens=[{', '.join(self.generators)}] rels=[{', '.join(self.relation_strings())}]"

    def to_json(self):
        F = self.field
        return {
            "generators": list(self.generators),
            "order": self.order,
            "relations": [
                {"text": poly_str(F, r, self.generators),
                 "terms": [[list(e), F.to_json(c)] for e, c in sorted(r.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))]}
                for r in self.relations
            ],
        }


def require_h0_zero(g):
    if 0 in g.degrees and cohomology(g, 0).dim:
        raise HypothesisViolated("H^0(g) must vanish: the deformation problem has infinitesimal automorphisms")


def normalize_relations(field, polys, nvars, order):
    """Reduced echelon basis of the span of ``polys`` over graded-lex monomials, leading coefficient 1."""
    monos = monomials(nvars, order, 2)
    idx = {e: i for i, e in enumerate(monos)}
    vecs = []
    for p in polys:
        v = [field.zero] * len(monos)
        for e, c in p.items():
            if sum(e) < 2:
                raise ValueError("relation with constant or linear term")
            if e in idx:
                v[idx[e]] = field.reduce(v[idx[e]] + c)
        if any(v):
            vecs.append(tuple(v))
    rows = span_basis(field, vecs, len(monos)) if vecs else []
    return [{monos[i]: c for i, c in enumerate(row) if c} for row in rows]


def def_ring(g, N):
    """The deformation ring presented by the Kuranishi obstruction, truncated at order ``N``."""
    require_h0_zero(g)
    kd = kuranishi(g, N)
    r = kd.nvars
    gens = tuple(f"xi{i + 1}" for i in range(r))
    rels = normalize_relations(g.field, kd.obstruction, r, N)
    return DeformationRingPresentation(g.field, gens, rels, N, kd)


def tangent_dim(pres):
    return len(pres.generators)
