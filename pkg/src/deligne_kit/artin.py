"""Local Artin algebras with residue field k, stored as an explicit multiplication table."""
from __future__ import annotations

import re
from itertools import product

from .fields import InfiniteField, parse_field, same_field
from .glin import Matrix, extend_to_basis, kernel_basis, span_basis, solve, standard_basis
from .polys import monomial_name, monomials
from .report import ValidationReport


class ArtinAlgebra:
    """Finite-dimensional commutative local algebra ``A = k·1 ⊕ m``.

    Basis index 0 is the unit; indices ``1..dim-1`` span the maximal ideal.
    ``table[i][j]`` is the product of basis elements ``i`` and ``j`` as a
    coefficient vector.  The declared nilpotency ``order`` (least ``n`` with
    ``m^n = 0``) is checked by :meth:`validate`, never trusted.
    """

    def __init__(self, field, names, table, order=None, label=None):
        self.field = field
        self.names = tuple(names)
        n = len(self.names)
        if n < 1:
            raise ValueError("an Artin algebra needs at least the unit")
        self.table = tuple(tuple(tuple(field.reduce(c) for c in table[i][j]) for j in range(n))
                           for i in range(n))
        for row in self.table:
            for v in row:
                if len(v) != n:
                    raise ValueError("multiplication table entries must have length dim")
        self.declared_order = order
        self.label = label
        self._sparse = {}
        for i in range(n):
            for j in range(n):
                nz = tuple((k, c) for k, c in enumerate(self.table[i][j]) if c)
                if nz:
                    self._sparse[(i, j)] = nz
        self._order = None

    # basic structure -------------------------------------------------------

    @property
    def dim(self):
        return len(self.names)

    @property
    def m_dim(self):
        return self.dim - 1

    @property
    def m_names(self):
        return self.names[1:]

    def basis_vector(self, i):
        v = [self.field.zero] * self.dim
        v[i] = self.field.one
        return tuple(v)

    @property
    def one(self):
        return self.basis_vector(0)

    def zero(self):
        return self.field.zeros(self.dim)

    def mul(self, u, v):
        out = [0] * self.dim
        nzu = [(i, a) for i, a in enumerate(u) if a]
        nzv = [(j, b) for j, b in enumerate(v) if b]
        sp = self._sparse
        for i, a in nzu:
            for j, b in nzv:
                for k, c in sp.get((i, j), ()):
                    out[k] += a * b * c
        red = self.field.reduce
        return tuple(red(x) for x in out)

    def m_product(self, i, j):
        """Product of m-basis elements ``i, j`` (0-based within m) as m-coordinates."""
        return self.table[i + 1][j + 1][1:]

    def element(self, coeffs):
        return tuple(self.field(c) for c in coeffs)

    def format(self, v):
        terms = []
        for name, c in zip(self.names, v):
            if not c:
                continue
            cs = self.field.format(c)
            terms.append(cs if name == "1" else (name if cs == "1" else f"{cs}*{name}"))
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"ArtinAlgebra({self.label or self.field.name}, dim={self.dim})"

    # filtration ------------------------------------------------------------

    def m_power_basis(self, k):
        """rref basis (full-length vectors) of ``m^k``; ``k >= 1``."""
        F = self.field
        cur = [self.basis_vector(i) for i in range(1, self.dim)]
        cur = span_basis(F, cur, self.dim)
        for _ in range(k - 1):
            if not cur:
                break
            prods = [self.mul(a, self.basis_vector(j)) for a in cur for j in range(1, self.dim)]
            cur = span_basis(F, [p for p in prods if any(p)], self.dim)
        return cur

    def nilpotency_order(self):
        """Least ``n`` with ``m^n = 0``, or ``None`` when ``m`` is not nilpotent."""
        if self._order is None:
            n = 1
            prev = None
            while True:
                b = self.m_power_basis(n)
                if not b:
                    self._order = n
                    break
                if prev is not None and len(b) == len(prev):
                    self._order = -1
                    break
                prev = b
                n += 1
        return None if self._order == -1 else self._order

    @property
    def order(self):
        return self.nilpotency_order()

    def adapted_m_basis(self):
        """Basis of ``m`` adapted to ``m ⊇ m^2 ⊇ ...``: list of ``(weight, vector)``.

        Basis elements of ``m`` are preferred, so for monomial algebras this is
        the monomial basis with weight = degree.
        """
        n = self.nilpotency_order()
        if n is None:
            raise ValueError("maximal ideal is not nilpotent")
        F = self.field
        out = []
        for w in range(n - 1, 0, -1):
            sub = [v for _, v in out]
            layer = self.m_power_basis(w)
            cand = [self.basis_vector(i) for i in range(1, self.dim)
                    if _in_span(F, layer, self.basis_vector(i), self.dim)]
            cand += list(layer)
            for v in extend_to_basis(F, sub, cand, self.dim):
                out.append((w, v))
        out.sort(key=lambda wv: (wv[0], [-int(bool(c)) for c in wv[1]]))
        return out

    def generator_indices(self):
        """Indices (into the full basis) of m-basis elements spanning ``m / m^2``."""
        F = self.field
        m2 = self.m_power_basis(2)
        chosen = []
        cur = list(m2)
        r = len(span_basis(F, cur, self.dim)) if cur else 0
        for i in range(1, self.dim):
            v = self.basis_vector(i)
            r2 = len(span_basis(F, cur + [v], self.dim))
            if r2 > r:
                chosen.append(i)
                cur.append(v)
                r = r2
        return chosen

    # validation ------------------------------------------------------------

    def validate(self):
        rep = ValidationReport(f"artin {self.label or ''}".strip())
        n = self.dim
        F = self.field
        e = [self.basis_vector(i) for i in range(n)]
        rep.add("unital", next(((self.names[i],) for i in range(n)
                                if self.table[0][i] != e[i] or self.table[i][0] != e[i]), None))
        rep.add("commutative", next(((self.names[i], self.names[j]) for i in range(n) for j in range(i + 1, n)
                                     if self.table[i][j] != self.table[j][i]), None))
        assoc = None
        for i, j, k in product(range(n), repeat=3):
            if self.mul(self.table[i][j], e[k]) != self.mul(e[i], self.table[j][k]):
                assoc = (self.names[i], self.names[j], self.names[k])
                break
        rep.add("associative", assoc)
        ideal = next(((self.names[i], self.names[j]) for i in range(1, n) for j in range(1, n)
                      if self.table[i][j][0]), None)
        rep.add("m_is_ideal", ideal)
        # augmentation A -> k is multiplicative iff unit coefficients multiply
        aug = None
        for i, j in product(range(n), repeat=2):
            expect = F.one if (i == 0 and j == 0) else F.zero
            if self.table[i][j][0] != expect:
                aug = (self.names[i], self.names[j])
                break
        rep.add("augmentation", aug)
        order = self.nilpotency_order()
        if order is None:
            rep.add("m_nilpotent", ("m",), "maximal ideal is not nilpotent")
        elif self.declared_order is not None and self.declared_order != order:
            rep.add("m_nilpotent", ("declared", self.declared_order),
                    f"declared order {self.declared_order}, actual {order}")
        else:
            rep.add("m_nilpotent")
        return rep

    # io --------------------------------------------------------------------

    def to_json(self):
        F = self.field
        entries = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                v = self.table[i][j]
                if i == 0 or not any(v):
                    continue
                entries.append([self.names[i], self.names[j],
                                {self.names[k]: F.to_json(c) for k, c in enumerate(v) if c}])
        return {"kind": "artin", "field": F.name, "basis": list(self.names[1:]),
                "table": entries, "order": self.nilpotency_order()}

    @classmethod
    def from_json(cls, data):
        F = parse_field(data["field"])
        names = ["1"] + list(data["basis"])
        idx = {nm: i for i, nm in enumerate(names)}
        n = len(names)
        zero = [F.zero] * n
        table = [[list(zero) for _ in range(n)] for _ in range(n)]
        for i in range(n):
            table[0][i][i] = F.one
            table[i][0][i] = F.one
        seen = set()
        for a, b, res in data.get("table", []):
            if a not in idx or b not in idx:
                raise ValueError(f"unknown basis element in table entry {a!r}*{b!r}")
            key = tuple(sorted((idx[a], idx[b])))
            if key in seen:
                raise ValueError(f"duplicate table entry for {a}*{b}")
            seen.add(key)
            v = list(zero)
            for nm, c in res.items():
                if nm not in idx:
                    raise ValueError(f"unknown basis element {nm!r}")
                v[idx[nm]] = F(c)
            table[idx[a]][idx[b]] = v
            table[idx[b]][idx[a]] = list(v)
        return cls(F, names, table, order=data.get("order"), label=data.get("label"))


def _in_span(field, vectors, v, dim):
    if not vectors:
        return not any(v)
    return len(span_basis(field, list(vectors) + [v], dim)) == len(span_basis(field, list(vectors), dim))


def make_truncated_polynomial(field, variables, order):
    """``k[x_1..x_v] / (all monomials of degree >= order)``, monomial basis in graded-lex order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    field = parse_field(field)
    nv = len(variables)
    monos = monomials(nv, order - 1)
    idx = {e: i for i, e in enumerate(monos)}
    n = len(monos)
    table = []
    for a in monos:
        row = []
        for b in monos:
            v = [field.zero] * n
            e = tuple(x + y for x, y in zip(a, b))
            if e in idx:
                v[idx[e]] = field.one
            row.append(v)
        table.append(row)
    names = [monomial_name(e, variables) for e in monos]
    return ArtinAlgebra(field, names, table, order=order,
                        label=f"{field.name}[{','.join(variables)}]/{_order_label(variables, order)}")


def _order_label(variables, order):
    if len(variables) == 1:
        return f"{variables[0]}^{order}"
    return f"m^{order}"


def residue_field(field):
    field = parse_field(field)
    return ArtinAlgebra(field, ["1"], [[[field.one]]], order=1, label=field.name)


_SHORT = re.compile(r"\s*(Q|QQ|F_?\d+|GF\d+)\s*(?:\[([A-Za-z_][\w,\s]*)\]\s*/\s*([A-Za-z_]\w*)\s*\^\s*(\d+))?\s*")


def parse_artin(text):
    """Shorthand like ``F5[t]/t^3``, ``Q[x,y]/m^2`` or just ``F5`` (the residue field)."""
    m = _SHORT.fullmatch(text)
    if not m:
        raise ValueError(f"cannot parse Artin algebra shorthand {text!r}")
    field = parse_field(m.group(1))
    if m.group(2) is None:
        return residue_field(field)
    variables = [v.strip() for v in m.group(2).split(",") if v.strip()]
    power_of = m.group(3)
    if power_of != "m" and (len(variables) != 1 or power_of != variables[0]):
        raise ValueError(f"truncation must be by 'm' or the single variable in {text!r}")
    A = make_truncated_polynomial(field, variables, int(m.group(4)))
    A.label = f"{field.name}[{','.join(variables)}]/{power_of}^{m.group(4)}"
    return A


# --------------------------------------------------------------------------
# morphisms

class ArtinMorphism:
    """Local algebra map, stored as the images of the source m-basis (in the target's ``m``)."""

    def __init__(self, source, target, images):
        self.source = source
        self.target = target
        self.images = tuple(tuple(v) for v in images)

    def apply(self, v):
        F = self.target.field
        out = [v[0]] + [F.zero] * (self.target.dim - 1)
        for c, img in zip(v[1:], self.images):
            if c:
                for k, x in enumerate(img):
                    if x:
                        out[k] += c * x
        return tuple(F.reduce(x) for x in out)

    def compose(self, first):
        """``self ∘ first``."""
        if first.target is not self.source and first.target.to_json() != self.source.to_json():
            raise ValueError("morphisms are not composable")
        return ArtinMorphism(first.source, self.target, [self.apply(v) for v in first.images])

    def key(self):
        return tuple(int(c) if self.target.field.is_finite else c for v in self.images for c in v)

    def is_homomorphism(self):
        S = self.source
        for i in range(S.dim):
            for j in range(S.dim):
                lhs = self.apply(S.table[i][j])
                rhs = self.target.mul(self.apply(S.basis_vector(i)), self.apply(S.basis_vector(j)))
                if lhs != rhs:
                    return False
        return all(not img[0] for img in self.images)

    def __eq__(self, other):
        return isinstance(other, ArtinMorphism) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        parts = [f"{nm} -> {self.target.format(v)}" for nm, v in zip(self.source.m_names, self.images)]
        return "ArtinMorphism(" + ", ".join(parts) + ")"


def identity_morphism(A):
    return ArtinMorphism(A, A, [A.basis_vector(i) for i in range(1, A.dim)])


def _monomial_data(S):
    """Generators of ``S``, monomials in them spanning ``S``, linear relations, and basis expressions."""
    F = S.field
    gens = S.generator_indices()
    order = S.nilpotency_order()
    if order is None:
        raise ValueError("source maximal ideal is not nilpotent")
    monos = monomials(len(gens), order)
    vecs = []
    cache = {}
    for e in monos:
        if sum(e) == 0:
            v = S.one
        else:
            i = next(k for k, x in enumerate(e) if x)
            prev = list(e)
            prev[i] -= 1
            v = S.mul(cache[tuple(prev)], S.basis_vector(gens[i]))
        cache[e] = v
        vecs.append(v)
    M = Matrix.from_columns(F, vecs, S.dim)
    relations = kernel_basis(M)
    express = []
    for i in range(1, S.dim):
        x = solve(M, S.basis_vector(i))
        if x is None:
            raise ValueError("generators do not generate the algebra")
        express.append(x)
    return gens, monos, relations, express


def enumerate_homs(source, target):
    """All local k-algebra maps ``source -> target`` over a finite field, canonically sorted."""
    F = same_field(source.field, target.field)
    if not F.is_finite:
        raise InfiniteField("morphism enumeration needs a finite field")
    if source.m_dim == 0:
        return [ArtinMorphism(source, target, [])]
    gens, monos, relations, express = _monomial_data(source)
    red = F.reduce
    m_vectors = [tuple([0] + list(c)) for c in product(F.elements(), repeat=target.m_dim)]
    out = []
    ng = len(gens)
    for choice in product(m_vectors, repeat=ng):
        imgs = {}
        tvals = []
        ok = True
        for e in monos:
            if sum(e) == 0:
                v = target.one
            else:
                i = next(k for k, x in enumerate(e) if x)
                prev = list(e)
                prev[i] -= 1
                v = target.mul(imgs[tuple(prev)], choice[i])
            imgs[e] = v
            tvals.append(v)
        for r in relations:
            acc = [0] * target.dim
            for c, v in zip(r, tvals):
                if c:
                    for k, x in enumerate(v):
                        if x:
                            acc[k] += c * x
            if any(red(x) for x in acc):
                ok = False
                break
        if not ok:
            continue
        images = []
        for x in express:
            acc = [0] * target.dim
            for c, v in zip(x, tvals):
                if c:
                    for k, y in enumerate(v):
                        if y:
                            acc[k] += c * y
            images.append(tuple(red(a) for a in acc))
        out.append(ArtinMorphism(source, target, images))
    out.sort(key=ArtinMorphism.key)
    return out


def quotient_by_monomial_relations(field, gen_names, relations, order, label=None):
    """``k[ξ] / (ideal(relations) + m^{order+1})`` realised on standard monomials.

    ``relations`` are polynomials ``{exponent: coeff}`` without constant term.
    Works degree-truncated: the ideal is spanned by ``monomial * relation``
    products of total degree ``<= order``.
    """
    nv = len(gen_names)
    monos = monomials(nv, order)
    idx = {e: i for i, e in enumerate(monos)}
    n = len(monos)
    red = field.reduce
    ideal = []
    for r in relations:
        for e in monos:
            v = [field.zero] * n
            for er, c in r.items():
                ee = tuple(a + b for a, b in zip(e, er))
                if ee in idx:
                    v[idx[ee]] = red(v[idx[ee]] + c)
            if any(v):
                ideal.append(tuple(v))
    # reduce from the top degree down so standard monomials are the low-degree ones
    rev = list(reversed(range(n)))
    ideal_rev = [tuple(v[i] for i in rev) for v in ideal]
    basis_rev = span_basis(field, ideal_rev, n) if ideal_rev else []
    from .glin import rref
    piv = set()
    if basis_rev:
        piv = {rev[c] for c in rref(Matrix(field, basis_rev, n))[1]}
    std = [i for i in range(n) if i not in piv]
    if 0 not in std:
        raise ValueError("relations generate the unit ideal")
    # normal form: express monomial i modulo ideal in terms of standard monomials
    std_pos = {i: k for k, i in enumerate(std)}

    def normal_form(vec):
        v = [vec[i] for i in rev]
        for row in basis_rev:
            pc = next(k for k, c in enumerate(row) if c)
            if v[pc]:
                f = v[pc]
                v = [red(a - f * b) for a, b in zip(v, row)]
        full = [v[rev.index(i)] for i in range(n)]
        out = [field.zero] * len(std)
        for i, c in enumerate(full):
            if c:
                out[std_pos[i]] = c
        return tuple(out)

    table = []
    for a in std:
        row = []
        for b in std:
            v = [field.zero] * n
            e = tuple(x + y for x, y in zip(monos[a], monos[b]))
            if e in idx:
                v[idx[e]] = field.one
            row.append(normal_form(v))
        table.append(row)
    names = [monomial_name(monos[i], gen_names) for i in std]
    A = ArtinAlgebra(field, names, table, label=label)
    A.standard_monomials = [monos[i] for i in std]

    def nf_poly(p):
        v = [field.zero] * n
        for e, c in p.items():
            if sum(e) <= order:
                v[idx[e]] = red(v[idx[e]] + c)
        return normal_form(v)

    A.normal_form = nf_poly
    return A
