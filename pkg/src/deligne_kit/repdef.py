"""Deformations of finite-group representations and their governing cochain dgla."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .deligne import GroupoidSummary, IsoClass, _solve_modulo, _union_find, groupoid_equivalent, nilpotent, pi0
from .dgla import make_dgla, tensor_with_ideal
from .fields import InfiniteField, parse_field
from .glin import Matrix, inverse as mat_inverse, kernel_basis
from .report import ValidationReport


class FiniteGroup:
    """Elements ``0..n-1`` with a multiplication table; ``table[a][b] = ab``."""

    def __init__(self, names, table, name=None):
        self.names = tuple(names)
        self.table = tuple(tuple(row) for row in table)
        self.name = name
        n = len(self.names)
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be n x n")
        ids = [e for e in range(n) if all(self.table[e][a] == a and self.table[a][e] == a for a in range(n))]
        self.identity = ids[0] if ids else None
        self._inv = None

    @property
    def order(self):
        return len(self.names)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        if self._inv is None:
            self._inv = {x: y for x in range(self.order) for y in range(self.order)
                         if self.table[x][y] == self.identity}
        return self._inv[a]

    def validate(self):
        rep = ValidationReport(f"group {self.name or ''}".strip())
        n = self.order
        bad = next(((a,) for a in range(n) for b in range(n) if not 0 <= self.table[a][b] < n), None)
        rep.add("closed", bad)
        rep.add("identity", None if self.identity is not None else ("none",))
        bad = None
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                bad = (self.names[a], self.names[b], self.names[c])
                break
        rep.add("associative", bad)
        bad = None
        if self.identity is not None:
            for a in range(n):
                if not any(self.table[a][b] == self.identity for b in range(n)):
                    bad = (self.names[a],)
                    break
        rep.add("inverses", bad)
        return rep

    def to_json(self):
        out = {"elements": list(self.names), "table": [list(r) for r in self.table]}
        if self.name:
            out["name"] = self.name
        return out


def cyclic_group(n):
    names = ["1"] + [("g" if k == 1 else f"g{k}") for k in range(1, n)]
    return FiniteGroup(names, [[(a + b) % n for b in range(n)] for a in range(n)], name=f"C{n}")


def trivial_group():
    return FiniteGroup(["1"], [[0]], name="C1")


class Representation:
    """``ρ: Γ → GL(V)`` given by one matrix per group element."""

    def __init__(self, group, field, matrices, name=None):
        self.group = group
        self.field = field
        self.matrices = [m if isinstance(m, Matrix) else Matrix(field, [[field(c) for c in row] for row in m])
                         for m in matrices]
        self.dim = self.matrices[0].nrows if self.matrices else 0
        self.name = name

    def validate(self):
        rep = ValidationReport(f"representation {self.name or ''}".strip())
        G = self.group
        gr = G.validate()
        rep.add("group", None if gr.ok else (gr.failed()[0].name,))
        bad = next(((G.names[a],) for a, M in enumerate(self.matrices) if M.shape != (self.dim, self.dim)), None)
        rep.add("square", bad)
        if bad or not gr.ok:
            return rep
        rep.add("unit", None if self.matrices[G.identity] == Matrix.identity(self.field, self.dim)
                else (G.names[G.identity],))
        bad = None
        for a in range(G.order):
            for b in range(G.order):
                if self.matrices[G.mul(a, b)] != self.matrices[a] @ self.matrices[b]:
                    bad = (G.names[a], G.names[b])
                    break
            if bad:
                break
        rep.add("multiplicative", bad)
        return rep

    def to_json(self):
        F = self.field
        out = {"kind": "representation", "field": F.name, "group": self.group.to_json(),
               "matrices": [[[F.to_json(c) for c in row] for row in M.rows] for M in self.matrices]}
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data):
        F = parse_field(data["field"])
        gd = data["group"]
        if isinstance(gd, str):
            G = cyclic_group(int(gd[1:]))
        else:
            G = FiniteGroup(gd["elements"], gd["table"], name=gd.get("name"))
        return cls(G, F, data["matrices"], name=data.get("name"))


def trivial_rep(group, field, dim=1):
    I = Matrix.identity(field, dim)
    return Representation(group, field, [I] * group.order, name=f"trivial {dim}-dim rep of {group.name}")


def cyclic_rep(n, field, generator):
    """Representation of ``C_n`` sending the generator to ``generator``."""
    G = cyclic_group(n)
    M = generator if isinstance(generator, Matrix) else Matrix(field, [[field(c) for c in r] for r in generator])
    powers = [Matrix.identity(field, M.nrows)]
    for _ in range(1, n):
        powers.append(powers[-1] @ M)
    return Representation(G, field, powers, name=f"C{n} rep")


# --------------------------------------------------------------------------
# matrices over an Artin algebra: entries are full coefficient vectors

def _amat_mul(A, X, Y, n):
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = [0] * A.dim
            for k in range(n):
                p = A.mul(X[i][k], Y[k][j])
                for t, c in enumerate(p):
                    if c:
                        acc[t] += c
            row.append(tuple(A.field.reduce(c) for c in acc))
        out.append(tuple(row))
    return tuple(out)


def _amat_const(A, M):
    F = A.field
    return tuple(tuple(tuple([c] + [F.zero] * A.m_dim) for c in row) for row in M.rows)


def _amat_add(A, X, Y, s=1):
    F = A.field
    return tuple(tuple(tuple(F.reduce(a + s * b) for a, b in zip(x, y)) for x, y in zip(rx, ry))
                 for rx, ry in zip(X, Y))


def _amat_inverse(A, P, n):
    """Inverse of a matrix ``≡ 1 mod m`` by the geometric series."""
    one = tuple(tuple(tuple([A.field.one if i == j else A.field.zero] + [A.field.zero] * A.m_dim)
                      for j in range(n)) for i in range(n))
    Q = _amat_add(A, one, P, -1)           # 1 − P, nilpotent
    out, term = one, one
    for _ in range(A.nilpotency_order() or 1):
        term = _amat_mul(A, term, Q, n)
        out = _amat_add(A, out, term)
    return out


# --------------------------------------------------------------------------
# deformation groupoid

@dataclass
class RepDefGroupoid:
    rep: Representation
    artin: object
    objects: list        # each a tuple of A-matrices, one per group element
    summary: GroupoidSummary


def _coords(rep, A):
    """Coordinates ``(g, i, j, a)`` of ``m_A ⊗ Map(Γ, End V)``."""
    G, n, mn = rep.group, rep.dim, A.m_dim
    return [(g, i, j, a) for g in range(G.order) for i in range(n) for j in range(n) for a in range(mn)]


def _to_amats(rep, A, vec):
    F = A.field
    G, n, mn = rep.group, rep.dim, A.m_dim
    out = []
    pos = 0
    for g in range(G.order):
        M = rep.matrices[g]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                row.append(tuple([M.rows[i][j]] + [F.reduce(x) for x in vec[pos:pos + mn]]))
                pos += mn
            rows.append(tuple(row))
        out.append(tuple(rows))
    return tuple(out)


def _defect(rep, A, mats):
    """``ρ′(gh) − ρ′(g)ρ′(h)`` flattened over ``(g, h, i, j, a ∈ m-basis)``."""
    G, n = rep.group, rep.dim
    out = []
    for g in range(G.order):
        for h in range(G.order):
            D = _amat_add(A, mats[G.mul(g, h)], _amat_mul(A, mats[g], mats[h], n), -1)
            for i in range(n):
                for j in range(n):
                    if D[i][j][0]:
                        raise AssertionError("constant term of a lift must be a representation")
                    out.extend(D[i][j][1:])
    return tuple(out)


def enumerate_lifts(rep, A):
    """All multiplicative lifts of ``ρ`` to ``A``, solved one ``m``-adic layer at a time."""
    F = A.field
    if not F.is_finite:
        raise InfiniteField("lifts over Q form an infinite set")
    G, n, mn = rep.group, rep.dim, A.m_dim
    N = A.nilpotency_order()
    nvar = G.order * n * n * mn
    neq = G.order * G.order * n * n * mn

    def embed(g, i, j, b):
        v = [F.zero] * nvar
        base = ((g * n + i) * n + j) * mn
        for a in range(mn):
            v[base + a] = b[a + 1]
        return v

    def L(z):
        # z(gh) − z(g)ρ(h) − ρ(g)z(h), first order in z
        Z = _to_amats(Representation(G, F, [Matrix.zeros(F, n, n)] * G.order), A, z)
        out = []
        for g in range(G.order):
            for h in range(G.order):
                rh = _amat_const(A, rep.matrices[h])
                rg = _amat_const(A, rep.matrices[g])
                D = _amat_add(A, Z[G.mul(g, h)], _amat_mul(A, Z[g], rh, n), -1)
                D = _amat_add(A, D, _amat_mul(A, rg, Z[h], n), -1)
                for i in range(n):
                    for j in range(n):
                        out.extend(D[i][j][1:])
        return tuple(out)

    def eq_sub(k):
        vecs = []
        for b in A.m_power_basis(k):
            for gh in range(G.order * G.order):
                for i in range(n):
                    for j in range(n):
                        v = [F.zero] * neq
                        base = ((gh * n + i) * n + j) * mn
                        for a in range(mn):
                            v[base + a] = b[a + 1]
                        vecs.append(tuple(v))
        return vecs

    layers = {}
    for w, b in A.adapted_m_basis():
        layers.setdefault(w, []).append(b)
    partial = [tuple([F.zero] * nvar)]
    for k in range(1, (N or 1)):
        V = [tuple(embed(g, i, j, b)) for b in layers.get(k, [])
             for g in range(G.order) for i in range(n) for j in range(n)]
        cols = [L(v) for v in V]
        sub = eq_sub(k + 1)
        nxt = []
        for x in partial:
            E = _defect(rep, A, _to_amats(rep, A, x))
            res = _solve_modulo(F, cols, tuple(F.reduce(-e) for e in E), sub, neq)
            if res is None:
                continue
            a0, dirs = res
            for coeffs in itertools.product(range(F.characteristic), repeat=len(dirs)):
                a = list(a0)
                for cf, dv in zip(coeffs, dirs):
                    if cf:
                        a = [ai + cf * di for ai, di in zip(a, dv)]
                z = list(x)
                for ai, v in zip(a, V):
                    ai = F.reduce(ai)
                    if ai:
                        z = [zi + ai * vi for zi, vi in zip(z, v)]
                nxt.append(tuple(F.reduce(zi) for zi in z))
        partial = nxt
    out = sorted(_to_amats(rep, A, x) for x in partial)
    if any(any(_defect(rep, A, m)) for m in out):
        raise AssertionError("layered solver produced a non-multiplicative lift")
    return out


def _format_lift(rep, A, mats):
    G = rep.group
    parts = []
    for g in range(G.order):
        if g == G.identity:
            continue
        M = mats[g]
        if rep.dim == 1:
            parts.append(f"{G.names[g]}->{A.format(M[0][0])}")
        else:
            parts.append(f"{G.names[g]}->[" + "; ".join(", ".join(A.format(c) for c in row) for row in M) + "]")
    return ", ".join(parts) if parts else "1"


def rep_def_groupoid(rep, A):
    """Lifts of ``ρ`` over ``A`` up to conjugation by matrices ``≡ 1 mod m_A``."""
    F = A.field
    n = rep.dim
    objects = enumerate_lifts(rep, A)
    index = {o: k for k, o in enumerate(objects)}
    find, union = _union_find(len(objects))
    gens = []
    for _, b in A.adapted_m_basis():
        for i in range(n):
            for j in range(n):
                P = [[tuple([F.one if r == c else F.zero] + [F.zero] * A.m_dim) for c in range(n)] for r in range(n)]
                entry = list(P[i][j])
                for a in range(1, A.dim):
                    entry[a] = F.reduce(entry[a] + b[a])
                P[i][j] = tuple(entry)
                P = tuple(tuple(r) for r in P)
                gens.append((P, _amat_inverse(A, P, n)))
    for k, obj in enumerate(objects):
        for P, Pi in gens:
            conj = tuple(_amat_mul(A, _amat_mul(A, P, M, n), Pi, n) for M in obj)
            j = index.get(conj)
            if j is None:
                raise AssertionError("conjugation left the set of lifts")
            union(k, j)
    sizes = {}
    for k in range(len(objects)):
        r = find(k)
        sizes[r] = sizes.get(r, 0) + 1
    group = F.characteristic ** (A.m_dim * n * n)
    roots = sorted(sizes)
    classes = [IsoClass(objects[r], _format_lift(rep, A, objects[r]), sizes[r], group // sizes[r]) for r in roots]
    pos = {r: c for c, r in enumerate(roots)}
    class_of = {o: pos[find(k)] for k, o in enumerate(objects)}
    return RepDefGroupoid(rep, A, objects, GroupoidSummary(classes, len(objects), class_of))


# --------------------------------------------------------------------------
# governing dgla

def _cochain_name(G, n, sigma, i, j):
    args = ",".join(G.names[s] for s in sigma)
    return f"f({args})" + (f"_{i + 1}{j + 1}" if n > 1 else "")


def governing_dgla(rep, cap=3):
    """Inhomogeneous cochains ``C^k(Γ, End V)``, ``k ≤ cap``, with the cup-commutator bracket.

    ``Γ`` acts on ``End V`` by conjugation through ``ρ``.  Brackets landing
    above ``cap`` are dropped.
    """
    G, F, n = rep.group, rep.field, rep.dim
    rho = rep.matrices
    rho_inv = [mat_inverse(M) for M in rho]
    tuples = {k: list(itertools.product(range(G.order), repeat=k)) for k in range(cap + 1)}
    basis = {k: [_cochain_name(G, n, s, i, j) for s in tuples[k] for i in range(n) for j in range(n)]
             for k in range(cap + 1)}
    units = [(i, j) for i in range(n) for j in range(n)]

    def E(i, j):
        return Matrix(F, [[F.one if (r, c) == (i, j) else F.zero for c in range(n)] for r in range(n)], n)

    def ad(g, M):
        return rho[g] @ M @ rho_inv[g]

    def prod(sigma):
        p = G.identity
        for s in sigma:
            p = G.mul(p, s)
        return p

    def entries(k, sigma, M, out, sign=1):
        for r in range(n):
            for c in range(n):
                if M.rows[r][c]:
                    nm = _cochain_name(G, n, sigma, r, c)
                    out[nm] = F.reduce(out.get(nm, 0) + sign * M.rows[r][c])

    diff = []
    for k in range(cap):
        for sigma in tuples[k]:
            for (i, j) in units:
                out = {}
                Eij = E(i, j)
                for g in range(G.order):
                    entries(k + 1, (g,) + sigma, ad(g, Eij), out)
                for pos in range(k):
                    s = -1 if (pos + 1) % 2 else 1
                    for h in range(G.order):
                        split = sigma[:pos] + (h, G.mul(G.inv(h), sigma[pos])) + sigma[pos + 1:]
                        entries(k + 1, split, Eij, out, s)
                for g in range(G.order):
                    entries(k + 1, sigma + (g,), Eij, out, -1 if (k + 1) % 2 else 1)
                src = _cochain_name(G, n, sigma, i, j)
                diff.extend((src, t, c) for t, c in out.items() if c)

    def cup(p, sigma, A_, q, tau, B_):
        # (δ_σ A ⌣ δ_τ B)(σ, τ) = A · Ad(Π σ)(B)
        return sigma + tau, A_ @ ad(prod(sigma), B_)

    bracket = []
    for p in range(cap + 1):
        for q in range(p, cap + 1 - p):
            for s1 in tuples[p]:
                for (i, j) in units:
                    n1 = _cochain_name(G, n, s1, i, j)
                    for s2 in tuples[q]:
                        for (k, l) in units:
                            n2 = _cochain_name(G, n, s2, k, l)
                            if p == q and basis[q].index(n2) < basis[p].index(n1):
                                continue
                            out = {}
                            t, M = cup(p, s1, E(i, j), q, s2, E(k, l))
                            entries(p + q, t, M, out)
                            t, M = cup(q, s2, E(k, l), p, s1, E(i, j))
                            entries(p + q, t, M, out, -(-1 if (p * q) % 2 else 1))
                            bracket.extend((n1, n2, z, c) for z, c in out.items() if c)
    return make_dgla(F, basis, diff, bracket, name=f"C*({G.name or 'Γ'}, End V)", truncated_above=cap)


def lift_from_mc(rep, A, y):
    """``ρ′(g) = (1 + y(g)) ρ(g)`` for ``y ∈ m_A ⊗ C¹``."""
    F = A.field
    G, n, mn = rep.group, rep.dim, A.m_dim
    n1 = G.order * n * n
    out = []
    for g in range(G.order):
        Y = [[[F.zero] * A.dim for _ in range(n)] for _ in range(n)]
        for i in range(n):
            Y[i][i][0] = F.one
            for j in range(n):
                for a in range(mn):
                    Y[i][j][a + 1] = y[a * n1 + (g * n + i) * n + j]
        Y = tuple(tuple(tuple(c) for c in row) for row in Y)
        out.append(_amat_mul(A, Y, _amat_const(A, rep.matrices[g]), n))
    return tuple(out)


@dataclass
class GovernanceResult:
    equivalent: bool
    deligne_classes: int
    rep_classes: int
    equivalence: object

    def to_json(self):
        return {"equivalent": self.equivalent, "deligne_classes": self.deligne_classes,
                "rep_classes": self.rep_classes, "certificate": self.equivalence.to_json()}


def governance_check(rep, A, cap=3):
    """Compare ``𝒢(m_A ⊗ C*(Γ, End V))`` with lifts up to conjugation via ``y ↦ (1 + y)ρ``."""
    g = governing_dgla(rep, cap)
    h = nilpotent(tensor_with_ideal(g, A))
    sD = pi0(h)
    R = rep_def_groupoid(rep, A)
    functor = {}
    for c, cls in enumerate(sD.classes):
        functor[c] = R.summary.class_of.get(lift_from_mc(rep, A, cls.representative))
    if any(v is None for v in functor.values()):
        from .deligne import Equivalence
        eq = Equivalence(False, [], "a Maurer-Cartan element does not give a multiplicative lift")
    else:
        eq = groupoid_equivalent(sD, R.summary, functor)
    return GovernanceResult(bool(eq.equivalent), sD.count, R.summary.count, eq)
