"""Presheaves of dg Lie algebras on a finite cover: Čech complex, homotopy-sheaf test, descent groupoid.

A cover is an index set ``I`` with a dgla ``g(S)`` for each nonempty
``S ⊆ I`` of size at most ``depth`` and restriction maps for ``S ⊂ S ∪ {j}``.
Optionally a dgla ``g(U)`` of sections over the whole space is given with
maps to every ``g(i)``; otherwise sections are the equalizer of
``∏ g(i) ⇉ ∏ g(ij)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .deligne import (GroupoidSummary, IsoClass, bch, enumerate_mc, gauge_act, groupoid_equivalent,
                      inverse, nilpotent, pi0, transporter, _union_find)
from .dgla import DgLieAlgebra, make_dgla, tensor_with_ideal, validate as validate_dgla
from .fields import InfiniteField, parse_field
from .glin import (GradedMap, GradedVectorSpace, Matrix, ShapeMismatch, homology, inverse as mat_inverse,
                   kernel_basis, solve)
from .report import ValidationReport


class SignCheckFailed(ValueError):
    pass


class HypothesisNotVerified(ValueError):
    pass


def zero_dgla(field, name="0"):
    return make_dgla(field, {}, name=name)


def _identity_maps(g):
    return {d: Matrix.identity(g.field, g.dim(d)) for d in g.degrees}


def _zero_maps(src, tgt):
    F = src.field
    return {d: Matrix.zeros(F, tgt.dim(d), src.dim(d)) for d in set(src.degrees) | set(tgt.degrees)}


class CoverDiagram:
    """Finite cover as a functor on the nerve (simplices of size ``<= depth``)."""

    def __init__(self, indices, algebras, restrictions, depth=3, total=None, total_maps=None, name=None):
        self.indices = tuple(str(i) for i in indices)
        self.depth = depth
        self.name = name
        n = len(self.indices)
        self.simplices = [S for k in range(1, min(depth, n) + 1) for S in combinations(range(n), k)]
        missing = [S for S in self.simplices if S not in algebras]
        if missing:
            raise ShapeMismatch(f"no algebra for simplex {self.label(missing[0])}")
        self.algebras = {S: algebras[S] for S in self.simplices}
        fields = {g.field for g in self.algebras.values()}
        if len(fields) != 1:
            raise ShapeMismatch("all algebras of a cover must share a field")
        self.field = fields.pop()
        self.restrictions = {}
        for S in self.simplices:
            for j in range(n):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                if T not in self.algebras:
                    continue
                maps = restrictions.get((S, T))
                if maps is None:
                    raise ShapeMismatch(f"no restriction {self.label(S)} -> {self.label(T)}")
                self.restrictions[(S, T)] = self._check_maps(self.algebras[S], self.algebras[T], maps)
        self.total = total
        self.total_maps = None
        if total is not None:
            self.total_maps = {i: self._check_maps(total, self.algebras[(i,)], total_maps[i]) for i in range(n)}

    def _check_maps(self, src, tgt, maps):
        F = self.field
        out = {}
        for d in set(src.degrees) | set(tgt.degrees):
            M = maps.get(d)
            if M is None:
                M = Matrix.zeros(F, tgt.dim(d), src.dim(d))
            elif not isinstance(M, Matrix):
                M = Matrix(F, M, src.dim(d))
            if M.shape != (tgt.dim(d), src.dim(d)):
                raise ShapeMismatch(f"restriction in degree {d} has shape {M.shape}, "
                                    f"expected {(tgt.dim(d), src.dim(d))}")
            out[d] = M
        return out

    def label(self, S):
        return "".join(self.indices[i] for i in S) if all(len(x) == 1 for x in self.indices) \
            else ",".join(self.indices[i] for i in S)

    @property
    def n(self):
        return len(self.indices)

    def restriction(self, S, T):
        """Composite restriction ``g(S) -> g(T)`` (adds missing indices in increasing order)."""
        g = self.algebras[S]
        maps = _identity_maps(g)
        cur = S
        for j in T:
            if j in cur:
                continue
            nxt = tuple(sorted(cur + (j,)))
            step = self.restrictions[(cur, nxt)]
            maps = {d: step[d] @ maps[d] if d in maps else step[d] for d in step}
            cur = nxt
        return maps

    def restrict(self, S, T, deg, v):
        M = self.restriction(S, T).get(deg)
        return M.apply(v) if M is not None else ()

    # json -------------------------------------------------------------------

    def to_json(self):
        F = self.field

        def mats(maps):
            return {str(d): [[F.to_json(c) for c in row] for row in M.rows] for d, M in sorted(maps.items()) if M.nrows and M.ncols}

        out = {
            "kind": "cover",
            "field": F.name,
            "indices": list(self.indices),
            "depth": self.depth,
            "algebras": {self.label(S): self.algebras[S].to_json() for S in self.simplices},
            "restrictions": [{"from": self.label(S), "to": self.label(T), "matrices": mats(M)}
                             for (S, T), M in sorted(self.restrictions.items())],
        }
        if self.name:
            out["name"] = self.name
        if self.total is not None:
            out["total"] = {"algebra": self.total.to_json(),
                            "restrictions": {self.indices[i]: mats(M) for i, M in sorted(self.total_maps.items())}}
        return out

    @classmethod
    def from_json(cls, data):
        F = parse_field(data["field"])
        indices = [str(i) for i in data["indices"]]
        depth = data.get("depth", 3)
        pos = {i: k for k, i in enumerate(indices)}

        def simplex(label):
            parts = label.split(",") if "," in label or any(len(i) > 1 for i in indices) else list(label)
            return tuple(sorted(pos[p] for p in parts))

        def load(d):
            if isinstance(d, str):
                from .library import builtin_dgla
                return builtin_dgla(d, F)
            return DgLieAlgebra.from_json(d).change_field(F)

        algebras = {simplex(k): load(v) for k, v in data["algebras"].items()}
        restrictions = {}
        for r in data.get("restrictions", []):
            S, T = simplex(r["from"]), simplex(r["to"])
            mats = r.get("matrices", "identity")
            if mats == "identity":
                restrictions[(S, T)] = _identity_maps(algebras[S])
            else:
                restrictions[(S, T)] = {int(d): Matrix(F, [[F(c) for c in row] for row in rows], algebras[S].dim(int(d)))
                                        for d, rows in mats.items()}
        total = total_maps = None
        if "total" in data:
            total = load(data["total"]["algebra"])
            total_maps = {}
            for i, mats in data["total"]["restrictions"].items():
                if mats == "identity":
                    total_maps[pos[i]] = _identity_maps(total)
                else:
                    total_maps[pos[i]] = {int(d): Matrix(F, [[F(c) for c in row] for row in rows], total.dim(int(d)))
                                          for d, rows in mats.items()}
        return cls(indices, algebras, restrictions, depth=depth, total=total, total_maps=total_maps,
                   name=data.get("name"))


def constant_cover(g, n, depth=3, name=None):
    """Every ``g(S) = g`` with identity restrictions."""
    idx = [str(i + 1) for i in range(n)]
    sims = [S for k in range(1, min(depth, n) + 1) for S in combinations(range(n), k)]
    restr = {}
    for S in sims:
        for j in range(n):
            T = tuple(sorted(S + (j,)))
            if j not in S and T in sims:
                restr[(S, T)] = _identity_maps(g)
    return CoverDiagram(idx, {S: g for S in sims}, restr, depth=depth,
                        name=name or f"constant {n}-cover of {g.name or 'g'}")


def split_cover(g, name=None):
    """Two opens with ``g(1) = g(2) = g(U) = g`` and ``g(12) = 0``: not a homotopy sheaf when ``H(g) ≠ 0``."""
    z = zero_dgla(g.field)
    algebras = {(0,): g, (1,): g, (0, 1): z}
    restr = {((0,), (0, 1)): _zero_maps(g, z), ((1,), (0, 1)): _zero_maps(g, z)}
    return CoverDiagram(["1", "2"], algebras, restr, depth=2, total=g,
                        total_maps={0: _identity_maps(g), 1: _identity_maps(g)},
                        name=name or f"split cover of {g.name or 'g'}")


# --------------------------------------------------------------------------
# validation

def _is_dgla_map(src, tgt, maps):
    """Witness of failure to commute with ``d`` or the bracket, else ``None``."""
    for d in src.degrees:
        M = maps.get(d)
        for a in range(src.dim(d)):
            e = src.basis_vector(d, a)
            lhs = maps[d + 1].apply(src.differential(d, e)) if d + 1 in maps else ()
            rhs = tgt.differential(d, M.apply(e)) if tgt.dim(d) else tgt.zero(d + 1)
            if tuple(lhs) != tuple(rhs) and (any(lhs) or any(rhs)):
                return ("d", src.names(d)[a])
    for i in src.degrees:
        for j in src.degrees:
            if i + j not in src.degrees and i + j not in tgt.degrees:
                continue
            for a in range(src.dim(i)):
                for b in range(src.dim(j)):
                    br = src.bracket(i, src.basis_vector(i, a), j, src.basis_vector(j, b))
                    lhs = maps[i + j].apply(br) if i + j in maps and br else tgt.zero(i + j)
                    rhs = tgt.bracket(i, maps[i].apply(src.basis_vector(i, a)), j,
                                      maps[j].apply(src.basis_vector(j, b))) if tgt.dim(i + j) else ()
                    if any(lhs) or any(rhs):
                        if tuple(lhs) != tuple(rhs):
                            return ("bracket", src.names(i)[a], src.names(j)[b])
    return None


def validate(cover):
    rep = ValidationReport(f"cover {cover.name or ''}".strip())
    bad = None
    for S in cover.simplices:
        r = validate_dgla(cover.algebras[S])
        if not r.ok:
            bad = (cover.label(S), r.failed()[0].name)
            break
    rep.add("local_algebras", bad)
    bad = None
    for (S, T), maps in sorted(cover.restrictions.items()):
        w = _is_dgla_map(cover.algebras[S], cover.algebras[T], maps)
        if w:
            bad = (cover.label(S), cover.label(T)) + w
            break
    rep.add("restrictions_are_dgla_maps", bad)
    bad = None
    for S in cover.simplices:
        for a, b in combinations([j for j in range(cover.n) if j not in S], 2):
            U = tuple(sorted(S + (a, b)))
            if U not in cover.algebras:
                continue
            Sa, Sb = tuple(sorted(S + (a,))), tuple(sorted(S + (b,)))
            for d in cover.algebras[S].degrees:
                p1 = cover.restrictions[(Sa, U)][d] @ cover.restrictions[(S, Sa)][d]
                p2 = cover.restrictions[(Sb, U)][d] @ cover.restrictions[(S, Sb)][d]
                if p1 != p2:
                    bad = (cover.label(S), cover.label(U), d)
                    break
            if bad:
                break
        if bad:
            break
    rep.add("functorial", bad)
    if cover.total is not None:
        bad = None
        for i, maps in cover.total_maps.items():
            w = _is_dgla_map(cover.total, cover.algebras[(i,)], maps)
            if w:
                bad = ("U", cover.indices[i]) + w
        for i, j in combinations(range(cover.n), 2):
            if (i, j) not in cover.algebras:
                continue
            for d in cover.total.degrees:
                p1 = cover.restrictions[((i,), (i, j))][d] @ cover.total_maps[i][d]
                p2 = cover.restrictions[((j,), (i, j))][d] @ cover.total_maps[j][d]
                if p1 != p2:
                    bad = ("U", cover.label((i, j)), d)
        rep.add("total_sections_compatible", bad)
    return rep


# --------------------------------------------------------------------------
# global sections

def global_sections(cover):
    """``Γ(U; g)``: the given total algebra, else the equalizer of ``∏ g(i) ⇉ ∏ g(ij)``.

    The result carries ``to_local[i][deg]``: the matrix ``Γ^deg -> g(i)^deg``.
    """
    if cover.total is not None:
        out = cover.total
        out.to_local = cover.total_maps
        return out
    F = cover.field
    n = cover.n
    locals_ = [cover.algebras[(i,)] for i in range(n)]
    degrees = sorted(set(d for g in locals_ for d in g.degrees))
    offsets = {}
    basis = {}
    vectors = {}
    for d in degrees:
        dims = [g.dim(d) for g in locals_]
        offs = [sum(dims[:i]) for i in range(n)]
        total = sum(dims)
        offsets[d] = offs
        rows = []
        for i, j in combinations(range(n), 2):
            if (i, j) not in cover.algebras:
                continue
            ri = cover.restrictions[((i,), (i, j))].get(d)
            rj = cover.restrictions[((j,), (i, j))].get(d)
            if ri is None or not ri.nrows:
                continue
            for r in range(ri.nrows):
                row = [F.zero] * total
                for c in range(dims[i]):
                    row[offs[i] + c] = ri.rows[r][c]
                for c in range(dims[j]):
                    row[offs[j] + c] = F.reduce(row[offs[j] + c] - rj.rows[r][c])
                rows.append(row)
        if rows:
            K = kernel_basis(Matrix(F, rows, total))
        else:
            K = [tuple(F.one if k == m else F.zero for k in range(total)) for m in range(total)]
        vectors[d] = K
        names = []
        used = set()
        for k, v in enumerate(K):
            nm = None
            first = next((i for i in range(n) if any(v[offs[i]:offs[i] + dims[i]])), None)
            if first is not None:
                comp = v[offs[first]:offs[first] + dims[first]]
                nz = [c for c, x in enumerate(comp) if x]
                if len(nz) == 1 and comp[nz[0]] == F.one:
                    cand = locals_[first].names(d)[nz[0]]
                    if all(cover.algebras[(j,)] is locals_[first] for j in range(n)):
                        nm = cand
                    else:
                        nm = f"{cover.indices[first]}:{cand}"
            if nm is None or nm in used:
                nm = f"s{d}_{k + 1}"
            used.add(nm)
            names.append(nm)
        basis[d] = names

    def split(d, v):
        offs = offsets[d]
        return [tuple(v[offs[i]:offs[i] + locals_[i].dim(d)]) for i in range(n)]

    def combine(d, parts):
        out = []
        for p in parts:
            out.extend(p)
        return tuple(out)

    def coords(d, v):
        K = vectors.get(d, [])
        if not K:
            if any(v):
                raise AssertionError("equalizer is not closed under the structure maps")
            return ()
        x = solve(Matrix.from_columns(F, K, len(v)), v)
        if x is None:
            raise AssertionError("equalizer is not closed under the structure maps")
        return x

    diff, br = [], []
    for d in degrees:
        if d + 1 not in vectors:
            continue
        for k, v in enumerate(vectors[d]):
            parts = split(d, v)
            img = combine(d + 1, [locals_[i].differential(d, parts[i]) for i in range(n)])
            for c, x in enumerate(coords(d + 1, img)):
                if x:
                    diff.append((basis[d][k], basis[d + 1][c], x))
    for d1 in degrees:
        for d2 in degrees:
            if d2 < d1 or d1 + d2 not in vectors:
                continue
            for k1, v1 in enumerate(vectors[d1]):
                for k2, v2 in enumerate(vectors[d2]):
                    if d1 == d2 and k2 < k1:
                        continue
                    p1, p2 = split(d1, v1), split(d2, v2)
                    img = combine(d1 + d2, [locals_[i].bracket(d1, p1[i], d2, p2[i]) for i in range(n)])
                    for c, x in enumerate(coords(d1 + d2, img)):
                        if x:
                            br.append((basis[d1][k1], basis[d2][k2], basis[d1 + d2][c], x))
    out = make_dgla(F, basis, diff, br, name=f"Γ({cover.name or 'cover'})")
    to_local = {}
    for i in range(n):
        maps = {}
        for d in degrees:
            offs = offsets[d]
            cols = [tuple(v[offs[i]:offs[i] + locals_[i].dim(d)]) for v in vectors[d]]
            maps[d] = Matrix.from_columns(F, cols, locals_[i].dim(d)) if cols else Matrix.zeros(F, locals_[i].dim(d), 0)
        to_local[i] = maps
    out.to_local = to_local
    return out


# --------------------------------------------------------------------------
# Čech complex

@dataclass
class CechComplex:
    space: GradedVectorSpace
    d: GradedMap
    blocks: dict      # total degree -> list of (simplex, internal degree, offset, dim)

    def cohomology_dims(self):
        return {k: homology(self.d, self.d, k).dim for k in self.space.degrees}


def cech_complex(cover):
    """Total complex of ``C^n = ⊕_{|S|=n+1} g(S)`` with ``D = δ_Čech + (−1)^n d``."""
    F = cover.field
    blocks = {}
    basis = {}
    for S in cover.simplices:
        n = len(S) - 1
        g = cover.algebras[S]
        for d in g.degrees:
            k = n + d
            lst = blocks.setdefault(k, [])
            off = sum(b[3] for b in lst)
            lst.append((S, d, off, g.dim(d)))
            basis.setdefault(k, []).extend(f"{cover.label(S)}:{nm}" for nm in g.names(d))
    degrees = sorted(basis)
    mats = {}
    for k in degrees:
        src = blocks[k]
        tgt = blocks.get(k + 1, [])
        nsrc = sum(b[3] for b in src)
        ntgt = sum(b[3] for b in tgt)
        rows = [[F.zero] * nsrc for _ in range(ntgt)]
        where = {(S, d): (off, dim) for S, d, off, dim in tgt}
        for S, d, off, dim in src:
            n = len(S) - 1
            g = cover.algebras[S]
            sign = -1 if n % 2 else 1
            # internal differential
            if (S, d + 1) in where:
                toff, _ = where[(S, d + 1)]
                M = g.d.at(d)
                for r in range(M.nrows):
                    for c in range(M.ncols):
                        if M.rows[r][c]:
                            rows[toff + r][off + c] = F.reduce(rows[toff + r][off + c] + sign * M.rows[r][c])
            # Čech differential into T = S ∪ {j}
            for j in range(cover.n):
                if j in S:
                    continue
                T = tuple(sorted(S + (j,)))
                if (T, d) not in where:
                    continue
                pos = T.index(j)
                csign = -1 if pos % 2 else 1
                toff, _ = where[(T, d)]
                R = cover.restrictions[(S, T)][d]
                for r in range(R.nrows):
                    for c in range(R.ncols):
                        if R.rows[r][c]:
                            rows[toff + r][off + c] = F.reduce(rows[toff + r][off + c] + csign * R.rows[r][c])
        mats[k] = Matrix(F, rows, nsrc) if ntgt else Matrix.zeros(F, 0, nsrc)
    space = GradedVectorSpace(F, {k: tuple(basis[k]) for k in degrees})
    D = GradedMap(space, space, 1, mats)
    for k in degrees:
        if not (D.at(k + 1) @ D.at(k)).is_zero():
            raise SignCheckFailed(f"D∘D ≠ 0 from total degree {k}: restrictions do not commute")
    return CechComplex(space, D, blocks)


def homotopy_sheaf_check(cover):
    """Per total degree: does ``Γ(U; g) -> Čech(g)`` induce an isomorphism on cohomology?"""
    G = global_sections(cover)
    C = cech_complex(cover)
    F = cover.field
    degrees = sorted(set(G.degrees) | set(C.space.degrees))
    out = {}
    for k in degrees:
        HG = homology(G.d, G.d, k) if k in G.degrees else None
        HC = homology(C.d, C.d, k) if k in C.space.degrees else None
        dg = HG.dim if HG else 0
        dc = HC.dim if HC else 0
        if dg != dc:
            out[k] = False
            continue
        if dg == 0:
            out[k] = True
            continue
        # inclusion of sections into Čech level 0
        nC = C.space.dim(k)
        cols = []
        for a in range(G.dim(k)):
            v = [F.zero] * nC
            for S, d, off, dim in C.blocks[k]:
                if len(S) == 1 and d == k:
                    img = G.to_local[S[0]][k].apply(G.basis_vector(k, a))
                    for c, x in enumerate(img):
                        v[off + c] = x
            cols.append(tuple(v))
        iota = Matrix.from_columns(F, cols, nC)
        induced = HC.projection @ iota @ HG.section
        out[k] = induced.rank() == dg
    return out


# --------------------------------------------------------------------------
# descent groupoid

def _tensor_maps(A, maps, n_src, n_tgt, deg):
    """``1 ⊗ r`` on ``m_A ⊗ g`` in one degree, as a function on vectors."""
    M = maps.get(deg)
    mdim = A.m_dim

    def apply(v):
        out = []
        for p in range(mdim):
            block = v[p * n_src:(p + 1) * n_src]
            out.extend(M.apply(block) if M is not None and M.nrows else ())
        return tuple(out)
    return apply


@dataclass
class DescentGroupoid:
    cover: object
    artin: object
    locals: dict            # simplex -> NilpotentDgla m_A ⊗ g(S)
    objects: list           # ((y_i), (g_ij)) tuples, sorted
    summary: GroupoidSummary
    pairs: list = dc_field(default_factory=list)

    def to_json(self):
        out = self.summary.to_json()
        out["objects"] = len(self.objects)
        return out


def _restrictor(cover, A, locals_, S, T, deg):
    g = cover.algebras[S]
    h = cover.algebras[T]
    return _tensor_maps(A, cover.restriction(S, T), g.dim(deg), h.dim(deg), deg)


def descent_groupoid(cover, A):
    """All descent data for ``m_A ⊗ g(−)`` and their isomorphism classes (finite field only)."""
    F = cover.field
    if not F.is_finite:
        raise InfiniteField("descent data can only be enumerated over a finite field")
    n = cover.n
    locals_ = {S: nilpotent(tensor_with_ideal(cover.algebras[S], A)) for S in cover.simplices}
    pairs = [P for P in cover.simplices if len(P) == 2]
    triples = [P for P in cover.simplices if len(P) == 3]
    r1 = {(i, P): _restrictor(cover, A, locals_, (i,), P, 1) for P in pairs for i in P}
    r0 = {(P, T): _restrictor(cover, A, locals_, P, T, 0) for T in triples for P in combinations(T, 2)}
    mc = {i: enumerate_mc(locals_[(i,)]) for i in range(n)}
    pair_pi0 = {P: pi0(locals_[P]) for P in pairs}

    objects = []

    def extend(i, ys):
        if i == n:
            choose_transitions(ys)
            return
        for y in mc[i]:
            ok = True
            for P in pairs:
                if P[1] == i:
                    a = r1[(P[0], P)](ys[P[0]])
                    b = r1[(i, P)](y)
                    cls = pair_pi0[P].class_of
                    if cls[a] != cls[b]:
                        ok = False
                        break
            if ok:
                extend(i + 1, ys + [y])

    def choose_transitions(ys):
        options = []
        for P in pairs:
            i, j = P
            tr = transporter(locals_[P], r1[(j, P)](ys[j]), r1[(i, P)](ys[i]))
            options.append(tr.elements())
        idx = {P: k for k, P in enumerate(pairs)}

        def rec(k, chosen):
            if k == len(pairs):
                for T in triples:
                    i, j, l = T
                    gij = r0[((i, j), T)](chosen[idx[(i, j)]])
                    gjl = r0[((j, l), T)](chosen[idx[(j, l)]])
                    gil = r0[((i, l), T)](chosen[idx[(i, l)]])
                    if bch(locals_[T], gij, gjl) != gil:
                        return
                objects.append((tuple(ys), tuple(chosen)))
                return
            for gval in options[k]:
                rec(k + 1, chosen + [gval])

        rec(0, [])

    extend(0, [])
    objects.sort()
    index = {o: k for k, o in enumerate(objects)}
    find, union = _union_find(len(objects))
    r0_pair = {(i, P): _restrictor(cover, A, locals_, (i,), P, 0) for P in pairs for i in P}
    group_order = 1
    for i in range(n):
        h = locals_[(i,)]
        group_order *= F.characteristic ** h.dim(0)
        for b in range(h.dim(0)):
            e = h.basis_vector(0, b)
            for k, (ys, gs) in enumerate(objects):
                ys2 = list(ys)
                ys2[i] = gauge_act(h, e, ys[i], check=False)
                gs2 = list(gs)
                for m, P in enumerate(pairs):
                    if i not in P:
                        continue
                    hp = locals_[P]
                    er = r0_pair[(i, P)](e)
                    if P[0] == i:
                        gs2[m] = bch(hp, er, gs[m])
                    else:
                        gs2[m] = bch(hp, gs[m], inverse(hp, er))
                j = index.get((tuple(ys2), tuple(gs2)))
                if j is None:
                    raise AssertionError("gauge action left the set of descent data")
                union(k, j)
    sizes = {}
    for k in range(len(objects)):
        r = find(k)
        sizes[r] = sizes.get(r, 0) + 1
    roots = sorted(sizes)
    classes = [IsoClass(objects[r], _object_label(cover, locals_, objects[r]), sizes[r], group_order // sizes[r])
               for r in roots]
    pos = {r: c for c, r in enumerate(roots)}
    class_of = {o: pos[find(k)] for k, o in enumerate(objects)}
    summary = GroupoidSummary(classes, len(objects), class_of)
    return DescentGroupoid(cover, A, locals_, objects, summary, pairs)


def _object_label(cover, locals_, obj):
    ys, gs = obj
    parts = [f"{cover.indices[i]}: {locals_[(i,)].format(1, y)}" for i, y in enumerate(ys)]
    return "; ".join(parts)


@dataclass
class StackCheck:
    equivalent: bool
    hypothesis: dict
    global_classes: int
    descent_classes: int
    equivalence: object
    faithful: bool

    def to_json(self):
        return {"equivalent": self.equivalent,
                "hypothesis": {str(k): v for k, v in sorted(self.hypothesis.items())},
                "global_classes": self.global_classes, "descent_classes": self.descent_classes,
                "faithful_on_gauge": self.faithful, "certificate": self.equivalence.to_json()}


def stack_check(cover, A, bypass_hypothesis=False):
    """Compare ``𝒢(m_A ⊗ Γ(U; g))`` with the descent groupoid through restriction.

    Refuses (``HypothesisNotVerified``) unless the cover is a homotopy sheaf,
    except when ``bypass_hypothesis`` is set.
    """
    hyp = homotopy_sheaf_check(cover)
    if not all(hyp.values()) and not bypass_hypothesis:
        raise HypothesisNotVerified(
            "the cover is not a homotopy sheaf in degrees " + ", ".join(str(k) for k, v in sorted(hyp.items()) if not v))
    G = global_sections(cover)
    hG = nilpotent(tensor_with_ideal(G, A))
    sG = pi0(hG)
    D = descent_groupoid(cover, A)
    n = cover.n
    to_local1 = {i: _tensor_maps(A, G.to_local[i], G.dim(1), cover.algebras[(i,)].dim(1), 1) for i in range(n)}
    to_local0 = {i: _tensor_maps(A, G.to_local[i], G.dim(0), cover.algebras[(i,)].dim(0), 0) for i in range(n)}
    functor = {}
    for c, cls in enumerate(sG.classes):
        y = cls.representative
        ys = tuple(to_local1[i](y) for i in range(n))
        gs = tuple(D.locals[P].zero(0) for P in D.pairs)
        functor[c] = D.summary.class_of.get((ys, gs))
    if any(v is None for v in functor.values()):
        eq = groupoid_equivalent(sG, D.summary, None)
        eq.equivalent = False
        eq.reason = "restriction of a global MC element is not a descent datum"
        faithful = False
    else:
        eq = groupoid_equivalent(sG, D.summary, functor)
        faithful = _injective_on_gauge(hG, to_local0, n)
        if not faithful:
            eq.equivalent = False
            eq.reason = "restriction is not injective on gauge elements"
    return StackCheck(bool(eq.equivalent), hyp, sG.count, D.summary.count, eq, faithful)


def _injective_on_gauge(hG, to_local0, n):
    F = hG.field
    cols = []
    for a in range(hG.dim(0)):
        e = hG.basis_vector(0, a)
        v = []
        for i in range(n):
            v.extend(to_local0[i](e))
        cols.append(tuple(v))
    if not cols:
        return True
    M = Matrix.from_columns(F, cols, len(cols[0]))
    return M.rank() == hG.dim(0)
