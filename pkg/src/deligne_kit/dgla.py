"""Differential graded Lie algebras given by structure constants.

Homogeneous elements are coefficient tuples in a single degree; every
operation says which degree its arguments live in.  Degrees are ``0..D``.
"""
from __future__ import annotations

from itertools import combinations_with_replacement

from .fields import FieldMismatch, parse_field
from .glin import (GradedMap, GradedVectorSpace, Matrix, ShapeMismatch, homology, span_basis)
from .report import ValidationReport


def _sign(k):
    return -1 if k % 2 else 1


class DgLieAlgebra:
    """Finite-dimensional dgla over an exact field.

    ``bracket`` maps ``((i, a), (j, b))`` (degree, index) to ``{c: coeff}`` with
    ``c`` indexing degree ``i + j``; it must already contain both orders of
    every pair (use :func:`make_dgla` to build from one-sided entries).
    ``truncated_above`` marks algebras whose brackets into degrees above the
    cap were dropped; validation then skips identities that would see them.
    """

    def __init__(self, field, basis, differential, bracket, name=None, truncated_above=None):
        self.field = field
        self.space = GradedVectorSpace(field, basis)
        for deg in self.space.degrees:
            if deg < 0:
                raise ShapeMismatch("dg Lie algebras here live in degrees >= 0")
        self.d = GradedMap(self.space, self.space, 1, dict(differential))
        self.name = name
        self.truncated_above = truncated_above
        red = field.reduce
        table = {}
        for (x, y), out in bracket.items():
            (i, a), (j, b) = x, y
            if not (0 <= a < self.dim(i) and 0 <= b < self.dim(j)):
                raise ShapeMismatch(f"bracket entry {x},{y} out of range")
            clean = {}
            for c, k in out.items():
                k = red(k)
                if not k:
                    continue
                if not 0 <= c < self.dim(i + j):
                    raise ShapeMismatch(f"bracket [{x},{y}] lands outside degree {i + j}")
                clean[c] = k
            if clean:
                table[(x, y)] = clean
        self._table = table
        self._br = {}
        for ((i, a), (j, b)), out in sorted(table.items()):
            rows = self._br.setdefault((i, j), {})
            rows.setdefault(a, []).extend((b, c, k) for c, k in sorted(out.items()))
        self._dsparse = {}
        for deg, M in self.d.matrices.items():
            cols = []
            for j in range(M.ncols):
                cols.append(tuple((r, M.rows[r][j]) for r in range(M.nrows) if M.rows[r][j]))
            self._dsparse[deg] = cols

    # shape -----------------------------------------------------------------

    @property
    def degrees(self):
        return self.space.degrees

    @property
    def top(self):
        return max(self.degrees) if self.degrees else 0

    def dim(self, deg):
        return self.space.dim(deg)

    def names(self, deg):
        return self.space.names(deg)

    def zero(self, deg):
        return (self.field.zero,) * self.dim(deg)

    def basis_vector(self, deg, a):
        v = [self.field.zero] * self.dim(deg)
        v[a] = self.field.one
        return tuple(v)

    def vector(self, deg, coeffs):
        if isinstance(coeffs, dict):
            idx = {nm: i for i, nm in enumerate(self.names(deg))}
            v = [self.field.zero] * self.dim(deg)
            for nm, c in coeffs.items():
                v[idx[nm]] = self.field(c)
            return tuple(v)
        v = tuple(self.field(c) for c in coeffs)
        if len(v) != self.dim(deg):
            raise ShapeMismatch(f"vector of length {len(v)} in degree {deg} of dimension {self.dim(deg)}")
        return v

    def locate(self, name):
        for deg in self.degrees:
            if name in self.names(deg):
                return deg, self.names(deg).index(name)
        raise KeyError(name)

    def format(self, deg, v):
        F = self.field
        terms = []
        for nm, c in zip(self.names(deg), v):
            if c:
                cs = F.format(c)
                terms.append(nm if cs == "1" else f"{cs}*{nm}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        dims = ", ".join(f"{d}:{self.dim(d)}" for d in self.degrees)
        return f"DgLieAlgebra({self.name or ''} over {self.field.name}; dims {{{dims}}})"

    # operations ------------------------------------------------------------

    def differential(self, deg, u):
        out = [0] * self.dim(deg + 1)
        cols = self._dsparse.get(deg, ())
        for a, ua in enumerate(u):
            if ua:
                for r, k in cols[a]:
                    out[r] += k * ua
        red = self.field.reduce
        return tuple(red(x) for x in out)

    def bracket(self, i, u, j, v):
        n = self.dim(i + j)
        if not n:
            return ()
        rows = self._br.get((i, j))
        if not rows:
            return (self.field.zero,) * n
        out = [0] * n
        for a, ua in enumerate(u):
            if not ua:
                continue
            for b, c, k in rows.get(a, ()):
                vb = v[b]
                if vb:
                    out[c] += k * ua * vb
        red = self.field.reduce
        return tuple(red(x) for x in out)

    def basis_bracket(self, i, a, j, b):
        return self._table.get(((i, a), (j, b)), {})

    def add(self, u, v, scale=1):
        red = self.field.reduce
        return tuple(red(x + scale * y) for x, y in zip(u, v))

    def scale(self, c, u):
        red = self.field.reduce
        return tuple(red(c * x) for x in u)

    def ad_power(self, x, y, ydeg, n):
        """``ad_x^n (y)`` for ``x`` of degree 0."""
        for _ in range(n):
            y = self.bracket(0, x, ydeg, y)
        return y

    # derived algebras ------------------------------------------------------

    def bracket_entries(self):
        """Canonically oriented entries ``(x, y, dst, coeff)`` with ``(deg x, idx x) <= (deg y, idx y)``."""
        out = []
        for ((i, a), (j, b)), res in sorted(self._table.items()):
            if (i, a) > (j, b):
                continue
            for c, k in sorted(res.items()):
                out.append((self.names(i)[a], self.names(j)[b], self.names(i + j)[c], k))
        return out

    def differential_entries(self):
        out = []
        for deg in self.degrees:
            M = self.d.at(deg)
            for col in range(M.ncols):
                for row in range(M.nrows):
                    if M.rows[row][col]:
                        out.append((self.names(deg)[col], self.names(deg + 1)[row], M.rows[row][col]))
        return out

    def change_field(self, field):
        field = parse_field(field)
        if field == self.field:
            return self
        basis = {d: self.names(d) for d in self.degrees}
        diff = [(s, t, field(c)) for s, t, c in self.differential_entries()]
        br = [(x, y, z, field(c)) for x, y, z, c in self.bracket_entries()]
        return make_dgla(field, basis, diff, br, name=self.name, truncated_above=self.truncated_above)

    def truncate(self, max_degree):
        """Drop degrees above ``max_degree`` (brackets landing there become zero)."""
        basis = {d: self.names(d) for d in self.degrees if d <= max_degree}
        keep = set(n for d in basis for n in basis[d])
        diff = [e for e in self.differential_entries() if e[0] in keep and e[1] in keep]
        br = [e for e in self.bracket_entries() if e[0] in keep and e[1] in keep and e[2] in keep]
        cap = max_degree if self.top > max_degree else self.truncated_above
        return make_dgla(self.field, basis, diff, br, name=self.name, truncated_above=cap)

    def with_bracket_entry(self, x, y, dst, coeff):
        """Copy with the single ordered entry ``[x, y]`` overwritten (no antisymmetric partner).

        Only used to build deliberately broken algebras for validation tests.
        """
        (i, a), (j, b), (k, c) = self.locate(x), self.locate(y), self.locate(dst)
        if k != i + j:
            raise ShapeMismatch("bracket must land in degree |x| + |y|")
        table = {key: dict(v) for key, v in self._table.items()}
        table[((i, a), (j, b))] = {c: self.field(coeff)}
        return DgLieAlgebra(self.field, {d: self.names(d) for d in self.degrees},
                            self.d.matrices, table, name=self.name, truncated_above=self.truncated_above)

    def with_differential_entry(self, src, dst, coeff):
        (i, a), (k, c) = self.locate(src), self.locate(dst)
        if k != i + 1:
            raise ShapeMismatch("differential raises degree by one")
        mats = dict(self.d.matrices)
        rows = [list(r) for r in mats[i].rows]
        rows[c][a] = self.field(coeff)
        mats[i] = Matrix(self.field, rows, self.dim(i))
        return DgLieAlgebra(self.field, {d: self.names(d) for d in self.degrees}, mats,
                            self._table, name=self.name, truncated_above=self.truncated_above)

    # io --------------------------------------------------------------------

    def to_json(self):
        F = self.field
        out = {
            "kind": "dgla",
            "field": F.name,
            "basis": {str(d): list(self.names(d)) for d in self.degrees},
            "differential": [[s, t, F.to_json(c)] for s, t, c in self.differential_entries()],
            "bracket": [[x, y, z, F.to_json(c)] for x, y, z, c in self.bracket_entries()],
        }
        if self.name:
            out["name"] = self.name
        if self.truncated_above is not None:
            out["truncated_above"] = self.truncated_above
        return out

    @classmethod
    def from_json(cls, data):
        F = parse_field(data["field"])
        basis = {int(k): v for k, v in data["basis"].items()}
        return make_dgla(F, basis, data.get("differential", []), data.get("bracket", []),
                         name=data.get("name"), truncated_above=data.get("truncated_above"))


def make_dgla(field, basis, differential=(), bracket=(), name=None, truncated_above=None):
    """Build a dgla from named entries.

    ``differential``: ``(src, dst, coeff)``; ``bracket``: ``(x, y, dst, coeff)``.
    Each unordered pair may be given in one orientation only; the other is
    filled in by graded antisymmetry.  ``[x, x] != 0`` with ``|x|`` even is
    rejected.
    """
    field = parse_field(field)
    basis = {int(k): tuple(v) for k, v in basis.items()}
    where = {}
    for deg, names in basis.items():
        if deg < 0:
            raise ShapeMismatch("negative degrees are not allowed")
        for i, nm in enumerate(names):
            if nm in where:
                raise ShapeMismatch(f"basis name {nm!r} used twice")
            where[nm] = (deg, i)

    def loc(nm):
        if nm not in where:
            raise ShapeMismatch(f"unknown basis element {nm!r}")
        return where[nm]

    dims = {deg: len(v) for deg, v in basis.items()}
    dmats = {deg: [[field.zero] * dims[deg] for _ in range(dims.get(deg + 1, 0))] for deg in basis}
    for src, dst, c in differential:
        (i, a), (j, b) = loc(src), loc(dst)
        if j != i + 1:
            raise ShapeMismatch(f"d({src}) = {dst} does not raise degree by one")
        dmats[i][b][a] = field.reduce(dmats[i][b][a] + field(c))
    differential = {deg: Matrix(field, rows, dims[deg]) for deg, rows in dmats.items()}

    table = {}
    oriented = {}
    for x, y, dst, c in bracket:
        X, Y, Z = loc(x), loc(y), loc(dst)
        if Z[0] != X[0] + Y[0]:
            raise ShapeMismatch(f"[{x},{y}] = {dst} has the wrong degree")
        c = field(c)
        key = frozenset((X, Y))
        if oriented.setdefault(key, (X, Y)) != (X, Y):
            raise ShapeMismatch(f"bracket of {x},{y} given in both orders")
        if X == Y and X[0] % 2 == 0 and c:
            raise ShapeMismatch(f"[{x},{x}] must vanish for even |{x}|")
        pairs = [((X, Y), c)] if X == Y else [((X, Y), c), ((Y, X), -_sign(X[0] * Y[0]) * c)]
        for (P, Q), coeff in pairs:
            out = table.setdefault((P, Q), {})
            out[Z[1]] = field.reduce(out.get(Z[1], 0) + coeff)
    return DgLieAlgebra(field, basis, differential, table, name=name, truncated_above=truncated_above)


# --------------------------------------------------------------------------
# validation

def _sparse_bracket(g, i, x, j, y):
    """Bracket of sparse homogeneous elements ``{index: coeff}``."""
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for c, k in g.basis_bracket(i, a, j, b).items():
                out[c] = out.get(c, 0) + ca * cb * k
    red = g.field.reduce
    return {c: red(v) for c, v in out.items() if red(v)}


def _sparse_d(g, i, x):
    M = g.d.at(i)
    out = {}
    for a, ca in x.items():
        for r in range(M.nrows):
            if M.rows[r][a]:
                out[r] = out.get(r, 0) + ca * M.rows[r][a]
    red = g.field.reduce
    return {c: red(v) for c, v in out.items() if red(v)}


def _sub(field, x, y, s=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) - s * v
    return {k: field.reduce(v) for k, v in out.items() if field.reduce(v)}


def validate(g):
    """Check antisymmetry, Jacobi, Leibniz and ``d∘d = 0`` on basis elements."""
    rep = ValidationReport(f"dgla {g.name or ''}".strip())
    F = g.field
    cap = g.truncated_above
    basis = [(deg, a) for deg in g.degrees for a in range(g.dim(deg))]

    def nm(e):
        return g.names(e[0])[e[1]]

    witness = None
    for (i, a) in basis:
        for (j, b) in basis:
            lhs = g.basis_bracket(i, a, j, b)
            rhs = g.basis_bracket(j, b, i, a)
            s = _sign(i * j)
            total = _sub(F, lhs, {c: -s * v for c, v in rhs.items()})
            if total:
                witness = (nm((i, a)), nm((j, b)))
                break
        if witness:
            break
    rep.add("antisymmetry", witness)

    witness = None
    for x, y, z in combinations_with_replacement(basis, 3):
        (i, a), (j, b), (k, c) = x, y, z
        if cap is not None and i + j + k > cap:
            continue
        for (P, Q, R) in ((x, y, z), (y, z, x), (z, x, y)):
            pi, qi, ri = P[0], Q[0], R[0]
            ex, ey, ez = {P[1]: F.one}, {Q[1]: F.one}, {R[1]: F.one}
            lhs = _sparse_bracket(g, pi, ex, qi + ri, _sparse_bracket(g, qi, ey, ri, ez))
            r1 = _sparse_bracket(g, pi + qi, _sparse_bracket(g, pi, ex, qi, ey), ri, ez)
            r2 = _sparse_bracket(g, qi, ey, pi + ri, _sparse_bracket(g, pi, ex, ri, ez))
            diff = _sub(F, _sub(F, lhs, r1), r2, _sign(pi * qi))
            if diff:
                witness = (nm(P), nm(Q), nm(R))
                break
        if witness:
            break
    rep.add("jacobi", witness)

    witness = None
    for x in basis:
        for y in basis:
            (i, a), (j, b) = x, y
            if cap is not None and i + j + 1 > cap:
                continue
            ex, ey = {a: F.one}, {b: F.one}
            lhs = _sparse_d(g, i + j, _sparse_bracket(g, i, ex, j, ey))
            r1 = _sparse_bracket(g, i + 1, _sparse_d(g, i, ex), j, ey)
            r2 = _sparse_bracket(g, i, ex, j + 1, _sparse_d(g, j, ey))
            diff = _sub(F, _sub(F, lhs, r1), r2, _sign(i))
            if diff:
                witness = (nm(x), nm(y))
                break
        if witness:
            break
    rep.add("leibniz", witness)

    witness = None
    for (i, a) in basis:
        if _sparse_d(g, i + 1, _sparse_d(g, i, {a: F.one})):
            witness = (nm((i, a)),)
            break
    rep.add("d_squared", witness)
    return rep


def cohomology(g, i):
    """``H^i(g, d)`` as a :class:`~deligne_kit.glin.Homology`."""
    return homology(g.d, g.d, i)


def cohomology_dims(g):
    return {deg: cohomology(g, deg).dim for deg in g.degrees}


def _lower_central_series(g, limit=64):
    F = g.field
    cur = {deg: span_basis(F, [g.basis_vector(deg, a) for a in range(g.dim(deg))], g.dim(deg))
           for deg in g.degrees}
    series = [cur]
    for _ in range(limit):
        nxt = {}
        for deg in g.degrees:
            vecs = []
            for i in g.degrees:
                j = deg - i
                if j not in cur:
                    continue
                for a in range(g.dim(i)):
                    e = g.basis_vector(i, a)
                    for v in cur[j]:
                        w = g.bracket(i, e, j, v)
                        if any(w):
                            vecs.append(w)
            nxt[deg] = span_basis(F, vecs, g.dim(deg))
        series.append(nxt)
        if sum(map(len, nxt.values())) == sum(map(len, cur.values())):
            return series, False
        if not any(nxt.values()):
            return series, True
        cur = nxt
    return series, False


def lower_central_series(g):
    """``[L^1, L^2, ...]`` with ``L^1 = g`` and ``L^{k+1} = [g, L^k]``, each as ``{deg: basis}``."""
    return _lower_central_series(g)[0]


def nilpotency_class(g):
    """Least ``N >= 1`` with all brackets of length ``N + 1`` zero, or ``None`` if not nilpotent."""
    series, nilpotent = _lower_central_series(g)
    if not nilpotent:
        if not any(series[0].values()):
            return 1
        return None
    zero_at = next(k for k, L in enumerate(series) if not any(L.values()))
    return max(1, zero_at)


class NilpotentDgla(DgLieAlgebra):
    """A dgla with a certified nilpotency class (and, if it came from ``m_A ⊗ g``, its factors)."""

    def __init__(self, *args, nilpotency=None, base=None, artin=None, **kwargs):
        super().__init__(*args, **kwargs)
        if nilpotency is None:
            nilpotency = nilpotency_class(self)
            if nilpotency is None:
                raise ValueError("dg Lie algebra is not nilpotent")
        self.nilpotency = nilpotency
        self.base = base
        self.artin = artin

    @classmethod
    def certify(cls, g):
        if isinstance(g, NilpotentDgla):
            return g
        return cls(g.field, {d: g.names(d) for d in g.degrees}, g.d.matrices, g._table,
                   name=g.name, truncated_above=g.truncated_above)


def tensor_with_ideal(g, A):
    """``m_A ⊗ g`` with ``d(a⊗x) = a⊗dx`` and ``[a⊗x, b⊗y] = ab⊗[x,y]``.

    Basis in each degree is ordered m-basis major, g-basis minor; element names
    are ``"<a>*<x>"``.
    """
    if A.field != g.field:
        raise FieldMismatch(f"dgla over {g.field}, Artin algebra over {A.field}")
    F = g.field
    mn = A.m_dim
    basis = {}
    for deg in g.degrees:
        basis[deg] = tuple(f"{a}*{x}" for a in A.m_names for x in g.names(deg))
    diff = {}
    for deg in g.degrees:
        M = g.d.at(deg)
        n_src, n_tgt = g.dim(deg), g.dim(deg + 1)
        rows = [[F.zero] * (mn * n_src) for _ in range(mn * n_tgt)]
        for p in range(mn):
            for r in range(n_tgt):
                for c in range(n_src):
                    rows[p * n_tgt + r][p * n_src + c] = M.rows[r][c]
        diff[deg] = Matrix(F, rows, mn * n_src)
    table = {}
    for ((i, a), (j, b)), out in g._table.items():
        ni, nj, nk = g.dim(i), g.dim(j), g.dim(i + j)
        for p in range(mn):
            for q in range(mn):
                prod = A.m_product(p, q)
                if not any(prod):
                    continue
                res = {}
                for r, pr in enumerate(prod):
                    if pr:
                        for c, k in out.items():
                            res[r * nk + c] = F.reduce(res.get(r * nk + c, 0) + pr * k)
                table[((i, p * ni + a), (j, q * nj + b))] = res
    label = f"m_{A.label or 'A'} ⊗ {g.name or 'g'}"
    order = A.nilpotency_order()
    return NilpotentDgla(F, basis, diff, table, name=label, truncated_above=g.truncated_above,
                         base=g, artin=A, nilpotency=None if order is None else None)
