"""Dense exact linear algebra, graded vector spaces, homology and splittings of complexes.

Pivoting convention everywhere: reduced row echelon form, leftmost pivot,
pivot rows scaled to a leading 1.  Bases returned by :func:`kernel_basis` and
:func:`image_basis` are therefore canonical functions of the input matrix.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import Field, same_field


class CompositionNotZero(ValueError):
    pass


class NotAComplex(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


class Matrix:
    """Immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(field.reduce(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeMismatch("ncols required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch(f"ragged row of length {len(r)}, expected {ncols}")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = object.__new__(cls)
        m.field, m.rows, m.nrows, m.ncols = field, rows, len(rows), ncols
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls._raw(field, ((field.zero,) * ncols,) * nrows, ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), n)

    @classmethod
    def from_columns(cls, field, cols, nrows):
        cols = [tuple(c) for c in cols]
        return cls._raw(field, tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def T(self):
        return Matrix._raw(self.field, tuple(tuple(r[j] for r in self.rows) for j in range(self.ncols)),
                           self.nrows)

    def columns(self):
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def apply(self, v):
        if len(v) != self.ncols:
            raise ShapeMismatch(f"vector of length {len(v)} for matrix with {self.ncols} columns")
        red = self.field.reduce
        return tuple(red(sum(a * b for a, b in zip(r, v) if a and b)) for r in self.rows)

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        cols = other.columns()
        rows = tuple(tuple(red(sum(a * b for a, b in zip(r, c) if a and b)) for c in cols)
                     for r in self.rows)
        return Matrix._raw(self.field, rows, other.ncols)

    def __add__(self, other):
        self._same_shape(other)
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(a + b) for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)), self.ncols)

    def __sub__(self, other):
        self._same_shape(other)
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(a - b) for a, b in zip(r, s))
                                             for r, s in zip(self.rows, other.rows)), self.ncols)

    def scale(self, c):
        red = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(red(c * a) for a in r) for r in self.rows), self.ncols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes differ: {self.shape} vs {other.shape}")

    def is_zero(self):
        return all(not a for r in self.rows for a in r)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(a) for a in r) for r in self.rows)
        return f"Matrix<{self.field.name} {self.nrows}x{self.ncols}>[{body}]"

    def rank(self):
        return len(rref(self)[1])

    def kernel(self):
        return kernel_basis(self)

    def image(self):
        return image_basis(self)


def rref(M):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    F = M.field
    red, inv = F.reduce, F.inv
    rows = [list(r) for r in M.rows]
    pivots = []
    r = 0
    for c in range(M.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        s = inv(rows[r][c])
        rows[r] = [red(s * x) for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [red(x - f * y) for x, y in zip(rows[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def rank(M):
    return M.rank()


def kernel_basis(M):
    """Basis of ``ker M``, itself in reduced row echelon form."""
    F = M.field
    R, pivots = rref(M)
    pivset = set(pivots)
    basis = []
    for j in range(M.ncols):
        if j in pivset:
            continue
        v = [F.zero] * M.ncols
        v[j] = F.one
        for row, pc in zip(R, pivots):
            if row[j]:
                v[pc] = F.reduce(-row[j])
        basis.append(tuple(v))
    if not basis:
        return []
    return rref(Matrix._raw(F, tuple(basis), M.ncols))[0]


def image_basis(M):
    """Basis of the column space: the nonzero rows of ``rref(M^T)``."""
    return rref(M.T)[0]


def span_basis(field, vectors, dim):
    """Canonical (rref) basis of the span of ``vectors`` in ``field^dim``."""
    if not vectors:
        return []
    return rref(Matrix(field, vectors, dim))[0]


def solve(M, b):
    """One solution ``x`` of ``M x = b`` (free variables set to 0) or ``None``."""
    F = M.field
    aug = Matrix._raw(F, tuple(r + (bi,) for r, bi in zip(M.rows, b)), M.ncols + 1)
    R, pivots = rref(aug)
    if pivots and pivots[-1] == M.ncols:
        return None
    x = [F.zero] * M.ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return tuple(x)


def inverse(M):
    F = M.field
    n = M.nrows
    if M.ncols != n:
        raise ShapeMismatch("inverse of a non-square matrix")
    I = Matrix.identity(F, n)
    aug = Matrix._raw(F, tuple(r + s for r, s in zip(M.rows, I.rows)), 2 * n)
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw(F, tuple(r[n:] for r in R), n)


def extend_to_basis(field, sub, candidates, dim):
    """Greedily pick vectors from ``candidates`` independent modulo ``span(sub)``."""
    chosen = []
    current = list(sub)
    r = len(span_basis(field, current, dim)) if current else 0
    for v in candidates:
        trial = current + [v]
        r2 = len(span_basis(field, trial, dim))
        if r2 > r:
            chosen.append(tuple(v))
            current = trial
            r = r2
    return chosen


def standard_basis(field, n):
    return Matrix.identity(field, n).rows


def in_span(field, vectors, v, dim):
    return len(span_basis(field, list(vectors) + [v], dim)) == len(span_basis(field, list(vectors), dim))


# --------------------------------------------------------------------------
# graded objects

@dataclass(frozen=True)
class GradedVectorSpace:
    field: Field
    basis: dict  # degree -> tuple of names

    def __post_init__(self):
        clean = {}
        for deg, names in self.basis.items():
            names = tuple(names)
            if len(set(names)) != len(names):
                raise ShapeMismatch(f"duplicate basis names in degree {deg}")
            if names:
                clean[int(deg)] = names
        object.__setattr__(self, "basis", dict(sorted(clean.items())))

    def dim(self, deg):
        return len(self.basis.get(deg, ()))

    @property
    def degrees(self):
        return sorted(self.basis)

    @property
    def total_dim(self):
        return sum(len(v) for v in self.basis.values())

    def names(self, deg):
        return self.basis.get(deg, ())


@dataclass(frozen=True)
class GradedMap:
    source: GradedVectorSpace
    target: GradedVectorSpace
    shift: int
    matrices: dict = dc_field(default_factory=dict)  # degree -> Matrix

    def __post_init__(self):
        F = same_field(self.source.field, self.target.field)
        full = {}
        for deg in sorted(set(self.source.degrees) | set(self.matrices)):
            shape = (self.target.dim(deg + self.shift), self.source.dim(deg))
            M = self.matrices.get(deg)
            if M is None:
                M = Matrix.zeros(F, *shape)
            if M.shape != shape:
                raise ShapeMismatch(f"degree {deg}: matrix shape {M.shape}, expected {shape}")
            full[deg] = M
        object.__setattr__(self, "matrices", full)

    def at(self, deg):
        M = self.matrices.get(deg)
        if M is None:
            return Matrix.zeros(self.source.field, self.target.dim(deg + self.shift), self.source.dim(deg))
        return M

    def compose_after(self, first):
        """``self ∘ first``."""
        out = {}
        for deg in first.source.degrees:
            out[deg] = self.at(deg + first.shift) @ first.at(deg)
        return GradedMap(first.source, self.target, first.shift + self.shift, out)


# --------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class Homology:
    """``H = ker(d_out) / im(d_in)`` with a section ``H -> ker`` and a projection onto ``H``.

    ``section`` has the chosen cycle representatives as columns; ``projection``
    is defined on the whole ambient space and restricts to the quotient map on cycles.
    """
    dim: int
    section: Matrix
    projection: Matrix
    cycles: tuple
    boundaries: tuple


def homology_of(d_in, d_out):
    F = d_out.field
    n = d_out.ncols
    if d_in.nrows != n:
        raise ShapeMismatch(f"d_in lands in dimension {d_in.nrows}, d_out starts at {n}")
    if not (d_out @ d_in).is_zero():
        raise CompositionNotZero("d_out ∘ d_in ≠ 0")
    Z = kernel_basis(d_out)
    B = image_basis(d_in)
    H = extend_to_basis(F, B, Z, n)
    rest = extend_to_basis(F, list(B) + H, standard_basis(F, n), n)
    P = Matrix.from_columns(F, list(B) + H + rest, n)
    Pinv = inverse(P)
    proj = Matrix._raw(F, Pinv.rows[len(B):len(B) + len(H)], n)
    return Homology(len(H), Matrix.from_columns(F, H, n), proj, tuple(Z), tuple(B))


def homology(d_in, d_out, i):
    """Homology at degree ``i`` of ``C^{i-1} -d_in-> C^i -d_out-> C^{i+1}``."""
    return homology_of(d_in.at(i - d_in.shift), d_out.at(i))


# --------------------------------------------------------------------------
# splittings

@dataclass(frozen=True)
class DegreeSplitting:
    B: tuple
    H: tuple
    C: tuple
    pi_B: Matrix
    pi_H: Matrix
    pi_C: Matrix
    to_H: Matrix     # ambient -> H coordinates
    from_H: Matrix   # H coordinates -> ambient


@dataclass(frozen=True)
class Splitting:
    """``g^i = B^i ⊕ H^i ⊕ C^i`` with ``d: C^i ≅ B^{i+1}`` and homotopy ``h: g^{i+1} -> g^i``."""
    space: GradedVectorSpace
    d: GradedMap
    degrees: dict   # degree -> DegreeSplitting
    h: GradedMap    # shift -1

    def H_dim(self, deg):
        s = self.degrees.get(deg)
        return len(s.H) if s else 0


def split_complex(d):
    """Canonical splitting of a cochain complex given by a degree +1 endomorphism ``d``."""
    if d.source != d.target or d.shift != 1:
        raise NotAComplex("split_complex needs an endomorphism of degree +1")
    V = d.source
    F = V.field
    for deg in V.degrees:
        if not (d.at(deg + 1) @ d.at(deg)).is_zero():
            raise NotAComplex(f"d∘d ≠ 0 starting in degree {deg}")
    degs = V.degrees
    C = {}
    Z = {}
    for deg in degs:
        n = V.dim(deg)
        Z[deg] = kernel_basis(d.at(deg))
        C[deg] = extend_to_basis(F, Z[deg], standard_basis(F, n), n)
    parts = {}
    for deg in degs:
        n = V.dim(deg)
        Dprev = d.at(deg - 1)
        B = [Dprev.apply(c) for c in C.get(deg - 1, [])]
        H = extend_to_basis(F, B, Z[deg], n)
        P = Matrix.from_columns(F, B + H + C[deg], n)
        Pinv = inverse(P)
        nb, nh = len(B), len(H)

        def proj(lo, hi):
            cols = P.columns()[lo:hi]
            coords = Matrix._raw(F, Pinv.rows[lo:hi], n)
            return Matrix.from_columns(F, cols, n) @ coords

        parts[deg] = DegreeSplitting(
            tuple(B), tuple(H), tuple(C[deg]),
            proj(0, nb), proj(nb, nb + nh), proj(nb + nh, n),
            Matrix._raw(F, Pinv.rows[nb:nb + nh], n),
            Matrix.from_columns(F, H, n),
        )
    # h^{deg}: g^{deg+1} -> g^{deg}; B^{deg+1} basis is d(C^deg), so B-coordinates are C-coefficients
    hmats = {}
    for deg in degs:
        tgt_n = V.dim(deg - 1)
        src_n = V.dim(deg)
        if deg - 1 not in parts or not src_n:
            hmats[deg] = Matrix.zeros(F, tgt_n, src_n)
            continue
        Cprev = C[deg - 1]
        P = Matrix.from_columns(F, list(parts[deg].B) + list(parts[deg].H) + list(parts[deg].C), src_n)
        Bcoords = Matrix._raw(F, inverse(P).rows[:len(Cprev)], src_n)
        hmats[deg] = Matrix.from_columns(F, Cprev, tgt_n) @ Bcoords
    h = GradedMap(V, V, -1, hmats)
    return Splitting(V, d, parts, h)
