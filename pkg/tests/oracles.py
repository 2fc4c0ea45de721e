"""Independent reference computations used only by the tests.

Everything here is deliberately naive: exhaustive enumeration and a separate
Gaussian elimination, sharing no code with the package's solvers.
"""
import itertools
from fractions import Fraction


def rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def bracket_vec(g, i, u, j, v):
    """``[u, v]`` straight from the structure-constant table."""
    out = [0] * g.dim(i + j)
    for a, x in enumerate(u):
        for b, y in enumerate(v):
            if x and y:
                for c, k in g.basis_bracket(i, a, j, b).items():
                    out[c] += x * y * k
    return out


def d_vec(g, i, u):
    M = g.d.at(i)
    return [sum(M.rows[r][c] * u[c] for c in range(len(u))) for r in range(M.nrows)]


def curvature_naive(g, y):
    p = g.field.characteristic
    half = Fraction(1, 2) if p == 0 else pow(2, p - 2, p)
    dy = d_vec(g, 1, y) if g.dim(2) else []
    br = bracket_vec(g, 1, y, 1, y) if g.dim(2) else []
    out = [a + half * b for a, b in zip(dy, br)]
    return [x % p for x in out] if p else out


def all_vectors(p, n):
    return [tuple(v) for v in itertools.product(range(p), repeat=n)]


def mc_brute(g):
    p = g.field.characteristic
    return sorted(y for y in all_vectors(p, g.dim(1)) if not any(curvature_naive(g, y)))


def homs_brute(source_gens, target, relation_ok):
    """Assignments of every generator to an element of m_target that pass ``relation_ok``."""
    p = target.field.characteristic
    m = [v for v in all_vectors(p, target.dim) if v[0] == 0]
    return [imgs for imgs in itertools.product(m, repeat=source_gens) if relation_ok(imgs)]


def square_zero_count(A):
    p = A.field.characteristic
    return sum(1 for v in all_vectors(p, A.dim) if v[0] == 0 and not any(A.mul(v, v)))


def upper_triangular_exp(M, p):
    """exp of a strictly upper-triangular integer matrix mod p (as Fractions reduced mod p)."""
    n = len(M)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    term = [row[:] for row in out]
    for k in range(1, n):
        term = [[sum(term[i][l] * M[l][j] for l in range(n)) / k for j in range(n)] for i in range(n)]
        out = [[out[i][j] + term[i][j] for j in range(n)] for i in range(n)]
    return out


def upper_triangular_log(U):
    n = len(U)
    N = [[U[i][j] - int(i == j) for j in range(n)] for i in range(n)]
    out = [[Fraction(0)] * n for _ in range(n)]
    power = [row[:] for row in N]
    for k in range(1, n):
        sign = 1 if k % 2 else -1
        out = [[out[i][j] + sign * power[i][j] / k for j in range(n)] for i in range(n)]
        power = [[sum(power[i][l] * N[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
    return out


def matmul(A, B):
    return [[sum(A[i][l] * B[l][j] for l in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]
