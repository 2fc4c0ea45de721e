"""Truncated Chevalley-Eilenberg complexes of a dgla.

Letters are the basis elements of ``g``; the letter for ``e ∈ g^i`` has
degree ``i − 1`` on the chain side (``v_e ∈ g[1]``) and ``1 − i`` on the
cochain side (``t_e``).  Both sides use sorted monomials, odd letters at most
once, truncated at length ``W``.

Chain differential (a coderivation of ``Sym(g[1])``)::

    ∂ = Σ_i ± Q1(v_i)·rest + Σ_{i<j} ± Q2(v_i, v_j)·rest
    Q1(v_e) = −v_{de},   Q2(v_x, v_y) = (−1)^{|x|} v_{[x,y]}

Cochain differential (a derivation), from the universal element
``Y = Σ t_e e``:  ``Σ_c δ(t_c) e_c = −(dY + ½[Y, Y])``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial

from ..artin import ArtinAlgebra
from ..fields import require_denominators
from ..glin import Matrix, extend_to_basis, kernel_basis, solve, span_basis, image_basis
from ..report import ValidationReport


def _sort_sign(seq, odd):
    """Sort letters with the Koszul sign; ``(0, None)`` if an odd letter repeats."""
    s = list(seq)
    sign = 1
    for i in range(1, len(s)):
        j = i
        while j > 0 and s[j - 1] > s[j]:
            if odd[s[j - 1]] and odd[s[j]]:
                sign = -sign
            s[j - 1], s[j] = s[j], s[j - 1]
            j -= 1
    for a, b in zip(s, s[1:]):
        if a == b and odd[a]:
            return 0, None
    return sign, tuple(s)


class Letters:
    """Indexing of basis elements of ``g`` as CE letters."""

    def __init__(self, g):
        self.g = g
        self.items = [(deg, a) for deg in g.degrees for a in range(g.dim(deg))]
        self.index = {it: k for k, it in enumerate(self.items)}
        self.chain_deg = [deg - 1 for deg, _ in self.items]
        self.odd = [bool(d % 2) for d in self.chain_deg]
        self.names = [g.names(deg)[a] for deg, a in self.items]

    def __len__(self):
        return len(self.items)

    def words(self, degree, W):
        """Sorted words of chain degree ``degree`` and length ``1..W`` (plus the empty word for degree 0)."""
        out = [()] if degree == 0 else []
        n = len(self.items)
        for k in range(1, W + 1):
            for combo in combinations_with_replacement(range(n), k):
                if sum(self.chain_deg[i] for i in combo) != degree:
                    continue
                if any(combo[i] == combo[i + 1] and self.odd[combo[i]] for i in range(k - 1)):
                    continue
                out.append(combo)
        return out

    def word_name(self, w, prefix):
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            nm = f"{prefix}{self.names[w[i]]}"
            parts.append(nm if j - i == 1 else f"{nm}^{j - i}")
            i = j
        return "*".join(parts)


def _add(F, acc, key, c):
    v = F.reduce(acc.get(key, 0) + c)
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _vector_terms(g, deg, v):
    return [(a, c) for a, c in enumerate(v) if c]


def chain_differential(L, word, W):
    """``∂(word)`` as ``{word: coeff}``."""
    g = L.g
    F = g.field
    out = {}
    n = len(word)
    degs = [L.chain_deg[x] for x in word]
    odd = L.odd
    for i in range(n):
        deg_e, a = L.items[word[i]]
        lead = (-1) ** (sum(degs[:i]) % 2 * (degs[i] % 2))  # move v_i to the front
        rest = word[:i] + word[i + 1:]
        dv = g.differential(deg_e, g.basis_vector(deg_e, a))
        for b, c in _vector_terms(g, deg_e + 1, dv):
            letter = L.index[(deg_e + 1, b)]
            s, w = _sort_sign((letter,) + rest, odd)
            if s:
                _add(F, out, w, -lead * s * c)
    for i in range(n):
        for j in range(i + 1, n):
            di, a = L.items[word[i]]
            dj, b = L.items[word[j]]
            if di + dj not in g.degrees:
                continue
            # Koszul sign of moving v_i then v_j to the front
            e1 = degs[i] * sum(degs[:i])
            e2 = degs[j] * (sum(degs[:j]) - degs[i])
            lead = -1 if (e1 + e2) % 2 else 1
            rest = word[:i] + word[i + 1:j] + word[j + 1:]
            br = g.basis_bracket(di, a, dj, b)
            sgn = -1 if di % 2 else 1
            for c_idx, c in br.items():
                letter = L.index[(di + dj, c_idx)]
                s, w = _sort_sign((letter,) + rest, odd)
                if s:
                    _add(F, out, w, lead * sgn * s * c)
    return {w: c for w, c in out.items() if len(w) <= W}


def _generator_coboundary(L):
    """``δ(t_c)`` for every letter ``c`` as ``{word: coeff}``."""
    g = L.g
    F = g.field
    half = F.inv(F(2))
    fdeg = [-d for d in L.chain_deg]  # cochain degree of t_e
    out = [dict() for _ in L.items]
    for k, (deg, a) in enumerate(L.items):
        sign = -1 if fdeg[k] % 2 else 1
        dv = g.differential(deg, g.basis_vector(deg, a))
        for b, c in _vector_terms(g, deg + 1, dv):
            tgt = L.index[(deg + 1, b)]
            _add(F, out[tgt], (k,), -sign * c)
    for k1, (d1, a) in enumerate(L.items):
        for k2, (d2, b) in enumerate(L.items):
            br = g.basis_bracket(d1, a, d2, b)
            if not br:
                continue
            sign = -1 if (d1 * fdeg[k2]) % 2 else 1
            s, w = _sort_sign((k1, k2), L.odd)
            if not s:
                continue
            for c_idx, c in br.items():
                tgt = L.index[(d1 + d2, c_idx)]
                _add(F, out[tgt], w, -half * sign * s * c)
    return out


def cochain_differential(L, gens_delta, word, W):
    """``δ(t_word)`` extended from generators as a derivation, truncated at length ``W``."""
    F = L.g.field
    out = {}
    prefix_odd = 0
    for i, letter in enumerate(word):
        sign = -1 if prefix_odd % 2 else 1
        for w2, c in gens_delta[letter].items():
            if len(word) - 1 + len(w2) > W:
                continue
            s, w = _sort_sign(word[:i] + w2 + word[i + 1:], L.odd)
            if s:
                _add(F, out, w, sign * s * c)
        if L.odd[letter]:
            prefix_odd += 1
    return out


def pairing_weight(word, odd, chain_deg=None):
    """``⟨t^α, v^α⟩ = α! · Π_c (−1)^{k_c(k_c−1)/2}`` with ``k_c`` the chain degree of letter ``c``."""
    w = 1
    if chain_deg is not None:
        for x in word:
            k = chain_deg[x]
            if (k * (k - 1) // 2) % 2:
                w = -w
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        w *= factorial(j - i)
        i = j
    return w


def _matrix(F, src_words, tgt_words, fn):
    idx = {w: i for i, w in enumerate(tgt_words)}
    cols = []
    for w in src_words:
        col = [F.zero] * len(tgt_words)
        for w2, c in fn(w).items():
            col[idx[w2]] = c
        cols.append(tuple(col))
    return Matrix.from_columns(F, cols, len(tgt_words)) if cols else Matrix.zeros(F, len(tgt_words), 0)


def _poly_mul(L, p, q, W):
    F = L.g.field
    out = {}
    for w1, c1 in p.items():
        for w2, c2 in q.items():
            if len(w1) + len(w2) > W:
                continue
            s, w = _sort_sign(w1 + w2, L.odd)
            if s:
                _add(F, out, w, s * c1 * c2)
    return out


@dataclass
class CETruncation:
    g: object
    W: int
    letters: Letters
    words: dict            # chain degree -> list of words (shared by both sides)
    chain_d: dict          # chain degree k -> Matrix C_k -> C_{k+1}
    cochain_d: dict        # cochain degree m -> Matrix R^m -> R^{m+1}
    h0_dim: int
    chain_cycles: list     # representatives of H_0 (vectors over words[0])
    algebra: ArtinAlgebra  # H^0 of the cochain side
    algebra_reps: list     # cocycle representative per algebra basis element
    hypothesis_h0_zero: bool

    def checks(self):
        """``∂∘∂ = 0``, ``δ∘δ = 0``, adjointness under the pairing and the coalgebra/algebra duality."""
        rep = ValidationReport(f"CE truncation W={self.W}")
        F = self.g.field
        bad = None
        for k in (-2, -1):
            if not (self.chain_d[k + 1] @ self.chain_d[k]).is_zero():
                bad = (k,)
        rep.add("chain_d_squared", bad)
        bad = None
        for m in (-1, 0):
            if not (self.cochain_d[m + 1] @ self.cochain_d[m]).is_zero():
                bad = (m,)
        rep.add("cochain_d_squared", bad)
        bad = None
        for k in (-1, 0, 1):
            # δ: R^{-k-1} -> R^{-k} is dual to ∂: C_k -> C_{k+1}
            dR = self.cochain_d.get(-k - 1)
            dC = self.chain_d[k]
            wk, wk1 = self.words[k], self.words[k + 1]
            for i, wi in enumerate(wk):
                for j, wj in enumerate(wk1):
                    lhs = F.reduce(dR.rows[i][j] * pairing_weight(wi, self.letters.odd, self.letters.chain_deg))
                    rhs = F.reduce(dC.rows[j][i] * pairing_weight(wj, self.letters.odd, self.letters.chain_deg))
                    if lhs != rhs:
                        bad = (self.letters.word_name(wj, "t_"), self.letters.word_name(wi, "v_"))
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("adjoint", bad)
        rep.add("duality", self._duality_witness())
        return rep

    def pair(self, f, c):
        """``⟨f, c⟩`` for a degree-0 cochain and chain (vectors over ``words[0]``)."""
        F = self.g.field
        return F.reduce(sum(a * b * pairing_weight(w, self.letters.odd, self.letters.chain_deg)
                            for a, b, w in zip(f, c, self.words[0])))

    def coproduct(self, c):
        """Shuffle coproduct of a degree-0 chain, as ``{(w1, w2): coeff}`` (both in degree 0)."""
        F = self.g.field
        L = self.letters
        out = {}
        for coeff, word in zip(c, self.words[0]):
            if not coeff:
                continue
            n = len(word)
            for mask in range(1 << n):
                left = [word[i] for i in range(n) if mask >> i & 1]
                right = [word[i] for i in range(n) if not mask >> i & 1]
                if sum(L.chain_deg[x] for x in left):
                    continue
                s = _shuffle_sign(word, mask, L.odd)
                _add(F, out, (tuple(left), tuple(right)), s * coeff)
        return out

    def _duality_witness(self):
        """The H⁰ product is the transpose of the H₀ coproduct under the pairing."""
        F = self.g.field
        idx = {w: i for i, w in enumerate(self.words[0])}
        reps = self.algebra_reps
        A = self.algebra
        weights = [pairing_weight(w, self.letters.odd, self.letters.chain_deg) for w in self.words[0]]
        for cyc in self.chain_cycles:
            delta = self.coproduct(cyc)
            for i, a in enumerate(reps):
                for j, b in enumerate(reps):
                    prod = A.mul(A.basis_vector(i), A.basis_vector(j))
                    lhs = F.reduce(sum(pk * self.pair(reps[k], cyc) for k, pk in enumerate(prod)))
                    rhs = 0
                    for (w1, w2), c in delta.items():
                        rhs += c * a[idx[w1]] * weights[idx[w1]] * b[idx[w2]] * weights[idx[w2]]
                    if lhs != F.reduce(rhs):
                        return (A.names[i], A.names[j])
        return None


def _shuffle_sign(word, mask, odd):
    """Koszul sign of moving the letters selected by ``mask`` to the front, keeping order."""
    sign = 1
    passed_odd = 0
    for i, x in enumerate(word):
        if mask >> i & 1:
            if odd[x] and passed_odd % 2:
                sign = -sign
        elif odd[x]:
            passed_odd += 1
    return sign


def ce_truncation(g, W):
    """Chain and cochain CE complexes of ``g`` on words of length ``<= W`` near degree 0."""
    F = g.field
    require_denominators(F, W, "truncated Chevalley-Eilenberg complex")
    L = Letters(g)
    words = {k: L.words(k, W) for k in (-2, -1, 0, 1, 2)}
    chain_d = {k: _matrix(F, words[k], words[k + 1], lambda w: chain_differential(L, w, W))
               for k in (-2, -1, 0, 1)}
    gd = _generator_coboundary(L)
    # cochain degree m lives on words of chain degree -m
    cochain_d = {m: _matrix(F, words[-m], words[-m - 1], lambda w: cochain_differential(L, gd, w, W))
                 for m in (-2, -1, 0, 1)}

    # H_0 on the chain side
    n0 = len(words[0])
    Z0 = kernel_basis(chain_d[0])
    B0 = image_basis(chain_d[-1])
    cyc = extend_to_basis(F, B0, Z0, n0)

    # H^0 on the cochain side as an algebra
    unit = tuple(F.one if not w else F.zero for w in words[0])
    Zc = kernel_basis(cochain_d[0])
    Bc = image_basis(cochain_d[-1])
    m_cycles = span_basis(F, [tuple(F.reduce(x - z[0] * u) for x, u in zip(z, unit)) for z in Zc], n0)
    m_cycles = [v for v in m_cycles if any(v)]
    hreps = extend_to_basis(F, Bc, m_cycles, n0)
    reps = [unit] + hreps
    basis_cols = Matrix.from_columns(F, list(Bc) + reps, n0)
    nb = len(Bc)
    index = {w: i for i, w in enumerate(words[0])}

    def coords(vec):
        x = solve(basis_cols, vec)
        if x is None:
            raise AssertionError("product of cocycles left the cocycle space")
        return x[nb:]

    polys = [{w: c for w, c in zip(words[0], r) if c} for r in reps]
    table = []
    for p in polys:
        row = []
        for q in polys:
            prod = _poly_mul(L, p, q, W)
            vec = [F.zero] * n0
            for w, c in prod.items():
                vec[index[w]] = c
            row.append(coords(tuple(vec)))
        table.append(row)
    names = ["1"] + [f"c{i + 1}" for i in range(len(hreps))]
    algebra = ArtinAlgebra(F, names, table, label=f"H0(CE_{W})")
    h0 = 0 in g.degrees and g.dim(0) and _h0_dim(g)
    return CETruncation(g, W, L, words, chain_d, cochain_d, len(cyc), cyc, algebra, reps, not h0)


def _h0_dim(g):
    from ..dgla import cohomology
    return cohomology(g, 0).dim
