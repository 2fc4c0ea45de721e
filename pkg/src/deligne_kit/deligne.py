"""Maurer-Cartan elements, the gauge group and the Deligne groupoid.

Conventions: curvature is ``dy + ½[y,y]``; the group ``exp(g⁰)`` has the BCH
product; ``exp(x)`` acts on MC elements by

    exp(x)·y = e^{ad x}(y) − φ(ad x)(dx),   φ(z) = Σ_{n≥0} zⁿ/(n+1)!

whose derivative at ``x = 0`` is the vector field ``y ↦ [x,y] − dx``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .dgla import NilpotentDgla, lower_central_series, make_dgla
from .fields import InfiniteField, require_denominators
from .glin import Matrix, kernel_basis, solve, span_basis, extend_to_basis


class WrongDegree(ValueError):
    pass


class NotMaurerCartan(ValueError):
    pass


def nilpotent(g):
    """``g`` as a :class:`NilpotentDgla`, certifying (and caching) its class."""
    if isinstance(g, NilpotentDgla):
        return g
    cached = getattr(g, "_nilpotent", None)
    if cached is None:
        cached = NilpotentDgla.certify(g)
        g._nilpotent = cached
    return cached


def _check_vec(g, deg, v, what):
    if len(v) != g.dim(deg):
        raise WrongDegree(f"{what} must be a degree-{deg} vector of length {g.dim(deg)}")


# --------------------------------------------------------------------------
# pointwise formulas

def curvature(g, y):
    """``dy + ½[y,y]`` in degree 2."""
    _check_vec(g, 1, y, "y")
    F = g.field
    require_denominators(F, 2, "curvature")
    half = F.inv(F(2))
    return g.add(g.differential(1, y), g.bracket(1, y, 1, y), half)


def is_maurer_cartan(g, y):
    return not any(curvature(g, y))


def infinitesimal_action(g, x, y):
    """``dx + [x,y]``, the formula as usually written."""
    _check_vec(g, 0, x, "x")
    _check_vec(g, 1, y, "y")
    return g.add(g.differential(0, x), g.bracket(0, x, 1, y))


def gauge_vector_field(g, x, y):
    """``[x,y] − dx``: the derivative of :func:`gauge_act` at the identity."""
    _check_vec(g, 0, x, "x")
    _check_vec(g, 1, y, "y")
    return g.add(g.bracket(0, x, 1, y), g.differential(0, x), -1)


@lru_cache(maxsize=None)
def _bch_words(n):
    """Lie terms of ``log(e^X e^Y)`` up to length ``n``: ``[(word, coeff)]``.

    Each word ``(a1..ak)`` over ``{0: X, 1: Y}`` stands for the left-normed
    bracket ``[..[a1,a2],..,ak]`` (Dynkin's map, already divided by ``k``).
    """
    prod = {}
    for a in range(n + 1):
        for b in range(n + 1 - a):
            prod[(0,) * a + (1,) * b] = Fraction(1, factorial(a) * factorial(b))
    u = {w: c for w, c in prod.items() if w}

    def mul(p, q):
        out = {}
        for w1, c1 in p.items():
            for w2, c2 in q.items():
                if len(w1) + len(w2) <= n:
                    w = w1 + w2
                    out[w] = out.get(w, 0) + c1 * c2
        return out

    log = {}
    power = dict(u)
    for k in range(1, n + 1):
        for w, c in power.items():
            log[w] = log.get(w, 0) + Fraction((-1) ** (k + 1), k) * c
        power = mul(power, u)
    terms = [(w, c / len(w)) for w, c in log.items() if c and not (len(w) > 1 and w[0] == w[1])]
    terms.sort(key=lambda t: (len(t[0]), t[0]))
    return tuple(terms)


def bch(g, x, xp):
    """``log(exp(x) exp(x′))`` in ``g⁰``, exact for a nilpotent ``g``."""
    g = nilpotent(g)
    _check_vec(g, 0, x, "x")
    _check_vec(g, 0, xp, "x′")
    F = g.field
    N = g.nilpotency
    require_denominators(F, N, "BCH product")
    letters = (x, xp)
    memo = {}

    def value(w):
        if w in memo:
            return memo[w]
        if len(w) == 1:
            v = letters[w[0]]
        else:
            v = g.bracket(0, value(w[:-1]), 0, letters[w[-1]])
        memo[w] = v
        return v

    out = [0] * g.dim(0)
    for w, c in _bch_words(N):
        v = value(w)
        if any(v):
            cf = F(c)
            for i, vi in enumerate(v):
                out[i] += cf * vi
    return tuple(F.reduce(o) for o in out)


def inverse(g, x):
    return g.scale(-1, x)


def gauge_act(g, x, y, check=True):
    """``exp(x)·y = e^{ad x}(y) − φ(ad x)(dx)``."""
    g = nilpotent(g)
    _check_vec(g, 0, x, "x")
    _check_vec(g, 1, y, "y")
    F = g.field
    N = g.nilpotency
    require_denominators(F, N + 1, "gauge action")
    if check and not is_maurer_cartan(g, y):
        raise NotMaurerCartan(f"y = {g.format(1, y)} has nonzero curvature")
    if not any(x):
        return tuple(y)
    out = list(y)
    a = tuple(y)
    b = g.differential(0, x)
    for n in range(0, N + 1):
        # a = ad_x^n y, b = ad_x^n dx
        if n:
            fa = F.inv(F(factorial(n)))
            out = [o + fa * ai for o, ai in zip(out, a)]
        fb = F.inv(F(factorial(n + 1)))
        out = [o - fb * bi for o, bi in zip(out, b)]
        a = g.bracket(0, x, 1, a)
        b = g.bracket(0, x, 1, b)
        if not any(a) and not any(b):
            break
    return tuple(F.reduce(o) for o in out)


# --------------------------------------------------------------------------
# filtration helpers

def _filtration(g):
    """``[F^1, F^2, ..., F^{N+1}]`` (lower central series, last term zero), each ``{deg: basis}``."""
    cached = getattr(g, "_lcs", None)
    if cached is None:
        cached = lower_central_series(g)
        if any(cached[-1].values()):
            raise ValueError("dg Lie algebra is not nilpotent")
        g._lcs = cached
    return cached


def _linear_map_matrix(g, fn, src_deg, tgt_deg):
    cols = [fn(g.basis_vector(src_deg, a)) for a in range(g.dim(src_deg))]
    return Matrix.from_columns(g.field, cols, g.dim(tgt_deg))


def _solve_modulo(field, columns, target, sub, n):
    """All ``a`` with ``Σ a_i columns_i − target ∈ span(sub)``.

    Returns ``(particular, directions)`` or ``None``; directions form an
    rref basis of the solution space's linear part.
    """
    k = len(columns)
    cols = list(columns) + [tuple(field.reduce(-c) for c in s) for s in sub]
    M = Matrix.from_columns(field, cols, n) if cols else Matrix.zeros(field, n, 0)
    sol = solve(M, target)
    if sol is None:
        return None
    dirs = span_basis(field, [v[:k] for v in kernel_basis(M)], k) if k else []
    dirs = [d for d in dirs if any(d)]
    return tuple(sol[:k]), dirs


# --------------------------------------------------------------------------
# Maurer-Cartan enumeration

def mc_layers(g):
    """Order-by-order description of the MC equation.

    Yields per filtration step the complement basis ``V_k`` of ``F^{k+1}`` in
    ``F^k`` (degree 1) and the basis of ``F^{k+1}`` in degree 2.
    """
    g = nilpotent(g)
    F = g.field
    filt = _filtration(g)
    layers = []
    for k in range(len(filt) - 1):
        cur1, nxt1 = filt[k].get(1, []), filt[k + 1].get(1, [])
        V = extend_to_basis(F, nxt1, cur1, g.dim(1))
        layers.append((V, filt[k + 1].get(2, [])))
    return layers


def enumerate_mc(g):
    """All Maurer-Cartan elements of a nilpotent dgla over a finite field, sorted."""
    g = nilpotent(g)
    F = g.field
    if not F.is_finite:
        raise InfiniteField("Maurer-Cartan sets over Q are infinite; use the Kuranishi germ instead")
    require_denominators(F, 2, "curvature")
    n1, n2 = g.dim(1), g.dim(2)
    partial = [g.zero(1)]
    for V, sub2 in mc_layers(g):
        dV = [g.differential(1, v) for v in V]
        nxt = []
        for y in partial:
            c = curvature(g, y)
            res = _solve_modulo(F, dV, tuple(F.reduce(-ci) for ci in c), sub2, n2)
            if res is None:
                continue
            a0, dirs = res
            for coeffs in itertools.product(range(F.characteristic), repeat=len(dirs)):
                a = list(a0)
                for cf, dvec in zip(coeffs, dirs):
                    if cf:
                        a = [ai + cf * di for ai, di in zip(a, dvec)]
                z = [0] * n1
                for ai, v in zip(a, V):
                    ai = F.reduce(ai)
                    if ai:
                        z = [zi + ai * vi for zi, vi in zip(z, v)]
                nxt.append(tuple(F.reduce(yi + zi) for yi, zi in zip(y, z)))
        partial = nxt
    out = sorted(y for y in partial if is_maurer_cartan(g, y))
    if len(out) != len(partial):
        raise AssertionError("order-by-order MC solver produced a non-solution")
    return out


def enumerate_mc_brute(g):
    """Exhaustive MC search over all of ``g¹`` (test oracle)."""
    F = g.field
    if not F.is_finite:
        raise InfiniteField("cannot enumerate over Q")
    return [y for y in itertools.product(range(F.characteristic), repeat=g.dim(1)) if is_maurer_cartan(g, y)]


# --------------------------------------------------------------------------
# stabilizers and transporters

def stabilizer_algebra(g, y):
    """Basis of ``{s ∈ g⁰ : [s,y] − ds = 0}``; ``exp`` of it is the stabilizer of ``y``."""
    M = _linear_map_matrix(g, lambda s: gauge_vector_field(g, s, y), 0, 1)
    return kernel_basis(M)


@dataclass
class Transporter:
    """The set ``{bch(base, s) : s ∈ span(directions)}`` or empty when ``base is None``."""
    g: object
    base: tuple | None
    directions: list = dc_field(default_factory=list)

    @property
    def empty(self):
        return self.base is None

    def size(self):
        if self.empty:
            return 0
        F = self.g.field
        if not F.is_finite:
            return None
        return F.characteristic ** len(self.directions)

    def elements(self):
        if self.empty:
            return []
        F = self.g.field
        if not F.is_finite:
            raise InfiniteField("transporter over Q is an affine family, not a finite list")
        out = []
        for coeffs in itertools.product(range(F.characteristic), repeat=len(self.directions)):
            s = self.g.zero(0)
            for cf, v in zip(coeffs, self.directions):
                if cf:
                    s = self.g.add(s, v, cf)
            out.append(bch(self.g, self.base, s))
        return sorted(out)

    def __contains__(self, x):
        if self.empty:
            return False
        s = bch(self.g, inverse(self.g, self.base), x)
        return len(span_basis(self.g.field, self.directions + [s], self.g.dim(0))) == len(self.directions)


def transporter(g, y, yp):
    """Gauge elements carrying ``y`` to ``y′``, solved along the lower central series."""
    g = nilpotent(g)
    F = g.field
    require_denominators(F, g.nilpotency + 1, "gauge action")
    for v, nm in ((y, "y"), (yp, "y′")):
        _check_vec(g, 1, v, nm)
        if not is_maurer_cartan(g, v):
            raise NotMaurerCartan(f"{nm} is not Maurer-Cartan")
    filt = _filtration(g)
    n0, n1 = g.dim(0), g.dim(1)
    iota = [gauge_vector_field(g, g.basis_vector(0, a), y) for a in range(n0)]
    x = g.zero(0)
    for k in range(len(filt) - 1):
        Fk1, Fk1next = filt[k].get(1, []), filt[k + 1].get(1, [])
        S = _solve_modulo(F, iota, g.zero(1), Fk1, n1)[1]
        w = gauge_act(g, x, y, check=False)
        r = g.add(yp, w, -1)
        cols = [gauge_vector_field(g, s, y) for s in S]
        sol = _solve_modulo(F, cols, r, Fk1next, n1)
        if sol is None:
            return Transporter(g, None)
        a, _ = sol
        s = g.zero(0)
        for ai, sv in zip(a, S):
            if ai:
                s = g.add(s, sv, ai)
        x = bch(g, x, s)
    if gauge_act(g, x, y, check=False) != tuple(yp):
        raise AssertionError("order-by-order transporter failed to converge")
    return Transporter(g, x, stabilizer_algebra(g, y))


def transporter_brute(g, y, yp):
    """All ``x ∈ g⁰`` with ``exp(x)·y = y′`` by exhaustive search (test oracle)."""
    g = nilpotent(g)
    F = g.field
    if not F.is_finite:
        raise InfiniteField("cannot enumerate over Q")
    return sorted(x for x in itertools.product(range(F.characteristic), repeat=g.dim(0))
                  if gauge_act(g, x, y, check=False) == tuple(yp))


# --------------------------------------------------------------------------
# π₀ and groupoid summaries

@dataclass(frozen=True)
class IsoClass:
    representative: tuple
    label: str
    size: int
    automorphisms: int


@dataclass
class GroupoidSummary:
    """A finite groupoid up to equivalence: iso-classes with automorphism-group orders."""
    classes: list
    objects: int = 0
    class_of: dict = dc_field(default_factory=dict, repr=False)

    @property
    def count(self):
        return len(self.classes)

    def to_json(self):
        return {
            "objects": self.objects,
            "classes": [{"representative": c.label, "size": c.size, "automorphisms": c.automorphisms}
                        for c in self.classes],
        }


def _union_find(n):
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        a, b = find(i), find(j)
        if a != b:
            parent[max(a, b)] = min(a, b)

    return find, union


def pi0(g, mc=None):
    """Gauge orbits on MC elements over a finite field.

    Orbits are closures under ``exp(b)`` for ``b`` in the basis of ``g⁰``; the
    representative is the lexicographically least element and the
    automorphism order is ``|exp(g⁰)| / |orbit|``.
    """
    g = nilpotent(g)
    F = g.field
    if not F.is_finite:
        raise InfiniteField("π₀ over Q is not a finite set")
    require_denominators(F, g.nilpotency + 1, "gauge action")
    elems = enumerate_mc(g) if mc is None else sorted(mc)
    index = {y: i for i, y in enumerate(elems)}
    find, union = _union_find(len(elems))
    gens = [g.basis_vector(0, a) for a in range(g.dim(0))]
    for i, y in enumerate(elems):
        for b in gens:
            j = index.get(gauge_act(g, b, y, check=False))
            if j is None:
                raise AssertionError("gauge action left the Maurer-Cartan set")
            union(i, j)
    sizes = {}
    for i in range(len(elems)):
        r = find(i)
        sizes[r] = sizes.get(r, 0) + 1
    group = F.characteristic ** g.dim(0)
    roots = sorted(sizes)  # least index = least element, since elems are sorted
    classes = [IsoClass(elems[r], g.format(1, elems[r]), sizes[r], group // sizes[r]) for r in roots]
    pos = {r: k for k, r in enumerate(roots)}
    class_of = {y: pos[find(i)] for i, y in enumerate(elems)}
    return GroupoidSummary(classes, len(elems), class_of)


def pi0_brute(g):
    """Orbits computed by applying every group element (test oracle)."""
    g = nilpotent(g)
    F = g.field
    elems = enumerate_mc_brute(g)
    group = list(itertools.product(range(F.characteristic), repeat=g.dim(0)))
    seen, classes = set(), []
    for y in elems:
        if y in seen:
            continue
        orbit = {gauge_act(g, x, y, check=False) for x in group}
        seen |= orbit
        stab = sum(1 for x in group if gauge_act(g, x, y, check=False) == y)
        classes.append((min(orbit), len(orbit), stab))
    return sorted(classes)


class DeligneGroupoid:
    """Objects: MC elements; morphisms ``y → y′``: gauge elements with ``exp(x)·y = y′``."""

    def __init__(self, g):
        self.g = nilpotent(g)
        self._mc = None
        self._pi0 = None

    def objects(self):
        if self._mc is None:
            self._mc = enumerate_mc(self.g)
        return self._mc

    def hom(self, y, yp):
        return transporter(self.g, y, yp)

    def compose(self, second, first):
        """``second ∘ first`` for composable gauge elements."""
        return bch(self.g, second, first)

    def identity(self, y):
        return self.g.zero(0)

    def summary(self):
        if self._pi0 is None:
            self._pi0 = pi0(self.g, self.objects())
        return self._pi0


@dataclass
class Equivalence:
    equivalent: bool
    pairs: list
    reason: str = ""

    def __bool__(self):
        return self.equivalent

    def to_json(self):
        out = {"equivalent": self.equivalent, "pairs": [list(p) for p in self.pairs]}
        if self.reason:
            out["reason"] = self.reason
        return out


def groupoid_equivalent(G1, G2, functor=None):
    """Equivalence of finite groupoids: bijection of iso-classes preserving automorphism orders.

    With ``functor`` (class index of ``G1`` → class index of ``G2``) that map is
    checked; otherwise classes are matched by automorphism order.
    """
    c1, c2 = G1.classes, G2.classes
    if len(c1) != len(c2):
        return Equivalence(False, [], f"{len(c1)} vs {len(c2)} isomorphism classes")
    if functor is not None:
        images = [functor[i] for i in range(len(c1))]
        if sorted(images) != list(range(len(c2))):
            return Equivalence(False, [], "functor is not bijective on isomorphism classes")
        pairs = [(c1[i].label, c2[j].label) for i, j in enumerate(images)]
        for i, j in enumerate(images):
            if c1[i].automorphisms != c2[j].automorphisms:
                return Equivalence(False, pairs, f"automorphism orders differ at {c1[i].label}")
        return Equivalence(True, pairs)
    order1 = sorted(range(len(c1)), key=lambda i: (c1[i].automorphisms, i))
    order2 = sorted(range(len(c2)), key=lambda j: (c2[j].automorphisms, j))
    pairs = [(c1[i].label, c2[j].label) for i, j in zip(order1, order2)]
    for i, j in zip(order1, order2):
        if c1[i].automorphisms != c2[j].automorphisms:
            return Equivalence(False, pairs, "automorphism orders do not match")
    return Equivalence(True, pairs)


# --------------------------------------------------------------------------
# first-order expansion

def adjoin_square_zero(g, var="t"):
    """``g ⊗ k[t]/t²``: basis ``x`` and ``t*x`` in each degree."""
    basis = {d: list(g.names(d)) + [f"{var}*{n}" for n in g.names(d)] for d in g.degrees}
    diff = []
    for s, t_, c in g.differential_entries():
        diff += [(s, t_, c), (f"{var}*{s}", f"{var}*{t_}", c)]
    br = []
    for x, y, z, c in g.bracket_entries():
        br += [(x, y, z, c), (x, f"{var}*{y}", f"{var}*{z}", c)]
        if x != y:
            br.append((f"{var}*{x}", y, f"{var}*{z}", c))
    return make_dgla(g.field, basis, diff, br, name=f"{g.name or 'g'}[{var}]/{var}^2",
                     truncated_above=g.truncated_above)


def first_order_term(g, x, y):
    """Coefficient of ``t`` in ``exp(t·x)·y − y`` computed inside ``g ⊗ k[t]/t²``."""
    h = adjoin_square_zero(g)
    n0, n1 = g.dim(0), g.dim(1)
    tx = g.zero(0) + tuple(x)
    yy = tuple(y) + g.zero(1)
    out = gauge_act(h, tx, yy)
    if out[:n1] != tuple(y):
        raise AssertionError("t-constant part of exp(t·x)·y differs from y")
    return out[n1:]
