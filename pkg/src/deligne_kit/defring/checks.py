"""Comparisons between the cochain, Kuranishi and groupoid descriptions of deformations."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from ..artin import enumerate_homs
from ..deligne import is_maurer_cartan, pi0
from ..dgla import tensor_with_ideal
from ..glin import Matrix, kernel_basis, span_basis
from ..polys import poly_mul
from ..report import ValidationReport
from .ce import ce_truncation
from .kuranishi import def_ring, require_h0_zero


def _germ_coordinates(kd):
    """``y(ξ)_a`` as polynomials, one per basis element ``a`` of ``g¹``."""
    n1 = kd.g.dim(1)
    out = [dict() for _ in range(n1)]
    for e, v in kd.germ.items():
        for a, c in enumerate(v):
            if c:
                out[a][e] = c
    return out


@dataclass
class CEComparison:
    ok: bool
    report: ValidationReport
    ce_dim: int
    def_dim: int
    matrix: Matrix = dc_field(repr=False)
    ce: object = dc_field(default=None, repr=False)
    presentation: object = dc_field(default=None, repr=False)

    def to_json(self):
        return {"ok": self.ok, "ce_dim": self.ce_dim, "def_ring_dim": self.def_dim,
                "presentation": str(self.presentation), "checks": self.report.to_json()["checks"]}


def compare_ce_kuranishi(g, N, W=None):
    """Restrict degree-0 CE cocycles along ``ξ ↦ y(ξ)`` and test that this is an isomorphism to order ``N``.

    The map sends ``t_a`` (``a ∈ g¹``) to the ``a``-coordinate of the
    Kuranishi germ and every other letter to 0.  It must kill coboundaries,
    be multiplicative, be onto the presented ring, and have kernel ``m^{N+1}``.
    """
    require_h0_zero(g)
    W = N + 1 if W is None else W
    F = g.field
    pres = def_ring(g, N)
    R = pres.as_artin()
    ce = ce_truncation(g, W)
    L = ce.letters
    coords = _germ_coordinates(pres.kuranishi)
    nv = pres.kuranishi.nvars
    one = {tuple([0] * nv): F.one}
    g1_letters = {L.index[(1, a)]: a for a in range(g.dim(1))}

    def phi_word(w):
        if any(x not in g1_letters for x in w):
            return {}
        p = one
        for x in w:
            p = poly_mul(F, p, coords[g1_letters[x]], N)
        return p

    word_images = [R.normal_form(phi_word(w)) for w in ce.words[0]]

    def phi(vec):
        out = [0] * R.dim
        for c, img in zip(vec, word_images):
            if c:
                for k, x in enumerate(img):
                    if x:
                        out[k] += c * x
        return tuple(F.reduce(x) for x in out)

    rep = ValidationReport(f"CE vs Kuranishi, N={N}, W={W}")
    dm = ce.cochain_d[-1]
    bad = None
    for j, w in enumerate(ce.words[1]):
        if any(phi(dm.col(j))):
            bad = (L.word_name(w, "t_"),)
            break
    rep.add("kills_coboundaries", bad)

    A = ce.algebra
    images = [phi(r) for r in ce.algebra_reps]
    M = Matrix.from_columns(F, images, R.dim)
    bad = None
    for i in range(A.dim):
        for j in range(A.dim):
            prod = A.mul(A.basis_vector(i), A.basis_vector(j))
            lhs = M.apply(prod)
            rhs = R.mul(images[i], images[j])
            if lhs != rhs:
                bad = (A.names[i], A.names[j])
                break
        if bad:
            break
    rep.add("multiplicative", bad)
    rep.add("surjective", None if M.rank() == R.dim else (f"rank {M.rank()} < {R.dim}",))
    ker = span_basis(F, kernel_basis(M), A.dim) if A.dim else []
    mN = A.m_power_basis(N + 1)
    rep.add("kernel_is_m^(N+1)", None if ker == mN else (f"dim ker {len(ker)}", f"dim m^{N + 1} {len(mN)}"))
    return CEComparison(rep.ok, rep, A.dim, R.dim, M, ce, pres)


@dataclass
class Theorem2Result:
    lhs: int
    rhs: int
    match: bool
    bijection: list        # (hom label, class label) per hom
    presentation: object = dc_field(repr=False)
    pi0: object = dc_field(repr=False)
    failures: list = dc_field(default_factory=list)

    def to_json(self):
        out = {"lhs": self.lhs, "rhs": self.rhs, "match": self.match,
               "presentation": str(self.presentation),
               "bijection": [list(p) for p in self.bijection]}
        if self.failures:
            out["failures"] = self.failures
        return out


def _generator_images(pres, phi):
    R = phi.source
    return [phi.images[R.m_names.index(nm)] for nm in pres.generators]


def hom_label(pres, phi):
    B = phi.target
    if not pres.generators:
        return "unique"
    return ", ".join(f"{nm}->{B.format(v)}" for nm, v in zip(pres.generators, _generator_images(pres, phi)))


def hom_to_mc(pres, phi):
    """``y(φ(ξ))`` in ``m_A ⊗ g¹``."""
    return pres.kuranishi.evaluate(phi.target, _generator_images(pres, phi))


def theorem2_check(g, A, N=None):
    """Compare ``Hom(Def_N, A)`` with ``π₀(m_A ⊗ g)`` through ``φ ↦ [y(φ(ξ))]``.

    ``N`` defaults to the nilpotency order of ``m_A``.
    """
    require_h0_zero(g)
    order = A.nilpotency_order()
    N = order if N is None else N
    if N < order:
        raise ValueError(f"order {N} is below the nilpotency order {order} of m_A")
    pres = def_ring(g, N)
    R = pres.as_artin()
    homs = enumerate_homs(R, A)
    h = tensor_with_ideal(g, A)
    summary = pi0(h)
    failures = []
    images = []
    pairs = []
    for phi in homs:
        y = hom_to_mc(pres, phi)
        if not is_maurer_cartan(h, y):
            failures.append(f"y({hom_label(pres, phi)}) is not Maurer-Cartan")
            continue
        cls = summary.class_of[y]
        images.append(cls)
        pairs.append((hom_label(pres, phi), summary.classes[cls].label))
    bijective = not failures and sorted(images) == list(range(summary.count))
    if not bijective and not failures:
        failures.append("the map from homomorphisms to gauge classes is not bijective")
    match = bijective and len(homs) == summary.count
    return Theorem2Result(len(homs), summary.count, match, pairs, pres, summary, failures)


def push_forward(f, y):
    """``(f ⊗ 1)(y)`` from ``m_A ⊗ g¹`` to ``m_B ⊗ g¹``."""
    A, B = f.source, f.target
    n1 = len(y) // A.m_dim if A.m_dim else 0
    out = [0] * (B.m_dim * n1)
    for p in range(A.m_dim):
        img = f.images[p]
        for q in range(B.m_dim):
            c = img[q + 1]
            if c:
                for j in range(n1):
                    if y[p * n1 + j]:
                        out[q * n1 + j] += c * y[p * n1 + j]
    return tuple(B.field.reduce(x) for x in out)


def naturality_check(g, f, N=None):
    """For ``f: A → B``, check ``[y(f∘φ)] = (f⊗1)[y(φ)]`` for every ``φ ∈ Hom(Def, A)``."""
    A, B = f.source, f.target
    N = max(A.nilpotency_order(), B.nilpotency_order()) if N is None else N
    pres = def_ring(g, N)
    R = pres.as_artin()
    sB = pi0(tensor_with_ideal(g, B))
    rep = ValidationReport(f"naturality {A.label} -> {B.label}")
    bad = None
    for phi in enumerate_homs(R, A):
        direct = hom_to_mc(pres, f.compose(phi))
        pushed = push_forward(f, hom_to_mc(pres, phi))
        if sB.class_of.get(direct) is None or sB.class_of.get(direct) != sB.class_of.get(pushed):
            bad = (hom_label(pres, phi),)
            break
    rep.add("square_commutes", bad)
    return rep
