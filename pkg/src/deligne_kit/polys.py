"""Commutative polynomials with truncation by total degree.

A polynomial is a dict ``{exponent_tuple: coefficient}``; coefficients may be
field scalars or coefficient vectors (tuples), which is how Kuranishi germs
``y(ξ)`` are stored.
"""
from __future__ import annotations

from itertools import combinations_with_replacement


def monomials(nvars, maxdeg, mindeg=0):
    """Exponent tuples of total degree in ``[mindeg, maxdeg]`` in graded-lex order.

    Within one degree the order is lexicographically decreasing in the
    exponents, so ``x`` precedes ``y`` and ``x^2, x*y, y^2`` come in that order.
    """
    out = []
    for deg in range(mindeg, maxdeg + 1):
        block = []
        for combo in combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            block.append(tuple(e))
        block.sort(reverse=True)
        out.extend(block)
    return out


def degree(e):
    return sum(e)


def add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_name(e, names):
    parts = []
    for v, k in zip(names, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) if parts else "1"


def poly_mul(field, p, q, maxdeg):
    red = field.reduce
    out = {}
    for e1, c1 in p.items():
        d1 = sum(e1)
        for e2, c2 in q.items():
            if d1 + sum(e2) > maxdeg:
                continue
            e = add_exp(e1, e2)
            out[e] = out.get(e, 0) + c1 * c2
    return {e: red(c) for e, c in out.items() if red(c)}


def poly_add(field, p, q, scale=1):
    red = field.reduce
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: red(c) for e, c in out.items() if red(c)}


def poly_str(field, p, names):
    if not p:
        return "0"
    terms = []
    for e in sorted(p, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = p[e]
        mono = monomial_name(e, names)
        cs = field.format(c)
        if mono == "1":
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        else:
            terms.append(f"{cs}*{mono}")
    return " + ".join(terms)
