"""The one-dimensional obstructed deformation problem, end to end.

g has e in degree 1, f in degree 2 and [e,e] = f.  The tangent space is one
dimensional and the obstruction is quadratic, so the deformation ring is
k[xi]/(xi^2).  Over F5[t]/t^3 this predicts 5 isomorphism classes.
"""
from deligne_kit import builtin_dgla, compare_ce_kuranishi, def_ring, parse_artin, pi0, tensor_with_ideal, theorem2_check

g = builtin_dgla("obstruction", "F7")
print(g)
print("deformation ring:", def_ring(g, 3))
print("CE route agrees:", compare_ce_kuranishi(g, 3).ok)

A = parse_artin("F5[t]/t^3")
g5 = builtin_dgla("obstruction", "F5")
s = pi0(tensor_with_ideal(g5, A))
for c in s.classes:
    print(f"class {c.label}: {c.size} MC elements, {c.automorphisms} automorphisms")
r = theorem2_check(g5, A)
print(f"Hom(Def, A) = {r.lhs}, pi0 = {r.rhs}")
for hom, cls in r.bijection:
    print(f"  {hom}  ->  {cls}")
