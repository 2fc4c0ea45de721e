"""Deformations of small cyclic-group representations and their cochain dgla."""
from deligne_kit import builtin_rep, cohomology, governance_check, governing_dgla, parse_artin, rep_def_groupoid

for name in ("C5-trivial", "C3-trivial", "C5-unipotent", "C3-rot2:F7"):
    rep = builtin_rep(name)
    p = rep.field.characteristic
    g = governing_dgla(rep)
    h = [cohomology(g, k).dim for k in range(3)]
    A = parse_artin(f"F{p}[e]/e^2")
    R = rep_def_groupoid(rep, A)
    gov = governance_check(rep, A)
    print(f"{name}: H^0..H^2 = {h}, lifts {R.summary.objects}, classes {R.summary.count}, "
          f"governed={gov.equivalent}")
