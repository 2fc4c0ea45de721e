"""Descent succeeds on constant covers and fails on a cover whose overlap is zero."""
from deligne_kit import HypothesisNotVerified, builtin_cover, homotopy_sheaf_check, parse_artin, stack_check

A = parse_artin("F5[e]/e^2")
for name in ("constant2:obstruction", "constant3:abelian", "split:obstruction"):
    C = builtin_cover(name)
    print(name, "homotopy sheaf by degree:", homotopy_sheaf_check(C))
    try:
        s = stack_check(C, A)
    except HypothesisNotVerified as e:
        print("  refused:", e)
        s = stack_check(C, A, bypass_hypothesis=True)
    print(f"  global {s.global_classes} classes, descent {s.descent_classes} classes, equivalent={s.equivalent}")
