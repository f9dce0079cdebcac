"""Symmetry of a section and the rigidity classification.

Which hyperplane can carry an interesting automorphism group is a exact,
finite computation: stabilizer orders, the shape of the four-dimensional
representation cut out by the hyperplane, fixed vectors in a rank-5
lattice, and a two-variable Diophantine system coming from the
intersection numbers of a three-point blow-up.
"""

from coblekit.cli import cyclotomic_form, form_preserving_subgroup
from coblekit.geometry import build_igusa, projectivity_extension_count
from coblekit.groups import decomposition_signature, hyperplane_stabilizer
from coblekit.rigidity import (
    alternating_a5,
    ambient_aut_x6,
    a5_times_galois,
    classify_admissible,
    d5_model,
    invariant_rank,
    sarkisov_arithmetic,
    standard_s5,
    twisted_s5,
)

print("--- hyperplane stabilizers inside S6 (modulo s1) ---")
families = [
    ("x1", (1, 0, 0, 0, 0, 0)),
    ("x1+x2", (1, 1, 0, 0, 0, 0)),
    ("x1+2x2", (1, 2, 0, 0, 0, 0)),
    ("x1+x2+x3", (1, 1, 1, 0, 0, 0)),
    ("x1+x2+2x3", (1, 1, 2, 0, 0, 0)),
    ("x1+2x2+3x3", (1, 2, 3, 0, 0, 0)),
]
for name, form in families:
    stab = hyperplane_stabilizer(form)
    sig = decomposition_signature(stab, form)
    print(f"  {name:<12} order {stab.order:>3}  4-dim piece: {sig.verdict}")
xi = cyclotomic_form()
xi_stab = hyperplane_stabilizer(xi)
print(f"  {'x1+wx2+w^2x3':<12} order {xi_stab.order:>3}  4-dim piece:",
      decomposition_signature(xi_stab, xi).verdict)
half = form_preserving_subgroup(hyperplane_stabilizer((1, 1, 1, 0, 0, 0)), (1, 1, 1, 0, 0, 0))
print(f"  (the form-preserving half of the x1+x2+x3 stabilizer, order {half.order},")
print("   gives", decomposition_signature(half, (1, 1, 1, 0, 0, 0)).verdict,
      "- two 2-dimensional pieces)")
print()

print("--- the three sample sections: section symmetries = stabilizers ---")
model = build_igusa()
for name, form, in [("x6", (0, 0, 0, 0, 0, 1)), ("x1+x2", (1, 1, 0, 0, 0, 0)),
                    ("x1+3x2", (1, 3, 0, 0, 0, 0))]:
    count = projectivity_extension_count(model, form)
    print(f"  {name:<7} {count} node-compatible projectivities"
          f" == stabilizer order {hyperplane_stabilizer(form).order}")
print()

print("--- fixed vectors in the rank-5 lattice ---")
for name, group in [("A5", alternating_a5()), ("standard S5", standard_s5()),
                    ("twisted S5", twisted_s5()), ("A5 x C2", a5_times_galois()),
                    ("S5 x C2", ambient_aut_x6())]:
    print(f"  {name:<12} invariant rank {invariant_rank(d5_model(group))}")
print()

print("--- the three-point link arithmetic ---")
rep = sarkisov_arithmetic(10_000)
print("  determinant of the base change:", rep.determinant, "(must be +-1)")
print("  trilinear value:", rep.trilinear, "= 2")
print("  integer solutions in the box:", rep.solutions,
      "-> with a > 0:", rep.positive_solutions)
print()

print("--- the full classification over all subgroup classes ---")
verdicts = classify_admissible()
print(f"  {len(verdicts)} conjugacy classes of subgroups; admissible:")
for v in verdicts:
    if v.admissible:
        print(f"    {v.label} (order {v.order})")
