"""The (15_4, 10_6) configuration and its automorphisms.

Ten special hyperplanes (one per partition of the six letters into two
triples) each contain six of the fifteen singular lines, and every line
lies on four of the hyperplanes.  The automorphism group of this incidence
structure is exactly the relabeling action of the symmetric group S6.
"""

from coblekit.configuration import (
    PairPartition,
    TriplePartition,
    build_incidence,
    configuration_automorphisms,
    induced_from_s6,
    pairwise_plane_intersections,
)
from coblekit.groups import SignedPerm, symmetric_group

inc = build_incidence()
print("lines:", len(inc.lines), " hyperplanes:", len(inc.planes))
print("row sums (lines-on-hyperplanes):", sorted({sum(r) for r in inc.matrix}))
print("column sums:", sorted({sum(inc.matrix[i][j] for i in range(15)) for j in range(10)}))
print()

alpha = PairPartition([(1, 2), (3, 4), (5, 6)])
beta = TriplePartition([(1, 3, 5), (2, 4, 6)])
print(f"Is {alpha} on {beta}?  {inc.incident(alpha, beta)}")
print(f"Is {alpha} on 123|456?  {inc.incident(alpha, TriplePartition([(1,2,3),(4,5,6)]))}")
print()

pw = pairwise_plane_intersections(inc)
print("all 45 hyperplane pairs share exactly two lines:",
      set(pw.values()) == {2})
print()

auts = configuration_automorphisms(inc)
print("automorphism group order (by exhaustive backtracking):", auts.order)
induced = {induced_from_s6(s, inc) for s in symmetric_group(6)}
print("equals the image of the 720 relabelings:", induced == set(auts.elements))

swap = induced_from_s6(SignedPerm.from_cycles(6, [(1, 2)]), inc)
moved = PairPartition([(1, 3), (2, 4), (5, 6)])
print(f"the transposition (1 2) sends {moved} to",
      inc.lines[swap.line_map[inc.lines.index(moved)]])
