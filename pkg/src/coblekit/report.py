"""Structured verification reports.

Every check records a stable identifier, the claim it certifies, a status
(pass / fail / evidence-only) and free-form details.  The canonical JSON
form is byte-identical across runs: keys are sorted and the elapsed field
is pinned to zero there (wall-clock times are shown on the human-readable
table instead, since they can never be deterministic).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__

PASS = "pass"
FAIL = "fail"
EVIDENCE = "evidence-only"

# Registry of claims the checks certify.  Identifiers are stable anchors
# used as claim_ref values; the text states the mathematical claim itself.
CLAIMS = {
    "configuration-15-4-10-6": (
        "The 15 pair-partition lines and 10 triple-partition hyperplanes form "
        "a (15_4, 10_6) incidence configuration and every pair of hyperplanes "
        "shares exactly two lines."
    ),
    "configuration-aut-s6": (
        "The automorphism group of the (15_4, 10_6) configuration has order "
        "720 and coincides with the relabeling action of the symmetric group "
        "on six letters."
    ),
    "igusa-equation": (
        "The quartic 4*s4 - s2^2 on {s1 = 0} is invariant under all "
        "coordinate permutations and vanishes on the 15 lines."
    ),
    "igusa-singular-lines": (
        "The quartic threefold is singular along the 15 lines: on each line "
        "all six partials of the quartic agree, so the Jacobian with s1 has "
        "rank one (90 exact polynomial identities)."
    ),
    "igusa-singular-scan": (
        "Over F_p the singular points of the threefold are exactly the "
        "F_p-points of the 15 lines (exhaustive enumeration; evidence for "
        "the tested primes only)."
    ),
    "double-quadric-hyperplanes": (
        "The quartic restricted to each of the 10 special hyperplanes is a "
        "perfect square of a quadric of Gram rank 4."
    ),
    "quadric-rulings": (
        "The six lines on each special hyperplane split 3 + 3 into the two "
        "rulings of its quadric: same-family lines are disjoint, cross-family "
        "lines meet."
    ),
    "hyperplane-stabilizers": (
        "Stabilizer orders of the seven hyperplane families: x1 -> 120, "
        "x1 +- x2 -> 48, x1 + a x2 -> 24, x1 + x2 + x3 -> 72, "
        "x1 + x2 + a x3 -> 12, x1 + a x2 + b x3 -> 6, and the cyclotomic "
        "family x1 + w x2 + w^2 x3 -> 18."
    ),
    "decomposition-signatures": (
        "The four-dimensional hyperplane representation decomposes as an "
        "irreducible or 1 + irreducible only for the two-variable families; "
        "three-variable families are excluded."
    ),
    "section-nodes": (
        "Hyperplane sections by valid forms have 15 pairwise distinct nodes, "
        "each an ordinary double point (chart gradient zero, local quadratic "
        "part of rank 3)."
    ),
    "section-degeneracies": (
        "Degenerate forms fail loudly: x1 - x2 contains singular lines; "
        "x1 + 2 x2 passes through four triple points of the line "
        "configuration and its intersection points collide."
    ),
    "cover-equation": (
        "The branch quartic of the x6 = 0 section coefficient-matches "
        "4*sum(x_i^4) - (sum(x_i^2))^2 in five variables on sum(x_i) = 0."
    ),
    "invariant-triple": (
        "Sections x1 + a x2 = 0 (a not in {0, -1}) contain the three "
        "sign-flip nodes (0:0:1:1:-1:-1), (0:0:1:-1:1:-1), (0:0:1:-1:-1:1) "
        "among their nodes."
    ),
    "projectivity-extension": (
        "The number of configuration automorphisms extending to projectivities "
        "of the section that map all 15 nodes compatibly and preserve the "
        "quartic equals the order of the hyperplane stabilizer."
    ),
    "d5-invariant-ranks": (
        "Fixed-sublattice ranks of the rank-5 signed-permutation model: "
        "A5 -> 1, standard S5 -> 1, twisted S5 -> 0, A5 x C2 -> 0, "
        "S5 x C2 -> 0."
    ),
    "sarkisov-link": (
        "Base-change arithmetic of the three-point link: c = 2a - 2, "
        "d = 1 + 2b, determinant condition a + 2b = +-1, trilinear value "
        "2a^2 - 3b^2; the only integer solution with a > 0 is (1, 0)."
    ),
    "admissible-classification": (
        "Among all subgroup conjugacy classes of the order-240 automorphism "
        "group, exactly three are admissible: the full group, the twisted S5 "
        "and A5 x C2."
    ),
    "node-orbits": (
        "On the x6 section the cyclic group of order five has three node "
        "orbits of size five, each in general position; S5 is transitive on "
        "the 15 nodes with no fixed node."
    ),
}

MODELING_ASSUMPTIONS = [
    "rank-5 lattice model: permutation parts act by permutation matrices and "
    "the deck involution by -Id; validated against the five recorded "
    "invariant-rank facts",
    "effectiveness convention: the base-change solution filter keeps a > 0 "
    "(pullback of an ample class)",
    "finite-field scans are evidence for the tested primes, not a proof for "
    "all characteristics",
]


@dataclass
class Check:
    check_id: str
    claim_ref: str
    status: str
    details: object = ""
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.status not in (PASS, FAIL, EVIDENCE):
            raise ValueError(f"unknown status {self.status}")
        if self.claim_ref not in CLAIMS:
            raise ValueError(f"unknown claim {self.claim_ref}")


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    def add(self, check: Check):
        if any(c.check_id == check.check_id for c in self.checks):
            raise ValueError(f"duplicate check id {check.check_id}")
        self.checks.append(check)

    def extend(self, checks):
        for c in checks:
            self.add(c)

    def sorted_checks(self):
        return sorted(self.checks, key=lambda c: c.check_id)

    @property
    def failed(self):
        return [c for c in self.checks if c.status == FAIL]

    def exit_code(self) -> int:
        return 1 if self.failed else 0

    def to_payload(self, canonical: bool = True) -> dict:
        return {
            "header": {
                "version": __version__,
                "modeling_assumptions": list(MODELING_ASSUMPTIONS),
            },
            "checks": [
                {
                    "check_id": c.check_id,
                    "claim_ref": c.claim_ref,
                    "status": c.status,
                    "details": c.details,
                    "elapsed_ms": 0 if canonical else c.elapsed_ms,
                }
                for c in self.sorted_checks()
            ],
        }

    def to_json(self, canonical: bool = True) -> str:
        return json.dumps(self.to_payload(canonical), sort_keys=True, indent=2) + "\n"

    def table(self) -> str:
        width = max((len(c.check_id) for c in self.checks), default=8)
        lines = [f"{'check':<{width}}  {'status':<13}  {'ms':>6}  details"]
        for c in self.sorted_checks():
            detail = c.details if isinstance(c.details, str) else json.dumps(c.details, sort_keys=True)
            if len(detail) > 100:
                detail = detail[:97] + "..."
            lines.append(f"{c.check_id:<{width}}  {c.status:<13}  {c.elapsed_ms:>6}  {detail}")
        n_fail = len(self.failed)
        lines.append(
            f"{len(self.checks)} checks, "
            f"{len(self.checks) - n_fail} ok, {n_fail} failed"
        )
        return "\n".join(lines)
