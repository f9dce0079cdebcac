"""Command-line entry point: runs the verification suites and emits reports.

Subcommands: config | igusa | scan --prime P | section --form F |
stabilizers | signatures | d5 | sarkisov --bound B | classify | all.
Human-readable table goes to standard output; --json PATH writes the
canonical machine-readable report.  Exit code 0 when no check failed
(evidence-only never fails a run), 1 on any failed check, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache

from .algebra import Cyclo, normalize_projective, proportional_mod
from .configuration import (
    PairPartition,
    TriplePartition,
    build_incidence,
    configuration_automorphisms,
    induced_from_s6,
    pairwise_plane_intersections,
)
from .geometry import (
    IgusaModel,
    LineContainedError,
    NodeCollisionError,
    build_igusa,
    coble_section_equation,
    contains_invariant_triple,
    double_quadric,
    fp_singular_scan,
    hyperplane_section,
    matches_reference_equation,
    node_orbits,
    permute_poly,
    projectivity_extension_count,
    ruling_split,
    verify_node,
    verify_singular_lines,
)
from .groups import (
    FiniteGroup,
    SignedPerm,
    closure,
    decomposition_signature,
    hyperplane_stabilizer,
    symmetric_group,
)
from .report import EVIDENCE, FAIL, PASS, Check, VerificationReport
from .rigidity import (
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

SCAN_PRIMES = (5, 7, 11, 13)
DEFAULT_BOUND = 10_000

FORM_X6 = (0, 0, 0, 0, 0, 1)
FORM_X1_X2 = (1, 1, 0, 0, 0, 0)
FORM_GENERIC = (1, 3, 0, 0, 0, 0)

_TERM_RE = re.compile(r"([+-]?)(\d+(?:/\d+)?)?x([1-6])")


def parse_prime(text: str) -> int:
    from .algebra import is_prime

    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"prime expected, got {text!r}")
    if p < 5 or not is_prime(p):
        raise argparse.ArgumentTypeError(f"scan needs a prime >= 5, got {p}")
    return p


def parse_linear_form(text: str):
    """Mini-grammar for hyperplane forms: signed rational coefficients times
    x1..x6, e.g. 'x1+2x2' or 'x1 - 1/2x3'; whitespace-insensitive."""
    compact = re.sub(r"\s+", "", text)
    if not compact:
        raise argparse.ArgumentTypeError("empty linear form")
    coeffs = [Fraction(0)] * 6
    pos = 0
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if not m or (pos > 0 and not m.group(1)):
            raise argparse.ArgumentTypeError(f"cannot parse linear form {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        coeffs[int(m.group(3)) - 1] += sign * coeff
        pos = m.end()
    if all(c == 0 for c in coeffs):
        raise argparse.ArgumentTypeError("form has no nonzero coefficient")
    return tuple(coeffs)


def form_str(form) -> str:
    parts = []
    for i, c in enumerate(form):
        if c == 0:
            continue
        piece = f"x{i + 1}" if abs(c) == 1 else f"{abs(c)}x{i + 1}"
        parts.append(("-" if c < 0 else "+" if parts else "") + piece)
    return "".join(parts)


@lru_cache(maxsize=1)
def _model() -> IgusaModel:
    return build_igusa()


def _timed(check_id: str, claim: str, fn) -> Check:
    """Run a check body returning (ok, details); never lets exceptions
    escape a suite (unexpected errors become failed checks with a witness)."""
    start = time.perf_counter()
    try:
        ok, details = fn()
        status = PASS if ok else FAIL
    except Exception as exc:  # surface as a structured failure
        status = FAIL
        details = f"{type(exc).__name__}: {exc}"
    elapsed = int((time.perf_counter() - start) * 1000)
    return Check(check_id, claim, status, details, elapsed)


# ---------------------------------------------------------------------------
# suites


def suite_config():
    checks = []

    def counts():
        return (
            len(PairPartition.all()) == 15 and len(TriplePartition.all()) == 10,
            {"lines": len(PairPartition.all()), "hyperplanes": len(TriplePartition.all())},
        )

    checks.append(_timed("config.counts", "configuration-15-4-10-6", counts))

    inc = build_incidence()

    def sums():
        rows = sorted({sum(r) for r in inc.matrix})
        cols = sorted({sum(inc.matrix[i][j] for i in range(15)) for j in range(10)})
        return rows == [4] and cols == [6], {"row_sums": rows, "column_sums": cols}

    checks.append(_timed("config.incidence-sums", "configuration-15-4-10-6", sums))

    def pairs():
        pw = pairwise_plane_intersections(inc)
        total = sum(pw.values())
        return (
            len(pw) == 45 and set(pw.values()) == {2} and total == 90,
            {"pairs": len(pw), "common_lines_each": sorted(set(pw.values())), "total": total},
        )

    checks.append(_timed("config.pairwise-planes", "configuration-15-4-10-6", pairs))

    auts = configuration_automorphisms(inc)

    def order():
        return auts.order == 720, {"order": auts.order}

    checks.append(_timed("config.aut-order", "configuration-aut-s6", order))

    def matches():
        induced = {induced_from_s6(s, inc) for s in symmetric_group(6)}
        return (
            len(induced) == 720 and induced == set(auts.elements),
            {"induced": len(induced), "equal": induced == set(auts.elements)},
        )

    checks.append(_timed("config.aut-matches-relabeling", "configuration-aut-s6", matches))
    return checks


def suite_igusa():
    model = _model()
    checks = []

    def invariance():
        bad = [
            str(sigma)
            for sigma in symmetric_group(6)
            if permute_poly(model.quartic, sigma) != model.quartic
        ]
        return not bad, {"violations": bad}

    checks.append(_timed("igusa.invariance", "igusa-equation", invariance))

    def value():
        v = model.quartic.evaluate([1, -1, 0, 0, 0, 0])
        return v == 4, {"value_at_(1,-1,0,0,0,0)": str(v)}

    checks.append(_timed("igusa.sample-value", "igusa-equation", value))

    def lines():
        return verify_singular_lines(model), {"identities": 90}

    checks.append(_timed("igusa.singular-lines", "igusa-singular-lines", lines))

    def control():
        from .geometry import line_is_singular
        from .poly import LinearParam

        fake = LinearParam.from_columns([[1, 1, -1, -1, 0, 0], [0, 0, 0, 0, 1, -1]])
        return not line_is_singular(model, fake), {
            "line": "x1=x2, x3=x4, x5=-x6",
            "singular": False,
        }

    checks.append(_timed("igusa.negative-control", "igusa-singular-lines", control))
    return checks


def _scan_check(p: int) -> Check:
    start = time.perf_counter()
    try:
        result = fp_singular_scan(_model(), p)
        status = EVIDENCE if result.verdict else FAIL
        details = {
            "prime": p,
            "singular_points": len(result.singular_points),
            "line_points": len(result.line_points),
            "sets_equal": result.verdict,
        }
    except Exception as exc:
        status = FAIL
        details = f"{type(exc).__name__}: {exc}"
    elapsed = int((time.perf_counter() - start) * 1000)
    return Check(f"scan.p{p}", "igusa-singular-scan", status, details, elapsed)


def suite_scan(primes=SCAN_PRIMES):
    with ThreadPoolExecutor(max_workers=worker_count(len(primes))) as pool:
        return list(pool.map(_scan_check, primes))


def _section_checks(form, prefix: str):
    model = _model()
    checks = []
    try:
        section = hyperplane_section(model, form)
    except (LineContainedError, NodeCollisionError) as exc:
        checks.append(
            Check(
                f"{prefix}.nodes",
                "section-nodes",
                FAIL,
                f"{type(exc).__name__}: {exc}",
            )
        )
        return checks

    def nodes():
        distinct = len({n.chart for n in section.nodes.values()})
        odp = [str(a) for a, n in section.nodes.items() if not verify_node(section, n)]
        return distinct == 15 and not odp, {
            "distinct_nodes": distinct,
            "not_ordinary": odp,
        }

    checks.append(_timed(f"{prefix}.nodes", "section-nodes", nodes))

    a_coeff = form[1] if form[0] != 0 else None
    if a_coeff not in (None, 0):

        def triple():
            return contains_invariant_triple(section), {
                "points": ["(0:0:1:1:-1:-1)", "(0:0:1:-1:1:-1)", "(0:0:1:-1:-1:1)"]
            }

        checks.append(_timed(f"{prefix}.invariant-triple", "invariant-triple", triple))

    if normalize_projective(form) == FORM_X6:

        def cover():
            return matches_reference_equation(coble_section_equation(section)), {
                "terms": len(section.surface.terms)
            }

        checks.append(_timed(f"{prefix}.cover-equation", "cover-equation", cover))

    return checks


def suite_section(form):
    return _section_checks(form, f"section[{form_str(form)}]")


def suite_sections_all():
    checks = []
    for form in (FORM_X6, FORM_X1_X2, FORM_GENERIC):
        checks.extend(_section_checks(form, f"section[{form_str(form)}]"))

    def line_contained():
        try:
            hyperplane_section(_model(), (1, -1, 0, 0, 0, 0))
            return False, "degeneracy not detected"
        except LineContainedError as exc:
            return True, {"witness": str(exc)}

    checks.append(_timed("section.degenerate.x1-x2", "section-degeneracies", line_contained))

    def collision():
        try:
            hyperplane_section(_model(), (1, 2, 0, 0, 0, 0))
            return False, "degeneracy not detected"
        except NodeCollisionError as exc:
            return True, {"witness": str(exc)}

    checks.append(_timed("section.degenerate.x1+2x2", "section-degeneracies", collision))

    def quadrics():
        ranks = {str(b): double_quadric(_model(), b).rank for b in TriplePartition.all()}
        return set(ranks.values()) == {4}, {"ranks": ranks}

    checks.append(_timed("section.double-quadrics", "double-quadric-hyperplanes", quadrics))

    def rulings():
        splits = {}
        for b in TriplePartition.all():
            fam1, fam2 = ruling_split(_model(), b)
            splits[str(b)] = [sorted(str(a) for a in fam1), sorted(str(a) for a in fam2)]
        return len(splits) == 10, {"splits": splits}

    checks.append(_timed("section.rulings", "quadric-rulings", rulings))
    return checks


STABILIZER_TABLE = (
    ("x1", (1, 0, 0, 0, 0, 0), 120),
    ("x1+x2", (1, 1, 0, 0, 0, 0), 48),
    ("x1-x2", (1, -1, 0, 0, 0, 0), 48),
    ("x1+2x2", (1, 2, 0, 0, 0, 0), 24),
    ("x1+x2+x3", (1, 1, 1, 0, 0, 0), 72),
    ("x1+x2+2x3", (1, 1, 2, 0, 0, 0), 12),
    ("x1+2x2+3x3", (1, 2, 3, 0, 0, 0), 6),
)


def cyclotomic_form():
    w = Cyclo.omega()
    return (Cyclo(1), w, w * w, Cyclo(0), Cyclo(0), Cyclo(0))


def suite_stabilizers():
    checks = []

    def run_orders():
        got = {name: hyperplane_stabilizer(f).order for name, f, _ in STABILIZER_TABLE}
        got["x1+wx2+w^2x3"] = hyperplane_stabilizer(cyclotomic_form()).order
        want = {name: o for name, _, o in STABILIZER_TABLE}
        want["x1+wx2+w^2x3"] = 18
        return got == want, {"orders": got}

    checks.append(_timed("stabilizers.orders", "hyperplane-stabilizers", run_orders))
    return checks


def form_preserving_subgroup(group: FiniteGroup, form) -> FiniteGroup:
    """Kernel of the scaling character: elements with scale factor exactly 1."""
    from .groups import ONES6

    members = [
        g
        for g in group
        if proportional_mod(g.permute_form(form), form, ONES6)[0] == 1
    ]
    return FiniteGroup(members)


def suite_signatures():
    checks = []

    def run_signatures():
        expected = {
            "x1": "Irreducible4",
            "x1+x2": "OnePlusThree",
            "x1-x2": "OnePlusThree",
            "x1+2x2": "OnePlusThree",
            "x1+x2+x3": "Excluded",
            "x1+x2+2x3": "Excluded",
            "x1+2x2+3x3": "Excluded",
            "x1+wx2+w^2x3": "Excluded",
        }
        got = {}
        for name, form, _ in STABILIZER_TABLE:
            group = hyperplane_stabilizer(form)
            if name == "x1+x2+x3":
                # the full stabilizer of this hyperplane swaps the triples
                # with scale -1 and its 4-dimensional piece is irreducible;
                # the excluded family is the form-preserving half (order 36)
                group = form_preserving_subgroup(group, form)
            got[name] = decomposition_signature(group, form).verdict
        xi = cyclotomic_form()
        got["x1+wx2+w^2x3"] = decomposition_signature(hyperplane_stabilizer(xi), xi).verdict
        return got == expected, {"verdicts": got}

    checks.append(_timed("signatures.families", "decomposition-signatures", run_signatures))
    return checks


def suite_projectivity():
    checks = []
    table = (
        ("x6", FORM_X6, 120),
        ("x1+x2", FORM_X1_X2, 48),
        ("x1+3x2", FORM_GENERIC, 24),
    )
    for name, form, want in table:

        def run(form=form, want=want):
            count = projectivity_extension_count(_model(), form)
            stab = hyperplane_stabilizer(form).order
            return count == want and count == stab, {
                "extensions": count,
                "stabilizer_order": stab,
            }

        checks.append(_timed(f"projectivity.{name}", "projectivity-extension", run))
    return checks


def suite_d5():
    checks = []

    def ranks():
        table = {
            "A5": (alternating_a5(), 1),
            "standard S5": (standard_s5(), 1),
            "twisted S5": (twisted_s5(), 0),
            "A5 x C2": (a5_times_galois(), 0),
            "S5 x C2": (ambient_aut_x6(), 0),
        }
        got = {name: invariant_rank(d5_model(g)) for name, (g, _) in table.items()}
        want = {name: r for name, (_, r) in table.items()}
        return got == want, {"ranks": got}

    checks.append(_timed("d5.invariant-ranks", "d5-invariant-ranks", ranks))
    return checks


def suite_sarkisov(bound: int = DEFAULT_BOUND):
    checks = []

    def run():
        rep = sarkisov_arithmetic(bound)
        ok = (
            rep.c_identity
            and rep.d_identity
            and rep.determinant_is_a_plus_2b
            and rep.trilinear_is_2a2_minus_3b2
            and rep.positive_solutions == ((1, 0),)
        )
        return ok, {
            "bound": bound,
            "determinant": str(rep.determinant),
            "trilinear": str(rep.trilinear),
            "solutions": [list(s) for s in rep.solutions],
            "positive_solutions": [list(s) for s in rep.positive_solutions],
        }

    checks.append(_timed("sarkisov.link-arithmetic", "sarkisov-link", run))
    return checks


def suite_classify():
    checks = []

    def run():
        verdicts = classify_admissible()
        admissible = sorted(v.label for v in verdicts if v.admissible)
        return admissible == ["A5 x C2", "S5 x C2", "twisted S5"], {
            "classes": len(verdicts),
            "admissible": admissible,
            "rejected": len(verdicts) - len(admissible),
        }

    checks.append(_timed("classify.admissible", "admissible-classification", run))
    return checks


def suite_node_orbits():
    checks = []

    def run():
        section = hyperplane_section(_model(), FORM_X6)
        c5 = closure([SignedPerm.from_cycles(6, [(1, 2, 3, 4, 5)])])
        res5 = node_orbits(section, c5)
        sizes = sorted(len(o) for o in res5.orbits)
        general = all(res5.general_position.values()) and len(res5.general_position) == 3
        s5 = standard_s5()
        res_s5 = node_orbits(section, s5)
        transitive = [len(o) for o in res_s5.orbits] == [15]
        ok = (
            sizes == [5, 5, 5]
            and general
            and transitive
            and not res_s5.has_fixed_node
            and not res5.has_fixed_node
        )
        return ok, {
            "c5_orbit_sizes": sizes,
            "c5_general_position": general,
            "s5_transitive": transitive,
        }

    checks.append(_timed("node-orbits.x6", "node-orbits", run))
    return checks


# ---------------------------------------------------------------------------
# orchestration


def worker_count(tasks: int) -> int:
    env = os.environ.get("COBLEKIT_THREADS")
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            cap = 1
    else:
        cap = os.cpu_count() or 1
    return max(1, min(cap, tasks))


def suite_all():
    suites = [
        suite_config,
        suite_igusa,
        suite_scan,
        suite_sections_all,
        suite_stabilizers,
        suite_signatures,
        suite_projectivity,
        suite_d5,
        suite_sarkisov,
        suite_classify,
        suite_node_orbits,
    ]
    checks = []
    with ThreadPoolExecutor(max_workers=worker_count(len(suites))) as pool:
        for result in pool.map(lambda s: s(), suites):
            checks.extend(result)
    return checks


def run(subcommand: str, *, prime=None, form=None, bound=DEFAULT_BOUND) -> VerificationReport:
    """Execute one named suite and return its report."""
    report = VerificationReport()
    if subcommand == "config":
        report.extend(suite_config())
    elif subcommand == "igusa":
        report.extend(suite_igusa())
    elif subcommand == "scan":
        report.extend(suite_scan((prime,) if prime else SCAN_PRIMES))
    elif subcommand == "section":
        report.extend(suite_section(form))
    elif subcommand == "stabilizers":
        report.extend(suite_stabilizers())
    elif subcommand == "signatures":
        report.extend(suite_signatures())
    elif subcommand == "d5":
        report.extend(suite_d5())
    elif subcommand == "sarkisov":
        report.extend(suite_sarkisov(bound))
    elif subcommand == "classify":
        report.extend(suite_classify())
    elif subcommand == "all":
        report.extend(suite_all())
    else:
        raise ValueError(f"unknown subcommand {subcommand}")
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coblekit",
        description="Exact verification suites for the 15-nodal quartic double solid geometry.",
    )
    parser.add_argument("--json", metavar="PATH", help="write the canonical JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("config", help="incidence configuration and its automorphisms")
    sub.add_parser("igusa", help="quartic symmetry and singular-line identities")
    scan = sub.add_parser("scan", help="exhaustive singular scan over a prime field")
    scan.add_argument("--prime", type=parse_prime,
                      help=f"prime >= 5 (default: all of {SCAN_PRIMES})")
    section = sub.add_parser("section", help="node suite for one hyperplane section")
    section.add_argument("--form", type=parse_linear_form, required=True,
                         help="linear form, e.g. x6 or x1+2x2")
    sub.add_parser("stabilizers", help="hyperplane stabilizer orders")
    sub.add_parser("signatures", help="decomposition signatures per family")
    sub.add_parser("d5", help="invariant ranks of the rank-5 lattice model")
    sarkisov = sub.add_parser("sarkisov", help="link base-change arithmetic")
    sarkisov.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                          help="enumeration box half-width (default 10^4)")
    sub.add_parser("classify", help="admissible subgroup classification")
    sub.add_parser("all", help="every suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(
            args.command,
            prime=getattr(args, "prime", None),
            form=getattr(args, "form", None),
            bound=getattr(args, "bound", DEFAULT_BOUND),
        )
    except ValueError as exc:
        parser.error(str(exc))  # exits 2
        return 2
    print(report.table())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json(canonical=True))
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
