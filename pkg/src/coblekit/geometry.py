"""The Igusa quartic: singular lines, hyperplane sections and their nodes,
double-quadric hyperplanes, quadric rulings, finite-field scans, and the
projectivity-extension test.

The quartic is F = 4*s4 - s2^2 on the hyperplane {s1 = 0} in P^5.  All
symbolic checks run over Q; the finite-field scan provides exhaustive
evidence over F_p in a chart basis of {s1 = 0}, where singularity of the
threefold is a condition on the chart partials (the ambient gradient of F
on a singular line is proportional to the all-ones vector, not zero).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebra import (
    MatrixQ,
    is_prime,
    kernel_basis,
    normalize_projective,
    proportional_mod,
    rational_mod_p,
)
from .configuration import (
    Incidence,
    PairPartition,
    TriplePartition,
    build_incidence,
    configuration_automorphisms,
    line_param,
)
from .groups import ONES6, FiniteGroup, SignedPerm, symmetric_group
from .poly import (
    LinearParam,
    SmoothPointError,
    SparsePoly,
    gradient,
    local_quadratic_part,
    proportional_polys,
    quadratic_rank,
    restrict,
    perfect_square_root,
)


class LineContainedError(ValueError):
    """A singular line lies inside the hyperplane: the section is degenerate."""

    def __init__(self, alpha: PairPartition):
        super().__init__(f"singular line {alpha} is contained in the hyperplane")
        self.alpha = alpha


class NodeCollisionError(ValueError):
    pass


class SquareRootFailureError(ValueError):
    pass


class NoBipartitionError(ValueError):
    pass


def power_sum(j: int, nvars: int = 6) -> SparsePoly:
    return sum(
        (SparsePoly.variable(nvars, i) ** j for i in range(nvars)),
        SparsePoly.zero(nvars),
    )


def permute_poly(f: SparsePoly, sigma: SignedPerm) -> SparsePoly:
    """f with the substitution x_i -> x_{sigma(i)} (unsigned sigma)."""
    if not sigma.is_unsigned() or sigma.n != f.nvars:
        raise ValueError("permute_poly needs an unsigned permutation of matching size")
    terms = {}
    for exp, c in f.terms.items():
        new = [0] * f.nvars
        for i, e in enumerate(exp):
            new[sigma.images[i]] = e
        terms[tuple(new)] = c
    return SparsePoly(f.nvars, terms)


@dataclass(frozen=True)
class IgusaModel:
    quartic: SparsePoly  # 4*s4 - s2^2 in six variables
    hyperplane: SparsePoly  # s1
    lines: dict  # PairPartition -> LinearParam

    @property
    def F(self) -> SparsePoly:
        return self.quartic


def build_igusa() -> IgusaModel:
    """Construct the quartic and the 15 singular-line parametrizations.

    Construction-time checks: every line lies in {s1 = 0} and on the
    quartic, and the quartic is invariant under generators of the full
    coordinate-permutation action.
    """
    s1 = power_sum(1)
    F = 4 * power_sum(4) - power_sum(2) ** 2
    lines = {alpha: line_param(alpha) for alpha in PairPartition.all()}
    for alpha, param in lines.items():
        if not restrict(s1, param).is_zero():
            raise AssertionError(f"line {alpha} is not inside s1 = 0")
        if not restrict(F, param).is_zero():
            raise AssertionError(f"line {alpha} does not lie on the quartic")
    for gen in (
        SignedPerm.from_cycles(6, [(1, 2)]),
        SignedPerm.from_cycles(6, [(1, 2, 3, 4, 5, 6)]),
    ):
        if permute_poly(F, gen) != F:
            raise AssertionError("quartic is not symmetric under coordinate permutations")
    return IgusaModel(F, s1, lines)


def restricted_partials(model: IgusaModel, alpha: PairPartition):
    """The six ambient partials of F restricted to one singular line."""
    param = model.lines[alpha]
    return tuple(restrict(g, param) for g in gradient(model.quartic))


def tangential_partials(partials):
    """Components of the gradient orthogonal to the s1-direction: each
    partial minus the mean.  Vanishing of all six is the rank-one Jacobian
    condition, i.e. singularity of the threefold inside {s1 = 0}."""
    mean = sum(partials[1:], partials[0]) * Fraction(1, len(partials))
    return tuple(p - mean for p in partials)


def verify_singular_lines(model: IgusaModel) -> bool:
    """All 90 identities: on each of the 15 lines, each of the 6 partials of
    F agrees with their common value (the gradient is proportional to the
    gradient of s1, so the line is singular on the threefold)."""
    for alpha in model.lines:
        parts = restricted_partials(model, alpha)
        if any(not t.is_zero() for t in tangential_partials(parts)):
            return False
    return True


def line_is_singular(model: IgusaModel, param: LinearParam) -> bool:
    """Same tangential-gradient test for an arbitrary parametrized line
    inside {s1 = 0} (negative controls use this)."""
    if not restrict(model.hyperplane, param).is_zero():
        raise ValueError("line does not lie inside s1 = 0")
    parts = tuple(restrict(g, param) for g in gradient(model.quartic))
    return all(t.is_zero() for t in tangential_partials(parts)) and restrict(
        model.quartic, param
    ).is_zero()


# ---------------------------------------------------------------------------
# finite-field scan


@dataclass(frozen=True)
class ScanResult:
    p: int
    singular_points: frozenset  # normalized 6-coordinate tuples mod p
    line_points: frozenset  # independent enumeration of the 15 lines
    verdict: bool


def _poly_terms_mod_p(f: SparsePoly, p: int):
    out = []
    for exp, c in f.terms.items():
        cm = rational_mod_p(c, p)
        if cm:
            out.append((cm, tuple((i, e) for i, e in enumerate(exp) if e)))
    return out


def _eval_terms(terms, pows, p: int) -> int:
    total = 0
    for c, exps in terms:
        v = c
        for i, e in exps:
            v = v * pows[i][e] % p
        total += v
    return total % p


def _normalize_mod_p(vec, p: int):
    lead = next((x for x in vec if x % p), None)
    if lead is None:
        return None
    inv = pow(lead, p - 2, p)
    return tuple(x * inv % p for x in vec)


@lru_cache(maxsize=1)
def _s1_chart() -> LinearParam:
    basis = kernel_basis(MatrixQ.from_rows([[1] * 6]))
    return LinearParam.from_columns(basis)


def fp_singular_scan(model: IgusaModel, p: int) -> ScanResult:
    """Exhaustive enumeration of the singular points of the threefold over
    F_p, compared against the union of the 15 lines' F_p-points.

    Works in a 5-vector chart basis of {s1 = 0}, so {s1 = 0} is a P^4 with
    p^4 + p^3 + p^2 + p + 1 points; a point with leading coordinate 1 is
    singular iff the restricted quartic and its other four chart partials
    vanish (the remaining partial then vanishes by the Euler relation).
    This is evidence, not proof: the verdict covers exactly the tested p.
    """
    if p < 5 or not is_prime(p):
        raise ValueError(f"scan needs a prime >= 5, got {p}")
    chart = _s1_chart()
    g = restrict(model.quartic, chart)
    g_terms = _poly_terms_mod_p(g, p)
    partial_terms = [_poly_terms_mod_p(d, p) for d in gradient(g)]
    bmat = [[int(x) for x in chart.matrix.row(i)] for i in range(6)]

    found = set()
    nv = 5
    point = [0] * nv
    for lead in range(nv):
        point[:lead] = [0] * lead
        point[lead] = 1
        free = list(range(lead + 1, nv))

        def visit():
            pows = [
                [1, v, v * v % p, v * v * v % p, v * v * v * v % p]
                for v in point
            ]
            if _eval_terms(g_terms, pows, p):
                return
            for j in range(nv):
                if j == lead:
                    continue
                if _eval_terms(partial_terms[j], pows, p):
                    return
            amb = [
                sum(bmat[i][k] * point[k] for k in range(nv)) % p for i in range(6)
            ]
            found.add(_normalize_mod_p(amb, p))

        def rec(idx: int):
            if idx == len(free):
                visit()
                return
            for v in range(p):
                point[free[idx]] = v
                rec(idx + 1)

        rec(0)

    line_pts = set()
    for param in model.lines.values():
        cols = [[int(x) % p for x in param.matrix.column(j)] for j in range(2)]
        for t, u in [(1, 0)] + [(v, 1) for v in range(p)]:
            amb = [(cols[0][i] * t + cols[1][i] * u) % p for i in range(6)]
            norm = _normalize_mod_p(amb, p)
            if norm is None:
                raise AssertionError("line parametrization degenerates mod p")
            line_pts.add(norm)

    return ScanResult(
        p=p,
        singular_points=frozenset(found),
        line_points=frozenset(line_pts),
        verdict=found == line_pts,
    )


# ---------------------------------------------------------------------------
# hyperplane sections and nodes


@dataclass(frozen=True)
class Node:
    label: PairPartition
    chart: tuple  # normalized coordinates in the section chart (length 4)
    ambient: tuple  # normalized coordinates in the six ambient variables


class SectionModel:
    """A hyperplane section of the quartic: the surface S in a chart of
    {s1 = ell = 0} together with its 15 labeled nodes."""

    def __init__(self, ell, chart: LinearParam, surface: SparsePoly, nodes):
        self.ell = tuple(Fraction(x) for x in ell)
        self.chart = chart
        self.surface = surface
        self.nodes = dict(nodes)  # PairPartition -> Node, canonical order

    @property
    def S(self) -> SparsePoly:
        return self.surface


def hyperplane_section(model: IgusaModel, ell) -> SectionModel:
    """Cut the quartic by a hyperplane ell (modulo s1).

    Errors: a form proportional to s1 does not define a hyperplane; a line
    contained in the hyperplane or a collision among the 15 intersection
    points are degeneracies that are raised loudly, never skipped.
    """
    ell = tuple(Fraction(x) for x in ell)
    if len(ell) != 6:
        raise ValueError("hyperplane form needs 6 coefficients")
    if all(ell[i] == ell[0] for i in range(6)):
        raise ValueError("form proportional to s1 does not define a hyperplane")

    ell_poly = SparsePoly.linear_form(ell)
    chart = LinearParam.from_columns(
        kernel_basis(MatrixQ.from_rows([[1] * 6, list(ell)]))
    )
    assert chart.source_vars == 4
    surface = restrict(model.quartic, chart)

    nodes = {}
    seen = {}
    for alpha, param in model.lines.items():
        rho = restrict(ell_poly, param)
        a = rho.coefficient((1, 0))
        b = rho.coefficient((0, 1))
        if a == 0 and b == 0:
            raise LineContainedError(alpha)
        ambient = param.apply((b, -a))
        ambient_n = normalize_projective(ambient)
        chart_coords = chart.matrix.solve(ambient)
        chart_n = normalize_projective(chart_coords)
        if chart_n in seen:
            raise NodeCollisionError(
                f"lines {seen[chart_n]} and {alpha} meet the hyperplane at the same point"
            )
        seen[chart_n] = alpha
        if surface.evaluate(chart_n) != 0:
            raise AssertionError("intersection point does not lie on the section")
        nodes[alpha] = Node(alpha, chart_n, ambient_n)
    return SectionModel(ell, chart, surface, nodes)


def verify_node(section: SectionModel, node: Node) -> bool:
    """Ordinary double point test: the chart gradient of S vanishes at the
    node and the local quadratic part has full rank 3."""
    if section.nodes.get(node.label) != node:
        raise ValueError("node does not belong to this section")
    point = node.chart
    if section.surface.evaluate(point) != 0:
        return False
    try:
        hessian = local_quadratic_part(section.surface, point)
    except SmoothPointError:
        return False
    return hessian.rank() == 3


# ---------------------------------------------------------------------------
# double quadrics and rulings


@dataclass(frozen=True)
class DoubleQuadric:
    beta: TriplePartition
    chart: LinearParam
    quadric: SparsePoly
    rank: int
    scale: Fraction  # quadric^2 == scale * restricted quartic


def double_quadric(model: IgusaModel, beta: TriplePartition) -> DoubleQuadric:
    """The quartic restricted to a special hyperplane is a perfect square;
    return the quadric and its Gram rank."""
    chart = LinearParam.from_columns(
        kernel_basis(MatrixQ.from_rows([[1] * 6, list(beta.form())]))
    )
    restricted = restrict(model.quartic, chart)
    q = perfect_square_root(restricted)
    if q is None or q.is_zero():
        raise SquareRootFailureError(
            f"restriction to {beta} is not a double quadric"
        )
    lead = min(restricted.terms)
    scale = Fraction(1) / restricted.terms[lead]
    return DoubleQuadric(beta, chart, q, quadratic_rank(q), scale)


def lines_meet(p1: LinearParam, p2: LinearParam) -> bool:
    """Two lines in P^5 meet iff their combined parametrization matrix drops
    rank (a nonzero solution of l1(t,u) = l2(t',u') exists)."""
    combined = MatrixQ(
        6,
        4,
        [
            x
            for i in range(6)
            for x in (
                p1.matrix.entry(i, 0),
                p1.matrix.entry(i, 1),
                p2.matrix.entry(i, 0),
                p2.matrix.entry(i, 1),
            )
        ],
    )
    return combined.rank() < 4


def ruling_split(model: IgusaModel, beta: TriplePartition):
    """Split the six lines on a special hyperplane into the two rulings of
    its quadric: 3 + 3 with same-family lines disjoint and cross-family
    lines meeting."""
    incident = [
        alpha
        for alpha in PairPartition.all()
        if restrict(SparsePoly.linear_form(beta.form()), model.lines[alpha]).is_zero()
    ]
    if len(incident) != 6:
        raise AssertionError(f"{beta} is incident to {len(incident)} != 6 lines")
    meets = {
        (i, j): lines_meet(model.lines[incident[i]], model.lines[incident[j]])
        for i in range(6)
        for j in range(i + 1, 6)
    }

    def meet(i, j):
        return meets[(i, j) if i < j else (j, i)]

    first_family = [0] + [i for i in range(1, 6) if not meet(0, i)]
    second_family = [i for i in range(1, 6) if meet(0, i)]
    if len(first_family) != 3 or len(second_family) != 3:
        raise NoBipartitionError(f"lines on {beta} do not split 3 + 3")
    for fam in (first_family, second_family):
        for i, j in combinations(fam, 2):
            if meet(i, j):
                raise NoBipartitionError("same-family lines are not disjoint")
    for i in first_family:
        for j in second_family:
            if not meet(i, j):
                raise NoBipartitionError("cross-family lines do not meet")
    return (
        tuple(incident[i] for i in first_family),
        tuple(incident[i] for i in second_family),
    )


# ---------------------------------------------------------------------------
# projectivity extension


@lru_cache(maxsize=1)
def _configuration() -> tuple:
    inc = build_incidence()
    return inc, configuration_automorphisms(inc)


def _frame_matrix(points):
    """4x4 matrix sending the standard projective frame of P^3 to five
    points in general position; None when the points are degenerate."""
    a = MatrixQ(4, 4, [Fraction(points[j][i]) for i in range(4) for j in range(4)])
    if a.rank() < 4:
        return None
    w = a.solve([Fraction(x) for x in points[4]])
    if any(x == 0 for x in w):
        return None
    scaled = [
        [a.entry(i, j) * w[j] for j in range(4)] for i in range(4)
    ]
    return MatrixQ.from_rows(scaled)


def _proportional_points(u, v) -> bool:
    return all(
        u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u))
    )


def projectivity_extension_count(model: IgusaModel, ell) -> int:
    """Number of configuration automorphisms that extend to a projectivity
    of the section's P^3 mapping all 15 nodes compatibly and preserving the
    quartic surface up to scalar."""
    section = hyperplane_section(model, ell)
    inc, auts = _configuration()
    node_pts = [section.nodes[alpha].chart for alpha in inc.lines]

    base = None
    for combo in combinations(range(15), 5):
        pts = [node_pts[i] for i in combo]
        if all(
            MatrixQ.from_rows([pts[k] for k in sub]).rank() == 4
            for sub in combinations(range(5), 4)
        ):
            base = combo
            break
    if base is None:
        raise ValueError("no 5 nodes in general position")

    src = _frame_matrix([node_pts[i] for i in base])
    if src is None:
        raise AssertionError("base frame construction failed despite general position")
    src_inv = src.inverse()

    count = 0
    for aut in auts:
        targets = [node_pts[aut.line_map[i]] for i in base]
        dst = _frame_matrix(targets)
        if dst is None:
            continue
        t = dst * src_inv
        if not all(
            _proportional_points(t.apply(node_pts[i]), node_pts[aut.line_map[i]])
            for i in range(15)
        ):
            continue
        pulled = restrict(section.surface, LinearParam(t))
        if proportional_polys(pulled, section.surface) is None:
            continue
        count += 1
    return count


# ---------------------------------------------------------------------------
# node orbits


@dataclass(frozen=True)
class NodeOrbits:
    orbits: tuple  # tuple of frozensets of PairPartition
    has_fixed_node: bool
    general_position: dict  # orbit index -> bool, for orbits of size 5


def node_orbits(section: SectionModel, group: FiniteGroup) -> NodeOrbits:
    """Orbits of the group on the 15 nodes via relabeling of partitions.

    Every element's permutation part must stabilize the hyperplane.  For
    each orbit of size five, checks that every four of the five node images
    span the section's P^3."""
    for g in group:
        perm = SignedPerm(g.images)
        if proportional_mod(perm.permute_form(section.ell), section.ell, ONES6) is None:
            raise ValueError("group does not stabilize the hyperplane")

    labels = list(section.nodes)
    remaining = set(labels)
    orbits = []
    for alpha in labels:
        if alpha not in remaining:
            continue
        orbit = {alpha}
        frontier = [alpha]
        while frontier:
            x = frontier.pop()
            for g in group:
                y = x.apply(SignedPerm(g.images))
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        remaining -= orbit
        orbits.append(frozenset(orbit))
    orbits.sort(key=lambda o: sorted(a.sort_key() for a in o))

    general = {}
    for idx, orbit in enumerate(orbits):
        if len(orbit) != 5:
            continue
        pts = [section.nodes[a].chart for a in sorted(orbit, key=lambda a: a.sort_key())]
        general[idx] = all(
            MatrixQ.from_rows([pts[k] for k in sub]).rank() == 4
            for sub in combinations(range(5), 4)
        )
    return NodeOrbits(
        orbits=tuple(orbits),
        has_fixed_node=any(len(o) == 1 for o in orbits),
        general_position=general,
    )


# ---------------------------------------------------------------------------
# the weighted double-cover equation


@dataclass(frozen=True)
class CobleSection:
    """Weighted equation y^2 = S of the double cover branched in the
    section surface; the branch locus is the section's quartic itself."""

    section: SectionModel

    @property
    def branch_locus(self) -> SparsePoly:
        return self.section.surface


def coble_section_equation(section: SectionModel) -> CobleSection:
    return CobleSection(section)


def matches_reference_equation(cs: CobleSection) -> bool:
    """For the x6 = 0 section: the branch locus agrees coefficient-by-
    coefficient with 4*sum(x_i^4) - (sum(x_i^2))^2 in the first five
    variables, restricted to the same chart of {sum x_i = 0}."""
    section = cs.section
    if normalize_projective(section.ell) != (0, 0, 0, 0, 0, 1):
        raise ValueError("reference form is stated for the hyperplane x6 = 0")
    quartic5 = 4 * sum(
        (SparsePoly.variable(6, i) ** 4 for i in range(5)), SparsePoly.zero(6)
    ) - sum((SparsePoly.variable(6, i) ** 2 for i in range(5)), SparsePoly.zero(6)) ** 2
    return restrict(quartic5, section.chart) == section.surface


# Sign-flip triple: ambient coordinates of the three nodes that form one
# orbit on every section x1 + a*x2 = 0 with a != 0, -1 (the three pairings
# of {3,4,5,6} with {1,2} paired together).
INVARIANT_TRIPLE = (
    (0, 0, 1, 1, -1, -1),
    (0, 0, 1, -1, 1, -1),
    (0, 0, 1, -1, -1, 1),
)


def contains_invariant_triple(section: SectionModel) -> bool:
    ambients = {node.ambient for node in section.nodes.values()}
    return all(normalize_projective(p) in ambients for p in INVARIANT_TRIPLE)
