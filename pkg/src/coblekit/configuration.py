"""The (15_4, 10_6) incidence configuration of singular lines and special
hyperplanes, and its automorphism group.

Lines are indexed by partitions of {1..6} into three pairs (15 of them),
hyperplanes by partitions into two triples (10 of them).  Incidence is
computed geometrically, by restricting the hyperplane form to the line
parametrization, and cross-checked against the purely combinatorial
transversality criterion.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .algebra import MatrixQ
from .groups import FiniteGroup, SignedPerm
from .poly import LinearParam, SparsePoly, restrict

LETTERS = (1, 2, 3, 4, 5, 6)


class PairPartition:
    """Partition of {1..6} into three unordered pairs, e.g. 12|34|56."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        norm = tuple(sorted(tuple(sorted(p)) for p in pairs))
        flat = [x for p in norm for x in p]
        if len(norm) != 3 or any(len(p) != 2 for p in norm) or sorted(flat) != list(LETTERS):
            raise ValueError(f"not a partition of 1..6 into three pairs: {pairs}")
        self.pairs = norm

    @staticmethod
    @lru_cache(maxsize=1)
    def all() -> tuple:
        out = []
        for mate in range(2, 7):
            rest = [x for x in LETTERS if x not in (1, mate)]
            for second_mate in rest[1:]:
                last = [x for x in rest if x not in (rest[0], second_mate)]
                out.append(
                    PairPartition([(1, mate), (rest[0], second_mate), tuple(last)])
                )
        out = tuple(sorted(out, key=lambda a: a.pairs))
        assert len(out) == 15
        return out

    def apply(self, sigma: SignedPerm) -> "PairPartition":
        if sigma.n != 6 or not sigma.is_unsigned():
            raise ValueError("relabeling requires an unsigned permutation of 6 letters")
        return PairPartition(
            [(sigma.images[a - 1] + 1, sigma.images[b - 1] + 1) for a, b in self.pairs]
        )

    def sort_key(self):
        return self.pairs

    def __eq__(self, other):
        return isinstance(other, PairPartition) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __str__(self):
        return "|".join(f"{a}{b}" for a, b in self.pairs)

    def __repr__(self):
        return f"PairPartition({self})"


class TriplePartition:
    """Partition of {1..6} into two unordered triples, e.g. 123|456."""

    __slots__ = ("triples",)

    def __init__(self, triples):
        norm = tuple(sorted(tuple(sorted(t)) for t in triples))
        flat = [x for t in norm for x in t]
        if len(norm) != 2 or any(len(t) != 3 for t in norm) or sorted(flat) != list(LETTERS):
            raise ValueError(f"not a partition of 1..6 into two triples: {triples}")
        self.triples = norm

    @staticmethod
    @lru_cache(maxsize=1)
    def all() -> tuple:
        out = []
        for pair in combinations(LETTERS[1:], 2):
            first = (1,) + pair
            second = tuple(x for x in LETTERS if x not in first)
            out.append(TriplePartition([first, second]))
        out = tuple(sorted(out, key=lambda b: b.triples))
        assert len(out) == 10
        return out

    def apply(self, sigma: SignedPerm) -> "TriplePartition":
        if sigma.n != 6 or not sigma.is_unsigned():
            raise ValueError("relabeling requires an unsigned permutation of 6 letters")
        return TriplePartition(
            [tuple(sigma.images[x - 1] + 1 for x in t) for t in self.triples]
        )

    def form(self) -> tuple:
        """Coefficients of the sum over the first triple, x_a + x_b + x_c."""
        coeffs = [Fraction(0)] * 6
        for x in self.triples[0]:
            coeffs[x - 1] = Fraction(1)
        return tuple(coeffs)

    def sort_key(self):
        return self.triples

    def __eq__(self, other):
        return isinstance(other, TriplePartition) and self.triples == other.triples

    def __hash__(self):
        return hash(self.triples)

    def __str__(self):
        return "|".join("".join(str(x) for x in t) for t in self.triples)

    def __repr__(self):
        return f"TriplePartition({self})"


def line_param(alpha: PairPartition) -> LinearParam:
    """The singular line for a pair partition: equal coordinates on each
    pair, with the three pair values (t, u, -t-u) summing to zero."""
    values = {alpha.pairs[0]: (1, 0), alpha.pairs[1]: (0, 1), alpha.pairs[2]: (-1, -1)}
    cols = [[0] * 6, [0] * 6]
    for pair, (ct, cu) in values.items():
        for x in pair:
            cols[0][x - 1] = ct
            cols[1][x - 1] = cu
    return LinearParam.from_columns(cols)


def _transversal(alpha: PairPartition, beta: TriplePartition) -> bool:
    """Each pair of alpha meets each triple of beta in exactly one element."""
    return all(
        len(set(p) & set(t)) == 1 for p in alpha.pairs for t in beta.triples
    )


class Incidence:
    """15 x 10 incidence between singular lines and special hyperplanes.

    Row sums (4) and column sums (6) are validated at construction, never
    assumed.  The map from a line to its set of incident hyperplanes is
    injective, which is what drives the automorphism backtracking.
    """

    def __init__(self, lines, planes, matrix):
        self.lines = tuple(lines)
        self.planes = tuple(planes)
        self.matrix = tuple(tuple(bool(x) for x in row) for row in matrix)
        if len(self.matrix) != len(self.lines) or any(
            len(r) != len(self.planes) for r in self.matrix
        ):
            raise ValueError("incidence matrix shape mismatch")
        for i, row in enumerate(self.matrix):
            if sum(row) != 4:
                raise ValueError(f"line {self.lines[i]} lies on {sum(row)} != 4 hyperplanes")
        for j in range(len(self.planes)):
            col = sum(self.matrix[i][j] for i in range(len(self.lines)))
            if col != 6:
                raise ValueError(f"hyperplane {self.planes[j]} contains {col} != 6 lines")
        self.line_signature = {
            frozenset(j for j in range(10) if self.matrix[i][j]): i for i in range(15)
        }
        if len(self.line_signature) != 15:
            raise ValueError("line -> hyperplane-set map is not injective")

    def incident(self, alpha: PairPartition, beta: TriplePartition) -> bool:
        return self.matrix[self.lines.index(alpha)][self.planes.index(beta)]

    def lines_of_plane(self, j: int):
        return [i for i in range(15) if self.matrix[i][j]]

    def planes_of_line(self, i: int):
        return [j for j in range(10) if self.matrix[i][j]]


def build_incidence() -> Incidence:
    """Geometric incidence (hyperplane form vanishes on the line), checked
    against the combinatorial transversality criterion on all 150 pairs."""
    lines = PairPartition.all()
    planes = TriplePartition.all()
    matrix = []
    for alpha in lines:
        param = line_param(alpha)
        row = []
        for beta in planes:
            geometric = restrict(SparsePoly.linear_form(beta.form()), param).is_zero()
            combinatorial = _transversal(alpha, beta)
            if geometric != combinatorial:
                raise AssertionError(
                    f"incidence criteria disagree at ({alpha}, {beta})"
                )
            row.append(geometric)
        matrix.append(row)
    return Incidence(lines, planes, matrix)


def pairwise_plane_intersections(inc: Incidence) -> dict:
    """Common-line counts for all 45 unordered hyperplane pairs."""
    out = {}
    for j1, j2 in combinations(range(10), 2):
        count = sum(1 for i in range(15) if inc.matrix[i][j1] and inc.matrix[i][j2])
        out[(inc.planes[j1], inc.planes[j2])] = count
    return out


class ConfigAut:
    """Simultaneous permutation of the 15 lines and the 10 hyperplanes."""

    __slots__ = ("line_map", "plane_map", "_hash")

    def __init__(self, line_map, plane_map):
        line_map = tuple(line_map)
        plane_map = tuple(plane_map)
        if sorted(line_map) != list(range(15)) or sorted(plane_map) != list(range(10)):
            raise ValueError("maps must permute 15 lines and 10 hyperplanes")
        self.line_map = line_map
        self.plane_map = plane_map
        self._hash = hash((line_map, plane_map))

    def identity(self) -> "ConfigAut":
        return ConfigAut(tuple(range(15)), tuple(range(10)))

    def __mul__(self, other: "ConfigAut") -> "ConfigAut":
        return ConfigAut(
            tuple(self.line_map[other.line_map[i]] for i in range(15)),
            tuple(self.plane_map[other.plane_map[j]] for j in range(10)),
        )

    def inverse(self) -> "ConfigAut":
        lm = [0] * 15
        pm = [0] * 10
        for i, v in enumerate(self.line_map):
            lm[v] = i
        for j, v in enumerate(self.plane_map):
            pm[v] = j
        return ConfigAut(tuple(lm), tuple(pm))

    def preserves(self, inc: Incidence) -> bool:
        return all(
            inc.matrix[i][j] == inc.matrix[self.line_map[i]][self.plane_map[j]]
            for i in range(15)
            for j in range(10)
        )

    def sort_key(self):
        return (self.line_map, self.plane_map)

    def __eq__(self, other):
        return (
            isinstance(other, ConfigAut)
            and self.line_map == other.line_map
            and self.plane_map == other.plane_map
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ConfigAut(lines={self.line_map}, planes={self.plane_map})"


def _assignment_order(inc: Incidence):
    """Static hyperplane order chosen greedily so that full line signatures
    close early and prune the search."""
    chosen = []
    remaining = set(range(10))
    while remaining:
        def coverage(j):
            dom = set(chosen) | {j}
            return sum(1 for sig in inc.line_signature if sig <= dom)

        best = min(remaining, key=lambda j: (-coverage(j), j))
        chosen.append(best)
        remaining.discard(best)
    return chosen


def configuration_automorphisms(inc: Incidence) -> FiniteGroup:
    """Exhaustive backtracking over incidence-preserving bijections.

    Hyperplane images are assigned first (10 < 15); as soon as all four
    hyperplanes of a line are assigned, the image set must be the signature
    of some line, and the induced line map must stay injective.
    """
    order = _assignment_order(inc)
    sigs = inc.line_signature
    results = []

    plane_img = [-1] * 10
    used_planes = [False] * 10

    # lines become fully determined at the step where their last hyperplane
    # gets an image
    due = {step: [] for step in range(10)}
    for sig in sigs:
        last = max(order.index(j) for j in sig)
        due[last].append(sig)

    def extend(step: int, line_img: dict):
        if step == 10:
            lm = [line_img[i] for i in range(15)]
            aut = ConfigAut(tuple(lm), tuple(plane_img))
            if not aut.preserves(inc):
                raise AssertionError("backtracking produced a non-automorphism")
            results.append(aut)
            return
        j = order[step]
        for c in range(10):
            if used_planes[c]:
                continue
            plane_img[j] = c
            used_planes[c] = True
            new_lines = {}
            ok = True
            for sig in due[step]:
                image = frozenset(plane_img[x] for x in sig)
                target = sigs.get(image)
                if target is None:
                    ok = False
                    break
                src = sigs[sig]
                if target in line_img.values() or target in new_lines.values():
                    ok = False
                    break
                new_lines[src] = target
            if ok:
                line_img.update(new_lines)
                extend(step + 1, line_img)
                for k in new_lines:
                    del line_img[k]
            used_planes[c] = False
            plane_img[j] = -1

    extend(0, {})
    return FiniteGroup(results, generators=None)


def induced_from_s6(sigma: SignedPerm, inc: Incidence) -> ConfigAut:
    """The configuration automorphism obtained by relabeling the six letters."""
    if sigma.n != 6 or not sigma.is_unsigned():
        raise ValueError("induced automorphisms come from unsigned permutations of 6 letters")
    line_index = {a: i for i, a in enumerate(inc.lines)}
    plane_index = {b: j for j, b in enumerate(inc.planes)}
    lm = [line_index[a.apply(sigma)] for a in inc.lines]
    pm = [plane_index[b.apply(sigma)] for b in inc.planes]
    return ConfigAut(tuple(lm), tuple(pm))
