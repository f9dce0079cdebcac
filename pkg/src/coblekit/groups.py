"""Signed permutation groups, characters, and subgroup machinery.

Elements are permutations with a sign per coordinate plus one auxiliary sign
(the action on the weight-2 double-cover coordinate).  On top of them sit
group closure, conjugacy classes, linear characters with values in Q(omega),
hyperplane stabilizers inside S6, the four-dimensional decomposition test for
stabilized hyperplanes, fingerprints, and exhaustive subgroup enumeration up
to conjugacy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

from .algebra import Cyclo, proportional_mod


class SignedPerm:
    """Permutation of {1..n} with per-coordinate signs and an auxiliary sign.

    Acting on a vector: coordinate i is sent to slot images[i] scaled by
    signs[i] (so the matrix has entry signs[i] in row images[i], column i).
    Composition a*b applies b first.
    """

    __slots__ = ("n", "images", "signs", "aux_sign", "_hash")

    def __init__(self, images, signs=None, aux_sign=1):
        images = tuple(int(i) for i in images)
        n = len(images)
        if sorted(images) != list(range(n)):
            raise ValueError(f"images {images} is not a permutation of 0..{n - 1}")
        signs = tuple(int(s) for s in (signs if signs is not None else (1,) * n))
        if len(signs) != n or any(s not in (-1, 1) for s in signs):
            raise ValueError("signs must be a vector of +-1 of matching length")
        if aux_sign not in (-1, 1):
            raise ValueError("aux_sign must be +-1")
        self.n = n
        self.images = images
        self.signs = signs
        self.aux_sign = aux_sign
        self._hash = hash((images, signs, aux_sign))

    @staticmethod
    def identity_of(n: int) -> "SignedPerm":
        return SignedPerm(tuple(range(n)))

    @staticmethod
    def from_cycles(n: int, cycles, signs=None, aux_sign=1) -> "SignedPerm":
        """Build from 1-indexed disjoint cycles, e.g. [(1, 2), (3, 4, 5)]."""
        images = list(range(n))
        for cyc in cycles:
            cyc = [c - 1 for c in cyc]
            if any(not 0 <= c < n for c in cyc):
                raise ValueError(f"cycle entry out of range in {cyc}")
            for i, c in enumerate(cyc):
                images[c] = cyc[(i + 1) % len(cyc)]
        return SignedPerm(tuple(images), signs, aux_sign)

    def identity(self) -> "SignedPerm":
        return SignedPerm.identity_of(self.n)

    def __mul__(self, other: "SignedPerm") -> "SignedPerm":
        if self.n != other.n:
            raise ValueError("inconsistent dimensions in composition")
        images = tuple(self.images[other.images[i]] for i in range(self.n))
        signs = tuple(
            other.signs[i] * self.signs[other.images[i]] for i in range(self.n)
        )
        return SignedPerm(images, signs, self.aux_sign * other.aux_sign)

    def inverse(self) -> "SignedPerm":
        inv = [0] * self.n
        signs = [1] * self.n
        for i in range(self.n):
            inv[self.images[i]] = i
            signs[self.images[i]] = self.signs[i]
        return SignedPerm(tuple(inv), tuple(signs), self.aux_sign)

    def order(self) -> int:
        k = 1
        g = self
        e = self.identity()
        while g != e:
            g = g * self
            k += 1
        return k

    def is_unsigned(self) -> bool:
        return all(s == 1 for s in self.signs) and self.aux_sign == 1

    def fixed_points(self) -> int:
        return sum(1 for i in range(self.n) if self.images[i] == i)

    def cycle_type(self):
        seen = [False] * self.n
        lengths = []
        for i in range(self.n):
            if seen[i]:
                continue
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def parity(self) -> int:
        """+1 for even permutations, -1 for odd (signs ignored)."""
        return -1 if sum(l - 1 for l in self.cycle_type()) % 2 else 1

    def apply_index(self, i: int) -> int:
        return self.images[i]

    def apply_vector(self, vec):
        """Signed permutation action on a coordinate vector."""
        if len(vec) != self.n:
            raise ValueError("vector length mismatch")
        out = [None] * self.n
        for i in range(self.n):
            out[self.images[i]] = self.signs[i] * vec[i]
        return tuple(out)

    def permute_form(self, coeffs):
        """Coefficients of ell composed with the substitution x_i -> x_{g(i)}."""
        if len(coeffs) != self.n:
            raise ValueError("form length mismatch")
        out = [None] * self.n
        for i in range(self.n):
            out[self.images[i]] = coeffs[i]
        return tuple(out)

    def sort_key(self):
        return (self.images, self.signs, self.aux_sign)

    def __eq__(self, other):
        return (
            isinstance(other, SignedPerm)
            and self.images == other.images
            and self.signs == other.signs
            and self.aux_sign == other.aux_sign
        )

    def __hash__(self):
        return self._hash

    def cycles(self):
        seen = [False] * self.n
        out = []
        for i in range(self.n):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            out.append(tuple(cyc))
        return tuple(out)

    def __str__(self):
        cyc = self.cycles()
        cyc_str = "".join("(" + " ".join(str(c) for c in cy) + ")" for cy in cyc) or "()"
        sign_str = "".join("+" if s == 1 else "-" for s in self.signs)
        aux = "+" if self.aux_sign == 1 else "-"
        return f"{cyc_str} | {sign_str} | aux:{aux}"

    def __repr__(self):
        return f"SignedPerm<{self}>"


class FiniteGroup:
    """Immutable container for a finite group of composable elements.

    Elements must support *, inverse(), identity(), hashing and sort_key();
    both SignedPerm and configuration automorphisms qualify.  The element
    order is normalized (sorted by sort_key) so results are deterministic.
    """

    def __init__(self, elements, generators=None, verify: bool = False):
        elems = sorted(set(elements), key=lambda g: g.sort_key())
        if not elems:
            raise ValueError("a group needs at least one element")
        self.elements = tuple(elems)
        self._set = frozenset(elems)
        self.generators = tuple(generators) if generators else self.elements
        if verify:
            ident = self.elements[0].identity()
            if ident not in self._set:
                raise ValueError("element set does not contain the identity")
            for a in self.elements:
                if a.inverse() not in self._set:
                    raise ValueError("element set not closed under inverse")
                for b in self.elements:
                    if a * b not in self._set:
                        raise ValueError("element set not closed under composition")
        self._classes = None
        self._small_gens = None
        self._commutator = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._set

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def identity(self):
        return self.elements[0].identity()

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return self._set <= other._set

    def small_generators(self):
        """A short generating list, found greedily; cached."""
        if self._small_gens is None:
            gens = []
            have = {self.identity()}
            for g in self.elements:
                if g in have:
                    continue
                gens.append(g)
                have = set(closure_set(gens))
                if len(have) == len(self.elements):
                    break
            self._small_gens = tuple(gens)
        return self._small_gens

    def conjugacy_classes(self):
        """Partition into conjugacy classes, sorted by (size, minimal element)."""
        if self._classes is None:
            gens = self.generators if len(self.generators) < len(self.elements) else self.small_generators()
            gens = gens or (self.identity(),)
            seen = set()
            classes = []
            for g in self.elements:
                if g in seen:
                    continue
                orbit = {g}
                frontier = [g]
                while frontier:
                    x = frontier.pop()
                    for s in gens:
                        y = s * x * s.inverse()
                        if y not in orbit:
                            orbit.add(y)
                            frontier.append(y)
                seen |= orbit
                classes.append(tuple(sorted(orbit, key=lambda e: e.sort_key())))
            classes.sort(key=lambda cl: (len(cl), cl[0].sort_key()))
            self._classes = tuple(classes)
        return self._classes

    def commutator_subgroup(self) -> "FiniteGroup":
        if self._commutator is None:
            gens = self.small_generators() or (self.identity(),)
            comms = [
                a * b * a.inverse() * b.inverse()
                for a in self.elements
                for b in gens
            ]
            self._commutator = closure(comms + [self.identity()])
        return self._commutator


def closure_set(gens):
    """All products of the generators (the generated subgroup), as a set."""
    gens = list(gens)
    if not gens:
        raise ValueError("closure needs at least one generator")
    ident = gens[0].identity()
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def closure(gens) -> FiniteGroup:
    """Group generated by breadth-first multiplication; deterministic order."""
    gens = list(gens)
    return FiniteGroup(closure_set(gens), generators=gens)


def conjugacy_classes(group: FiniteGroup):
    return group.conjugacy_classes()


@lru_cache(maxsize=None)
def symmetric_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return FiniteGroup([SignedPerm.identity_of(1)])
    gens = [SignedPerm.from_cycles(n, [(1, 2)]), SignedPerm.from_cycles(n, [tuple(range(1, n + 1))])]
    return closure(gens)


def galois_involution(n: int = 6) -> SignedPerm:
    """Deck transformation of the double cover: flips only the aux sign."""
    return SignedPerm(tuple(range(n)), aux_sign=-1)


class CyclotomicScopeError(ValueError):
    """The abelianization has exponent not dividing 6, so its linear
    characters do not all take values in Q(omega)."""


class CharacterVector:
    """Class function with exact values in Q(omega), one per conjugacy class."""

    def __init__(self, group: FiniteGroup, values):
        self.group = group
        self.classes = group.conjugacy_classes()
        self.class_reps = tuple(cl[0] for cl in self.classes)
        self.class_sizes = tuple(len(cl) for cl in self.classes)
        values = tuple(Cyclo.coerce(v) for v in values)
        if len(values) != len(self.classes):
            raise ValueError("one value per conjugacy class required")
        self.values = values
        self._index = {g: i for i, cl in enumerate(self.classes) for g in cl}

    def value_at(self, g) -> Cyclo:
        return self.values[self._index[g]]

    def degree(self) -> Cyclo:
        return self.value_at(self.group.identity())

    def _combine(self, other, op):
        if other.group is not self.group and other.group != self.group:
            raise ValueError("characters live on different groups")
        return CharacterVector(
            self.group, tuple(op(a, b) for a, b in zip(self.values, other.values))
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def inner(self, other: "CharacterVector") -> Fraction:
        """Hermitian inner product (1/|G|) sum size * chi * conj(psi)."""
        total = Cyclo(0)
        for size, a, b in zip(self.class_sizes, self.values, other.values):
            total = total + Cyclo(size) * a * b.conjugate()
        val = total * Cyclo(Fraction(1, self.group.order))
        return val.as_rational()

    def norm(self) -> Fraction:
        return self.inner(self)

    def is_zero(self) -> bool:
        return all(not v for v in self.values)

    def __eq__(self, other):
        return (
            isinstance(other, CharacterVector)
            and self.group == other.group
            and self.values == other.values
        )

    def __hash__(self):
        return hash(self.values)

    def sort_key(self):
        return tuple((v.a, v.b) for v in self.values)

    def __repr__(self):
        return f"CharacterVector({[str(v) for v in self.values]})"


def simplicial_character(group: FiniteGroup) -> CharacterVector:
    """Character of the (n-1)-dimensional quotient of the permutation
    representation: fixed points minus one, per class."""
    for g in group:
        if not g.is_unsigned():
            raise ValueError("simplicial character requires an unsigned permutation group")
    return CharacterVector(
        group, [Fraction(cl[0].fixed_points() - 1) for cl in group.conjugacy_classes()]
    )


def _coset_partition(group: FiniteGroup, sub: FiniteGroup):
    """Left cosets of sub in group, each a frozenset."""
    remaining = set(group.elements)
    cosets = []
    for g in sorted(remaining, key=lambda e: e.sort_key()):
        if g not in remaining:
            continue
        coset = frozenset(g * h for h in sub)
        remaining -= coset
        cosets.append(coset)
    return cosets


class _SmallAbelian:
    """Multiplication table of an abelian quotient, indexed 0..n-1 with 0 = identity."""

    def __init__(self, table, n, loc=None):
        self.table = table
        self.n = n
        self.loc = loc  # group element -> quotient index, when built from a quotient

    @staticmethod
    def quotient(group: FiniteGroup, normal: FiniteGroup) -> "_SmallAbelian":
        cosets = _coset_partition(group, normal)
        ident_idx = next(i for i, c in enumerate(cosets) if group.identity() in c)
        # put the identity coset first
        order = [ident_idx] + [i for i in range(len(cosets)) if i != ident_idx]
        cosets = [cosets[i] for i in order]
        reps = [min(c, key=lambda e: e.sort_key()) for c in cosets]
        loc = {}
        for i, c in enumerate(cosets):
            for g in c:
                loc[g] = i
        n = len(cosets)
        table = [[loc[reps[i] * reps[j]] for j in range(n)] for i in range(n)]
        return _SmallAbelian(table, n, loc)

    def mul(self, i, j):
        return self.table[i][j]

    def element_order(self, i) -> int:
        k, x = 1, i
        while x != 0:
            x = self.mul(x, i)
            k += 1
        return k

    def power(self, i, e):
        x = 0
        for _ in range(e):
            x = self.mul(x, i)
        return x

    def quotient_by_cyclic(self, g) -> "_SmallAbelian":
        sub = set()
        x = 0
        while True:
            sub.add(x)
            x = self.mul(x, g)
            if x == 0:
                break
        remaining = set(range(self.n))
        cosets = []
        loc = {}
        while remaining:
            r = min(remaining)
            coset = frozenset(self.mul(r, s) for s in sub)
            remaining -= coset
            for y in coset:
                loc[y] = len(cosets)
            cosets.append(min(coset))
        n = len(cosets)
        table = [[loc[self.mul(cosets[i], cosets[j])] for j in range(n)] for i in range(n)]
        return _SmallAbelian(table, n)

    def invariant_factors(self):
        """Invariant factors d1 >= d2 >= ... with d_{k+1} | d_k."""
        if self.n == 1:
            return ()
        orders = [self.element_order(i) for i in range(self.n)]
        d1 = max(orders)
        g = orders.index(d1)
        rest = self.quotient_by_cyclic(g).invariant_factors()
        for d in rest:
            assert d1 % d == 0, "invariant factor chain broken"
        return (d1,) + rest

    def minimal_generators(self):
        gens = []
        generated = {0}
        while len(generated) < self.n:
            candidates = [i for i in range(self.n) if i not in generated]
            g = max(candidates, key=lambda i: (self.element_order(i), -i))
            gens.append(g)
            new = set(generated)
            frontier = list(generated)
            while frontier:
                x = frontier.pop()
                y = self.mul(x, g)
                if y not in new:
                    new.add(y)
                    frontier.append(y)
            generated = new
        return gens


def abelian_invariants(group: FiniteGroup):
    """Invariant factors of G/[G,G]."""
    return _SmallAbelian.quotient(group, group.commutator_subgroup()).invariant_factors()


def linear_characters(group: FiniteGroup):
    """All degree-1 characters of the group, with exact values in Q(omega).

    These factor through the abelianization; the abelianization exponent
    must divide 6 (every group this is invoked on in the hyperplane analysis
    satisfies that), otherwise CyclotomicScopeError is raised.
    """
    comm = group.commutator_subgroup()
    quo = _SmallAbelian.quotient(group, comm)
    exponent = 1
    for i in range(quo.n):
        exponent = lcm(exponent, quo.element_order(i))
    if 6 % exponent != 0:
        raise CyclotomicScopeError(
            f"abelianization exponent {exponent} does not divide 6"
        )
    loc = quo.loc
    gens = quo.minimal_generators()
    roots = {d: [Cyclo.zeta6(6 // d * k) for k in range(d)] for d in (1, 2, 3, 6)}

    def assignments(idx):
        if idx == len(gens):
            yield {}
            return
        d = quo.element_order(gens[idx])
        for tail in assignments(idx + 1):
            for z in roots[d]:
                out = dict(tail)
                out[gens[idx]] = z
                yield out

    chars = []
    seen = set()
    for assign in assignments(0):
        # extend multiplicatively over the quotient
        val = {0: Cyclo(1)}
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for g, z in assign.items():
                    y = quo.mul(x, g)
                    v = val[x] * z
                    if y in val:
                        if val[y] != v:
                            ok = False
                            break
                    else:
                        val[y] = v
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(val) != quo.n:
            continue
        # well-definedness over all products
        if any(
            val[quo.mul(i, j)] != val[i] * val[j]
            for i in range(quo.n)
            for j in range(quo.n)
        ):
            continue
        values = tuple(
            val[loc[cl[0]]] for cl in group.conjugacy_classes()
        )
        if values not in seen:
            seen.add(values)
            chars.append(CharacterVector(group, values))
    if len(chars) != quo.n:
        raise AssertionError(
            f"expected {quo.n} linear characters, found {len(chars)}"
        )
    chars.sort(key=lambda ch: ch.sort_key())
    return chars


ONES6 = (Fraction(1),) * 6


def hyperplane_stabilizer(ell) -> FiniteGroup:
    """Subgroup of S6 whose coordinate substitution scales ell modulo the
    all-ones form: { sigma : ell o sigma = c*ell + d*s1, c != 0 }."""
    ell = tuple(ell)
    if len(ell) != 6:
        raise ValueError("hyperplane form must have 6 coefficients")
    if all(ell[i] * ONES6[j] == ell[j] * ONES6[i] for i in range(6) for j in range(6)):
        raise ValueError("form proportional to s1 does not define a hyperplane")
    elems = []
    for sigma in symmetric_group(6):
        if proportional_mod(sigma.permute_form(ell), ell, ONES6) is not None:
            elems.append(sigma)
    return FiniteGroup(elems, verify=False)


@dataclass(frozen=True)
class DecompSignature:
    verdict: str  # "Irreducible4" | "OnePlusThree" | "Excluded"
    witness: str | None
    linear_multiplicity: int
    residual_norm: Fraction


def _as_integer(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise AssertionError(f"{what} should be an integer, got {x}")
    return x.numerator


def decomposition_signature(group: FiniteGroup, ell) -> DecompSignature:
    """Shape of the 4-dimensional piece cut out by a stabilized hyperplane.

    chi_V = chi_W - lambda, with lambda the scaling character on ell.  The
    verdict counts linear constituents of chi_V (total multiplicity via
    averaging over the commutator subgroup, cross-checked against explicit
    linear characters whenever those live in Q(omega)) and the norm of the
    residual:

      no linear part, norm 1        -> Irreducible4
      one linear constituent, norm 2 -> OnePlusThree
      anything else                  -> Excluded
    """
    ell = tuple(ell)
    for g in group:
        if not g.is_unsigned():
            raise ValueError("decomposition requires an unsigned permutation group")
    lam_values = []
    for g in group:
        if proportional_mod(g.permute_form(ell), ell, ONES6) is None:
            raise ValueError("group does not stabilize the hyperplane")
    for cl in group.conjugacy_classes():
        c, _ = proportional_mod(cl[0].permute_form(ell), ell, ONES6)
        lam_values.append(Cyclo.coerce(c))
    lam = CharacterVector(group, lam_values)
    chi_w = simplicial_character(group)
    chi_v = chi_w - lam
    assert chi_v.degree() == Cyclo(4)

    norm = chi_v.norm()
    comm = group.commutator_subgroup()
    total = Cyclo(0)
    for g in comm:
        total = total + chi_v.value_at(g)
    m1_val = (total * Cyclo(Fraction(1, comm.order))).as_rational()
    m1 = _as_integer(m1_val, "linear multiplicity")

    try:
        lin = linear_characters(group)
    except CyclotomicScopeError:
        lin = None
    if lin is not None:
        mults = [_as_integer(chi_v.inner(ch), "constituent multiplicity") for ch in lin]
        if any(m < 0 for m in mults):
            raise AssertionError("negative multiplicity: chi_V is not a character")
        if sum(mults) != m1:
            raise AssertionError("linear-constituent count mismatch between routes")

    if m1 == 0 and norm == 1:
        return DecompSignature("Irreducible4", None, m1, norm)
    if m1 == 1 and norm == 2:
        return DecompSignature("OnePlusThree", None, m1, norm - 1)
    if m1 == 0:
        witness = f"no linear constituent but 4-dimensional part has norm {norm}"
        residual = norm
    elif m1 == 1:
        witness = f"one linear constituent but residual has norm {norm - 1}"
        residual = norm - 1
    else:
        witness = f"{m1} linear constituents (a 2-dimensional invariant subspace exists)"
        residual = norm
    return DecompSignature("Excluded", witness, m1, residual)


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelian_invariants: tuple
    class_count: int
    order_histogram: tuple  # sorted tuple of (element order, count)


def group_fingerprint(group: FiniteGroup) -> Fingerprint:
    hist = {}
    for g in group:
        o = g.order()
        hist[o] = hist.get(o, 0) + 1
    return Fingerprint(
        order=group.order,
        abelian_invariants=abelian_invariants(group),
        class_count=len(group.conjugacy_classes()),
        order_histogram=tuple(sorted(hist.items())),
    )


def is_subconjugate(h: FiniteGroup, k: FiniteGroup, ambient: FiniteGroup) -> bool:
    """True iff some ambient-conjugate of h is contained in k."""
    for a in ambient:
        a_inv = a.inverse()
        if all((a * g * a_inv) in k for g in h.small_generators() or [h.identity()]):
            # generators conjugate in; verify the whole subgroup
            if all((a * g * a_inv) in k for g in h):
                return True
    return False


def subgroups_up_to_conjugacy(group: FiniteGroup):
    """One representative per conjugacy class of subgroups, exhaustively.

    Layered closure: cyclic subgroups first, then repeated extension of every
    known class by one element (one per double coset), deduplicating whole
    conjugation orbits.  Internally everything runs on an integer Cayley
    table, so the search is cheap even at order 240.
    """
    n = group.order
    if n > 1000:
        raise ValueError(f"group order {n} exceeds the enumeration bound 1000")
    elements = group.elements
    index = {g: i for i, g in enumerate(elements)}
    mult = [[index[a * b] for b in elements] for a in elements]
    inv = [index[a.inverse()] for a in elements]
    e_idx = index[group.identity()]

    def conj_set(sub, a):
        ai = inv[a]
        return frozenset(mult[mult[a][s]][ai] for s in sub)

    seen: dict[frozenset, int] = {}
    classes: list[tuple[frozenset, tuple]] = []

    def register(sub: frozenset, gens: tuple) -> bool:
        if sub in seen:
            return False
        orbit = {sub}
        for a in range(n):
            orbit.add(conj_set(sub, a))
        hit = next((t for t in orbit if t in seen), None)
        if hit is not None:
            cid = seen[hit]
            for t in orbit:
                seen[t] = cid
            return False
        cid = len(classes)
        classes.append((sub, gens))
        for t in orbit:
            seen[t] = cid
        return True

    def close_indices(gens: tuple) -> frozenset:
        elems = {e_idx}
        frontier = [e_idx]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mult[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    register(frozenset([e_idx]), ())
    for a in range(n):
        if a == e_idx:
            continue
        register(close_indices((a,)), (a,))

    i = 0
    while i < len(classes):
        sub, gens = classes[i]
        i += 1
        if len(sub) == n:
            continue
        done = set(sub)
        for g in range(n):
            if g in done:
                continue
            # one extension per double coset sub*g*sub
            for h1 in sub:
                gh = mult[h1][g]
                for h2 in sub:
                    done.add(mult[gh][h2])
            register(close_indices(gens + (g,)), gens + (g,))

    out = []
    for sub, gens in classes:
        members = [elements[i] for i in sub]
        gen_elems = [elements[i] for i in gens] or [group.identity()]
        out.append(FiniteGroup(members, generators=gen_elems))
    out.sort(key=lambda h: (h.order, tuple(g.sort_key() for g in h.elements)))
    return out
