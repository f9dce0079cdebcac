"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored as a map from exponent tuple to nonzero Fraction.  This is
the home of the Igusa quartic 4*s4 - s2^2, of hyperplane-section equations,
and of the substitution/gradient/perfect-square machinery the geometric
checks are built on.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import MatrixQ, as_rational


class SparsePoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has wrong length for {nvars} vars")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_rational(coeff)
            if c != 0:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if clean[exp] == 0:
                    del clean[exp]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "SparsePoly":
        return SparsePoly(nvars, {})

    @staticmethod
    def constant(nvars: int, c) -> "SparsePoly":
        return SparsePoly(nvars, {tuple([0] * nvars): as_rational(c)})

    @staticmethod
    def variable(nvars: int, i: int) -> "SparsePoly":
        exp = [0] * nvars
        exp[i] = 1
        return SparsePoly(nvars, {tuple(exp): Fraction(1)})

    @staticmethod
    def linear_form(coeffs) -> "SparsePoly":
        coeffs = list(coeffs)
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            exp = [0] * n
            exp[i] = 1
            terms[tuple(exp)] = as_rational(c)
        return SparsePoly(n, terms)

    # -- ring structure ----------------------------------------------------

    def _check(self, other: "SparsePoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError("mixed variable counts")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(self.nvars, other)
        self._check(other)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            terms[exp] = terms.get(exp, Fraction(0)) + c
        return SparsePoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SparsePoly.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_rational(other)
            return SparsePoly(self.nvars, {e: k * c for e, k in self.terms.items()})
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = SparsePoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, SparsePoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self, degree=None) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e in self.terms}
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def coefficient(self, exp) -> Fraction:
        return self.terms.get(tuple(exp), Fraction(0))

    def evaluate(self, point) -> Fraction:
        point = [as_rational(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, polynomial has {self.nvars} variables"
            )
        total = Fraction(0)
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= x**e
            total += v
        return total

    def sorted_terms(self):
        return sorted(self.terms.items())

    def serialize(self):
        """Stable record form: lexicographically sorted exponent vectors."""
        return [
            {"exponents": list(exp), "coeff": str(c)} for exp, c in self.sorted_terms()
        ]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}" for i, e in enumerate(exp) if e
            )
            parts.append(f"{c}" if not mono else f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"SparsePoly({self.nvars}, {self.__str__()})"


class LinearParam:
    """Injective linear parametrization: source space -> target space.

    Columns of the matrix are the images of the source basis vectors; full
    column rank is checked at construction.  Lines in P^5 are stored this
    way (6 target coordinates, 2 parameters), as are hyperplane charts
    (6 target coordinates, 4 parameters).
    """

    __slots__ = ("target_vars", "source_vars", "matrix")

    def __init__(self, matrix: MatrixQ):
        if matrix.rank() != matrix.cols:
            raise ValueError("parametrization matrix must have full column rank")
        self.matrix = matrix
        self.target_vars = matrix.rows
        self.source_vars = matrix.cols

    @staticmethod
    def from_columns(columns) -> "LinearParam":
        cols = [list(c) for c in columns]
        nrows = len(cols[0])
        return LinearParam(
            MatrixQ(nrows, len(cols), [cols[j][i] for i in range(nrows) for j in range(len(cols))])
        )

    def apply(self, point):
        return self.matrix.apply(point)

    def row_form(self, i: int) -> SparsePoly:
        """Target coordinate i as a linear form in the source variables."""
        return SparsePoly.linear_form(self.matrix.row(i))

    def __eq__(self, other):
        return isinstance(other, LinearParam) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearParam({self.matrix!r})"


def evaluate(f: SparsePoly, point) -> Fraction:
    return f.evaluate(point)


def gradient(f: SparsePoly):
    """Formal partial derivatives, one per variable."""
    out = []
    for i in range(f.nvars):
        terms = {}
        for exp, c in f.terms.items():
            e = exp[i]
            if e:
                new = list(exp)
                new[i] = e - 1
                key = tuple(new)
                terms[key] = terms.get(key, Fraction(0)) + c * e
        out.append(SparsePoly(f.nvars, terms))
    return tuple(out)


def restrict(f: SparsePoly, phi: LinearParam) -> SparsePoly:
    """Exact substitution f(phi(u)), expanded in the source variables."""
    if phi.target_vars != f.nvars:
        raise ValueError(
            f"parametrization targets {phi.target_vars} variables, polynomial has {f.nvars}"
        )
    rows = [phi.row_form(i) for i in range(f.nvars)]
    power_cache: dict[tuple[int, int], SparsePoly] = {}

    def row_power(i: int, e: int) -> SparsePoly:
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = rows[i] ** e
        return power_cache[key]

    result = SparsePoly.zero(phi.source_vars)
    for exp, c in f.terms.items():
        term = SparsePoly.constant(phi.source_vars, c)
        for i, e in enumerate(exp):
            if e:
                term = term * row_power(i, e)
        result = result + term
    return result


def perfect_square_root(f: SparsePoly):
    """Quadratic q with q^2 = c*f for some positive rational c, or None.

    Input must be homogeneous of degree 4 (the zero polynomial counts,
    returning the zero quadratic).  q is normalized so that the coefficient
    of its lexicographically first term is 1, and the result is verified by
    exact re-expansion before being returned.
    """
    if f.is_zero():
        return SparsePoly.zero(f.nvars)
    if not f.is_homogeneous(4):
        raise ValueError("perfect_square_root expects a homogeneous quartic")

    lead_exp = min(f.terms)
    lead_coeff = f.terms[lead_exp]
    if lead_coeff < 0:
        return None
    if any(e % 2 for e in lead_exp):
        return None
    half = tuple(e // 2 for e in lead_exp)

    target = f * (Fraction(1) / lead_coeff)
    q = SparsePoly(f.nvars, {half: Fraction(1)})
    # extract one lex-increasing term per step; a homogeneous quadratic has
    # finitely many candidate monomials, so this terminates
    max_terms = (f.nvars * (f.nvars + 1)) // 2
    for _ in range(max_terms + 1):
        rem = target - q * q
        if rem.is_zero():
            break
        exp = min(rem.terms)
        diff = tuple(a - b for a, b in zip(exp, half))
        if any(d < 0 for d in diff):
            return None
        q = q + SparsePoly(f.nvars, {diff: rem.terms[exp] / 2})
    else:
        return None

    c = Fraction(1) / lead_coeff
    if q * q != c * f:
        return None
    return q


def quadratic_rank(q: SparsePoly) -> int:
    """Rank of the symmetric Gram matrix of a homogeneous quadratic."""
    if not q.is_homogeneous(2) and not q.is_zero():
        raise ValueError("quadratic_rank expects a homogeneous quadratic")
    n = q.nvars
    gram = [[Fraction(0)] * n for _ in range(n)]
    for exp, c in q.terms.items():
        idx = [i for i, e in enumerate(exp) if e]
        if len(idx) == 1:
            i = idx[0]
            gram[i][i] = c
        else:
            i, j = idx
            gram[i][j] = c / 2
            gram[j][i] = c / 2
    return MatrixQ.from_rows(gram).rank()


class NotOnHypersurfaceError(ValueError):
    pass


class SmoothPointError(ValueError):
    pass


def local_quadratic_part(f: SparsePoly, point) -> MatrixQ:
    """Hessian of the affine local equation at a singular projective point.

    The chart is fixed by dehomogenizing at the largest-magnitude coordinate
    (first of several on a tie), which always exists for a projective point.
    The point must lie on the hypersurface and be singular there; a smooth
    point is a contract violation, not a degenerate answer.
    """
    point = [as_rational(x) for x in point]
    if len(point) != f.nvars:
        raise ValueError("point has the wrong number of coordinates")
    if all(x == 0 for x in point):
        raise ValueError("zero vector is not a projective point")
    if f.evaluate(point) != 0:
        raise NotOnHypersurfaceError(f"point {point} does not lie on the hypersurface")

    k = max(range(f.nvars), key=lambda i: (abs(point[i]), -i))
    scaled = [x / point[k] for x in point]

    grads = gradient(f)
    if any(g.evaluate(scaled) != 0 for g in grads):
        raise SmoothPointError(
            "point is a smooth point of the hypersurface; quadratic part needs a singularity"
        )

    second = [gradient(g) for g in grads]
    hess = [
        [second[i][j].evaluate(scaled) for j in range(f.nvars)]
        for i in range(f.nvars)
    ]
    keep = [i for i in range(f.nvars) if i != k]
    return MatrixQ.from_rows([[hess[i][j] for j in keep] for i in keep])


def proportional_polys(f: SparsePoly, g: SparsePoly):
    """Scalar c with f = c*g, or None (f, g over the same variables)."""
    if f.nvars != g.nvars:
        return None
    if g.is_zero():
        return Fraction(0) if f.is_zero() else None
    if set(f.terms) != set(g.terms):
        return None
    exp = next(iter(g.terms))
    c = f.terms[exp] / g.terms[exp]
    if all(f.terms[e] == c * g.terms[e] for e in g.terms):
        return c
    return None
