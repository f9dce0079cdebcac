"""Exact scalars and small dense linear algebra over Q, Q(omega) and F_p.

Every verdict produced by this package is computed in exact arithmetic:
rationals are `fractions.Fraction`, cyclotomic values live in Q(omega) with
omega a primitive cube root of unity, and finite-field evidence uses F_p
with p a checked prime >= 5.  Floating point never enters any computation.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

# Rational scalars are stdlib Fractions: always in lowest terms, positive
# denominator, zero is Fraction(0, 1).  str() gives "p/q" (or "n" if q = 1),
# which is exactly the serialization used in reports.
Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce an int or Fraction to Fraction; reject floats."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact scalar expected, got {type(x).__name__}")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class FpElement:
    """Residue in F_p for a prime p >= 5.

    Primes 2 and 3 are rejected: the quartic 4*s4 - s2^2 degenerates mod 2,
    and 3 is excluded alongside it so that every finite-field scan runs over
    a field where the defining coefficients stay meaningful.
    """

    __slots__ = ("residue", "p")

    def __init__(self, residue: int, p: int):
        if p < 5 or not is_prime(p):
            raise ValueError(f"modulus must be a prime >= 5, got {p}")
        self.residue = residue % p
        self.p = p

    def _check(self, other: "FpElement") -> None:
        if self.p != other.p:
            raise ValueError(f"mixed moduli {self.p} and {other.p}")

    def __add__(self, other):
        self._check(other)
        return FpElement(self.residue + other.residue, self.p)

    def __sub__(self, other):
        self._check(other)
        return FpElement(self.residue - other.residue, self.p)

    def __mul__(self, other):
        self._check(other)
        return FpElement(self.residue * other.residue, self.p)

    def __neg__(self):
        return FpElement(-self.residue, self.p)

    def inverse(self) -> "FpElement":
        if self.residue == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return FpElement(pow(self.residue, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __eq__(self, other):
        return (
            isinstance(other, FpElement)
            and self.p == other.p
            and self.residue == other.residue
        )

    def __hash__(self):
        return hash((self.residue, self.p))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"FpElement({self.residue}, {self.p})"


def rational_mod_p(x: Fraction, p: int) -> int:
    """Image of a rational with denominator prime to p in F_p, as an int."""
    num, den = x.numerator, x.denominator
    if den % p == 0:
        raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
    return num * pow(den, p - 2, p) % p


class Cyclo:
    """Element a + b*omega of Q(omega), omega a primitive cube root of unity.

    omega satisfies omega^2 = -1 - omega, so the pair (a, b) is closed under
    field operations.  All sixth roots of unity live here (zeta_6 = 1 + omega),
    which covers every linear-character value this package ever needs.
    """

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = as_rational(a)
        self.b = as_rational(b)

    @staticmethod
    def omega() -> "Cyclo":
        return Cyclo(0, 1)

    @staticmethod
    def zeta6(k: int = 1) -> "Cyclo":
        """The k-th power of the primitive sixth root 1 + omega."""
        z = Cyclo(1)
        for _ in range(k % 6):
            z = z * Cyclo(1, 1)
        return z

    @staticmethod
    def coerce(x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        return Cyclo(as_rational(x))

    def __add__(self, other):
        other = Cyclo.coerce(other)
        return Cyclo(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = Cyclo.coerce(other)
        return Cyclo(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return Cyclo.coerce(other) - self

    def __neg__(self):
        return Cyclo(-self.a, -self.b)

    def __mul__(self, other):
        other = Cyclo.coerce(other)
        # (a + b w)(c + d w) = ac + (ad + bc) w + bd w^2,  w^2 = -1 - w
        a, b, c, d = self.a, self.b, other.a, other.b
        return Cyclo(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclo":
        # omega -> omega^2 = -1 - omega
        return Cyclo(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        # z * conj(z) = a^2 - a b + b^2
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "Cyclo":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(omega)")
        c = self.conjugate()
        return Cyclo(c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * Cyclo.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclo.coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo(other)
        return isinstance(other, Cyclo) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def as_rational(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __repr__(self):
        if self.b == 0:
            return f"Cyclo({self.a})"
        return f"Cyclo({self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}w"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}w"


class MatrixQ:
    """Immutable dense matrix over Q, stored row-major.

    All operations return new values; rank and kernel computations run a
    fraction-free (Bareiss) elimination on an integer-scaled copy so that
    intermediate entries stay bounded.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(as_rational(x) for x in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for {rows}x{cols}, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(rows) -> "MatrixQ":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("at least one row required")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return MatrixQ(len(rows), ncols, [x for r in rows for x in r])

    @staticmethod
    def identity(n: int) -> "MatrixQ":
        return MatrixQ(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "MatrixQ":
        return MatrixQ(rows, cols, [Fraction(0)] * (rows * cols))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "MatrixQ":
        return MatrixQ(
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def __mul__(self, other: "MatrixQ") -> "MatrixQ":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum((ri[k] * other.entry(k, j) for k in range(self.cols)), Fraction(0)))
        return MatrixQ(self.rows, other.cols, out)

    def apply(self, vec):
        """Matrix-vector product, vec of length cols."""
        vec = [as_rational(x) for x in vec]
        if len(vec) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        return tuple(
            sum((self.entry(i, j) * vec[j] for j in range(self.cols)), Fraction(0))
            for i in range(self.rows)
        )

    def __eq__(self, other):
        return (
            isinstance(other, MatrixQ)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"MatrixQ[{body}]"

    def _integer_rows(self):
        """Rows rescaled to coprime integers (kills denominators, keeps rank)."""
        out = []
        for i in range(self.rows):
            r = self.row(i)
            lcm = 1
            for x in r:
                lcm = lcm * x.denominator // gcd(lcm, x.denominator)
            ints = [int(x * lcm) for x in r]
            g = 0
            for v in ints:
                g = gcd(g, abs(v))
            if g > 1:
                ints = [v // g for v in ints]
            out.append(ints)
        return out

    def _bareiss_echelon(self):
        """Fraction-free row echelon form; returns (integer rows, pivot columns)."""
        m = self._integer_rows()
        nrows, ncols = self.rows, self.cols
        pivots = []
        prev = 1
        r = 0
        for c in range(ncols):
            pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
            if pr is None:
                continue
            m[r], m[pr] = m[pr], m[r]
            piv = m[r][c]
            for i in range(r + 1, nrows):
                for j in range(c + 1, ncols):
                    m[i][j] = (piv * m[i][j] - m[i][c] * m[r][j]) // prev
                m[i][c] = 0
            pivots.append(c)
            prev = piv
            r += 1
            if r == nrows:
                break
        return m, pivots

    def rank(self) -> int:
        return len(self._bareiss_echelon()[1])

    def kernel_basis(self):
        """Basis of the right null space, as primitive integer vectors.

        Size is cols - rank; each vector satisfies M v = 0 exactly.  The
        basis follows the standard free-column construction on the echelon
        form, so the output is deterministic.
        """
        ech, pivots = self._bareiss_echelon()
        free = [c for c in range(self.cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * self.cols
            v[fc] = Fraction(1)
            # back-substitute pivot rows bottom-up
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                s = sum(
                    (Fraction(ech[r][j]) * v[j] for j in range(pc + 1, self.cols)),
                    Fraction(0),
                )
                v[pc] = -s / ech[r][pc]
            basis.append(primitive_vector(v))
        return basis

    def solve(self, b):
        """Unique solution x of M x = b (requires full column rank).

        Raises ValueError if the system is inconsistent or underdetermined.
        """
        b = [as_rational(x) for x in b]
        if len(b) != self.rows:
            raise ValueError("dimension mismatch in solve")
        aug = [list(self.row(i)) + [b[i]] for i in range(self.rows)]
        n = self.cols
        row = 0
        piv_of_col = {}
        for c in range(n):
            pr = next((i for i in range(row, self.rows) if aug[i][c] != 0), None)
            if pr is None:
                continue
            aug[row], aug[pr] = aug[pr], aug[row]
            pv = aug[row][c]
            aug[row] = [x / pv for x in aug[row]]
            for i in range(self.rows):
                if i != row and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
            piv_of_col[c] = row
            row += 1
        if len(piv_of_col) < n:
            raise ValueError("matrix does not have full column rank")
        for i in range(row, self.rows):
            if aug[i][n] != 0:
                raise ValueError("inconsistent system")
        x = [Fraction(0)] * n
        for c, r in piv_of_col.items():
            x[c] = aug[r][n]
        return tuple(x)

    def inverse(self) -> "MatrixQ":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        cols = []
        for j in range(n):
            e = [Fraction(int(i == j)) for i in range(n)]
            cols.append(self.solve(e))
        return MatrixQ(n, n, [cols[j][i] for i in range(n) for j in range(n)])


def rank(m: MatrixQ) -> int:
    return m.rank()


def kernel_basis(m: MatrixQ):
    return m.kernel_basis()


def primitive_vector(v):
    """Scale a rational vector to coprime integers, first nonzero entry positive."""
    v = [as_rational(x) for x in v]
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x != 0), None)
    if lead is not None and lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def normalize_projective(v):
    """Canonical representative of a projective point: coprime integers,
    first nonzero coordinate positive.  Raises on the zero vector."""
    w = primitive_vector(v)
    if all(x == 0 for x in w):
        raise ValueError("zero vector is not a projective point")
    return tuple(int(x) for x in w)


def format_projective(v) -> str:
    return "(" + ":".join(str(x) for x in normalize_projective(v)) + ")"


def _coerce_form(f):
    """A linear form is a tuple of exact scalars (Fraction or Cyclo)."""
    out = []
    cyclo = any(isinstance(x, Cyclo) for x in f)
    for x in f:
        out.append(Cyclo.coerce(x) if cyclo else as_rational(x))
    return tuple(out)


def _proportional(u, v) -> bool:
    """u in span{v} for nonzero v, by cross products (no division)."""
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] * v[j] != u[j] * v[i]:
                return False
    return True


def proportional_mod(f, g, m):
    """Solve f = c*g + d*m with c != 0, in the span sense.

    f, g, m are linear forms (equal-length tuples of exact scalars), m != 0.
    Returns the pair (c, d) when it exists, else None.  Works over Q and
    over Q(omega); the verification is exact coefficient comparison.
    """
    n = len(f)
    if not (len(g) == len(m) == n):
        raise ValueError("forms must have equal length")
    everything = list(f) + list(g) + list(m)
    cyclo = any(isinstance(x, Cyclo) for x in everything)
    conv = Cyclo.coerce if cyclo else as_rational
    f = tuple(conv(x) for x in f)
    g = tuple(conv(x) for x in g)
    m = tuple(conv(x) for x in m)
    zero = conv(0)
    one = conv(1)
    if all(x == zero for x in m):
        raise ValueError("modulus form m must be nonzero")

    if _proportional(g, m):
        # span{g, m} = span{m}: any c works, pick c = 1, need f - g in span{m}
        if not _proportional(f, m):
            return None
        k = next(i for i in range(n) if m[i] != zero)
        d = (f[k] - g[k]) / m[k]
        cand = (one, d)
    else:
        k = next(i for i in range(n) if m[i] != zero)
        fr = tuple(f[i] - (f[k] / m[k]) * m[i] for i in range(n))
        gr = tuple(g[i] - (g[k] / m[k]) * m[i] for i in range(n))
        j = next(i for i in range(n) if gr[i] != zero)
        c = fr[j] / gr[j]
        if c == zero:
            return None
        d = (f[k] - c * g[k]) / m[k]
        cand = (c, d)

    c, d = cand
    if all(f[i] == c * g[i] + d * m[i] for i in range(n)):
        return cand
    return None


def generic_rank(rows) -> int:
    """Rank by plain Gaussian elimination over any exact field (Q or Q(omega)).

    Used as the independent cross-check for proportional_mod and for forms
    with cyclotomic coefficients, where MatrixQ does not apply.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rk = 0
    for c in range(ncols):
        pr = next((i for i in range(rk, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[rk], m[pr] = m[pr], m[rk]
        piv = m[rk][c]
        for i in range(nrows):
            if i != rk and m[i][c] != 0:
                factor = m[i][c] / piv
                m[i] = [x - factor * y for x, y in zip(m[i], m[rk])]
        rk += 1
        if rk == nrows:
            break
    return rk
