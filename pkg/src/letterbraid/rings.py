"""Exact coefficient arithmetic over Z, Q and F_p, plus the dense integer and
field linear-algebra kernels (echelon, Hermite, Smith) everything else calls.

Scalars are ordinary Python values: ``int`` for integer and prime-field
coefficients (prime-field residues canonical in ``0..p-1``) and
``fractions.Fraction`` for rationals (always in lowest terms with positive
denominator).  There is no floating point anywhere in this package.

Matrices are dense, desk scale.  Integer kernels are always *saturated*:
every integer solution of ``M v = 0`` is an integer combination of the
returned basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class RingSpec:
    """A coefficient ring: one of the integers, the rationals, or F_p."""

    kind: str = "?"
    p = None

    def __eq__(self, other):
        return isinstance(other, RingSpec) and self.kind == other.kind and self.p == other.p

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        if self.kind == "prime-field":
            return f"GF({self.p})"
        return {"integers": "ZZ", "rationals": "QQ"}.get(self.kind, self.kind)

    @property
    def is_field(self):
        return self.kind != "integers"

    # Subclasses provide: zero, one, from_int, add, sub, mul, neg,
    # invert, divide (exact, raises on failure), parse, format.

    @staticmethod
    def normalize(v):
        """Canonical form of an externally supplied value."""
        return v

    def sum(self, values):
        total = self.zero
        for v in values:
            total = self.add(total, v)
        return total


class IntegerRing(RingSpec):
    kind = "integers"
    zero = 0
    one = 1

    @staticmethod
    def from_int(n):
        return int(n)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def invert(a):
        if a in (1, -1):
            return a
        raise ValueError(f"{a} is not a unit in ZZ")

    @staticmethod
    def divide(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in ZZ")
        q, r = divmod(a, b)
        if r != 0:
            raise ValueError(f"{a} is not divisible by {b} in ZZ")
        return q

    @staticmethod
    def parse(text):
        try:
            return int(text)
        except ValueError:
            raise ValueError(f"malformed integer scalar {text!r}") from None

    @staticmethod
    def format(v):
        return str(v)


class RationalRing(RingSpec):
    kind = "rationals"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def from_int(n):
        return Fraction(n)

    @staticmethod
    def normalize(v):
        return Fraction(v)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def invert(a):
        if a == 0:
            raise ZeroDivisionError("0 is not invertible in QQ")
        return 1 / Fraction(a)

    @staticmethod
    def divide(a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in QQ")
        return Fraction(a) / b

    @staticmethod
    def parse(text):
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"malformed rational scalar {text!r}") from None

    @staticmethod
    def format(v):
        return str(v)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField(RingSpec):
    kind = "prime-field"
    zero = 0
    one = 1

    def __init__(self, p):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def from_int(self, n):
        return n % self.p

    def normalize(self, v):
        return v % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def invert(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError(f"0 is not invertible in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def divide(self, a, b):
        return self.mul(a, self.invert(b))

    def parse(self, text):
        try:
            return int(text) % self.p
        except ValueError:
            raise ValueError(f"malformed GF({self.p}) scalar {text!r}") from None

    def format(self, v):
        return str(v % self.p)


ZZ = IntegerRing()
QQ = RationalRing()


def ring_from_flag(flag):
    """Translate a CLI ring flag (``z``, ``q`` or ``fp:<p>``) into a RingSpec."""
    flag = flag.strip().lower()
    if flag == "z":
        return ZZ
    if flag == "q":
        return QQ
    if flag.startswith("fp:"):
        try:
            p = int(flag[3:])
        except ValueError:
            raise ValueError(f"bad ring flag {flag!r}") from None
        return PrimeField(p)
    raise ValueError(f"bad ring flag {flag!r}; expected z, q or fp:<p>")


@dataclass(frozen=True)
class Scalar:
    """A ring value together with its ring, for boundary code (CLI, JSON)."""

    ring: RingSpec
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.from_int(self.value)
                           if isinstance(self.value, int) and self.ring.kind != "integers"
                           else self.value)

    def __add__(self, other):
        assert self.ring == other.ring
        return Scalar(self.ring, self.ring.add(self.value, other.value))

    def __mul__(self, other):
        assert self.ring == other.ring
        return Scalar(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def __str__(self):
        return self.ring.format(self.value)


class Matrix:
    """Dense matrix over a RingSpec.  Entries are a list of row lists."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, entries, cols=None):
        self.ring = ring
        self.entries = [[ring.normalize(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if self.rows:
            self.cols = len(self.entries[0])
            if any(len(row) != self.cols for row in self.entries):
                raise ValueError("ragged matrix")
        else:
            self.cols = 0 if cols is None else cols

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)]
                          for i in range(n)])

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols} columns, vector of length {len(v)}")
        ring = self.ring
        return [ring.sum(ring.mul(row[j], v[j]) for j in range(self.cols))
                for row in self.entries]

    def transpose(self):
        return Matrix(self.ring,
                      [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
                      cols=self.rows)

    def __repr__(self):
        return f"Matrix({self.ring!r}, {self.entries!r})"


def mat_mul(A, B):
    assert A.ring == B.ring and A.cols == B.rows
    ring = A.ring
    out = [[ring.sum(ring.mul(A.entries[i][k], B.entries[k][j]) for k in range(A.cols))
            for j in range(B.cols)] for i in range(A.rows)]
    return Matrix(ring, out, cols=B.cols)


# ---------------------------------------------------------------------------
# field elimination

def rref(ring, rows_in):
    """Reduced row echelon form over a field.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows_in]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != ring.zero), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ring.invert(rows[r][c])
        rows[r] = [ring.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != ring.zero:
                f = rows[i][c]
                rows[i] = [ring.sub(rows[i][j], ring.mul(f, rows[r][j])) for j in range(ncols)]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [row for row in rows[:r]], pivots


def _field_solve(ring, M, b):
    """One solution of M x = b over a field (free variables set to zero)."""
    aug = [list(M.entries[i]) + [b[i]] for i in range(M.rows)]
    rows, pivots = rref(ring, aug)
    n = M.cols
    for row in rows:
        if all(x == ring.zero for x in row[:n]) and row[n] != ring.zero:
            return None
    x = [ring.zero] * n
    for row, c in zip(rows, pivots):
        if c == n:
            return None
        x[c] = row[n]
    return x


# ---------------------------------------------------------------------------
# integer elimination: Hermite and Smith forms

def row_hermite(rows_in, transform=False):
    """Row-style Hermite normal form of an integer matrix.

    Returns (H, pivots) or (H, pivots, U) with U unimodular, U*M = H.
    Pivots are positive, entries below a pivot vanish and entries above it
    are reduced into [0, pivot).
    """
    H = [list(r) for r in rows_in]
    m = len(H)
    n = len(H[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    pivots = []
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(H[i][c]))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                if transform:
                    U[r], U[i0] = U[i0], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [H[i][j] - q * H[r][j] for j in range(n)]
                    if transform:
                        U[i] = [U[i][j] - q * U[r][j] for j in range(m)]
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                if transform:
                    U[r] = [-x for x in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [H[i][j] - q * H[r][j] for j in range(n)]
                    if transform:
                        U[i] = [U[i][j] - q * U[r][j] for j in range(m)]
            pivots.append(c)
            r += 1
            if r == m:
                break
    if transform:
        return H, pivots, U
    return H, pivots


def kernel_basis(M):
    """Basis of {v : M v = 0}.

    Over a field: a reduced-echelon basis of the kernel space.  Over ZZ: a
    basis of the saturated kernel lattice (columns of the unimodular
    transform matching the zero columns of the Hermite form), canonicalized
    by a further row-Hermite pass.
    """
    ring = M.ring
    if M.cols == 0:
        return []
    if M.rows == 0:
        return [[ring.one if j == i else ring.zero for j in range(M.cols)]
                for i in range(M.cols)]
    if ring.is_field:
        rows, pivots = rref(ring, M.entries)
        pivot_set = set(pivots)
        free = [c for c in range(M.cols) if c not in pivot_set]
        basis = []
        for f in free:
            v = [ring.zero] * M.cols
            v[f] = ring.one
            for row, c in zip(rows, pivots):
                v[c] = ring.neg(row[f])
            basis.append(v)
        return basis
    # ZZ: column Hermite via row Hermite of the transpose.
    cols_t = [[M.entries[i][j] for i in range(M.rows)] for j in range(M.cols)]
    H, pivots, U = row_hermite(cols_t, transform=True)
    rank = len(pivots)
    raw = [U[i] for i in range(rank, M.cols)]
    if not raw:
        return []
    canon, _ = row_hermite(raw)
    return [row for row in canon if any(row)]


def membership(M, b):
    """Solve M x = b over the ring, or return None if unsolvable.

    Over ZZ solvability is integral (via the Hermite form); over a field it
    is ordinary linear solvability.
    """
    if len(b) != M.rows:
        raise ValueError(f"dimension mismatch: {M.rows} rows, vector of length {len(b)}")
    ring = M.ring
    if M.cols == 0:
        return [] if all(x == ring.zero for x in b) else None
    if ring.is_field:
        return _field_solve(ring, M, b)
    cols_t = [[M.entries[i][j] for i in range(M.rows)] for j in range(M.cols)]
    H, pivots, U = row_hermite(cols_t, transform=True)
    # M * U^T = H^T, so solve H^T y = b by forward substitution on pivot rows.
    y = [0] * M.cols
    for j, prow in enumerate(pivots):
        acc = b[prow] - sum(H[jj][prow] * y[jj] for jj in range(j))
        d = H[j][prow]
        if acc % d != 0:
            return None
        y[j] = acc // d
    # Verify the remaining coordinates.
    for i in range(M.rows):
        if sum(H[j][i] * y[j] for j in range(len(pivots))) != b[i]:
            return None
    return [sum(U[j][c] * y[j] for j in range(len(pivots))) for c in range(M.cols)]


def smith_form(M):
    """Smith normal form of an integer matrix: (U, D, V) with U*M*V = D,
    U and V unimodular, and the diagonal divisor chain d1 | d2 | ...
    """
    if M.ring != ZZ:
        raise ValueError("smith_form requires integer entries")
    D = [list(row) for row in M.entries]
    m, n = M.rows, M.cols
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        D[i] = [D[i][c] - q * D[j][c] for c in range(n)]
        U[i] = [U[i][c] - q * U[j][c] for c in range(m)]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            D[r][i] -= q * D[r][j]
        for r in range(n):
            V[r][i] -= q * V[r][j]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in range(m):
            D[r][i], D[r][j] = D[r][j], D[r][i]
        for r in range(n):
            V[r][i], V[r][j] = V[r][j], V[r][i]

    t = 0
    while t < min(m, n):
        # Locate a pivot of minimal absolute value in the trailing block.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, D[i][t] // D[t][t])
            bad = next((i for i in range(t + 1, m) if D[i][t]), None)
            if bad is not None:
                swap_rows(t, bad)
                continue
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, D[t][j] // D[t][t])
            bad = next((j for j in range(t + 1, n) if D[t][j]), None)
            if bad is not None:
                swap_cols(t, bad)
                continue
            # Enforce divisibility of the trailing block by the pivot.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % D[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # add offending row into the pivot row
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return Matrix(ZZ, U), Matrix(ZZ, D, cols=n), Matrix(ZZ, V)


def elementary_divisors(M):
    """Diagonal of the Smith form, in divisor-chain order."""
    _, D, _ = smith_form(M)
    return [D.entries[i][i] for i in range(min(M.rows, M.cols))]


def det(M):
    """Determinant, exact.  Uses Bareiss for ZZ, elimination for fields."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return M.ring.one
    ring = M.ring
    if ring == ZZ:
        a = [list(row) for row in M.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [list(row) for row in M.entries]
    result = ring.one
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != ring.zero), None)
        if pivot is None:
            return ring.zero
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            result = ring.neg(result)
        result = ring.mul(result, a[k][k])
        inv = ring.invert(a[k][k])
        for i in range(k + 1, n):
            f = ring.mul(a[i][k], inv)
            if f != ring.zero:
                a[i] = [ring.sub(a[i][j], ring.mul(f, a[k][j])) for j in range(n)]
    return result


def rank(M):
    ring = M.ring
    if ring.is_field:
        _, pivots = rref(ring, M.entries)
    else:
        _, pivots = row_hermite(M.entries)
    return len(pivots)
