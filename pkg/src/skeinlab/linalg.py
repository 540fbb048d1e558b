"""Exact scalar and matrix arithmetic over Q and cyclotomic fields Q(zeta_n).

Scalars are residues mod the n-th cyclotomic polynomial, stored as tuples of
``Fraction`` of length phi(n) (length 1 for plain rationals).  Everything here
is exact; there is no floating point and no tolerance anywhere.

Matrix kernels use fraction-preserving Gauss-Jordan elimination that skips
zero entries, which keeps the sparse, monomial-like matrices produced by the
category backends fast to reduce.
"""

from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch


def euler_phi(n):
    assert n >= 1
    count = 0
    for k in range(1, n + 1):
        a, b = n, k
        while b:
            a, b = b, a % b
        if a == 1:
            count += 1
    return count


def _poly_divmod_int(num, den):
    # exact division of integer polynomials, low-to-high coefficients
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact polynomial division")
        q = c // den[-1]
        out[i - dd] = q
        for j, d in enumerate(den):
            num[i - dd + j] -= q * d
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return out


def cyclotomic_polynomial(n):
    """Integer coefficients of Phi_n, low to high degree."""
    assert n >= 1
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divmod_int(poly, cyclotomic_polynomial(d))
    return poly


_ZERO = Fraction(0)
_ONE = Fraction(1)

_FIELD_CACHE = {}


class Field:
    """Field descriptor: the rationals (order 1) or Q(zeta_n) (order n >= 2)."""

    __slots__ = ("order", "degree", "modulus", "_red", "zero", "one", "_gen")

    def __new__(cls, order):
        if order in _FIELD_CACHE:
            return _FIELD_CACHE[order]
        self = object.__new__(cls)
        assert order >= 1
        self.order = order
        if order == 1:
            self.degree = 1
            self.modulus = None
            self._red = None
        else:
            self.degree = euler_phi(order)
            self.modulus = tuple(Fraction(c) for c in cyclotomic_polynomial(order))
            self._red = self._reduction_rows()
        m = self.degree
        self.zero = Scalar(self, (_ZERO,) * m)
        self.one = Scalar(self, (_ONE,) + (_ZERO,) * (m - 1))
        if order >= 2:
            if m == 1:
                # phi(2)=1: zeta_2 = -1 is already rational
                self._gen = Scalar(self, (Fraction(-self.modulus[0]),))
            else:
                self._gen = Scalar(self, (_ZERO, _ONE) + (_ZERO,) * (m - 2))
        else:
            self._gen = None
        _FIELD_CACHE[order] = self
        return self

    @classmethod
    def rational(cls):
        return cls(1)

    @classmethod
    def cyclotomic(cls, order):
        assert order >= 2
        return cls(order)

    def _reduction_rows(self):
        # rows giving x^(m+k) mod Phi_n for k = 0 .. m-2
        m = self.degree
        rows = []
        cur = [-c for c in self.modulus[:m]]  # x^m mod Phi
        rows.append(tuple(cur))
        for _ in range(m - 2):
            nxt = [_ZERO] + cur[: m - 1]
            top = cur[m - 1]
            if top:
                nxt = [a + top * b for a, b in zip(nxt, rows[0])]
            cur = nxt
            rows.append(tuple(cur))
        return rows

    @property
    def gen(self):
        """The root of unity zeta_n; undefined for the rational field."""
        assert self._gen is not None, "rational field has no generator"
        return self._gen

    def scalar(self, value):
        """Promote an int, Fraction, string 'p/q' or Scalar to this field."""
        if isinstance(value, Scalar):
            if value.field is not self:
                raise FieldMismatch(f"scalar of {value.field} used in {self}")
            return value
        if isinstance(value, str):
            value = Fraction(value)
        value = Fraction(value)
        return Scalar(self, (value,) + (_ZERO,) * (self.degree - 1))

    def from_coeffs(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) != self.degree:
            raise FieldMismatch(
                f"{self} needs {self.degree} coefficients, got {len(coeffs)}"
            )
        return Scalar(self, tuple(coeffs))

    def decode(self, value):
        """Parse the JSON encoding: 'p/q' or a list of 'p/q' of length phi(n)."""
        if isinstance(value, list):
            return self.from_coeffs([Fraction(str(c)) for c in value])
        return self.scalar(str(value))

    def encode(self, s):
        if self.order == 1:
            return str(s.coeffs[0])
        return [str(c) for c in s.coeffs]

    def to_json(self):
        if self.order == 1:
            return {"type": "rational"}
        return {"type": "cyclotomic", "order": self.order}

    @classmethod
    def from_json(cls, obj):
        if obj.get("type") == "rational":
            return cls.rational()
        if obj.get("type") == "cyclotomic":
            return cls.cyclotomic(int(obj["order"]))
        raise FieldMismatch(f"unknown field descriptor {obj!r}")

    # raw tuple arithmetic ------------------------------------------------

    def _mul(self, a, b):
        m = self.degree
        if m == 1:
            return (a[0] * b[0],)
        conv = [_ZERO] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:m]
        for k in range(m - 1):
            top = conv[m + k]
            if top:
                row = self._red[k]
                out = [c + top * r for c, r in zip(out, row)]
        return tuple(out)

    def _inv(self, a):
        if all(c == 0 for c in a):
            raise DivisionByZero("inverse of zero")
        if self.degree == 1:
            return (1 / a[0],)
        # extended Euclid in Q[x] against the cyclotomic modulus
        r0, r1 = list(self.modulus), list(a)
        s0, s1 = [_ZERO], [_ONE]
        while True:
            while r1 and r1[-1] == 0:
                r1.pop()
            assert r1, "cyclotomic modulus is irreducible; gcd must be a unit"
            if len(r1) == 1:
                c = r1[0]
                out = [s / c for s in s1]
                out += [_ZERO] * (self.degree - len(out))
                return tuple(out[: self.degree])
            q = [_ZERO] * (len(r0) - len(r1) + 1)
            rem = list(r0)
            for i in range(len(rem) - 1, len(r1) - 2, -1):
                f = rem[i] / r1[-1]
                if f:
                    q[i - len(r1) + 1] = f
                    for j, d in enumerate(r1):
                        rem[i - len(r1) + 1 + j] -= f * d
            while rem and rem[-1] == 0:
                rem.pop()
            st = [_ZERO] * (len(q) + len(s1) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        st[i + j] += qi * sj
            snew = [a0 - b0 for a0, b0 in
                    zip(s0 + [_ZERO] * max(0, len(st) - len(s0)),
                        st + [_ZERO] * max(0, len(s0) - len(st)))]
            r0, r1 = r1, rem
            s0, s1 = s1, snew

    def __repr__(self):
        return "Q" if self.order == 1 else f"Q(zeta_{self.order})"


class Scalar:
    """An exact field element: a residue mod Phi_n with Fraction coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        return self.field.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Scalar(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inv(self):
        return Scalar(self.field, self.field._inv(self.coeffs))

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str)):
            other = self.field.scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __repr__(self):
        if self.field.order == 1:
            return str(self.coeffs[0])
        return f"cyc{self.field.order}{list(map(str, self.coeffs))}"


class Matrix:
    """A rows x cols matrix of Scalars over one field, row-major entries."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows, cols, entries):
        assert len(entries) == rows * cols
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    @classmethod
    def identity(cls, field, n):
        ent = [field.zero] * (n * n)
        for i in range(n):
            ent[i * n + i] = field.one
        return cls(field, n, n, ent)

    @classmethod
    def from_rows(cls, field, rows):
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        ent = []
        for r in rows:
            assert len(r) == ncols
            ent.extend(field.scalar(x) if not isinstance(x, Scalar) else x for x in r)
        return cls(field, nrows, ncols, ent)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and all(
            a == b for a, b in zip(self.entries, other.entries)
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def __add__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix(self.field, self.rows, self.cols,
                      [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        assert (self.rows, self.cols) == (other.rows, other.cols)
        return Matrix(self.field, self.rows, self.cols,
                      [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Matrix(self.field, self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, scalar):
        scalar = self.field.scalar(scalar) if not isinstance(scalar, Scalar) else scalar
        return Matrix(self.field, self.rows, self.cols, [scalar * a for a in self.entries])

    __rmul__ = __mul__

    def __matmul__(self, other):
        assert self.cols == other.rows, (self.cols, other.rows)
        zero = self.field.zero
        n, m, p = self.rows, self.cols, other.cols
        out = [zero] * (n * p)
        oe = other.entries
        se = self.entries
        for i in range(n):
            base = i * m
            obase = i * p
            for k in range(m):
                a = se[base + k]
                if a.is_zero():
                    continue
                rb = k * p
                for j in range(p):
                    b = oe[rb + j]
                    if not b.is_zero():
                        out[obase + j] = out[obase + j] + a * b
        return Matrix(self.field, n, p, out)

    def transpose(self):
        ent = [self.field.zero] * (self.rows * self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                ent[j * self.rows + i] = self.entries[i * self.cols + j]
        return Matrix(self.field, self.cols, self.rows, ent)

    def kron(self, other):
        """Kronecker product; the left factor indexes the major tensor slot."""
        f = self.field
        n1, m1, n2, m2 = self.rows, self.cols, other.rows, other.cols
        out = [f.zero] * (n1 * n2 * m1 * m2)
        cols = m1 * m2
        for i1 in range(n1):
            for j1 in range(m1):
                a = self.entries[i1 * m1 + j1]
                if a.is_zero():
                    continue
                for i2 in range(n2):
                    rowbase = (i1 * n2 + i2) * cols + j1 * m2
                    obase = i2 * m2
                    for j2 in range(m2):
                        b = other.entries[obase + j2]
                        if not b.is_zero():
                            out[rowbase + j2] = a * b
        return Matrix(f, n1 * n2, m1 * m2, out)

    @classmethod
    def vstack(cls, mats):
        assert mats
        cols = mats[0].cols
        ent = []
        for m in mats:
            assert m.cols == cols
            ent.extend(m.entries)
        return cls(mats[0].field, sum(m.rows for m in mats), cols, ent)

    @classmethod
    def hstack(cls, mats):
        assert mats
        rows = mats[0].rows
        ent = []
        for i in range(rows):
            for m in mats:
                assert m.rows == rows
                ent.extend(m.row(i))
        return cls(mats[0].field, rows, sum(m.cols for m in mats), ent)

    def is_zero(self):
        return all(a.is_zero() for a in self.entries)

    def _rref_rows(self):
        """Reduced row echelon form; returns (row lists, pivot column list)."""
        rows = [self.row(i) for i in range(self.rows)]
        ncols = self.cols
        pivots = []
        r = 0
        for c in range(ncols):
            pr = None
            for i in range(r, len(rows)):
                if not rows[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            prow = rows[r]
            p = prow[c]
            if not p.is_one():
                pinv = p.inv()
                prow = [e * pinv for e in prow]
                rows[r] = prow
            nz = [j for j in range(c, ncols) if not prow[j].is_zero()]
            for i in range(len(rows)):
                if i == r:
                    continue
                f = rows[i][c]
                if f.is_zero():
                    continue
                row = rows[i]
                for j in nz:
                    row[j] = row[j] - f * prow[j]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return rows, pivots

    def rank(self):
        return len(self._rref_rows()[1])

    def kernel(self):
        """Basis of the right null space, as columns; cols = cols - rank."""
        rows, pivots = self._rref_rows()
        free = [c for c in range(self.cols) if c not in pivots]
        f = self.field
        ent = [f.zero] * (self.cols * len(free))
        for k, fc in enumerate(free):
            ent[fc * len(free) + k] = f.one
            for r, pc in enumerate(pivots):
                v = rows[r][fc]
                if not v.is_zero():
                    ent[pc * len(free) + k] = -v
        return Matrix(f, self.cols, len(free), ent)

    def cokernel(self):
        """Projection onto a complement of the column space.

        Returns Q with Q @ self == 0 and rank(Q) = rows - rank(self); the
        rows of Q are quotient coordinates for coker = target / im(self).
        """
        return self.transpose().kernel().transpose()

    def solve(self, rhs):
        """Exact particular solution X of self @ X = rhs (free vars at zero).

        Raises ValueError when the system is inconsistent.
        """
        assert rhs.rows == self.rows
        aug = Matrix.hstack([self, rhs])
        rows, pivots = aug._rref_rows()
        n = self.cols
        for r, pc in enumerate(pivots):
            if pc >= n:
                raise ValueError("inconsistent linear system")
        f = self.field
        ent = [f.zero] * (n * rhs.cols)
        for r, pc in enumerate(pivots):
            for j in range(rhs.cols):
                ent[pc * rhs.cols + j] = rows[r][n + j]
        return Matrix(f, n, rhs.cols, ent)

    def inverse(self):
        assert self.rows == self.cols
        x = self.solve(Matrix.identity(self.field, self.rows))
        if not (self @ x == Matrix.identity(self.field, self.rows)):
            raise ValueError("matrix is singular")
        return x

    def to_lists(self):
        """Row-major nested lists in the scalar text encoding."""
        enc = self.field.encode
        return [[enc(self.entries[i * self.cols + j]) for j in range(self.cols)]
                for i in range(self.rows)]

    @classmethod
    def from_lists(cls, field, lists):
        rows = len(lists)
        cols = len(lists[0]) if rows else 0
        ent = []
        for r in lists:
            assert len(r) == cols
            ent.extend(field.decode(x) for x in r)
        return cls(field, rows, cols, ent)

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols} over {self.field})"


def solve_sylvester_family(pairs, dims=None, field=None):
    """Basis of {T : A_i @ T = T @ B_i for all i}, via vectorization.

    ``pairs`` is a list of (A_i, B_i) with all A_i square of one size and all
    B_i square of one size.  Returns a matrix whose columns are column-major
    vectorizations vec(T); use :func:`unvec` to recover each T.  For an empty
    family pass ``dims=(n_a, n_b)`` and ``field``.
    """
    if not pairs:
        assert dims is not None and field is not None
        na, nb = dims
        return Matrix.identity(field, na * nb)
    na = pairs[0][0].rows
    nb = pairs[0][1].rows
    field = pairs[0][0].field
    blocks = []
    ia = Matrix.identity(field, na)
    ib = Matrix.identity(field, nb)
    for a, b in pairs:
        assert a.rows == a.cols == na and b.rows == b.cols == nb
        blocks.append(ib.kron(a) - b.transpose().kron(ia))
    return Matrix.vstack(blocks).kernel()


def unvec(field, column, n_rows, n_cols):
    """Reshape a column-major vectorization back into an n_rows x n_cols matrix."""
    assert len(column) == n_rows * n_cols
    ent = [field.zero] * (n_rows * n_cols)
    for j in range(n_cols):
        for i in range(n_rows):
            ent[i * n_cols + j] = column[j * n_rows + i]
    return Matrix(field, n_rows, n_cols, ent)
