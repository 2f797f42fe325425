"""Exact linear algebra over Q(i) and over Q(i) extended by one formal scale s.

Every quantity in the package funnels through the types defined here:
rational scalars (arbitrary precision), Gaussian rationals, scalars of the
form c + d*s with s a formal transcendental, and dense matrices with a
deterministic reduced-row-echelon kernel routine.  No floating point is used
anywhere.
"""

try:
    from gmpy2 import mpq as RAT
    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - gmpy2 present in normal installs
    from fractions import Fraction as RAT
    BACKEND = "fractions"

RAT_ZERO = RAT(0)
RAT_ONE = RAT(1)


def rat_from_literal(text):
    """Parse a rational literal "p" or "p/q" (optional sign, no whitespace)."""
    text = text.strip()
    if text.startswith("+"):
        text = text[1:]
    if not text:
        raise ValueError("empty rational literal")
    return RAT(text)


def rat_to_literal(q):
    return str(q)


class GaussianRational:
    """A number a + b*i with a, b exact rationals, kept canonically reduced."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(RAT_ZERO) else RAT(re)
        self.im = im if type(im) is type(RAT_ZERO) else RAT(im)

    def __add__(self, other):
        if isinstance(other, ScaledScalar):
            return NotImplemented
        other = as_gauss(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ScaledScalar):
            return NotImplemented
        other = as_gauss(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_gauss(other) - self

    def __mul__(self, other):
        if isinstance(other, ScaledScalar):
            return NotImplemented
        other = as_gauss(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_gauss(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return as_gauss(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, ScaledScalar):
            return other == self
        other = as_gauss(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def is_rational(self):
        return self.im == 0

    def is_integer(self):
        return self.im == 0 and self.re.denominator == 1

    def __repr__(self):
        return "G(%s)" % gauss_to_literal(self)

    def __str__(self):
        return gauss_to_literal(self)


G_ZERO = GaussianRational(0, 0)
G_ONE = GaussianRational(1, 0)
G_I = GaussianRational(0, 1)


def as_gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, ScaledScalar):
        return x.as_gauss()
    return GaussianRational(RAT(x), RAT_ZERO)


def gauss_from_literal(text):
    """Parse "p/q", "p", "p/q*i", "a+b*i" (also bare "i", "-i")."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty scalar literal")
    # split into at most two signed terms
    terms = []
    start = 0
    for k in range(1, len(text)):
        if text[k] in "+-" and text[k - 1] not in "+-/*":
            terms.append(text[start:k])
            start = k
    terms.append(text[start:])
    if len(terms) > 2:
        raise ValueError("malformed scalar literal %r" % text)
    re = RAT_ZERO
    im = RAT_ZERO
    seen_re = seen_im = False
    for term in terms:
        if term.endswith("i"):
            if seen_im:
                raise ValueError("malformed scalar literal %r" % text)
            seen_im = True
            body = term[:-1]
            if body.endswith("*"):
                body = body[:-1]
            if body in ("", "+"):
                im = im + RAT_ONE
            elif body == "-":
                im = im - RAT_ONE
            else:
                im = im + rat_from_literal(body)
        else:
            if seen_re:
                raise ValueError("malformed scalar literal %r" % text)
            seen_re = True
            re = re + rat_from_literal(term)
    return GaussianRational(re, im)


def gauss_to_literal(g):
    """Canonical literal: "p", "p/q", "b*i", or "a+b*i" / "a-b*i"."""
    if g.im == 0:
        return str(g.re)
    if g.re == 0:
        return "%s*i" % g.im
    if g.im < 0:
        return "%s-%s*i" % (g.re, -g.im)
    return "%s+%s*i" % (g.re, g.im)


class ScaledScalar:
    """A scalar c + d*s where s is a fixed formal transcendental.

    Closed under addition and under multiplication by plain scalars; a
    product with both scale parts nonzero would leave the tracked degree
    and raises.  Zero iff both parts are zero (s is transcendental).
    """

    __slots__ = ("const", "scale")

    def __init__(self, const=G_ZERO, scale=G_ZERO):
        self.const = as_gauss(const)
        self.scale = as_gauss(scale)

    def __add__(self, other):
        other = as_scaled(other)
        return ScaledScalar(self.const + other.const, self.scale + other.scale)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scaled(other)
        return ScaledScalar(self.const - other.const, self.scale - other.scale)

    def __rsub__(self, other):
        return as_scaled(other) - self

    def __mul__(self, other):
        other = as_scaled(other)
        if not self.scale.is_zero() and not other.scale.is_zero():
            raise ValueError("product would carry s^2; not representable")
        return ScaledScalar(
            self.const * other.const,
            self.const * other.scale + self.scale * other.const,
        )

    __rmul__ = __mul__

    def __neg__(self):
        return ScaledScalar(-self.const, -self.scale)

    def conjugate(self):
        # s is a real formal parameter
        return ScaledScalar(self.const.conjugate(), self.scale.conjugate())

    def is_zero(self):
        return self.const.is_zero() and self.scale.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = as_scaled(other)
        return self.const == other.const and self.scale == other.scale

    def __hash__(self):
        return hash((self.const, self.scale))

    def as_gauss(self):
        if not self.scale.is_zero():
            raise ValueError("scalar %s carries the formal scale s" % self)
        return self.const

    def __repr__(self):
        return "S(%s)" % scaled_to_literal(self)

    def __str__(self):
        return scaled_to_literal(self)


def as_scaled(x):
    if isinstance(x, ScaledScalar):
        return x
    return ScaledScalar(as_gauss(x), G_ZERO)


def scaled_from_literal(text):
    """Parse "(d)*s", "c+(d)*s", or a plain Gaussian literal."""
    text = text.strip().replace(" ", "")
    if not text.endswith("*s"):
        return ScaledScalar(gauss_from_literal(text), G_ZERO)
    body = text[:-2]
    if not body.endswith(")"):
        raise ValueError("malformed scaled literal %r" % text)
    depth = 0
    for k in range(len(body) - 1, -1, -1):
        if body[k] == ")":
            depth += 1
        elif body[k] == "(":
            depth -= 1
            if depth == 0:
                break
    else:
        raise ValueError("malformed scaled literal %r" % text)
    scale = gauss_from_literal(body[k + 1:-1])
    head = body[:k]
    if head == "":
        const = G_ZERO
    else:
        if head.endswith("+"):
            const = gauss_from_literal(head[:-1])
        elif head.endswith("-"):
            const = gauss_from_literal(head[:-1])
            scale = -scale
        else:
            raise ValueError("malformed scaled literal %r" % text)
    return ScaledScalar(const, scale)


def scaled_to_literal(x):
    if x.scale.is_zero():
        return gauss_to_literal(x.const)
    tail = "(%s)*s" % gauss_to_literal(x.scale)
    if x.const.is_zero():
        return tail
    return "%s+%s" % (gauss_to_literal(x.const), tail)


class ExactMatrix:
    """Dense matrix over GaussianRational with deterministic elimination.

    Row reduction uses the fixed leftmost-nonzero pivot rule (scan columns
    left to right, take the first unused row with a nonzero entry), so
    echelon forms and kernel bases are identical across runs and platforms.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = [[as_gauss(x) for x in row] for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, n, m):
        return cls([[G_ZERO] * m for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[G_ONE if i == j else G_ZERO for j in range(n)] for i in range(n)])

    def copy(self):
        return ExactMatrix([row[:] for row in self.rows])

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and all(
                self.rows[i][j] == other.rows[i][j]
                for i in range(self.nrows)
                for j in range(self.ncols)
            )
        )

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [self.rows[i][j] + other.rows[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ]
        )

    def __sub__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return ExactMatrix(
            [
                [self.rows[i][j] - other.rows[i][j] for j in range(self.ncols)]
                for i in range(self.nrows)
            ]
        )

    def scale(self, c):
        c = as_gauss(c)
        return ExactMatrix([[c * x for x in row] for row in self.rows])

    def __mul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        bt = list(zip(*other.rows)) if other.rows else []
        for row in self.rows:
            out_row = []
            for col in bt:
                acc = G_ZERO
                for a, b in zip(row, col):
                    if a.is_zero() or b.is_zero():
                        continue
                    acc = acc + a * b
                out_row.append(acc)
            out.append(out_row)
        return ExactMatrix(out)

    def apply(self, vec):
        """Matrix times a column vector given as a list of scalars."""
        if self.ncols != len(vec):
            raise ValueError("shape mismatch")
        out = []
        for row in self.rows:
            acc = G_ZERO
            for a, b in zip(row, vec):
                if a.is_zero():
                    continue
                b = as_gauss(b)
                if b.is_zero():
                    continue
                acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self):
        return ExactMatrix([list(col) for col in zip(*self.rows)] if self.rows else [])

    def is_zero(self):
        return all(x.is_zero() for row in self.rows for x in row)

    def stack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return ExactMatrix([row[:] for row in self.rows] + [row[:] for row in other.rows])

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        rows = [row[:] for row in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot_row = None
            for k in range(r, self.nrows):
                if not rows[k][c].is_zero():
                    pivot_row = k
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = G_ONE / rows[r][c]
            # entries left of the pivot column are already zero in every
            # affected row, so updates run on the [c:] slice only
            rows[r] = rows[r][:c] + [
                x if x.is_zero() else inv * x for x in rows[r][c:]
            ]
            pivot_tail = rows[r][c:]
            for k in range(self.nrows):
                if k != r and not rows[k][c].is_zero():
                    f = rows[k][c]
                    row_k = rows[k]
                    tail = [
                        x if y.is_zero() else x - f * y
                        for x, y in zip(row_k[c:], pivot_tail)
                    ]
                    rows[k] = row_k[:c] + tail
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return ExactMatrix(rows), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Canonical kernel basis: one vector per free column, ascending."""
        reduced, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.ncols) if c not in pivot_set]
        basis = []
        for fc in free:
            vec = [G_ZERO] * self.ncols
            vec[fc] = G_ONE
            for r, pc in enumerate(pivots):
                vec[pc] = -reduced.rows[r][fc]
            basis.append(vec)
        return basis

    def solve(self, b):
        """One solution of self * x = b, or None if inconsistent."""
        if len(b) != self.nrows:
            raise ValueError("shape mismatch")
        aug = ExactMatrix([row + [as_gauss(v)] for row, v in zip(self.rows, b)])
        reduced, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [G_ZERO] * self.ncols
        for r, pc in enumerate(pivots):
            x[pc] = reduced.rows[r][self.ncols]
        return x

    def __repr__(self):
        return "ExactMatrix(%d x %d)" % (self.nrows, self.ncols)


def matrices_commute(a, b):
    return (a * b - b * a).is_zero()


def generalized_kernel(mat, c, order=None):
    """Basis of ker (mat - c I)^e with e = 2^k >= order (default: dimension).

    Repeated squaring keeps the elimination count at log2(order) matrix
    products; the stabilization exponent of a generalized eigenspace is at
    most the dimension, so the result is the full generalized eigenspace.
    """
    n = mat.nrows
    if mat.ncols != n:
        raise ValueError("square matrix required")
    if order is None:
        order = n
    p = mat - ExactMatrix.identity(n).scale(c)
    e = 1
    while e < order:
        p = p * p
        e *= 2
    return p.kernel_basis()


def joint_generalized_space(pairs):
    """Basis of the joint generalized eigenspace of commuting matrices.

    pairs: list of (matrix, scalar).  Rejects non-commuting input exactly.
    """
    if not pairs:
        raise ValueError("empty operator list")
    n = pairs[0][0].nrows
    for m, _ in pairs:
        if m.nrows != n or m.ncols != n:
            raise ValueError("operators must be square of equal size")
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            if not matrices_commute(pairs[a][0], pairs[b][0]):
                raise ValueError("operators do not commute")
    powered = []
    for m, c in pairs:
        p = m - ExactMatrix.identity(n).scale(c)
        e = 1
        while e < n:
            p = p * p
            e *= 2
        powered.append(p)
    stacked = powered[0]
    for p in powered[1:]:
        stacked = stacked.stack(p)
    return stacked.kernel_basis()


def vectors_to_matrix(vectors):
    """Column matrix from a list of coordinate vectors."""
    if not vectors:
        raise ValueError("no vectors")
    n = len(vectors[0])
    return ExactMatrix([[as_gauss(v[i]) for v in vectors] for i in range(n)])


def in_span(vectors, target):
    """Exact membership of target in the span of vectors."""
    if not vectors:
        return all(as_gauss(t).is_zero() for t in target)
    return vectors_to_matrix(vectors).solve(target) is not None


class SparseOp:
    """Square operator stored as columns of sparse coordinate dicts."""

    __slots__ = ("n", "cols")

    def __init__(self, n, cols=None):
        self.n = n
        if cols is None:
            cols = [dict() for _ in range(n)]
        self.cols = cols

    @staticmethod
    def diagonal(values):
        op = SparseOp(len(values))
        for j, v in enumerate(values):
            if _sp_nonzero(v):
                op.cols[j][j] = v
        return op

    def add_entry(self, i, j, val):
        col = self.cols[j]
        cur = col.get(i)
        cur = val if cur is None else cur + val
        if _sp_nonzero(cur):
            col[i] = cur
        elif i in col:
            del col[i]

    def entry(self, i, j):
        return self.cols[j].get(i, G_ZERO)

    def apply_vec(self, vec):
        out = [None] * self.n
        for j, x in enumerate(vec):
            if not _sp_nonzero(x):
                continue
            for i, v in self.cols[j].items():
                term = v * x
                out[i] = term if out[i] is None else out[i] + term
        return [G_ZERO if x is None else x for x in out]

    def compose(self, other):
        # self after other
        out = SparseOp(self.n)
        for j, col in enumerate(other.cols):
            dest = out.cols[j]
            for k, v in col.items():
                for i, w in self.cols[k].items():
                    cur = dest.get(i)
                    term = w * v
                    cur = term if cur is None else cur + term
                    if _sp_nonzero(cur):
                        dest[i] = cur
                    elif i in dest:
                        del dest[i]
        return out

    def add(self, other):
        out = SparseOp(self.n, [dict(c) for c in self.cols])
        for j, col in enumerate(other.cols):
            for i, v in col.items():
                out.add_entry(i, j, v)
        return out

    def sub(self, other):
        return self.add(other.scale(-G_ONE))

    def scale(self, c):
        out = SparseOp(self.n)
        if not _sp_nonzero(c):
            return out
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                prod = c * v
                if _sp_nonzero(prod):
                    out.cols[j][i] = prod
        return out

    def commutator(self, other):
        return self.compose(other).sub(other.compose(self))

    def transpose(self):
        out = SparseOp(self.n)
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out.cols[i][j] = v
        return out

    def negate(self):
        return self.scale(-G_ONE)

    def is_zero(self):
        return all(not col for col in self.cols)

    def __eq__(self, other):
        if not isinstance(other, SparseOp) or self.n != other.n:
            return NotImplemented
        return self.sub(other).is_zero()

    def to_exact(self):
        rows = [[G_ZERO] * self.n for _ in range(self.n)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = as_gauss(v)
        return ExactMatrix(rows)

    def __repr__(self):
        nz = sum(len(c) for c in self.cols)
        return "SparseOp(%d, nnz=%d)" % (self.n, nz)


def _sp_nonzero(v):
    if hasattr(v, "is_zero"):
        return not v.is_zero()
    return bool(v)
