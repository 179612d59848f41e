"""Exact linear algebra over FieldElement scalars.

Dense matrices with rank/kernel/solve by Gaussian elimination over the field,
characteristic polynomials by Faddeev-LeVerrier, Gram coefficients, the
closed-form Moore-Penrose inverse and kernel projector built from them,
oblique projections (directly and through the Moore-Penrose composition), and
real generalized eigenspaces for real or complex-pair eigenvalues.

Every operation is a pure function of immutable values; results are exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import (
    ExactNumError,
    FieldElement,
    Poly,
    RealAlgebraicField,
    as_element,
)


class LinAlgError(ExactNumError):
    pass


class NotADirectSumError(LinAlgError):
    """The two subspaces handed to an oblique projection do not split the space."""


def _common_field(elements: Iterable[FieldElement]) -> RealAlgebraicField | None:
    field = None
    for e in elements:
        if e.field is not None:
            if field is not None and field != e.field:
                raise LinAlgError("mixed algebraic fields in one matrix")
            field = e.field
    return field


class Matrix:
    """Immutable dense matrix of FieldElements (row-major)."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows: int, cols: int, entries: Sequence, field=None):
        flat = [as_element(e) for row in entries for e in row] if entries and isinstance(entries[0], (list, tuple)) else [as_element(e) for e in entries]
        if len(flat) != rows * cols:
            raise LinAlgError(f"entry count {len(flat)} != {rows}x{cols}")
        f = field or _common_field(flat)
        if f is not None:
            flat = [e.lift(f) for e in flat]
        self.rows = rows
        self.cols = cols
        self.entries = tuple(flat)
        self.field = f

    # -- constructors --------------------------------------------------------

    @classmethod
    def _make(cls, rows: int, cols: int, flat: tuple, field) -> "Matrix":
        """Internal constructor for entries already normalized to one field."""
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m.entries = flat
        m.field = field
        return m

    @staticmethod
    def from_rows(rows: Sequence[Sequence], field=None) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        return Matrix(r, c, [e for row in rows for e in row], field)

    @staticmethod
    def identity(n: int, field=None) -> "Matrix":
        one = FieldElement.one(field)
        zero = FieldElement.zero(field)
        return Matrix(n, n, [one if i == j else zero for i in range(n) for j in range(n)], field)

    @staticmethod
    def zero(rows: int, cols: int, field=None) -> "Matrix":
        z = FieldElement.zero(field)
        return Matrix(rows, cols, [z] * (rows * cols), field)

    @staticmethod
    def column(vec: Sequence, field=None) -> "Matrix":
        return Matrix(len(vec), 1, [as_element(v) for v in vec], field)

    @staticmethod
    def from_columns(cols: Sequence[Sequence], n_rows: int | None = None, field=None) -> "Matrix":
        if not cols:
            if n_rows is None:
                raise LinAlgError("cannot infer row count of an empty column list")
            return Matrix(n_rows, 0, [], field)
        n = len(cols[0])
        return Matrix(n, len(cols), [cols[j][i] for i in range(n) for j in range(len(cols))], field)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> FieldElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[FieldElement]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> list[FieldElement]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def columns(self) -> list[list[FieldElement]]:
        return [self.col(j) for j in range(self.cols)]

    def to_lists(self) -> list[list[FieldElement]]:
        return [self.row(i) for i in range(self.rows)]

    # -- algebra ---------------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix._make(
            self.rows, self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
            self.field or other.field,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix._make(
            self.rows, self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
            self.field or other.field,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._make(self.rows, self.cols, tuple(-a for a in self.entries), self.field)

    def scale(self, s) -> "Matrix":
        s = as_element(s, self.field)
        field = self.field or s.field
        return Matrix._make(self.rows, self.cols, tuple(a * s for a in self.entries), field)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise LinAlgError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
            field = self.field or other.field
            zero = FieldElement.zero(field)
            out = []
            ocols = other.cols
            for i in range(self.rows):
                arow = self.entries[i * self.cols : (i + 1) * self.cols]
                acc = [zero] * ocols
                for k, a in enumerate(arow):
                    if a.is_zero():
                        continue
                    orow = other.entries[k * ocols : (k + 1) * ocols]
                    for j, b in enumerate(orow):
                        if not b.is_zero():
                            acc[j] = acc[j] + a * b
                out.extend(acc)
            return Matrix._make(self.rows, ocols, tuple(out), field)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def matvec(self, vec: Sequence[FieldElement]) -> list[FieldElement]:
        return (self * Matrix.column(list(vec), self.field)).col(0)

    def transpose(self) -> "Matrix":
        return Matrix._make(
            self.cols, self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
            self.field,
        )

    def power(self, n: int) -> "Matrix":
        if self.rows != self.cols:
            raise LinAlgError("power of a non-square matrix")
        out = Matrix.identity(self.rows, self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def trace(self) -> FieldElement:
        return sum((self[i, i] for i in range(self.rows)), FieldElement.zero(self.field))

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise LinAlgError("hstack row mismatch")
        rows = [self.row(i) + other.row(i) for i in range(self.rows)]
        return Matrix.from_rows(rows) if self.rows else Matrix(0, self.cols + other.cols, [])

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(a == b for a, b in zip(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def _shape_check(self, other: "Matrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise LinAlgError("shape mismatch")


# ---------------------------------------------------------------------------
# Elimination: rref, rank, kernel, solve, det, inverse
# ---------------------------------------------------------------------------

def rref(m: Matrix) -> tuple[list[list[FieldElement]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    a = [m.row(i) for i in range(m.rows)]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> "Subspace":
    """Exact null space basis; the count equals cols - rank."""
    a, pivots = rref(m)
    field = m.field
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [FieldElement.zero(field) for _ in range(m.cols)]
        v[fc] = FieldElement.one(field)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][fc]
        basis.append(v)
    return Subspace(m.cols, basis, _skip_check=True)


def solve(m: Matrix, rhs: Matrix) -> Matrix:
    """One exact solution X of M X = rhs; raises if the system is inconsistent."""
    aug = m.hstack(rhs)
    a, pivots = rref(aug)
    field = aug.field
    for i in range(len(pivots)):
        if pivots[i] >= m.cols:
            raise LinAlgError("inconsistent linear system")
    # rows beyond the pivot count must be all zero on the rhs side as well
    for i in range(len(pivots), m.rows):
        if any(not x.is_zero() for x in a[i]):
            raise LinAlgError("inconsistent linear system")
    out = [[FieldElement.zero(field) for _ in range(rhs.cols)] for _ in range(m.cols)]
    for r, pc in enumerate(pivots):
        for j in range(rhs.cols):
            out[pc][j] = a[r][m.cols + j]
    return Matrix.from_rows(out) if m.cols else Matrix(0, rhs.cols, [])


def det(m: Matrix) -> FieldElement:
    if m.rows != m.cols:
        raise LinAlgError("determinant of a non-square matrix")
    a = [m.row(i) for i in range(m.rows)]
    field = m.field
    d = FieldElement.one(field)
    for c in range(m.cols):
        piv = next((i for i in range(c, m.rows) if not a[i][c].is_zero()), None)
        if piv is None:
            return FieldElement.zero(field)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            d = -d
        d = d * a[c][c]
        inv = a[c][c].inverse()
        for i in range(c + 1, m.rows):
            if not a[i][c].is_zero():
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise LinAlgError("inverse of a non-square matrix")
    return solve(m, Matrix.identity(m.rows, m.field))


# ---------------------------------------------------------------------------
# Subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """A linear subspace given by an exact basis of column vectors."""

    __slots__ = ("ambient_dim", "basis", "field")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence], _skip_check: bool = False):
        vecs = [[as_element(x) for x in v] for v in basis]
        field = _common_field(x for v in vecs for x in v)
        vecs = [[x.lift(field) for x in v] for v in vecs] if field else vecs
        for v in vecs:
            if len(v) != ambient_dim:
                raise LinAlgError("basis vector has wrong length")
        if vecs and not _skip_check:
            if rank(Matrix.from_columns(vecs, ambient_dim)) != len(vecs):
                raise LinAlgError("basis vectors are linearly dependent")
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(v) for v in vecs)
        self.field = field

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, field=None) -> Matrix:
        return Matrix.from_columns([list(v) for v in self.basis], self.ambient_dim, field or self.field)

    def contains(self, vec: Sequence) -> bool:
        vec = [as_element(x) for x in vec]
        if self.dim == 0:
            return all(x.is_zero() for x in vec)
        stacked = self.matrix().hstack(Matrix.column(vec))
        return rank(stacked) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.contains_space(other)
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def column_space(m: Matrix) -> Subspace:
    return span(m.rows, m.columns())


def span(ambient_dim: int, vectors: Sequence[Sequence]) -> Subspace:
    """Reduce a spanning set to a basis (greedy, order-preserving)."""
    out: list[list] = []
    reduced: list[tuple[int, list]] = []  # (pivot index, pivot-normalized vector)
    for v in vectors:
        w = [as_element(x) for x in v]
        for piv, r in reduced:
            c = w[piv]
            if not c.is_zero():
                w = [a - c * b for a, b in zip(w, r)]
        piv = next((i for i, x in enumerate(w) if not x.is_zero()), None)
        if piv is None:
            continue
        inv = w[piv].inverse()
        reduced.append((piv, [x * inv for x in w]))
        out.append([as_element(x) for x in v])
    return Subspace(ambient_dim, out, _skip_check=True)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise LinAlgError("ambient dimension mismatch")
    return span(a.ambient_dim, [list(v) for v in a.basis] + [list(v) for v in b.basis])


def intersect_spaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise LinAlgError("ambient dimension mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace(a.ambient_dim, [])
    am = a.matrix()
    bm = b.matrix()
    stacked = am.hstack(bm)
    ker = kernel_basis(stacked)
    vecs = []
    for k in ker.basis:
        coeffs = list(k[: a.dim])
        v = am.matvec(coeffs)
        vecs.append(v)
    return span(a.ambient_dim, vecs)


# ---------------------------------------------------------------------------
# Characteristic polynomial and Gram coefficients
# ---------------------------------------------------------------------------

def char_poly(m: Matrix) -> Poly:
    """det(x*I - M) by Faddeev-LeVerrier (exact, division only by integers)."""
    if m.rows != m.cols:
        raise LinAlgError("characteristic polynomial of a non-square matrix")
    n = m.rows
    field = m.field
    one = FieldElement.one(field)
    coeffs = [FieldElement.zero(field) for _ in range(n + 1)]
    coeffs[n] = one
    b = Matrix.identity(n, field)
    for k in range(1, n + 1):
        mb = m * b
        c = -(mb.trace() / k)
        coeffs[n - k] = c
        if k < n:
            b = mb + Matrix.identity(n, field).scale(c)
    return Poly(coeffs, field)


def gram_coefficients(a: Matrix) -> list[FieldElement]:
    """Coefficients of det(1 + t*A*A^T) as a polynomial in t, degree-indexed.

    The list has length (output dimension + 1); index 0 is always 1 and the
    last entry is det(A A^T).
    """
    b = a * a.transpose()
    m = b.rows
    chi = char_poly(b)  # x^m + a_{m-1} x^{m-1} + ...
    field = b.field
    out = []
    for j in range(m + 1):
        c = chi.coeffs[m - j] if m - j < len(chi.coeffs) else FieldElement.zero(field)
        out.append(c if j % 2 == 0 else -c)
    return out


def gram_rank(a: Matrix) -> int:
    """rank(A) as the largest r with gamma_r != 0."""
    gamma = gram_coefficients(a)
    r = 0
    for k, g in enumerate(gamma):
        if not g.is_zero():
            r = k
    return r


def moore_penrose(a: Matrix) -> Matrix:
    """The Moore-Penrose inverse by the closed-form Gram coefficient formula.

    With r = rank(A) read off the Gram coefficients,
        A+ = (1/gamma_r) * sum_{k<r} (-1)^(r-1-k) gamma_k (A^T A)^(r-1-k) A^T.
    Satisfies all four Penrose equations exactly; the zero matrix maps to the
    zero matrix of transposed shape.
    """
    gamma = gram_coefficients(a)
    r = 0
    for k, g in enumerate(gamma):
        if not g.is_zero():
            r = k
    field = a.field
    if r == 0:
        return Matrix.zero(a.cols, a.rows, field)
    ata = a.transpose() * a
    acc = Matrix.zero(a.cols, a.cols, field)
    power = Matrix.identity(a.cols, field)  # (A^T A)^0, built up to (A^T A)^(r-1)
    terms: list[Matrix] = [power]
    for _ in range(r - 1):
        power = power * ata
        terms.append(power)
    for k in range(r):
        sign = 1 if (r - 1 - k) % 2 == 0 else -1
        acc = acc + terms[r - 1 - k].scale(gamma[k] * sign)
    return acc.scale(gamma[r].inverse()) * a.transpose()


def moore_penrose_via_rank_factorization(a: Matrix) -> Matrix:
    """Independent pseudoinverse route: A = C F from the rref, then
    A+ = F^T (F F^T)^(-1) (C^T C)^(-1) C^T."""
    rows, pivots = rref(a)
    r = len(pivots)
    if r == 0:
        return Matrix.zero(a.cols, a.rows, a.field)
    c = Matrix.from_columns([a.col(j) for j in pivots], a.rows)
    f = Matrix.from_rows(rows[:r])
    ft = f.transpose()
    ct = c.transpose()
    return ft * inverse(f * ft) * inverse(ct * c) * ct


def kernel_projector(a: Matrix) -> Matrix:
    """Orthogonal projection onto Ker A (standard inner product), exactly:
    P = 1 - (1/gamma_r) sum_{k<r} (-1)^(r-1-k) gamma_k (A^T A)^(r-k)."""
    gamma = gram_coefficients(a)
    r = 0
    for k, g in enumerate(gamma):
        if not g.is_zero():
            r = k
    n = a.cols
    field = a.field
    if r == 0:
        return Matrix.identity(n, field)
    ata = a.transpose() * a
    powers = [Matrix.identity(n, field)]
    for _ in range(r):
        powers.append(powers[-1] * ata)
    acc = Matrix.zero(n, n, field)
    for k in range(r):
        sign = 1 if (r - 1 - k) % 2 == 0 else -1
        acc = acc + powers[r - k].scale(gamma[k] * sign)
    return Matrix.identity(n, field) - acc.scale(gamma[r].inverse())


def orthogonal_projector(s: Subspace, field=None) -> Matrix:
    """Orthogonal projection onto a subspace: B (B^T B)^(-1) B^T."""
    n = s.ambient_dim
    if s.dim == 0:
        return Matrix.zero(n, n, field or s.field)
    b = s.matrix(field)
    bt = b.transpose()
    return b * inverse(bt * b) * bt


def oblique_projector(onto: Subspace, along: Subspace) -> Matrix:
    """The idempotent with range `onto` and kernel `along`.

    Requires an exact direct sum decomposition of the ambient space.
    """
    n = onto.ambient_dim
    if along.ambient_dim != n:
        raise NotADirectSumError("ambient dimensions differ")
    if onto.dim + along.dim != n:
        raise NotADirectSumError(f"dimensions {onto.dim} + {along.dim} != {n}")
    field = onto.field or along.field
    u = onto.matrix(field)
    w = along.matrix(field)
    full = u.hstack(w)
    if rank(full) != n:
        raise NotADirectSumError("subspaces overlap: not a direct sum")
    inv = inverse(full)
    rows = [inv.row(i) for i in range(onto.dim)]
    top = Matrix.from_rows(rows) if rows else Matrix(0, n, [], field)
    return u * top if onto.dim else Matrix.zero(n, n, field)


def oblique_projector_mp(onto_complement: Subspace, kernel_of: Matrix) -> Matrix:
    """Oblique projector onto Ker(kernel_of) along onto_complement, computed
    through the Moore-Penrose composition

        P_K ((1 - P_U0) P_K)+ (1 - P_U0),

    where K = Ker(kernel_of), U0 = onto_complement and P denotes the
    orthogonal projector.  Must agree exactly with the direct construction.
    """
    n = kernel_of.cols
    if onto_complement.ambient_dim != n:
        raise NotADirectSumError("ambient dimensions differ")
    field = kernel_of.field or onto_complement.field
    pk = kernel_projector(kernel_of)
    ker_dim = kernel_basis(kernel_of).dim
    if ker_dim + onto_complement.dim != n:
        raise NotADirectSumError(f"dimensions {ker_dim} + {onto_complement.dim} != {n}")
    pu = orthogonal_projector(onto_complement, field)
    q = Matrix.identity(n, field) - pu
    e = pk * moore_penrose(q * pk) * q
    # direct-sum failure shows up as E not being the identity on the kernel
    ker = kernel_basis(kernel_of)
    for v in ker.basis:
        if e.matvec(list(v)) != list(v):
            raise NotADirectSumError("subspaces overlap: not a direct sum")
    return e


# ---------------------------------------------------------------------------
# Generalized eigenspaces (real encoding of complex pairs)
# ---------------------------------------------------------------------------

def complex_pair_matrix(re: Matrix, im: Matrix) -> Matrix:
    """Real 2n x 2n encoding [[Re, -Im], [Im, Re]] of Re + i*Im."""
    n = re.rows
    field = re.field or im.field
    z = FieldElement.zero(field)
    out = []
    for i in range(n):
        out.append(re.row(i) + [-x for x in im.row(i)])
    for i in range(n):
        out.append(im.row(i) + re.row(i))
    return Matrix.from_rows(out) if n else Matrix(0, 0, [], field)


def complexified(m: Matrix) -> Matrix:
    return complex_pair_matrix(m, Matrix.zero(m.rows, m.cols, m.field))


def mult_by_i(n: int, field=None) -> Matrix:
    return complex_pair_matrix(Matrix.zero(n, n, field), Matrix.identity(n, field))


def generalized_eigenspace(m: Matrix, lam_re, lam_im, power: int | str = "max") -> Subspace:
    """Real generalized eigenspace of M for lambda = lam_re + i*lam_im.

    For real lambda this is Ker (M - lambda)^power inside the ambient space.
    For lam_im != 0 it is the span of real and imaginary parts of the complex
    kernel, computed over pairs of field elements; the zero subspace is
    returned when lambda is not an eigenvalue.  power="max" means the ambient
    dimension.
    """
    if m.rows != m.cols:
        raise LinAlgError("generalized eigenspace of a non-square matrix")
    n = m.rows
    p = n if power == "max" else int(power)
    if p < 1:
        raise LinAlgError("power must be >= 1")
    lam_re = as_element(lam_re)
    lam_im = as_element(lam_im)
    field = m.field or lam_re.field or lam_im.field
    if lam_im.is_zero():
        shifted = m - Matrix.identity(n, field).scale(lam_re.lift(field) if field else lam_re)
        return kernel_basis(shifted.power(p))
    big = complexified(m) - complex_pair_matrix(
        Matrix.identity(n, field).scale(lam_re),
        Matrix.identity(n, field).scale(lam_im),
    )
    ker = kernel_basis(big.power(p))
    parts = []
    for v in ker.basis:
        parts.append(list(v[:n]))
        parts.append(list(v[n:]))
    return span(n, parts)


def complex_kernel(big_power: Matrix) -> Subspace:
    """Kernel of a real-encoded complex operator; closed under mult by i."""
    return kernel_basis(big_power)
