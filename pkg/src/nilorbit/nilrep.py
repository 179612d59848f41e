"""Nilpotent Lie algebras, their finite-dimensional representations, and the
structure theory the orbit classification runs on.

A representation is given by the images of the algebra basis.  The weight
decomposition splits the complexified space into joint generalized
eigenspaces with weight functionals vanishing on the derived algebra;
weights are computed exactly when they lie in the configured field extended
by i, and refused (naming the needed extension) otherwise.  Complex numbers
never appear as scalars: the complexification is encoded as R^(2n) with the
multiplication-by-i operator, and complex weights as (real part, imaginary
part) pairs of functionals.

From the weights, the space is cut into blocks on which the action is a real
or complex character times a unipotent part; the character data exponentiates
to the diagonalizable factor E and the remainder nu = E^(-1) pi is unipotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence

from .exactla import (
    LinAlgError,
    Matrix,
    Subspace,
    char_poly,
    complex_pair_matrix,
    complexified,
    intersect_spaces,
    inverse,
    kernel_basis,
    mult_by_i,
    oblique_projector,
    rank,
    solve,
    span,
    sum_spaces,
)
from .exactnum import (
    ExactNumError,
    FieldElement,
    FieldExtensionNeeded,
    Poly,
    RealAlgebraicField,
    as_element,
    factor_over_field,
    field_sqrt,
)


class LieStructureError(ExactNumError):
    pass


class AntisymmetryError(LieStructureError):
    pass


class JacobiError(LieStructureError):
    pass


class NotNilpotentError(LieStructureError):
    pass


class RepresentationError(LieStructureError):
    pass


class BlockValidationError(LieStructureError):
    pass


# ---------------------------------------------------------------------------
# Lie algebras from structure constants
# ---------------------------------------------------------------------------

class NilpotentLieAlgebra:
    """A nilpotent Lie algebra presented by rational structure constants,
    [x_i, x_j] = sum_k c[i][j][k] x_k.  Use validate_lie_algebra to build."""

    def __init__(self, dim: int, c: Sequence, nilpotency_class: int):
        self.dim = dim
        self.c = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in c
        )
        self.nilpotency_class = nilpotency_class

    def bracket_coords(self, u: Sequence[Fraction], v: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                f = ui * vj
                for k, ck in enumerate(self.c[i][j]):
                    if ck:
                        out[k] += f * ck
        return out

    def basis_bracket(self, i: int, j: int) -> list[Fraction]:
        return list(self.c[i][j])

    def derived_algebra(self) -> Subspace:
        vecs = [self.basis_bracket(i, j) for i in range(self.dim) for j in range(self.dim)]
        return span(self.dim, [[as_element(x) for x in v] for v in vecs])

    def lower_central_series(self) -> list[Subspace]:
        """g = g^1 >= g^2 >= ... down to (and including) the zero term."""
        full = span(self.dim, [[as_element(int(i == j)) for j in range(self.dim)] for i in range(self.dim)])
        series = [full]
        current = full
        while current.dim > 0:
            vecs = []
            for i in range(self.dim):
                e_i = [Fraction(int(k == i)) for k in range(self.dim)]
                for b in current.basis:
                    vecs.append(self.bracket_coords(e_i, [x.rational_part() for x in b]))
            nxt = span(self.dim, [[as_element(x) for x in v] for v in vecs])
            if nxt.dim == current.dim:
                raise NotNilpotentError("lower central series stabilized above zero")
            series.append(nxt)
            current = nxt
        return series

    def is_abelian(self) -> bool:
        return self.nilpotency_class <= 1

    def adjoint_rep(self) -> "RepData":
        images = []
        for i in range(self.dim):
            cols = [self.c[i][j] for j in range(self.dim)]
            images.append(Matrix.from_columns([[as_element(x) for x in col] for col in cols], self.dim))
        return validate_representation(RepData(self, self.dim, images))


def validate_lie_algebra(c: Sequence) -> NilpotentLieAlgebra:
    """Build a NilpotentLieAlgebra, verifying antisymmetry, the Jacobi
    identity, and nilpotency of the lower central series."""
    n = len(c)
    for i in range(n):
        if len(c[i]) != n or any(len(c[i][j]) != n for j in range(n)):
            raise LieStructureError("structure constants must form an n x n x n array")
    cq = [[[Fraction(x) for x in c[i][j]] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if cq[i][j][k] != -cq[j][i][k]:
                    raise AntisymmetryError(f"c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")
    probe = NilpotentLieAlgebra(n, cq, 0)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                acc = probe.bracket_coords(probe.basis_bracket(i, j), _unit(n, k))
                for m, x in enumerate(probe.bracket_coords(probe.basis_bracket(j, k), _unit(n, i))):
                    acc[m] += x
                for m, x in enumerate(probe.bracket_coords(probe.basis_bracket(k, i), _unit(n, j))):
                    acc[m] += x
                if any(x != 0 for x in acc):
                    raise JacobiError(f"Jacobi identity fails on basis triple ({i},{j},{k})")
    series = probe.lower_central_series()  # raises NotNilpotentError if it stalls
    return NilpotentLieAlgebra(n, cq, len(series) - 1)


def _unit(n: int, k: int) -> list[Fraction]:
    return [Fraction(int(i == k)) for i in range(n)]


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------

@dataclass
class RepData:
    """Images of the algebra basis under a Lie algebra representation."""

    algebra: NilpotentLieAlgebra
    space_dim: int
    images: Sequence[Matrix]

    @property
    def field(self) -> RealAlgebraicField | None:
        for m in self.images:
            if m.field is not None:
                return m.field
        return None

    def image_of(self, coords: Sequence) -> Matrix:
        out = Matrix.zero(self.space_dim, self.space_dim, self.field)
        for c, m in zip(coords, self.images):
            ce = as_element(c)
            if not ce.is_zero():
                out = out + m.scale(ce)
        return out


def validate_representation(r: RepData) -> RepData:
    """Verify bracket compatibility on every basis pair, exactly."""
    n = r.algebra.dim
    if len(r.images) != n:
        raise RepresentationError(f"expected {n} basis images, got {len(r.images)}")
    for m in r.images:
        if m.rows != r.space_dim or m.cols != r.space_dim:
            raise RepresentationError("basis image has wrong shape")
    for i in range(n):
        for j in range(i + 1, n):
            lhs = r.images[i] * r.images[j] - r.images[j] * r.images[i]
            rhs = r.image_of(r.algebra.basis_bracket(i, j))
            if lhs != rhs:
                raise RepresentationError(f"bracket compatibility fails on basis pair ({i},{j})")
    return r


# ---------------------------------------------------------------------------
# Eigenvalues over the configured field extended by i
# ---------------------------------------------------------------------------

def eigenvalues_in_field(m: Matrix) -> list[tuple[FieldElement, FieldElement]]:
    """Distinct eigenvalues of a real matrix as (re, im) pairs over Q(alpha).

    Raises FieldExtensionNeeded, naming the irreducible factor, when the
    spectrum does not lie in the configured field extended by i.
    """
    chi = char_poly(m)
    field = m.field
    out: list[tuple[FieldElement, FieldElement]] = []
    for f, _mult in factor_over_field(chi, field):
        if f.degree == 1:
            out.append((-f.coeffs[0], FieldElement.zero(field)))
            continue
        if f.degree == 2:
            b, c = f.coeffs[1], f.coeffs[0]
            disc = b * b - 4 * c
            s = disc.sign()
            if s > 0:
                raise FieldExtensionNeeded(
                    f"real eigenvalues of factor {f} lie outside the configured field",
                    needed=f"square root of {disc}",
                )
            re = -b / 2
            im2 = -disc
            root = field_sqrt(im2)
            if root is None:
                raise FieldExtensionNeeded(
                    f"imaginary parts of factor {f} lie outside the configured field",
                    needed=f"square root of {im2}",
                )
            im = root / 2
            out.append((re, im))
            out.append((re, -im))
            continue
        raise FieldExtensionNeeded(
            f"eigenvalues of irreducible factor {f} (degree {f.degree}) lie outside "
            "the configured field extended by i",
            needed=f"splitting field of {f}",
        )
    return out


def _complex_gen_eigenspace_2n(m: Matrix, lam: tuple[FieldElement, FieldElement], power: int) -> Subspace:
    """Generalized eigenspace of the complexified operator, as a subspace of
    the R^(2n) encoding (closed under multiplication by i by construction)."""
    n = m.rows
    field = m.field or lam[0].field or lam[1].field
    shift = complex_pair_matrix(
        Matrix.identity(n, field).scale(lam[0]),
        Matrix.identity(n, field).scale(lam[1]),
    )
    op = complexified(m) - shift
    return kernel_basis(op.power(power))


# ---------------------------------------------------------------------------
# Weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Weight:
    """A weight functional on the algebra: x_i -> alpha[i] + i*beta[i]."""

    alpha: tuple[FieldElement, ...]
    beta: tuple[FieldElement, ...]

    def is_real(self) -> bool:
        return all(b.is_zero() for b in self.beta)

    def conjugate(self) -> "Weight":
        return Weight(self.alpha, tuple(-b for b in self.beta))

    def key(self) -> tuple:
        return (
            tuple(tuple(map(str, a.coords)) for a in self.alpha),
            tuple(tuple(map(str, b.coords)) for b in self.beta),
        )


@dataclass
class WeightData:
    """Joint generalized weight spaces of a representation, complex-encoded.

    `spaces[k]` lives in R^(2n) and is the weight space of `weights[k]`;
    `projections[k]` is the idempotent onto it along the sum of the others.
    `real_idx`, `pos_idx`, `neg_idx` partition the index set into real
    weights and the two halves of the conjugate pairing (`conj[k]` maps each
    non-real index to its partner).
    """

    rep: RepData
    weights: list[Weight]
    spaces: list[Subspace]
    projections: list[Matrix]
    real_idx: tuple[int, ...]
    pos_idx: tuple[int, ...]
    neg_idx: tuple[int, ...]
    conj: dict[int, int]

    @property
    def space_dim(self) -> int:
        return self.rep.space_dim


def _first_nonzero_sign(elements: Sequence[FieldElement]) -> int:
    for e in elements:
        s = e.sign()
        if s != 0:
            return s
    return 0


def weight_decomposition(r: RepData, seed: int = 0) -> WeightData:
    """Split the complexified space into joint generalized weight spaces.

    Starts from the generalized eigenspaces of a pseudo-random rational
    combination of the basis images (deterministic in `seed`) and refines by
    the basis images themselves, so weight collisions at the generic element
    cannot merge distinct weights.
    """
    validate_representation(r)
    n = r.space_dim
    d = r.algebra.dim
    field = r.field
    if n == 0:
        return WeightData(r, [], [], [], (), (), (), {})
    rng = Random(seed)
    coeffs = [Fraction(rng.randint(1, 97)) for _ in range(d)]
    generic = r.image_of(coeffs)

    full = kernel_basis(Matrix.zero(2 * n, 2 * n, field))  # the whole R^(2n)
    pieces: list[tuple[Subspace, list[tuple[FieldElement, FieldElement]]]] = [(full, [])]

    for op in [generic] + list(r.images):
        refined: list[tuple[Subspace, list[tuple[FieldElement, FieldElement]]]] = []
        eigs = eigenvalues_in_field(op)
        for space, tags in pieces:
            covered = 0
            for lam in eigs:
                e_space = _complex_gen_eigenspace_2n(op, lam, n)
                inter = intersect_spaces(space, e_space)
                if inter.dim > 0:
                    refined.append((inter, tags + [lam]))
                    covered += inter.dim
            if covered != space.dim:
                raise LieStructureError("refinement failed to exhaust an invariant subspace")
        pieces = refined

    # assemble weights: drop the generic-element tag, keep per-basis values
    weights: list[Weight] = []
    spaces: list[Subspace] = []
    for space, tags in pieces:
        per_basis = tags[1:]
        w = Weight(tuple(t[0] for t in per_basis), tuple(t[1] for t in per_basis))
        weights.append(w)
        spaces.append(space)
    order = sorted(range(len(weights)), key=lambda k: weights[k].key())
    weights = [weights[k] for k in order]
    spaces = [spaces[k] for k in order]
    if len({w.key() for w in weights}) != len(weights):
        raise LieStructureError("joint refinement produced a repeated weight")

    # weights vanish on the derived algebra
    for w in weights:
        for i in range(d):
            for j in range(d):
                br = r.algebra.basis_bracket(i, j)
                val_a = sum((as_element(br[k]) * w.alpha[k] for k in range(d)), FieldElement.zero(field))
                val_b = sum((as_element(br[k]) * w.beta[k] for k in range(d)), FieldElement.zero(field))
                if not (val_a.is_zero() and val_b.is_zero()):
                    raise LieStructureError("weight does not vanish on the derived algebra")

    projections = []
    for k, space in enumerate(spaces):
        others = Subspace(2 * n, [])
        for j, other in enumerate(spaces):
            if j != k:
                others = sum_spaces(others, other)
        projections.append(oblique_projector(space, others))

    real_idx = tuple(k for k, w in enumerate(weights) if w.is_real())
    pos_idx = tuple(
        k for k, w in enumerate(weights) if not w.is_real() and _first_nonzero_sign(w.beta) > 0
    )
    neg_idx = tuple(
        k for k, w in enumerate(weights) if not w.is_real() and _first_nonzero_sign(w.beta) < 0
    )
    conj: dict[int, int] = {}
    by_key = {w.key(): k for k, w in enumerate(weights)}
    for k in pos_idx + neg_idx:
        partner = by_key.get(weights[k].conjugate().key())
        if partner is None:
            raise LieStructureError("weights are not closed under conjugation")
        conj[k] = partner
    return WeightData(r, weights, spaces, projections, real_idx, pos_idx, neg_idx, conj)


def conjugation_matrix(n: int, field=None) -> Matrix:
    """The real encoding of coordinatewise complex conjugation on C^n."""
    top = Matrix.identity(n, field).hstack(Matrix.zero(n, n, field))
    bottom = Matrix.zero(n, n, field).hstack(-Matrix.identity(n, field))
    return Matrix.from_rows(top.to_lists() + bottom.to_lists())


# ---------------------------------------------------------------------------
# Real form transported through the weight projections
# ---------------------------------------------------------------------------

@dataclass
class RealFormData:
    """The isomorphism iota(v) = P_real(v) + P_positive(v) and its image."""

    iota: Matrix  # 2n x n, columns are iota(e_k)
    space: Subspace  # image of iota inside R^(2n)
    rep_matrices: list[Matrix]  # the transported action in the iota basis


def real_form(w: WeightData) -> RealFormData:
    n = w.space_dim
    field = w.rep.field
    p_real = Matrix.zero(2 * n, 2 * n, field)
    for k in w.real_idx:
        p_real = p_real + w.projections[k]
    p_pos = Matrix.zero(2 * n, 2 * n, field)
    for k in w.pos_idx:
        p_pos = p_pos + w.projections[k]
    embed = Matrix.identity(n, field)
    embed = Matrix.from_rows(embed.to_lists() + Matrix.zero(n, n, field).to_lists())
    iota = (p_real + p_pos) * embed
    if rank(iota) != n:
        raise LieStructureError("real-form transport is not injective")
    space = span(2 * n, iota.columns())
    reps = []
    for m in w.rep.images:
        big = complexified(m)
        reps.append(solve(iota, big * iota))
    return RealFormData(iota, space, reps)


# ---------------------------------------------------------------------------
# Block decomposition and the E / nu splitting
# ---------------------------------------------------------------------------

@dataclass
class Block:
    """An invariant block on which the action is a character times unipotent.

    For kind "C", `j_matrix` is the complex structure in block coordinates
    (the matrix of multiplication by i); `m` is the dimension over the block
    field, so half the real dimension of a "C" block.
    """

    basis: Subspace  # subspace of the ambient R^n
    kind: str  # "R" or "C"
    m: int
    alpha: tuple[FieldElement, ...]
    beta: tuple[FieldElement, ...]
    j_matrix: Matrix | None


@dataclass
class BlockDecomposition:
    blocks: list[Block]
    rep: RepData

    def adapted_basis(self) -> Matrix:
        cols = []
        for b in self.blocks:
            cols.extend([list(v) for v in b.basis.basis])
        return Matrix.from_columns(cols, self.rep.space_dim, self.rep.field)


def _real_points(space_2n: Subspace, n: int) -> Subspace:
    """{v in R^n : (v, 0) in the given complex-encoded subspace}."""
    if space_2n.dim == 0:
        return Subspace(n, [])
    field = space_2n.field
    b = space_2n.matrix(field)
    embed_rows = [[as_element(int(i == j)) for j in range(n)] for i in range(n)]
    embed_rows += [[as_element(0)] * n for _ in range(n)]
    embed = Matrix.from_rows(embed_rows)
    stacked = b.hstack(-embed)
    ker = kernel_basis(stacked)
    vecs = []
    for kvec in ker.basis:
        vecs.append(list(kvec[space_2n.dim :]))
    return span(n, vecs)


def block_decomposition(r: RepData, supplied: BlockDecomposition | None = None, seed: int = 0) -> BlockDecomposition:
    """Derive the invariant block decomposition from the weights, or validate
    a supplied one.  Raises BlockValidationError naming any violated rule."""
    if supplied is not None:
        _validate_blocks(r, supplied)
        return supplied
    w = weight_decomposition(r, seed=seed)
    n = r.space_dim
    field = r.field
    blocks: list[Block] = []
    for k in w.real_idx:
        space = _real_points(w.spaces[k], n)
        if 2 * space.dim != w.spaces[k].dim:
            raise LieStructureError("real weight space has no real form of half dimension")
        blocks.append(Block(space, "R", space.dim, w.weights[k].alpha, w.weights[k].beta, None))
    for k in w.pos_idx:
        kc = w.conj[k]
        pair_space = sum_spaces(w.spaces[k], w.spaces[kc])
        space = _real_points(pair_space, n)
        if space.dim != pair_space.dim // 2 or space.dim % 2 != 0:
            raise LieStructureError("conjugate pair has no real form of half dimension")
        j_ambient = _pair_complex_structure(w.projections[k], n, field)
        bmat = space.matrix(field)
        j_block = solve(bmat, j_ambient * bmat)
        blocks.append(Block(space, "C", space.dim // 2, w.weights[k].alpha, w.weights[k].beta, j_block))
    out = BlockDecomposition(blocks, r)
    _validate_blocks(r, out)
    return out


def _pair_complex_structure(p_lambda: Matrix, n: int, field) -> Matrix:
    """Multiplication by i on the real points of W + conj(W), as an n x n map:
    v maps to twice the first half of J * P_lambda * (v, 0)."""
    embed_rows = [[as_element(int(i == j)) for j in range(n)] for i in range(n)]
    embed_rows += [[as_element(0)] * n for _ in range(n)]
    embed = Matrix.from_rows(embed_rows)
    j = mult_by_i(n, field)
    big = j * p_lambda * embed
    rows = [big.row(i) for i in range(n)]
    return Matrix.from_rows(rows).scale(2)


def _validate_blocks(r: RepData, dec: BlockDecomposition) -> None:
    n = r.space_dim
    field = r.field
    total = sum(b.basis.dim for b in dec.blocks)
    if total != n:
        raise BlockValidationError(f"block dimensions sum to {total}, expected {n}")
    t = dec.adapted_basis()
    if rank(t) != n:
        raise BlockValidationError("blocks do not form a direct sum")
    d = r.algebra.dim
    for bi, b in enumerate(dec.blocks):
        if len(b.alpha) != d or len(b.beta) != d:
            raise BlockValidationError(f"block {bi}: character data has wrong arity")
        if b.kind == "R":
            if b.m != b.basis.dim:
                raise BlockValidationError(f"block {bi}: m must equal the block dimension")
            if any(not x.is_zero() for x in b.beta):
                raise BlockValidationError(f"block {bi}: real block with nonzero imaginary character")
        elif b.kind == "C":
            if b.basis.dim % 2 != 0 or b.m * 2 != b.basis.dim:
                raise BlockValidationError(f"block {bi}: complex block needs even dimension, m = dim/2")
            if b.j_matrix is None:
                raise BlockValidationError(f"block {bi}: complex block lacks its complex structure")
        else:
            raise BlockValidationError(f"block {bi}: unknown kind {b.kind!r}")
        bmat = b.basis.matrix(field)
        for i in range(d):
            image = r.images[i] * bmat
            try:
                restricted = solve(bmat, image)
            except LinAlgError:
                raise BlockValidationError(f"block {bi}: not invariant under basis image {i}")
            k = b.basis.dim
            if b.kind == "R":
                nil = restricted - Matrix.identity(k, field).scale(b.alpha[i])
            else:
                jm = b.j_matrix
                if jm * jm != -Matrix.identity(k, field):
                    raise BlockValidationError(f"block {bi}: complex structure does not square to -1")
                if jm * restricted != restricted * jm:
                    raise BlockValidationError(f"block {bi}: action is not complex linear on the block")
                nil = restricted - Matrix.identity(k, field).scale(b.alpha[i]) - jm.scale(b.beta[i])
            if not nil.power(b.m).is_zero():
                raise BlockValidationError(
                    f"block {bi}: action of basis element {i} is not character + nilpotent of order {b.m}"
                )
        # characters vanish on the derived algebra
        for i in range(d):
            for j in range(d):
                br = r.algebra.basis_bracket(i, j)
                va = sum((as_element(br[k2]) * b.alpha[k2] for k2 in range(d)), FieldElement.zero(field))
                vb = sum((as_element(br[k2]) * b.beta[k2] for k2 in range(d)), FieldElement.zero(field))
                if not (va.is_zero() and vb.is_zero()):
                    raise BlockValidationError(f"block {bi}: character does not vanish on the derived algebra")


@dataclass
class NuSplit:
    """The infinitesimal diagonal part dE and unipotent part dnu = dpi - dE."""

    dE: list[Matrix]
    dnu: list[Matrix]
    blocks: BlockDecomposition


def nu_split(dec: BlockDecomposition) -> NuSplit:
    r = dec.rep
    n = r.space_dim
    field = r.field
    d = r.algebra.dim
    t = dec.adapted_basis()
    t_inv = inverse(t)
    dE: list[Matrix] = []
    dnu: list[Matrix] = []
    for i in range(d):
        rows: list[list[FieldElement]] = []
        offset = 0
        blockdiag = Matrix.zero(n, n, field)
        cells: list[list[FieldElement]] = [[FieldElement.zero(field)] * n for _ in range(n)]
        for b in dec.blocks:
            k = b.basis.dim
            if b.kind == "R":
                cell = Matrix.identity(k, field).scale(b.alpha[i])
            else:
                cell = Matrix.identity(k, field).scale(b.alpha[i]) + b.j_matrix.scale(b.beta[i])
            for rr in range(k):
                for cc in range(k):
                    cells[offset + rr][offset + cc] = cell[rr, cc]
            offset += k
        blockdiag = Matrix.from_rows(cells)
        e_i = t * blockdiag * t_inv
        nu_i = r.images[i] - e_i
        if not nu_i.power(n).is_zero():
            raise BlockValidationError(f"unipotent part of basis element {i} is not nilpotent")
        dE.append(e_i)
        dnu.append(nu_i)
    for i in range(d):
        for j in range(d):
            if dE[i] * dnu[j] != dnu[j] * dE[i]:
                raise BlockValidationError("diagonal and unipotent parts do not commute")
            if dE[i] * r.images[j] != r.images[j] * dE[i]:
                raise BlockValidationError("diagonal part does not commute with the action")
    return NuSplit(dE, dnu, dec)


def support(v: Sequence, dec: BlockDecomposition) -> tuple[int, ...]:
    """Indices of blocks in which v has a nonzero component."""
    r = dec.rep
    t = dec.adapted_basis()
    coords = solve(t, Matrix.column([as_element(x) for x in v], r.field)).col(0)
    out = []
    offset = 0
    for bi, b in enumerate(dec.blocks):
        k = b.basis.dim
        if any(not coords[offset + j].is_zero() for j in range(k)):
            out.append(bi)
        offset += k
    return tuple(out)

