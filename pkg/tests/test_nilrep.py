import random
from fractions import Fraction as F

import pytest

from nilorbit.exactla import Matrix, complexified, det, inverse, mult_by_i, rank, span, sum_spaces
from nilorbit.exactnum import FieldExtensionNeeded, as_element, sqrt_field
from nilorbit.nilrep import (
    AntisymmetryError,
    Block,
    BlockDecomposition,
    BlockValidationError,
    JacobiError,
    NotNilpotentError,
    RepData,
    RepresentationError,
    block_decomposition,
    conjugation_matrix,
    nu_split,
    real_form,
    support,
    validate_lie_algebra,
    validate_representation,
    weight_decomposition,
)

K2 = sqrt_field(2)
SQRT2 = K2.alpha()


def heisenberg():
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = 1
    c[1][0][2] = -1
    return validate_lie_algebra(c)


def abelian(n):
    return validate_lie_algebra([[[0] * n for _ in range(n)] for _ in range(n)])


def line_rep(*images):
    alg = abelian(1)
    m = images[0].rows
    return validate_representation(RepData(alg, m, list(images)))


# ---------------------------------------------------------------------------
# algebra validation
# ---------------------------------------------------------------------------

def test_heisenberg_valid():
    h = heisenberg()
    assert h.nilpotency_class == 2
    assert h.derived_algebra().dim == 1


def test_abelian_valid():
    assert abelian(2).nilpotency_class == 1


def test_sl2_rejected():
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    c[0][1][2] = 1
    c[1][0][2] = -1
    c[2][0][0] = 2
    c[0][2][0] = -2
    c[2][1][1] = -2
    c[1][2][1] = 2
    with pytest.raises(NotNilpotentError):
        validate_lie_algebra(c)


def test_antisymmetry_rejected():
    c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
    c[0][1][0] = 1  # missing the opposite sign entry
    with pytest.raises(AntisymmetryError):
        validate_lie_algebra(c)


def test_jacobi_rejected():
    # [x0,x1]=x2, [x1,x2]=x0, [x2,x0]=x0: the cyclic sum on (0,1,2) is x2
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]

    def setb(i, j, k, val):
        c[i][j][k] = val
        c[j][i][k] = -val

    setb(0, 1, 2, 1)
    setb(1, 2, 0, 1)
    setb(2, 0, 0, 1)
    with pytest.raises(JacobiError):
        validate_lie_algebra(c)


# ---------------------------------------------------------------------------
# representation validation
# ---------------------------------------------------------------------------

def test_adjoint_rep_valid():
    h = heisenberg()
    adj = h.adjoint_rep()
    assert adj.space_dim == 3


def test_sign_error_named_pair():
    h = heisenberg()
    adj = h.adjoint_rep()
    images = list(adj.images)
    images[2] = -images[2]  # break dpi(Z) = [dpi(X), dpi(Y)]... Z image is 0
    images[2] = Matrix.from_rows([[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    with pytest.raises(RepresentationError, match=r"\(0,1\)"):
        validate_representation(RepData(h, 3, images))


def test_zero_rep_valid():
    h = heisenberg()
    z = Matrix.zero(2, 2)
    validate_representation(RepData(h, 2, [z, z, z]))


# ---------------------------------------------------------------------------
# weight decomposition
# ---------------------------------------------------------------------------

def test_weights_unipotent():
    adj = heisenberg().adjoint_rep()
    w = weight_decomposition(adj)
    assert len(w.weights) == 1
    assert w.weights[0].is_real()
    assert all(a.is_zero() for a in w.weights[0].alpha)
    assert w.spaces[0].dim == 6  # the whole complexified space


def test_weights_rotation():
    rot = Matrix.from_rows([[0, -1], [1, 0]])
    w = weight_decomposition(line_rep(rot))
    betas = sorted(x.beta[0].rational_part() for x in w.weights)
    assert betas == [-1, 1]
    assert len(w.pos_idx) == 1 and len(w.neg_idx) == 1
    assert w.conj[w.pos_idx[0]] == w.neg_idx[0]


def test_weights_diagonal():
    w = weight_decomposition(line_rep(Matrix.from_rows([[1, 0], [0, 2]])))
    alphas = sorted(x.alpha[0].rational_part() for x in w.weights)
    assert alphas == [1, 2]
    assert w.real_idx == (0, 1)


def test_weights_outside_field_reported():
    m = Matrix.from_rows([[0, 2], [1, 0]])  # eigenvalues +-sqrt(2), field = Q
    with pytest.raises(FieldExtensionNeeded):
        weight_decomposition(line_rep(m))


def weight_invariants(w):
    n = w.space_dim
    two_n = 2 * n
    field = w.rep.field
    assert sum(s.dim for s in w.spaces) == two_n
    ident = Matrix.identity(two_n, field)
    total = Matrix.zero(two_n, two_n, field)
    for p in w.projections:
        total = total + p
        assert p * p == p
    assert total == ident
    for i, p in enumerate(w.projections):
        for j, q in enumerate(w.projections):
            if i != j:
                assert (p * q).is_zero()
        for m in w.rep.images:
            big = complexified(m)
            assert p * big == big * p
    # conjugation symmetry
    conj_mat = conjugation_matrix(n, field)
    for k, space in enumerate(w.spaces):
        partner = k if k in w.real_idx else w.conj[k]
        target = w.spaces[partner]
        assert target.dim == space.dim
        for v in space.basis:
            assert target.contains(conj_mat.matvec(list(v)))


def test_weight_invariants_examples():
    weight_invariants(weight_decomposition(heisenberg().adjoint_rep()))
    weight_invariants(weight_decomposition(line_rep(Matrix.from_rows([[0, -1], [1, 0]]))))
    weight_invariants(weight_decomposition(line_rep(Matrix.from_rows([[1, 1], [0, 1]]))))


# random representations with known weights in Q(sqrt2)(i)

def real_block(alphas, ts, k, field):
    """Commuting family alpha_i I_k + t_i N_k on one real block."""
    out = []
    for a, t in zip(alphas, ts):
        rows = [[as_element(0, field)] * k for _ in range(k)]
        for r in range(k):
            rows[r][r] = as_element(a, field)
            if r + 1 < k:
                rows[r + 1][r] = as_element(t, field)
        out.append(Matrix.from_rows(rows))
    return out


def complex_block(alphas, betas, ts, m, field):
    """Realified commuting family (alpha_i + i beta_i) I_m + t_i N_m."""
    out = []
    for a, b, t in zip(alphas, betas, ts):
        re = [[as_element(0, field)] * m for _ in range(m)]
        im = [[as_element(0, field)] * m for _ in range(m)]
        for r in range(m):
            re[r][r] = as_element(a, field)
            im[r][r] = as_element(b, field)
            if r + 1 < m:
                re[r + 1][r] = as_element(t, field)
        out.append(
            Matrix.from_rows(
                [re[i] + [-x for x in im[i]] for i in range(m)]
                + [im[i] + re[i] for i in range(m)]
            )
        )
    return out


def random_abelian_rep(rng, max_alg=4, max_dim=6):
    d = rng.randint(1, max_alg)
    alg = abelian(d)
    blocks = []
    size = 0
    pool_beta = [1, 2, -1, SQRT2, 1 + SQRT2]
    pool_alpha = [0, 1, -2, SQRT2, F(1, 2)]
    while size == 0 or (size < max_dim and rng.random() < 0.6):
        if rng.random() < 0.5 and size + 2 <= max_dim:
            m = rng.choice([1, 2]) if size + 4 <= max_dim else 1
            alphas = [rng.choice(pool_alpha) for _ in range(d)]
            betas = [rng.choice(pool_beta) for _ in range(d)]
            ts = [F(rng.randint(-2, 2)) for _ in range(d)]
            blocks.append(complex_block(alphas, betas, ts, m, K2))
            size += 2 * m
        elif size + 1 <= max_dim:
            k = rng.choice([1, 2]) if size + 2 <= max_dim else 1
            alphas = [rng.choice(pool_alpha) for _ in range(d)]
            ts = [F(rng.randint(-2, 2)) for _ in range(d)]
            blocks.append(real_block(alphas, ts, k, K2))
            size += k
        else:
            break
    images = []
    for i in range(d):
        cells = [b[i] for b in blocks]
        n = sum(c.rows for c in cells)
        rows = [[as_element(0, K2)] * n for _ in range(n)]
        off = 0
        for cell in cells:
            for r in range(cell.rows):
                for cc in range(cell.cols):
                    rows[off + r][off + cc] = cell[r, cc]
            off += cell.rows
        images.append(Matrix.from_rows(rows))
    n = images[0].rows
    while True:
        p = Matrix.from_rows([[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)])
        if not det(p).is_zero():
            break
    pinv = inverse(p)
    images = [p * m * pinv for m in images]
    return validate_representation(RepData(alg, n, images))


def test_weight_invariants_random():
    rng = random.Random(31415)
    for _ in range(12):
        rep = random_abelian_rep(rng)
        weight_invariants(weight_decomposition(rep))


# ---------------------------------------------------------------------------
# real form
# ---------------------------------------------------------------------------

def test_real_form_rotation():
    rot = Matrix.from_rows([[0, -1], [1, 0]])
    rep = line_rep(rot)
    w = weight_decomposition(rep)
    rf = real_form(w)
    assert rank(rf.iota) == 2
    # image is the positive weight space
    assert rf.space == w.spaces[w.pos_idx[0]]
    # the transported action equals the original in the iota basis
    assert rf.rep_matrices[0] == rot
    big = complexified(rot)
    assert big * rf.iota == rf.iota * rot


def test_real_form_real_weights():
    m = Matrix.from_rows([[1, 0], [0, 2]])
    rep = line_rep(m)
    rf = real_form(weight_decomposition(rep))
    # identity transport on real parts
    for j in range(2):
        col = rf.iota.col(j)
        assert [x.rational_part() for x in col] == [int(i == j) for i in range(2)] + [0, 0]


def test_real_form_zero_rep():
    rep = line_rep(Matrix.zero(3, 3))
    rf = real_form(weight_decomposition(rep))
    assert rf.rep_matrices[0].is_zero()
    assert rank(rf.iota) == 3


# ---------------------------------------------------------------------------
# block decomposition and nu splitting
# ---------------------------------------------------------------------------

def nonabelian_character_rep(theta_is_sqrt2=True):
    """Heisenberg acting on realified C^2 through one coordinate by
    diag(e^(i t), e^(i theta t))."""
    h = heisenberg()
    beta2 = SQRT2 if theta_is_sqrt2 else as_element(2, K2)
    z = as_element(0, K2)
    dx = Matrix.from_rows(
        [
            [z, as_element(-1, K2), z, z],
            [as_element(1, K2), z, z, z],
            [z, z, z, -beta2],
            [z, z, beta2, z],
        ]
    )
    z4 = Matrix.zero(4, 4, K2)
    return validate_representation(RepData(h, 4, [dx, z4, z4]))


def test_blocks_nonabelian_fixture():
    dec = block_decomposition(nonabelian_character_rep())
    assert [b.kind for b in dec.blocks] == ["C", "C"]
    betas = sorted(str(b.beta[0]) for b in dec.blocks)
    assert betas == ["1", "1*a"]
    for b in dec.blocks:
        assert all(x.is_zero() for x in b.alpha)
        assert b.beta[1].is_zero() and b.beta[2].is_zero()


def test_blocks_diagonal():
    dec = block_decomposition(line_rep(Matrix.from_rows([[1, 0], [0, 2]])))
    assert [b.kind for b in dec.blocks] == ["R", "R"]
    assert sorted(b.alpha[0].rational_part() for b in dec.blocks) == [1, 2]
    assert all(all(x.is_zero() for x in b.beta) for b in dec.blocks)


def test_blocks_unipotent():
    dec = block_decomposition(heisenberg().adjoint_rep())
    assert len(dec.blocks) == 1
    b = dec.blocks[0]
    assert b.kind == "R" and b.m == 3
    assert all(x.is_zero() for x in b.alpha) and all(x.is_zero() for x in b.beta)


def test_blocks_roundtrip_supplied():
    rep = nonabelian_character_rep()
    dec = block_decomposition(rep)
    again = block_decomposition(rep, supplied=dec)
    assert again is dec


def test_blocks_supplied_invalid():
    rep = line_rep(Matrix.from_rows([[1, 0], [0, 2]]))
    bad = BlockDecomposition(
        [Block(span(2, [[1, 0], [0, 1]]), "R", 2, (as_element(1),), (as_element(0),), None)],
        rep,
    )
    with pytest.raises(BlockValidationError):
        block_decomposition(rep, supplied=bad)


def test_nu_split_semisimple():
    rep = nonabelian_character_rep()
    ns = nu_split(block_decomposition(rep))
    assert all(m.is_zero() for m in ns.dnu)
    assert ns.dE[0] == rep.images[0]


def test_nu_split_unipotent():
    adj = heisenberg().adjoint_rep()
    ns = nu_split(block_decomposition(adj))
    assert all(m.is_zero() for m in ns.dE)
    assert list(ns.dnu) == list(adj.images)


def test_nu_split_jordan_at_i():
    jord = Matrix.from_rows(
        [[0, -1, 1, 0], [1, 0, 0, 1], [0, 0, 0, -1], [0, 0, 1, 0]]
    )
    rep = line_rep(jord)
    ns = nu_split(block_decomposition(rep))
    rot_pair = Matrix.from_rows(
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]]
    )
    nil = Matrix.from_rows(
        [[0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0]]
    )
    assert ns.dE[0] == rot_pair
    assert ns.dnu[0] == nil


def test_nu_split_invariants_random():
    rng = random.Random(999)
    for _ in range(8):
        rep = random_abelian_rep(rng, max_alg=3, max_dim=5)
        ns = nu_split(block_decomposition(rep))
        n = rep.space_dim
        for i, nu in enumerate(ns.dnu):
            assert nu.power(n).is_zero()
            for e in ns.dE:
                assert e * nu == nu * e


# ---------------------------------------------------------------------------
# support
# ---------------------------------------------------------------------------

def test_support():
    dec = block_decomposition(nonabelian_character_rep())
    # block order: sqrt2 block first (weight sort), both realified C^1
    full = support([1, 0, 1, 0], dec)
    assert full == (0, 1)
    assert support([0, 0, 0, 0], dec) == ()
    only_one = support([1, 0, 0, 0], dec)
    assert len(only_one) == 1
