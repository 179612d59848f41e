import random
from fractions import Fraction as F

import numpy as np

from nilorbit.exactnum import as_element, sqrt_field
from nilorbit.lattices import GeneratorSet, dependence_report, scalar_set_closed

K2 = sqrt_field(2)
SQRT2 = K2.alpha()


def gens(ambient, vecs):
    return GeneratorSet.make(ambient, vecs)


def test_rational_generators_discrete():
    rep = dependence_report(gens(2, [[1, 0], [0, 1], [F(1, 2), F(1, 3)]]))
    assert rep.discrete and rep.all_rational
    assert rep.real_rank == 2 and rep.rational_rank == 2
    assert rep.basis_indices == (0, 1)


def test_one_and_sqrt2_not_discrete():
    rep = dependence_report(gens(1, [[1], [SQRT2]]))
    assert not rep.discrete
    assert rep.real_rank == 1 and rep.rational_rank == 2
    assert not rep.all_rational


def test_sqrt2_multiples_discrete():
    rep = dependence_report(gens(1, [[SQRT2], [2 * SQRT2]]))
    assert rep.discrete
    assert rep.real_rank == 1 and rep.rational_rank == 1
    assert rep.all_rational
    assert rep.coefficients[0][0].rational_part() == 2


def test_empty_set():
    rep = dependence_report(gens(3, []))
    assert rep.discrete and rep.real_rank == 0 == rep.rational_rank


def test_zero_vectors_only():
    rep = dependence_report(gens(2, [[0, 0], [0, 0]]))
    assert rep.discrete and rep.basis_indices == ()
    assert rep.coefficients == ((), ())


def test_scaling_invariance():
    rng = random.Random(8)
    for _ in range(25):
        vecs = []
        for _ in range(rng.randint(1, 4)):
            vecs.append([
                K2.element([F(rng.randint(-4, 4)), F(rng.randint(-2, 2))])
                for _ in range(2)
            ])
        base = dependence_report(gens(2, vecs))
        s = F(rng.randint(1, 7), rng.randint(1, 7))
        scaled = dependence_report(gens(2, [[as_element(s) * x for x in v] for v in vecs]))
        assert scaled.discrete == base.discrete
        assert scaled.all_rational == base.all_rational


def test_duplicates_do_not_change_ranks():
    vecs = [[1, 0], [SQRT2, 1]]
    a = dependence_report(gens(2, vecs))
    b = dependence_report(gens(2, vecs + vecs))
    assert (a.real_rank, a.rational_rank, a.discrete) == (b.real_rank, b.rational_rank, b.discrete)


def test_discrete_iff_all_rational():
    # both characterizations of discreteness must agree
    rng = random.Random(77)
    for _ in range(40):
        vecs = []
        for _ in range(rng.randint(1, 4)):
            vecs.append([
                K2.element([F(rng.randint(-3, 3)), F(rng.randint(-1, 1))])
                for _ in range(2)
            ])
        rep = dependence_report(gens(2, vecs))
        assert rep.discrete == rep.all_rational


def test_scalar_set_closed():
    assert scalar_set_closed([1, F(3, 5)])
    assert not scalar_set_closed([1, SQRT2])
    assert scalar_set_closed([])
    assert scalar_set_closed([SQRT2, 2 * SQRT2, -SQRT2])
    assert scalar_set_closed([0, 0])
    assert scalar_set_closed([as_element(0, K2), SQRT2])


# ---------------------------------------------------------------------------
# numeric cross-check of the exact verdicts
# ---------------------------------------------------------------------------

MACHINE_ZERO = 1e-12  # exact integer cancellations give the zero vector, not a short one


def shortest_combination_norm(vectors, bound=1000):
    """Smallest float norm of a nonzero integer combination, |coeffs| <= bound.

    Exhaustive for one or two generators; for three the last coefficient is
    enumerated and the inner pair solved by lattice rounding.  Combinations
    that cancel to the zero vector (norm below machine zero) are skipped.
    """
    vs = [np.array([float(x) for x in v]) for v in vectors]
    if len(vs) == 1:
        return float(np.linalg.norm(vs[0]))  # minimized at coefficient 1
    if len(vs) == 2:
        a = float(vs[0] @ vs[0])
        b = float(vs[0] @ vs[1])
        c = float(vs[1] @ vs[1])
        grid = np.arange(-bound, bound + 1, dtype=np.float64)
        n1 = grid[:, None]
        n2 = grid[None, :]
        q = n1 * n1 * a + 2 * n1 * n2 * b + n2 * n2 * c
        norms = np.sqrt(np.maximum(q, 0.0))
        norms[bound, bound] = np.inf  # coefficients (0, 0)
        norms[norms < MACHINE_ZERO] = np.inf
        return float(norms.min())
    basis = np.column_stack(vs[:2])
    pinv = np.linalg.pinv(basis)
    best = np.inf
    for n3 in range(-bound, bound + 1):
        target = -n3 * vs[2]
        guess = np.round(pinv @ target)
        for d1 in (-1, 0, 1):
            for d2 in (-1, 0, 1):
                c = guess + np.array([d1, d2])
                if abs(c[0]) > bound or abs(c[1]) > bound:
                    continue
                if n3 == 0 and c[0] == 0 and c[1] == 0:
                    continue
                norm = np.linalg.norm(basis @ c - target)
                if MACHINE_ZERO <= norm < best:
                    best = norm
    return float(best)


def random_instance(rng):
    """A generator set over Q(sqrt2)^2, weighted towards interesting cases.

    Instances stay near unit scale: rational lattices with denominators up to
    6 have shortest vectors >= 1/60, while sqrt2-coupled pairs admit integer
    combinations below 1e-3 within the coefficient bound 1000.
    """
    kind = rng.randrange(3)

    def rat():
        return F(rng.randint(-4, 4), rng.randint(4, 6))

    def unit(v):
        return v if any(x != 0 for x in v) else [F(1, 2), F(0)]

    if kind == 0:  # purely rational: discrete
        k = rng.randint(1, 3)
        return [unit([rat(), rat()]) for _ in range(k)]
    if kind == 1:
        # generator plus a sqrt2 multiple of it: not discrete.  Norm kept
        # below ~0.71 so the best |n1 + n2*sqrt2| within the coefficient
        # bound (about 8.6e-4) lands safely under the 1e-3 threshold.
        v = [F(rng.randint(-2, 2), rng.randint(4, 6)) for _ in range(2)]
        if all(x == 0 for x in v):
            v = [F(1, 2), F(0)]
        w = [SQRT2 * as_element(x) for x in v]
        return [v, w]
    # sqrt2-scaled copy of a rational lattice: still discrete
    v = unit([rat(), rat()])
    return [[SQRT2 * as_element(x) for x in v], [2 * SQRT2 * as_element(x) for x in v]]


def test_numeric_cross_check():
    rng = random.Random(4242)
    for _ in range(50):
        vecs = random_instance(rng)
        rep = dependence_report(gens(2, vecs))
        shortest = shortest_combination_norm(vecs, bound=1000)
        if shortest < 1e-3:
            assert not rep.discrete
        else:
            assert rep.discrete
