"""Discreteness of finitely generated additive subgroups of R^n.

Generators have entries in Q or one Q(alpha).  The subgroup they generate is
discrete (equivalently closed, equivalently locally closed) exactly when the
dimension of their span over R equals the dimension of their span over Q; the
rational span dimension is computed exactly by expanding each Q(alpha)
coordinate of degree d into d rational coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactla import Matrix, rank, solve
from .exactnum import FieldElement, as_element


@dataclass(frozen=True)
class GeneratorSet:
    """Finitely many vectors generating an additive subgroup of R^ambient_dim."""

    ambient_dim: int
    vectors: tuple[tuple[FieldElement, ...], ...]

    @staticmethod
    def make(ambient_dim: int, vectors: Sequence[Sequence]) -> "GeneratorSet":
        vecs = []
        for v in vectors:
            w = tuple(as_element(x) for x in v)
            if len(w) != ambient_dim:
                raise ValueError("generator has wrong length")
            vecs.append(w)
        return GeneratorSet(ambient_dim, tuple(vecs))


@dataclass(frozen=True)
class DependenceReport:
    """Rational-dependence data of a generator set.

    `basis_indices` names the first maximal R-independent prefix of the
    generators; `coefficients[i][j]` expresses the i-th remaining generator in
    that basis.  Discreteness is the rank criterion real_rank == rational_rank,
    which coincides with every coefficient being rational.
    """

    real_rank: int
    rational_rank: int
    discrete: bool
    basis_indices: tuple[int, ...]
    dependent_indices: tuple[int, ...]
    coefficients: tuple[tuple[FieldElement, ...], ...]
    all_rational: bool


def _expand_rational_coords(vec: Sequence[FieldElement]) -> list[Fraction]:
    out: list[Fraction] = []
    for x in vec:
        out.extend(x.coords)
    return out


def dependence_report(g: GeneratorSet) -> DependenceReport:
    """Exact discreteness verdict and dependence data for a generator set."""
    vectors = [list(v) for v in g.vectors]
    n = g.ambient_dim

    # real rank: rank over the coefficient field (a subfield of R)
    if vectors:
        real_rank = rank(Matrix.from_columns(vectors, n))
    else:
        real_rank = 0

    # rational rank: rank over Q of the coordinate-expanded matrix
    expanded = [_expand_rational_coords(v) for v in vectors]
    if expanded:
        width = max(len(e) for e in expanded)
        expanded = [e + [Fraction(0)] * (width - len(e)) for e in expanded]
        rational_rank = rank(Matrix.from_columns([[as_element(q) for q in e] for e in expanded], width))
    else:
        rational_rank = 0

    # first maximal independent prefix under the given ordering
    basis: list[int] = []
    for i, v in enumerate(vectors):
        chosen = [vectors[j] for j in basis] + [v]
        if rank(Matrix.from_columns(chosen, n)) == len(chosen):
            basis.append(i)
    dependents = [i for i in range(len(vectors)) if i not in basis]

    coefficients: list[tuple[FieldElement, ...]] = []
    all_rational = True
    if basis:
        bmat = Matrix.from_columns([vectors[j] for j in basis], n)
        for i in dependents:
            x = solve(bmat, Matrix.column(vectors[i]))
            row = tuple(x.col(0))
            coefficients.append(row)
            if any(not c.is_rational() for c in row):
                all_rational = False
    else:
        # no basis: every generator must be the zero vector
        for i in dependents:
            coefficients.append(tuple())

    return DependenceReport(
        real_rank=real_rank,
        rational_rank=rational_rank,
        discrete=(real_rank == rational_rank),
        basis_indices=tuple(basis),
        dependent_indices=tuple(dependents),
        coefficients=tuple(coefficients),
        all_rational=all_rational,
    )


def scalar_set_closed(thetas: Sequence) -> bool:
    """Whether the additive subgroup of R generated by the given exact scalars
    is closed: true iff their span over Q has dimension at most one."""
    elements = [as_element(t) for t in thetas if not as_element(t).is_zero()]
    if not elements:
        return True
    g = GeneratorSet.make(1, [[e] for e in elements])
    return dependence_report(g).rational_rank <= 1
