"""Finitely generated abelian groups as integer presentations.

A group is the cokernel of its relation matrix: Z^gens / colspan(relations).
Groups are kept as presentations so kernels and limits stay exact; canonical
form appears only through invariant_factors.

>>> g = FgAbelianGroup(2, IntMatrix.from_columns([[2, 0], [0, 3]], rows=2))
>>> str(invariant_factors(g))
'Z/6'
>>> invariant_factors(free_group(1))
InvariantFactors(free_rank=1, torsion=())
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalConsistencyError, InvariantViolation, PreconditionError
from .intlinalg import (
    IntMatrix,
    hstack,
    in_column_span,
    kernel_basis,
    lattice_basis,
    smith_decomposition,
    solve_int,
)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^generator_count modulo the column span of relations."""

    generator_count: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generator_count:
            raise InvariantViolation(
                "relations must have one row per generator",
                witness=(self.generator_count, self.relations.rows),
            )

    def reduces_to_zero(self, vec):
        """Whether a generator-coordinate vector lies in the relation span."""
        return in_column_span(self.relations, list(vec))

    def elements_equal(self, a, b):
        return self.reduces_to_zero([x - y for x, y in zip(a, b)])


def free_group(rank):
    return FgAbelianGroup(rank, IntMatrix.zero(rank, 0))


def cyclic_group(order):
    if order == 0:
        return free_group(1)
    return FgAbelianGroup(1, IntMatrix.from_rows([[order]]))


@dataclass(frozen=True)
class InvariantFactors:
    """Canonical form: Z^free_rank + sum of Z/d_i with d_1 | d_2 | ..."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        for d in self.torsion:
            if d < 2:
                raise InvariantViolation("torsion entries must be >= 2", witness=d)
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise InvariantViolation("divisibility chain broken", witness=(a, b))

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def invariant_factors(g):
    """Canonical decomposition of a presented group, unit factors dropped."""
    s = smith_decomposition(g.relations)
    diag = [d for d in s.diagonal if d != 0]
    torsion = tuple(d for d in diag if d > 1)
    return InvariantFactors(g.generator_count - len(diag), torsion)


def group_from_invariant_factors(factors):
    """Diagonal presentation: torsion generators first, then free ones."""
    n = len(factors.torsion) + factors.free_rank
    cols = []
    for i, d in enumerate(factors.torsion):
        col = [0] * n
        col[i] = d
        cols.append(col)
    if cols:
        return FgAbelianGroup(n, IntMatrix.from_columns(cols, rows=n))
    return FgAbelianGroup(n, IntMatrix.zero(n, 0))


@dataclass(frozen=True)
class GroupMorphism:
    """Generator-image matrix between presented groups.

    matrix is target.generator_count x source.generator_count; well-definedness
    means the image of every source relator reduces to zero in the target.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.generator_count:
            raise InvariantViolation("morphism matrix has wrong row count")
        if self.matrix.cols != self.source.generator_count:
            raise InvariantViolation("morphism matrix has wrong column count")
        moved = self.matrix * self.source.relations
        for j in range(moved.cols):
            if not self.target.reduces_to_zero(moved.column(j)):
                raise InvariantViolation(
                    "morphism does not respect source relations",
                    witness=self.source.relations.column(j),
                )

    def apply(self, vec):
        return self.matrix.apply(vec)

    def compose(self, inner):
        """self after inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise PreconditionError("composition mismatch")
        return GroupMorphism(inner.source, self.target, self.matrix * inner.matrix)

    def is_zero(self):
        return all(
            self.target.reduces_to_zero(self.matrix.column(j))
            for j in range(self.matrix.cols)
        )

    def equals(self, other):
        if self.source.generator_count != other.source.generator_count:
            return False
        diff = self.matrix - other.matrix
        return all(
            self.target.reduces_to_zero(diff.column(j))
            for j in range(diff.cols)
        )


def identity_morphism(g):
    return GroupMorphism(g, g, IntMatrix.identity(g.generator_count))


def zero_morphism(source, target):
    return GroupMorphism(source, target,
                         IntMatrix.zero(target.generator_count, source.generator_count))


def kernel(f):
    """Kernel subgroup with its inclusion morphism.

    The kernel of f: G -> H is L / colspan(G.relations) where L is the lattice
    {x : f(x) in colspan(H.relations)}, computed from the integer kernel of
    the stacked matrix [f.matrix | H.relations].
    """
    n = f.source.generator_count
    stacked = hstack(f.matrix, f.target.relations)
    full_kernel = kernel_basis(stacked)
    projected = full_kernel.select_rows(list(range(n)))
    basis = lattice_basis(projected) if projected.cols else IntMatrix.zero(n, 0)
    rank = basis.cols
    rel_cols = []
    for j in range(f.source.relations.cols):
        target_col = f.source.relations.column(j)
        coords = solve_int(basis, target_col)
        if coords is None:  # pragma: no cover - excluded by morphism validity
            raise InternalConsistencyError(
                "source relation escaped the kernel lattice", witness=target_col
            )
        rel_cols.append(coords)
    if rel_cols:
        relations = IntMatrix.from_columns(rel_cols, rows=rank)
    else:
        relations = IntMatrix.zero(rank, 0)
    k = FgAbelianGroup(rank, relations)
    incl = GroupMorphism(k, f.source, basis)
    return k, incl


def cokernel_factors(f):
    """Invariant factors of target / (image + target relations)."""
    quot = FgAbelianGroup(
        f.target.generator_count, hstack(f.matrix, f.target.relations)
    )
    return invariant_factors(quot)


def is_injective(f):
    k, _ = kernel(f)
    return invariant_factors(k).is_trivial


def is_surjective(f):
    return cokernel_factors(f).is_trivial


def is_isomorphism(f):
    return is_injective(f) and is_surjective(f)
