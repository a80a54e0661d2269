"""Relative simplicial homology over Z via Smith normal form.

The engine is generic over a based chain complex (an ordered basis per
dimension plus a signed face map), so the same code serves simplicial pairs,
reduced complexes, and the orbit chain complexes of swap-quotients.
"""

from __future__ import annotations

from .complexes import Chain, straighten
from .errors import InvariantViolation, PreconditionError
from .groups import GroupMorphism, InvariantFactors, group_from_invariant_factors
from .intlinalg import IntMatrix, smith_decomposition


def boundary_matrix(basis_k, basis_km1, face_fn):
    """Matrix of the boundary over explicit bases; unknown faces are dropped.

    Dropping faces absent from the lower basis is exactly the relative
    boundary when the lower basis omits sub/region simplices.
    """
    index = {key: i for i, key in enumerate(basis_km1)}
    rows = len(basis_km1)
    cols = []
    for key in basis_k:
        col = [0] * rows
        for sign, face in face_fn(key):
            i = index.get(face)
            if i is not None:
                col[i] += sign
        cols.append(col)
    if cols:
        return IntMatrix.from_columns(cols, rows=rows)
    return IntMatrix.zero(rows, 0)


class HomologyData:
    """H_k of one degree of a based integer chain complex.

    Built from the two boundary matrices around degree k; exposes the group in
    canonical coordinates (torsion generators first, then free generators),
    explicit generator vectors, and coordinates of arbitrary cycles.
    """

    def __init__(self, d_k, d_kp1, basis):
        self.basis = list(basis)
        n = len(self.basis)
        if d_k.cols != n or d_kp1.rows != n:
            raise InvariantViolation("boundary matrices do not fit the basis")
        self._snf_k = smith_decomposition(d_k)
        self._rank_k = self._snf_k.rank
        kappa = n - self._rank_k
        self._kappa = kappa

        w_cols = []
        for j in range(d_kp1.cols):
            x = self._snf_k.v_inv.apply(d_kp1.column(j))
            if any(x[i] != 0 for i in range(self._rank_k)):
                raise InvariantViolation("boundary of a boundary is nonzero",
                                         witness=j)
            w_cols.append(x[self._rank_k:])
        if w_cols:
            w = IntMatrix.from_columns(w_cols, rows=kappa)
        else:
            w = IntMatrix.zero(kappa, 0)
        self._snf_w = smith_decomposition(w)
        diag = self._snf_w.diagonal
        rank_w = self._snf_w.rank

        self._torsion_indices = [i for i in range(rank_w) if diag[i] >= 2]
        self._free_indices = list(range(rank_w, kappa))
        self._torsion = tuple(diag[i] for i in self._torsion_indices)
        self.factors = InvariantFactors(len(self._free_indices), self._torsion)
        self.group = group_from_invariant_factors(self.factors)

    @property
    def generator_count(self):
        return len(self._torsion_indices) + len(self._free_indices)

    def generator_vectors(self):
        """Cycle vectors over the basis, one per canonical generator."""
        kb = self._snf_k.v.select_columns(
            list(range(self._rank_k, self._rank_k + self._kappa)))
        out = []
        for i in self._torsion_indices + self._free_indices:
            coeffs = [self._snf_w.u_inv.entry(r, i) for r in range(self._kappa)]
            out.append(kb.apply(coeffs))
        return out

    def class_of_vector(self, vec):
        """Canonical homology coordinates of a cycle vector."""
        x = self._snf_k.v_inv.apply(list(vec))
        if any(x[i] != 0 for i in range(self._rank_k)):
            raise PreconditionError("vector is not a cycle")
        y = self._snf_w.u.apply(x[self._rank_k:])
        coords = [y[i] % self._torsion[t]
                  for t, i in enumerate(self._torsion_indices)]
        coords.extend(y[i] for i in self._free_indices)
        return tuple(coords)

    def vector_of(self, straightened, drop=frozenset()):
        """Coefficient vector over the basis from a sorted-symbol mapping."""
        index = {key: i for i, key in enumerate(self.basis)}
        vec = [0] * len(self.basis)
        for key, coeff in straightened.items():
            i = index.get(key)
            if i is None:
                if key in drop:
                    continue
                raise PreconditionError("support outside the chain basis",
                                        witness=key)
            vec[i] += coeff
        return vec


def _simplicial_faces(symbol):
    sign = 1
    for i in range(len(symbol)):
        yield sign, symbol[:i] + symbol[i + 1:]
        sign = -sign


def _pair_basis(pair, k):
    return [s for s in pair.complex.simplices_of_dim(k)
            if s not in pair.sub.simplices]


_AUGMENTATION_KEY = ()


def homology_data(pair, k, reduced=False):
    """HomologyData of a complex pair in degree k."""
    if k < 0:
        raise PreconditionError("dimension must be nonnegative", witness=k)
    if reduced and pair.sub.simplices:
        raise PreconditionError("reduced homology is defined for absolute complexes")
    basis_k = _pair_basis(pair, k)
    basis_kp1 = _pair_basis(pair, k + 1)
    if k == 0 and reduced:
        basis_km1 = [_AUGMENTATION_KEY]

        def face_fn(symbol):
            return [(1, _AUGMENTATION_KEY)]
    else:
        basis_km1 = _pair_basis(pair, k - 1) if k > 0 else []
        face_fn = _simplicial_faces
    d_k = boundary_matrix(basis_k, basis_km1, face_fn)
    d_kp1 = boundary_matrix(basis_kp1, basis_k, _simplicial_faces)
    return HomologyData(d_k, d_kp1, basis_k)


def homology(pair, k, reduced=False):
    """Invariant factors and explicit generator cycles of H_k(pair).

    >>> from .complexes import ComplexPair, SimplicialComplex
    >>> point = ComplexPair.absolute(SimplicialComplex.from_simplices([("pt",)]))
    >>> factors, gens = homology(point, 0)
    >>> str(factors)
    'Z'
    """
    data = homology_data(pair, k, reduced=reduced)
    gens = []
    for vec in data.generator_vectors():
        gens.append(Chain(k, {data.basis[i]: c for i, c in enumerate(vec) if c}))
    return data.factors, gens


def chain_class(pair, k, chain, reduced=False, data=None):
    """Homology coordinates of a relative cycle given as a Chain."""
    data = data or homology_data(pair, k, reduced=reduced)
    flat = straighten(chain)
    for key in flat:
        if not pair.complex.has_simplex(key):
            raise PreconditionError("chain support outside the complex", witness=key)
    vec = data.vector_of(flat, drop=pair.sub.simplices)
    return data.class_of_vector(vec)


def check_simplicial(vertex_map, pair_src, pair_tgt):
    for s in pair_src.complex.simplices:
        image = tuple(vertex_map[v] for v in s)
        if not pair_tgt.complex.spans_simplex(image):
            raise PreconditionError("vertex map is not simplicial", witness=s)
    for s in pair_src.sub.simplices:
        image = tuple(sorted(set(vertex_map[v] for v in s)))
        if image not in pair_tgt.sub.simplices:
            raise PreconditionError("vertex map does not respect the pair", witness=s)


def map_chain(vertex_map, chain):
    """Push a chain through a vertex map; degenerate images vanish."""
    out = {}
    for symbol, coeff in chain.terms.items():
        image = tuple(vertex_map[v] for v in symbol)
        out[image] = out.get(image, 0) + coeff
    return Chain(chain.dim, out)


def induced_homology_map(vertex_map, pair_src, pair_tgt, k,
                         data_src=None, data_tgt=None):
    """The homology morphism of a simplicial map of pairs in degree k."""
    check_simplicial(vertex_map, pair_src, pair_tgt)
    data_src = data_src or homology_data(pair_src, k)
    data_tgt = data_tgt or homology_data(pair_tgt, k)
    cols = []
    for vec in data_src.generator_vectors():
        chain = Chain(k, {data_src.basis[i]: c for i, c in enumerate(vec) if c})
        image = map_chain(vertex_map, chain)
        flat = straighten(image)
        tvec = data_tgt.vector_of(flat, drop=pair_tgt.sub.simplices)
        cols.append(list(data_tgt.class_of_vector(tvec)))
    if cols:
        matrix = IntMatrix.from_columns(cols, rows=data_tgt.generator_count)
    else:
        matrix = IntMatrix.zero(data_tgt.generator_count, 0)
    return GroupMorphism(data_src.group, data_tgt.group, matrix)
