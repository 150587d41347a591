"""Subspace lattices of tensor powers over the Gaussian rationals.

Subspaces are stored in a unique reduced-echelon canonical form, so every
lattice identity in this module is decided by exact matrix equality.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from math import comb, prod

from . import linalg as la
from .gq import GQ, ONE, ZERO
from .lattice import FiniteOL, SizeGuardError
from .cylindric import CylindricStructure
from .quantifiers import UnaryMap

MAX_AMBIENT_DIM = 256


@dataclass(frozen=True)
class Subspace:
    """A subspace of GQ^dim; basis rows are in canonical reduced echelon
    form, so equality of Subspace values is equality of subspaces."""

    dim: int
    basis: tuple

    @staticmethod
    def from_vectors(dim: int, vectors) -> "Subspace":
        vecs = [tuple(x if isinstance(x, GQ) else GQ(x) for x in v)
                for v in vectors]
        for v in vecs:
            if len(v) != dim:
                raise ValueError("vector length %d != ambient %d"
                                 % (len(v), dim))
        red, _ = la.rref(vecs)
        return Subspace(dim, red)

    @staticmethod
    def zero(dim: int) -> "Subspace":
        return Subspace(dim, ())

    @staticmethod
    def full(dim: int) -> "Subspace":
        return Subspace(dim, la.eye(dim))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v) -> bool:
        return la.in_rowspace(self.basis, tuple(v))

    def leq(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)


def _check_dims(a: Subspace, b: Subspace):
    if a.dim != b.dim:
        raise ValueError("ambient dimension mismatch: %d vs %d"
                         % (a.dim, b.dim))


def ortho(a: Subspace) -> Subspace:
    """Orthogonal complement under the Hermitian inner product."""
    ns = la.nullspace(la.conj_mat(a.basis), a.dim)
    return Subspace(a.dim, ns)


def join(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return Subspace.from_vectors(a.dim, list(a.basis) + list(b.basis))


def meet(a: Subspace, b: Subspace) -> Subspace:
    _check_dims(a, b)
    return ortho(join(ortho(a), ortho(b)))


def tensor_subspace(a: Subspace, b: Subspace) -> Subspace:
    d = a.dim * b.dim
    if d > MAX_AMBIENT_DIM:
        raise SizeGuardError("tensor ambient dimension %d exceeds guard" % d)
    vecs = []
    for ra in a.basis:
        for rb in b.basis:
            vecs.append(tuple(x * y for x in ra for y in rb))
    return Subspace.from_vectors(d, vecs)


# ---------------------------------------------------------------------------
# tensor layouts


@dataclass(frozen=True)
class TensorLayout:
    """Row-major indexing of a tensor product of factors of the given
    dimensions: coordinate of (i_1,..,i_n) is sum of i_k * stride_k."""

    factor_dims: tuple

    def __post_init__(self):
        if not self.factor_dims or any(d < 1 for d in self.factor_dims):
            raise ValueError("factor dimensions must be positive")
        if self.dim > MAX_AMBIENT_DIM:
            raise SizeGuardError("ambient dimension %d exceeds guard %d"
                                 % (self.dim, MAX_AMBIENT_DIM))

    @property
    def n(self) -> int:
        return len(self.factor_dims)

    @property
    def dim(self) -> int:
        return prod(self.factor_dims)

    def strides(self):
        s = [1] * self.n
        for k in range(self.n - 2, -1, -1):
            s[k] = s[k + 1] * self.factor_dims[k + 1]
        return tuple(s)

    def index(self, idx) -> int:
        return sum(i * s for i, s in zip(idx, self.strides()))

    def tuples(self):
        return product(*(range(d) for d in self.factor_dims))

    def without(self, factors) -> "TensorLayout":
        fs = set(factors)
        rest = tuple(d for k, d in enumerate(self.factor_dims) if k not in fs)
        if not rest:
            rest = (1,)
        return TensorLayout(rest)


def _split_positions(layout: TensorLayout, factors):
    fs = sorted(set(factors))
    rest = [k for k in range(layout.n) if k not in fs]
    return fs, rest


def _coord_maps(layout: TensorLayout, factors):
    """Index helpers for slicing factor positions F out of the layout.

    Returns (f_tuples, rest_tuples, addr) where addr(ft, rt) is the flat
    coordinate with F-positions set to ft and the others to rt, both read
    in increasing position order.
    """
    fs, rest = _split_positions(layout, factors)
    strides = layout.strides()
    f_tuples = list(product(*(range(layout.factor_dims[k]) for k in fs)))
    rest_tuples = list(product(*(range(layout.factor_dims[k]) for k in rest)))

    def addr(ft, rt):
        s = 0
        for k, i in zip(fs, ft):
            s += i * strides[k]
        for k, i in zip(rest, rt):
            s += i * strides[k]
        return s

    return f_tuples, rest_tuples, addr


def component_span(layout: TensorLayout, factors, s: Subspace) -> Subspace:
    """Span of the slice components of a basis of s along the standard
    basis of the factors in `factors`; lives in the complementary space."""
    if isinstance(factors, int):
        factors = (factors,)
    if s.dim != layout.dim:
        raise ValueError("subspace does not live in this layout")
    f_tuples, rest_tuples, addr = _coord_maps(layout, factors)
    comps = []
    for v in s.basis:
        for ft in f_tuples:
            comps.append(tuple(v[addr(ft, rt)] for rt in rest_tuples))
    return Subspace.from_vectors(len(rest_tuples), comps)


def embed_alpha(layout: TensorLayout, factors, b: Subspace) -> Subspace:
    """The full space on `factors` tensored with b, placed per layout."""
    if isinstance(factors, int):
        factors = (factors,)
    f_tuples, rest_tuples, addr = _coord_maps(layout, factors)
    if b.dim != len(rest_tuples):
        raise ValueError("subspace does not live in the complementary space")
    vecs = []
    for ft in f_tuples:
        for row in b.basis:
            v = [ZERO] * layout.dim
            for rt, x in zip(rest_tuples, row):
                v[addr(ft, rt)] = x
            vecs.append(tuple(v))
    return Subspace.from_vectors(layout.dim, vecs)


def exists_factor(layout: TensorLayout, factors, s: Subspace) -> Subspace:
    """Least subspace of the form (full on factors) x T above s."""
    return embed_alpha(layout, factors, component_span(layout, factors, s))


def forall_factor(layout: TensorLayout, factors, s: Subspace) -> Subspace:
    """Greatest subspace of the form (full on factors) x T below s."""
    return ortho(exists_factor(layout, factors, ortho(s)))


def forall_factor_direct(layout: TensorLayout, factors, s: Subspace) -> Subspace:
    """Membership characterization: (full) x <w> below s for every pure
    slice; cross-check for forall_factor."""
    if isinstance(factors, int):
        factors = (factors,)
    f_tuples, rest_tuples, addr = _coord_maps(layout, factors)
    # w must satisfy: for every ft, the vector e_ft (x) w is in s, i.e. is
    # orthogonal to ortho(s).
    constraints = []
    so = ortho(s)
    for ft in f_tuples:
        for row in so.basis:
            constraints.append(tuple(row[addr(ft, rt)].conj()
                                     for rt in rest_tuples))
    sub = Subspace(len(rest_tuples),
                   la.nullspace(la.conj_mat(tuple(constraints)),
                                len(rest_tuples)))
    return embed_alpha(layout, factors, sub)


def check_commutation(layout: TensorLayout, i: int, j: int, s: Subspace) -> bool:
    """Iterated one-factor quantifiers in both orders against the grouped
    two-factor quantifier; three independent computations."""
    if i == j:
        raise ValueError("factors must differ")
    a = exists_factor(layout, i, exists_factor(layout, j, s))
    b = exists_factor(layout, j, exists_factor(layout, i, s))
    c = exists_factor(layout, (i, j), s)
    return a == b == c


# ---------------------------------------------------------------------------
# diagonals


def diagonal(layout: TensorLayout, factors) -> Subspace:
    """Subspace of tensors whose coordinates are invariant under permuting
    the positions in `factors` (all of equal dimension)."""
    fs = sorted(set(factors))
    dims = {layout.factor_dims[k] for k in fs}
    if len(dims) != 1:
        raise ValueError("diagonal factors must have equal dimensions")
    if len(fs) <= 1:
        return Subspace.full(layout.dim)
    vecs = []
    seen = set()
    for idx in layout.tuples():
        key = tuple(sorted(idx[k] for k in fs)) + \
            tuple(idx[k] for k in range(layout.n) if k not in fs)
        if key in seen:
            continue
        seen.add(key)
        orbit = _orbit(idx, fs)
        v = [ZERO] * layout.dim
        for t in orbit:
            v[layout.index(t)] = ONE
        vecs.append(tuple(v))
    return Subspace.from_vectors(layout.dim, vecs)


def _orbit(idx, fs):
    from itertools import permutations
    vals = [idx[k] for k in fs]
    out = set()
    for pv in permutations(vals):
        t = list(idx)
        for k, v in zip(fs, pv):
            t[k] = v
        out.add(tuple(t))
    return out


def diagonal_rank(layout: TensorLayout, factors) -> int:
    """Symmetric-power dimension times the free factor dimensions."""
    fs = sorted(set(factors))
    d = layout.factor_dims[fs[0]]
    rest = prod(layout.factor_dims[k] for k in range(layout.n) if k not in fs)
    return comb(d + len(fs) - 1, len(fs)) * rest


def check_diagonal_meet(layout: TensorLayout, i: int, j: int, k: int) -> bool:
    lhs = meet(diagonal(layout, (i, j)), diagonal(layout, (j, k)))
    return lhs == diagonal(layout, {i, j, k})


def check_diagonal_composition(layout: TensorLayout, i: int, j: int, k: int) -> bool:
    """d_ik == exists_j(d_ij ^ d_jk), exact."""
    if j in (i, k):
        raise ValueError("middle index must differ from the endpoints")
    lhs = exists_factor(layout, j,
                        meet(diagonal(layout, (i, j)), diagonal(layout, (j, k))))
    return lhs == diagonal(layout, (i, k))


@dataclass
class C5WitnessRecord:
    layout: TensorLayout
    s: Subspace
    term_pos: Subspace   # exists_1(d ^ s)
    term_neg: Subspace   # exists_1(d ^ s-ortho)
    meet_of_terms: Subspace
    contained_line: Subspace  # (full) x <e_0>, inside the meet


def c5_counterexample(dim: int) -> C5WitnessRecord:
    """At n=2 and factor dimension >= 3 the two C5 terms for the line
    spanned by e0 (x) e1 + e1 (x) e0 share a subspace of rank >= dim."""
    if dim < 3:
        raise ValueError("needs three distinct basis indices (dim >= 3)")
    layout = TensorLayout((dim, dim))
    v = [ZERO] * layout.dim
    v[layout.index((0, 1))] = ONE
    v[layout.index((1, 0))] = ONE
    s = Subspace.from_vectors(layout.dim, [tuple(v)])
    d = diagonal(layout, (0, 1))
    pos = exists_factor(layout, 0, meet(d, s))
    neg = exists_factor(layout, 0, meet(d, ortho(s)))
    both = meet(pos, neg)
    e0 = Subspace.from_vectors(dim, [tuple(ONE if t == 0 else ZERO
                                           for t in range(dim))])
    line = embed_alpha(layout, 0, e0)
    return C5WitnessRecord(layout, s, pos, neg, both, line)


# ---------------------------------------------------------------------------
# random generation and basis changes


def random_subspace(dim: int, rng: random.Random, max_entry: int = 3) -> Subspace:
    rows = rng.randrange(0, dim + 1)
    vecs = [[GQ(rng.randint(-max_entry, max_entry)) for _ in range(dim)]
            for _ in range(rows)]
    return Subspace.from_vectors(dim, vecs)


def apply_factor_map(layout: TensorLayout, factor: int, u, s: Subspace) -> Subspace:
    """Act by (1 (x) .. (x) u (x) .. (x) 1) on a subspace."""
    f_tuples, rest_tuples, addr = _coord_maps(layout, (factor,))
    d = layout.factor_dims[factor]
    vecs = []
    for v in s.basis:
        w = [ZERO] * layout.dim
        for rt in rest_tuples:
            col = [v[addr((k,), rt)] for k in range(d)]
            new = la.matvec(u, tuple(col))
            for k in range(d):
                w[addr((k,), rt)] = new[k]
        vecs.append(tuple(w))
    return Subspace.from_vectors(layout.dim, vecs)


def signed_permutation_unitaries(dim: int):
    """All unitaries with entries in {0, 1, -1} (one per row/column)."""
    from itertools import permutations
    for perm in permutations(range(dim)):
        for signs in product((ONE, -ONE), repeat=dim):
            yield tuple(tuple(signs[r] if c == perm[r] else ZERO
                              for c in range(dim)) for r in range(dim))


def hadamard4_over_2():
    h = [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]]
    half = GQ(1) / GQ(2)
    return tuple(tuple(half * GQ(x) for x in row) for row in h)


def check_basis_independence(layout: TensorLayout, factor: int, u,
                             s: Subspace) -> bool:
    """Slicing along the columns of u instead of the standard basis must
    give the same component span."""
    via_u = component_span(layout, factor,
                           apply_factor_map(layout, factor, la.adjoint(u), s))
    return via_u == component_span(layout, factor, s)


# ---------------------------------------------------------------------------
# finite closures as cylindric structures


def as_cylindric_structure(layout: TensorLayout, generators,
                           max_closure: int = 128):
    """Close generators and all diagonals under meet, join, ortho and every
    one-factor quantifier; package the finite sub-ortholattice for the
    cylindric axiom checkers.

    Returns (structure, subspace_list); element i of the lattice is
    subspace_list[i].
    """
    dims = tuple(range(layout.n))
    start = [Subspace.zero(layout.dim), Subspace.full(layout.dim)]
    for i in dims:
        for j in dims:
            dsub = diagonal(layout, (i, j)) if i != j \
                else Subspace.full(layout.dim)
            if dsub not in start:
                start.append(dsub)
    for g in generators:
        if g not in start:
            start.append(g)
    closure = []
    seen = {}

    def push(x):
        if x not in seen:
            seen[x] = len(closure)
            closure.append(x)
            if len(closure) > max_closure:
                raise SizeGuardError(
                    "closure exceeded %d subspaces" % max_closure)
        return seen[x]

    # every op result is cached by insertion index so the final tables are
    # pure lookups; the pair loop touches each unordered pair exactly once
    meet_memo = {}
    join_memo = {}
    ortho_memo = {}
    exists_memo = {}
    for x in start:
        push(x)
    i = 0
    while i < len(closure):
        a = closure[i]
        ortho_memo[i] = push(ortho(a))
        for f in dims:
            exists_memo[(f, i)] = push(exists_factor(layout, f, a))
        for j in range(i + 1):
            meet_memo[(j, i)] = push(meet(a, closure[j]))
            join_memo[(j, i)] = push(join(a, closure[j]))
        i += 1

    perm = sorted(range(len(closure)), key=lambda k: (
        closure[k].rank,
        tuple((x.re, x.im) for row in closure[k].basis for x in row)))
    new_of_old = {old: new for new, old in enumerate(perm)}

    def mlook(memo, a, b):
        return new_of_old[memo[(min(a, b), max(a, b))]]

    ordered = [closure[k] for k in perm]
    labels = tuple("S%d(r%d)" % (k, s.rank) for k, s in enumerate(ordered))
    meet_t = tuple(tuple(mlook(meet_memo, a, b) for b in perm) for a in perm)
    join_t = tuple(tuple(mlook(join_memo, a, b) for b in perm) for a in perm)
    ortho_t = tuple(new_of_old[ortho_memo[a]] for a in perm)
    closure = ordered
    index = {s: k for k, s in enumerate(closure)}
    L = FiniteOL(labels, meet_t, join_t, ortho_t,
                 index[Subspace.zero(layout.dim)],
                 index[Subspace.full(layout.dim)])
    cyl = {i: UnaryMap(L, tuple(new_of_old[exists_memo[(i, a)]]
                                for a in perm)) for i in dims}
    diag = {}
    for i in dims:
        for j in dims:
            dsub = diagonal(layout, (i, j)) if i != j \
                else Subspace.full(layout.dim)
            diag[(i, j)] = index[dsub]
    return CylindricStructure(L, dims, cyl, diag), closure
