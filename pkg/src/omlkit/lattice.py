"""Finite ortholattice kernel.

A FiniteOL stores elements by index with full meet/join tables computed at
construction; values are immutable and every operation is a pure function.
Builders for the canonical small structures (chains, Boolean algebras, O6,
MO(n), Greechie pastings, direct products) live here too.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

DEFAULT_MAX_ELEMENTS = 512


class LatticeError(ValueError):
    """Structural problem: not a lattice, missing bounds, bad tables."""


class SizeGuardError(ValueError):
    """Input exceeds the configured element-count bound."""


@dataclass(frozen=True, eq=False)
class FiniteOL:
    """Finite bounded lattice with an orthocomplementation table.

    The ortho table is not validated at construction (validate_ortholattice
    reports on it); lattice-hood of meet/join is guaranteed by construction.
    """

    labels: tuple
    meet_t: tuple
    join_t: tuple
    ortho_t: tuple
    zero: int
    one: int

    @property
    def n(self) -> int:
        return len(self.labels)

    def elements(self):
        return range(len(self.labels))

    def meet(self, x: int, y: int) -> int:
        return self.meet_t[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_t[x][y]

    def ortho(self, x: int) -> int:
        return self.ortho_t[x]

    def leq(self, x: int, y: int) -> bool:
        return self.meet_t[x][y] == x

    def down(self, x: int):
        return [y for y in self.elements() if self.leq(y, x)]

    def up(self, x: int):
        return [y for y in self.elements() if self.leq(x, y)]

    def atoms(self):
        return [x for x in self.elements()
                if x != self.zero and all(
                    y in (self.zero, x) for y in self.down(x))]

    def label(self, x: int) -> str:
        return self.labels[x]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)


# ---------------------------------------------------------------------------
# construction


def _transitive_closure(rel, n):
    rel = [set(s) for s in rel]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            extra = set()
            for j in rel[i]:
                extra |= rel[j]
            if not extra <= rel[i]:
                rel[i] |= extra
                changed = True
    return rel


def ol_from_leq(labels, leq_pairs, ortho, *, covers=False,
                max_elements=DEFAULT_MAX_ELEMENTS):
    """Build a FiniteOL from an order relation given as index pairs.

    With covers=True the pairs are read as a Hasse diagram and closed
    transitively.  Raises LatticeError when the relation is not a lattice
    order with global bounds, naming a witness pair.
    """
    n = len(labels)
    if n == 0:
        raise LatticeError("empty element set")
    if n > max_elements:
        raise SizeGuardError("lattice has %d elements, guard is %d"
                             % (n, max_elements))
    up = [set() for _ in range(n)]
    for i, j in leq_pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise LatticeError("relation pair (%d,%d) out of range" % (i, j))
        up[i].add(j)
    for i in range(n):
        up[i].add(i)
    up = _transitive_closure(up, n)
    for i in range(n):
        for j in up[i]:
            if i != j and i in up[j]:
                raise LatticeError("order not antisymmetric at (%d,%d)" % (i, j))
    bottoms = [i for i in range(n) if all(j in up[i] for j in range(n))]
    tops = [i for i in range(n) if all(i in up[j] for j in range(n))]
    if len(bottoms) != 1 or len(tops) != 1:
        raise LatticeError("global bounds missing or not unique")
    zero, one = bottoms[0], tops[0]
    down = [set() for _ in range(n)]
    for i in range(n):
        for j in up[i]:
            down[j].add(i)

    meet_t = []
    join_t = []
    for x in range(n):
        mrow = []
        jrow = []
        for y in range(n):
            lb = down[x] & down[y]
            m = None
            for c in lb:
                if all(d in down[c] for d in lb):
                    m = c
                    break
            if m is None:
                raise LatticeError("pair (%s,%s) has no meet"
                                   % (labels[x], labels[y]))
            ub = up[x] & up[y]
            j = None
            for c in ub:
                if all(d in up[c] for d in ub):
                    j = c
                    break
            if j is None:
                raise LatticeError("pair (%s,%s) has no join"
                                   % (labels[x], labels[y]))
            mrow.append(m)
            jrow.append(j)
        meet_t.append(tuple(mrow))
        join_t.append(tuple(jrow))

    ortho = tuple(ortho)
    if len(ortho) != n or not all(0 <= o < n for o in ortho):
        raise LatticeError("ortho table malformed")
    return FiniteOL(tuple(labels), tuple(meet_t), tuple(join_t), ortho,
                    zero, one)


def ol_from_covers(labels, cover_pairs, ortho, **kw):
    return ol_from_leq(labels, cover_pairs, ortho, covers=True, **kw)


# ---------------------------------------------------------------------------
# axiom checking


@dataclass
class Violation:
    axiom: str
    witness: tuple
    detail: str = ""


@dataclass
class ValidationReport:
    structural: list
    violations: list

    @property
    def ok(self) -> bool:
        return not self.structural and not self.violations


def validate_ortholattice(L: FiniteOL) -> ValidationReport:
    """Check the orthocomplementation axioms; lattice-hood is structural."""
    structural = []
    violations = []
    n = L.n
    for x in range(n):
        if L.ortho(L.ortho(x)) != x:
            structural.append(Violation("ortho_involution", (x,),
                                        "ortho table is not period two"))
    if structural:
        return ValidationReport(structural, violations)
    for x in range(n):
        for y in range(n):
            if L.leq(x, y) and not L.leq(L.ortho(y), L.ortho(x)):
                violations.append(Violation("order_inverting", (x, y)))
    for x in range(n):
        if L.meet(x, L.ortho(x)) != L.zero:
            violations.append(Violation("meet_complement", (x,)))
        if L.join(x, L.ortho(x)) != L.one:
            violations.append(Violation("join_complement", (x,)))
    return ValidationReport(structural, violations)


@dataclass
class OMLFlag:
    is_oml: bool
    witness: tuple | None = None


def check_orthomodular(L: FiniteOL) -> OMLFlag:
    """x <= y must force x v (x' ^ y) = y."""
    for x in L.elements():
        for y in L.elements():
            if L.leq(x, y) and L.join(x, L.meet(L.ortho(x), y)) != y:
                return OMLFlag(False, (x, y))
    return OMLFlag(True)


def commutes(L: FiniteOL, x: int, y: int) -> bool:
    return x == L.join(L.meet(x, y), L.meet(x, L.ortho(y)))


def center(L: FiniteOL) -> frozenset:
    return frozenset(c for c in L.elements()
                     if all(commutes(L, c, x) for x in L.elements()))


def sasaki_product(L: FiniteOL, x: int, y: int) -> int:
    return L.meet(x, L.join(L.ortho(x), y))


def sasaki_hook(L: FiniteOL, x: int, y: int) -> int:
    return L.join(L.ortho(x), L.meet(x, y))


def is_distributive_subset(L: FiniteOL, elems) -> bool:
    elems = list(elems)
    for a in elems:
        for b in elems:
            for c in elems:
                if L.meet(a, L.join(b, c)) != L.join(L.meet(a, b),
                                                     L.meet(a, c)):
                    return False
    return True


def subalgebra_closure(L: FiniteOL, seed) -> frozenset:
    cur = set(seed) | {L.zero, L.one}
    while True:
        new = set()
        for x in cur:
            o = L.ortho(x)
            if o not in cur:
                new.add(o)
        for x in cur:
            for y in cur:
                m, j = L.meet(x, y), L.join(x, y)
                if m not in cur:
                    new.add(m)
                if j not in cur:
                    new.add(j)
        if not new:
            return frozenset(cur)
        cur |= new


def is_subalgebra(L: FiniteOL, elems) -> bool:
    s = set(elems)
    if L.zero not in s or L.one not in s:
        return False
    for x in s:
        if L.ortho(x) not in s:
            return False
        for y in s:
            if L.meet(x, y) not in s or L.join(x, y) not in s:
                return False
    return True


def all_subalgebras(L: FiniteOL):
    """Every subalgebra of L, found by closure-driven search."""
    start = subalgebra_closure(L, ())
    seen = {start}
    queue = [start]
    while queue:
        s = queue.pop()
        for x in L.elements():
            if x not in s:
                t = subalgebra_closure(L, s | {x})
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def blocks(L: FiniteOL):
    """Maximal Boolean subalgebras, via maximal cliques of the commutation
    graph (maximal pairwise-commuting sets are subalgebras in an OML)."""
    n = L.n
    adj = [set() for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x != y and commutes(L, x, y) and commutes(L, y, x):
                adj[x].add(y)
    cliques = []

    def bron_kerbosch(r, p, x):
        if not p and not x:
            cliques.append(frozenset(r))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            bron_kerbosch(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bron_kerbosch(set(), set(range(n)), set())
    result = [c for c in cliques if is_subalgebra(L, c)
              and is_distributive_subset(L, c)]
    # drop any clique properly contained in another (defensive; cliques are
    # maximal already)
    result = [c for c in result
              if not any(c < d for d in result)]
    return sorted(result, key=lambda s: sorted(s))


@dataclass
class FoulisHollandResult:
    precondition_ok: bool
    distributive: bool


def foulis_holland_check(L: FiniteOL, x: int, y: int, z: int) -> FoulisHollandResult:
    """Distributivity of the sublattice generated by x,y,z when one of them
    commutes with the other two."""
    trip = (x, y, z)
    pre = any(all(commutes(L, a, b) and commutes(L, b, a)
                  for b in trip if b != a)
              for a in trip)
    cur = {x, y, z}
    while True:
        new = {L.meet(a, b) for a in cur for b in cur} | \
              {L.join(a, b) for a in cur for b in cur}
        if new <= cur:
            break
        cur |= new
    return FoulisHollandResult(pre, is_distributive_subset(L, cur))


# ---------------------------------------------------------------------------
# builders


def chain2() -> FiniteOL:
    return ol_from_leq(("0", "1"), [(0, 1)], (1, 0))


def boolean_algebra(n_atoms: int, *, max_elements=DEFAULT_MAX_ELEMENTS) -> FiniteOL:
    """Powerset of n_atoms atoms; element index == subset bitmask."""
    n = 1 << n_atoms
    if n > max_elements:
        raise SizeGuardError("Boolean algebra with %d elements" % n)
    full = n - 1
    labels = tuple("{%s}" % ",".join(str(i) for i in range(n_atoms)
                                     if m >> i & 1) for m in range(n))
    meet_t = tuple(tuple(x & y for y in range(n)) for x in range(n))
    join_t = tuple(tuple(x | y for y in range(n)) for x in range(n))
    ortho_t = tuple(full ^ x for x in range(n))
    return FiniteOL(labels, meet_t, join_t, ortho_t, 0, full)


def o6() -> FiniteOL:
    """The hexagon: 0 < a < b < 1 and 0 < b' < a' < 1."""
    labels = ("0", "a", "b", "b'", "a'", "1")
    pairs = [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]
    return ol_from_covers(labels, pairs, (5, 4, 3, 2, 1, 0))


def chain4_identity_ortho() -> FiniteOL:
    """4-chain with the identity as 'ortho'; fails the ortho axioms."""
    return ol_from_covers(("0", "a", "b", "1"), [(0, 1), (1, 2), (2, 3)],
                          (0, 1, 2, 3))


def mo(n: int) -> FiniteOL:
    """Horizontal sum of n four-element Boolean algebras (MO_n)."""
    labels = ["0"]
    for i in range(n):
        labels += ["a%d" % (i + 1), "a%d'" % (i + 1)]
    labels.append("1")
    one = len(labels) - 1
    pairs = [(0, k) for k in range(1, one + 1)] + \
            [(k, one) for k in range(1, one)]
    ortho = [one]
    for i in range(n):
        ortho += [2 * i + 2, 2 * i + 1]
    ortho.append(0)
    return ol_from_leq(labels, pairs, ortho)


def product_ol(a: FiniteOL, b: FiniteOL) -> FiniteOL:
    pairs = [(x, y) for x in a.elements() for y in b.elements()]
    index = {p: i for i, p in enumerate(pairs)}
    labels = tuple("(%s,%s)" % (a.label(x), b.label(y)) for x, y in pairs)
    meet_t = tuple(tuple(index[(a.meet(x1, x2), b.meet(y1, y2))]
                         for x2, y2 in pairs) for x1, y1 in pairs)
    join_t = tuple(tuple(index[(a.join(x1, x2), b.join(y1, y2))]
                         for x2, y2 in pairs) for x1, y1 in pairs)
    ortho_t = tuple(index[(a.ortho(x), b.ortho(y))] for x, y in pairs)
    return FiniteOL(labels, meet_t, join_t, ortho_t,
                    index[(a.zero, b.zero)], index[(a.one, b.one)])


# ---------------------------------------------------------------------------
# Greechie pastings


def greechie_lattice(atom_blocks, *, max_elements=DEFAULT_MAX_ELEMENTS) -> FiniteOL:
    """Paste Boolean blocks given as lists of atom tokens.

    Blocks are glued at 0 and 1; atoms with equal tokens are identified and
    the orthocomplement of an atom within a block is the join of the block's
    remaining atoms.  Raises LatticeError when the pasted order is not a
    lattice.
    """
    atom_blocks = [tuple(str(t) for t in blk) for blk in atom_blocks]
    for blk in atom_blocks:
        if len(blk) < 2 or len(set(blk)) != len(blk):
            raise LatticeError("block %r must list distinct atoms" % (blk,))

    def key_of(bi, subset):
        blk = atom_blocks[bi]
        if len(subset) == 1:
            return ("atom", next(iter(subset)))
        if len(subset) == len(blk) - 1:
            (missing,) = set(blk) - subset
            return ("co", missing)
        return ("mid", bi, frozenset(subset))

    keys = [("zero",), ("one",)]
    seen = {("zero",): 0, ("one",): 1}

    def intern(k):
        if k not in seen:
            seen[k] = len(keys)
            keys.append(k)
        return seen[k]

    pairs = []
    ortho = {0: 1, 1: 0}
    for bi, blk in enumerate(atom_blocks):
        subsets = []
        for r in range(1, len(blk)):
            subsets += [frozenset(c) for c in combinations(blk, r)]
        ids = {s: intern(key_of(bi, s)) for s in subsets}
        for s in subsets:
            pairs.append((0, ids[s]))
            pairs.append((ids[s], 1))
            comp = frozenset(blk) - s
            ortho[ids[s]] = ids[comp] if comp in ids else 1
        for s in subsets:
            for t in subsets:
                if s < t:
                    pairs.append((ids[s], ids[t]))

    labels = []
    for k in keys:
        if k == ("zero",):
            labels.append("0")
        elif k == ("one",):
            labels.append("1")
        elif k[0] == "atom":
            labels.append(k[1])
        elif k[0] == "co":
            labels.append(k[1] + "'")
        else:
            labels.append("|".join(sorted(k[2])) + "@%d" % k[1])
    L = ol_from_leq(labels, pairs, [ortho[i] for i in range(len(keys))],
                    max_elements=max_elements)
    return L


def enumerate_greechie_diagrams(max_blocks: int):
    """Deterministic stream of 3-atom-block diagrams, by block count then
    lexicographic extension order.  Atoms are integers assigned in order of
    first use; a new block shares at most one existing atom."""
    def extensions(blocks, natoms):
        opts = [(shared, natoms, natoms + 1) for shared in range(natoms)]
        opts.append((natoms, natoms + 1, natoms + 2))
        return opts

    def gen(k):
        if k == 1:
            yield [(0, 1, 2)]
            return
        for shorter in gen(k - 1):
            natoms = 1 + max(a for blk in shorter for a in blk)
            for blk in extensions(shorter, natoms):
                yield shorter + [blk]

    for k in range(1, max_blocks + 1):
        yield from gen(k)
