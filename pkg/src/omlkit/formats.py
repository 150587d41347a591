"""Readers and writers for the on-disk exchange formats.

All structures move through plain JSON objects (and one line-oriented text
format for atom-block diagrams); loaders raise FormatError on malformed
input so the CLI can map them to its parse-error exit code.
"""

from __future__ import annotations

import json
from pathlib import Path

from . import lattice as lat
from .gq import format_gq, parse_gq
from .lattice import FiniteOL
from .quantifiers import UnaryMap
from .cylindric import CylindricStructure
from .frames import Orthoframe
from .matrixalg import StarAlgebra, build_algebra
from .subspaces import Subspace, TensorLayout


class FormatError(ValueError):
    pass


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise FormatError("missing field %r" % key)
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise FormatError("field %r has the wrong type" % key)
    return v


# ---------------------------------------------------------------------------
# lattices


def load_lattice(obj, max_elements=lat.DEFAULT_MAX_ELEMENTS) -> FiniteOL:
    """{"elements": [...], "covers" or "leq": [[i,j]...], "ortho": [...]}"""
    labels = tuple(str(x) for x in _need(obj, "elements", list))
    ortho = _need(obj, "ortho", list)
    n = len(labels)
    if sorted(ortho) != list(range(n)):
        raise FormatError("ortho must be a permutation of the indices")
    if "covers" in obj:
        pairs, covers = obj["covers"], True
    elif "leq" in obj:
        pairs, covers = obj["leq"], False
    else:
        raise FormatError("need either 'covers' or 'leq'")
    try:
        pairs = [(int(i), int(j)) for i, j in pairs]
    except (TypeError, ValueError):
        raise FormatError("order pairs must be [i, j] index pairs")
    if any(not (0 <= i < n and 0 <= j < n) for i, j in pairs):
        raise FormatError("order pair index out of range")
    try:
        return lat.ol_from_leq(labels, pairs, tuple(ortho), covers=covers,
                               max_elements=max_elements)
    except lat.LatticeError as exc:
        raise FormatError(str(exc))


def _cover_pairs(L: FiniteOL):
    out = []
    for x in L.elements():
        for y in L.elements():
            if x == y or not L.leq(x, y):
                continue
            if any(L.leq(x, z) and L.leq(z, y) and z not in (x, y)
                   for z in L.elements()):
                continue
            out.append([x, y])
    return out


def dump_lattice(L: FiniteOL) -> dict:
    return {
        "elements": list(L.labels),
        "covers": _cover_pairs(L),
        "ortho": list(L.ortho_t),
    }


def parse_greechie(text: str):
    """One block per line, atoms as whitespace-separated tokens; blank
    lines and #-comments ignored."""
    blocks = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        atoms = tuple(line.split())
        if len(set(atoms)) != len(atoms):
            raise FormatError("repeated atom in block %r" % (atoms,))
        blocks.append(atoms)
    if not blocks:
        raise FormatError("no blocks given")
    return blocks


def greechie_to_lattice(text: str, max_elements=lat.DEFAULT_MAX_ELEMENTS
                        ) -> FiniteOL:
    try:
        return lat.greechie_lattice(parse_greechie(text),
                                    max_elements=max_elements)
    except lat.LatticeError as exc:
        raise FormatError(str(exc))


# ---------------------------------------------------------------------------
# quantifiers and cylindric structures


def _resolve_lattice(obj, base_dir, max_elements):
    sub = _need(obj, "lattice")
    if isinstance(sub, str):
        path = Path(base_dir or ".") / sub
        try:
            sub = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise FormatError("cannot read lattice file %s: %s" % (path, exc))
    return load_lattice(sub, max_elements)


def _load_map(L: FiniteOL, data) -> UnaryMap:
    if not isinstance(data, list) or len(data) != L.n:
        raise FormatError("map must list one image per element")
    m = tuple(int(x) for x in data)
    if any(not 0 <= x < L.n for x in m):
        raise FormatError("map image out of range")
    return UnaryMap(L, m)


def load_quantifier(obj, base_dir=None,
                    max_elements=lat.DEFAULT_MAX_ELEMENTS):
    """{"lattice": <inline or filename>, "map": [...]} -> (L, map)"""
    L = _resolve_lattice(obj, base_dir, max_elements)
    return L, _load_map(L, _need(obj, "map", list))


def dump_quantifier(L: FiniteOL, e: UnaryMap) -> dict:
    return {"lattice": dump_lattice(L), "map": list(e.map)}


def load_cylindric(obj, base_dir=None,
                   max_elements=lat.DEFAULT_MAX_ELEMENTS
                   ) -> CylindricStructure:
    """Adds "cylindrifications": {"i": map} and "diagonals": {"i,j": e}."""
    L = _resolve_lattice(obj, base_dir, max_elements)
    cyl = {}
    for key, data in _need(obj, "cylindrifications", dict).items():
        cyl[int(key)] = _load_map(L, data)
    dims = tuple(sorted(cyl))
    diag = {}
    for key, val in _need(obj, "diagonals", dict).items():
        try:
            i, j = (int(t) for t in key.split(","))
        except ValueError:
            raise FormatError("diagonal key %r is not 'i,j'" % key)
        if not 0 <= int(val) < L.n:
            raise FormatError("diagonal element out of range")
        diag[(i, j)] = int(val)
    for i in dims:
        for j in dims:
            if (i, j) not in diag:
                raise FormatError("missing diagonal %d,%d" % (i, j))
    return CylindricStructure(L, dims, cyl, diag)


def dump_cylindric(C: CylindricStructure) -> dict:
    return {
        "lattice": dump_lattice(C.base),
        "cylindrifications": {str(i): list(m.map)
                              for i, m in C.cylindrifications.items()},
        "diagonals": {"%d,%d" % ij: e for ij, e in C.diagonals.items()},
    }


# ---------------------------------------------------------------------------
# subspaces


def parse_scalar(text: str):
    try:
        return parse_gq(text)
    except ValueError as exc:
        raise FormatError(str(exc))


def load_subspace(obj):
    """{"factors": [d1,...], "basis": [[scalar,...],...]} with row-major
    coordinates; returns (layout, subspace)."""
    factors = _need(obj, "factors", list)
    try:
        layout = TensorLayout(tuple(int(d) for d in factors))
    except ValueError as exc:
        raise FormatError(str(exc))
    rows = _need(obj, "basis", list)
    vecs = []
    for row in rows:
        if not isinstance(row, list) or len(row) != layout.dim:
            raise FormatError("basis row has wrong length")
        vecs.append([parse_scalar(str(x)) for x in row])
    return layout, Subspace.from_vectors(layout.dim, vecs)


def dump_subspace(layout: TensorLayout, s: Subspace) -> dict:
    return {
        "factors": list(layout.factor_dims),
        "basis": [[format_gq(x) for x in row] for row in s.basis],
    }


# ---------------------------------------------------------------------------
# frames


def _pairs_to_rows(pairs, n, what):
    rows = [0] * n
    for pair in pairs:
        try:
            i, j = (int(t) for t in pair)
        except (TypeError, ValueError):
            raise FormatError("%s entries must be [i, j] pairs" % what)
        if not (0 <= i < n and 0 <= j < n):
            raise FormatError("%s pair out of range" % what)
        rows[i] |= 1 << j
    return tuple(rows)


def load_frame(obj):
    """{"points", "perp", "R", "D"} -> (frame, relations, diagonals);
    relations and diagonals are empty dicts when absent."""
    points = tuple(str(p) for p in _need(obj, "points", list))
    n = len(points)
    F = Orthoframe(points, _pairs_to_rows(_need(obj, "perp", list), n,
                                          "perp"))
    rels = {}
    for key, pairs in obj.get("R", {}).items():
        rels[int(key)] = _pairs_to_rows(pairs, n, "R[%s]" % key)
    diags = {}
    for key, members in obj.get("D", {}).items():
        try:
            i, j = (int(t) for t in key.split(","))
        except ValueError:
            raise FormatError("diagonal key %r is not 'i,j'" % key)
        m = 0
        for p in members:
            if not 0 <= int(p) < n:
                raise FormatError("diagonal point out of range")
            m |= 1 << int(p)
        diags[(i, j)] = m
    return F, rels, diags


def dump_frame(F: Orthoframe, rels=None, diags=None) -> dict:
    def row_pairs(rows):
        return [[i, j] for i in range(F.n) for j in range(F.n)
                if rows[i] >> j & 1]

    out = {"points": list(F.points), "perp": row_pairs(F.perp)}
    if rels:
        out["R"] = {str(i): row_pairs(r) for i, r in rels.items()}
    if diags:
        out["D"] = {"%d,%d" % ij: [p for p in range(F.n) if m >> p & 1]
                    for ij, m in diags.items()}
    return out


# ---------------------------------------------------------------------------
# matrix algebras


def parse_matrix(rows, n: int):
    if not isinstance(rows, list) or len(rows) != n:
        raise FormatError("matrix must have %d rows" % n)
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != n:
            raise FormatError("matrix row has wrong length")
        out.append(tuple(parse_scalar(str(x)) for x in row))
    return tuple(out)


def format_matrix(m) -> list:
    return [[format_gq(x) for x in row] for row in m]


def load_algebra(obj) -> StarAlgebra:
    """{"dim": d, "generators": [matrix, ...]}"""
    n = int(_need(obj, "dim"))
    if n < 1 or n * n > 256 * 256:
        raise FormatError("dimension out of range")
    gens = [parse_matrix(g, n) for g in _need(obj, "generators", list)]
    return build_algebra(n, gens)


def dump_algebra(A: StarAlgebra) -> dict:
    return {"dim": A.n, "generators": [format_matrix(m) for m in A.basis]}
