"""The Morse function (chi, f), blankets, the cover by blanket pieces and its nerve."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import product
from typing import Iterable, NamedTuple, Optional

from .complex import (ComplexError, CubicalComplex, SimplicialComplex, _restrict,
                      connected_components, display_label, full_subcomplex,
                      link_label, mask_of)
from .core import (Character, EventualInjection, RayPoint, chi_eval, compose, deficiency_f,
                   identity, standard_form, transposition_tau)
from .homology import (IntegerMatrix, acyclicity_bound, reduced_homology,
                       simplicial_chain_complex)


class BoundaryVertexError(ComplexError):
    pass


class WitnessError(AssertionError):
    """The sphere witness failed a check that must always hold."""


# -- heights and links --------------------------------------------------------

def height(chi: Optional[Character], v: EventualInjection) -> tuple:
    if chi is None:
        return (deficiency_f(v),)
    return (chi_eval(chi, v), deficiency_f(v))


def _step(chi, i: int, d: int) -> tuple:
    """Height change (dchi, df) of moving ray i's translation by d."""
    return ((chi.coeffs[i - 1] * d,) if chi is not None else ()) + (d,)


def directed_cells(X: CubicalComplex, chi, v, ascending: bool) -> tuple:
    """Cells of the (chi, f)-ascending or descending star of v, and truncation flag.

    Only cubes whose edges at v all point the right way can have v as their
    extreme corner, so those are the candidates; each is then checked against
    the corner definition.  The flag is True when some candidate cube of X
    whose corners pass the region predicates is missing from X.
    """
    if isinstance(v, int):
        v = X.vertices[v]
    zero = (0,) * (1 if chi is None else 2)
    ok = lambda d: (d > zero) if ascending else (d < zero)
    rays = range(1, X.n + 1)
    downs = [i for i in rays if ok(_step(chi, i, -1))]
    ups = [j for j in rays if ok(_step(chi, j, 1))]
    pred = X.spec.target_ok if X.spec is not None else (lambda m: True)
    h0 = height(chi, v)
    m0 = v.translations
    faces, truncated = [], False
    for base, assign, up in X.x_cubes_at(v, downs, ups):
        if not assign and not up:
            continue
        moves = [(i, -1) for i, _ in assign] + [(j, 1) for j in up]
        corners = [m0]
        for i, d in moves:
            corners = corners + [c[:i - 1] + (c[i - 1] + d,) + c[i:] for c in corners]
        if not all(pred(c) for c in corners):
            continue
        hs = [_height_of(chi, c) for c in corners[1:]]
        if not all((h > h0) if ascending else (h < h0) for h in hs):
            continue
        b = X.index.get(base)
        mask = mask_of(tuple(i for i, _ in assign) + up)
        if b is None or not X.has_cube(b, mask):
            truncated = True
            continue
        faces.append(tuple(link_label(assign, up)))
    return faces, truncated


def _height_of(chi, m: tuple) -> tuple:
    f = sum(m)
    return (f,) if chi is None else (sum(a * b for a, b in zip(chi.coeffs, m)), f)


def _directed_link(X: CubicalComplex, chi, v, ascending: bool, require_interior: bool):
    if isinstance(v, int):
        v = X.vertices[v]
    if chi is not None:
        chi.require_nonzero()
    X.vertex_id(v)
    faces, truncated = directed_cells(X, chi, v, ascending)
    if truncated and require_interior:
        raise BoundaryVertexError(f"{v} is on the window boundary of the region")
    return SimplicialComplex.from_faces(faces)


def ascending_link(X: CubicalComplex, chi: Optional[Character], v,
                   require_interior: bool = True) -> SimplicialComplex:
    """Link of v in the cells on which v is the minimum of (chi, f).

    ``chi=None`` uses f alone.
    """
    return _directed_link(X, chi, v, True, require_interior)


def descending_link(X: CubicalComplex, chi: Optional[Character], v,
                    require_interior: bool = True) -> SimplicialComplex:
    return _directed_link(X, chi, v, False, require_interior)


def is_join(L: SimplicialComplex, left: Iterable, right: Iterable) -> bool:
    """Whether L is the join of its full subcomplexes on two complementary label sets."""
    left, right = set(left), set(right)
    if left & right or (left | right) != set(L.vertices):
        return False
    A = L.induced(left).labelled_faces() + [()]
    B = L.induced(right).labelled_faces() + [()]
    joined = [a + b for a in A for b in B if a or b]
    return SimplicialComplex.from_faces(joined, close=False, extra_vertices=L.vertices) == L


def superlevel_region(X: CubicalComplex, chi: Character, t: Optional[int]) -> CubicalComplex:
    """Full subcomplex on chi >= t; ``t=None`` keeps everything."""
    chi.require_nonzero()
    spec = X.spec
    if t is None:
        return _restrict(X, X.vertices, spec)
    if spec is not None and spec.chi is None:
        spec = dataclasses.replace(spec, chi=chi, threshold=t)
    return full_subcomplex(X, lambda v: chi_eval(chi, v) >= t, spec)


# -- blankets ------------------------------------------------------------------

@dataclass(frozen=True)
class Blanket:
    K: tuple
    index: int
    vertices: frozenset

    def __contains__(self, v):
        return v in self.vertices

    @property
    def least(self) -> EventualInjection:
        return min(self.vertices)


def sublevel_vertices(X: CubicalComplex, K: Iterable[int]) -> list:
    K = tuple(K)
    return [v for v in X.vertices if all(v.translations[i - 1] <= 0 for i in K)]


def blanket_components(X: CubicalComplex, K: Iterable[int]) -> list:
    """Connected components of the full subcomplex on {chi_i <= 0 for i in K}."""
    K = tuple(sorted(set(K)))
    sub = _restrict(X, sublevel_vertices(X, K), X.spec)
    comps = connected_components(sub)
    return [Blanket(K, a, frozenset(sub.vertices[k] for k in comp))
            for a, comp in enumerate(comps)]


class RayGerm(NamedTuple):
    ray: int
    translation: int
    images: tuple

    @property
    def is_permutation(self) -> bool:
        # chi_i = 0 and every stored value stays on ray i
        return self.translation == 0 and all(p[0] == self.ray for p in self.images)

    def __str__(self):
        exc = ";".join(f"({self.ray},{x + 1})->{RayPoint(*p)}" for x, p in enumerate(self.images))
        return f"ray={self.ray}; m={self.translation}; exc={exc}"


def ray_germ_invariant(v: EventualInjection, i: int) -> RayGerm:
    """Canonical restriction of v to the ray {i} x N.

    Unchanged along edges labelled t_j for j != i.
    """
    if not 1 <= i <= v.n:
        raise IndexError(f"ray index {i} not in [1..{v.n}]")
    return RayGerm(i, v.translations[i - 1], tuple(v.images[i - 1]))


# -- cover and nerve -----------------------------------------------------------

@dataclass(frozen=True)
class CoverPiece:
    type: int
    alpha: int
    vertices: frozenset
    blanket: Blanket

    @property
    def label(self) -> tuple:
        return (self.type, self.alpha)

    def __contains__(self, v):
        return v in self.vertices

    def __str__(self):
        return f"Y{self.type}^{self.alpha}"


def piece_types(chi: Character) -> list:
    """Rays whose coefficient is below the maximum; [1..m] in ascending standard form."""
    std = standard_form(chi)
    return [i + 1 for i, a in enumerate(std.coeffs) if a < 0]


def cover_pieces(region: CubicalComplex, chi: Character,
                 ambient: Optional[CubicalComplex] = None) -> list:
    """The pieces Y_i^alpha = (i-blanket) meet region for the rays i of piece_types.

    Blankets are components of {chi_i <= 0} in ``ambient`` (default: region).
    Within each type, alpha = 1, 2, ... follows the least vertex of the piece.
    """
    chi.require_nonzero()
    ambient = region if ambient is None else ambient
    verts = set(region.vertices)
    pieces = []
    for i in piece_types(chi):
        found = []
        for z in blanket_components(ambient, (i,)):
            y = z.vertices & verts
            if y:
                found.append((min(y), y, z))
        found.sort(key=lambda t: t[0])
        for a, (_, y, z) in enumerate(found, start=1):
            pieces.append(CoverPiece(i, a, frozenset(y), z))
    return pieces


def piece_complex(region: CubicalComplex, vertices) -> CubicalComplex:
    vertices = set(vertices)
    return _restrict(region, [v for v in region.vertices if v in vertices], region.spec)


@dataclass
class Nerve:
    complex: SimplicialComplex
    pieces: list
    types: dict

    def vertex_of(self, piece: CoverPiece) -> int:
        return self.complex.vertices.index(piece.label)

    def piece(self, label) -> CoverPiece:
        for p in self.pieces:
            if p.label == tuple(label):
                return p
        raise KeyError(label)

    def same_type_adjacent(self) -> bool:
        for a, b in self.complex.simplices(1):
            if self.complex.vertices[a][0] == self.complex.vertices[b][0]:
                return True
        return False


def nerve(pieces: list, region: Optional[CubicalComplex] = None) -> Nerve:
    """Simplex on a set of pieces iff their vertex sets share a point."""
    if region is not None:
        covered = set().union(*(p.vertices for p in pieces)) if pieces else set()
        if covered != set(region.vertices):
            missing = len(set(region.vertices) - covered)
            raise ComplexError(f"pieces do not cover the region ({missing} vertices missed)")
    holders = {}
    for p in pieces:
        for v in p.vertices:
            holders.setdefault(v, []).append(p.label)
    facets = {tuple(sorted(ls)) for ls in holders.values()}
    L = SimplicialComplex.from_faces(facets, extra_vertices=[p.label for p in pieces])
    return Nerve(L, list(pieces), {p.label: p.type for p in pieces})


def intersection_of(pieces: Iterable) -> frozenset:
    pieces = list(pieces)
    out = set(pieces[0].vertices)
    for p in pieces[1:]:
        out &= p.vertices
    return frozenset(out)


# -- hypothesis checks ------------------------------------------------------------

@dataclass
class IntersectionRecord:
    labels: tuple
    r: int
    size: int
    required: int
    bound: int
    betti: list
    torsion: list

    @property
    def passed(self) -> bool:
        return self.bound >= self.required

    def as_dict(self) -> dict:
        return {"pieces": [display_label(l) for l in self.labels], "r": self.r,
                "size": self.size, "required_degree": self.required,
                "acyclic_through": self.bound, "betti": self.betti,
                "torsion": self.torsion, "status": "pass" if self.passed else "fail"}


def check_intersections(pieces: list, region: CubicalComplex, max_r: int, required) -> list:
    """Reduced homology of every nonempty intersection of r <= max_r pieces.

    ``required(r)`` is the degree through which an r-fold intersection must be acyclic.
    """
    records = []
    N = nerve(pieces)
    by_label = {p.label: p for p in pieces}
    for r in range(1, max_r + 1):
        for face in N.complex.simplices(r - 1):
            labels = tuple(N.complex.vertices[k] for k in face)
            verts = intersection_of(by_label[l] for l in labels)
            need = required(r)
            if need < 0:
                # (-1)-acyclic means nonempty, which nerve faces are by construction
                records.append(IntersectionRecord(labels, r, len(verts), need,
                                                  -1 if verts else -2, [], []))
                continue
            sub = piece_complex(region, verts)
            H = reduced_homology(sub, max_degree=need)
            records.append(IntersectionRecord(labels, r, len(verts), need,
                                              acyclicity_bound(H, cap=need),
                                              H.betti, H.torsion))
    return records


def strong_nerve_hypotheses(pieces: list, up_to: int, region: CubicalComplex) -> dict:
    """Every nonempty r-fold intersection (r <= up_to) acyclic through degree up_to - r."""
    records = check_intersections(pieces, region, up_to, lambda r: up_to - r)
    failures = [r for r in records if not r.passed]
    return {"up_to": up_to, "checked": len(records),
            "by_r": {r: sum(1 for x in records if x.r == r) for r in range(1, up_to + 1)},
            "passed": not failures, "failures": [f.as_dict() for f in failures],
            "records": records}


# -- the sphere witness -------------------------------------------------------------

def tau_product(n: int, rays: Iterable[int]) -> EventualInjection:
    out = identity(n)
    for i in rays:
        out = compose(out, transposition_tau(i, n))
    return out


def piece_containing(pieces: list, v: EventualInjection, type_: int) -> Optional[CoverPiece]:
    for p in pieces:
        if p.type == type_ and v in p.vertices:
            return p
    return None


@dataclass
class SphereWitness:
    types: list
    elements: dict
    pairs: dict
    germ_certificates: dict
    intersections: dict
    facets: list
    cycle_is_nontrivial: bool
    nerve_betti: list

    def as_dict(self) -> dict:
        return {
            "types": self.types,
            "elements": {"".join(map(str, k)) or "id": str(v) for k, v in self.elements.items()},
            "pairs": {str(i): [display_label(a), display_label(b)] for i, (a, b) in self.pairs.items()},
            "germs": {str(i): [str(a), str(b)] for i, (a, b) in self.germ_certificates.items()},
            "intersections": {"".join(map(str, k)): n for k, n in self.intersections.items()},
            "sphere_facets": [[display_label(l) for l in f] for f in self.facets],
            "cycle_nontrivial": self.cycle_is_nontrivial,
            "nerve_betti": self.nerve_betti,
        }


def sphere_witness(n: int, chi: Character, pieces: list, N: Optional[Nerve] = None) -> SphereWitness:
    """The embedded (m-1)-sphere of pieces around id and the transpositions tau_i."""
    chi.require_nonzero()
    if chi.n != n:
        raise ComplexError(f"character on {chi.n} rays for n={n}")
    types = piece_types(chi)
    N = nerve(pieces) if N is None else N
    pairs, germs = {}, {}
    e = identity(n)
    for i in types:
        tau = transposition_tau(i, n)
        a, b = piece_containing(pieces, e, i), piece_containing(pieces, tau, i)
        if a is None or b is None:
            raise WitnessError(f"no type-{i} piece contains {'id' if a is None else 'tau'}")
        ga, gb = ray_germ_invariant(e, i), ray_germ_invariant(tau, i)
        if (a.blanket == b.blanket) or ga == gb:
            raise WitnessError(f"type {i}: blanket components and germ certificate disagree "
                               f"(same blanket={a.blanket == b.blanket}, same germ={ga == gb})")
        pairs[i] = (a.label, b.label)
        germs[i] = (ga, gb)
    elements, inter, facets = {}, {}, []
    for eps in product((1, 2), repeat=len(types)):
        chosen = [i for i, x in zip(types, eps) if x == 2]
        g = tau_product(n, chosen)
        labels = tuple(pairs[i][x - 1] for i, x in zip(types, eps))
        common = intersection_of(N.piece(l) for l in labels)
        if g not in common:
            raise WitnessError(f"{g} missing from the intersection {labels}")
        elements[eps] = g
        inter[eps] = len(common)
        facets.append(labels)
    nontrivial, betti = _sphere_class_nontrivial(N, types, pairs)
    return SphereWitness(types, elements, pairs, germs, inter, facets, nontrivial, betti)


def _sphere_class_nontrivial(N: Nerve, types, pairs):
    """The signed cross-polytope chain is a nonzero cycle in the top degree of the nerve."""
    L = N.complex
    m = len(types)
    C = simplicial_chain_complex(L)
    top = m - 1
    idx = {s: j for j, s in enumerate(C.bases.get(top, []))}
    chain = {}
    for eps in product((1, 2), repeat=m):
        face = tuple(sorted(L.vertices.index(pairs[i][x - 1]) for i, x in zip(types, eps)))
        sign = 1
        for x in eps:
            sign = -sign if x == 1 else sign
        if face not in idx:
            return False, []
        chain[(idx[face], 0)] = sign
    vec = IntegerMatrix(len(idx), 1, chain)
    is_cycle = (C.boundary(top) @ vec).is_zero() if top > 0 else sum(chain.values()) == 0
    no_higher = len(C.bases.get(top + 1, [])) == 0
    H = reduced_homology(L)
    return bool(is_cycle and no_higher and not vec.is_zero()), H.betti
