"""Finite truncations of the cube complex X_n, links and local convexity tests."""

from __future__ import annotations

import dataclasses
from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Callable, Iterable, Optional

from .core import Character, EventualInjection, chi_eval, deficiency_f, identity


class ComplexError(ValueError):
    pass


def mask_of(dirs: Iterable[int]) -> int:
    m = 0
    for i in dirs:
        m |= 1 << (i - 1)
    return m


def dirs_of(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


WINDOW_MODES = ("codomain", "support")


@dataclass(frozen=True)
class RegionSpec:
    """Predicates cutting a finite region out of X_n.

    ``window`` is an int or one bound per ray.  In ``codomain`` mode a vertex
    is admitted iff ``B_i + m_i <= W_i`` on every ray, i.e. everything below
    t_1^W_1 ... t_n^W_n; that set is down-closed and combinatorially convex.
    ``support`` mode bounds ``B_i <= W_i`` and ``|m_i| <= translation_bound``.
    """

    n: int
    window: object = 2
    f_bound: Optional[int] = None
    chi: Optional[Character] = None
    threshold: int = 0
    translation_bound: Optional[int] = None
    window_mode: str = "codomain"
    f_floor: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ComplexError("n must be positive")
        w = self.window
        w = (w,) * self.n if isinstance(w, int) else tuple(int(a) for a in w)
        if len(w) != self.n:
            raise ComplexError(f"window has {len(w)} entries for n={self.n}")
        if min(w) < 2:
            raise ComplexError(f"window W={self.window} < 2")
        object.__setattr__(self, "window", w if len(set(w)) > 1 else w[0])
        object.__setattr__(self, "_bounds", w)
        if self.window_mode not in WINDOW_MODES:
            raise ComplexError(f"unknown window mode {self.window_mode!r}")
        if self.f_bound is None:
            object.__setattr__(self, "f_bound", 3 * self.n - 3)
        if self.translation_bound is None and self.window_mode == "support":
            object.__setattr__(self, "translation_bound", max(w))
        if self.f_bound < 0:
            raise ComplexError(f"f bound {self.f_bound} < 0")
        if self.chi is not None and self.chi.n != self.n:
            raise ComplexError(f"character on {self.chi.n} rays for n={self.n}")

    @property
    def bounds(self) -> tuple:
        return self._bounds

    def in_window(self, v: EventualInjection) -> bool:
        t = self.translation_bound
        if t is not None and not all(-t <= a <= t for a in v.translations):
            return False
        if self.window_mode == "codomain":
            return all(len(r) + a <= w for r, a, w in zip(v.images, v.translations, self._bounds))
        return all(len(r) <= w for r, w in zip(v.images, self._bounds))

    def target_ok(self, m: tuple) -> bool:
        """The non-window predicates, which depend only on translations."""
        f = sum(m)
        if f > self.f_bound or f < self.f_floor:
            return False
        if self.chi is not None:
            return sum(a * b for a, b in zip(self.chi.coeffs, m)) >= self.threshold
        return True

    def admits(self, v: EventualInjection) -> bool:
        return self.in_window(v) and self.target_ok(v.translations)

    def with_window(self, window) -> "RegionSpec":
        return dataclasses.replace(self, window=window)

    def describe(self) -> dict:
        return {"n": self.n, "window": self.window, "window_mode": self.window_mode,
                "f_bound": self.f_bound, "f_floor": self.f_floor,
                "chi": None if self.chi is None else list(self.chi.coeffs),
                "threshold": self.threshold, "translation_bound": self.translation_bound}


@dataclass(frozen=True, order=True)
class Cube:
    base: int
    mask: int

    @property
    def dirs(self) -> tuple:
        return dirs_of(self.mask)

    @property
    def dim(self) -> int:
        return bin(self.mask).count("1")


class CubicalComplex:
    """Face-closed set of cubes of X_n, keyed by (base id, direction mask).

    Vertex ids are ranks in the canonical order of the encodings, so two
    complexes on the same vertex set number their vertices identically.
    """

    def __init__(self, n: int, vertices: Iterable[EventualInjection], cubes: Iterable = (),
                 spec: Optional[RegionSpec] = None, *, full: bool = False, check: bool = True):
        self.n = n
        self.spec = spec
        self.vertices = tuple(sorted(set(vertices)))
        for v in self.vertices:
            if v.n != n:
                raise ComplexError(f"vertex {v} has n={v.n}, expected {n}")
        self.index = {v: k for k, v in enumerate(self.vertices)}
        self.up = [tuple(self.index.get(v.up(i), -1) for i in range(1, n + 1))
                   for v in self.vertices]
        if full:
            self._fill_cubes()
        else:
            self.cube_set = set()
            for c in cubes:
                base, mask = (c.base, c.mask) if isinstance(c, Cube) else c
                if mask:
                    self.cube_set.add((base, mask))
            if check:
                self.validate()
        self._by_dim = None

    # -- construction ----------------------------------------------------

    def _fill_cubes(self):
        """All cubes whose vertices lie in the vertex set (full subcomplex)."""
        n, up = self.n, self.up
        cubes = set()
        layer = []
        for b, row in enumerate(up):
            for i in range(n):
                if row[i] >= 0:
                    layer.append((b, 1 << i))
        cubes.update(layer)
        while layer:
            nxt = set()
            for b, mask in layer:
                low = mask & -mask
                for i in range(low.bit_length() - 1):
                    bit = 1 << i
                    # faces: the cube (b, mask) with i adjoined needs (b,mask) and (t_i b, mask)
                    t = up[b][i]
                    if t >= 0 and (t, mask) in cubes:
                        nxt.add((b, mask | bit))
            layer = sorted(nxt)
            cubes.update(layer)
        self.cube_set = cubes

    def corners(self, base: int, mask: int) -> list:
        out = [base]
        for i in dirs_of(mask):
            out = out + [self.up[c][i - 1] for c in out]
        return out

    def validate(self):
        for base, mask in self.cube_set:
            if not 0 <= base < len(self.vertices):
                raise ComplexError(f"cube base {base} out of range")
            for c in self.corners(base, mask):
                if c < 0:
                    raise ComplexError(f"cube ({base},{mask:b}) has a corner outside the complex")
            for i in dirs_of(mask):
                rest = mask & ~(1 << (i - 1))
                if rest and ((base, rest) not in self.cube_set
                             or (self.up[base][i - 1], rest) not in self.cube_set):
                    raise ComplexError(f"cube ({base},{mask:b}) is missing a face")

    # -- queries ---------------------------------------------------------

    def cubes(self, dim: Optional[int] = None) -> list:
        if self._by_dim is None:
            by = {0: [(k, 0) for k in range(len(self.vertices))]}
            for c in self.cube_set:
                by.setdefault(bin(c[1]).count("1"), []).append(c)
            for d in by:
                by[d].sort()
            self._by_dim = by
        if dim is None:
            return [c for d in sorted(self._by_dim) for c in self._by_dim[d]]
        return self._by_dim.get(dim, [])

    @property
    def dimension(self) -> int:
        self.cubes(0)
        return max(d for d, cs in self._by_dim.items() if cs) if self.vertices else -1

    def counts(self) -> list:
        self.cubes(0)
        if not self.vertices:
            return []
        return [len(self._by_dim.get(d, [])) for d in range(self.dimension + 1)]

    def has_cube(self, base: int, mask: int) -> bool:
        if mask == 0:
            return 0 <= base < len(self.vertices)
        return (base, mask) in self.cube_set

    def vertex_id(self, v) -> int:
        try:
            return self.index[v]
        except KeyError:
            raise ComplexError(f"unknown vertex {v}") from None

    def __contains__(self, v):
        return v in self.index

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        """(lower id, upper id, label i) for every edge."""
        for b, mask in self.cubes(1):
            i = dirs_of(mask)[0]
            yield b, self.up[b][i - 1], i

    # -- local structure -------------------------------------------------

    def x_cubes_at(self, v: EventualInjection, downs=None, ups=None):
        """Every cube of the infinite complex X containing v.

        Yields (base, down assignment, up dirs): v sits at corner I = down dirs.
        The down assignment is a tuple of (i, p) with distinct i and points p.
        ``downs``/``ups`` restrict which rays may be used in each role.
        """
        n = self.n
        missing = v.missing_points()
        dpool = range(1, n + 1) if downs is None else sorted(downs)
        upool = set(range(1, n + 1)) if ups is None else set(ups)
        for k in range(min(len(dpool), len(missing)) + 1):
            for ddirs in combinations(dpool, k):
                rest = [j for j in range(1, n + 1) if j not in ddirs and j in upool]
                for pts in permutations(missing, k):
                    base = v
                    for i, p in zip(ddirs, pts):
                        base = base.down(i, p)
                    assign = tuple(zip(ddirs, pts))
                    for r in range(len(rest) + 1):
                        for ups in combinations(rest, r):
                            yield base, assign, ups

    def cubes_containing_vertex(self, v) -> list:
        """(Cube, I) for every cube of this complex having v as a vertex."""
        if isinstance(v, int):
            v = self.vertices[v]
        self.vertex_id(v)
        out = []
        for base, assign, ups in self.x_cubes_at(v):
            b = self.index.get(base)
            if b is None:
                continue
            ddirs = tuple(i for i, _ in assign)
            mask = mask_of(ddirs + ups)
            if self.has_cube(b, mask):
                out.append((Cube(b, mask), ddirs))
        return out

    def _maximal_x_cubes(self, v, target_ok=None):
        """Maximal cubes of X at v (optionally within translation predicate)."""
        n = self.n
        m0 = v.translations
        missing = v.missing_points()
        for k in range(min(n, len(missing)) + 1):
            for ddirs in combinations(range(1, n + 1), k):
                rest = [j for j in range(1, n + 1) if j not in ddirs]
                ups_family = [tuple(rest)] if target_ok is None else \
                    _maximal_ok_ups(m0, ddirs, rest, target_ok)
                if not ups_family:
                    continue
                for pts in permutations(missing, k):
                    base = v
                    for i, p in zip(ddirs, pts):
                        base = base.down(i, p)
                    for ups in ups_family:
                        yield base, ddirs, ups

    def is_interior(self, v, relative: bool = False) -> bool:
        """Whether the whole X-link of v survives in this complex.

        With ``relative=True`` only cubes of X whose corners pass the region's
        non-window predicates (f bound, character threshold) are required, so
        the link of v here equals its link in the untruncated region.
        """
        if isinstance(v, int):
            v = self.vertices[v]
        if v not in self.index:
            return False
        pred = self.spec.target_ok if (relative and self.spec is not None) else None
        for base, ddirs, ups in self._maximal_x_cubes(v, pred):
            b = self.index.get(base)
            if b is None or not self.has_cube(b, mask_of(ddirs + ups)):
                return False
        return True

    def link_cells(self, v) -> list:
        """(link simplex labels, base id, mask) for each positive-dim cube at v."""
        if isinstance(v, int):
            v = self.vertices[v]
        self.vertex_id(v)
        out = []
        for base, assign, ups in self.x_cubes_at(v):
            if not assign and not ups:
                continue
            b = self.index.get(base)
            mask = mask_of(tuple(i for i, _ in assign) + ups)
            if b is not None and self.has_cube(b, mask):
                out.append((tuple(link_label(assign, ups)), b, mask))
        return out

    def link(self, v) -> "SimplicialComplex":
        return SimplicialComplex.from_faces([f for f, _, _ in self.link_cells(v)])


def _maximal_ok_ups(m0, ddirs, rest, ok):
    """Maximal up-sets U whose cube (down ddirs, up U) has all corners passing ok."""
    good = []
    for r in range(len(rest), -1, -1):
        for ups in combinations(rest, r):
            if any(set(ups) <= set(g) for g in good):
                continue
            if _corners_ok(m0, ddirs, ups, ok):
                good.append(ups)
    return good


def _corners_ok(m0, ddirs, ups, ok):
    moves = [(i, -1) for i in ddirs] + [(j, 1) for j in ups]
    # corners: v + any subset of moves
    ms = [list(m0)]
    for i, d in moves:
        ms = ms + [m[:i - 1] + [m[i - 1] + d] + m[i:] for m in ms]
    return all(ok(tuple(m)) for m in ms)


def link_label(assign, ups):
    return [("down", i, tuple(p)) for i, p in assign] + [("up", j) for j in ups]


def display_label(label) -> str:
    if isinstance(label, tuple) and label and label[0] == "up":
        return f"up{label[1]}"
    if isinstance(label, tuple) and label and label[0] == "down":
        return f"down{label[1]}({label[2][0]},{label[2][1]})"
    if isinstance(label, tuple) and len(label) == 2 and all(isinstance(a, int) for a in label):
        return f"Y{label[0]}^{label[1]}"
    return str(label)


class SimplicialComplex:
    """Downward-closed family of faces over sortable vertex labels."""

    def __init__(self, vertices: Iterable, faces: Iterable[Iterable[int]] = ()):
        self.vertices = tuple(vertices)
        if list(self.vertices) != sorted(set(self.vertices)):
            raise ComplexError("simplicial vertices must be distinct and sorted")
        fs = set()
        for f in faces:
            f = tuple(sorted(set(f)))
            if f:
                fs.add(f)
        for k in range(len(self.vertices)):
            fs.add((k,))
        for f in list(fs):
            for r in range(1, len(f)):
                for g in combinations(f, r):
                    if g not in fs:
                        raise ComplexError(f"face {f} present without its face {g}")
        self.faces = fs

    @classmethod
    def from_faces(cls, labelled: Iterable[Iterable], close: bool = True,
                   extra_vertices: Iterable = ()) -> "SimplicialComplex":
        labelled = [tuple(f) for f in labelled]
        verts = sorted({x for f in labelled for x in f} | set(extra_vertices))
        idx = {x: k for k, x in enumerate(verts)}
        faces = set()
        for f in labelled:
            ids = tuple(sorted(idx[x] for x in f))
            if close:
                for r in range(1, len(ids) + 1):
                    faces.update(combinations(ids, r))
            else:
                faces.add(ids)
        return cls(verts, faces)

    def simplices(self, dim: Optional[int] = None) -> list:
        if dim is None:
            return sorted(self.faces, key=lambda f: (len(f), f))
        return sorted(f for f in self.faces if len(f) == dim + 1)

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-1)

    def counts(self) -> list:
        return [len(self.simplices(d)) for d in range(self.dimension + 1)]

    def is_empty(self) -> bool:
        return not self.vertices

    def labelled_faces(self) -> list:
        return [tuple(self.vertices[k] for k in f) for f in self.simplices()]

    def induced(self, keep: Iterable) -> "SimplicialComplex":
        """Full subcomplex on the given vertex labels."""
        keep = set(keep)
        faces = [f for f in self.labelled_faces() if set(f) <= keep]
        return SimplicialComplex.from_faces(faces, extra_vertices=keep & set(self.vertices))

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex) and self.vertices == other.vertices
                and self.faces == other.faces)

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, counts={self.counts()})"


# -- operations ---------------------------------------------------------------

def window_neighbors(v: EventualInjection):
    n = v.n
    for i in range(1, n + 1):
        yield v.up(i)
    for p in v.missing_points():
        for i in range(1, n + 1):
            yield v.down(i, p)


class RegionTooLarge(ComplexError):
    """The breadth-first walk passed the vertex budget."""


def enumerate_region(seeds: Iterable[EventualInjection], spec: RegionSpec,
                     max_vertices: Optional[int] = None) -> CubicalComplex:
    """Breadth-first closure of the seeds inside the window, then the full subcomplex.

    The walk is bounded by the window (and the f floor) only, so the f bound
    and character cuts do not disconnect the search; vertices are kept if
    they pass every predicate.
    """
    seeds = list(seeds)
    if not seeds:
        raise ComplexError("empty seed list")
    for s in seeds:
        if s.n != spec.n:
            raise ComplexError(f"seed {s} has n={s.n}, expected {spec.n}")
        if not spec.admits(s):
            raise ComplexError(f"seed {s} violates the region predicates")
    seen = set(seeds)
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        for w in window_neighbors(v):
            if w not in seen and spec.in_window(w) and sum(w.translations) >= spec.f_floor:
                seen.add(w)
                queue.append(w)
                if max_vertices is not None and len(seen) > max_vertices:
                    raise RegionTooLarge(f"window walk exceeded {max_vertices} vertices")
    kept = [v for v in seen if spec.target_ok(v.translations)]
    return CubicalComplex(spec.n, kept, spec=spec, full=True)


def full_subcomplex(X: CubicalComplex, keep: Callable[[EventualInjection], bool],
                    spec: Optional[RegionSpec] = None) -> CubicalComplex:
    verts = [v for v in X.vertices if keep(v)]
    return _restrict(X, verts, spec if spec is not None else X.spec)


def _restrict(X: CubicalComplex, verts, spec=None) -> CubicalComplex:
    sub = CubicalComplex(X.n, verts, spec=spec, check=False)
    remap = [sub.index.get(v, -1) for v in X.vertices]
    cubes = set()
    for b, mask in X.cube_set:
        nb = remap[b]
        if nb < 0:
            continue
        if all(remap[c] >= 0 for c in X.corners(b, mask)):
            cubes.add((nb, mask))
    sub.cube_set = cubes
    return sub


def induced_on_ids(X: CubicalComplex, ids: Iterable[int]) -> CubicalComplex:
    return _restrict(X, [X.vertices[k] for k in ids], X.spec)


def is_flag(L: SimplicialComplex) -> bool:
    """Every set of pairwise adjacent vertices spans a simplex."""
    adj = {k: set() for k in range(len(L.vertices))}
    for f in L.simplices(1):
        a, b = f
        adj[a].add(b)
        adj[b].add(a)

    # Bron-Kerbosch over maximal cliques
    ok = True

    def expand(r, p, x):
        nonlocal ok
        if not ok:
            return
        if not p and not x:
            if tuple(sorted(r)) not in L.faces:
                ok = False
            return
        for u in list(p):
            expand(r | {u}, p & adj[u], x & adj[u])
            p = p - {u}
            x = x | {u}

    expand(set(), set(adj), set())
    return ok


def is_locally_full(X: CubicalComplex, S: Iterable[EventualInjection], v) -> bool:
    """Whether the link of v in the full subcomplex on S is full in link(X, v)."""
    S = S if isinstance(S, (set, frozenset)) else set(S)
    if isinstance(v, int):
        v = X.vertices[v]
    if v not in S:
        raise ComplexError(f"{v} not in the subcomplex")
    cells = X.link_cells(v)
    outer = SimplicialComplex.from_faces([f for f, _, _ in cells])
    inner = SimplicialComplex.from_faces(
        [f for f, b, mask in cells if all(X.vertices[c] in S for c in X.corners(b, mask))])
    return inner == outer.induced(inner.vertices)


def connected_components(X: CubicalComplex) -> list:
    """1-skeleton components as sorted id lists, ordered by least vertex."""
    parent = list(range(len(X.vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b, _ in X.edges():
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    groups = {}
    for k in range(len(X.vertices)):
        groups.setdefault(find(k), []).append(k)
    # ids follow canonical order, so the least id is the least encoding
    return sorted(groups.values(), key=lambda g: g[0])


def window_top(spec: RegionSpec) -> EventualInjection:
    """t_1^W_1 ... t_n^W_n: in codomain mode every admitted vertex lies below it."""
    v = identity(spec.n)
    for i, w in enumerate(spec.bounds, start=1):
        for _ in range(w):
            v = v.up(i)
    return v


def default_seeds(n: int) -> list:
    from .core import transposition_tau
    return [identity(n)] + [transposition_tau(i, n) for i in range(1, n + 1)]


def vertex_heights(X: CubicalComplex, chi: Optional[Character]):
    if chi is None:
        return [(deficiency_f(v),) for v in X.vertices]
    return [(chi_eval(chi, v), deficiency_f(v)) for v in X.vertices]
