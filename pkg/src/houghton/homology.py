"""Exact integer homology of cubical and simplicial complexes."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .complex import CubicalComplex, SimplicialComplex, dirs_of


class ChainComplexError(ValueError):
    pass


class IntegerMatrix:
    """Sparse matrix with arbitrary precision integer entries (no stored zeros)."""

    def __init__(self, rows: int, cols: int, entries: Optional[dict] = None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r},{c}) outside {rows}x{cols}")
            if v:
                self.entries[(r, c)] = int(v)

    @classmethod
    def from_dense(cls, rows: list) -> "IntegerMatrix":
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        return cls(nr, nc, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                acc[(r, c)] = acc.get((r, c), 0) + v * w
        return IntegerMatrix(self.rows, other.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def nnz(self) -> int:
        return len(self.entries)

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def dump(self, degree: int) -> str:
        lines = [f"deg {degree} {self.rows} {self.cols}"]
        lines += [f"{r} {c} {v}" for (r, c), v in sorted(self.entries.items())]
        return "\n".join(lines)


# -- Smith normal form --------------------------------------------------------

class _Sparse:
    """Row dicts plus column index sets, updated together."""

    def __init__(self, M: IntegerMatrix):
        self.rows = {}
        self.cols = {}
        for (r, c), v in M.entries.items():
            self.rows.setdefault(r, {})[c] = v
            self.cols.setdefault(c, set()).add(r)

    def add_row(self, dst, src, k):
        """row dst += k * row src"""
        rd = self.rows[dst]
        for c, v in self.rows[src].items():
            w = rd.get(c, 0) + k * v
            if w:
                if c not in rd:
                    self.cols[c].add(dst)
                rd[c] = w
            elif c in rd:
                del rd[c]
                self.cols[c].discard(dst)

    def add_col(self, dst, src, k):
        """col dst += k * col src"""
        cd = self.cols.setdefault(dst, set())
        for r in list(self.cols[src]):
            row = self.rows[r]
            w = row.get(dst, 0) + k * row[src]
            if w:
                row[dst] = w
                cd.add(r)
            elif dst in row:
                del row[dst]
                cd.discard(r)
        if not cd:
            del self.cols[dst]

    def drop(self, r, c):
        for c2 in self.rows.pop(r):
            s = self.cols[c2]
            s.discard(r)
            if not s:
                del self.cols[c2]
        for r2 in self.cols.pop(c, ()):
            row = self.rows[r2]
            row.pop(c, None)
            if not row:
                del self.rows[r2]

    def clean(self):
        for r in [r for r, row in self.rows.items() if not row]:
            del self.rows[r]
        for c in [c for c, s in self.cols.items() if not s]:
            del self.cols[c]


def _unit_sweep(S: _Sparse) -> int:
    """Eliminate on +-1 pivots, sparsest columns first; returns pivots used."""
    used = 0
    progress = True
    while progress:
        progress = False
        for c in sorted(S.cols, key=lambda c: (len(S.cols[c]), c)):
            rows_c = S.cols.get(c)
            if not rows_c:
                continue
            best = None
            for r in rows_c:
                v = S.rows[r][c]
                if v == 1 or v == -1:
                    key = (len(S.rows[r]), r)
                    if best is None or key < best[0]:
                        best = (key, r, v)
            if best is None:
                continue
            _, r, v = best
            for r2 in list(rows_c):
                if r2 != r:
                    S.add_row(r2, r, -S.rows[r2][c] * v)
            S.drop(r, c)
            S.clean()
            used += 1
            progress = True
    return used


def _general_reduce(S: _Sparse) -> list:
    """Diagonalize what is left; returns the absolute diagonal entries."""
    diag = []
    while S.rows:
        # smallest absolute value, then the densest column last
        best = None
        for r, row in S.rows.items():
            for c, v in row.items():
                key = (abs(v), len(S.cols[c]), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        _, r, c = best
        while True:
            a = S.rows[r][c]
            done = True
            for r2 in list(S.cols[c]):
                if r2 != r:
                    q = S.rows[r2][c] // a
                    S.add_row(r2, r, -q)
                    if c in S.rows[r2]:
                        done = False
            for c2 in list(S.rows[r]):
                if c2 != c:
                    q = S.rows[r][c2] // a
                    S.add_col(c2, c, -q)
                    if c2 in S.rows[r]:
                        done = False
            S.clean()
            if done:
                break
            # a remainder smaller than the pivot survived; move the pivot there
            cand = [(abs(S.rows[r2][c]), r2, c) for r2 in S.cols[c] if r2 != r]
            cand += [(abs(v), r, c2) for c2, v in S.rows[r].items() if c2 != c]
            _, r, c = min(cand)
        diag.append(abs(S.rows[r][c]))
        S.drop(r, c)
        S.clean()
    return diag


def _diagonal_to_invariants(diag: list) -> list:
    d = sorted(x for x in diag if x)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            a, b = d[i], d[j]
            g = gcd(a, b)
            d[i], d[j] = g, a // g * b
    return sorted(d)


def smith_normal_form(M: IntegerMatrix):
    """Nonzero invariant factors (divisibility chain) and the rank."""
    S = _Sparse(M)
    ones = _unit_sweep(S)
    rest = _general_reduce(S)
    factors = [1] * ones + _diagonal_to_invariants(rest)
    factors = sorted(factors)
    return factors, len(factors)


def rank(M: IntegerMatrix) -> int:
    return smith_normal_form(M)[1]


# -- chain complexes ---------------------------------------------------------

@dataclass
class ChainComplex:
    """Cell bases per degree and boundary matrices d_k: C_k -> C_{k-1}."""

    bases: dict
    boundaries: dict
    check: bool = True

    def __post_init__(self):
        for k, D in self.boundaries.items():
            if D.cols != len(self.bases.get(k, ())) or D.rows != len(self.bases.get(k - 1, ())):
                raise ChainComplexError(f"boundary d_{k} has shape {D.rows}x{D.cols}")
        if self.check:
            for k in self.boundaries:
                if k - 1 in self.boundaries and not (self.boundaries[k - 1] @ self.boundaries[k]).is_zero():
                    raise ChainComplexError(f"d_{k - 1} d_{k} != 0")

    @property
    def top(self) -> int:
        return max((k for k, b in self.bases.items() if b), default=-1)

    def rank_of(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def boundary(self, k: int) -> IntegerMatrix:
        if k in self.boundaries:
            return self.boundaries[k]
        return IntegerMatrix(self.rank_of(k - 1), self.rank_of(k))

    def dump(self) -> str:
        return "\n".join(self.boundary(k).dump(k) for k in sorted(self.boundaries))


def cubical_chain_complex(X: CubicalComplex, max_dim: Optional[int] = None) -> ChainComplex:
    """Cells are cubes; d(base, I) = sum_i (-1)^pos(i) (top_i - bottom_i)."""
    top = X.dimension if max_dim is None else min(max_dim, X.dimension)
    bases = {k: X.cubes(k) for k in range(top + 1)}
    boundaries = {}
    for k in range(1, top + 1):
        index = {c: j for j, c in enumerate(bases[k - 1])}
        entries = {}
        for col, (b, mask) in enumerate(bases[k]):
            for pos, i in enumerate(dirs_of(mask)):
                bit = 1 << (i - 1)
                face = mask & ~bit
                sign = -1 if pos % 2 else 1
                entries[(index[(X.up[b][i - 1], face)], col)] = sign
                entries[(index[(b, face)], col)] = -sign
        boundaries[k] = IntegerMatrix(len(bases[k - 1]), len(bases[k]), entries)
    return ChainComplex(bases, boundaries)


def simplicial_chain_complex(L: SimplicialComplex, max_dim: Optional[int] = None) -> ChainComplex:
    top = L.dimension if max_dim is None else min(max_dim, L.dimension)
    bases = {k: L.simplices(k) for k in range(top + 1)}
    boundaries = {}
    for k in range(1, top + 1):
        index = {s: j for j, s in enumerate(bases[k - 1])}
        entries = {}
        for col, s in enumerate(bases[k]):
            for j in range(len(s)):
                entries[(index[s[:j] + s[j + 1:]], col)] = -1 if j % 2 else 1
        boundaries[k] = IntegerMatrix(len(bases[k - 1]), len(bases[k]), entries)
    return ChainComplex(bases, boundaries)


@dataclass
class HomologyResult:
    betti: list
    torsion: list
    reduced: bool
    empty: bool = False
    degrees: int = 0

    def is_zero_in(self, k: int) -> bool:
        if k < 0:
            return not (self.reduced and self.empty)
        if k >= len(self.betti):
            return True
        return self.betti[k] == 0 and not self.torsion[k]

    def as_dict(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion],
                "reduced": self.reduced, "empty": self.empty}


def homology(C: ChainComplex, reduced: bool = True, max_degree: Optional[int] = None) -> HomologyResult:
    """Integer homology through ``max_degree`` (default: all degrees)."""
    top = C.top
    last = top if max_degree is None else min(max_degree, top)
    if top < 0:
        return HomologyResult([], [], reduced, empty=True, degrees=-1)
    snf = {}

    def factors(k):
        if k not in snf:
            if k == 0:
                snf[k] = ([1], 1) if (reduced and C.rank_of(0)) else ([], 0)
            elif k > top or C.boundary(k).is_zero():
                snf[k] = ([], 0)
            else:
                snf[k] = smith_normal_form(C.boundary(k))
        return snf[k]

    betti, torsion = [], []
    for k in range(last + 1):
        b = C.rank_of(k) - factors(k)[1] - factors(k + 1)[1]
        betti.append(b)
        torsion.append([d for d in factors(k + 1)[0] if d > 1])
    # asking past the top cell degree: those groups vanish
    for k in range(last + 1, (max_degree if max_degree is not None else last) + 1):
        betti.append(0)
        torsion.append([])
    return HomologyResult(betti, torsion, reduced, degrees=len(betti) - 1)


def acyclicity_bound(H: HomologyResult, cap: Optional[int] = None) -> int:
    """Largest k with reduced H_i = 0 for all i <= k (-2 empty, -1 disconnected)."""
    if H.empty:
        return -2
    k = -1
    while k + 1 < len(H.betti) and H.is_zero_in(k + 1):
        k += 1
    if cap is not None:
        k = min(k, cap)
    return k


def reduced_homology(X, max_degree: Optional[int] = None) -> HomologyResult:
    """Reduced homology of a cubical or simplicial complex."""
    if isinstance(X, SimplicialComplex):
        C = simplicial_chain_complex(X, None if max_degree is None else max_degree + 1)
    else:
        C = cubical_chain_complex(X, None if max_degree is None else max_degree + 1)
    return homology(C, reduced=True, max_degree=max_degree)


def is_acyclic_through(X, k: int) -> bool:
    """Reduced homology vanishes in degrees <= k (k = -1 means nonempty)."""
    if k < -1:
        return True
    H = reduced_homology(X, max_degree=max(k, 0))
    if H.empty:
        return False
    return acyclicity_bound(H) >= k


# -- induced maps ------------------------------------------------------------

def _rank_q(columns: list, nrows: int) -> int:
    """Rank over Q of integer column vectors given as dicts row -> value."""
    return len(_echelon_q(columns))


def _echelon_q(columns):
    pivots = {}
    for col in columns:
        v = {r: Fraction(x) for r, x in col.items() if x}
        while v:
            p = min(v)
            if p not in pivots:
                pivots[p] = v
                break
            w = pivots[p]
            f = v[p] / w[p]
            for r, x in w.items():
                y = v.get(r, 0) - f * x
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return pivots


def _kernel_q(D: IntegerMatrix, ncols: int) -> list:
    """Basis of ker D over Q as dict vectors over column indices."""
    cols = [dict() for _ in range(ncols)]
    for (r, c), v in D.entries.items():
        cols[c][r] = v
    # row-reduce the transpose bookkeeping: track combinations of columns
    pivots = {}
    kernel = []
    for c in range(ncols):
        v = {r: Fraction(x) for r, x in cols[c].items()}
        comb = {c: Fraction(1)}
        while v:
            p = min(v)
            if p not in pivots:
                pivots[p] = (v, comb)
                break
            w, wc = pivots[p]
            f = v[p] / w[p]
            for r, x in w.items():
                y = v.get(r, 0) - f * x
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
            for r, x in wc.items():
                y = comb.get(r, 0) - f * x
                if y:
                    comb[r] = y
                else:
                    comb.pop(r, None)
        if not v:
            kernel.append(comb)
    return kernel


@dataclass
class InclusionVerdict:
    degree: int
    rank: int
    source_dim: int
    target_dim: int

    @property
    def injective(self) -> bool:
        return self.rank == self.source_dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective

    def as_dict(self) -> dict:
        return {"degree": self.degree, "rank": self.rank, "source": self.source_dim,
                "target": self.target_dim, "injective": self.injective,
                "surjective": self.surjective, "isomorphism": self.isomorphism}


def induced_inclusion_map(Csub: ChainComplex, Csup: ChainComplex, cells: dict,
                          max_degree: Optional[int] = None, reduced: bool = True) -> list:
    """Per-degree verdicts for the map on rational homology of a cellular inclusion.

    ``cells[k][j]`` is the index in Csup of the j-th degree-k cell of Csub.
    The cell injection must commute with the boundaries.
    """
    top = Csub.top if max_degree is None else min(max_degree, Csub.top)
    for k in range(1, top + 2):
        if k > Csub.top:
            break
        Dsub, Dsup = Csub.boundary(k), Csup.boundary(k)
        sup_cols = {}
        for (r, c), v in Dsup.entries.items():
            sup_cols.setdefault(c, {})[r] = v
        img = {}
        for (r, c), v in Dsub.entries.items():
            img.setdefault(c, {})[cells[k - 1][r]] = v
        for j in range(Csub.rank_of(k)):
            if img.get(j, {}) != sup_cols.get(cells[k][j], {}):
                raise ChainComplexError(f"cell map does not commute with d_{k} at cell {j}")

    def aug(C, k):
        D = C.boundary(k)
        if k == 0 and reduced:
            return IntegerMatrix(1, C.rank_of(0), {(0, j): 1 for j in range(C.rank_of(0))})
        return D

    verdicts = []
    for k in range(top + 1):
        Z = _kernel_q(aug(Csub, k), Csub.rank_of(k))
        zimg = [{cells[k][c]: x for c, x in z.items()} for z in Z]
        B = [dict() for _ in range(Csup.rank_of(k + 1))]
        for (r, c), v in Csup.boundary(k + 1).entries.items():
            B[c][r] = v
        rb = _rank_q(B, Csup.rank_of(k))
        rboth = _rank_q(B + zimg, Csup.rank_of(k))
        Bsub = [dict() for _ in range(Csub.rank_of(k + 1))]
        for (r, c), v in Csub.boundary(k + 1).entries.items():
            Bsub[c][r] = v
        rsub_b = _rank_q(Bsub, Csub.rank_of(k))
        src = len(Z) - rsub_b
        zsup = len(_kernel_q(aug(Csup, k), Csup.rank_of(k)))
        verdicts.append(InclusionVerdict(k, rboth - rb, src, zsup - rb))
    return verdicts


def cubical_inclusion_cells(sub: CubicalComplex, sup: CubicalComplex, Csub: ChainComplex,
                            Csup: ChainComplex) -> dict:
    """Cell injection for a subcomplex inclusion of cube complexes."""
    remap = [sup.index[v] for v in sub.vertices]
    out = {}
    for k, cells in Csub.bases.items():
        idx = {c: j for j, c in enumerate(Csup.bases.get(k, ()))}
        out[k] = [idx[(remap[b], m)] for b, m in cells]
    return out
