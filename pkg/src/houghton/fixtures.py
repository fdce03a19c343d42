"""Small classical complexes with known homology, plus a few handcrafted cases."""

from __future__ import annotations

from itertools import combinations

from .complex import CubicalComplex, SimplicialComplex, mask_of
from .core import identity


def point() -> SimplicialComplex:
    return SimplicialComplex.from_faces([("a",)])


def two_points() -> SimplicialComplex:
    return SimplicialComplex.from_faces([("a",), ("b",)])


def circle() -> SimplicialComplex:
    return SimplicialComplex.from_faces([(0, 1), (1, 2), (0, 2)])


def triangle() -> SimplicialComplex:
    return SimplicialComplex.from_faces([(0, 1, 2)])


def square_cycle() -> SimplicialComplex:
    return SimplicialComplex.from_faces([(0, 1), (1, 2), (2, 3), (0, 3)])


# minimal 6-vertex triangulation of the real projective plane
RP2_FACETS = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)]


def projective_plane() -> SimplicialComplex:
    return SimplicialComplex.from_faces(RP2_FACETS)


def torus() -> SimplicialComplex:
    """Seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    facets = []
    for i in range(7):
        facets.append((i, (i + 1) % 7, (i + 3) % 7))
        facets.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex.from_faces(facets)


def _cube_vertices(n: int):
    out = []
    for r in range(n + 1):
        for dirs in combinations(range(1, n + 1), r):
            v = identity(n)
            for i in dirs:
                v = v.up(i)
            out.append(v)
    return out


def solid_cube(n: int = 3) -> CubicalComplex:
    """The n-cube of X_n spanned at the identity."""
    verts = _cube_vertices(n)
    return CubicalComplex(n, verts, full=True)


def hollow_cube() -> CubicalComplex:
    """Boundary of the 3-cube at the identity: 8 vertices, 12 edges, 6 squares."""
    full = solid_cube(3)
    cubes = [(b, mask) for b, mask in full.cube_set if mask != mask_of((1, 2, 3))]
    return CubicalComplex(3, full.vertices, cubes)


def diagonal_pair():
    """(square at the identity for n=2, S = its two opposite corners)."""
    sq = solid_cube(2)
    e = identity(2)
    return sq, {e, e.up(1).up(2)}


CLASSICAL = {
    # name: (builder, reduced betti, torsion per degree)
    "point": (point, [0], [[]]),
    "two_points": (two_points, [1], [[]]),
    "circle": (circle, [0, 1], [[], []]),
    "triangle": (triangle, [0, 0, 0], [[], [], []]),
    "hollow_cube": (hollow_cube, [0, 0, 1], [[], [], []]),
    "projective_plane": (projective_plane, [0, 0, 0], [[], [2], []]),
    "torus": (torus, [0, 2, 1], [[], [], []]),
}


def classical_table(reduced: bool = True) -> list:
    """Rows (name, expected betti, expected torsion, computed betti, computed torsion)."""
    from .homology import cubical_chain_complex, homology, simplicial_chain_complex
    rows = []
    for name, (build, betti, torsion) in CLASSICAL.items():
        K = build()
        C = cubical_chain_complex(K) if isinstance(K, CubicalComplex) else simplicial_chain_complex(K)
        H = homology(C, reduced=reduced, max_degree=len(betti) - 1)
        exp_b = list(betti) if reduced else [betti[0] + 1] + list(betti[1:])
        rows.append((name, exp_b, [list(t) for t in torsion], list(H.betti),
                     [list(t) for t in H.torsion]))
    return rows
