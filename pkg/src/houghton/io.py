"""Line-based text formats for cube complexes and nerves.

Complex files::

    houghton-complex v1 n=2
    v 0 n=2; m=0,0; B=0,0; exc=
    c 0 11

Cube masks are written as bit strings over the directions 1..n, left to
right.  Nerves use the same layout under ``houghton-nerve v1 n=<vertex count>``,
with ``s`` lines for simplices and a ``label <id> type=<i> alpha=<a>`` line
per vertex.
"""

from __future__ import annotations

import re
from itertools import combinations

from .complex import CubicalComplex, SimplicialComplex, dirs_of
from .core import decode, encode


class FormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def mask_to_bits(mask: int, n: int) -> str:
    return "".join("1" if mask >> k & 1 else "0" for k in range(n))


def bits_to_mask(bits: str, n: int) -> int:
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise ValueError(f"bad direction mask {bits!r} for n={n}")
    return sum(1 << k for k, b in enumerate(bits) if b == "1")


def dumps_complex(X: CubicalComplex) -> str:
    lines = [f"houghton-complex v1 n={X.n}"]
    lines += [f"v {k} {encode(v)}" for k, v in enumerate(X.vertices)]
    for b, mask in X.cubes():
        if mask:
            lines.append(f"c {b} {mask_to_bits(mask, X.n)}")
    return "\n".join(lines) + "\n"


_HEADER = re.compile(r"^houghton-(complex|nerve) v1 n=(\d+)$")


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield k, line


def _header(lines, kind):
    try:
        k, line = next(lines)
    except StopIteration:
        raise FormatError(1, "empty file") from None
    m = _HEADER.match(line)
    if not m or m.group(1) != kind:
        raise FormatError(k, f"expected 'houghton-{kind} v1 n=<n>' header")
    return int(m.group(2))


def loads_complex(text: str) -> CubicalComplex:
    """Parse and re-validate a complex; errors name the offending line."""
    lines = _lines(text)
    n = _header(lines, "complex")
    verts, cubes = {}, []
    for k, line in lines:
        kind, _, rest = line.partition(" ")
        if kind == "v":
            sid, _, enc = rest.partition(" ")
            try:
                vid, v = int(sid), decode(enc)
            except ValueError as exc:
                raise FormatError(k, str(exc)) from None
            if v.n != n:
                raise FormatError(k, f"vertex has n={v.n}, file declares n={n}")
            if vid in verts:
                raise FormatError(k, f"duplicate vertex id {vid}")
            if v in verts.values():
                raise FormatError(k, "duplicate vertex encoding")
            verts[vid] = v
        elif kind == "c":
            parts = rest.split()
            try:
                if len(parts) != 2:
                    raise ValueError("expected 'c <base-id> <mask bits>'")
                base, mask = int(parts[0]), bits_to_mask(parts[1], n)
                if not mask:
                    raise ValueError("empty direction mask")
            except ValueError as exc:
                raise FormatError(k, str(exc)) from None
            cubes.append((k, base, mask))
        else:
            raise FormatError(k, f"unknown record {kind!r}")
    if sorted(verts) != list(range(len(verts))):
        raise FormatError(0, "vertex ids are not 0..N-1")
    X = CubicalComplex(n, verts.values(), check=False)
    remap = {vid: X.index[v] for vid, v in verts.items()}
    seen = set()
    for k, base, mask in cubes:
        if base not in remap:
            raise FormatError(k, f"unknown base vertex {base}")
        key = (remap[base], mask)
        if key in seen:
            raise FormatError(k, "duplicate cube")
        seen.add(key)
        if any(c < 0 for c in X.corners(*key)):
            raise FormatError(k, "cube has a corner outside the vertex set")
    X.cube_set = seen
    by_key = {(remap[b], mask): k for k, b, mask in cubes}
    for (b, mask), k in sorted(by_key.items(), key=lambda t: t[1]):
        for i in dirs_of(mask):
            rest = mask & ~(1 << (i - 1))
            if rest and ((b, rest) not in seen or (X.up[b][i - 1], rest) not in seen):
                raise FormatError(k, "cube is missing a face")
    return X


def dumps_nerve(N) -> str:
    """Export a Nerve (or a SimplicialComplex with (type, alpha) labels)."""
    L = getattr(N, "complex", N)
    lines = [f"houghton-nerve v1 n={len(L.vertices)}"]
    for k, (t, a) in enumerate(L.vertices):
        lines.append(f"v {k} Y{t}^{a}")
        lines.append(f"label {k} type={t} alpha={a}")
    for f in L.simplices():
        if len(f) > 1:
            lines.append("s " + " ".join(map(str, f)))
    return "\n".join(lines) + "\n"


_LABEL = re.compile(r"^(\d+) type=(\d+) alpha=(\d+)$")


def loads_nerve(text: str) -> SimplicialComplex:
    lines = _lines(text)
    count = _header(lines, "nerve")
    names, labels, faces = {}, {}, []
    for k, line in lines:
        kind, _, rest = line.partition(" ")
        if kind == "v":
            sid, _, name = rest.partition(" ")
            if not sid.isdigit() or not name:
                raise FormatError(k, "expected 'v <id> <name>'")
            names[int(sid)] = name
        elif kind == "label":
            m = _LABEL.match(rest)
            if not m:
                raise FormatError(k, "expected 'label <id> type=<i> alpha=<a>'")
            vid, t, a = map(int, m.groups())
            if vid in labels:
                raise FormatError(k, f"duplicate label for vertex {vid}")
            if names.get(vid) != f"Y{t}^{a}":
                raise FormatError(k, f"label disagrees with vertex line {names.get(vid)!r}")
            labels[vid] = (t, a)
        elif kind == "s":
            try:
                face = tuple(int(x) for x in rest.split())
            except ValueError:
                raise FormatError(k, "non-integer vertex in simplex") from None
            if len(set(face)) != len(face) or len(face) < 2:
                raise FormatError(k, "simplex needs at least two distinct vertices")
            if any(x not in labels for x in face):
                raise FormatError(k, "simplex uses an unlabelled vertex")
            faces.append((k, face))
        else:
            raise FormatError(k, f"unknown record {kind!r}")
    if sorted(labels) != list(range(count)) or len(labels) != len(names):
        raise FormatError(0, f"expected labelled vertices 0..{count - 1}")
    order = [labels[k] for k in range(count)]
    if order != sorted(order):
        raise FormatError(0, "vertex labels are not in sorted order")
    present = {f for _, f in faces}
    for k, f in faces:
        for r in range(2, len(f)):
            for sub in combinations(f, r):
                if sub not in present:
                    raise FormatError(k, f"simplex is missing the face {sub}")
    return SimplicialComplex(order, [f for _, f in faces])


def save(path, obj) -> None:
    text = dumps_complex(obj) if isinstance(obj, CubicalComplex) else dumps_nerve(obj)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def load(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return loads_nerve(text) if text.lstrip().startswith("houghton-nerve") else loads_complex(text)
