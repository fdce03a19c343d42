import pytest

from houghton.complex import RegionSpec, SimplicialComplex, enumerate_region
from houghton.core import identity
from houghton.fixtures import hollow_cube, solid_cube
from houghton.io import (FormatError, bits_to_mask, dumps_complex, dumps_nerve, load, loads_complex,
                         loads_nerve, mask_to_bits, save)


def test_bits():
    assert mask_to_bits(0b101, 3) == "101"
    assert mask_to_bits(0b10, 3) == "010"
    for m in range(8):
        assert bits_to_mask(mask_to_bits(m, 3), 3) == m
    with pytest.raises(ValueError):
        bits_to_mask("12", 2)


def test_square_text():
    text = dumps_complex(solid_cube(2))
    assert text.splitlines()[0] == "houghton-complex v1 n=2"
    assert "c 0 11" in text.splitlines()
    assert "v 0 n=2; m=0,0; B=0,0; exc=" in text.splitlines()


@pytest.mark.parametrize("build", [lambda: solid_cube(3), hollow_cube,
                                   lambda: enumerate_region([identity(2)], RegionSpec(2, 2, f_bound=2))])
def test_complex_round_trip(build, tmp_path):
    X = build()
    Y = loads_complex(dumps_complex(X))
    assert Y.vertices == X.vertices and Y.cube_set == X.cube_set
    path = tmp_path / "x.txt"
    save(path, X)
    assert dumps_complex(load(path)) == dumps_complex(X)


BAD_COMPLEX = {
    "houghton-cube v1 n=2\n": 1,
    "houghton-complex v1 n=2\nv 0 n=2; m=0,0; B=0,0; exc=\nv 0 n=2; m=0,1; B=0,0; exc=\n": 3,
    "houghton-complex v1 n=2\nv 0 n=3; m=0,0,0; B=0,0,0; exc=\n": 2,
    "houghton-complex v1 n=2\nv 0 n=2; m=0,0; B=0,0; exc=\nc 0 10\n": 3,
    "houghton-complex v1 n=2\nv 0 n=2; m=0,0; B=0,0; exc=\nc 0 1\n": 3,
    "houghton-complex v1 n=2\nv 0 garbage\n": 2,
    "houghton-complex v1 n=2\nx 1\n": 2,
}


@pytest.mark.parametrize("text,line", sorted(BAD_COMPLEX.items()))
def test_complex_loader_names_line(text, line):
    with pytest.raises(FormatError, match=f"line {line}:"):
        loads_complex(text)


def _nerve():
    return SimplicialComplex.from_faces([((1, 1), (2, 1)), ((1, 2), (2, 1)), ((1, 2), (2, 2))],
                                        extra_vertices=[(1, 3)])


def test_nerve_round_trip(tmp_path):
    L = _nerve()
    text = dumps_nerve(L)
    assert text.splitlines()[0] == "houghton-nerve v1 n=5"
    assert "label 0 type=1 alpha=1" in text
    assert loads_nerve(text) == L
    save(tmp_path / "n.txt", L)
    assert load(tmp_path / "n.txt") == L


def test_nerve_loader_errors():
    good = dumps_nerve(_nerve())
    with pytest.raises(FormatError, match="line"):
        loads_nerve(good.replace("type=1 alpha=1", "type=1 alpha=9", 1))
    with pytest.raises(FormatError):
        loads_nerve(good + "s 0 1 2\n")            # triangle without its edges
    with pytest.raises(FormatError):
        loads_nerve(good + "s 0 9\n")
    with pytest.raises(FormatError):
        loads_nerve(good.replace("n=5", "n=6"))
