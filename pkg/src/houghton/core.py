"""Exact arithmetic in the monoid M_n of eventual-translation injections.

Elements act on the right of points of [n] x N, so ``compose(a, b)`` is the
map that first applies ``a`` and then ``b``.  Up-edges of the cube complex are
``t_i o phi = compose(t_i, phi)``.
"""

from __future__ import annotations

import re
from typing import Iterator, NamedTuple, Sequence


class DimensionError(ValueError):
    pass


class ZeroCharacterError(ValueError):
    pass


class RayPoint(NamedTuple):
    ray: int
    pos: int

    def __str__(self):
        return f"({self.ray},{self.pos})"


class EventualInjection:
    """Canonical finite encoding of an element of M_n.

    ``images[i]`` holds the values at positions ``1..B_i`` of ray ``i+1``;
    beyond ``B_i`` the ray is pure translation ``x -> x + m_i``.  ``B_i`` is
    minimal, so the last stored value on a ray is never pure translation.
    Instances are immutable and hashable.
    """

    __slots__ = ("n", "translations", "images", "_hash", "_key")

    def __init__(self, n: int, translations: Sequence[int], images: Sequence[Sequence[tuple]],
                 *, _trusted: bool = False):
        if not _trusted:
            translations, images = _canonical_rays(n, translations, images)
            _check_injective(n, translations, images)
        self.n = n
        self.translations = tuple(translations)
        self.images = tuple(tuple(r) for r in images)
        self._hash = hash((self.translations, self.images))
        self._key = None

    # -- basic accessors -------------------------------------------------

    @property
    def support_bounds(self) -> tuple:
        return tuple(len(r) for r in self.images)

    @property
    def exceptions(self) -> dict:
        """Exception table as an ordered map RayPoint -> RayPoint."""
        out = {}
        for i, ray in enumerate(self.images):
            for x, img in enumerate(ray):
                out[RayPoint(i + 1, x + 1)] = RayPoint(*img)
        return out

    def sort_key(self):
        if self._key is None:
            self._key = (self.translations, self.support_bounds, self.images)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, EventualInjection):
            return NotImplemented
        return (self._hash == other._hash and self.translations == other.translations
                and self.images == other.images)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"EventualInjection({encode(self)!r})"

    def __str__(self):
        return encode(self)

    def __call__(self, p) -> RayPoint:
        return apply(self, p)

    # -- cube complex moves ----------------------------------------------

    def up(self, i: int) -> "EventualInjection":
        """``t_i o self``: drops the image of (i,1) and shifts ray i back."""
        k = i - 1
        m = list(self.translations)
        m[k] += 1
        images = list(self.images)
        images[k] = self.images[k][1:]
        return EventualInjection(self.n, m, images, _trusted=True)

    def down(self, i: int, p: tuple) -> "EventualInjection":
        """The psi with ``t_i o psi = self`` and ``(i,1)psi = p``; p must be missing."""
        k = i - 1
        m = list(self.translations)
        m[k] -= 1
        images = list(self.images)
        ray = (RayPoint(*p),) + self.images[k]
        if len(ray) == 1 and p == (i, 1 + m[k]):
            ray = ()
        images[k] = ray
        return EventualInjection(self.n, m, images, _trusted=True)

    def missing_points(self) -> list:
        """Points of [n] x N outside the image, in lexicographic order."""
        hit = set()
        for ray in self.images:
            hit.update(ray)
        out = []
        for j in range(self.n):
            top = len(self.images[j]) + self.translations[j]
            for y in range(1, top + 1):
                if (j + 1, y) not in hit:
                    out.append(RayPoint(j + 1, y))
        return out


def _canonical_rays(n, translations, images):
    if len(translations) != n or len(images) != n:
        raise DimensionError(f"expected {n} rays, got {len(translations)} translations "
                             f"and {len(images)} exception rays")
    m = [int(a) for a in translations]
    rays = []
    for i, ray in enumerate(images):
        ray = [RayPoint(int(p[0]), int(p[1])) for p in ray]
        while ray and ray[-1] == (i + 1, len(ray) + m[i]):
            ray.pop()
        rays.append(tuple(ray))
    return m, rays


def _check_injective(n, m, rays):
    seen = set()
    for i, ray in enumerate(rays):
        b = len(ray)
        if b + 1 + m[i] < 1:
            raise ValueError(f"ray {i + 1}: translation {m[i]} sends position {b + 1} "
                             f"below 1; extend the exception table")
        for p in ray:
            if not (1 <= p.ray <= n) or p.pos < 1:
                raise ValueError(f"image {p} out of range")
            if p in seen:
                raise ValueError(f"not injective: {p} hit twice")
            seen.add(p)
            # the translated tail of ray p.ray covers positions > B + m
            if p.pos > len(rays[p.ray - 1]) + m[p.ray - 1]:
                raise ValueError(f"not injective: {p} collides with the translation "
                                 f"tail of ray {p.ray}")


# -- constructors ----------------------------------------------------------

def identity(n: int) -> EventualInjection:
    return EventualInjection(n, [0] * n, [()] * n, _trusted=True)


def _check_index(i, n):
    if not 1 <= i <= n:
        raise IndexError(f"ray index {i} not in [1..{n}]")


def generator_t(i: int, n: int) -> EventualInjection:
    _check_index(i, n)
    m = [0] * n
    m[i - 1] = 1
    return EventualInjection(n, m, [()] * n, _trusted=True)


def transposition_tau(i: int, n: int) -> EventualInjection:
    """The bijection swapping (i,1) and (i,2)."""
    _check_index(i, n)
    rays = [()] * n
    rays[i - 1] = (RayPoint(i, 2), RayPoint(i, 1))
    return EventualInjection(n, [0] * n, rays, _trusted=True)


def from_function(n: int, func, translations: Sequence[int], bound: int) -> EventualInjection:
    """Build from a callable on positions ``<= bound``; pure translation after."""
    rays = [[RayPoint(*func(RayPoint(i + 1, x))) for x in range(1, bound + 1)]
            for i in range(n)]
    return EventualInjection(n, translations, rays)


# -- operations ------------------------------------------------------------

def apply(phi: EventualInjection, p) -> RayPoint:
    i, x = p
    ray = phi.images[i - 1]
    if x <= len(ray):
        return ray[x - 1]
    return RayPoint(i, x + phi.translations[i - 1])


def compose(first: EventualInjection, second: EventualInjection) -> EventualInjection:
    """The map ``p -> second(first(p))``."""
    if first.n != second.n:
        raise DimensionError(f"cannot compose n={first.n} with n={second.n}")
    n = first.n
    m = [a + b for a, b in zip(first.translations, second.translations)]
    rays = []
    for i in range(n):
        # beyond this window first lands in the translated tail of second
        w = max(len(first.images[i]), len(second.images[i]) - first.translations[i], 0)
        rays.append([apply(second, apply(first, (i + 1, x))) for x in range(1, w + 1)])
    return EventualInjection(n, m, rays)


def deficiency_f(phi: EventualInjection) -> int:
    return sum(phi.translations)


def chi_component(phi: EventualInjection, i: int) -> int:
    _check_index(i, phi.n)
    return phi.translations[i - 1]


def is_bijection(phi: EventualInjection) -> bool:
    return deficiency_f(phi) == 0


def down_options(phi: EventualInjection, i: int) -> list:
    """All psi with ``phi = t_i o psi``, ordered by the chosen missing point."""
    _check_index(i, phi.n)
    return [phi.down(i, p) for p in phi.missing_points()]


def restrict_to_ray(phi: EventualInjection, i: int) -> tuple:
    """Finite description of phi on ray i: (translation, exception images)."""
    _check_index(i, phi.n)
    return phi.translations[i - 1], phi.images[i - 1]


# -- characters ------------------------------------------------------------

class Character:
    """Integer combination a_1 chi_1 + ... + a_n chi_n."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        if any(int(a) != a for a in coeffs):
            raise ValueError(f"character coefficients must be integers, got {list(coeffs)}")
        coeffs = tuple(int(a) for a in coeffs)
        if len(coeffs) < 1:
            raise DimensionError("character needs at least one coefficient")
        self.coeffs = coeffs

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return len(set(self.coeffs)) == 1

    def require_nonzero(self):
        if self.is_zero():
            raise ZeroCharacterError(f"{self.coeffs} is the zero character")
        return self

    def __eq__(self, other):
        return isinstance(other, Character) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Character({self.coeffs})"

    def __str__(self):
        return ",".join(map(str, self.coeffs))

    def __call__(self, phi):
        return chi_eval(self, phi)

    @classmethod
    def parse(cls, text: str) -> "Character":
        return cls([int(a) for a in text.split(",") if a.strip()])


def chi_eval(chi: Character, phi: EventualInjection) -> int:
    if chi.n != phi.n:
        raise DimensionError(f"character on {chi.n} rays applied to n={phi.n}")
    return sum(a * m for a, m in zip(chi.coeffs, phi.translations))


def standard_form(chi: Character) -> Character:
    chi.require_nonzero()
    top = max(chi.coeffs)
    return Character([a - top for a in chi.coeffs])


def ascending_standard_form(chi: Character):
    """Sorted standard form plus the stable sorting permutation.

    ``perm[k]`` is the (1-based) original ray that lands in position k+1.
    """
    std = standard_form(chi)
    perm = tuple(sorted(range(1, chi.n + 1), key=lambda i: std.coeffs[i - 1]))
    return Character([std.coeffs[i - 1] for i in perm]), perm


def m_of_chi(chi: Character) -> int:
    chi.require_nonzero()
    top = max(chi.coeffs)
    return sum(1 for a in chi.coeffs if a < top)


def sigma_complement_membership(chi: Character, m: int) -> bool:
    """True iff [chi] lies in the complement of Sigma^m(H_n)."""
    if not 1 <= m <= chi.n - 1:
        raise ValueError(f"m={m} outside [1..{chi.n - 1}]")
    return m_of_chi(chi) <= m


class MorseHeight(NamedTuple):
    chi_value: int
    f_value: int


def morse_height(chi: Character, phi: EventualInjection) -> MorseHeight:
    chi.require_nonzero()
    return MorseHeight(chi_eval(chi, phi), deficiency_f(phi))


# -- text encoding ---------------------------------------------------------

def encode(phi: EventualInjection) -> str:
    exc = ";".join(f"{k}->{v}" for k, v in phi.exceptions.items())
    return (f"n={phi.n}; m={','.join(map(str, phi.translations))}; "
            f"B={','.join(map(str, phi.support_bounds))}; exc={exc}")


_ENC = re.compile(r"^\s*n=(\d+);\s*m=([-\d,]*);\s*B=([\d,]*);\s*exc=(.*?)\s*$")
_EXC = re.compile(r"^\((\d+),(\d+)\)->\((\d+),(\d+)\)$")


def decode(text: str) -> EventualInjection:
    match = _ENC.match(text)
    if not match:
        raise ValueError(f"malformed injection encoding: {text!r}")
    n = int(match.group(1))
    m = [int(a) for a in match.group(2).split(",") if a]
    bounds = [int(a) for a in match.group(3).split(",") if a]
    if len(m) != n or len(bounds) != n:
        raise ValueError(f"expected {n} translations and bounds in {text!r}")
    table = {}
    for item in filter(None, (s.strip() for s in match.group(4).split(";"))):
        em = _EXC.match(item)
        if not em:
            raise ValueError(f"malformed exception {item!r}")
        a, b, c, d = map(int, em.groups())
        table[(a, b)] = RayPoint(c, d)
    rays = []
    for i in range(n):
        ray = []
        for x in range(1, bounds[i] + 1):
            if (i + 1, x) not in table:
                raise ValueError(f"missing exception for ({i + 1},{x}) in {text!r}")
            ray.append(table.pop((i + 1, x)))
        rays.append(ray)
    if table:
        raise ValueError(f"exceptions beyond declared bounds: {sorted(table)}")
    phi = EventualInjection(n, m, rays)
    if phi.support_bounds != tuple(bounds):
        raise ValueError(f"non-canonical support bounds {bounds} in {text!r}")
    return phi


def iter_window(phi: EventualInjection, width: int) -> Iterator[tuple]:
    """(point, image) pairs over [n] x [1..width]."""
    for i in range(1, phi.n + 1):
        for x in range(1, width + 1):
            yield (i, x), apply(phi, (i, x))
