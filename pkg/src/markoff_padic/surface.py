"""Points of the nonsingular Markoff surface over Z/p^K, and its automorphisms.

The surface is P(x, y, z) = x^2 + y^2 + z^2 - xyz = D with the singular
locus removed: at least one of 2x-yz, 2y-xz, 2z-xy must be a unit mod p.
Automorphisms are generated by the three Vieta involutions, the three
double sign changes, and the three coordinate transpositions; a word
[g1, g2, ..., gn] acts as the composition g1 o g2 o ... o gn (the rightmost
letter is applied first), so the word ("sy", "sz") is the map s_y s_z that
multiplies (y, z) by C(x)^2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering

from .padic import PadicInt

VIETA_LETTERS = ("sx", "sy", "sz")
SIGN_LETTERS = ("ex", "ey", "ez")
PERM_LETTERS = ("pxy", "pyz", "pzx")
ALL_LETTERS = VIETA_LETTERS + SIGN_LETTERS + PERM_LETTERS


@dataclass(frozen=True)
class SurfacePoint:
    """A triple on the surface, with the parameter D it satisfies."""

    x: PadicInt
    y: PadicInt
    z: PadicInt
    D: PadicInt

    @property
    def prime(self) -> int:
        return self.x.prime

    @property
    def precision(self) -> int:
        return min(c.precision for c in (self.x, self.y, self.z, self.D))

    def coords(self) -> tuple[PadicInt, PadicInt, PadicInt]:
        return (self.x, self.y, self.z)

    def partials(self) -> tuple[PadicInt, PadicInt, PadicInt]:
        """(dP/dx, dP/dy, dP/dz) = (2x-yz, 2y-xz, 2z-xy) at the point."""
        x, y, z = self.x, self.y, self.z
        return (x + x - y * z, y + y - x * z, z + z - x * y)

    def validate(self) -> "SurfacePoint":
        """Raise unless the equation and nonsingularity invariants hold."""
        if not eval_P(self.x, self.y, self.z).congruent_to(self.D):
            raise ValueError("point does not satisfy the surface equation")
        if not any(d.is_unit() for d in self.partials()):
            raise ValueError("point is singular mod p")
        return self

    def residues(self, level: int | None = None) -> tuple[int, int, int]:
        k = level if level is not None else self.precision
        return tuple(c.residue_mod(k) for c in (self.x, self.y, self.z))


def eval_P(x: PadicInt, y: PadicInt, z: PadicInt) -> PadicInt:
    """x^2 + y^2 + z^2 - xyz at the shared precision."""
    return x * x + y * y + z * z - x * y * z


def point(x: int, y: int, z: int, D: int, p: int, k: int) -> SurfacePoint:
    """Build and validate a point from integer residues."""
    mk = lambda v: v if isinstance(v, PadicInt) else PadicInt(p, k, v)
    return SurfacePoint(mk(x), mk(y), mk(z), mk(D)).validate()


def is_point(triple, D) -> bool:
    """True iff the triple satisfies both surface invariants."""
    x, y, z = triple
    if not eval_P(x, y, z).congruent_to(D):
        return False
    pt = SurfacePoint(x, y, z, D)
    return any(d.is_unit() for d in pt.partials())


def apply_generator(letter: str, pt: SurfacePoint) -> SurfacePoint:
    """Image of pt under one generator; the equation value is preserved."""
    x, y, z = pt.x, pt.y, pt.z
    if letter == "sx":
        return SurfacePoint(y * z - x, y, z, pt.D)
    if letter == "sy":
        return SurfacePoint(x, x * z - y, z, pt.D)
    if letter == "sz":
        return SurfacePoint(x, y, x * y - z, pt.D)
    if letter == "ex":
        return SurfacePoint(x, -y, -z, pt.D)
    if letter == "ey":
        return SurfacePoint(-x, y, -z, pt.D)
    if letter == "ez":
        return SurfacePoint(-x, -y, z, pt.D)
    if letter == "pxy":
        return SurfacePoint(y, x, z, pt.D)
    if letter == "pyz":
        return SurfacePoint(x, z, y, pt.D)
    if letter == "pzx":
        return SurfacePoint(z, y, x, pt.D)
    raise ValueError(f"unknown generator letter {letter!r}")


def free_reduce(letters) -> tuple[str, ...]:
    """Cancel adjacent equal letters (every generator is an involution)."""
    out: list[str] = []
    for g in letters:
        if g not in ALL_LETTERS:
            raise ValueError(f"unknown generator letter {g!r}")
        if out and out[-1] == g:
            out.pop()
        else:
            out.append(g)
    return tuple(out)


@dataclass(frozen=True)
class AutWord:
    """A freely reduced word in the automorphism generators."""

    letters: tuple[str, ...]

    def __init__(self, letters=()):
        object.__setattr__(self, "letters", free_reduce(letters))

    @property
    def gamma_only(self) -> bool:
        return all(g in VIETA_LETTERS for g in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "AutWord") -> "AutWord":
        return AutWord(self.letters + other.letters)

    def inverse(self) -> "AutWord":
        return AutWord(tuple(reversed(self.letters)))

    def power(self, n: int) -> "AutWord":
        if n < 0:
            return self.inverse().power(-n)
        return AutWord(self.letters * n)

    def __str__(self) -> str:
        return " ".join(self.letters)

    @staticmethod
    def parse(text: str) -> "AutWord":
        return AutWord(tuple(text.split()))


def apply_word(word: AutWord, pt: SurfacePoint, gamma_only: bool = False) -> SurfacePoint:
    """Apply a word to a point, rightmost letter first."""
    if gamma_only and not word.gamma_only:
        raise ValueError("word is not in the Vieta subgroup")
    for g in reversed(word.letters):
        pt = apply_generator(g, pt)
    return pt


@total_ordering
@dataclass(frozen=True)
class DistClass:
    """The l-infinity distance class p^{-exponent}, discrete at precision.

    exponent == precision means the points are indistinguishable at the
    working precision (distance <= p^{-K}); classes compare by actual
    distance, so a smaller exponent is a larger distance.
    """

    exponent: int
    precision: int

    def __str__(self) -> str:
        if self.exponent >= self.precision:
            return f"<=p^-{self.precision}"
        if self.exponent == 0:
            return "1"
        return f"p^-{self.exponent}"

    @property
    def indistinguishable(self) -> bool:
        return self.exponent >= self.precision

    def __lt__(self, other: "DistClass") -> bool:
        return self.exponent > other.exponent


def dist(a: SurfacePoint, b: SurfacePoint) -> DistClass:
    """max of coordinatewise p-adic absolute differences, as a class."""
    if a.prime != b.prime:
        raise ValueError("prime mismatch")
    if not a.D.congruent_to(b.D):
        raise ValueError("points lie on different surfaces")
    v = min(
        (ca - cb).valuation() for ca, cb in zip(a.coords(), b.coords())
    )
    k = min(a.precision, b.precision)
    return DistClass(min(v, k), k)


def reduce_point(pt: SurfacePoint, level: int) -> tuple[int, int, int]:
    """Coordinatewise reduction modulo p^level."""
    if level > pt.precision:
        raise ValueError(f"level {level} exceeds precision {pt.precision}")
    return pt.residues(level)


def lift_point(triple, D, p: int, k: int, solved: str | None = None) -> SurfacePoint:
    """Hensel-lift a mod-p point to an exact point at precision k.

    Two coordinates keep their integer representatives; the remaining one
    (the first with a unit partial derivative, unless ``solved`` names it)
    is refined by Newton so the equation holds modulo p^k.
    """
    from .padic import newton_solve

    if isinstance(D, int):
        D = PadicInt(p, k, D)
    x, y, z = (PadicInt(p, k, int(c)) for c in triple)
    partials = SurfacePoint(x, y, z, D).partials()
    names = ("x", "y", "z")
    if solved is None:
        units = [n for n, d in zip(names, partials) if d.is_unit()]
        if not units:
            raise ValueError("point is singular mod p")
        solved = units[0]
    coords = {"x": x, "y": y, "z": z}
    others = [coords[n] for n in names if n != solved]
    rest = others[0] * others[0] + others[1] * others[1] - D
    coords[solved] = newton_solve([rest, -others[0] * others[1], 1], coords[solved])
    return SurfacePoint(coords["x"], coords["y"], coords["z"], D).validate()
