"""Surface points, automorphism words, distance, reduction."""

import random

import pytest

from markoff_padic.chebyshev import companion_power
from markoff_padic.padic import PadicInt
from markoff_padic.surface import (
    ALL_LETTERS,
    AutWord,
    SurfacePoint,
    apply_generator,
    apply_word,
    dist,
    eval_P,
    is_point,
    lift_point,
    point,
    reduce_point,
)


def _padic(p, k, v):
    return PadicInt(p, k, v)


def _random_points(p, k, D, n, seed):
    """Sample valid points by lifting brute-found mod-p triples."""
    rng = random.Random(seed)
    found = []
    for x in range(p):
        for y in range(p):
            for z in range(p):
                if (x * x + y * y + z * z - x * y * z - D) % p == 0:
                    if (2 * x - y * z) % p or (2 * y - x * z) % p or (2 * z - x * y) % p:
                        found.append((x, y, z))
    rng.shuffle(found)
    return [lift_point(t, D, p, k) for t in found[:n]]


def test_eval_P_examples():
    p, k = 7, 3
    assert eval_P(_padic(p, k, 3), _padic(p, k, 3), _padic(p, k, 3)).residue == 0
    assert eval_P(_padic(p, k, 1), _padic(p, k, 1), _padic(p, k, 1)).residue == 2
    assert eval_P(_padic(p, k, 0), _padic(p, k, 0), _padic(p, k, 0)).residue == 0


def test_is_point_examples():
    p, k = 7, 2
    D = _padic(p, k, 0)
    triple = (_padic(p, k, 3), _padic(p, k, 3), _padic(p, k, 3))
    assert is_point(triple, D)
    origin = (_padic(p, k, 0), _padic(p, k, 0), _padic(p, k, 0))
    assert not is_point(origin, D)  # singular
    ones = (_padic(p, k, 1), _padic(p, k, 1), _padic(p, k, 1))
    assert not is_point(ones, D)  # equation fails


def test_generator_examples():
    pt = point(3, 3, 3, 0, 7, 3)
    assert apply_generator("sx", pt).residues() == (6, 3, 3)
    pt2 = point(1, 2, 3, 1 + 4 + 9 - 6, 7, 3)
    img = apply_generator("ex", pt2)
    assert img.residues() == (1, (-2) % 343, (-3) % 343)
    assert apply_generator("sx", apply_generator("sx", pt)).residues() == pt.residues()


def test_generators_preserve_equation_and_nonsingularity():
    for pt in _random_points(7, 3, 0, 10, seed=3) + _random_points(5, 3, 3, 5, seed=4):
        value = eval_P(*pt.coords())
        for g in ALL_LETTERS:
            img = apply_generator(g, pt).validate()
            assert eval_P(*img.coords()) == value


def test_word_composition_matches_companion_square():
    # the word (sy, sz) acts on (y, z) by C(x)^2
    for pt in _random_points(7, 3, 0, 8, seed=9):
        img = apply_word(AutWord(("sy", "sz")), pt)
        m = companion_power(pt.x, 2)
        wy, wz = m.apply((pt.y, pt.z))
        assert img.x == pt.x and img.y == wy and img.z == wz


def test_free_reduction_and_empty_word():
    pt = point(3, 3, 3, 0, 7, 3)
    assert apply_word(AutWord(()), pt).residues() == pt.residues()
    w = AutWord(("sx", "sx", "sy"))
    assert w.letters == ("sy",)
    assert apply_word(w, pt).residues() == apply_word(AutWord(("sy",)), pt).residues()


def test_word_text_roundtrip_and_inverse():
    w = AutWord.parse("sx sy pxy ez sz")
    assert str(w) == "sx sy pxy ez sz"
    assert AutWord.parse(str(w)) == w
    pt = point(3, 3, 3, 0, 7, 4)
    back = apply_word(w.inverse(), apply_word(w, pt))
    assert back.residues() == pt.residues()


def test_gamma_only_flag_and_rejection():
    assert AutWord(("sx", "sy")).gamma_only
    w = AutWord(("sx", "pxy"))
    assert not w.gamma_only
    pt = point(3, 3, 3, 0, 7, 3)
    with pytest.raises(ValueError, match="Vieta"):
        apply_word(w, pt, gamma_only=True)


def test_word_power_and_unknown_letter():
    assert AutWord(("sy", "sz")).power(3).letters == ("sy", "sz") * 3
    with pytest.raises(ValueError, match="unknown generator"):
        AutWord(("qq",))


def test_dist_classes():
    p, k = 7, 3
    a = point(3, 3, 3, 0, p, k)
    assert str(dist(a, a)) == "<=p^-3"
    assert dist(a, a).indistinguishable
    b = apply_generator("sx", a)  # (6,3,3): differs at digit 0
    assert dist(a, b).exponent == 0 and str(dist(a, b)) == "1"


def test_dist_ultrametric_and_isometry():
    rng = random.Random(11)
    pts = _random_points(7, 3, 0, 12, seed=21)
    for _ in range(40):
        a, b, c = rng.choice(pts), rng.choice(pts), rng.choice(pts)
        assert dist(a, c).exponent >= min(dist(a, b).exponent, dist(b, c).exponent)
    letters = list(ALL_LETTERS)
    for _ in range(40):
        a, b = rng.choice(pts), rng.choice(pts)
        w = AutWord(tuple(rng.choice(letters) for _ in range(rng.randrange(7))))
        assert dist(apply_word(w, a), apply_word(w, b)).exponent == dist(a, b).exponent


def test_dist_class_ordering():
    from markoff_padic.surface import DistClass

    d0, d1, dk = DistClass(0, 3), DistClass(1, 3), DistClass(3, 3)
    assert dk < d1 < d0
    assert sorted([d0, dk, d1]) == [dk, d1, d0]


def test_reduce_examples_and_word_commutation():
    p, k = 7, 2
    pt = point(3, 3, 3, 0, p, k)
    assert reduce_point(pt, 2) == pt.residues()
    lifted = lift_point((1, 4, 1), 0, 7, 2)
    assert reduce_point(lifted, 1) == (1, 4, 1)
    with pytest.raises(ValueError, match="exceeds"):
        reduce_point(pt, 3)
    rng = random.Random(77)
    pts = _random_points(7, 3, 0, 10, seed=31)
    letters = list(ALL_LETTERS)
    for _ in range(100):
        a = rng.choice(pts)
        w = AutWord(tuple(rng.choice(letters) for _ in range(rng.randrange(6))))
        img = apply_word(w, a)
        # reduction commutes with the action: generators are integer maps
        low = lift_point(reduce_point(a, 1), 0, 7, 1)
        assert reduce_point(img, 1) == reduce_point(apply_word(w, low), 1)


def test_lift_point_validates_and_respects_solved():
    pt = lift_point((1, 4, 1), 0, 7, 4, solved="x")
    assert pt.residues(1) == (1, 4, 1)
    assert eval_P(*pt.coords()).residue == 0
    with pytest.raises(ValueError, match="singular"):
        lift_point((0, 0, 0), 0, 7, 2)


def test_generator_orders():
    pt = point(3, 3, 3, 0, 7, 3)
    for g in ALL_LETTERS:
        twice = apply_generator(g, apply_generator(g, pt))
        assert twice.residues() == pt.residues()
