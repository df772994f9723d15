import random

import pytest

from jsjsplit import FreeProductSignature, SeifertSymbol, malnormality_certificate


def sig_disk_cones(orders):
    return FreeProductSignature(0, 1, orders)


def test_signature_from_symbol():
    sig = FreeProductSignature.from_symbol(SeifertSymbol.parse("S(0,3;(2,1))"))
    assert sig.free_rank == 2  # d1, d2
    assert sig.torsion_orders == (2,)
    sig = FreeProductSignature.from_symbol(SeifertSymbol.parse("S(-2,1;(3,1))"))
    assert sig.free_rank == 2  # a1, a2
    assert sig.torsion_orders == (3,)
    sig = FreeProductSignature.from_symbol(SeifertSymbol.parse("S(1,2;)"))
    assert sig.free_names == ("a1", "b1", "d1")


def test_never_z2_star_z2_for_hyperbolic_bases(rng):
    from conftest import random_symbol
    from jsjsplit import GeometryClass, base_orbifold, geometry_class

    for _ in range(300):
        s = random_symbol(rng, allow_closed=False)
        if geometry_class(base_orbifold(s)) is GeometryClass.HYPERBOLIC:
            sig = FreeProductSignature.from_symbol(s)
            assert not (sig.free_rank == 0 and sig.torsion_orders == (2, 2))


def test_normal_form_examples():
    sig = sig_disk_cones([2])  # Z_2, no free part besides nothing (h=1)
    assert sig.word("c1^3") == sig.word("c1")
    sig2 = FreeProductSignature(1, 1)
    assert sig2.word("a1 a1^-1") == ()
    # c1 c1 = 1 collapses the middle, the d-letters merge into one syllable
    sig3 = FreeProductSignature(0, 3, [2])
    w = sig3.word("d1 c1 c1 d1")
    assert w == sig3.word("d1^2")
    assert sig3.syllable_length(w) == 1


def test_multiply_invert():
    sig = FreeProductSignature(0, 3, [5])
    d1 = sig.generator("d1")
    assert sig.multiply(d1, sig.invert(d1)) == ()
    u = sig.word("a1 c1") if sig.free_rank > 2 else sig.word("d1 c1")
    assert sig.multiply(u, sig.invert(u)) == ()
    assert sig.invert(sig.word("d1 c1")) == sig.word("c1^4 d1^-1")
    c = sig.generator("c1")
    assert sig.multiply(c, sig.power(c, 4)) == ()


def test_syllable_length():
    sig = FreeProductSignature(0, 3, [2, 3])
    assert sig.syllable_length(sig.identity()) == 0
    assert sig.syllable_length(sig.word("c1 d1 c2")) == 3
    assert sig.syllable_length(sig.word("d1 d2")) == 1


def test_orientation_character():
    sig = FreeProductSignature(-1, 2, [2])
    assert sig.orientation_character(sig.generator("a1")) == -1
    assert sig.orientation_character(sig.word("c1 d1")) == 1
    assert sig.orientation_character(sig.word("a1^2")) == 1
    rng = random.Random(7)
    letters = ["a1", "d1", "c1"]
    for _ in range(100):
        u = sig.word(" ".join(rng.choice(letters) for _ in range(rng.randint(0, 8))))
        v = sig.word(" ".join(rng.choice(letters) for _ in range(rng.randint(0, 8))))
        assert sig.orientation_character(sig.multiply(u, v)) == (
            sig.orientation_character(u) * sig.orientation_character(v)
        )


def test_substitute_dh():
    degenerate = FreeProductSignature(0, 1)
    assert degenerate.degenerate
    assert degenerate.substitute_dh() == ()

    sig = FreeProductSignature(0, 2, [2])  # relation c1 d1 d2 = 1
    assert sig.substitute_dh() == sig.word([("d1", -1), ("c1", -1)])

    sig2 = FreeProductSignature(1, 1)  # relation [a1,b1] d1 = 1
    assert sig2.substitute_dh() == sig2.word("b1 a1 b1^-1 a1^-1")


def test_word_accepts_eliminated_generator():
    sig = FreeProductSignature(0, 2, [2])
    assert sig.word("d2") == sig.substitute_dh()
    assert sig.multiply(sig.word("c1 d1"), sig.word("d2")) == ()


def test_in_cyclic_subgroup():
    sig = FreeProductSignature(0, 3, [2])
    d1 = sig.generator("d1")
    assert sig.in_cyclic_subgroup(sig.power(d1, 3), d1) == 3
    assert sig.in_cyclic_subgroup(sig.word("c1 d1"), d1) is None
    dh = sig.substitute_dh()
    assert sig.in_cyclic_subgroup(sig.power(dh, 2), dh) == 2
    assert sig.in_cyclic_subgroup(sig.identity(), d1) == 0
    assert sig.in_cyclic_subgroup(sig.power(d1, -4), d1) == -4
    with pytest.raises(ValueError):
        sig.in_cyclic_subgroup(d1, sig.identity())
    with pytest.raises(ValueError):
        sig.in_cyclic_subgroup(d1, sig.generator("c1"))
    # conjugated torsion still has finite order
    with pytest.raises(ValueError):
        sig.in_cyclic_subgroup(d1, sig.word("d1 c1 d1^-1"))


def test_in_cyclic_subgroup_conjugated_core():
    sig = FreeProductSignature(0, 3, [2])
    u = sig.word("d1 d2 c1 d1^-1")  # z = d1, core = d2 c1
    for m in (-3, -1, 0, 1, 2, 5):
        assert sig.in_cyclic_subgroup(sig.power(u, m), u) == m
    assert sig.in_cyclic_subgroup(sig.word("d2"), u) is None
    # single-syllable core with internal conjugation: d1 d2^2 d1^-1
    v = sig.word("d1 d2^2 d1^-1")
    for m in (-2, 1, 3):
        assert sig.in_cyclic_subgroup(sig.power(v, m), v) == m
    assert sig.in_cyclic_subgroup(sig.word("d1 d2 d1^-1"), v) is None


def test_unique_roots_small():
    sig = FreeProductSignature(0, 3, [2])
    candidates = sig.ball(3)
    d1 = sig.generator("d1")
    w = sig.power(d1, 2)
    roots = [u for u in candidates if not sig.has_finite_order(u) and u and sig.power(u, 2) == w]
    assert roots == [d1]


def test_associativity_random():
    sig = FreeProductSignature(-1, 2, [3])
    rng = random.Random(11)
    letters = ["a1", "d1", "c1", "a1^-1", "d1^-1", "c1^-1"]
    for _ in range(200):
        u, v, w = (
            sig.word(" ".join(rng.choice(letters) for _ in range(rng.randint(0, 10))))
            for _ in range(3)
        )
        assert sig.multiply(sig.multiply(u, v), w) == sig.multiply(u, sig.multiply(v, w))


def test_conjugate_cores_match():
    # conjugate words have the same cyclically reduced core up to rotation
    sig = FreeProductSignature(0, 3, [2])
    rng = random.Random(13)
    letters = ["d1", "d2", "c1", "d1^-1", "d2^-1"]
    for _ in range(60):
        u = sig.word(" ".join(rng.choice(letters) for _ in range(rng.randint(1, 6))))
        g = sig.word(" ".join(rng.choice(letters) for _ in range(rng.randint(0, 6))))
        _, core_u = sig.cyclic_decompose(u)
        _, core_g = sig.cyclic_decompose(sig.conjugate(u, g))
        assert len(core_u) == len(core_g)


def test_ball_deterministic():
    sig = FreeProductSignature(0, 3, [2])
    assert sig.ball(2) == sig.ball(2)
    assert sig.ball(0) == [()]
    assert () in sig.ball(1)


def test_malnormality_certificate_disk_three_boundaries():
    sig = FreeProductSignature(0, 3)  # pi_1^orb of S(0,3;): F_2 = <d1, d2>
    d1 = sig.generator("d1")
    cert = malnormality_certificate(sig, d1, radius=3)
    assert cert.passed
    assert any(hit.conjugator == "1" for hit in cert.hits)
    assert all(hit.target == "d1" for hit in cert.hits)
    # d3 = (d1 d2)^-1 is the substituted boundary word
    d3 = sig.substitute_dh()
    cert3 = malnormality_certificate(sig, d3, radius=3)
    assert cert3.passed


def test_malnormality_certificate_rejects_non_boundary():
    sig = FreeProductSignature(0, 3)
    with pytest.raises(ValueError):
        malnormality_certificate(sig, sig.word("d1^2"), radius=2)
