import random

import pytest

from coverspec.permgroup import (
    closure,
    cyclic_product,
    dihedral,
    from_cycles,
    identity,
    inverse,
    mul,
    quaternion8,
    sym,
)
from coverspec.twistcore import (
    HomSpec,
    RankMismatch,
    TargetMismatch,
    TwistError,
    conjugacy_via_fixed_point,
    exhaustive_lemma_check,
    simultaneous_conjugator,
    twisted_action,
)

S3 = sym(3)


def hom(G, *cycle_lists):
    return HomSpec(G, tuple(from_cycles(G.degree, c) for c in cycle_lists))


def test_equal_maps_fix_identity():
    rng = random.Random(1)
    G = sym(4)
    for _ in range(20):
        u = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(rng.randint(0, 3))))
        act = twisted_action(u, u)
        assert G.index[G.identity] in act.common_fixed_points()


def test_s3_transpositions_conjugate():
    u, v = hom(S3, [(0, 1)]), hom(S3, [(0, 2)])
    act = twisted_action(u, v)
    fixed = act.fixed_points(0)
    a, b = u.images[0], v.images[0]
    expected = {i for i, x in enumerate(S3.elements) if mul(mul(x, b), inverse(x)) == a}
    assert fixed == expected and fixed
    x0 = conjugacy_via_fixed_point(u, v)
    assert mul(mul(x0, b), inverse(x0)) == a


def test_s3_transposition_vs_trivial():
    u, v = hom(S3, [(0, 1)]), hom(S3, [])
    assert not twisted_action(u, v).fixed_points(0)
    assert conjugacy_via_fixed_point(u, v) is None


def test_conjugate_by_construction():
    rng = random.Random(2)
    G = sym(4)
    for _ in range(30):
        u = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(2)))
        w = rng.choice(G.elements)
        v = u.conjugate(w)
        x0 = conjugacy_via_fixed_point(u, v)
        assert x0 is not None
        assert all(a == mul(mul(x0, b), inverse(x0)) for a, b in zip(u.images, v.images))


def test_s4_non_conjugate_pairs():
    G = sym(4)
    u = hom(G, [(0, 1)], [(0, 1, 2, 3)])
    v = hom(G, [(0, 1)], [(0, 2, 1, 3)])
    assert conjugacy_via_fixed_point(u, v) is None
    assert simultaneous_conjugator(u, v) is None


def test_rank_zero():
    u, v = HomSpec(S3, ()), HomSpec(S3, ())
    assert conjugacy_via_fixed_point(u, v) == S3.identity


def test_errors():
    with pytest.raises(RankMismatch):
        twisted_action(hom(S3, [(0, 1)]), HomSpec(S3, ()))
    with pytest.raises(TargetMismatch):
        twisted_action(hom(S3, [(0, 1)]), hom(sym(3), [(0, 1)]))
    with pytest.raises(TwistError):
        HomSpec(S3, ((1, 0, 2, 3),))


def test_parse():
    u = HomSpec.parse(S3, "[[[0, 1]], [[0, 1, 2]]]")
    assert u.rank == 2 and u.images[1] == (1, 2, 0)


def test_trivial_v_is_left_multiplication():
    rng = random.Random(4)
    G = dihedral(4)
    for _ in range(20):
        u = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(2)))
        v = HomSpec(G, (identity(G.degree),) * 2)
        act = twisted_action(u, v)
        for k, a in enumerate(u.images):
            assert act.table[k] == tuple(G.index[mul(a, x)] for x in G.elements)


def test_action_is_bijection():
    rng = random.Random(5)
    G = quaternion8()
    for _ in range(20):
        u = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(2)))
        v = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(2)))
        for perm in twisted_action(u, v).table:
            assert sorted(perm) == list(range(G.order))


def _image_order(u, v):
    """Order of the subgroup of G x G generated by the pairs (u(x_i), v(x_i))."""
    n = u.target.degree
    gens = [a + tuple(n + y for y in b) for a, b in zip(u.images, v.images)]
    return len(closure(2 * n, gens))


@pytest.mark.parametrize("make", [lambda: sym(3), lambda: sym(4), lambda: dihedral(4), quaternion8])
def test_orbit_sizes_divide_image_order(make):
    G = make()
    rng = random.Random(6)
    for _ in range(40):
        s = rng.randint(1, 2)
        u = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(s)))
        v = HomSpec(G, tuple(rng.choice(G.elements) for _ in range(s)))
        m = _image_order(u, v)
        for orbit in twisted_action(u, v).orbits():
            assert m % len(orbit) == 0


def test_orbit_sizes_need_not_divide_group_order():
    # u = ((01), e), v = (e, (02)) in S3: the image in S3 x S3 has order 4
    u = HomSpec(S3, (from_cycles(3, [(0, 1)]), S3.identity))
    v = HomSpec(S3, (S3.identity, from_cycles(3, [(0, 2)])))
    sizes = sorted(len(o) for o in twisted_action(u, v).orbits())
    assert sizes == [2, 4]
    assert S3.order % 4 != 0
    assert _image_order(u, v) == 4


@pytest.mark.parametrize("make", [lambda: sym(3), lambda: dihedral(4), quaternion8,
                                  lambda: cyclic_product([2, 2])])
def test_exhaustive_lemma(make):
    res = exhaustive_lemma_check(make(), max_rank=2)
    assert res.mismatches == 0
    assert res.conjugate_pairs > 0


def test_exhaustive_lemma_unpruned_s3():
    res = exhaustive_lemma_check(sym(3), max_rank=2, prune=False)
    assert res.mismatches == 0
    assert res.pairs == 1 + 36 + 36 ** 2


@pytest.mark.slow
def test_exhaustive_lemma_s4():
    res = exhaustive_lemma_check(sym(4), max_rank=2)
    assert res.mismatches == 0
