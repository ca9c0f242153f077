import itertools

import pytest

from coverspec.permgroup import (
    alt,
    cyclic_product,
    dihedral,
    from_cycles,
    inverse,
    mul,
    quaternion8,
    sym,
)
from coverspec.ret import SearchCapExceeded, all_tuples, find_tuple, is_valid_tuple, nielsen_count, search


def c1(n, cycles):
    return from_cycles(n, [[x - 1 for x in c] for c in cycles])


def brute_nielsen(G, class_ids):
    """Full product over all classes, canonical form = least conjugate."""
    pools = [[G.elements[j] for j in G.classes[c].members] for c in class_ids]
    canon = set()
    for gs in itertools.product(*pools):
        prod = G.identity
        for g in gs:
            prod = mul(prod, g)
        if prod != G.identity or not G.generates(list(gs)):
            continue
        canon.add(min(tuple(mul(mul(inverse(x), g), x) for g in gs) for x in G.elements))
    return len(canon)


def test_a4_standard_tuple():
    G = alt(4)
    gs = [c1(4, [(1, 2), (3, 4)]), c1(4, [(1, 2, 3)]), c1(4, [(2, 3, 4)])]
    ids = [G.class_of(g) for g in gs]
    assert is_valid_tuple(G, gs, ids)
    res = find_tuple(G, ids)
    assert res.found is not None and is_valid_tuple(G, res.found, ids)


def test_s4_standard_tuple_rigid():
    G = sym(4)
    gs = [c1(4, [(1, 2)]), c1(4, [(2, 3, 4)]), c1(4, [(4, 3, 2, 1)])]
    ids = [G.class_of(g) for g in gs]
    assert is_valid_tuple(G, gs, ids)
    assert nielsen_count(G, ids) == 1


def test_a5_standard_tuple_rigid():
    G = alt(5)
    gs = [c1(5, [(1, 5), (3, 4)]), c1(5, [(1, 2, 4)]), c1(5, [(5, 4, 3, 2, 1)])]
    ids = [G.class_of(g) for g in gs]
    assert is_valid_tuple(G, gs, ids)
    res = search(G, ids, count=True)
    assert res.nielsen_count == 1


def test_klein_rigid():
    G = cyclic_product([2, 2])
    ids = [c.id for c in G.classes if c.element_order == 2]
    assert nielsen_count(G, ids) == 1


def test_z5_no_tuple():
    G = cyclic_product([5])
    # the class of the residue 2
    two = G.class_of(tuple((i + 2) % 5 for i in range(5)))
    res = search(G, [two] * 3, count=True)
    assert res.found is None and res.nielsen_count == 0


def test_invalid_tuples_rejected():
    G = sym(4)
    gs = [c1(4, [(1, 2)]), c1(4, [(2, 3, 4)]), c1(4, [(4, 3, 2, 1)])]
    ids = [G.class_of(g) for g in gs]
    assert not is_valid_tuple(G, gs[:2], ids[:2])
    assert not is_valid_tuple(G, [gs[1], gs[0], gs[2]], ids)
    # product one but not generating
    t = c1(4, [(1, 2)])
    assert not is_valid_tuple(G, [t, t], [G.class_of(t)] * 2)


CASES = [
    ("S3", lambda: sym(3), ["[2^1,1^1]", "[2^1,1^1]", "[3^1]"]),
    ("S3x4", lambda: sym(3), ["[2^1,1^1]"] * 4),
    ("S4", lambda: sym(4), ["[2^1,1^2]", "[3^1,1^1]", "[4^1]"]),
    ("S4b", lambda: sym(4), ["[2^1,1^2]", "[2^1,1^2]", "[2^1,1^2]", "[3^1,1^1]"]),
    ("A4", lambda: alt(4), ["[2^2]", "[3^1,1^1]A", "[3^1,1^1]A"]),
    ("D8", lambda: dihedral(4), ["2B", "2C", "4A"]),
    ("D10", lambda: dihedral(5), ["2A", "2A", "5A"]),
    ("Q8", quaternion8, ["4A", "4B", "4C"]),
]


@pytest.mark.parametrize("name,make,names", CASES, ids=[c[0] for c in CASES])
def test_nielsen_count_matches_brute_force(name, make, names):
    G = make()
    ids = [G.class_by_name(n).id for n in names]
    assert nielsen_count(G, ids) == brute_nielsen(G, ids)


@pytest.mark.parametrize("name,make,names", CASES, ids=[c[0] for c in CASES])
def test_found_tuples_are_valid(name, make, names):
    G = make()
    ids = [G.class_by_name(n).id for n in names]
    res = find_tuple(G, ids)
    if res.found is not None:
        assert is_valid_tuple(G, res.found, ids)
    for gs in all_tuples(G, ids):
        assert is_valid_tuple(G, gs, ids)
    assert (res.found is not None) == bool(all_tuples(G, ids))


@pytest.mark.parametrize("name,make,names", [c for c in CASES if len(c[2]) == 3],
                         ids=[c[0] for c in CASES if len(c[2]) == 3])
def test_cyclic_rotation_preserves_count(name, make, names):
    G = make()
    ids = [G.class_by_name(n).id for n in names]
    rotated = ids[1:] + ids[:1]
    assert nielsen_count(G, ids) == nielsen_count(G, rotated)


@pytest.mark.parametrize("orders", [[6], [2, 2], [2, 4], [3, 3]])
def test_abelian_counts(orders):
    G = cyclic_product(orders)
    nt = [c.id for c in G.classes if c.element_order > 1]
    for r in (2, 3):
        for ids in itertools.product(nt, repeat=r):
            gs = [G.classes[c].representative for c in ids]
            prod = G.identity
            for g in gs:
                prod = mul(prod, g)
            expected = int(prod == G.identity and G.generates(gs))
            assert nielsen_count(G, list(ids)) == expected


def test_search_cap():
    G = sym(6)
    ids = [G.class_by_name("[2^1,1^4]").id] * 6
    with pytest.raises(SearchCapExceeded):
        find_tuple(G, ids, cap=1000)


def test_argument_checks():
    G = sym(3)
    with pytest.raises(ValueError):
        find_tuple(G, [1])
    with pytest.raises(ValueError):
        find_tuple(G, [0, 1])
