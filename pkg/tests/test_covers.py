import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coverspec.classtable import ClassTuple, TableMismatch, from_group, monster_snippet
from coverspec.covers import (
    DuplicateBranchPoints,
    GenusSideConditionViolated,
    NegativeGenus,
    NonIntegralGenus,
    RamificationData,
    classify_indices,
    epsilon_of,
    genus_from_indices,
    invariants_prec,
    ramification_from_json,
    rh_invariants,
    strict_growth,
)
from coverspec.permgroup import dihedral, sym

MONSTER_ORDER = 808017424794512875886459904961710757005754368000000000

TRIANGLES = {(2, 2, 2), (2, 3, 3), (2, 3, 4), (2, 3, 5)}


def rh_sum(d, e):
    """2g - 2 = -2d + sum over branch points of (d - d/e_i)."""
    total = -2 * d + sum(d - d // x for x in e)
    assert total % 2 == 0
    return total // 2 + 1


# -- genus --------------------------------------------------------------------

def test_icosahedral():
    assert epsilon_of([2, 3, 5]) == Fraction(31, 30)
    assert genus_from_indices(60, [2, 3, 5]) == 0
    assert classify_indices(60, [2, 3, 5]).group == "A5"


def test_dihedral_genus_zero():
    assert genus_from_indices(10, [2, 2, 5]) == 0
    assert classify_indices(10, [2, 2, 5]).name == "dihedral"


def test_d10_four_involutions_genus_one():
    assert genus_from_indices(10, [2, 2, 2, 2]) == 1
    assert rh_sum(10, [2, 2, 2, 2]) == 1


def test_genus_errors():
    with pytest.raises(NonIntegralGenus):
        genus_from_indices(7, [2, 3])
    with pytest.raises(NegativeGenus):
        genus_from_indices(12, [2, 2])


@settings(max_examples=300)
@given(st.lists(st.integers(2, 12), min_size=0, max_size=6), st.integers(1, 8))
def test_genus_matches_direct_sum(e, k):
    d = math.lcm(*e, 1) * k
    try:
        g = genus_from_indices(d, e)
    except (NonIntegralGenus, NegativeGenus):
        return
    assert g == rh_sum(d, e)


# -- genus-0 classification ------------------------------------------------------

@pytest.mark.parametrize("d,e,name", [
    (4, [2, 2, 2], "klein"),
    (12, [3, 2, 3], "tetrahedral"),
    (24, [2, 3, 4], "octahedral"),
    (60, [5, 3, 2], "icosahedral"),
    (7, [7, 7], "cyclic"),
    (12, [6, 2, 2], "dihedral"),
    (1, [], "trivial"),
])
def test_classify_examples(d, e, name):
    assert classify_indices(d, e).name == name


def test_classify_none_for_positive_genus():
    assert classify_indices(10, [2, 2, 2, 2]) is None
    assert classify_indices(120, [2, 3, 5]) is None


def _expected(d, e):
    es = tuple(sorted(e))
    if len(es) == 2:
        return es[0] == es[1] == d
    if len(es) == 3:
        return es in TRIANGLES or (es[:2] == (2, 2) and es[2] >= 3)
    return False


def test_classify_exhaustive():
    """Every e-tuple with r <= 4 and entries <= 12, at the unique d giving genus 0."""
    hits = 0
    for r in range(1, 5):
        for e in itertools.combinations_with_replacement(range(2, 13), r):
            denom = 2 + epsilon_of(e) - r
            if denom <= 0:
                continue
            d = Fraction(2) / denom
            if d.denominator != 1:
                continue
            if any(int(d) % x for x in e):
                assert classify_indices(int(d), e) is None
                continue
            d = int(d)
            got = classify_indices(d, e)
            assert (got is not None) == _expected(d, e), (d, e)
            hits += got is not None
            # any other group order gives positive genus or no cover at all
            assert classify_indices(2 * d, e) is None
    # 11 cyclic + 4 triangles + 10 dihedral
    assert hits == 11 + 4 + 10


# -- ramification data ----------------------------------------------------------

def test_ramification_json_round_trip():
    data = {"group": {"kind": "sym", "n": 6}, "classes": ["[6^1]", "[5^1,1^1]"],
            "branch_points": ["0", "inf"]}
    R = ramification_from_json(data)
    assert R.d == 720 and R.e == (6, 5)
    out = R.to_json()
    assert out["classes"] == data["classes"] and out["branch_points"] == ["0", "inf"]


def test_duplicate_branch_points():
    t = from_group(sym(3))
    with pytest.raises(DuplicateBranchPoints):
        RamificationData.build(t, ["[2^1,1^1]", "[2^1,1^1]"], ["1/2", "2/4"])


def test_index_must_divide_d():
    t = monster_snippet()
    with pytest.raises(ValueError):
        RamificationData.build(t, ["29A"], d=60)


def test_rh_invariants():
    t = from_group(dihedral(5))
    inv = rh_invariants(RamificationData.build(t, ["2A"] * 4))
    assert inv.epsilon == 2 and inv.e_inf == 2 and inv.genus == 1


# -- invariant pre-order ---------------------------------------------------------

def test_prec_s4_example():
    t = from_group(sym(4))
    A = RamificationData.build(t, ["[4^1]", "[3^1,1^1]", "[2^1,1^2]"])
    B = RamificationData.build(t, ["[2^2]", "[3^1,1^1]", "[2^1,1^2]", "[4^1]"])
    # A has genus 0, so the caller must assert equal groups
    with pytest.raises(GenusSideConditionViolated):
        invariants_prec(A, B)
    assert invariants_prec(A, B, same_group=True)
    assert not invariants_prec(B, A, same_group=True)


def test_prec_monster():
    t = monster_snippet()
    A = RamificationData.build(t, ["2A", "3B", "29A"], d=MONSTER_ORDER)
    B = RamificationData.build(t, ["2A", "3C", "38A"], d=MONSTER_ORDER)
    assert rh_invariants(A).genus > 0
    assert invariants_prec(A, B) is False
    assert invariants_prec(A, A) is True


def test_prec_table_mismatch():
    A = RamificationData.build(from_group(sym(4)), ["[2^1,1^2]"] * 4)
    B = RamificationData.build(from_group(sym(4)), ["[2^1,1^2]"] * 4)
    with pytest.raises(TableMismatch):
        invariants_prec(A, B)


_S4 = from_group(sym(4))
_covers = st.lists(st.sampled_from(_S4.nontrivial()), min_size=0, max_size=5).map(
    lambda ids: RamificationData(_S4, 24, ClassTuple(_S4, tuple(ids))))


@settings(max_examples=300, deadline=None)
@given(_covers, _covers, _covers)
def test_prec_reflexive_transitive(a, b, c):
    assert invariants_prec(a, a, same_group=True)
    if invariants_prec(a, b, same_group=True) and invariants_prec(b, c, same_group=True):
        assert invariants_prec(a, c, same_group=True)


# -- strict growth ------------------------------------------------------------------

def test_strict_growth_examples():
    assert strict_growth(5, Fraction(5, 2), 2, False)
    assert strict_growth(4, Fraction(4, 3), 4, False)
    assert not strict_growth(3, Fraction(1), 2, False)
    assert strict_growth(3, Fraction(1, 2), 2, True)
    assert strict_growth(3, Fraction(3, 4), 4, False)
    with pytest.raises(ValueError):
        strict_growth(3, Fraction(1), 1, False)


_eps = st.fractions(min_value=0, max_value=4, max_denominator=60)


@settings(max_examples=400)
@given(st.integers(0, 7), _eps, _eps, st.integers(2, 8), st.integers(2, 8), st.booleans())
def test_strict_growth_monotone(r, e1, e2, n1, n2, proper):
    lo_e, hi_e = sorted([e1, e2])
    lo_n, hi_n = sorted([n1, n2])
    if strict_growth(r, hi_e, lo_n, proper):
        assert strict_growth(r, lo_e, hi_n, proper)
