import pytest

from agroups import census, perm
from agroups.cayley import VarietyParams, are_isomorphic, cayley_from, cyclic_table, direct_product_table, elementary_abelian_table, in_variety
from agroups.census import (
    enumerate_gl_variety_subgroups,
    enumerate_primitive_ar_classes,
    enumerate_primitive_classes,
    enumerate_transitive_classes,
    enumerate_variety_groups,
)
from agroups.construct import primitive_aqar_group
from agroups.errors import DegreeLimit
from agroups.gf import field_make
from agroups.perm import PermGroup, parse_cycles, subgroup_conjugate


def pgroup(degree, *texts):
    return PermGroup(degree, [parse_cycles(t, degree) for t in texts])


# -- transitive inventories -----------------------------------------------------


def test_transitive_4_2_3():
    inv = enumerate_transitive_classes(4, 2, 3)
    assert inv.count == 2
    orders = sorted(e.order for e in inv.classes)
    assert orders == [4, 12]  # V4 regular and A4
    v4 = next(e for e in inv.classes if e.order == 4)
    assert v4.representative.is_transitive()
    a4 = next(e for e in inv.classes if e.order == 12)
    assert subgroup_conjugate(a4.representative, pgroup(4, "(1 2 3)", "(2 3 4)")) is not None


def test_transitive_3_3_2():
    inv = enumerate_transitive_classes(3, 3, 2)
    assert sorted(e.order for e in inv.classes) == [3, 6]


def test_class_sizes_count_all_conjugates():
    inv = enumerate_transitive_classes(4, 2, 3)
    assert {(e.order, e.class_size) for e in inv.classes} == {(4, 1), (12, 1)}
    # S5: six C5 subgroups and six dihedral copies
    inv5 = enumerate_primitive_classes(5, 5, 2)
    assert {(e.order, e.class_size) for e in inv5.classes} == {(5, 6), (10, 6)}


def test_transitive_2_2_3():
    inv = enumerate_transitive_classes(2, 2, 3)
    assert inv.count == 1
    assert inv.classes[0].order == 2


def test_transitive_excludes_non_variety_groups():
    # transitive subgroups of S4 include C4, D4, S4: none in the [2, 3] variety
    inv = enumerate_transitive_classes(4, 2, 3)
    assert all(e.order in (4, 12) for e in inv.classes)
    # and with primes {3, 5} nothing is transitive on 4 points
    assert enumerate_transitive_classes(4, 3, 5).count == 0


def test_transitive_degree_limit():
    with pytest.raises(DegreeLimit):
        enumerate_transitive_classes(7, 2, 3)


# -- primitive inventories ---------------------------------------------------------


def test_primitive_4_2_3_single_class_order_12():
    inv = enumerate_primitive_classes(4, 2, 3)
    assert inv.count == 1
    entry = inv.classes[0]
    assert entry.order == 12 and entry.signature == (2, 1)


def test_primitive_3_3_2_two_signatures():
    inv = enumerate_primitive_classes(3, 3, 2)
    assert inv.count == 2
    by_sig = {e.signature: e for e in inv.classes}
    assert by_sig[(1, 0)].order == 3
    assert by_sig[(1, 1)].order == 6


def test_primitive_5_5_2():
    inv = enumerate_primitive_classes(5, 5, 2)
    assert {e.order for e in inv.classes} == {5, 10}
    assert all(e.class_size >= 1 for e in inv.classes)
    # one class per signature
    sigs = [e.signature for e in inv.classes]
    assert len(sigs) == len(set(sigs))


def test_primitive_empty_when_degree_impossible():
    assert enumerate_primitive_classes(4, 3, 2).count == 0
    assert enumerate_primitive_classes(5, 2, 3).count == 0


def test_primitive_classes_match_construction():
    # representative of the affine class is conjugate to the built group
    for q, r, n in [(3, 2, 3), (2, 3, 4), (5, 2, 5)]:
        inv = enumerate_primitive_classes(n, q, r)
        affine = [e for e in inv.classes if e.signature[0] >= 1 and e.signature[1] >= 1]
        assert len(affine) == 1
        _, built = primitive_aqar_group(q, r)
        assert subgroup_conjugate(affine[0].representative, built) is not None


def test_primitive_degree8_2_7():
    inv = enumerate_primitive_classes(8, 2, 7)
    assert inv.count == 1
    entry = inv.classes[0]
    assert entry.order == 56
    assert entry.signature == (3, 1)
    _, built = primitive_aqar_group(2, 7)
    assert subgroup_conjugate(entry.representative, built) is not None


def test_primitive_degree8_odd_primes_empty():
    assert enumerate_primitive_classes(8, 3, 7).count == 0


def test_primitive_degree7():
    inv = enumerate_primitive_classes(7, 7, 2)
    assert [(e.order, e.signature) for e in inv.classes] == [(7, (1, 0)), (14, (1, 1))]
    _, built = primitive_aqar_group(7, 2)
    affine = inv.classes[1].representative
    assert subgroup_conjugate(affine, built) is not None
    # the asymmetric variety: the dihedral group is not in [2, 7]
    inv2 = enumerate_primitive_classes(7, 2, 7)
    assert [(e.order, e.signature) for e in inv2.classes] == [(7, (0, 1))]
    inv3 = enumerate_primitive_classes(7, 7, 3)
    assert [e.order for e in inv3.classes] == [7, 21]
    assert enumerate_primitive_classes(7, 5, 3).count == 0


# -- single-prime primitive inventories -----------------------------------------------


def test_primitive_ar_grid():
    for n in range(2, 8):
        for r in (2, 3, 5, 7):
            inv = enumerate_primitive_ar_classes(n, r)
            expected = 1 if n == r else 0
            assert inv.count == expected, (n, r, inv.count)
            if inv.count:
                assert inv.classes[0].order == r


def test_primitive_ar_regular_v4_is_imprimitive():
    # n = 4, r = 2: the regular V4 exists and is transitive but imprimitive
    subs = census.elementary_abelian_regular_scan(4, 2)
    regular = [s for s in subs if len(s) == 4]
    assert len(regular) == 1
    grp = perm.group_from_set(4, regular[0])
    assert grp.is_transitive() and not grp.is_primitive()


# -- GL subgroup scans ------------------------------------------------------------------


def test_gl22_variety_subgroups():
    spec = field_make(2, 1)
    orders = enumerate_gl_variety_subgroups(2, spec, 2, 3)
    # GL(2,2) = S3: subgroups 1, C2 x3, C3, S3; in [2,3]-variety: all but S3
    # S3 itself: verbal subgroup for r=3 is A3... S3 in A_2 A_3 means
    # commutator/cube closure abelian of exponent 2: K = S3, not abelian
    assert orders == [1, 2, 2, 2, 3]
    orders32 = enumerate_gl_variety_subgroups(2, spec, 3, 2)
    # in [3,2]: K = commutators and squares; S3 gives A3, abelian exp 3: yes
    assert orders32 == [1, 2, 2, 2, 3, 6]


def test_gl23_variety_subgroup_counts_stable():
    spec = field_make(3, 1)
    orders = enumerate_gl_variety_subgroups(2, spec, 2, 3)
    assert all(o % 2 == 0 or o % 3 == 0 or o == 1 for o in orders)
    # deterministic across runs
    assert orders == enumerate_gl_variety_subgroups(2, spec, 2, 3)


def test_gl_variety_details_fitting_orders():
    spec = field_make(2, 1)
    details = census.gl_variety_subgroup_details(2, spec, 3, 2)
    irreducible = [d for d in details if d["irreducible"] and d["order"] > 1]
    # C3 and the full GL(2,2): Fitting order 3 in both cases
    assert sorted(d["order"] for d in irreducible) == [3, 6]
    assert all(d["fitting_order"] == 3 for d in irreducible)
    # the Fitting order of an abelian member equals its order
    for d in details:
        if d["order"] in (1, 2, 3):
            assert d["fitting_order"] == d["order"]


# -- the three-prime census ----------------------------------------------------------------


def test_census_6_as_3_2_5():
    cen = enumerate_variety_groups(VarietyParams(3, 2, 5, 1, 1, 0))
    assert cen.count == 2
    tables = list(cen.groups)
    assert any(t.is_abelian() for t in tables)  # C6
    assert any(not t.is_abelian() for t in tables)  # S3


def test_census_6_as_5_2_3():
    cen = enumerate_variety_groups(VarietyParams(5, 2, 3, 0, 1, 1))
    assert cen.count == 1
    assert cen.groups[0].is_abelian()


def test_census_12():
    cen = enumerate_variety_groups(VarietyParams(2, 3, 5, 2, 1, 0))
    assert cen.count == 2
    a4 = cayley_from(pgroup(4, "(1 2 3)", "(2 3 4)"))
    assert any(are_isomorphic(t, a4) for t in cen.groups)
    c2c2c3 = direct_product_table(elementary_abelian_table(2, 2), cyclic_table(3))
    assert any(are_isomorphic(t, c2c2c3) for t in cen.groups)


def test_census_30():
    cen = enumerate_variety_groups(VarietyParams(3, 2, 5, 1, 1, 1))
    assert cen.count == 2
    assert sorted(t.order for t in cen.groups) == [30, 30]


def test_census_60():
    cen = enumerate_variety_groups(VarietyParams(2, 3, 5, 2, 1, 1))
    assert cen.count == 2
    a4c5 = direct_product_table(
        cayley_from(pgroup(4, "(1 2 3)", "(2 3 4)")), cyclic_table(5)
    )
    assert any(are_isomorphic(t, a4c5) for t in cen.groups)


def test_census_members_in_variety_and_distinct():
    for params in [
        VarietyParams(3, 2, 5, 1, 1, 0),
        VarietyParams(2, 3, 5, 2, 1, 0),
        VarietyParams(3, 2, 5, 1, 1, 1),
    ]:
        cen = enumerate_variety_groups(params)
        for t in cen.groups:
            assert t.order == params.n
            assert in_variety(t, params.chain())
        for i, t in enumerate(cen.groups):
            for u in cen.groups[i + 1 :]:
                assert not are_isomorphic(t, u)


def test_census_traversal_invariance():
    for params in [
        VarietyParams(3, 2, 5, 1, 1, 0),
        VarietyParams(2, 3, 5, 2, 1, 0),
        VarietyParams(2, 3, 5, 2, 1, 1),
    ]:
        fwd = enumerate_variety_groups(params, "forward")
        rev = enumerate_variety_groups(params, "reverse")
        assert fwd.count == rev.count
        # same census up to isomorphism
        for t in fwd.groups:
            assert any(are_isomorphic(t, u) for u in rev.groups)


def test_census_trivial_order():
    cen = enumerate_variety_groups(VarietyParams(2, 3, 5, 0, 0, 0))
    assert cen.count == 1
    assert cen.groups[0].order == 1


def test_census_order_limit():
    from agroups.errors import LimitExceeded

    with pytest.raises(LimitExceeded):
        enumerate_variety_groups(VarietyParams(2, 3, 5, 10, 0, 0))


def test_inventory_json_shape():
    inv = enumerate_primitive_classes(4, 2, 3)
    data = inv.to_json()
    assert data["classes"][0]["order"] == 12
    cen = enumerate_variety_groups(VarietyParams(3, 2, 5, 1, 1, 0))
    out = cen.to_json()
    assert out["count"] == 2 and len(out["representatives"]) == 2
