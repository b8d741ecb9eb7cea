"""Objects, morphisms, subalgebras and hom enumeration.

Hom counts are pinned against an independent brute-force oracle that checks
every possible map table.
"""

import itertools
import math

import pytest

from speccat import (
    ConcreteMorphism,
    FiniteObject,
    InvalidMorphism,
    InvalidObject,
    Subobject,
    compose,
    cyclic_group,
    direct_product,
    enumerate_hom,
    enumerate_monos,
    group_from_permutations,
    identity,
    load_objects,
    object_from_descriptor,
    pointed_set,
    subalgebras,
    zero_object,
)
from speccat import registry
from speccat.catcore import (
    AB,
    GRP,
    PSET,
    closure,
    element_order,
    inverse,
    is_epi,
    is_iso,
    is_mono,
    normal_subalgebras,
)


def brute_force_homs(A, B):
    """Oracle: try every basepoint-preserving table and keep homomorphisms."""
    homs = []
    for tail in itertools.product(range(B.size), repeat=A.size - 1):
        table = (0,) + tail
        if A.op is None:
            homs.append(table)
            continue
        if all(table[A.op[a][b]] == B.op[table[a]][table[b]]
               for a in range(A.size) for b in range(A.size)):
            homs.append(table)
    return homs


# ---------------------------------------------------------------------------
# Object construction and validation
# ---------------------------------------------------------------------------

def test_cyclic_group_structure():
    z6 = cyclic_group(6)
    assert z6.size == 6 and z6.op[2][5] == 1 and z6.inv[2] == 4
    assert z6.op[0][3] == 3  # identity at index 0


def test_permutation_group_identity_first(s3):
    assert s3.labels[0] == "(0 1 2)"  # identity permutation
    assert s3.size == 6


def test_invalid_cayley_rejected():
    with pytest.raises(InvalidObject):
        FiniteObject(id="bad", backend=GRP, size=2,
                     op=((0, 1), (1, 1)), inv=(0, 1))


def test_nonassociative_rejected():
    op = ((0, 1, 2), (1, 2, 0), (2, 1, 0))  # not associative
    with pytest.raises(InvalidObject):
        FiniteObject(id="bad", backend=GRP, size=3, op=op, inv=(0, 2, 1))


def test_ab_backend_requires_commutativity(s3):
    with pytest.raises(InvalidObject):
        FiniteObject(id="s3ab", backend=AB, size=6, op=s3.op, inv=s3.inv)


def test_direct_product_sizes():
    p = direct_product(cyclic_group(2), cyclic_group(4))
    assert p.size == 8
    assert element_order(p, p.size - 1) in (2, 4)


def test_not_a_permutation_rejected():
    with pytest.raises(InvalidObject):
        group_from_permutations("bad", 3, [(0, 0, 1)])


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

def test_morphism_validation():
    z2, z4 = cyclic_group(2), cyclic_group(4)
    with pytest.raises(InvalidMorphism):
        ConcreteMorphism(z2, z4, (0, 1))  # 1 has order 4, not a hom target
    with pytest.raises(InvalidMorphism):
        ConcreteMorphism(z2, z4, (1, 0))  # basepoint not preserved
    soc = ConcreteMorphism(z2, z4, (0, 2))
    assert soc.is_injective and not soc.is_surjective


def test_compose_and_identity(s3):
    e = identity(s3)
    for f in enumerate_hom(s3, s3):
        assert compose(f, e) == f == compose(e, f)


def test_iso_and_inverse():
    z4 = cyclic_group(4)
    auto = ConcreteMorphism(z4, z4, (0, 3, 2, 1))
    assert is_iso(auto)
    assert compose(inverse(auto), auto) == identity(z4)


def test_mono_epi_match_cancellation(s3_universe):
    """Injective/surjective coincide with categorical mono/epi on a bounded
    universe of probes."""
    from speccat.catcore import is_epi_by_cancellation, is_mono_by_cancellation
    small = [o for o in s3_universe if o.size <= 3]
    for A in small:
        for B in small:
            for f in enumerate_hom(A, B):
                assert is_mono(f) == is_mono_by_cancellation(f, small)
                assert is_epi(f) == is_epi_by_cancellation(f, small)


# ---------------------------------------------------------------------------
# Hom enumeration against the brute-force oracle
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(2, 4), (4, 2), (4, 6), (6, 4), (3, 5)])
def test_cyclic_hom_count_is_gcd(m, n):
    zm, zn = cyclic_group(m), cyclic_group(n)
    homs = enumerate_hom(zm, zn)
    assert len(homs) == math.gcd(m, n)
    assert sorted(h.table for h in homs) == sorted(brute_force_homs(zm, zn))


def test_s3_endomorphisms_oracle(s3):
    homs = enumerate_hom(s3, s3)
    assert len(homs) == 10
    assert sorted(h.table for h in homs) == sorted(brute_force_homs(s3, s3))


def test_pset_homs_are_all_pointed_maps():
    p3, p4 = pointed_set("P3", 3), pointed_set("P4", 4)
    assert len(enumerate_hom(p3, p4)) == 4 ** 2
    assert len(enumerate_monos(p3, p4)) == 3 * 2


def test_hom_cross_object_oracle(s3):
    z6 = cyclic_group(6)
    assert sorted(h.table for h in enumerate_hom(z6, s3)) == \
        sorted(brute_force_homs(z6, s3))
    assert sorted(h.table for h in enumerate_hom(s3, z6)) == \
        sorted(brute_force_homs(s3, z6))


# ---------------------------------------------------------------------------
# Subalgebras
# ---------------------------------------------------------------------------

def test_subalgebra_counts():
    assert len(subalgebras(registry.s3())) == 6
    assert len(subalgebras(registry.s4())) == 30
    assert len(subalgebras(cyclic_group(12))) == 6
    assert len(subalgebras(registry.q8())) == 6


def test_a5_has_59_subgroups():
    assert len(subalgebras(registry.a5())) == 59


def test_normal_subalgebras_s3(s3):
    normals = normal_subalgebras(s3)
    assert sorted(len(n.elems) for n in normals) == [1, 3, 6]


def test_closure_is_idempotent(s3):
    for seed in ([1], [3], [1, 3]):
        c = closure(s3, seed)
        assert closure(s3, c) == c
        assert set(seed) <= set(c)


def test_full_subobject_is_ambient(s3):
    full = Subobject(s3, tuple(range(s3.size)))
    assert full.object() is s3
    assert full.inclusion() == identity(s3)


def test_subobject_inclusion_is_mono(s3):
    for sub in subalgebras(s3):
        assert sub.inclusion().is_injective
        assert sub.inclusion().image == frozenset(sub.elems)


# ---------------------------------------------------------------------------
# Descriptors
# ---------------------------------------------------------------------------

def test_descriptor_roundtrip():
    obj = object_from_descriptor({
        "kind": "group", "name": "C3",
        "presentation": {"permutations": [[1, 2, 0]], "degree": 3}})
    assert obj.size == 3 and obj.backend == GRP
    ps = object_from_descriptor({"kind": "pointed_set", "name": "P2",
                                 "size": 2})
    assert ps.backend == PSET


def test_load_objects_list():
    text = ('[{"kind": "pointed_set", "name": "A", "size": 2},'
            ' {"kind": "pointed_set", "name": "B", "size": 3}]')
    objs = load_objects(text)
    assert [o.size for o in objs] == [2, 3]


def test_bad_descriptor_rejected():
    with pytest.raises(InvalidObject):
        object_from_descriptor({"kind": "group", "name": ""})
    with pytest.raises(InvalidObject):
        object_from_descriptor({"kind": "mystery", "name": "x"})


def test_zero_objects():
    for backend in (GRP, AB, PSET):
        z = zero_object(backend)
        assert z.size == 1
