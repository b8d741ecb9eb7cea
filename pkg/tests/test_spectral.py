"""The localized category: hom-set materialization, the canonical functor,
limit preservation, uniform objects, and division-monoid endomorphisms."""

import json

import pytest

from speccat import (
    ALL_MONOS,
    NORMAL_MONOS,
    ConsistencyError,
    MonoClassSpec,
    NormalizedSpan,
    PreconditionViolation,
    Subobject,
    build_spec,
    canonical_functor,
    compose,
    cyclic_group,
    end_spec_division_check,
    enumerate_hom,
    identity,
    is_uniform,
    minimal_M_subobject,
    poincare_hom,
    verify_limit_preservation,
)
from speccat import registry
from speccat.catcore import AB, GRP


@pytest.fixture(scope="module")
def spec_ab(z4_universe):
    return build_spec(AB, MonoClassSpec(ALL_MONOS), z4_universe, verify=True)


@pytest.fixture(scope="module")
def spec_grp(s3_universe):
    return build_spec(GRP, MonoClassSpec(ALL_MONOS), s3_universe, verify=True)


# ---------------------------------------------------------------------------
# Minimal M-subobjects
# ---------------------------------------------------------------------------

def test_minimal_subobject_of_z4_is_socle(se_family_ab):
    amin = minimal_M_subobject(registry.zab(4), se_family_ab)
    assert amin.elems == (0, 2)


def test_minimal_subobject_of_s3_is_full(se_family_grp, s3):
    amin = minimal_M_subobject(s3, se_family_grp)
    assert amin.elems == tuple(range(6))


def test_minimal_subobject_of_zero(se_family_ab):
    amin = minimal_M_subobject(registry.ab_zero(), se_family_ab)
    assert amin.size == 1


def test_minimal_subobject_cross_check(se_family_ab, z4_universe):
    amin = minimal_M_subobject(registry.zab(4), se_family_ab,
                               cross_check_targets=list(z4_universe))
    assert amin.elems == (0, 2)


# ---------------------------------------------------------------------------
# Hom sets and composition
# ---------------------------------------------------------------------------

def test_z4_chain_hom_counts(spec_ab, z4_universe):
    zero, z2, z4 = z4_universe
    assert len(spec_ab.hom(z4, z4)) == 2
    assert len(spec_ab.hom(z2, z2)) == 2
    assert len(spec_ab.hom(z4, z2)) == 2
    assert len(spec_ab.hom(z2, z4)) == 2
    assert len(spec_ab.hom(zero, zero)) == 1
    assert len(spec_ab.hom(z4, zero)) == 1


def test_hom_counts_match_span_quotient(spec_grp, se_family_grp, s3_universe):
    for A in s3_universe:
        for B in s3_universe:
            assert len(spec_grp.hom(A, B)) == \
                len(poincare_hom(A, B, se_family_grp))


def test_s3_endomorphism_count(spec_grp, s3):
    assert len(spec_grp.hom(s3, s3)) == 10


def test_identity_and_zero_classes(spec_ab):
    z4 = registry.zab(4)
    ida = spec_ab.identity_class(z4)
    zero = spec_ab.zero_class(z4, z4)
    assert ida != zero
    assert zero.is_zero and not ida.is_zero
    assert spec_ab.compose(ida, ida) == ida


def test_zero_class_absorbs(spec_ab, z4_universe):
    for A in z4_universe:
        for B in z4_universe:
            for C in z4_universe:
                z = spec_ab.zero_class(B, C)
                for c in spec_ab.hom(A, B):
                    assert spec_ab.compose(z, c) == spec_ab.zero_class(A, C)


def test_composition_is_associative(spec_ab, z4_universe):
    objs = list(z4_universe)
    for A in objs:
        for B in objs:
            for C in objs:
                for D in objs:
                    for f in spec_ab.hom(A, B):
                        for g in spec_ab.hom(B, C):
                            for h in spec_ab.hom(C, D):
                                assert spec_ab.compose(
                                    h, spec_ab.compose(g, f)) == \
                                    spec_ab.compose(spec_ab.compose(h, g), f)


# ---------------------------------------------------------------------------
# Canonical functor
# ---------------------------------------------------------------------------

def test_functor_sends_identity_to_identity(spec_grp, s3_universe):
    for A in s3_universe:
        assert canonical_functor(identity(A), spec_grp) == \
            spec_grp.identity_class(A)


def test_functor_preserves_composition(spec_grp, s3_universe):
    for A in s3_universe:
        for B in s3_universe:
            for f in enumerate_hom(A, B):
                pf = canonical_functor(f, spec_grp)
                for C in s3_universe:
                    for g in enumerate_hom(B, C):
                        assert canonical_functor(compose(g, f), spec_grp) == \
                            spec_grp.compose(canonical_functor(g, spec_grp),
                                             pf)


def test_functor_inverts_the_socle(spec_ab):
    c = canonical_functor(registry.soc_z2_z4(), spec_ab)
    assert spec_ab.is_invertible(c)


def test_member_inclusions_become_invertible(spec_grp, se_family_grp,
                                             s3_universe):
    from speccat.catcore import subalgebras
    for A in s3_universe:
        for sub in subalgebras(A):
            m = sub.inclusion()
            if se_family_grp.contains(m):
                assert spec_grp.is_invertible(
                    canonical_functor(m, spec_grp))


def test_class_of_span_rejects_small_domains(spec_ab):
    z4 = registry.zab(4)
    from speccat.catcore import zero_morphism
    trivial = Subobject(z4, (0,))
    only_zero = NormalizedSpan(trivial, zero_morphism(trivial.object(), z4))
    with pytest.raises(ConsistencyError):
        spec_ab.class_of_span(only_zero)


def test_build_spec_refuses_bad_class():
    universe = [cyclic_group(2), registry.v4(), registry.s4()]
    with pytest.raises(PreconditionViolation):
        build_spec(GRP, MonoClassSpec(NORMAL_MONOS), universe)


# ---------------------------------------------------------------------------
# Limit preservation
# ---------------------------------------------------------------------------

def test_limit_preservation_grp(spec_grp):
    reports = verify_limit_preservation(
        spec_grp, registry.registered_cospans("s3-subgroups"))
    assert reports and all(r.status == "pass" for r in reports)


def test_limit_preservation_ab(spec_ab):
    reports = verify_limit_preservation(
        spec_ab, registry.registered_cospans("z4-chain"))
    assert reports and all(r.status == "pass" for r in reports)
    assert all(r.cones_checked > 0 for r in reports)


# ---------------------------------------------------------------------------
# Uniform objects and division monoids
# ---------------------------------------------------------------------------

def test_z4_is_uniform(se_family_ab):
    assert bool(is_uniform(registry.zab(4), se_family_ab))


def test_s3_is_not_uniform(se_family_grp, s3):
    rep = is_uniform(s3, se_family_grp)
    assert not rep.uniform and rep.witness is not None


def test_zero_object_not_uniform(se_family_ab):
    rep = is_uniform(registry.ab_zero(), se_family_ab)
    assert not rep.uniform and rep.witness == {"reason": "zero object"}


def test_z4_endos_form_division_monoid(spec_ab):
    rep = end_spec_division_check(registry.zab(4), spec_ab)
    assert rep.verdict and rep.size == 2
    assert rep.invertible == tuple(i for i in range(2) if i != rep.zero_index)


def test_z5_endos_form_division_monoid():
    z5 = registry.zab(5)
    universe = [registry.ab_zero(), z5]
    spec = build_spec(AB, MonoClassSpec(ALL_MONOS), universe)
    rep = end_spec_division_check(z5, spec)
    assert rep.verdict and rep.size == 5
    assert len(rep.invertible) == 4


def test_s3_endos_not_division_monoid(spec_grp, s3):
    rep = end_spec_division_check(s3, spec_grp)
    assert not rep.verdict and rep.size == 10


# ---------------------------------------------------------------------------
# Export
# ---------------------------------------------------------------------------

def test_export_schema_and_determinism(z4_universe):
    a = build_spec(AB, MonoClassSpec(ALL_MONOS), z4_universe).to_json()
    b = build_spec(AB, MonoClassSpec(ALL_MONOS), z4_universe).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert set(a) == {"objects", "exact", "homs", "composition"}
    assert a["exact"] is True
    endo = next(h for h in a["homs"]
                if h["dom"] == h["cod"] == z4_universe[-1].id)
    assert len(endo["classes"]) == 2
    for block in a["composition"]:
        n_dom = sum(1 for _ in block["table"])
        assert all(isinstance(i, int) for row in block["table"] for i in row)
        assert n_dom == len(next(
            h for h in a["homs"]
            if h["dom"] == block["dom"] and h["cod"] == block["mid"])["classes"])
