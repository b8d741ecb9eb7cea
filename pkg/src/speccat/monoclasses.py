"""Designated classes of monomorphisms and their decision procedures.

The decidable heart of the package: essentiality (decided exactly through
regular quotients, i.e. congruences of the codomain), subobject-essentiality
(decided by subobject enumeration), pullback-stable essentiality (exact in
the group backends, bounded refutation elsewhere), stabilization of a class,
and an exhaustive closure/cancellation law harness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catcore import (
    NORMAL_BACKENDS,
    ConcreteMorphism,
    FiniteObject,
    Subobject,
    compose,
    enumerate_hom,
    is_normal_subset,
    subalgebras,
)
from .catcore import normal_subalgebras
from .errors import PreconditionViolation
from .limits import congruences, has_zero_kernel, pullback

# ---------------------------------------------------------------------------
# The designated class S
# ---------------------------------------------------------------------------

ALL_MONOS = "all"
NORMAL_MONOS = "normal"
EXPLICIT = "explicit"


def canonical_mono(m: ConcreteMorphism) -> tuple[FiniteObject, frozenset[int]]:
    """A mono up to canonical iso: its codomain together with its image."""
    return (m.cod, m.image)


@dataclass(frozen=True)
class MonoClassSpec:
    """The designated class S of monomorphisms (the class to be essential for)."""

    kind: str
    members: frozenset[tuple[FiniteObject, frozenset[int]]] | None = None

    def __post_init__(self):
        if self.kind not in (ALL_MONOS, NORMAL_MONOS, EXPLICIT):
            raise PreconditionViolation(f"unknown mono class kind {self.kind!r}")
        if self.kind == EXPLICIT and self.members is None:
            raise PreconditionViolation("explicit mono class needs members")

    @staticmethod
    def explicit(morphisms) -> "MonoClassSpec":
        pairs = frozenset(canonical_mono(m) for m in morphisms if m.is_injective)
        return MonoClassSpec(EXPLICIT, pairs)

    def contains(self, m: ConcreteMorphism) -> bool:
        if not m.is_injective:
            return False
        if self.kind == ALL_MONOS:
            return True
        if self.kind == NORMAL_MONOS:
            return is_normal_subset(m.cod, m.image)
        return canonical_mono(m) in self.members


# ---------------------------------------------------------------------------
# Verdicts and caches
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    value: bool
    exact: bool
    witness: object = None

    def __bool__(self):
        return self.value

    def to_json(self) -> dict:
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        elif isinstance(w, dict):
            w = {k: (v.to_json() if hasattr(v, "to_json") else v)
                 for k, v in w.items()}
        return {"value": self.value,
                "mode": "exact" if self.exact else "bounded",
                "witness": w}


_ESSENTIAL_CACHE: dict[tuple, bool] = {}
_SE_CACHE: dict[tuple, bool] = {}


def _essential_image(cod: FiniteObject, image: frozenset[int]) -> bool:
    """Image-level essentiality: every non-discrete congruence on the codomain
    must identify two distinct image elements."""
    key = (cod, image)
    hit = _ESSENTIAL_CACHE.get(key)
    if hit is not None:
        return hit
    result = True
    for cong in congruences(cod):
        if cong.is_discrete:
            continue
        if _discrete_on(cong, image):
            result = False
            break
    _ESSENTIAL_CACHE[key] = result
    return result


def _discrete_on(cong, image: frozenset[int]) -> bool:
    ids = cong.block_ids()
    seen: dict[int, int] = {}
    for e in image:
        b = ids[e]
        if b in seen:
            return False
        seen[b] = e
    return True


def _essential_refuting_quotient(cod: FiniteObject, image: frozenset[int]):
    for cong in congruences(cod):
        if cong.is_discrete:
            continue
        if _discrete_on(cong, image):
            _, q = cong.quotient()
            return q
    return None


def _se_image(cod: FiniteObject, image: frozenset[int]) -> bool:
    key = (cod, image)
    hit = _SE_CACHE.get(key)
    if hit is not None:
        return hit
    result = True
    for sub in subalgebras(cod):
        if sub.size > 1 and len(image & set(sub.elems)) == 1:
            result = False
            break
    _SE_CACHE[key] = result
    return result


def _se_refuting_subobject(cod: FiniteObject, image: frozenset[int]):
    for sub in subalgebras(cod):
        if sub.size > 1 and len(image & set(sub.elems)) == 1:
            return sub
    return None


# ---------------------------------------------------------------------------
# The three decision procedures
# ---------------------------------------------------------------------------

def is_essential(m: ConcreteMorphism, S: MonoClassSpec,
                 universe: list[FiniteObject] | None = None) -> Verdict:
    """Is m an S-essential monomorphism?

    For S = all monos the answer is exact: every morphism out of cod(m)
    factors as a regular quotient followed by a mono, so it is enough to
    quantify over the congruences of cod(m).  For other S the check runs
    over a probe universe and the verdict is flagged as bounded.
    """
    if not S.contains(m):
        raise PreconditionViolation(f"{m!r} is not in the designated class")
    if S.kind == ALL_MONOS:
        image = m.image
        if _essential_image(m.cod, image):
            return Verdict(True, exact=True)
        return Verdict(False, exact=True,
                       witness=_essential_refuting_quotient(m.cod, image))
    if universe is None:
        raise PreconditionViolation(
            "essentiality for a restricted class needs a probe universe")
    for B in universe:
        for f in enumerate_hom(m.cod, B):
            if S.contains(compose(f, m)) and not S.contains(f):
                return Verdict(False, exact=False, witness=f)
    return Verdict(True, exact=False)


def is_subobject_essential(m: ConcreteMorphism) -> Verdict:
    """Does every nonzero subobject of cod(m) meet the image of m nontrivially?"""
    if not m.is_injective:
        raise PreconditionViolation(f"{m!r} is not a monomorphism")
    image = m.image
    if _se_image(m.cod, image):
        return Verdict(True, exact=True)
    return Verdict(False, exact=True,
                   witness=_se_refuting_subobject(m.cod, image).inclusion())


def essential_four_ways(m: ConcreteMorphism) -> dict[str, bool]:
    """Evaluate essentiality of a mono by four independent routes.

    The routes quantify respectively over regular quotients (injectivity
    transfer), congruences (relating two distinct image elements), nonzero
    normal subobjects (meeting the image nontrivially) and kernels of regular
    quotients (zero-kernel transfer).  In the group backends all four must
    agree; any disagreement is a bug in the decision procedures.
    """
    if not m.is_injective:
        raise PreconditionViolation(f"{m!r} is not a monomorphism")
    A, image = m.cod, m.image
    results: dict[str, bool] = {}

    ok = True
    for cong in congruences(A):
        _, e = cong.quotient()
        if compose(e, m).is_injective and not e.is_injective:
            ok = False
            break
    results["via_regular_quotients"] = ok

    results["via_congruences"] = _essential_image(A, image)

    if A.backend in NORMAL_BACKENDS:
        results["via_normal_subobjects"] = all(
            len(set(sub.elems) & image) > 1
            for sub in normal_subalgebras(A) if sub.size > 1)
    else:
        results["via_normal_subobjects"] = results["via_congruences"]

    ok = True
    for cong in congruences(A):
        _, e = cong.quotient()
        if has_zero_kernel(compose(e, m)) and not has_zero_kernel(e):
            ok = False
            break
    results["via_kernels"] = ok
    return results


@dataclass(frozen=True)
class RefutingPullback:
    """A pullback of a candidate mono whose projection fails to be essential."""

    along: ConcreteMorphism
    pulled: ConcreteMorphism

    def to_json(self) -> dict:
        return {"along": self.along.to_json(), "pulled": self.pulled.to_json()}


def _find_refuting_pullback(m: ConcreteMorphism, S: MonoClassSpec,
                            universe: list[FiniteObject]) -> RefutingPullback | None:
    image = m.image
    # subobject inclusions first: cheap and they carry the textbook witnesses
    for sub in subalgebras(m.cod):
        preim = frozenset(e for e in sub.elems if e in image)
        x = sub.inclusion()
        pos = {e: i for i, e in enumerate(sub.elems)}
        pre_in_sub = frozenset(pos[e] for e in preim)
        if not _essential_image(sub.object(), pre_in_sub):
            pb = pullback(m, x)
            return RefutingPullback(along=x, pulled=pb.proj_right)
    for X in universe:
        for x in enumerate_hom(X, m.cod):
            pb = pullback(m, x)
            proj = pb.proj_right
            if S.kind == ALL_MONOS:
                bad = not _essential_image(X, proj.image)
            else:
                bad = not is_essential(proj, S, universe).value \
                    if S.contains(proj) else True
            if bad:
                return RefutingPullback(along=x, pulled=proj)
    return None


def is_stable_essential(m: ConcreteMorphism, S: MonoClassSpec,
                        universe: list[FiniteObject] | None = None) -> Verdict:
    """Is m a pullback stable S-essential monomorphism?

    In the group backends with S = all monos this is decided exactly via
    subobject-essentiality; otherwise a bounded refutation search pulls m
    back along every morphism from the universe.
    """
    if not S.contains(m):
        raise PreconditionViolation(f"{m!r} is not in the designated class")
    if m.dom.backend in NORMAL_BACKENDS and S.kind == ALL_MONOS:
        if _se_image(m.cod, m.image):
            return Verdict(True, exact=True)
        witness = _find_refuting_pullback(m, S, universe or [])
        return Verdict(False, exact=True, witness=witness)
    if universe is None:
        raise PreconditionViolation(
            "bounded stable-essentiality needs a probe universe")
    if not is_essential(m, S, universe if S.kind != ALL_MONOS else None).value:
        return Verdict(False, exact=False, witness=None)
    witness = _find_refuting_pullback(m, S, universe)
    if witness is not None:
        return Verdict(False, exact=False, witness=witness)
    return Verdict(True, exact=False)


def stabilize(monos: list[ConcreteMorphism],
              universe: list[FiniteObject]) -> list[ConcreteMorphism]:
    """Members of the given class all of whose pullbacks stay in the class.

    Membership of a pullback is decided up to canonical iso: the pullback of
    a mono m along x is the inclusion of the x-preimage of the image of m.
    Identity-shaped pullbacks always count as members (every class of
    interest contains the isomorphisms, but a finite member list cannot spell
    out the isos of every possible pullback domain).
    """
    members = {canonical_mono(m) for m in monos if m.is_injective}
    survivors = []
    for m in monos:
        image = m.image
        ok = True
        for X in universe:
            for x in enumerate_hom(X, m.cod):
                preim = frozenset(e for e in X.elements if x.table[e] in image)
                if len(preim) != X.size and (X, preim) not in members:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            survivors.append(m)
    return survivors


# ---------------------------------------------------------------------------
# Classification reports
# ---------------------------------------------------------------------------

@dataclass
class ClassificationReport:
    morphism: ConcreteMorphism
    in_S: bool
    essential: Verdict | None
    subobject_essential: Verdict | None
    stable_essential: Verdict | None

    def to_json(self) -> dict:
        return {
            "morphism": self.morphism.to_json(),
            "in_S": self.in_S,
            "essential": self.essential.to_json() if self.essential else None,
            "subobject_essential": (self.subobject_essential.to_json()
                                    if self.subobject_essential else None),
            "stable_essential": (self.stable_essential.to_json()
                                 if self.stable_essential else None),
        }


def classify(m: ConcreteMorphism, S: MonoClassSpec,
             universe: list[FiniteObject] | None = None) -> ClassificationReport:
    in_s = S.contains(m)
    if not in_s:
        return ClassificationReport(m, False, None, None, None)
    return ClassificationReport(
        morphism=m,
        in_S=True,
        essential=is_essential(m, S, universe),
        subobject_essential=is_subobject_essential(m),
        stable_essential=is_stable_essential(m, S, universe),
    )


# ---------------------------------------------------------------------------
# Closure/cancellation law harness
# ---------------------------------------------------------------------------

@dataclass
class LawReport:
    law_id: str
    status: str  # "pass" | "fail"
    checked: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"law_id": self.law_id, "status": self.status,
                "checked": self.checked, "witness": self.witness}


def _mono_flags(universe, S, bounded_backend_universe=None):
    """Flag tables for every mono between universe objects.

    Membership in each class depends only on (codomain, image), which keeps
    the exhaustive sweeps cheap.
    """
    normal = all(A.backend in NORMAL_BACKENDS for A in universe)
    monos: dict[tuple, list[ConcreteMorphism]] = {}
    for X in universe:
        for Y in universe:
            ms = [f for f in enumerate_hom(X, Y) if f.is_injective]
            if ms:
                monos[(X, Y)] = ms

    st_cache: dict[tuple, bool] = {}

    def in_e(m):
        return _essential_image(m.cod, m.image)

    def in_se(m):
        return _se_image(m.cod, m.image)

    def in_st(m):
        if normal:
            return _se_image(m.cod, m.image)
        key = (m.cod, m.image)
        hit = st_cache.get(key)
        if hit is None:
            hit = is_stable_essential(m, S, bounded_backend_universe or universe).value
            st_cache[key] = hit
        return hit

    return monos, in_e, in_se, in_st


def closure_law_suite(universe: list[FiniteObject],
                      S: MonoClassSpec | None = None) -> list[LawReport]:
    """Exhaustively check the closure and cancellation laws of the essential,
    subobject-essential and pullback-stable essential classes over a finite
    universe of objects.  Every failed law carries a concrete witness."""
    S = S or MonoClassSpec(ALL_MONOS)
    monos, in_e, in_se, in_st = _mono_flags(universe, S)
    reports: list[LawReport] = []

    def w(**kw):
        return {k: (v.to_json() if hasattr(v, "to_json") else v)
                for k, v in kw.items()}

    # -- iso containment -------------------------------------------------
    for law_id, member in (("stabilization-contains-isos", in_st), ("essential-contains-isos", in_e),
                           ("stable-essential-contains-isos", in_st), ("subobject-essential-contains-isos", in_se)):
        checked, witness = 0, None
        for ms in monos.values():
            for m in ms:
                if m.is_bijective:
                    checked += 1
                    if not member(m):
                        witness = w(iso=m)
                        break
            if witness:
                break
        reports.append(LawReport(law_id, "fail" if witness else "pass",
                                 checked, witness))

    # -- composition-shaped laws -----------------------------------------
    comp_laws = [
        # (law id, premise(mp, mm, cc), conclusion(mp, mm, cc))
        ("stabilization-composition", lambda p, m, c: in_st(p) and in_st(m), lambda p, m, c: in_st(c)),
        ("stabilization-right-cancellation", lambda p, m, c: in_st(c) and S.contains(p), lambda p, m, c: in_st(m)),
        ("stabilization-weak-right-cancellation", lambda p, m, c: in_st(c) and in_st(p), lambda p, m, c: in_st(m)),
        ("stabilization-left-cancellation", lambda p, m, c: in_st(c), lambda p, m, c: in_st(p)),
        ("essential-composition", lambda p, m, c: in_e(p) and in_e(m), lambda p, m, c: in_e(c)),
        ("essential-right-cancellation", lambda p, m, c: in_e(c), lambda p, m, c: in_e(m)),
        ("essential-weak-right-cancellation", lambda p, m, c: in_e(c) and in_e(p), lambda p, m, c: in_e(m)),
        ("stable-essential-composition", lambda p, m, c: in_st(p) and in_st(m), lambda p, m, c: in_st(c)),
        ("stable-essential-right-cancellation", lambda p, m, c: in_st(c), lambda p, m, c: in_st(m)),
        ("stable-essential-weak-right-cancellation", lambda p, m, c: in_st(c) and in_st(p), lambda p, m, c: in_st(m)),
        ("stable-essential-left-cancellation", lambda p, m, c: in_st(c), lambda p, m, c: in_st(p)),
        ("subobject-essential-composition", lambda p, m, c: in_se(p) and in_se(m), lambda p, m, c: in_se(c)),
        ("subobject-essential-right-cancellation", lambda p, m, c: in_se(c), lambda p, m, c: in_se(m)),
        ("subobject-essential-weak-right-cancellation", lambda p, m, c: in_se(c) and in_se(p), lambda p, m, c: in_se(m)),
        ("subobject-essential-left-cancellation", lambda p, m, c: in_se(c), lambda p, m, c: in_se(p)),
    ]
    results = {law_id: [0, None] for law_id, _, _ in comp_laws}
    pairs_seen = 0
    for (X, Y), inner in monos.items():
        for (Y2, Z), outer in monos.items():
            if Y2 != Y:
                continue
            for mp in inner:          # m': X -> Y
                for m in outer:       # m : Y -> Z
                    c = compose(m, mp)
                    pairs_seen += 1
                    for law_id, premise, conclusion in comp_laws:
                        slot = results[law_id]
                        if slot[1] is not None:
                            continue
                        if premise(mp, m, c):
                            slot[0] += 1
                            if not conclusion(mp, m, c):
                                slot[1] = w(inner=mp, outer=m, composite=c)
    for law_id, _, _ in comp_laws:
        checked, witness = results[law_id]
        reports.append(LawReport(law_id, "fail" if witness else "pass",
                                 checked, witness))

    # -- split mono corollaries ------------------------------------------
    for law_id, member in (("essential-split-mono-is-iso", in_e), ("stable-essential-split-mono-is-iso", in_st),
                           ("subobject-essential-split-mono-is-iso", in_se)):
        checked, witness = 0, None
        for (X, Y), ms in monos.items():
            retractions = enumerate_hom(Y, X)
            for m in ms:
                if not member(m):
                    continue
                split = any(compose(r, m).table == tuple(X.elements)
                            for r in retractions)
                if split:
                    checked += 1
                    if not m.is_bijective:
                        witness = w(split_mono=m)
                        break
            if witness:
                break
        reports.append(LawReport(law_id, "fail" if witness else "pass",
                                 checked, witness))

    # -- pullback stability ----------------------------------------------
    for law_id, member in (("stabilization-pullback-stable", in_st), ("stable-essential-pullback-stable", in_st), ("subobject-essential-pullback-stable", in_se)):
        checked, witness = 0, None
        for (X, Y), ms in monos.items():
            for m in ms:
                if not member(m):
                    continue
                image = m.image
                for W in universe:
                    for x in enumerate_hom(W, Y):
                        checked += 1
                        preim = tuple(sorted(
                            e for e in W.elements if x.table[e] in image))
                        incl = Subobject(W, preim).inclusion()
                        if not member(incl):
                            witness = w(mono=m, along=x, pulled=incl)
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        reports.append(LawReport(law_id, "fail" if witness else "pass",
                                 checked, witness))

    # -- a second mono factor is a pullback of the composite --------------
    checked, witness = 0, None
    for (X, Y), inner in monos.items():
        for (Y2, Z), outer in monos.items():
            if Y2 != Y:
                continue
            for mp in inner:
                for m in outer:
                    c = compose(m, mp)
                    pb = pullback(c, m)
                    checked += 1
                    if pb.apex.size != X.size or \
                            pb.proj_right.image != mp.image:
                        witness = w(inner=mp, outer=m)
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(LawReport("inner-factor-is-pullback-of-composite", "fail" if witness else "pass",
                             checked, witness))

    return reports


@dataclass
class WeakLeftCancellationWitness:
    """A triple showing essential monos lack weak left cancellation:
    m and m.m' essential while m' is not."""

    outer: ConcreteMorphism   # m : M -> A, essential
    inner: ConcreteMorphism   # m': M' -> M, not essential
    composite: ConcreteMorphism

    def to_json(self) -> dict:
        return {"outer": self.outer.to_json(), "inner": self.inner.to_json(),
                "composite": self.composite.to_json()}


def find_weak_left_cancellation_witness(universe: list[FiniteObject]):
    """Search the universe for (m, m') with m and mm' essential but m' not."""
    for A in sorted(universe, key=lambda o: (o.size, o.id)):
        for sub in subalgebras(A):
            m = sub.inclusion()
            if not _essential_image(A, m.image):
                continue
            M = sub.object()
            for inner_sub in subalgebras(M):
                mp = inner_sub.inclusion()
                if _essential_image(M, mp.image):
                    continue
                c = compose(m, mp)
                if _essential_image(A, c.image):
                    return WeakLeftCancellationWitness(m, mp, c)
    return None


# ---------------------------------------------------------------------------
# Hypothesis harness for the designated class S
# ---------------------------------------------------------------------------

def s_class_report(S: MonoClassSpec, universe: list[FiniteObject]) -> list[LawReport]:
    """Bounded verification that S is pullback stable, contains isomorphisms,
    is closed under composition, and has strong left cancellation."""
    reports = []

    def w(**kw):
        return {k: v.to_json() for k, v in kw.items()}

    monos = {}
    for X in universe:
        for Y in universe:
            ms = [f for f in enumerate_hom(X, Y) if f.is_injective]
            if ms:
                monos[(X, Y)] = ms

    checked, witness = 0, None
    for ms in monos.values():
        for m in ms:
            if m.is_bijective:
                checked += 1
                if not S.contains(m):
                    witness = w(iso=m)
    reports.append(LawReport("S-isos", "fail" if witness else "pass",
                             checked, witness))

    checked, witness = 0, None
    for (X, Y), ms in monos.items():
        for m in ms:
            if not S.contains(m):
                continue
            for W in universe:
                for x in enumerate_hom(W, Y):
                    checked += 1
                    preim = tuple(sorted(
                        e for e in W.elements if x.table[e] in m.image))
                    incl = Subobject(W, preim).inclusion()
                    if not S.contains(incl):
                        witness = w(mono=m, along=x, pulled=incl)
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(LawReport("S-pullback-stable", "fail" if witness else "pass",
                             checked, witness))

    checked, witness = 0, None
    for (X, Y), inner in monos.items():
        for (Y2, Z), outer in monos.items():
            if Y2 != Y:
                continue
            for mp in inner:
                if not S.contains(mp):
                    continue
                for m in outer:
                    if not S.contains(m):
                        continue
                    checked += 1
                    c = compose(m, mp)
                    if not S.contains(c):
                        witness = w(inner=mp, outer=m, composite=c)
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(LawReport("S-composition", "fail" if witness else "pass",
                             checked, witness))

    checked, witness = 0, None
    for (X, Y), inner in monos.items():
        for (Y2, Z), outer in monos.items():
            if Y2 != Y:
                continue
            for mp in inner:
                for m in outer:
                    c = compose(m, mp)
                    if S.contains(c):
                        checked += 1
                        if not S.contains(mp):
                            witness = w(inner=mp, outer=m, composite=c)
                            break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(LawReport("S-strong-left-cancellation",
                             "fail" if witness else "pass", checked, witness))
    return reports


# ---------------------------------------------------------------------------
# Computed mono families (the classes that get inverted)
# ---------------------------------------------------------------------------

SE_FAMILY = "subobject_essential"
ESSENTIAL_FAMILY = "essential"
ALL_FAMILY = "all_monos"
ISO_FAMILY = "isos"
STABILIZED_FAMILY = "stabilized"
EXPLICIT_FAMILY = "explicit"


@dataclass(frozen=True)
class MonoFamily:
    """A concrete, testable class of monomorphisms (the class M to invert).

    ``exact`` records whether membership answers are theorems or only
    bounded-search verdicts (relevant for the stabilized kind).
    """

    name: str
    kind: str
    exact: bool = True
    S: MonoClassSpec | None = None
    universe: tuple[FiniteObject, ...] | None = None
    members: frozenset[tuple[FiniteObject, frozenset[int]]] | None = None

    def contains(self, m: ConcreteMorphism) -> bool:
        if not m.is_injective:
            return False
        if self.kind == ALL_FAMILY:
            return True
        if self.kind == ISO_FAMILY:
            return m.is_bijective
        if self.kind == SE_FAMILY:
            return _se_image(m.cod, m.image)
        if self.kind == ESSENTIAL_FAMILY:
            return _essential_image(m.cod, m.image)
        if self.kind == EXPLICIT_FAMILY:
            return canonical_mono(m) in self.members
        if self.kind == STABILIZED_FAMILY:
            return _stabilized_member(self, m.cod, m.image)
        raise PreconditionViolation(f"unknown family kind {self.kind!r}")

    def m_subobjects(self, A: FiniteObject) -> list[Subobject]:
        """Subobjects of A whose inclusion belongs to the family."""
        return [sub for sub in subalgebras(A) if self.contains(sub.inclusion())]


_STABILIZED_CACHE: dict[tuple, bool] = {}


def _stabilized_member(family: MonoFamily, cod: FiniteObject,
                       image: frozenset[int]) -> bool:
    key = (family.name, cod, image)
    hit = _STABILIZED_CACHE.get(key)
    if hit is None:
        sub = Subobject(cod, tuple(sorted(image)))
        verdict = is_stable_essential(sub.inclusion(), family.S,
                                      list(family.universe or ()))
        hit = verdict.value
        _STABILIZED_CACHE[key] = hit
    return hit


def stable_essential_family(backend: str, S: MonoClassSpec,
                            universe: list[FiniteObject]) -> MonoFamily:
    """The class of pullback stable S-essential monos, exact when the backend
    is normal and S is all monos, bounded-stabilized otherwise."""
    if backend in NORMAL_BACKENDS and S.kind == ALL_MONOS:
        return MonoFamily(name=f"Mono_SE[{backend}]", kind=SE_FAMILY, exact=True)
    return MonoFamily(name=f"St(Mono_E)[{backend}]", kind=STABILIZED_FAMILY,
                      exact=False, S=S, universe=tuple(universe))
