"""Spans, span composition, fraction equality, focal conditions, and the
connected-component construction of localized hom sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catcore import (
    ConcreteMorphism,
    FiniteObject,
    Subobject,
    compose,
    enumerate_hom,
    image_subobject,
    inverse,
    subalgebras,
)
from .errors import CompositionMismatch, PreconditionViolation
from .limits import pullback
from .monoclasses import MonoFamily


# ---------------------------------------------------------------------------
# Spans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Span:
    """A pair (f, x) with common domain: x: X -> A backwards, f: X -> B forwards."""

    left: ConcreteMorphism   # x: X -> A
    right: ConcreteMorphism  # f: X -> B

    def __post_init__(self):
        if self.left.dom != self.right.dom:
            raise CompositionMismatch("span legs must share their domain")

    @property
    def src(self) -> FiniteObject:
        return self.left.cod

    @property
    def dst(self) -> FiniteObject:
        return self.right.cod

    @property
    def apex(self) -> FiniteObject:
        return self.left.dom

    def to_json(self) -> dict:
        return {"left": self.left.to_json(), "right": self.right.to_json()}


def identity_span(A: FiniteObject) -> Span:
    from .catcore import identity
    return Span(identity(A), identity(A))


@dataclass(frozen=True)
class NormalizedSpan:
    """A span whose left leg is a canonical subobject inclusion."""

    sub: Subobject            # subobject of the source A
    right: ConcreteMorphism   # f: sub.object() -> B

    def __post_init__(self):
        if self.right.dom != self.sub.object():
            raise CompositionMismatch("right leg must start at the subobject")

    @property
    def src(self) -> FiniteObject:
        return self.sub.ambient

    @property
    def dst(self) -> FiniteObject:
        return self.right.cod

    def span(self) -> Span:
        return Span(self.sub.inclusion(), self.right)

    def sort_key(self):
        return (-self.sub.size, self.sub.elems, self.right.table)

    def to_json(self) -> dict:
        return {"rep_left": self.sub.inclusion().to_json(),
                "rep_right": self.right.to_json()}


def normalize(span: Span) -> NormalizedSpan:
    """Replace a mono left leg by the inclusion of its image (iso conjugation)."""
    if not span.left.is_injective:
        raise PreconditionViolation("only spans with mono left legs normalize")
    sub = image_subobject(span.left)
    pos = {e: i for i, e in enumerate(sub.elems)}
    # iso: sub.object() -> apex, inverse of the corestricted left leg
    iso = inverse(ConcreteMorphism(span.left.dom, sub.object(),
                                   tuple(pos[v] for v in span.left.table)))
    return NormalizedSpan(sub, compose(span.right, iso))


def span_compose(s2: Span, s1: Span) -> Span:
    """Composite of s1: A -> B and s2: B -> C over the pullback of the middle."""
    if s1.dst != s2.src:
        raise CompositionMismatch("spans do not share the middle object")
    pb = pullback(s1.right, s2.left)
    return Span(compose(s1.left, pb.proj_left), compose(s2.right, pb.proj_right))


# ---------------------------------------------------------------------------
# Fraction equality (the diamond search)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Diamond:
    """A commuting diamond witnessing equality of two fractions."""

    u: ConcreteMorphism
    v: ConcreteMorphism
    through: ConcreteMorphism  # the composite x.u : Y -> A, a member of M

    def to_json(self) -> dict:
        return {"u": self.u.to_json(), "v": self.v.to_json(),
                "through": self.through.to_json()}


def fraction_equal(s: Span | NormalizedSpan, t: Span | NormalizedSpan,
                   M: MonoFamily) -> tuple[bool, Diamond | None]:
    """Decide whether two spans present the same fraction.

    Searches for a diamond (u, v) with x.u = x'.v, f.u = f'.v and x.u in M.
    Any such diamond factors through the equalizer of the two composites out
    of the pullback of the left legs, so the search runs over subobjects of
    that equalizer, largest first.
    """
    ns = s if isinstance(s, NormalizedSpan) else normalize(s)
    nt = t if isinstance(t, NormalizedSpan) else normalize(t)
    if ns.src != nt.src or ns.dst != nt.dst:
        raise CompositionMismatch("fractions must share both endpoints")
    if not (M.contains(ns.sub.inclusion()) and M.contains(nt.sub.inclusion())):
        raise PreconditionViolation("both left legs must belong to M")
    A = ns.src
    x, xp = ns.sub.inclusion(), nt.sub.inclusion()
    pb = pullback(x, xp)
    f_p = compose(ns.right, pb.proj_left)
    fp_pp = compose(nt.right, pb.proj_right)
    eq_elems = tuple(e for e in pb.apex.elements
                     if f_p.table[e] == fp_pp.table[e])
    if 0 not in eq_elems:
        return False, None
    eq_sub = Subobject(pb.apex, eq_elems)
    eq_obj = eq_sub.object()
    for ysub in sorted(subalgebras(eq_obj), key=lambda s_: -s_.size):
        apex_elems = tuple(eq_sub.elems[e] for e in ysub.elems)
        u_table = tuple(pb.proj_left.table[e] for e in apex_elems)
        v_table = tuple(pb.proj_right.table[e] for e in apex_elems)
        through = ConcreteMorphism(ysub.object(), A,
                                   tuple(x.table[e] for e in u_table))
        if M.contains(through):
            u = ConcreteMorphism(ysub.object(), x.dom, u_table)
            v = ConcreteMorphism(ysub.object(), xp.dom, v_table)
            return True, Diamond(u, v, through)
    return False, None


# ---------------------------------------------------------------------------
# Focal conditions
# ---------------------------------------------------------------------------

@dataclass
class ConditionReport:
    condition: str  # F0 | F1 | F2 | F3 | Ore-d
    status: str     # "pass" | "fail"
    checked: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"condition": self.condition, "status": self.status,
                "checked": self.checked, "witness": self.witness}


def _family_monos(M: MonoFamily, X: FiniteObject, Y: FiniteObject):
    return [m for m in enumerate_hom(X, Y)
            if m.is_injective and M.contains(m)]


def check_focal(M: MonoFamily, universe: list[FiniteObject]) -> list[ConditionReport]:
    """Exhaustively verify the focal conditions and the right-fraction
    (co)equalizing condition for M over a finite universe."""
    reports: list[ConditionReport] = []

    def jw(**kw):
        return {k: (v.to_json() if hasattr(v, "to_json") else v)
                for k, v in kw.items()}

    # F0: every object receives some member of M
    checked, witness = 0, None
    for X in universe:
        checked += 1
        if not any(_family_monos(M, W, X) for W in universe):
            witness = jw(object=X.id)
            break
    reports.append(ConditionReport("F0", "fail" if witness else "pass",
                                   checked, witness))

    # F1: composable members extend to a member after precomposition
    checked, witness = 0, None
    for X in universe:
        for Y in universe:
            for s1 in _family_monos(M, X, Y):
                for Z in universe:
                    for s0 in _family_monos(M, Y, Z):
                        checked += 1
                        comp = compose(s0, s1)
                        # f = id works whenever M is composition closed
                        found = M.contains(comp)
                        for W in universe if not found else []:
                            for f in enumerate_hom(W, X):
                                if M.contains(compose(comp, f)):
                                    found = True
                                    break
                            if found:
                                break
                        if not found:
                            witness = jw(s1=s1, s0=s0)
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(ConditionReport("F1", "fail" if witness else "pass",
                                   checked, witness))

    # F2: every cospan (f, s) with s in M completes to a square with s' in M
    checked, witness = 0, None
    for A in universe:
        for sX in universe:
            for s in _family_monos(M, sX, A):
                for W in universe:
                    for f in enumerate_hom(W, A):
                        checked += 1
                        if not _f2_square_exists(M, universe, s, f):
                            witness = jw(s=s, f=f)
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    reports.append(ConditionReport("F2", "fail" if witness else "pass",
                                   checked, witness))

    # F3 / Ore: pairs coequalized by a member are equalized by a member.
    # All family members are monos, so a coequalizing member forces f = g.
    checked, witness = 0, None
    non_mono = None
    for X in universe:
        for Y in universe:
            for m in enumerate_hom(X, Y):
                if M.contains(m) and not m.is_injective:
                    non_mono = m
    for X in universe:
        # f = g forced by left cancellation: an equalizing member is any
        # member with codomain X
        has_incoming = any(_family_monos(M, W, X) for W in universe)
        for Y in universe:
            for f in enumerate_hom(X, Y):
                checked += 1
                if not has_incoming:
                    witness = jw(parallel_pair=f)
                    break
            if witness:
                break
        if witness:
            break
    if non_mono is not None:
        witness = jw(non_mono_member=non_mono)
    for cond in ("F3", "Ore-d"):
        reports.append(ConditionReport(cond, "fail" if witness else "pass",
                                       checked, witness))
    return reports


def _f2_square_exists(M: MonoFamily, universe, s: ConcreteMorphism,
                      f: ConcreteMorphism) -> bool:
    W = f.dom
    image = s.image
    # fast path: the pullback of s along f, i.e. the preimage inclusion
    preim = tuple(sorted(e for e in W.elements if f.table[e] in image))
    incl = Subobject(W, preim).inclusion()
    if M.contains(incl):
        return True
    # exhaustive fallback
    for V in universe:
        for sp in _family_monos(M, V, W):
            for fp in enumerate_hom(V, s.dom):
                if all(s.table[fp.table[e]] == f.table[sp.table[e]]
                       for e in V.elements):
                    return True
    return False


# ---------------------------------------------------------------------------
# Localized hom sets as connected components
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FractionClass:
    """An equivalence class of spans (a single hom element of the localization)."""

    src: FiniteObject
    dst: FiniteObject
    index: int
    rep: NormalizedSpan
    members: tuple[NormalizedSpan, ...]

    def to_json(self) -> dict:
        return {"index": self.index, **self.rep.to_json()}


def poincare_hom(A: FiniteObject, B: FiniteObject,
                 M: MonoFamily) -> list[FractionClass]:
    """Hom set of the localization, built as the union of hom(A', B) over
    M-subobjects A' of A, quotiented by fraction equality."""
    msubs = M.m_subobjects(A)
    if not msubs:
        raise PreconditionViolation(
            f"{A.id} receives no member of M (condition F0 fails)")
    spans: list[NormalizedSpan] = []
    for sub in sorted(msubs, key=lambda s_: (-s_.size, s_.elems)):
        for f in enumerate_hom(sub.object(), B):
            spans.append(NormalizedSpan(sub, f))
    parent = list(range(len(spans)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(spans)):
        for j in range(i + 1, len(spans)):
            if find(i) == find(j):
                continue
            equal, _ = fraction_equal(spans[i], spans[j], M)
            if equal:
                ri, rj = find(i), find(j)
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, list[NormalizedSpan]] = {}
    for i, sp in enumerate(spans):
        groups.setdefault(find(i), []).append(sp)
    classes = []
    reps = sorted(groups.values(),
                  key=lambda g: min(sp.sort_key() for sp in g))
    for idx, group in enumerate(reps):
        group_sorted = tuple(sorted(group, key=lambda sp: sp.sort_key()))
        classes.append(FractionClass(src=A, dst=B, index=idx,
                                     rep=group_sorted[0], members=group_sorted))
    return classes


def poincare_hom_zigzag(A: FiniteObject, B: FiniteObject, M: MonoFamily,
                        apexes: list[FiniteObject]) -> int:
    """Independent oracle: count connected components of the hom category of
    spans (2-cells are apex maps commuting with both legs), apexes drawn
    from the given object list."""
    spans = []
    for X in apexes:
        for x in _family_monos(M, X, A):
            for f in enumerate_hom(X, B):
                spans.append(Span(x, f))
    n = len(spans)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(n):
            if i == j or find(i) == find(j):
                continue
            si, sj = spans[i], spans[j]
            if si.apex.backend != sj.apex.backend:
                continue
            linked = any(
                compose(sj.left, s).table == si.left.table and
                compose(sj.right, s).table == si.right.table
                for s in enumerate_hom(si.apex, sj.apex)
            )
            if linked:
                ri, rj = find(i), find(j)
                parent[max(ri, rj)] = min(ri, rj)
    return len({find(i) for i in range(n)})
