"""The localized category obtained by inverting the pullback stable essential
monomorphisms, its canonical functor, limit-preservation checks, uniform
objects, and division-monoid reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catcore import (
    ConcreteMorphism,
    FiniteObject,
    Subobject,
    enumerate_hom,
    subalgebras,
)
from .errors import ConsistencyError, PreconditionViolation
from .limits import PullbackResult, pullback
from .monoclasses import (
    MonoClassSpec,
    MonoFamily,
    s_class_report,
    stable_essential_family,
)
from .fractions import NormalizedSpan, poincare_hom


# ---------------------------------------------------------------------------
# Minimal M-subobject
# ---------------------------------------------------------------------------

def minimal_M_subobject(A: FiniteObject, M: MonoFamily,
                        cross_check_targets: list[FiniteObject] | None = None
                        ) -> Subobject:
    """The intersection of all M-subobjects of A.

    Because M is closed under composition and pullback, the set of
    M-subobjects is intersection-closed, so this is itself an M-subobject —
    asserted, not assumed.  The hom sets of the localization out of A are in
    bijection with plain homs out of this minimum; when cross-check targets
    are supplied, that bijection is verified by counting against the span
    quotient.
    """
    msubs = M.m_subobjects(A)
    if not msubs:
        raise PreconditionViolation(f"{A.id} receives no member of M")
    elems = set(A.elements)
    for sub in msubs:
        elems &= set(sub.elems)
    amin = Subobject(A, tuple(sorted(elems)))
    if not M.contains(amin.inclusion()):
        raise ConsistencyError(
            f"intersection of M-subobjects of {A.id} is not an M-subobject; "
            "the family is not intersection-closed as the theory requires")
    for B in cross_check_targets or []:
        quotient = poincare_hom(A, B, M)
        direct = enumerate_hom(amin.object(), B)
        if len(quotient) != len(direct):
            raise ConsistencyError(
                f"hom({A.id},{B.id}): span quotient has {len(quotient)} "
                f"classes but hom from the minimal M-subobject has "
                f"{len(direct)} elements")
    return amin


# ---------------------------------------------------------------------------
# Hom classes of the localization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpecClass:
    """One hom element of the localization: the class of all fractions that
    agree with ``label`` on the minimal M-subobject of the source."""

    src: FiniteObject
    dst: FiniteObject
    index: int
    rep: NormalizedSpan
    label: tuple[int, ...]  # rep restricted to the minimal M-subobject

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.label)

    def to_json(self) -> dict:
        return {"index": self.index, **self.rep.to_json()}


class SpectralCategory:
    """The category of fractions of a backend at a family M of monos.

    Objects are the registered backend objects; hom sets are materialized as
    :class:`SpecClass` lists via the minimal-M-subobject presentation, with
    composition reduced to restriction lookups.  ``exact`` is False when M
    itself is only a bounded-search approximation.
    """

    def __init__(self, backend: str, M: MonoFamily,
                 objects: list[FiniteObject]):
        self.backend = backend
        self.M = M
        self.objects = tuple(objects)
        self.exact = M.exact
        self._amin: dict[FiniteObject, Subobject] = {}
        self._homs: dict[tuple, tuple[SpecClass, ...]] = {}
        self._index: dict[tuple, dict[tuple, int]] = {}

    # -- hom sets ---------------------------------------------------------

    def amin(self, A: FiniteObject) -> Subobject:
        sub = self._amin.get(A)
        if sub is None:
            sub = minimal_M_subobject(A, self.M)
            self._amin[A] = sub
        return sub

    def hom(self, A: FiniteObject, B: FiniteObject) -> tuple[SpecClass, ...]:
        key = (A, B)
        cached = self._homs.get(key)
        if cached is not None:
            return cached
        amin = self.amin(A)
        reps = sorted(enumerate_hom(amin.object(), B), key=lambda f: f.table)
        classes = tuple(
            SpecClass(src=A, dst=B, index=i,
                      rep=NormalizedSpan(amin, f), label=f.table)
            for i, f in enumerate(reps))
        self._homs[key] = classes
        self._index[key] = {c.label: c.index for c in classes}
        return classes

    def class_of_label(self, A: FiniteObject, B: FiniteObject,
                       label: tuple[int, ...]) -> SpecClass:
        homs = self.hom(A, B)
        idx = self._index[(A, B)].get(label)
        if idx is None:
            raise ConsistencyError(
                f"no class of hom({A.id},{B.id}) carries label {label}")
        return homs[idx]

    def class_of_span(self, span: NormalizedSpan) -> SpecClass:
        """Identify the class of any fraction by restricting it to the
        minimal M-subobject of its source (contained in every M-subobject)."""
        A = span.src
        amin = self.amin(A)
        if not set(amin.elems) <= set(span.sub.elems):
            raise ConsistencyError(
                f"fraction domain {span.sub.elems} misses the minimal "
                f"M-subobject {amin.elems} of {A.id}")
        pos = {e: i for i, e in enumerate(span.sub.elems)}
        label = tuple(span.right.table[pos[e]] for e in amin.elems)
        return self.class_of_label(A, span.dst, label)

    # -- structure --------------------------------------------------------

    def identity_class(self, A: FiniteObject) -> SpecClass:
        return self.class_of_label(A, A, self.amin(A).elems)

    def zero_class(self, A: FiniteObject, B: FiniteObject) -> SpecClass:
        return self.class_of_label(A, B, (0,) * self.amin(A).size)

    def compose(self, c2: SpecClass, c1: SpecClass) -> SpecClass:
        """Composite of c1: A -> B and c2: B -> C.

        Closure of M under composition and pullback forces every fraction
        out of A to map the minimal M-subobject of A into the minimal
        M-subobject of B, so composition is a double restriction lookup.
        """
        if c1.dst != c2.src:
            raise PreconditionViolation("classes are not composable")
        bmin = self.amin(c1.dst)
        bpos = {e: i for i, e in enumerate(bmin.elems)}
        label = []
        for v in c1.label:
            if v not in bpos:
                raise ConsistencyError(
                    f"class label value {v} of hom({c1.src.id},{c1.dst.id}) "
                    f"leaves the minimal M-subobject of {c1.dst.id}")
            label.append(c2.label[bpos[v]])
        return self.class_of_label(c1.src, c2.dst, tuple(label))

    def is_invertible(self, c: SpecClass) -> bool:
        ida, idb = self.identity_class(c.src), self.identity_class(c.dst)
        return any(self.compose(d, c) == ida and self.compose(c, d) == idb
                   for d in self.hom(c.dst, c.src))

    # -- export -----------------------------------------------------------

    def to_json(self) -> dict:
        homs = []
        comp = []
        pairs = [(A, B) for A in self.objects for B in self.objects]
        for A, B in pairs:
            homs.append({"dom": A.id, "cod": B.id,
                         "classes": [c.to_json() for c in self.hom(A, B)]})
        for A, B in pairs:
            for C in self.objects:
                table = [[self.compose(c2, c1).index
                          for c2 in self.hom(B, C)]
                         for c1 in self.hom(A, B)]
                comp.append({"dom": A.id, "mid": B.id, "cod": C.id,
                             "table": table})
        return {"objects": [A.id for A in self.objects],
                "exact": self.exact, "homs": homs, "composition": comp}


def build_spec(backend: str, S: MonoClassSpec,
               universe: list[FiniteObject], verify: bool = True
               ) -> SpectralCategory:
    """Assemble the localization at the pullback stable S-essential monos.

    Refuses to build when S fails its required hypotheses on the universe
    (pullback stability, isomorphisms, composition, strong left cancellation);
    with ``verify`` the minimal-subobject hom sets are counted against the
    independent span-quotient construction for every object pair.
    """
    failures = [r for r in s_class_report(S, universe) if r.status != "pass"]
    if failures:
        raise PreconditionViolation(
            "designated class S violates its hypotheses: "
            + "; ".join(f"{r.law_id} ({r.witness})" for r in failures))
    M = stable_essential_family(backend, S, universe)
    spec = SpectralCategory(backend, M, universe)
    if verify:
        for A in universe:
            minimal_M_subobject(A, M, cross_check_targets=list(universe))
    return spec


def canonical_functor(f: ConcreteMorphism, spec: SpectralCategory) -> SpecClass:
    """The localization functor on morphisms: f goes to the class of the
    fraction with identity denominator."""
    full = Subobject(f.dom, tuple(f.dom.elements))
    return spec.class_of_span(NormalizedSpan(full, f))


# ---------------------------------------------------------------------------
# Limit preservation
# ---------------------------------------------------------------------------

@dataclass
class ConePreservationReport:
    cospan: tuple[str, str]
    status: str  # "pass" | "fail"
    cones_checked: int
    witness: dict | None = None

    def to_json(self) -> dict:
        return {"cospan": list(self.cospan), "status": self.status,
                "cones_checked": self.cones_checked, "witness": self.witness,
                "mode": "bounded"}


def verify_limit_preservation(spec: SpectralCategory,
                              cospans: list[tuple[ConcreteMorphism,
                                                  ConcreteMorphism]]
                              ) -> list[ConePreservationReport]:
    """Check that the localization functor sends each backend pullback to a
    pullback in the localized category: for every object W of the registered
    universe and every commuting cone of classes over the image cospan, a
    mediating class through the image apex exists and is unique."""
    reports = []
    for f, g in cospans:
        pb: PullbackResult = pullback(f, g)
        pf = canonical_functor(f, spec)
        pg = canonical_functor(g, spec)
        pl = canonical_functor(pb.proj_left, spec)
        pr = canonical_functor(pb.proj_right, spec)
        checked, witness = 0, None
        for W in spec.objects:
            mediators_of = {}
            for p in spec.hom(W, f.dom):
                for q in spec.hom(W, g.dom):
                    if spec.compose(pf, p) != spec.compose(pg, q):
                        continue
                    checked += 1
                    mediators = [h for h in spec.hom(W, pb.apex)
                                 if spec.compose(pl, h) == p
                                 and spec.compose(pr, h) == q]
                    if len(mediators) != 1:
                        witness = {"probe": W.id, "p": p.to_json(),
                                   "q": q.to_json(),
                                   "mediators": len(mediators)}
                        break
                if witness:
                    break
            if witness:
                break
        reports.append(ConePreservationReport(
            cospan=(f"{f.dom.id}->{f.cod.id}", f"{g.dom.id}->{g.cod.id}"),
            status="fail" if witness else "pass",
            cones_checked=checked, witness=witness))
    return reports


# ---------------------------------------------------------------------------
# Uniform objects and division monoids
# ---------------------------------------------------------------------------

@dataclass
class UniformReport:
    object_id: str
    uniform: bool
    witness: dict | None = None

    def __bool__(self):
        return self.uniform

    def to_json(self) -> dict:
        return {"object": self.object_id, "uniform": self.uniform,
                "witness": self.witness}


def is_uniform(A: FiniteObject, M: MonoFamily) -> UniformReport:
    """A is uniform when it is nonzero and every nonzero subobject inclusion
    belongs to M.

    In these concrete backends every incoming morphism with zero kernel
    factors as an iso onto a subobject, so subobject inclusions exhaust the
    quantifier.  As in module theory, the zero object does not count as
    uniform (its endomorphism monoid in the localization is trivial, hence
    not a division monoid).
    """
    if A.size == 1:
        return UniformReport(A.id, False, {"reason": "zero object"})
    for sub in subalgebras(A):
        if sub.size == 1:
            continue
        if not M.contains(sub.inclusion()):
            return UniformReport(A.id, False,
                                 {"subobject": sub.inclusion().to_json()})
    return UniformReport(A.id, True)


@dataclass
class DivisionMonoidReport:
    object_id: str
    size: int
    zero_index: int
    invertible: tuple[int, ...]
    verdict: bool

    def __bool__(self):
        return self.verdict

    def to_json(self) -> dict:
        return {"object": self.object_id, "size": self.size,
                "zero_index": self.zero_index,
                "invertible": list(self.invertible), "verdict": self.verdict}


def end_spec_division_check(A: FiniteObject,
                            spec: SpectralCategory) -> DivisionMonoidReport:
    """Is the endomorphism monoid of A in the localization a division monoid
    (nontrivial, with invertibles exactly the nonzero elements)?"""
    endos = spec.hom(A, A)
    zero = spec.zero_class(A, A)
    invertible = tuple(c.index for c in endos if spec.is_invertible(c))
    nonzero = tuple(c.index for c in endos if c != zero)
    verdict = len(endos) >= 2 and invertible == nonzero
    return DivisionMonoidReport(A.id, len(endos), zero.index,
                                invertible, verdict)
