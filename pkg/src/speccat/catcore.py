"""Finite concrete pointed categories: objects, morphisms, hom enumeration.

Three backends are supported:

* ``grp``  -- finite groups, given by Cayley tables,
* ``ab``   -- finite abelian groups (Cayley table must be commutative),
* ``pset`` -- finite pointed sets (no operation table).

Element ids are 0-based integers and the basepoint (identity, for groups)
is always element 0.  All enumerations are returned in a fixed canonical
order, so every downstream computation is deterministic.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass

from .errors import (
    BackendMismatch,
    BoundExceeded,
    CompositionMismatch,
    InvalidMorphism,
    InvalidObject,
)

GRP = "grp"
AB = "ab"
PSET = "pset"
BACKENDS = (GRP, AB, PSET)

#: backends in which monomorphisms are exactly the zero-kernel morphisms
NORMAL_BACKENDS = (GRP, AB)

DEFAULT_SIZE_BOUNDS = {GRP: 60, AB: 64, PSET: 16}


def _short_hash(*parts) -> str:
    h = hashlib.blake2b(repr(parts).encode(), digest_size=4)
    return h.hexdigest()


# ---------------------------------------------------------------------------
# Objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FiniteObject:
    """A finite pointed algebra with elements 0..size-1 and basepoint 0."""

    id: str
    backend: str
    size: int
    op: tuple[tuple[int, ...], ...] | None = None
    inv: tuple[int, ...] | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.backend not in BACKENDS:
            raise InvalidObject(f"unknown backend {self.backend!r}")
        if self.size < 1:
            raise InvalidObject("objects must have at least the basepoint")
        if self.backend == PSET:
            if self.op is not None or self.inv is not None:
                raise InvalidObject("pointed sets carry no operation table")
            return
        if self.op is None or self.inv is None:
            raise InvalidObject(f"{self.backend} objects need op and inv tables")
        n = self.size
        if len(self.op) != n or any(len(row) != n for row in self.op):
            raise InvalidObject(f"{self.id}: op table is not {n}x{n}")
        rng = range(n)
        if any(v not in rng for row in self.op for v in row):
            raise InvalidObject(f"{self.id}: op table entry out of range")
        for a in rng:
            if self.op[0][a] != a or self.op[a][0] != a:
                raise InvalidObject(f"{self.id}: element 0 is not the identity")
        for a in rng:
            b = self.inv[a]
            if self.op[a][b] != 0 or self.op[b][a] != 0:
                raise InvalidObject(f"{self.id}: inv table is not two-sided")
        op = self.op
        for a in rng:
            for b in rng:
                ab = op[a][b]
                for c in rng:
                    if op[ab][c] != op[a][op[b][c]]:
                        raise InvalidObject(f"{self.id}: op is not associative")
        if self.backend == AB:
            for a in rng:
                for b in rng:
                    if op[a][b] != op[b][a]:
                        raise InvalidObject(f"{self.id}: ab object must be commutative")

    # identity-based hash; full structural equality stays in place
    def __hash__(self):  # pragma: no cover - trivial
        return hash((self.id, self.backend, self.size))

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def basepoint(self) -> int:
        return 0

    @property
    def is_zero(self) -> bool:
        return self.size == 1

    def mul(self, a: int, b: int) -> int:
        return self.op[a][b]

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels else str(e)

    def __repr__(self):
        return f"<{self.backend}:{self.id}|{self.size}>"


def zero_object(backend: str, id: str = "0") -> FiniteObject:
    if backend == PSET:
        return FiniteObject(id=id, backend=backend, size=1)
    return FiniteObject(id=id, backend=backend, size=1, op=((0,),), inv=(0,))


def pointed_set(name: str, size: int) -> FiniteObject:
    return FiniteObject(id=name, backend=PSET, size=size)


def cyclic_group(n: int, name: str | None = None, backend: str = GRP) -> FiniteObject:
    op = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    inv = tuple((-i) % n for i in range(n))
    return FiniteObject(id=name or f"Z{n}", backend=backend, size=n, op=op, inv=inv)


def _perm_mul(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # (p*q)(i) = p(q(i))
    return tuple(p[q[i]] for i in range(len(p)))


def group_from_permutations(name: str, degree: int,
                            generators: list[list[int]] | list[tuple[int, ...]],
                            backend: str = GRP,
                            size_bound: int | None = None) -> FiniteObject:
    """Close a set of permutations under composition and build a Cayley table.

    Elements are sorted lexicographically as permutation tuples; the identity
    permutation is lexicographically smallest, so it lands at index 0.
    """
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise InvalidObject(f"{name}: {g} is not a permutation of 0..{degree-1}")
    elems = {ident}
    frontier = [ident]
    bound = size_bound or DEFAULT_SIZE_BOUNDS[backend]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = _perm_mul(p, g)
                if q not in elems:
                    elems.add(q)
                    nxt.append(q)
                    if len(elems) > bound:
                        raise BoundExceeded(
                            f"{name}: generated group exceeds size bound {bound}")
        frontier = nxt
    perms = sorted(elems)
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    op = tuple(tuple(index[_perm_mul(perms[i], perms[j])] for j in range(n))
               for i in range(n))
    inv_perm = [tuple(sorted(range(degree), key=lambda k: p[k])) for p in perms]
    inv = tuple(index[p] for p in inv_perm)
    labels = tuple("(" + " ".join(map(str, p)) + ")" for p in perms)
    return FiniteObject(id=name, backend=backend, size=n, op=op, inv=inv,
                        labels=labels)


def group_from_cayley(name: str, table: list[list[int]], backend: str = GRP) -> FiniteObject:
    n = len(table)
    op = tuple(tuple(row) for row in table)
    inv = []
    for a in range(n):
        found = [b for b in range(n) if op[a][b] == 0 and op[b][a] == 0]
        if len(found) != 1:
            raise InvalidObject(f"{name}: element {a} has no two-sided inverse")
        inv.append(found[0])
    return FiniteObject(id=name, backend=backend, size=n, op=op, inv=tuple(inv))


def direct_product(A: FiniteObject, B: FiniteObject, name: str | None = None) -> FiniteObject:
    if A.backend != B.backend:
        raise BackendMismatch(f"{A.id} and {B.id} live in different backends")
    pairs = [(a, b) for a in A.elements for b in B.elements]
    index = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    name = name or f"{A.id}x{B.id}"
    if A.backend == PSET:
        return FiniteObject(id=name, backend=PSET, size=n)
    op = tuple(tuple(index[(A.op[a1][a2], B.op[b1][b2])]
                     for (a2, b2) in pairs)
               for (a1, b1) in pairs)
    inv = tuple(index[(A.inv[a], B.inv[b])] for (a, b) in pairs)
    return FiniteObject(id=name, backend=A.backend, size=n, op=op, inv=inv)


# ---------------------------------------------------------------------------
# Morphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConcreteMorphism:
    """A total basepoint-preserving (and operation-preserving) map table."""

    dom: FiniteObject
    cod: FiniteObject
    table: tuple[int, ...]

    def __post_init__(self):
        if self.dom.backend != self.cod.backend:
            raise BackendMismatch(
                f"morphism {self.dom.id}->{self.cod.id} crosses backends")
        if len(self.table) != self.dom.size:
            raise InvalidMorphism("map table has wrong length")
        if any(v not in self.cod.elements for v in self.table):
            raise InvalidMorphism("map table value out of range")
        if self.table[0] != 0:
            raise InvalidMorphism("map does not preserve the basepoint")
        if self.dom.op is not None:
            t, op_a, op_b = self.table, self.dom.op, self.cod.op
            for a in self.dom.elements:
                for b in self.dom.elements:
                    if t[op_a[a][b]] != op_b[t[a]][t[b]]:
                        raise InvalidMorphism(
                            f"map {self.dom.id}->{self.cod.id} is not a homomorphism")

    def __hash__(self):  # pragma: no cover - trivial
        return hash((self.dom.id, self.cod.id, self.table))

    def __call__(self, e: int) -> int:
        return self.table[e]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.table)

    @property
    def is_injective(self) -> bool:
        return len(set(self.table)) == self.dom.size

    @property
    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.cod.size

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.dom.size == self.cod.size

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.table)

    def __repr__(self):
        return f"{self.dom.id}->{self.cod.id}{list(self.table)}"

    def to_json(self) -> dict:
        return {"dom": self.dom.id, "cod": self.cod.id, "map": list(self.table)}


def identity(A: FiniteObject) -> ConcreteMorphism:
    return ConcreteMorphism(A, A, tuple(A.elements))


def zero_morphism(A: FiniteObject, B: FiniteObject) -> ConcreteMorphism:
    return ConcreteMorphism(A, B, (0,) * A.size)


def compose(g: ConcreteMorphism, f: ConcreteMorphism) -> ConcreteMorphism:
    """g after f."""
    if f.cod != g.dom:
        raise CompositionMismatch(f"cannot compose {g!r} after {f!r}")
    return ConcreteMorphism(f.dom, g.cod, tuple(g.table[v] for v in f.table))


def is_mono(f: ConcreteMorphism) -> bool:
    return f.is_injective


def is_epi(f: ConcreteMorphism) -> bool:
    return f.is_surjective


def is_iso(f: ConcreteMorphism) -> bool:
    return f.is_bijective


def inverse(f: ConcreteMorphism) -> ConcreteMorphism:
    if not f.is_bijective:
        raise InvalidMorphism("only bijective morphisms are invertible")
    table = [0] * f.cod.size
    for e in f.dom.elements:
        table[f.table[e]] = e
    return ConcreteMorphism(f.cod, f.dom, tuple(table))


def is_mono_by_cancellation(f: ConcreteMorphism, probes: list[FiniteObject]) -> bool:
    """Slow categorical mono test: left cancellation against all probe maps."""
    for X in probes:
        homs = enumerate_hom(X, f.dom)
        for g1, g2 in itertools.combinations(homs, 2):
            if compose(f, g1).table == compose(f, g2).table:
                return False
    return True


def is_epi_by_cancellation(f: ConcreteMorphism, probes: list[FiniteObject]) -> bool:
    """Slow categorical epi test: right cancellation against all probe maps."""
    for Y in probes:
        homs = enumerate_hom(f.cod, Y)
        for g1, g2 in itertools.combinations(homs, 2):
            if compose(g1, f).table == compose(g2, f).table:
                return False
    return True


# ---------------------------------------------------------------------------
# Subobjects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subobject:
    """A canonical subobject: a sorted element subset closed under the ops."""

    ambient: FiniteObject
    elems: tuple[int, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.elems))) != self.elems:
            raise InvalidObject("subobject elements must be sorted and distinct")
        if 0 not in self.elems:
            raise InvalidObject("subobject must contain the basepoint")

    def __hash__(self):  # pragma: no cover - trivial
        return hash((self.ambient.id, self.elems))

    @property
    def size(self) -> int:
        return len(self.elems)

    @property
    def is_zero(self) -> bool:
        return len(self.elems) == 1

    @property
    def is_full(self) -> bool:
        return len(self.elems) == self.ambient.size

    def object(self) -> FiniteObject:
        return _subobject_as_object(self.ambient, self.elems)

    def inclusion(self) -> ConcreteMorphism:
        return ConcreteMorphism(self.object(), self.ambient, self.elems)


_SUB_OBJECT_CACHE: dict[tuple, FiniteObject] = {}


def _subobject_as_object(ambient: FiniteObject, elems: tuple[int, ...]) -> FiniteObject:
    if len(elems) == ambient.size:
        return ambient
    key = (ambient, elems)
    obj = _SUB_OBJECT_CACHE.get(key)
    if obj is not None:
        return obj
    pos = {e: i for i, e in enumerate(elems)}
    name = f"{ambient.id}{{{','.join(map(str, elems))}}}"
    if ambient.backend == PSET:
        obj = FiniteObject(id=name, backend=PSET, size=len(elems))
    else:
        op = tuple(tuple(pos[ambient.op[a][b]] for b in elems) for a in elems)
        inv = tuple(pos[ambient.inv[a]] for a in elems)
        labels = tuple(ambient.label(a) for a in elems) if ambient.labels else None
        obj = FiniteObject(id=name, backend=ambient.backend, size=len(elems),
                           op=op, inv=inv, labels=labels)
    _SUB_OBJECT_CACHE[key] = obj
    return obj


def closure(A: FiniteObject, seed) -> tuple[int, ...]:
    """Smallest subalgebra of A containing the seed elements."""
    got = {0} | set(seed)
    if A.op is None:
        return tuple(sorted(got))
    frontier = list(got)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(got):
                for c in (A.op[a][b], A.op[b][a]):
                    if c not in got:
                        got.add(c)
                        nxt.append(c)
            c = A.inv[a]
            if c not in got:
                got.add(c)
                nxt.append(c)
        frontier = nxt
    return tuple(sorted(got))


_SUBALGEBRA_CACHE: dict[FiniteObject, tuple[Subobject, ...]] = {}


def subalgebras(A: FiniteObject) -> tuple[Subobject, ...]:
    """All subobjects of A, sorted by (size, element tuple)."""
    cached = _SUBALGEBRA_CACHE.get(A)
    if cached is not None:
        return cached
    if A.op is None:
        if A.size > 20:
            raise BoundExceeded(f"{A.id}: too many subsets to enumerate")
        subs = []
        rest = [e for e in A.elements if e != 0]
        for r in range(len(rest) + 1):
            for extra in itertools.combinations(rest, r):
                subs.append(tuple(sorted((0,) + extra)))
    else:
        found = {closure(A, ())}
        frontier = list(found)
        while frontier:
            nxt = []
            for sub in frontier:
                inside = set(sub)
                for g in A.elements:
                    if g in inside:
                        continue
                    bigger = closure(A, sub + (g,))
                    if bigger not in found:
                        found.add(bigger)
                        nxt.append(bigger)
            frontier = nxt
        subs = sorted(found)
    result = tuple(Subobject(A, s) for s in sorted(subs, key=lambda s: (len(s), s)))
    _SUBALGEBRA_CACHE[A] = result
    return result


def is_normal_subset(A: FiniteObject, elems) -> bool:
    """Closed under conjugation (groups); in pointed sets every subobject is a kernel."""
    if A.op is None:
        return True
    inside = set(elems)
    for g in A.elements:
        gi = A.inv[g]
        for n in inside:
            if A.op[A.op[g][n]][gi] not in inside:
                return False
    return True


_NORMAL_CACHE: dict[FiniteObject, tuple[Subobject, ...]] = {}


def normal_subalgebras(A: FiniteObject) -> tuple[Subobject, ...]:
    cached = _NORMAL_CACHE.get(A)
    if cached is None:
        cached = tuple(s for s in subalgebras(A) if is_normal_subset(A, s.elems))
        _NORMAL_CACHE[A] = cached
    return cached


def normal_closure(A: FiniteObject, seed) -> tuple[int, ...]:
    """Smallest normal subalgebra of A containing the seed elements."""
    if A.op is None:
        return tuple(sorted({0} | set(seed)))
    elems = closure(A, seed)
    while True:
        extra = set()
        for g in A.elements:
            gi = A.inv[g]
            for n in elems:
                c = A.op[A.op[g][n]][gi]
                if c not in elems and c not in extra:
                    extra.add(c)
        if not extra:
            return elems
        elems = closure(A, tuple(elems) + tuple(extra))


def image_subobject(f: ConcreteMorphism) -> Subobject:
    return Subobject(f.cod, tuple(sorted(f.image)))


def restrict_to_subobject(f: ConcreteMorphism, sub: Subobject) -> ConcreteMorphism:
    """Restriction of f: A -> B along the inclusion of a subobject of A."""
    if sub.ambient != f.dom:
        raise CompositionMismatch("subobject does not live in dom(f)")
    return ConcreteMorphism(sub.object(), f.cod, tuple(f.table[e] for e in sub.elems))


def corestrict(f: ConcreteMorphism, sub: Subobject) -> ConcreteMorphism:
    """f with codomain cut down to a subobject containing its image."""
    if sub.ambient != f.cod or not f.image <= set(sub.elems):
        raise CompositionMismatch("image does not land in the subobject")
    pos = {e: i for i, e in enumerate(sub.elems)}
    return ConcreteMorphism(f.dom, sub.object(), tuple(pos[v] for v in f.table))


# ---------------------------------------------------------------------------
# Hom enumeration
# ---------------------------------------------------------------------------

_HOM_CACHE: dict[tuple, tuple[ConcreteMorphism, ...]] = {}


def element_order(A: FiniteObject, a: int) -> int:
    k, x = 1, a
    while x != 0:
        x = A.op[x][a]
        k += 1
    return k


def generating_sequence(A: FiniteObject) -> tuple[int, ...]:
    """Greedy minimal generating sequence in canonical element order."""
    gens: tuple[int, ...] = ()
    have = closure(A, gens)
    for a in A.elements:
        if a not in have:
            gens = gens + (a,)
            have = closure(A, gens)
            if len(have) == A.size:
                break
    return gens


def _element_words(A: FiniteObject, gens: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Express each element as a word (sequence of generator indices)."""
    words: list[tuple[int, ...] | None] = [None] * A.size
    words[0] = ()
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = A.op[x][g]
                if words[y] is None:
                    words[y] = words[x] + (gi,)
                    nxt.append(y)
        frontier = nxt
    if any(w is None for w in words):
        raise InvalidObject(f"{A.id}: generating sequence does not generate")
    return words  # type: ignore[return-value]


def enumerate_hom(A: FiniteObject, B: FiniteObject) -> tuple[ConcreteMorphism, ...]:
    """All morphisms A -> B, duplicate-free, sorted by map table."""
    if A.backend != B.backend:
        raise BackendMismatch(f"hom({A.id},{B.id}): backends differ")
    key = (A, B)
    cached = _HOM_CACHE.get(key)
    if cached is not None:
        return cached
    if A.op is None:
        tables = [
            (0,) + rest
            for rest in itertools.product(B.elements, repeat=A.size - 1)
        ]
        homs = tuple(ConcreteMorphism(A, B, t) for t in sorted(tables))
        _HOM_CACHE[key] = homs
        return homs
    gens = generating_sequence(A)
    words = _element_words(A, gens)
    gen_orders = [element_order(A, g) for g in gens]
    tables = []
    # images of a generator must have order dividing the generator's order
    choice_sets = [
        [b for b in B.elements if gen_orders[i] % element_order(B, b) == 0]
        for i in range(len(gens))
    ]
    for images in itertools.product(*choice_sets):
        table = []
        ok = True
        for w in words:
            v = 0
            for gi in w:
                v = B.op[v][images[gi]]
            table.append(v)
        t, op_a, op_b = table, A.op, B.op
        for a in A.elements:
            ta = t[a]
            row = op_a[a]
            for b in A.elements:
                if t[row[b]] != op_b[ta][t[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            tables.append(tuple(table))
    homs = tuple(ConcreteMorphism(A, B, t) for t in sorted(set(tables)))
    _HOM_CACHE[key] = homs
    return homs


def enumerate_monos(A: FiniteObject, B: FiniteObject) -> tuple[ConcreteMorphism, ...]:
    return tuple(f for f in enumerate_hom(A, B) if f.is_injective)


# ---------------------------------------------------------------------------
# Backend registry and JSON descriptors
# ---------------------------------------------------------------------------

class Backend:
    """An object registry for one of the three concrete backends."""

    def __init__(self, kind: str, size_bound: int | None = None):
        if kind not in BACKENDS:
            raise InvalidObject(f"unknown backend kind {kind!r}")
        self.kind = kind
        self.size_bound = size_bound or DEFAULT_SIZE_BOUNDS[kind]
        self.objects: dict[str, FiniteObject] = {}
        self.register(zero_object(kind))

    @property
    def zero(self) -> FiniteObject:
        return self.objects["0"]

    def register(self, obj: FiniteObject) -> FiniteObject:
        if obj.backend != self.kind:
            raise BackendMismatch(f"{obj.id} belongs to backend {obj.backend}")
        if obj.size > self.size_bound:
            raise BoundExceeded(
                f"{obj.id}: size {obj.size} exceeds bound {self.size_bound}")
        known = self.objects.get(obj.id)
        if known is not None and known != obj:
            raise InvalidObject(f"conflicting registration for id {obj.id!r}")
        self.objects[obj.id] = obj
        return obj

    def registered(self) -> list[FiniteObject]:
        return [self.objects[k] for k in sorted(self.objects)]


def object_from_descriptor(desc: dict, backend: str | None = None) -> FiniteObject:
    """Build an object from a JSON descriptor.

    Formats::

        {"kind": "group", "name": "S3",
         "presentation": {"permutations": [[1,0,2],[1,2,0]], "degree": 3}}
        {"kind": "group", "name": "C4", "cayley": [[...], ...]}
        {"kind": "pointed_set", "name": "P3", "size": 3}
    """
    kind = desc.get("kind")
    name = desc.get("name")
    if not isinstance(name, str) or not name:
        raise InvalidObject("descriptor needs a non-empty 'name'")
    if kind == "pointed_set":
        size = desc.get("size")
        if not isinstance(size, int) or size < 1:
            raise InvalidObject(f"{name}: bad pointed set size {size!r}")
        return pointed_set(name, size)
    if kind == "group":
        target = backend or GRP
        if "presentation" in desc:
            pres = desc["presentation"]
            return group_from_permutations(name, pres["degree"],
                                           pres["permutations"], backend=target)
        if "cayley" in desc:
            return group_from_cayley(name, desc["cayley"], backend=target)
        raise InvalidObject(f"{name}: group descriptor needs 'presentation' or 'cayley'")
    raise InvalidObject(f"unknown descriptor kind {kind!r}")


def load_objects(text: str, backend: str | None = None) -> list[FiniteObject]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [object_from_descriptor(d, backend) for d in data]
