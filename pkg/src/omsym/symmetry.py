"""Symmetries of chirotopes: permutations, group search and group recognition."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from math import gcd
from typing import Iterable, Sequence

from .core import Chirotope

ROTATION, REFLECTION, M_ONLY, NONE = "rotation", "reflection", "m_only", "none"


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of ``{1..n}`` stored as its one-line images."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                img[a - 1] = b
        return cls(tuple(img))

    @classmethod
    def from_mapping(cls, n: int, mapping: dict) -> "Permutation":
        return cls(tuple(mapping.get(i, i) for i in range(1, n + 1)))

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(tuple(int(x) for x in text.replace(",", " ").split()))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(self * other)(i) = self(other(i))``."""
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, x in enumerate(self.images, start=1):
            inv[x - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(1, self.n + 1):
            if i in seen:
                continue
            cyc = [i]
            seen.add(i)
            j = self(i)
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self(j)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def fixed_points(self) -> list[int]:
        return [i for i, x in enumerate(self.images, start=1) if i == x]

    def extend(self, extra: int = 1) -> "Permutation":
        """Same permutation on ``1..n``, fixing ``n+1..n+extra``."""
        return Permutation(self.images + tuple(range(self.n + 1, self.n + extra + 1)))

    def one_line(self) -> str:
        return " ".join(str(x) for x in self.images)

    def __str__(self):
        return self.one_line()


def _apply(p: Permutation, tup) -> tuple:
    return tuple(p.images[x - 1] for x in tup)


def classify_permutation(chi: Chirotope, p: Permutation) -> str:
    if p.n != chi.n:
        raise ValueError("permutation size does not match the ground set")
    same = neg = absolute = True
    for t, s in zip(chi.subsets(), chi.signs):
        v = chi.value(_apply(p, t))
        same &= v == s
        neg &= v == -s
        absolute &= abs(v) == abs(s)
        if not absolute:
            return NONE
    if same:
        return ROTATION
    if neg:
        return REFLECTION
    return M_ONLY


def is_rotation(chi: Chirotope, p: Permutation) -> bool:
    return classify_permutation(chi, p) == ROTATION


def verify_m_symmetry(chi: Chirotope, p: Permutation) -> bool:
    """True iff ``p`` maps the set of bases onto itself."""
    return classify_permutation(chi, p) != NONE


# group search

@dataclass
class SymmetryGroup:
    elements: list
    kinds: list

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def rotation_subgroup(self) -> list[int]:
        return [i for i, k in enumerate(self.kinds) if k == ROTATION]

    def rotations(self) -> list[Permutation]:
        return [self.elements[i] for i in self.rotation_subgroup]


class SearchCapExceeded(RuntimeError):
    pass


def _search_order(chi: Chirotope) -> list[int]:
    first = chi.bases()[0]
    return list(first) + [e for e in range(1, chi.n + 1) if e not in first]


def _symmetries(chi: Chirotope, rotations_only: bool, cap: int) -> list[tuple[Permutation, str]]:
    n, r = chi.n, chi.r
    order = _search_order(chi)
    degree = Counter(e for b in chi.bases() for e in b)
    img = {}
    used = [False] * (n + 1)
    found = []
    nodes = 0

    def consistent(depth: int, hyp: frozenset) -> frozenset | None:
        x = order[depth]
        prev = order[:depth]
        for q in combinations(prev, r - 1):
            src = q + (x,)
            v = chi.value(src)
            w = chi.value(tuple(img[e] for e in src))
            if abs(v) != abs(w):
                return None
            if v:
                hyp = hyp & {v * w}
                if not hyp:
                    return None
        return hyp

    def go(depth: int, hyp: frozenset):
        nonlocal nodes
        if depth == n:
            images = tuple(img[i] for i in range(1, n + 1))
            found.append((Permutation(images), ROTATION if 1 in hyp else REFLECTION))
            return
        x = order[depth]
        for y in range(1, n + 1):
            if used[y] or degree[x] != degree[y]:
                continue
            nodes += 1
            if nodes > cap:
                raise SearchCapExceeded(f"symmetry search exceeded {cap} nodes")
            img[x] = y
            h = consistent(depth, hyp) if depth >= r - 1 else hyp
            if h is not None:
                used[y] = True
                go(depth + 1, h)
                used[y] = False
            del img[x]

    go(0, frozenset({1}) if rotations_only else frozenset({1, -1}))
    found.sort(key=lambda pk: pk[0].images)
    return found


@lru_cache(maxsize=64)
def _cached_group(chi: Chirotope, rotations_only: bool, cap: int) -> tuple:
    return tuple(_symmetries(chi, rotations_only, cap))


def symmetry_group(chi: Chirotope, rotations_only: bool = False, cap: int = 2_000_000) -> SymmetryGroup:
    """All rotations and reflections of ``chi`` (or only rotations), in canonical order."""
    pairs = _cached_group(chi, rotations_only, cap)
    return SymmetryGroup([p for p, _ in pairs], [k for _, k in pairs])


def rotation_group(chi: Chirotope, cap: int = 2_000_000) -> list[Permutation]:
    return symmetry_group(chi, rotations_only=True, cap=cap).elements


# group recognition

def closure(generators: Iterable[Permutation]) -> list[Permutation]:
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one element")
    ident = Permutation.identity(gens[0].n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                k = g * h
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(seen)


def is_closed(elements: Iterable[Permutation]) -> bool:
    s = set(elements)
    return all(a * b in s for a in s for b in s)


@dataclass
class GroupDescriptor:
    name: str
    parameter: int | None
    order: int
    element_orders: dict
    generators: list = field(default_factory=list)
    kinds: list = field(default_factory=list)
    allowed: bool | None = None

    def to_json(self) -> dict:
        out = {
            "order": self.order,
            "name": self.name,
            "parameter": self.parameter,
            "element_orders": {str(k): v for k, v in sorted(self.element_orders.items())},
            "generators": [g.one_line() for g in self.generators],
            "kinds": list(self.kinds),
        }
        if self.allowed is not None:
            out["allowed"] = self.allowed
        return out


def _generates(gens: list[Permutation], size: int) -> bool:
    return len(closure(gens)) == size


def _von_dyck_witness(elements: list[Permutation], third: int) -> list[Permutation] | None:
    # a^2 = b^3 = (ab)^third = 1 generating the whole group
    invols = [a for a in elements if a.order() == 2]
    triples = [b for b in elements if b.order() == 3]
    for a in invols:
        for b in triples:
            if (a * b).order() == third and _generates([a, b], len(elements)):
                return [a, b]
    return None


def _dihedral_witness(elements: list[Permutation], m: int) -> list[Permutation] | None:
    for g in elements:
        if g.order() != m:
            continue
        cyc = {g**k for k in range(m)}
        ginv = g.inverse()
        for h in elements:
            if h.order() == 2 and h not in cyc and h * g * h.inverse() == ginv:
                return [g, h]
    return None


def identify_group(elements: Iterable[Permutation], allow_closure: bool = True) -> GroupDescriptor:
    elems = list(dict.fromkeys(elements))
    if not elems:
        raise ValueError("empty group")
    if not is_closed(elems) or Permutation.identity(elems[0].n) not in elems:
        if not allow_closure:
            raise ValueError("input is not closed under composition")
        elems = closure(elems)
    elems = sorted(elems)
    size = len(elems)
    orders = Counter(g.order() for g in elems)

    def desc(name, param, gens):
        return GroupDescriptor(name, param, size, dict(orders), gens)

    gen = next((g for g in elems if g.order() == size), None)
    if gen is not None:
        return desc(f"C{size}", size, [gen])
    if size % 2 == 0:
        w = _dihedral_witness(elems, size // 2)
        if w is not None:
            return desc(f"D{size}", size // 2, w)
    signatures = {
        12: ("A4", {1: 1, 2: 3, 3: 8}, 3),
        24: ("S4", {1: 1, 2: 9, 3: 8, 4: 6}, 4),
        60: ("A5", {1: 1, 2: 15, 3: 20, 5: 24}, 5),
    }
    if size in signatures:
        name, sig, third = signatures[size]
        if dict(orders) == sig:
            w = _von_dyck_witness(elems, third)
            if w is not None:
                return desc(name, None, w)
    return desc("other", None, [])


def describe_symmetries(chi: Chirotope, rotations_only: bool = False) -> GroupDescriptor:
    grp = symmetry_group(chi, rotations_only=rotations_only)
    d = identify_group(grp.elements)
    d.kinds = sorted(Counter(grp.kinds).items())
    d.kinds = [f"{k}:{v}" for k, v in d.kinds]
    return d


# orbits and fixed points

def orbits(elements: Iterable[Permutation], chi: Chirotope) -> list[tuple[tuple[int, ...], int]]:
    """Orbit partition of the ground set, each orbit with its rank."""
    parent = list(range(chi.n + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for g in elements:
        for i in range(1, chi.n + 1):
            a, b = find(i), find(g(i))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for i in range(1, chi.n + 1):
        groups.setdefault(find(i), []).append(i)
    return [(tuple(o), chi.rank_of(o)) for o in sorted(groups.values())]


def is_trivial_rotation(chi: Chirotope, p: Permutation, parallel: Iterable | None = None) -> bool:
    """Every element is sent to itself or to a parallel element."""
    if parallel is None:
        parallel = chi.simplicity_report().parallel
    par = {frozenset(pq) for pq in parallel}
    return all(p(x) == x or frozenset((x, p(x))) in par for x in range(1, chi.n + 1))


@dataclass
class FixedRankResult:
    fixed: list
    rank: int
    bound: int
    passed: bool

    def __bool__(self):
        return self.passed


def fixed_rank_check(chi: Chirotope, p: Permutation) -> FixedRankResult:
    if chi.loops():
        raise ValueError("fixed-rank bound needs a loopless chirotope")
    if not is_rotation(chi, p):
        raise ValueError("permutation is not a rotation")
    if is_trivial_rotation(chi, p):
        raise ValueError("rotation is trivial")
    fixed = p.fixed_points()
    rk = chi.rank_of(fixed)
    return FixedRankResult(fixed, rk, chi.r - 2, rk <= chi.r - 2)


@dataclass
class RigidityVerdict:
    applicable: bool
    holds: bool
    reason: str

    def __bool__(self):
        return self.holds


def rigidity_check(chi: Chirotope, p: Permutation, q: Permutation, subset: Iterable[int]) -> RigidityVerdict:
    """Two rotations agreeing on a set of rank at least r-1 must coincide."""
    xs = sorted(set(subset))
    if not (is_rotation(chi, p) and is_rotation(chi, q)):
        raise ValueError("both permutations must be rotations")
    if any(p(x) != q(x) for x in xs):
        raise ValueError("the rotations differ on the given subset")
    rk = chi.rank_of(xs)
    if rk < chi.r - 1:
        return RigidityVerdict(False, True, f"precondition rank {rk} < r-1")
    same = p == q or is_trivial_rotation(chi, p * q.inverse())
    return RigidityVerdict(True, same, "rotations coincide" if same else "distinct rotations agree")


# rank-4 structure

def _require_rank4_polytope_data(chi: Chirotope):
    from .faces import is_acyclic

    if chi.r != 4:
        raise ValueError(f"rank must be 4, got {chi.r}")
    if not chi.is_simple():
        raise ValueError("chirotope is not simple")
    if not is_acyclic(chi):
        raise ValueError("chirotope is not acyclic")


@dataclass
class CyclicityReport:
    cyclic: bool
    max_orbit_rank: int
    consistent: bool

    def __bool__(self):
        return self.consistent


def cyclicity_criterion(chi: Chirotope, elements: Iterable[Permutation]) -> CyclicityReport:
    _require_rank4_polytope_data(chi)
    grp = closure(list(elements))
    if not all(is_rotation(chi, g) for g in grp):
        raise ValueError("subgroup contains non-rotations")
    cyclic = identify_group(grp).name.startswith("C")
    top = max(rk for _, rk in orbits(grp, chi))
    return CyclicityReport(cyclic, top, cyclic == (top <= 3))


def cyclic_subgroups(elements: Iterable[Permutation]) -> list[frozenset]:
    subs = {frozenset(g**k for k in range(g.order())) for g in elements}
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def maximal_cyclic_subgroups(elements: Iterable[Permutation]) -> list[frozenset]:
    subs = cyclic_subgroups(elements)
    return [s for s in subs if not any(s < t for t in subs)]


def subgroups(elements: Iterable[Permutation]) -> list[frozenset]:
    """Every subgroup generated by at most two elements, smallest first.

    This is every subgroup for the groups that occur here (cyclic, dihedral,
    A4, S4, A5 and their subgroups are all 2-generated).
    """
    elems = sorted(set(elements))
    seen = set()
    for i, g in enumerate(elems):
        for h in elems[i:]:
            seen.add(frozenset(closure([g, h])))
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


@dataclass
class IntersectionReport:
    subgroups: list
    bad_pairs: list

    @property
    def passed(self) -> bool:
        return not self.bad_pairs

    def __bool__(self):
        return self.passed


def maximal_cyclic_intersection_check(chi: Chirotope, elements: Iterable[Permutation] | None = None) -> IntersectionReport:
    _require_rank4_polytope_data(chi)
    grp = list(elements) if elements is not None else rotation_group(chi)
    maxi = maximal_cyclic_subgroups(grp)
    bad = [(i, j) for i, j in combinations(range(len(maxi)), 2) if len(maxi[i] & maxi[j]) > 1]
    return IntersectionReport(maxi, bad)


@dataclass
class FlatOrderingReport:
    flats: list
    orderings: list
    special: bool = False

    @property
    def passed(self) -> bool:
        if self.special:
            return True
        return len(self.orderings) == 2 and self.orderings[0] == self.orderings[1][::-1]

    def __bool__(self):
        return self.passed


def orbit_flats(chi: Chirotope, elements: Iterable[Permutation]) -> list[frozenset]:
    flats = []
    for orb, rk in orbits(list(elements), chi):
        if rk == 3:
            f = chi.flat_closure(orb)
            if f not in flats:
                flats.append(f)
    return sorted(flats, key=sorted)


def flat_orderings(chi: Chirotope, elements: Iterable[Permutation]) -> FlatOrderingReport:
    """Orderings of the rank-3 orbit flats that hyperplanes can sweep through."""
    from .faces import cocircuits

    _require_rank4_polytope_data(chi)
    grp = closure(list(elements))
    if len(grp) <= 2 or not identify_group(grp).name.startswith("C"):
        raise ValueError("need a cyclic rotation subgroup of order > 2")
    flats = orbit_flats(chi, grp)
    if len(flats) < 2:
        return FlatOrderingReport(flats, [], special=True)
    # any covector vanishing on a hyperplane is zero or one of its two cocircuits
    cocs = cocircuits(chi)
    cut = []
    for f in flats:
        c = next(c for c in cocs if c[next(iter(f)) - 1] == 0 and all(c[e - 1] == 0 for e in f))
        cut.append(c)

    def side(c, f):
        vals = {c[e - 1] for e in f}
        return vals.pop() if len(vals) == 1 else 0

    m = len(flats)
    table = [[side(cut[i], flats[j]) for j in range(m)] for i in range(m)]
    found = []
    for perm in permutations(range(m)):
        ok = True
        for pos, i in enumerate(perm):
            before = [table[i][j] for j in perm[:pos]]
            after = [table[i][j] for j in perm[pos + 1 :]]
            if not any(
                all(s * v == -1 for v in before) and all(s * v == 1 for v in after) for s in (1, -1)
            ):
                ok = False
                break
        if ok:
            found.append(list(perm))
    return FlatOrderingReport(flats, found)


def in_allowed_family(name: str) -> bool:
    if name in ("A4", "S4", "A5"):
        return True
    return name[:1] in ("C", "D") and name[1:].isdigit()


def classify_rank4(chi: Chirotope, cap: int = 2_000_000) -> GroupDescriptor:
    _require_rank4_polytope_data(chi)
    rots = rotation_group(chi, cap)
    d = identify_group(rots)
    d.kinds = [f"{ROTATION}:{len(rots)}"]
    d.allowed = in_allowed_family(d.name)
    return d
