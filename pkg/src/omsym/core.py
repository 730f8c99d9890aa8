"""Chirotopes and the basic oriented-matroid algebra on them.

A :class:`Chirotope` stores one sign per sorted r-subset of ``{1..n}`` in
lexicographic order.  Values on arbitrary ordered tuples are derived by
alternation.  An oriented matroid is determined by a chirotope only up to a
global sign, so comparisons that mean "same oriented matroid" go through
:meth:`Chirotope.canonical`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .exact import parse_sign, sign_char

DEFAULT_TENSOR_CAP = 5_000_000


def permutation_parity(seq: Sequence[int]) -> int:
    """+1 for an even arrangement of distinct items, -1 for odd."""
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return -1 if inv & 1 else 1


def _mask(items: Iterable[int]) -> int:
    m = 0
    for e in items:
        m |= 1 << e
    return m


def _images(p) -> tuple[int, ...]:
    return tuple(getattr(p, "images", p))


@dataclass
class AxiomReport:
    passed: bool
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed


class Chirotope:
    """Alternating sign map on r-tuples of ``{1..n}``."""

    def __init__(self, r: int, n: int, signs: Sequence[int]):
        if not 1 <= r <= n:
            raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
        signs = tuple(int(s) for s in signs)
        if len(signs) != comb(n, r):
            raise ValueError(f"expected {comb(n, r)} signs, got {len(signs)}")
        if any(s not in (-1, 0, 1) for s in signs):
            raise ValueError("signs must be -1, 0 or 1")
        self.r = r
        self.n = n
        self.signs = signs
        self._lookup = dict(zip(combinations(range(1, n + 1), r), signs))

    # construction
    @classmethod
    def from_function(cls, r: int, n: int, f) -> "Chirotope":
        return cls(r, n, [f(t) for t in combinations(range(1, n + 1), r)])

    @classmethod
    def from_string(cls, text: str) -> "Chirotope":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ValueError("chirotope text needs a header line and a sign line")
        try:
            r, n = (int(x) for x in lines[0].split())
        except ValueError:
            raise ValueError(f"bad header line: {lines[0]!r}") from None
        return cls(r, n, [parse_sign(c) for c in lines[1]])

    def to_string(self) -> str:
        return f"{self.r} {self.n}\n{''.join(sign_char(s) for s in self.signs)}\n"

    # evaluation
    def subsets(self):
        return combinations(range(1, self.n + 1), self.r)

    def value(self, tup: Sequence[int]) -> int:
        if len(tup) != self.r:
            raise ValueError(f"expected an {self.r}-tuple, got {tuple(tup)}")
        if any(not 1 <= e <= self.n for e in tup):
            raise ValueError(f"element out of range in {tuple(tup)}")
        key = tuple(sorted(tup))
        if len(set(key)) < self.r:
            return 0
        s = self._lookup[key]
        return s * permutation_parity(tup) if s else 0

    def __call__(self, *tup):
        if len(tup) == 1 and not isinstance(tup[0], int):
            tup = tuple(tup[0])
        return self.value(tup)

    def sorted_value(self, key: tuple[int, ...]) -> int:
        return self._lookup[key]

    @cached_property
    def sign_tensor(self) -> np.ndarray:
        """Dense 0-based tensor ``T[i1-1, ..., ir-1] = chi(i1, ..., ir)``."""
        return self.build_tensor()

    def build_tensor(self, cap: int = DEFAULT_TENSOR_CAP) -> np.ndarray:
        if self.n**self.r > cap:
            raise ValueError(f"sign tensor of size {self.n}^{self.r} exceeds cap {cap}")
        t = np.zeros((self.n,) * self.r, dtype=np.int8)
        combos = np.array(list(self.subsets()), dtype=np.int64) - 1
        vals = np.array(self.signs, dtype=np.int8)
        for perm in permutations(range(self.r)):
            idx = tuple(combos[:, k] for k in perm)
            t[idx] = vals * permutation_parity(perm)
        return t

    @cached_property
    def _colex(self) -> tuple[np.ndarray, np.ndarray]:
        binom = np.array(
            [[comb(c, k) for k in range(self.r + 1)] for c in range(self.n + 1)], dtype=np.int64
        )
        vals = np.zeros(comb(self.n, self.r), dtype=np.int8)
        for t, s in self._lookup.items():
            vals[sum(comb(c - 1, k + 1) for k, c in enumerate(t))] = s
        return binom, vals

    def values_at(self, arr: np.ndarray) -> np.ndarray:
        """Vectorized chirotope values for 0-based index arrays of shape ``(..., r)``."""
        arr = np.asarray(arr, dtype=np.int64)
        if self.n**self.r <= DEFAULT_TENSOR_CAP:
            flat = self.sign_tensor.reshape(-1)
            w = np.array([self.n ** (self.r - 1 - k) for k in range(self.r)], dtype=np.int64)
            return flat[arr @ w]
        binom, vals = self._colex
        srt = np.sort(arr, axis=-1)
        inv = np.zeros(arr.shape[:-1], dtype=np.int64)
        for a in range(self.r):
            for b in range(a + 1, self.r):
                inv += arr[..., a] > arr[..., b]
        rep = (np.diff(srt, axis=-1) == 0).any(axis=-1) if self.r > 1 else np.zeros(arr.shape[:-1], bool)
        idx = sum(binom[srt[..., k], k + 1] for k in range(self.r))
        idx = np.where(rep, 0, idx)
        out = vals[idx] * np.where(inv % 2 == 1, -1, 1).astype(np.int8)
        out[rep] = 0
        return out

    # identity
    def canonical(self) -> "Chirotope":
        first = next(s for s in self.signs if s) if any(self.signs) else 1
        return self if first > 0 else -self

    def __neg__(self) -> "Chirotope":
        return Chirotope(self.r, self.n, [-s for s in self.signs])

    def same_om(self, other: "Chirotope") -> bool:
        return (
            self.r == other.r
            and self.n == other.n
            and self.canonical().signs == other.canonical().signs
        )

    def __eq__(self, other):
        if not isinstance(other, Chirotope):
            return NotImplemented
        return (self.r, self.n, self.signs) == (other.r, other.n, other.signs)

    def __hash__(self):
        return hash((self.r, self.n, self.signs))

    def __repr__(self):
        s = "".join(sign_char(x) for x in self.signs)
        if len(s) > 40:
            s = s[:37] + "..."
        return f"Chirotope(r={self.r}, n={self.n}, {s})"

    # matroid data
    @cached_property
    def basis_masks(self) -> tuple[int, ...]:
        return tuple(_mask(t) for t, s in self._lookup.items() if s)

    def bases(self) -> list[tuple[int, ...]]:
        """Sorted r-subsets with nonzero sign, in lexicographic order."""
        return [t for t, s in self._lookup.items() if s]

    def non_bases(self) -> list[tuple[int, ...]]:
        return [t for t, s in self._lookup.items() if not s]

    def rank_of(self, subset: Iterable[int]) -> int:
        m = _mask(subset)
        return max((bin(m & b).count("1") for b in self.basis_masks), default=0)

    def flat_closure(self, subset: Iterable[int]) -> frozenset[int]:
        a = set(subset)
        base = self.rank_of(a)
        return frozenset(e for e in range(1, self.n + 1) if e in a or self.rank_of(a | {e}) == base)

    def loops(self) -> list[int]:
        covered = 0
        for b in self.basis_masks:
            covered |= b
        return [e for e in range(1, self.n + 1) if not covered >> e & 1]

    def simplicity_report(self) -> "SimplicityReport":
        from .faces import cocircuits

        loops = self.loops()
        cocs = cocircuits(self)
        parallel, antiparallel = [], []
        live = [e for e in range(1, self.n + 1) if e not in loops]
        for e, f in combinations(live, 2):
            same = all(c[e - 1] == c[f - 1] for c in cocs)
            if same:
                parallel.append((e, f))
            elif all(c[e - 1] == -c[f - 1] for c in cocs):
                antiparallel.append((e, f))
        return SimplicityReport(loops, parallel, antiparallel)

    def is_simple(self) -> bool:
        return self.simplicity_report().is_simple

    # derived chirotopes
    def reorient(self, subset: Iterable[int]) -> "Chirotope":
        m = _mask(subset)
        return Chirotope(
            self.r,
            self.n,
            [s * (-1) ** bin(_mask(t) & m).count("1") for t, s in self._lookup.items()],
        )

    def relabel(self, p) -> "Chirotope":
        """Chirotope with ``chi'(p(i1), ..., p(ir)) = chi(i1, ..., ir)``."""
        img = _images(p)
        if sorted(img) != list(range(1, self.n + 1)):
            raise ValueError("relabeling is not a bijection on the ground set")
        inv = [0] * (self.n + 1)
        for i, x in enumerate(img, start=1):
            inv[x] = i
        return Chirotope.from_function(self.r, self.n, lambda t: self.value([inv[x] for x in t]))

    def restrict(self, subset: Iterable[int]) -> "Chirotope":
        a = sorted(set(subset))
        if not a:
            raise ValueError("restriction to the empty set")
        k = self.rank_of(a)
        if k == 0:
            raise ValueError("restriction to a set of loops has rank 0")
        completion: tuple[int, ...] = ()
        if k < self.r:
            rest = [e for e in range(1, self.n + 1) if e not in a]
            completion = next(
                b for b in combinations(rest, self.r - k) if self.rank_of(a + list(b)) == self.r
            )
        return Chirotope.from_function(
            k, len(a), lambda t: self.value([a[i - 1] for i in t] + list(completion))
        )

    def contract(self, e: int) -> "Chirotope":
        if self.r == 1:
            raise ValueError("cannot contract a rank-1 chirotope")
        if e in self.loops():
            raise ValueError(f"element {e} is a loop")
        rest = [x for x in range(1, self.n + 1) if x != e]
        return Chirotope.from_function(
            self.r - 1, self.n - 1, lambda t: self.value([e] + [rest[i - 1] for i in t])
        )

    def dual(self) -> "Chirotope":
        if self.r == self.n:
            raise ValueError("the dual of a full-rank chirotope has rank 0")
        ground = range(1, self.n + 1)

        def f(t):
            comp = tuple(x for x in ground if x not in t)
            return self._lookup[comp] * permutation_parity(t + comp)

        return Chirotope.from_function(self.n - self.r, self.n, f)


@dataclass
class SimplicityReport:
    loops: list
    parallel: list
    antiparallel: list

    @property
    def is_simple(self) -> bool:
        return not (self.loops or self.parallel or self.antiparallel)


def alternating_chirotope(r: int, n: int) -> Chirotope:
    if not 1 <= r <= n:
        raise ValueError(f"alternating matroid needs 1 <= r <= n, got r={r}, n={n}")
    return Chirotope(r, n, [1] * comb(n, r))


def chirotope_value(chi: Chirotope, tup: Sequence[int]) -> int:
    return chi.value(tup)


bases = Chirotope.bases
rank_of = Chirotope.rank_of
flat_closure = Chirotope.flat_closure
simplicity_report = Chirotope.simplicity_report
reorient = Chirotope.reorient
relabel = Chirotope.relabel
restrict = Chirotope.restrict
contract = Chirotope.contract
dual = Chirotope.dual


# axiom checks

def check_chirotope_axioms(
    chi: Chirotope,
    mode: str = "full",
    max_violations: int = 10,
    cap: int = DEFAULT_TENSOR_CAP,
) -> AxiomReport:
    if mode not in ("full", "screened"):
        raise ValueError(f"unknown mode {mode!r}")
    if not any(chi.signs):
        return AxiomReport(False, [("B1", ())])
    if mode == "full":
        viol = _b3_violations(chi, max_violations, cap)
    else:
        viol = _exchange_violations(chi, max_violations)
        if len(viol) < max_violations:
            viol += _three_term_violations(chi, max_violations - len(viol))
    return AxiomReport(not viol, viol)


def _b3_violations(chi: Chirotope, limit: int, cap: int) -> list:
    """Exhaustive B3 test.

    The hypothesis and conclusion of B3 flip sign together under any
    permutation of ``j`` or of ``i2..ir``, so sorted tuples suffice provided
    both sign directions are checked.
    """
    r, n = chi.r, chi.n
    work = n * comb(n - 1, r - 1) * comb(n, r) * r
    if work > cap * 100:
        raise ValueError(f"full B3 check of {work} terms exceeds the configured cap")
    js = np.array([t for t in chi.subsets() if chi.sorted_value(t)], dtype=np.int64) - 1
    chi_j = chi.values_at(js).astype(np.int16)
    out = []
    for i1 in range(n):
        rest = [e for e in range(n) if e != i1]
        tail_list = list(combinations(rest, r - 1))
        tails = np.array(tail_list, dtype=np.int64).reshape(len(tail_list), r - 1)
        heads = np.concatenate([np.full((len(tails), 1), i1), tails], axis=1)
        chi_i = chi.values_at(heads).astype(np.int16)
        keep = chi_i != 0
        tails, chi_i = tails[keep], chi_i[keep]
        if not len(tails):
            continue
        hyp_pos = np.ones((len(tails), len(js)), dtype=bool)
        hyp_neg = np.ones((len(tails), len(js)), dtype=bool)
        for s in range(r):
            # chi(j_s, tail) * chi(j with j_s replaced by i1)
            left = np.concatenate(
                [
                    np.broadcast_to(js[None, :, s : s + 1], (len(tails), len(js), 1)),
                    np.broadcast_to(tails[:, None, :], (len(tails), len(js), r - 1)),
                ],
                axis=2,
            )
            swapped = js.copy()
            swapped[:, s] = i1
            prod = chi.values_at(left).astype(np.int16) * chi.values_at(swapped).astype(np.int16)[None, :]
            hyp_pos &= prod >= 0
            hyp_neg &= prod <= 0
        concl = chi_i[:, None] * chi_j[None, :]
        bad = (hyp_pos & (concl < 0)) | (hyp_neg & (concl > 0))
        for t, m in zip(*np.nonzero(bad)):
            i_tup = (i1 + 1,) + tuple(int(x) + 1 for x in tails[t])
            j_tup = tuple(int(x) + 1 for x in js[m])
            out.append(("B3", (i_tup, j_tup)))
            if len(out) >= limit:
                return out
    return out


def _exchange_violations(chi: Chirotope, limit: int) -> list:
    masks = set(chi.basis_masks)
    out = []
    for b1 in masks:
        for b2 in masks:
            diff1, diff2 = b1 & ~b2, b2 & ~b1
            e = 0
            while diff1 >> e:
                if diff1 >> e & 1:
                    base = b1 & ~(1 << e)
                    f = 0
                    found = False
                    while diff2 >> f:
                        if diff2 >> f & 1 and (base | 1 << f) in masks:
                            found = True
                            break
                        f += 1
                    if not found:
                        out.append(("exchange", (_unmask(b1), _unmask(b2), e)))
                        if len(out) >= limit:
                            return out
                e += 1
    return out


def _unmask(m: int) -> tuple[int, ...]:
    return tuple(e for e in range(m.bit_length()) if m >> e & 1)


def _three_term_violations(chi: Chirotope, limit: int) -> list:
    out = []
    if chi.r < 2:
        return out
    ground = range(1, chi.n + 1)
    for head in combinations(ground, chi.r - 2):
        others = [e for e in ground if e not in head]
        for a, b, c, d in combinations(others, 4):
            h = list(head)
            terms = (
                chi.value(h + [a, b]) * chi.value(h + [c, d]),
                -chi.value(h + [a, c]) * chi.value(h + [b, d]),
                chi.value(h + [a, d]) * chi.value(h + [b, c]),
            )
            if any(terms) and (all(x >= 0 for x in terms) or all(x <= 0 for x in terms)):
                out.append(("GP3", (head, (a, b, c, d))))
                if len(out) >= limit:
                    return out
    return out
