"""Cocircuits, covectors and the sign-vector calculus.

Sign vectors are plain tuples over ``{-1, 0, 1}`` with element 1 at index 0.
Enumeration and the axiom checks work internally on pairs of bitmasks
``(positive part, negative part)``.
"""

from __future__ import annotations

import re
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .core import AxiomReport, Chirotope
from .exact import parse_sign, sign_char

SignVector = tuple

DEFAULT_COVECTOR_CAP = 200_000


def sv_from_string(s: str) -> SignVector:
    return tuple(parse_sign(c) for c in s.strip())


def sv_to_string(x: Sequence[int]) -> str:
    return "".join(sign_char(v) for v in x)


def negate(x: SignVector) -> SignVector:
    return tuple(-v for v in x)


def compose(x: SignVector, y: SignVector) -> SignVector:
    if len(x) != len(y):
        raise ValueError("sign vectors of different length")
    return tuple(a if a else b for a, b in zip(x, y))


def separator(x: SignVector, y: SignVector) -> frozenset[int]:
    """Elements (1-based) where ``x`` and ``y`` have opposite nonzero signs."""
    return frozenset(i + 1 for i, (a, b) in enumerate(zip(x, y)) if a and a == -b)


def conforms(big: SignVector, small: SignVector) -> bool:
    """``big >= small``: the two agree wherever ``small`` is nonzero."""
    return all(b == s for b, s in zip(big, small) if s)


def _to_masks(x: Sequence[int]) -> tuple[int, int]:
    p = m = 0
    for i, v in enumerate(x):
        if v > 0:
            p |= 1 << i
        elif v < 0:
            m |= 1 << i
    return p, m


def _from_masks(p: int, m: int, n: int) -> SignVector:
    return tuple(1 if p >> i & 1 else -1 if m >> i & 1 else 0 for i in range(n))


def _canonical_sort(vectors: Iterable[SignVector]) -> list[SignVector]:
    # '+' < '-' < '0' in ASCII, which fixes the dump order
    return sorted(vectors, key=sv_to_string)


# cocircuits and covectors

def cocircuits(chi: Chirotope) -> list[SignVector]:
    """All cocircuits, both signs, in canonical order."""
    seen = {}
    for c in _hyperplane_rows(chi):
        if c is None:
            continue
        first = next(v for v in c if v)
        key = c if first > 0 else negate(c)
        seen.setdefault(key, None)
    out = list(seen)
    out += [negate(c) for c in out]
    return _canonical_sort(out)


def _hyperplane_rows(chi: Chirotope):
    """Rows ``chi(y, .)`` for every sorted (r-1)-subset ``y`` that spans a hyperplane."""
    y_list = list(combinations(range(chi.n), chi.r - 1))
    ys = np.array(y_list, dtype=np.int64).reshape(len(y_list), chi.r - 1)
    elems = np.arange(chi.n, dtype=np.int64)
    arr = np.concatenate(
        [
            np.broadcast_to(ys[:, None, :], (len(ys), chi.n, chi.r - 1)),
            np.broadcast_to(elems[None, :, None], (len(ys), chi.n, 1)),
        ],
        axis=2,
    )
    rows = chi.values_at(arr)
    for y, row in zip(ys, rows):
        yield tuple(int(v) for v in row) if row.any() else None


def covectors(chi: Chirotope, cap: int = DEFAULT_COVECTOR_CAP) -> list[SignVector]:
    """Closure of the cocircuits under composition, plus the zero vector."""
    n = chi.n
    cocs = [_to_masks(c) for c in cocircuits(chi)]
    found = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for xp, xn in frontier:
            for cp, cn in cocs:
                z = (xp | (cp & ~xn), xn | (cn & ~xp))
                if z not in found:
                    found.add(z)
                    nxt.append(z)
                    if len(found) > cap:
                        raise ValueError(f"covector count exceeds cap {cap}")
        frontier = nxt
    return _canonical_sort(_from_masks(p, m, n) for p, m in found)


def circuits(chi: Chirotope) -> list[SignVector]:
    """Signed circuits, obtained as the cocircuits of the dual."""
    return cocircuits(chi.dual())


# axiom check

def _mask_arrays(vectors: Sequence[SignVector]) -> tuple[np.ndarray, np.ndarray, int]:
    n = len(vectors[0]) if vectors else 0
    if n > 31:
        raise ValueError("covector checks support at most 31 elements")
    pm = [_to_masks(v) for v in vectors]
    p = np.array([a for a, _ in pm], dtype=np.int64)
    m = np.array([b for _, b in pm], dtype=np.int64)
    return p, m, n


def check_covector_axioms(vectors: Iterable[SignVector], max_violations: int = 10) -> AxiomReport:
    vs = list(dict.fromkeys(tuple(v) for v in vectors))
    if not vs:
        return AxiomReport(False, [("V0", ())])
    n = len(vs[0])
    if any(len(v) != n for v in vs):
        raise ValueError("sign vectors of different length")
    viol: list = []
    zero = (0,) * n
    if zero not in vs:
        viol.append(("V0", zero))
    p, m, _ = _mask_arrays(vs)
    keys = np.sort((p << n) | m)

    def member(kp, km):
        k = (kp << n) | km
        pos = np.searchsorted(keys, k)
        pos = np.minimum(pos, len(keys) - 1)
        return keys[pos] == k

    bad = np.nonzero(~member(m, p))[0]
    viol += [("V1", vs[i]) for i in bad[:max_violations]]

    for i in range(len(vs)):
        if len(viol) >= max_violations:
            break
        cp = p[i] | (p & ~m[i])
        cn = m[i] | (m & ~p[i])
        bad = np.nonzero(~member(cp, cn))[0]
        viol += [("V2", (vs[i], vs[j])) for j in bad[: max_violations - len(viol)]]

    if len(viol) < max_violations:
        viol += _elimination_violations(vs, p, m, n, max_violations - len(viol))
    return AxiomReport(not viol, viol[:max_violations])


def _elimination_violations(vs, p, m, n, limit, chunk: int = 256) -> list:
    """Vector elimination, grouped by separator so each group needs one lookup table."""
    full = (1 << n) - 1
    zeros = full & ~(p | m)
    out = []
    count = len(vs)
    for start in range(0, count, chunk):
        xs = np.arange(start, min(start + chunk, count))
        xp, xm = p[xs][:, None], m[xs][:, None]
        sep = (xp & m[None, :]) | (xm & p[None, :])
        wp = xp | (p[None, :] & ~xm)
        wm = xm | (m[None, :] & ~xp)
        sep_flat = sep.ravel()
        nz = np.nonzero(sep_flat)[0]
        if not len(nz):
            continue
        groups, inverse = np.unique(sep_flat[nz], return_inverse=True)
        order = np.argsort(inverse, kind="stable")
        bounds = np.searchsorted(inverse[order], np.arange(len(groups) + 1))
        wp_flat, wm_flat = wp.ravel(), wm.ravel()
        for g, s in enumerate(groups):
            idx = nz[order[bounds[g] : bounds[g + 1]]]
            keep = full & ~s
            zkeys = ((p & keep) << n) | (m & keep)
            zcover = zeros & s
            uk, uinv = np.unique(zkeys, return_inverse=True)
            cover = np.zeros(len(uk), dtype=np.int64)
            np.bitwise_or.at(cover, uinv, zcover)
            wk = ((wp_flat[idx] & keep) << n) | (wm_flat[idx] & keep)
            pos = np.minimum(np.searchsorted(uk, wk), len(uk) - 1)
            got = np.where(uk[pos] == wk, cover[pos], 0)
            bad = np.nonzero((got & s) != s)[0]
            for b in bad:
                flat = idx[b]
                i, j = xs[flat // count], flat % count
                missing = int(s & ~got[b])
                e = (missing & -missing).bit_length()
                out.append(("V3", (vs[i], vs[j], e)))
                if len(out) >= limit:
                    return out
    return out


def eliminate(
    vectors: Iterable[SignVector],
    x: SignVector,
    y: SignVector,
    e: int,
    conformal: bool = False,
    subset: Iterable[int] | None = None,
) -> SignVector:
    """Lexicographically smallest covector eliminating ``e`` (or some element of ``subset``).

    Plain mode: ``Z(e) = 0`` and ``Z = X o Y`` off the separator.  Conformal
    mode additionally requires ``Y|U >= Z|U`` and accepts any ``u`` in ``U``
    as the zeroed element.
    """
    vs = set(tuple(v) for v in vectors)
    x, y = tuple(x), tuple(y)
    if x not in vs or y not in vs:
        raise ValueError("X and Y must be members of the covector set")
    sep = separator(x, y)
    if conformal:
        u = frozenset(subset) if subset is not None else sep
        if not u or not u <= sep:
            raise ValueError("U must be a nonempty subset of the separator")
    else:
        if e not in sep:
            raise ValueError(f"element {e} is not in the separator")
        u = frozenset([e])
    w = compose(x, y)
    outside = [i for i in range(len(x)) if i + 1 not in sep]

    def ok(z):
        if any(z[i] != w[i] for i in outside):
            return False
        if not any(z[k - 1] == 0 for k in u):
            return False
        if conformal and any(z[k - 1] and z[k - 1] != y[k - 1] for k in u):
            return False
        return True

    hits = [z for z in vs if ok(z)]
    if not hits:
        raise ValueError("no eliminating covector: the set violates elimination")
    return min(hits, key=sv_to_string)


# acyclicity and extreme points

def is_acyclic(chi: Chirotope) -> bool:
    n = chi.n
    acc = (0,) * n
    for c in cocircuits(chi):
        if all(v >= 0 for v in c):
            acc = compose(acc, c)
    return all(v > 0 for v in acc)


def extreme_points(chi: Chirotope) -> list[int]:
    if not is_acyclic(chi):
        raise ValueError("extreme points are defined for acyclic oriented matroids only")
    cocs = [c for c in cocircuits(chi) if all(v >= 0 for v in c)]
    out = []
    for e in range(1, chi.n + 1):
        acc = (0,) * chi.n
        for c in cocs:
            if c[e - 1] == 0:
                acc = compose(acc, c)
        if acc[e - 1] == 0 and all(v > 0 for i, v in enumerate(acc) if i != e - 1):
            out.append(e)
    return out


def is_matroid_polytope(chi: Chirotope) -> bool:
    return is_acyclic(chi) and len(extreme_points(chi)) == chi.n


# rank-3 alternating orders and sign-run patterns

def alternating_order(chi: Chirotope, elements: Sequence[int] | None = None):
    """Order ``x0..x(p-1)`` of ``elements`` with constant sign on increasing triples.

    Returns ``(order, sign)`` with ``sign`` the common value of
    ``chi(xi, xj, xk)`` for ``i < j < k``, or ``None`` when no such order exists.
    """
    if chi.r != 3:
        raise ValueError("alternating orders are defined here for rank 3")
    elems = list(elements) if elements is not None else list(range(1, chi.n + 1))
    if len(elems) < 3:
        return (elems, 1) if elems else None
    first, rest = elems[0], elems[1:]
    for s in (1, -1):
        # x0 fixed; a precedes b iff chi(x0, a, b) = s
        order = [first]
        pending = list(rest)
        while pending:
            nxt = [a for a in pending if all(chi.value((first, a, b)) == s for b in pending if b != a)]
            if len(nxt) != 1:
                break
            order.append(nxt[0])
            pending.remove(nxt[0])
        else:
            if all(chi.value(t) == s for t in combinations(order, 3)):
                return order, s
    return None


ORDER_PATTERNS = (re.compile(r"^\+*0?-*0?\+*$"), re.compile(r"^-*0?\+*0?-*$"))
SPLIT_PATTERNS = (
    re.compile(r"^(-*\+*|0-*\+*|-*0\+*|-*\+*0)$"),
    re.compile(r"^(\+*-*|0\+*-*|\+*0-*|\+*-*0)$"),
)


def edge_sequence_ok(seq: Sequence[int]) -> bool:
    """Sign sequence along the edges of a convex polygon, seen from one outside element."""
    s = sv_to_string(seq)
    return any(p.match(s) for p in ORDER_PATTERNS)


def split_sequence_ok(seq: Sequence[int]) -> bool:
    """Signs of a covector through a vertex, read around the remaining vertices."""
    if not any(seq):
        return True
    s = sv_to_string(seq)
    return any(p.match(s) for p in SPLIT_PATTERNS)


def edge_cocircuit_sequence(chi: Chirotope, order: Sequence[int], e: int, sign: int = 1) -> list[int]:
    p = len(order)
    return [sign * chi.value((order[i], order[(i + 1) % p], e)) for i in range(p)]


def cocircuit_pattern_check(chi: Chirotope, order: Sequence[int], e: int) -> bool:
    order = list(order)
    if chi.r != 3:
        raise ValueError("pattern check needs a rank-3 chirotope")
    if e in order or not 1 <= e <= chi.n:
        raise ValueError("e must be an element outside the alternating subset")
    if len(order) < 3:
        raise ValueError("the alternating subset needs at least 3 elements")
    signs = {chi.value(t) for t in combinations(order, 3)}
    if len(signs) != 1 or 0 in signs:
        raise ValueError("the given order is not alternating")
    return edge_sequence_ok(edge_cocircuit_sequence(chi, order, e, signs.pop()))


def covector_split_check(chi: Chirotope, vector: Sequence[int], x0: int) -> bool:
    found = alternating_order(chi)
    if found is None:
        raise ValueError("chirotope is not a relabeled alternating matroid")
    order, _ = found
    if len(vector) != chi.n:
        raise ValueError("sign vector length does not match the ground set")
    if vector[x0 - 1] != 0:
        raise ValueError(f"covector is nonzero at {x0}")
    k = order.index(x0)
    rotated = order[k:] + order[:k]
    return split_sequence_ok([vector[x - 1] for x in rotated[1:]])
