"""Exact point configurations, their chirotopes, and the stacked-layer construction."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .core import Chirotope
from .exact import (
    PHI,
    QuadExt,
    det_sign,
    format_number,
    matrix_rank,
    parse_number,
    sign_of,
    solve,
)
from .symmetry import Permutation, classify_permutation

FIELDS = ("Q", "Q(sqrt5)")


@dataclass
class PointConfig:
    dim: int
    points: list
    field: str = "Q"

    def __post_init__(self):
        if self.field not in FIELDS:
            raise ValueError(f"unknown field {self.field!r}")
        pts = []
        for p in self.points:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have dimension {self.dim}")
            pts.append([_norm(x, self.field) for x in p])
        self.points = pts

    @property
    def n(self) -> int:
        return len(self.points)

    def homogenized(self, i: int) -> list:
        return list(self.points[i - 1]) + [Fraction(1)]

    def to_json(self) -> str:
        data = {
            "dim": self.dim,
            "field": self.field,
            "points": [[format_number(x, self.field) for x in p] for p in self.points],
        }
        return json.dumps(data, indent=None)

    @classmethod
    def from_json(cls, text: str) -> "PointConfig":
        data = json.loads(text)
        fld = data.get("field", "Q")
        pts = [[parse_number(s, fld) for s in p] for p in data["points"]]
        return cls(int(data["dim"]), pts, fld)


def _norm(x, fld: str):
    if isinstance(x, QuadExt):
        if fld == "Q":
            if x.b != 0:
                raise ValueError("irrational coordinate in a rational configuration")
            return x.a
        return x
    if isinstance(x, str):
        return parse_number(x, fld)
    x = Fraction(x)
    return x if fld == "Q" else QuadExt(x)


def chirotope_from_points(cfg: PointConfig) -> Chirotope:
    r = cfg.dim + 1
    if cfg.n < r:
        raise ValueError(f"need at least {r} points in dimension {cfg.dim}")
    rows = [cfg.homogenized(i) for i in range(1, cfg.n + 1)]
    return Chirotope.from_function(r, cfg.n, lambda t: det_sign([rows[i - 1] for i in t]))


def chirotope_from_vectors(vectors: Sequence[Sequence]) -> Chirotope:
    vs = [list(v) for v in vectors]
    r = len(vs[0])
    return Chirotope.from_function(r, len(vs), lambda t: det_sign([vs[i - 1] for i in t]))


def is_generic_point(cfg: PointConfig, i: int) -> bool:
    """Point ``i`` lies on no line through two other points."""
    if not 1 <= i <= cfg.n:
        raise ValueError(f"index {i} out of range")
    v = cfg.homogenized(i)
    others = [j for j in range(1, cfg.n + 1) if j != i]
    return all(
        matrix_rank([v, cfg.homogenized(j), cfg.homogenized(k)]) == 3
        for j, k in combinations(others, 2)
    )


# affine maps

def affine_map_for(cfg: PointConfig, p: Permutation):
    """Exact affine map ``x -> A x + b`` sending point i to point p(i), or None."""
    d = cfg.dim
    support = []
    for i in range(1, cfg.n + 1):
        if matrix_rank([cfg.homogenized(j) for j in support + [i]]) == len(support) + 1:
            support.append(i)
        if len(support) == d + 1:
            break
    if len(support) < d + 1:
        return None
    lhs = [cfg.homogenized(i) for i in support]
    rhs = [list(cfg.points[p(i) - 1]) for i in support]
    sol = solve(lhs, rhs)  # rows: coefficients of x_1..x_d, then the constant
    a = [[sol[k][row] for k in range(d)] for row in range(d)]
    b = [sol[d][row] for row in range(d)]
    for i in range(1, cfg.n + 1):
        img = [sum((a[row][k] * cfg.points[i - 1][k] for k in range(d)), Fraction(0)) + b[row] for row in range(d)]
        if img != list(cfg.points[p(i) - 1]):
            return None
    return a, b


def apply_linear(a, v):
    return [sum((a[r][k] * v[k] for k in range(len(v))), Fraction(0)) for r in range(len(a))]


# exact polygons with full rotational symmetry

def _polygon_rotation(n: int):
    if n == 3:
        return [[Fraction(-1), Fraction(-1)], [Fraction(1), Fraction(0)]]
    if n == 4:
        return [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(0)]]
    if n == 6:
        return [[Fraction(0), Fraction(-1)], [Fraction(1), Fraction(1)]]
    if n == 5:
        # cos 72 and sin^2 72 in coordinates where the y axis is scaled by 1/sin 72
        c = QuadExt(Fraction(-1, 4), Fraction(1, 4))
        s2 = QuadExt(Fraction(10, 16), Fraction(2, 16))
        return [[c, -s2], [QuadExt(1), c]]
    raise ValueError(f"no exact regular {n}-gon available (supported: 3, 4, 5, 6)")


def polygon(n: int) -> tuple[list, list]:
    """Vertices ``R^k (1, 0)`` for ``k = 1..n`` and the rotation matrix ``R``."""
    rot = _polygon_rotation(n)
    v = [Fraction(1), Fraction(0)] if n != 5 else [QuadExt(1), QuadExt(0)]
    verts = []
    for _ in range(n):
        v = apply_linear(rot, v)
        verts.append(v)
    return verts, rot


def polygon_config(n: int) -> PointConfig:
    verts, _ = polygon(n)
    return PointConfig(2, verts, "Q(sqrt5)" if n == 5 else "Q")


def polygon_rotation_permutation(n: int) -> Permutation:
    return Permutation(tuple(list(range(2, n + 1)) + [1]))


def _lift(verts, z):
    return [list(v) + [z] for v in verts]


def example_config(name: str, n: int | None = None) -> PointConfig:
    f = Fraction
    if name == "paper8":
        cols = [
            (0, 0, 0), (0, 0, 1), (1, 0, 0), (1, 0, 1),
            (0, 1, 0), (0, 1, 1), (f(1, 4), f(1, 4), -1), (f(1, 5), f(1, 5), 2),
        ]
        return PointConfig(3, [list(c) for c in cols])
    if name == "P2":
        pts = [(-1, 1, 0), (0, 1, 0), (1, 1, 0), (-1, -1, 0), (0, -1, 0), (1, -1, 0), (0, 0, 1)]
        return PointConfig(3, [list(p) for p in pts])
    if name == "P3":
        verts, _ = polygon(3)
        return PointConfig(3, _lift(verts, -2) + _lift(verts, 2))
    if name in ("pyramid", "bipyramid", "polygon"):
        if n is None:
            raise ValueError(f"{name} needs a size parameter")
        verts, _ = polygon(n)
        fld = "Q(sqrt5)" if n == 5 else "Q"
        if name == "polygon":
            return PointConfig(2, verts, fld)
        base = _lift(verts, 0)
        if name == "pyramid":
            return PointConfig(3, base + [[0, 0, 1]], fld)
        return PointConfig(3, base + [[0, 0, -1], [0, 0, 1]], fld)
    if name == "simplex":
        return PointConfig(3, [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    if name == "cube":
        return PointConfig(3, [list(v) for v in product((0, 1), repeat=3)])
    if name == "icosahedron":
        pts = []
        for s1, s2 in product((1, -1), repeat=2):
            a, b = QuadExt(s1), PHI * s2
            pts += [[QuadExt(0), a, b], [a, b, QuadExt(0)], [b, QuadExt(0), a]]
        return PointConfig(3, pts, "Q(sqrt5)")
    raise ValueError(f"unknown example {name!r}")


def parse_example_name(spec: str) -> tuple[str, int | None]:
    """``"pyramid5"`` or ``"pyramid(5)"`` -> ``("pyramid", 5)``; aliases P_n and Q_n."""
    s = spec.replace("(", "").replace(")", "").replace("_", "")
    for prefix in ("bipyramid", "pyramid", "polygon"):
        if s.startswith(prefix) and s[len(prefix):].isdigit():
            return prefix, int(s[len(prefix):])
    if s in ("P2", "P3"):
        return s, None
    if s[:1] == "P" and s[1:].isdigit():
        return "pyramid", int(s[1:])
    if s[:1] == "Q" and s[1:].isdigit():
        return "bipyramid", int(s[1:])
    return s, None


# stacked-layer construction

@dataclass
class GapResult:
    config: PointConfig
    tau: Permutation
    chirotope: Chirotope
    tau_kind: str
    axis_values: list
    q_generic: tuple
    not_parallel: bool

    @property
    def tau_is_m_symmetry(self) -> bool:
        return self.tau_kind != "none"

    @property
    def passed(self) -> bool:
        return self.tau_is_m_symmetry and all(self.axis_values) and all(self.q_generic) and self.not_parallel


def _candidate_points():
    # small-height rationals first, off both layers, in a fixed order
    vals = {Fraction(a, b) for b in range(1, 6) for a in range(-2 * b, 2 * b + 1)}
    zs = [Fraction(z) for z in (-1, 2, -2, 3, -3)]

    def height(pt):
        return (max(c.denominator for c in pt), sum(abs(c) for c in pt), [(c < 0, abs(c)) for c in pt])

    return sorted(([x, y, z] for x in vals for y in vals for z in zs), key=height)


def _all_bases_with(rows: list, q: list) -> bool:
    return all(det_sign([q] + [rows[i] for i in t]) != 0 for t in combinations(range(len(rows)), 3))


def gap_construction(
    plane: PointConfig,
    sigma: Permutation,
    q1: Sequence | None = None,
    q2: Sequence | None = None,
    search_limit: int = 20000,
) -> GapResult:
    if plane.dim != 2:
        raise ValueError("the base configuration must be planar")
    n = plane.n
    if sigma.n != n:
        raise ValueError("permutation size does not match the configuration")
    if sigma.order() <= 2:
        raise ValueError("the rotation must have order greater than 2")
    amap = affine_map_for(plane, sigma)
    if amap is None:
        raise ValueError("the permutation is not induced by an affine map")
    a, _ = amap
    if sign_of(a[0][0] * a[1][1] - a[0][1] * a[1][0]) <= 0:
        raise ValueError("the affine map is not orientation preserving")

    layers = _lift(plane.points, 0) + _lift(plane.points, 1)
    homog = [list(p) + [1] for p in layers]
    if q1 is None or q2 is None:
        found = []
        tried = 0
        for cand in _candidate_points():
            tried += 1
            if tried > search_limit:
                break
            if _all_bases_with(homog + [list(q) + [1] for q in found], cand + [1]):
                found.append(cand)
                if len(found) == 2:
                    break
        if len(found) < 2:
            raise ValueError("no generic points found within the search limit")
        q1, q2 = found
    pts = layers + [list(q1), list(q2)]
    cfg = PointConfig(3, pts, plane.field)
    chi = chirotope_from_points(cfg)
    tau = Permutation(
        tuple(sigma.images) + tuple(n + x for x in sigma.images) + (2 * n + 1, 2 * n + 2)
    )
    axis = [chi.value((i, i + n, 2 * n + 1, 2 * n + 2)) for i in range(1, n + 1)]
    generic = (is_generic_point(cfg, 2 * n + 1), is_generic_point(cfg, 2 * n + 2))
    direction = [x - y for x, y in zip(cfg.points[2 * n], cfg.points[2 * n + 1])]
    not_parallel = any(sign_of(c) != 0 for c in direction[:2])
    return GapResult(cfg, tau, chi, classify_permutation(chi, tau), axis, generic, not_parallel)


def paper8_labels(n: int = 3) -> Permutation:
    """Map from stacked labels (bottom 1..n, top n+1..2n) to interleaved labels."""
    img = [2 * i - 1 for i in range(1, n + 1)] + [2 * i for i in range(1, n + 1)]
    return Permutation(tuple(img + [2 * n + 1, 2 * n + 2]))
