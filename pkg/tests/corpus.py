"""Shared example corpus, built once per session."""

from __future__ import annotations

from functools import lru_cache

from omsym import alternating_chirotope, chirotope_from_points, example_config
from omsym.core import Chirotope

POLYTOPE_NAMES = ["simplex", "cube", "icosahedron"] + [f"pyramid{n}" for n in (3, 4, 5, 6)] + [
    f"bipyramid{n}" for n in (3, 4, 5, 6)
] + ["P2", "P3"]


@lru_cache(maxsize=None)
def alt(r: int, n: int) -> Chirotope:
    return alternating_chirotope(r, n)


@lru_cache(maxsize=None)
def named(name: str) -> Chirotope:
    from omsym.geometry import parse_example_name

    base, size = parse_example_name(name)
    return chirotope_from_points(example_config(base, size))


PAPER8_TABLE = "0********0****0" + "*" * 55


def colex_basis_pattern(chi: Chirotope) -> str:
    """Basis/non-basis string over r-subsets in colex order (sorted by largest element first)."""
    subsets = sorted(chi.subsets(), key=lambda t: t[::-1])
    return "".join("*" if chi.sorted_value(t) else "0" for t in subsets)


def corpus() -> dict[str, Chirotope]:
    """Every chirotope the property tests quantify over."""
    out = {f"A_{r},{n}": alt(r, n) for r, n in [(3, n) for n in range(3, 9)] + [(4, 4), (4, 5), (4, 6)]}
    out.update({name: named(name) for name in POLYTOPE_NAMES + ["paper8"]})
    out.update({f"polygon{n}": named(f"polygon{n}") for n in (3, 4, 5, 6)})
    return out


SMALL = ["A_3,3", "A_3,4", "A_3,5", "A_3,6", "A_4,5", "simplex", "cube", "pyramid4", "bipyramid3", "P2", "paper8", "polygon5"]
