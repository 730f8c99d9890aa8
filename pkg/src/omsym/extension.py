"""Single-element extensions from cocircuit signatures."""

from __future__ import annotations

from itertools import combinations

from .core import Chirotope, check_chirotope_axioms
from .faces import cocircuits, is_matroid_polytope, negate
from .symmetry import Permutation, is_rotation, rotation_group


class ExtensionError(ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def majority_localization(chi: Chirotope) -> dict:
    """Sign each cocircuit by whether it has more positive or more negative entries."""
    if not chi.is_simple() or not is_matroid_polytope(chi):
        raise ValueError("majority localization needs a simple matroid polytope")
    out = {}
    for c in cocircuits(chi):
        plus = sum(1 for v in c if v > 0)
        minus = sum(1 for v in c if v < 0)
        out[c] = (plus > minus) - (plus < minus)
    return out


def extend(chi: Chirotope, signature: dict, validate: bool = True) -> Chirotope:
    """Chirotope on ``n+1`` elements placing the new element as ``signature`` dictates."""
    for c, s in signature.items():
        if signature.get(negate(c)) != -s:
            raise ExtensionError("signature is not antisymmetric", c)
    n, r = chi.n, chi.r
    t = chi.sign_tensor
    new_vals = {}
    per_flat = {}
    for y in combinations(range(1, n + 1), r - 1):
        row = t[tuple(e - 1 for e in y)] if y else t
        if not row.any():
            new_vals[y] = 0
            continue
        c = tuple(int(v) for v in row)
        if c not in signature:
            raise ExtensionError("signature does not cover every cocircuit", c)
        s = signature[c]
        new_vals[y] = s
        zero_set = frozenset(i for i, v in enumerate(c) if v == 0)
        placed = tuple(s * v for v in c)
        if per_flat.setdefault(zero_set, placed) != placed:
            raise ExtensionError("inconsistent values on one hyperplane", sorted(zero_set))

    def value(tup):
        if tup[-1] == n + 1:
            return new_vals[tup[:-1]]
        return chi.sorted_value(tup)

    ext = Chirotope.from_function(r, n + 1, value)
    if validate:
        rep = check_chirotope_axioms(ext, "full")
        if not rep.passed:
            raise ExtensionError("extension violates the chirotope axioms", rep.violations)
    return ext


def fixed_point_extension(chi: Chirotope, verify: bool = True) -> tuple[Chirotope, int]:
    """Extension by a new element fixed by every rotation; returns it and its label."""
    if not is_matroid_polytope(chi):
        raise ValueError("fixed-point extension needs a matroid polytope")
    ext = extend(chi, majority_localization(chi))
    if verify:
        for g in rotation_group(chi):
            if not is_rotation(ext, g.extend()):
                raise ExtensionError("a rotation does not extend to the new element", g.one_line())
    return ext, chi.n + 1


def contract_at_extension(chi: Chirotope, verify: bool = True) -> Chirotope:
    """Rank drops by one while every rotation survives."""
    ext, e = fixed_point_extension(chi, verify=verify)
    res = ext.contract(e)
    if verify:
        for g in rotation_group(chi):
            if not is_rotation(res, g):
                raise ExtensionError("a rotation is lost by the contraction", g.one_line())
    return res


def extended_rotations(chi: Chirotope) -> list[Permutation]:
    return [g.extend() for g in rotation_group(chi)]
