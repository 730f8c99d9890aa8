from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import alt, corpus, named
from omsym import (
    classify_permutation,
    classify_rank4,
    cyclicity_criterion,
    fixed_rank_check,
    flat_orderings,
    identify_group,
    maximal_cyclic_intersection_check,
    orbits,
    rigidity_check,
    symmetry_group,
)
from omsym.symmetry import (
    Permutation,
    closure,
    is_closed,
    is_trivial_rotation,
    maximal_cyclic_subgroups,
    rotation_group,
    subgroups,
)

CUBE_ANTIPODAL = Permutation(tuple(9 - i for i in range(1, 9)))


def _rotations_with(chi, order, fixed):
    return [g for g in rotation_group(chi) if g.order() == order and len(g.fixed_points()) == fixed]


def test_permutation_basics():
    p = Permutation.from_cycles(5, [(1, 2, 3)])
    assert p.images == (2, 3, 1, 4, 5)
    assert p.order() == 3
    assert (p * p.inverse()).is_identity()
    assert p**3 == Permutation.identity(5)
    assert Permutation.parse("2 3 1 4 5") == p
    assert p.extend().images == (2, 3, 1, 4, 5, 6)
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_classify_examples():
    cube = named("cube")
    assert classify_permutation(cube, Permutation.identity(8)) == "rotation"
    assert classify_permutation(cube, CUBE_ANTIPODAL) == "reflection"
    sigma = Permutation((3, 4, 5, 6, 1, 2, 7, 8))
    assert classify_permutation(named("paper8"), sigma) == "none"


def test_group_orders():
    a35 = symmetry_group(alt(3, 5))
    assert len(a35.rotations()) == 5 and a35.order == 10
    cube = symmetry_group(named("cube"))
    assert len(cube.rotations()) == 24 and cube.order == 48
    # three points: even permutations rotate, odd ones reflect
    a33 = symmetry_group(alt(3, 3))
    assert a33.order == 6 and len(a33.rotations()) == 3


@pytest.mark.parametrize("name", ["A_3,6", "cube", "bipyramid4", "paper8", "P2"])
def test_group_is_closed_and_kinds_multiply(name):
    g = symmetry_group(corpus()[name])
    elems = list(g.elements)
    assert Permutation.identity(g.elements[0].n) in elems
    assert is_closed(elems)
    kind = dict(zip(g.elements, g.kinds))
    for a in elems:
        for b in elems:
            expected = "rotation" if kind[a] == kind[b] else "reflection"
            assert kind[a * b] == expected
    assert len(g.rotations()) * 2 >= g.order


def test_identify_examples():
    assert identify_group([Permutation.identity(4)]).name == "C1"
    cube = identify_group(rotation_group(named("cube")))
    assert cube.name == "S4" and cube.order == 24
    d6 = identify_group(rotation_group(named("bipyramid3")))
    assert d6.name == "D6" and d6.parameter == 3
    g, h = d6.generators
    assert g.order() == 3 and h.order() == 2 and h * g * h.inverse() == g.inverse()
    other = identify_group(closure([Permutation.from_cycles(6, [(1, 2)]), Permutation.from_cycles(6, [(3, 4)]), Permutation.from_cycles(6, [(5, 6)])]))
    assert other.name == "other" and other.order == 8


def test_identify_recognizes_closure_on_generators():
    gens = [Permutation.from_cycles(5, [(1, 2, 3, 4, 5)])]
    assert identify_group(gens).name == "C5"
    with pytest.raises(ValueError):
        identify_group(gens, allow_closure=False)


def test_orbit_examples():
    cube = named("cube")
    diag = _rotations_with(cube, 3, 2)[0]
    orbs = orbits(closure([diag]), cube)
    assert sorted(len(o) for o, _ in orbs) == [1, 1, 3, 3]
    assert orbits([Permutation.identity(8)], cube) == [((i,), 1) for i in range(1, 9)]
    octa = named("bipyramid4")
    c4 = [g for g in _rotations_with(octa, 4, 2) if set(g.fixed_points()) == {5, 6}][0]
    orbs = orbits(closure([c4]), octa)
    assert sorted((len(o), rk) for o, rk in orbs) == [(1, 1), (1, 1), (4, 3)]


def test_fixed_rank_examples():
    cube = named("cube")
    res = fixed_rank_check(cube, _rotations_with(cube, 3, 2)[0])
    assert res.rank == 2 and res.passed and len(res.fixed) == 2
    ico = named("icosahedron")
    res = fixed_rank_check(ico, _rotations_with(ico, 5, 2)[0])
    assert res.rank == 2 and res.passed
    a35 = alt(3, 5)
    res = fixed_rank_check(a35, Permutation((2, 3, 4, 5, 1)))
    assert res.fixed == [] and res.rank == 0 and res.passed
    with pytest.raises(ValueError):
        fixed_rank_check(cube, CUBE_ANTIPODAL)
    with pytest.raises(ValueError):
        fixed_rank_check(cube, Permutation.identity(8))


def test_rigidity_examples():
    cube = named("cube")
    rots = rotation_group(cube)
    assert rigidity_check(cube, rots[3], rots[3], range(1, 9)).holds
    low = None
    for p, q in combinations(rots, 2):
        agree = [x for x in range(1, 9) if p(x) == q(x)]
        if agree and cube.rank_of(agree) == 2:
            low = rigidity_check(cube, p, q, agree)
            break
    assert low is not None and not low.applicable and low.holds
    for p in rots:
        for q in rots:
            agree = [x for x in range(1, 9) if p(x) == q(x)]
            if agree and cube.rank_of(agree) >= 3:
                verdict = rigidity_check(cube, p, q, agree)
                assert verdict.applicable and verdict.holds and p == q


def test_rank3_fixed_elements_are_parallel():
    for chi in corpus().values():
        if chi.r != 3:
            continue
        for g in rotation_group(chi):
            if is_trivial_rotation(chi, g):
                continue
            for a, b in combinations(g.fixed_points(), 2):
                assert all(chi(a, b, x) == 0 for x in range(1, chi.n + 1))


@settings(max_examples=15)
@given(st.permutations(range(1, 8)))
def test_symmetry_group_is_relabel_equivariant(images):
    chi = named("bipyramid5")
    p = Permutation(tuple(images))
    moved = {p * g * p.inverse() for g in symmetry_group(chi).elements}
    assert set(symmetry_group(chi.relabel(p)).elements) == moved


@settings(max_examples=20)
@given(st.permutations(range(1, 9)), st.sampled_from(["cube", "bipyramid6", "pyramid6"]))
def test_identify_is_conjugation_invariant(images, name):
    chi = named(name)
    k = chi.n
    p = Permutation(tuple(i for i in images if i <= k)) if k < 8 else Permutation(tuple(images))
    rots = rotation_group(chi)
    a = identify_group(rots)
    b = identify_group([p * g * p.inverse() for g in rots])
    assert (a.name, a.order, a.element_orders) == (b.name, b.order, b.element_orders)


def test_cyclicity_examples():
    cube = named("cube")
    c4 = closure([_rotations_with(cube, 4, 0)[0]])
    rep = cyclicity_criterion(cube, c4)
    assert rep.cyclic and rep.max_orbit_rank <= 3 and rep.consistent
    rep = cyclicity_criterion(cube, rotation_group(cube))
    assert not rep.cyclic and rep.max_orbit_rank == 4 and rep.consistent
    rep = cyclicity_criterion(cube, [Permutation.identity(8)])
    assert rep.cyclic and rep.max_orbit_rank == 1 and rep.consistent
    with pytest.raises(ValueError):
        cyclicity_criterion(alt(3, 5), [Permutation.identity(5)])


def test_cyclicity_only_if_direction_on_corpus():
    for name in ["cube", "icosahedron", "bipyramid4", "bipyramid6"]:
        chi = named(name)
        for sub in subgroups(rotation_group(chi)):
            rep = cyclicity_criterion(chi, sub)
            if rep.cyclic:
                assert rep.max_orbit_rank <= 3


def test_bipyramid_dihedral_group_breaks_the_cyclicity_equivalence():
    chi = named("bipyramid3")
    rep = cyclicity_criterion(chi, rotation_group(chi))
    assert not rep.cyclic and rep.max_orbit_rank == 3 and not rep.consistent


def test_maximal_cyclic_examples():
    for name in ("cube", "icosahedron"):
        assert maximal_cyclic_intersection_check(named(name)).passed
    p5 = named("pyramid5")
    assert len(maximal_cyclic_subgroups(rotation_group(p5))) == 1
    assert maximal_cyclic_intersection_check(p5).passed


def test_flat_ordering_examples():
    cube = named("cube")
    rep = flat_orderings(cube, [_rotations_with(cube, 3, 2)[0]])
    assert len(rep.flats) == 2 and rep.passed
    assert rep.orderings[0] == rep.orderings[1][::-1]
    ico = named("icosahedron")
    rep = flat_orderings(ico, [_rotations_with(ico, 5, 2)[0]])
    assert len(rep.flats) == 2 and len(rep.orderings) == 2 and rep.passed
    q3 = named("bipyramid3")
    rep = flat_orderings(q3, [_rotations_with(q3, 3, 2)[0]])
    assert rep.special and len(rep.flats) == 1


def test_classify_examples_rank4():
    assert classify_rank4(alt(4, 4)).name == "A4"
    assert classify_rank4(named("pyramid5")).name == "C5"
    with pytest.raises(ValueError):
        classify_rank4(alt(3, 5))
