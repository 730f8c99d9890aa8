from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from corpus import alt, named
from omsym import (
    PointConfig,
    check_covector_axioms,
    chirotope_from_points,
    cocircuits,
    compose,
    covectors,
    eliminate,
    extreme_points,
    fixed_point_extension,
    is_acyclic,
    is_matroid_polytope,
)
from omsym.exact import homogenize
from omsym.faces import (
    alternating_order,
    cocircuit_pattern_check,
    conforms,
    covector_split_check,
    edge_cocircuit_sequence,
    edge_sequence_ok,
    negate,
    separator,
    split_sequence_ok,
    sv_from_string,
    sv_to_string,
)
from omsym.geometry import example_config, parse_example_name, polygon_config


def lp_face_count(vectors) -> int:
    """Count sign vectors s for which {x : sign(v_i . x) = s_i} is nonempty, one LP each."""
    v = np.array([[float(c) for c in row] for row in vectors])
    n, d = v.shape
    count = 0
    for s in product((1, -1, 0), repeat=n):
        eq = [v[i] for i in range(n) if s[i] == 0]
        ub = [-s[i] * v[i] for i in range(n) if s[i]]
        res = linprog(
            np.zeros(d),
            A_ub=np.array(ub) if ub else None,
            b_ub=-np.ones(len(ub)) if ub else None,
            A_eq=np.array(eq) if eq else None,
            b_eq=np.zeros(len(eq)) if eq else None,
            bounds=[(None, None)] * d,
            method="highs",
        )
        count += res.status == 0
    return count


@pytest.mark.parametrize("name", ["simplex", "polygon4", "polygon6", "bipyramid3", "pyramid4", "cube"])
def test_covector_count_matches_lp_face_oracle(name):
    base, size = parse_example_name(name)
    cfg = example_config(base, size)
    vecs = [homogenize(p) for p in cfg.points]
    assert len(covectors(named(name))) == lp_face_count(vecs)


def test_cocircuits_of_a33():
    assert set(cocircuits(alt(3, 3))) == {
        (0, 0, 1), (0, 0, -1), (0, 1, 0), (0, -1, 0), (1, 0, 0), (-1, 0, 0),
    }


def test_cocircuit_through_paper8_flat():
    cocs = cocircuits(named("paper8"))
    assert any(c[:4] == (0, 0, 0, 0) and all(c[4:]) for c in cocs)


def test_cocircuits_are_minimal_covectors():
    for chi in (alt(3, 5), named("bipyramid3"), named("paper8")):
        cov = [v for v in covectors(chi) if any(v)]
        support = {v: frozenset(i for i, x in enumerate(v) if x) for v in cov}
        minimal = {v for v in cov if not any(support[w] < support[v] for w in cov)}
        assert minimal == set(cocircuits(chi))


def test_composition_examples():
    x = (1, 0, -1)
    assert compose(x, (0, 0, 0)) == x
    assert compose((1, 0), (-1, -1)) == (1, -1)
    assert compose(x, x) == x
    with pytest.raises(ValueError):
        compose((1,), (1, 1))


def test_sign_vector_helpers():
    assert sv_to_string(sv_from_string("+-0")) == "+-0"
    assert separator((1, -1, 0), (-1, -1, 1)) == frozenset({1})
    assert conforms((1, -1, 1), (1, 0, 0))
    assert not conforms((1, -1, 1), (-1, 0, 0))


def test_covector_set_of_a33_is_everything():
    assert len(covectors(alt(3, 3))) == 27
    assert (0, 0, 0) in covectors(alt(3, 3))


@given(st.sets(st.integers(1, 5)))
def test_covectors_follow_reorientation(a):
    chi = alt(3, 5)
    flipped = {tuple(-x if i + 1 in a else x for i, x in enumerate(v)) for v in covectors(chi)}
    assert set(covectors(chi.reorient(a))) == flipped


def test_covector_axiom_checker():
    cov = covectors(alt(3, 4))
    assert check_covector_axioms(cov).passed
    assert check_covector_axioms([(0, 0, 0)]).passed
    for v in cov:
        if any(v):
            rep = check_covector_axioms([w for w in cov if w != v])
            assert not rep.passed
            assert {a for a, _ in rep.violations} & {"V1", "V2", "V3"}


def test_elimination_examples():
    cov3 = covectors(alt(3, 3))
    assert eliminate(cov3, (0, 0, 1), (0, 0, -1), 3) == (0, 0, 0)
    cov4 = covectors(alt(3, 4))
    cocs = set(cocircuits(alt(3, 4)))
    # the edge cocircuits through 1,2 and through 2,3 disagree at 4
    x = next(c for c in cocs if c[0] == 0 and c[1] == 0 and c[2] > 0)
    y = next(c for c in cocs if c[1] == 0 and c[2] == 0 and c[3] < 0 and c[0] < 0)
    sep = separator(x, y)
    for e in sep:
        z = eliminate(cov4, x, y, e)
        assert z[e - 1] == 0 and z in cov4
    with pytest.raises(ValueError):
        eliminate(cov4, x, x, 1)


def test_conformal_elimination():
    cov = covectors(named("bipyramid3"))
    nonzero = [v for v in cov if any(v)][:60]
    done = 0
    for x in nonzero:
        for y in nonzero:
            sep = separator(x, y)
            if sep:
                z = eliminate(cov, x, y, None, conformal=True, subset=sep)
                assert all(z[k - 1] in (0, y[k - 1]) for k in sep)
                assert any(z[k - 1] == 0 for k in sep)
                done += 1
    assert done


def test_elimination_is_total_on_valid_sets():
    cov = covectors(alt(3, 5))
    for x in cov[::7]:
        for y in cov[::5]:
            for e in separator(x, y):
                eliminate(cov, x, y, e)


def test_acyclicity():
    assert all(is_acyclic(alt(3, n)) for n in range(3, 9))
    assert is_acyclic(alt(3, 4).reorient({1, 2, 3, 4}))
    # one vertex of a square can still be separated from the others by a line
    assert is_acyclic(alt(3, 4).reorient({1}))
    assert not is_acyclic(alt(3, 4).reorient({1, 3}))


def test_extreme_points():
    assert extreme_points(alt(3, 6)) == list(range(1, 7))
    centroid = PointConfig(2, [[0, 0], [3, 0], [0, 3], [1, 1]])
    assert extreme_points(chirotope_from_points(centroid)) == [1, 2, 3]
    assert extreme_points(named("P2")) == [1, 3, 4, 6, 7]
    with pytest.raises(ValueError):
        extreme_points(alt(3, 4).reorient({1, 3}))


def test_matroid_polytope():
    assert is_matroid_polytope(named("cube"))
    assert not is_matroid_polytope(named("P2"))
    assert is_matroid_polytope(alt(3, 7))


def test_edge_pattern_examples():
    assert cocircuit_pattern_check(alt(3, 5), [1, 2, 3, 4], 5)
    square = chirotope_from_points(polygon_config(4))
    ext, e = fixed_point_extension(square)
    order, sign = alternating_order(ext, [1, 2, 3, 4])
    assert edge_cocircuit_sequence(ext, order, e, sign) == [1, 1, 1, 1]
    assert cocircuit_pattern_check(ext, order, e)
    assert not edge_sequence_ok([1, -1, 1, -1])
    with pytest.raises(ValueError):
        cocircuit_pattern_check(alt(3, 5), [1, 3, 2, 4], 5)


@pytest.mark.parametrize(
    "seq,ok",
    [("++++", True), ("0--0", True), ("+0-0+", True), ("-++-", True), ("+-+-", False), ("0+0+", False), ("00+", True)],
)
def test_edge_templates(seq, ok):
    assert edge_sequence_ok(sv_from_string(seq)) is ok


def test_split_examples():
    chi = alt(3, 5)
    for c in cocircuits(chi):
        for x0 in range(1, 6):
            if c[x0 - 1] == 0:
                assert covector_split_check(chi, c, x0)
    assert covector_split_check(chi, (0,) * 5, 1)
    bad = sv_from_string("0+-+")
    assert not covector_split_check(alt(3, 4), bad, 1)
    assert bad not in covectors(alt(3, 4))
    assert not split_sequence_ok(sv_from_string("+-+"))


def test_negate_involution():
    for v in covectors(alt(3, 4)):
        assert negate(negate(v)) == v
