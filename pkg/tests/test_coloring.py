import numpy as np
import pytest

import oracles
from cvol.coloring import (
    ShadowColoring,
    check_arc_coloring,
    check_region_coloring,
    coloring_invariants,
    conjugate_coloring,
    is_reducible,
    monochromatic_coloring,
    propagate_regions,
    shadow_coloring,
    solve_colorings,
    transport_coloring,
)
from cvol.diagram import add_kink, build_diagram, build_regions, parse_pd, reverse_components
from cvol.errors import ColoringError
from cvol.quandle import (
    ProjVector,
    apply_matrix,
    approx_equal,
    det,
    inverse_element,
    qmul,
    qpow,
    random_projvector,
    random_sl2,
)


def test_figure_eight_classes(sols41):
    sols = sols41
    assert [s.reducible for s in sols] == [False, False, True]
    a, b = sols[0].invariants, sols[1].invariants
    # the two classes are complex conjugate
    assert np.allclose(a, b.conj(), atol=1e-9)


def test_five_two_classes(sols52):
    assert [s.reducible for s in sols52] == [False, False, False, True]


def test_solutions_satisfy_crossing_rule(d41, d52, sols41, sols52):
    for d, sols in ((d41, sols41), (d52, sols52)):
        for s in sols:
            rep = check_arc_coloring(d, s.coloring, 1e-12)
            assert rep.ok and rep.max_residual < 1e-12
            for x in d.crossings:
                A = s.coloring
                out = qpow(A[x.under_in_arc], A[x.over_arc], x.sign)
                assert approx_equal(out, A[x.under_out_arc], 1e-12)


def test_solver_is_deterministic(d41):
    a = solve_colorings(d41, seed=3, max_attempts=5)
    b = solve_colorings(d41, seed=3, max_attempts=5)
    assert len(a) == len(b)
    for s, t in zip(a, b):
        assert np.array_equal(s.invariants, t.invariants)


def test_monochromatic_is_a_reducible_coloring(d41):
    A = monochromatic_coloring(d41, ProjVector(1, 2))
    assert check_arc_coloring(d41, A).ok
    assert is_reducible(A)


def test_kink_admits_only_trivial_colorings():
    d = build_diagram(parse_pd(oracles.PD_KINK))
    assert [s.reducible for s in solve_colorings(d)] == [True]


def test_bad_coloring_detected(d41, A41):
    A = dict(A41)
    A[0] = ProjVector(A[0].a + 0.1, A[0].b)
    rep = check_arc_coloring(d41, A)
    assert not rep.ok
    assert rep.failing


def test_region_rule(d52, A52, rng):
    A = A52
    R = build_regions(d52)
    regions = propagate_regions(d52, A, random_projvector(rng), regions=R)
    assert check_region_coloring(d52, A, regions, R) < 1e-10
    for label, e in d52.edges.items():
        assert approx_equal(regions[R.right[label]], qmul(regions[R.left[label]], A[e.arc]), 1e-10)


def test_shadow_base_region(d41, A41, rng):
    A = A41
    R = build_regions(d41)
    base = random_projvector(rng)
    for k in range(R.n_regions):
        S = shadow_coloring(d41, A, base, base_region=k, regions=R)
        assert S.base_region == k and S.regions[k] == base
        assert check_region_coloring(d41, A, S.regions, R) < 1e-10


def test_invariants_detect_conjugation(d52, A52, rng):
    A = A52
    g = random_sl2(rng)
    B = {k: apply_matrix(g, v) for k, v in A.items()}
    assert check_arc_coloring(d52, B, 1e-9).ok
    assert np.allclose(coloring_invariants(A), coloring_invariants(B), atol=1e-9)


def test_conjugate_coloring(d41, A41, rng):
    A = A41
    S = shadow_coloring(d41, A, random_projvector(rng))
    w = random_projvector(rng)
    T = conjugate_coloring(S, w)
    assert check_arc_coloring(d41, T.arcs, 1e-9).ok
    assert check_region_coloring(d41, T.arcs, T.regions, build_regions(d41)) < 1e-9
    # conjugation is an SL(2) action, so determinants are kept
    assert abs(det(T.arcs[0], T.arcs[1]) - det(S.arcs[0], S.arcs[1])) < 1e-9


def test_transport_after_reversal(d52, A52):
    A = A52
    r = build_diagram(reverse_components(d52.pd, d52, [0]))
    B = transport_coloring(d52, A, r, [0])
    assert check_arc_coloring(r, B, 1e-9).ok
    # without inverting the colors the crossing rule breaks
    assert not check_arc_coloring(r, transport_coloring(d52, A, r), 1e-9).ok
    assert approx_equal(inverse_element(inverse_element(A[0])), A[0], 1e-15)


@pytest.mark.parametrize("label", [1, 4, 8])
@pytest.mark.parametrize("positive", [True, False])
def test_transport_to_kinked_diagram(d41, A41, label, positive):
    A = A41
    k = build_diagram(add_kink(d41.pd, label, positive))
    assert check_arc_coloring(k, transport_coloring(d41, A, k), 1e-9).ok


def test_transport_needs_shared_edges(d41, A41):
    other = build_diagram(parse_pd("X[11,11,12,12]"))
    with pytest.raises(ColoringError):
        transport_coloring(d41, A41, other)


def test_shadow_json_roundtrip(d41, A41, rng):
    S = shadow_coloring(d41, A41, random_projvector(rng))
    T = ShadowColoring.from_json(S.to_json())
    assert T.base_region == S.base_region
    for k in S.arcs:
        assert approx_equal(S.arcs[k], T.arcs[k], 1e-15)
    for k in S.regions:
        assert approx_equal(S.regions[k], T.regions[k], 1e-15)
