import numpy as np
import pytest

from cvol.bloch import BlochElement, diff_mod_pi2, evaluate, sigma_hat
from cvol.chain import QChain, fundamental_cycle, gen
from cvol.coloring import monochromatic_coloring, shadow_coloring
from cvol.errors import DegeneracyError, ReducibleColoringError
from cvol.quandle import ProjVector, apply_matrix, qmul, random_projvector, random_sl2
from cvol.simplicial import (
    SimpChain,
    Simplex,
    chain_map_residual,
    check_closed,
    is_nondegenerate,
    lift_psi,
    phi_alt,
    phi_general,
    phi_two,
)


def _gens(rng, degree, n=1):
    return QChain([(1, gen(*(random_projvector(rng) for _ in range(degree + 1)))) for _ in range(n)],
                  degree)


def _value(chain):
    return evaluate(BlochElement([sigma_hat(t.vertices, t.sign) for t in chain]))


def test_phi_two_shape(rng):
    c = _gens(rng, 2, 3)
    img = phi_two(random_projvector(rng), c)
    assert len(img) == 12 and img.dim == 3
    assert sorted(t.sign for t in img) == [-1] * 6 + [1] * 6


def test_phi_two_is_the_cube_formula(rng):
    p = random_projvector(rng)
    c = _gens(rng, 2, 2)
    assert (phi_two(p, c) - phi_general(p, c)).mass() == 0


def test_phi_alt_drops_x_equals_y(rng):
    p, r, x = (random_projvector(rng) for _ in range(3))
    assert len(phi_alt(p, QChain([(1, gen(r, x, x))], 2))) == 0
    # the four tetrahedra would cancel in pairs anyway
    rx = qmul(r, x)
    rxx = qmul(rx, x)
    terms = SimpChain([Simplex(1, (p, rx, r, x)), Simplex(-1, (p, rx, r, x)),
                       Simplex(-1, (p, rxx, rx, x)), Simplex(1, (p, rxx, rx, x))])
    assert terms.mass() == 0


def test_phi_requires_degree_two(rng):
    with pytest.raises(ValueError):
        phi_two(random_projvector(rng), _gens(rng, 3))
    with pytest.raises(ValueError):
        phi_alt(random_projvector(rng), _gens(rng, 1))
    with pytest.raises(ValueError):
        phi_general(random_projvector(rng), QChain([(1, gen(*[random_projvector(rng)] * 5))], 4))


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_chain_map(rng, degree):
    for _ in range(20):
        assert chain_map_residual(_gens(rng, degree, 2), random_projvector(rng), 1e-8) == 0


def test_signature_is_invariant(rng):
    vs = tuple(random_projvector(rng) for _ in range(4))
    t = Simplex(1, vs)
    g = random_sl2(rng)
    moved = Simplex(1, tuple(-apply_matrix(g, v) if k % 2 else apply_matrix(g, v)
                             for k, v in enumerate(vs)))
    assert np.allclose(t.signature(), moved.signature(), atol=1e-9)
    other = Simplex(1, tuple(random_projvector(rng) for _ in range(4)))
    assert not np.allclose(t.signature(), other.signature(), atol=1e-3)
    assert (SimpChain([t]) - SimpChain([moved])).mass() == 0


def test_nondegeneracy():
    a, b, c = ProjVector(1, 0), ProjVector(0, 1), ProjVector(1, 1)
    assert is_nondegenerate(Simplex(1, (a, b, c, ProjVector(1, -1))))
    assert not is_nondegenerate(Simplex(1, (a, b, c, ProjVector(2, 2))))


def test_closedness(rng):
    t = Simplex(1, tuple(random_projvector(rng) for _ in range(4)))
    assert not check_closed(SimpChain([t])).ok
    assert check_closed(SimpChain([t, Simplex(-1, t.vertices)])).ok
    vs = tuple(random_projvector(rng) for _ in range(5))
    assert check_closed(SimpChain(Simplex(1, vs).faces())).ok


def test_faces_alternate():
    vs = tuple(ProjVector(1, k) for k in range(4))
    fs = Simplex(-1, vs).faces()
    assert [f.sign for f in fs] == [-1, 1, -1, 1]
    assert fs[1].vertices == (vs[0], vs[2], vs[3])


def test_lift_figure_eight(d41, A41):
    lift = lift_psi(d41, A41, np.random.default_rng(0))
    assert len(lift.chain) == 16
    assert lift.chain.is_nondegenerate()
    assert check_closed(lift.chain).ok
    assert len(lift.cycle) == 4


@pytest.mark.parametrize("seed", range(5))
def test_phi_two_and_phi_alt_agree(d41, A41, seed):
    rng = np.random.default_rng(seed)
    S = shadow_coloring(d41, A41, random_projvector(rng))
    C = fundamental_cycle(d41, S)
    p = random_projvector(rng)
    a, b = phi_two(p, C), phi_alt(p, C)
    assert a.is_nondegenerate() and b.is_nondegenerate()
    assert check_closed(a).ok and check_closed(b).ok
    assert diff_mod_pi2(_value(a), _value(b)) < 1e-9


def test_lift_rejects_monochromatic(d41):
    A = monochromatic_coloring(d41, ProjVector(1, 2))
    with pytest.raises(ReducibleColoringError, match="degenerate after max attempts"):
        lift_psi(d41, A, np.random.default_rng(0), max_attempts=3)
    assert issubclass(ReducibleColoringError, DegeneracyError)


def test_json_roundtrip(d41, A41):
    chain = lift_psi(d41, A41, np.random.default_rng(1)).chain
    back = SimpChain.from_json(chain.to_json())
    assert (back - chain).mass() == 0
    assert [t.sign for t in back] == [t.sign for t in chain]
