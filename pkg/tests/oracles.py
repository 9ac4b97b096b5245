"""Reference values computed independently of the package, then frozen.

Each frozen constant below was produced by the function next to it, run
under mpmath at 40 significant digits.  The test ``test_oracles.py``
re-derives them so a change in mpmath or in these routines is caught, while
the package tests compare against the frozen literals only.
"""

from __future__ import annotations

import mpmath as mp

# --- frozen values --------------------------------------------------------

# Bloch-Wigner dilogarithm at exp(i pi/3): the regular ideal tetrahedron.
D_E_IPI3 = 1.014941606409653625021202554274520285942
# figure-eight knot complement = two regular ideal tetrahedra
VOL41 = 2.029883212819307250042405108549040571883
# 5_2 complement, from its three-tetrahedron triangulation
VOL52 = 2.828122088330783162763898809276634942771
# shape of the 5_2 geometric solution shared by tetrahedra 0 and 2
M015_SHAPES = (complex(0.784920145499, 1.30714127868),
               complex(0.122561166877, 0.74486176662),
               complex(0.784920145499, 1.30714127868))

# Gluing equations of the 3-tetrahedron triangulation of the 5_2 complement:
# each row (A, B, c) means  prod_i z_i^A_i (1 - z_i)^B_i = c.
M015_EDGES = [
    ([0, 1, 0], [1, -2, 1], 1),
    ([-1, -2, -1], [0, 2, 0], 1),
    ([1, 1, 1], [-1, 0, -1], 1),
]
M015_MERIDIAN = ([-1, -1, 0], [0, 1, 0], -1)
M015_LONGITUDE = ([5, 3, -1], [-3, -2, 1], 1)

# --- PD codes -------------------------------------------------------------

PD_41 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"
PD_41_ALT = "X[8,5,1,6] X[4,1,5,2] X[2,8,3,7] X[6,4,7,3]"
PD_52 = "X[5,1,6,10] X[1,7,2,6] X[9,3,10,2] X[3,9,4,8] X[7,5,8,4]"
PD_31 = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
PD_51 = "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]"
PD_61 = ("X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] "
         "X[5,12,6,1] X[11,6,12,7]")
PD_KINK = "X[1,1,2,2]"

# 4_1 as a closed 3-braid, and two words related to it by Reidemeister moves
BRAID_41 = [1, -2, 1, -2]
BRAID_41_R2 = [1, -2, 1, 2, -2, -2]
BRAID_41_R3 = [1, 1, 2, -1, -2, -2]

# --- oracle routines ------------------------------------------------------


def bloch_wigner_mp(z, dps: int = 40):
    """D(z) = Im Li2(z) + arg(1 - z) log|z| via mpmath.polylog."""
    with mp.workdps(dps):
        z = mp.mpc(z)
        return mp.im(mp.polylog(2, z)) + mp.arg(1 - z) * mp.log(abs(z))


def li2_mp(z, dps: int = 30) -> complex:
    with mp.workdps(dps):
        return complex(mp.polylog(2, mp.mpc(z)))


def d_regular_grouped(dps: int = 40):
    """D(e^{i pi/3}) = Cl2(pi/3) summed in period-6 blocks.

    sin(k pi/3) repeats (s, s, 0, -s, -s, 0) with s = sqrt(3)/2, so the
    Clausen series is sqrt(3)/2 times a sum of positive-weight blocks.
    """
    with mp.workdps(dps):
        def block(k):
            return (1 / (6 * k + 1) ** 2 + 1 / (6 * k + 2) ** 2
                    - 1 / (6 * k + 4) ** 2 - 1 / (6 * k + 5) ** 2)

        return mp.sqrt(3) / 2 * mp.nsum(block, [0, mp.inf])


def gluing_volume(rows, start, dps: int = 40):
    """Solve the product-form gluing equations from ``start``; return (volume, shapes)."""
    with mp.workdps(dps):
        n = len(start)

        def eqs(*z):
            out = []
            for A, B, c in rows:
                v = mp.mpc(1)
                for zi, a, b in zip(z, A, B):
                    v *= zi ** a * (1 - zi) ** b
                out.append(v - c)
            return out

        z = mp.findroot(eqs, [mp.mpc(s) for s in start])
        z = [z[i] for i in range(n)] if n > 1 else [z]
        return sum(bloch_wigner_mp(zi, dps) for zi in z), z


def volume_52_cubic(dps: int = 40):
    """3 D(t) for t the root of t^3 - t^2 + 1 in the upper half plane."""
    with mp.workdps(dps):
        roots = mp.polyroots([1, -1, 0, 1], maxsteps=200, extraprec=2 * dps)
        t = next(r for r in roots if mp.im(r) > 0)
        return 3 * bloch_wigner_mp(t, dps)
