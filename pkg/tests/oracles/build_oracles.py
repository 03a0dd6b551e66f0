"""Regenerate ``oracles.json`` with mpmath at 40 digits.

Every value is computed from closed-form expressions (or mpmath's own
differentiation, root finding and quadrature), never through hardyfactor, so
the frozen file is an independent reference.  Run from the repository root:

    python tests/oracles/build_oracles.py
"""

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40


def S(z, c=1, zeta=1):
    return mp.exp(-c * (zeta + z) / (zeta - z))


def cj(z):
    z = mp.mpc(z)
    return [float(z.real), float(z.imag)]


def main():
    out = {}

    z = mp.mpc(0.3, 0.1)
    out["d_one_minus_z4"] = {"z": cj(z), "value": cj(mp.diff(lambda w: (1 - w) ** 4, z))}

    c = mp.mpf("0.7")
    z = mp.mpc(0, 0.5)
    out["d_singular_inner"] = {"c": 0.7, "z": cj(z), "value": cj(mp.diff(lambda w: S(w, c), z))}

    z = mp.mpc(0.2, 0.3)
    out["d_h4"] = {"c": 0.7, "z": cj(z), "value": cj(mp.diff(lambda w: (1 - w) ** 4 * S(w, c), z))}

    a = mp.mpf("0.3")
    z = mp.mpc(0.2, -0.4)
    shift = lambda w: (S(w) - a) / (1 - a * S(w))
    out["d_frostman"] = {"alpha": 0.3, "z": cj(z), "value": cj(mp.diff(shift, z))}

    # a fixed structured function: (0.5 + (1-0.3i) z^2) / (z - 1.7) * S_{(e^{0.4i}, 0.8)} + (2 - z) * S_{(-1, 0.3)}
    z0 = mp.mpc(0.4, 0.2)
    z1 = mp.expj(mp.mpf("0.4"))
    val = (mp.mpf("0.5") + mp.mpc(1, -0.3) * z0**2) / (z0 - mp.mpf("1.7")) * S(z0, mp.mpf("0.8"), z1) + (2 - z0) * S(z0, mp.mpf("0.3"), -1)
    out["structured_eval"] = {"z": cj(z0), "value": cj(val)}

    # W(S, zS, z^2 S) by numerical differentiation of the three functions
    pts = [mp.mpc(0.1, 0.2), mp.mpc(-0.3, 0.4), mp.mpc(0.5, -0.1)]
    vals = []
    for p in pts:
        fs = [lambda w: S(w), lambda w: w * S(w), lambda w: w**2 * S(w)]
        m = mp.matrix(3, 3)
        for j, f in enumerate(fs):
            for k in range(3):
                m[k, j] = mp.diff(f, p, k)
        vals.append({"z": cj(p), "value": cj(mp.det(m))})
    out["wronskian_s_zs_z2s"] = vals

    # zeros of S_{atom(1,1)} - 0.3 in |z| < 0.999, polished by findroot on the transcendental equation
    zs = []
    for k in range(-40, 41):
        w = -(mp.log(mp.mpf("0.3")) + 2j * mp.pi * k)
        z = (w - 1) / (w + 1)
        if abs(z) < mp.mpf("0.999"):
            z = mp.findroot(lambda u: S(u) - mp.mpf("0.3"), z)
            zs.append(cj(z))
    zs.sort(key=lambda p: (p[0] ** 2 + p[1] ** 2, p))
    out["frostman_zeros_0p3_r0p999"] = zs

    # circle means of |f'| for the smoothness diagnostic
    r = 1 - mp.mpf(2) ** -6
    dS = lambda w: -2 / (1 - w) ** 2 * S(w)
    dh = lambda w: (-4 * (1 - w) ** 3 - 2 * (1 - w) ** 2) * S(w)
    for name, f in (("abs_mean_dS", dS), ("abs_mean_dh4", dh)):
        I = mp.quad(lambda t: abs(f(r * mp.expj(t))), [-mp.pi, -0.1, -0.01, 0, 0.01, 0.1, mp.pi]) / (2 * mp.pi)
        out[name] = {"r": float(r), "value": float(I)}

    # per-radius atom mass of h' = (-4(1-z)^3 - 2c(1-z)^2) S, c = 0.5
    c = mp.mpf("0.5")
    rs = [1 - mp.mpf(2) ** -k for k in (6, 10, 14)]
    masses = [float(-(1 - r) * mp.log(abs((-4 * (1 - r) ** 3 - 2 * c * (1 - r) ** 2) * S(r, c))) / (1 + r)) for r in rs]
    out["atom_mass_dh4_c0p5"] = {"radii": [float(r) for r in rs], "values": masses}

    # boundary mean of log|1 - a theta| for theta = S_{atom(1,1)}, by quadrature over the boundary
    for a in ("0.3",):
        a = mp.mpf(a)
        g = lambda t: mp.log(abs(1 - a * mp.exp(-1j / mp.tan(t / 2))))
        I = mp.quad(g, mp.linspace(mp.mpf("1e-4"), 2 * mp.pi - mp.mpf("1e-4"), 400)) / (2 * mp.pi)
        out["boundary_mean_outer_0p3"] = {"value": float(I), "truncation": 2e-4 * float(mp.log(1 + a)) / (2 * float(mp.pi))}

    path = Path(__file__).with_name("oracles.json")
    path.write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
