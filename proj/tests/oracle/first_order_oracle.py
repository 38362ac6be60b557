#!/usr/bin/env python3
"""Independent reference values for the first-order scenario.

Uses scipy quadrature on the closed-form kernels, no matrix exponentials.
The numbers printed here are frozen into the C++ unit tests.
Run: python3 tests/oracle/first_order_oracle.py
"""
import json

import numpy as np
from scipy.integrate import quad

TP, TE, TF, TC = 0.2, 0.1, 1.0, 0.9
ALPHA, BETA, AE_MAX = 0.05, 0.3, 100.0


def psi(t):
    return np.expm1(-t) + t


def hp(t):
    return -TP * psi((TF - t) / TP)


def he(t):
    return TE * psi((TF - t) / TE)


def ge(t):
    return TE * psi((TF + TC - t) / TE)


def integral(f, a=0.0, b=TF):
    return quad(f, a, b, epsabs=1e-14, epsrel=1e-14, limit=400)[0]


ihp2 = integral(lambda t: hp(t) ** 2)
ihe2 = integral(lambda t: he(t) ** 2)
iheg = integral(lambda t: he(t) * ge(t))
ige2 = integral(lambda t: ge(t) ** 2)
ige = integral(ge)
mu_e = integral(lambda t: abs(TE * psi((TF + TC - t) / TE)), TF, TF + TC)

nu_p, nu_e = ihp2 / ALPHA, ihe2 / BETA
s = 1 + nu_p - nu_e
G2, G3 = iheg / BETA, ige2 / BETA
G = np.array([[s, G2], [-G2, G3]])
F = np.array([[1 - nu_e, G2], [-G2, G3]])
FLIP = np.diag([1.0, -1.0])
a = G2 / s
det_F = np.linalg.det(F)
d = nu_p * G2**2 / (s * det_F)
bound = mu_e * AE_MAX
G_bar = np.linalg.inv(G).T @ FLIP


def branch(z0, w0, sign):
    om = np.linalg.solve(G, [z0, w0 - sign * bound])
    return om, om @ FLIP @ G @ om


def laws(om):
    zf, vf = om
    return (lambda t: -hp(t) * zf / ALPHA), (lambda t: (he(t) * zf - ge(t) * vf) / BETA)


def cost(z0, up, ue):
    zf = z0 + integral(lambda t: hp(t) * up(t) + he(t) * ue(t))
    return zf**2 + ALPHA * integral(lambda t: up(t) ** 2) - BETA * integral(lambda t: ue(t) ** 2)


out = {
    "beta_star": ihe2, "mu_e": mu_e, "int_hp2": ihp2, "int_he_ge": iheg,
    "int_ge2": ige2, "int_ge": ige, "s": s, "G2": G2, "G3": G3, "a": a,
    "nu_p": nu_p, "nu_e": nu_e, "det_F": det_F, "d": d,
    "G_bar": G_bar.tolist(),
    "h_p(0.5)": hp(0.5), "h_e(0.5)": he(0.5), "g_e(0.5)": ge(0.5),
}

z0, w0 = 100.0, -100.0
for sign, tag in ((1, "+"), (-1, "-")):
    om, val = branch(z0, w0, sign)
    out["omega" + tag] = om.tolist()
    out["J" + tag] = val
up_plus, ue_plus = laws(branch(z0, w0, 1)[0])
u_bar = (bound - w0) / ige
out["u_bar"] = u_bar
out["J(u_p+, u_bar)"] = cost(z0, up_plus, lambda t: u_bar)
out["J(400(t-tf), u_e+)"] = cost(z0, lambda t: 400 * (t - TF), ue_plus)
out["J(400(tf-t), u_e+)"] = cost(z0, lambda t: 400 * (TF - t), ue_plus)
out["URG value z0=100"] = cost(z0, lambda t: -hp(t) * z0 / (ALPHA * s),
                               lambda t: he(t) * z0 / (BETA * s))

eps = 1.0
om_eps = np.linalg.solve(G + np.diag([0.0, eps]), [z0, w0 - bound])
out["omega_eps=1,+"] = om_eps.tolist()

for (pz, pw) in ((100.0, 50.0), (-100.0, -20.0)):
    op, _ = branch(pz, pw, 1)
    om_, _ = branch(pz, pw, -1)
    upp, uep = laws(op)
    upm, uem = laws(om_)
    key = f"({pz:g},{pw:g})"
    out[key] = {"++": cost(pz, upp, uep), "+-": cost(pz, upp, uem),
                "-+": cost(pz, upm, uep), "--": cost(pz, upm, uem)}

# Auxiliary cross problem with the pursuer on branch + at (100, -100).
chi = np.array([z0, w0])
om_p, _ = branch(z0, w0, 1)
xi1 = np.array([0.0, bound]) - np.array([nu_p * om_p[0], 0.0])
mu1 = chi + xi1
w1 = np.linalg.solve(F, mu1)
ue1 = lambda t: (he(t) * w1[0] - ge(t) * w1[1]) / BETA
out["J_cross+ simulated"] = cost(z0, up_plus, ue1)
out["omega1"] = w1.tolist()

print(json.dumps(out, indent=2))
