#!/usr/bin/env python3
"""Determinant lines by hand: charts, transitions, sewing, metric.

Everything here is coordinate bookkeeping for one line element. A chart is a
shift matrix alpha with det(A + alpha) != 0; the coordinate of the element in
that chart is det((A + alpha)^{-1} R) up to the stored scale.
"""

import numpy as np

from detbundle.detline import (
    canonical_det,
    chart_coordinate,
    norm_sq,
    sew,
    sew_gauge_factor,
    transition,
)

rng = np.random.default_rng(21)
dim = 5

a = 0.4 * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
e = canonical_det(a)

alpha = np.eye(dim)
beta = 2.0 * np.eye(dim) + 0.1 * rng.standard_normal((dim, dim))
gamma = 3.0 * np.eye(dim)

za = chart_coordinate(e, alpha)
zb = chart_coordinate(e, beta)
print(f"coordinate in chart alpha: {za:.8f}")
print(f"coordinate in chart beta:  {zb:.8f}")
print(f"gauge law residual: {abs(zb - transition(a, alpha, beta) * za):.3e}")

g = (transition(a, alpha, beta) * transition(a, beta, gamma)
     * transition(a, gamma, alpha))
print(f"cocycle around three charts: {g:.12f}")

# sewing two segment lines multiplies coordinates up to an explicit factor
phi01 = np.eye(dim) + 0.3 * rng.standard_normal((dim, dim))
phi12 = np.eye(dim) + 0.3 * rng.standard_normal((dim, dim))
e01, e12 = canonical_det(phi01), canonical_det(phi12)
z_sewn = chart_coordinate(sew(e01, e12), gamma)
factor = sew_gauge_factor(phi01, phi12, alpha, beta, gamma)
z_parts = chart_coordinate(e01, alpha) * chart_coordinate(e12, beta) * factor
print(f"sewing residual: {abs(z_sewn - z_parts):.3e}")

# the canonical metric of a unitary is 1: dets of unitaries live on the circle
q, _ = np.linalg.qr(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))
print(f"norm^2 of canonical element of a unitary: {norm_sq(canonical_det(q)):.12f}")
print(f"norm^2 of e: {norm_sq(e):.8f}")
