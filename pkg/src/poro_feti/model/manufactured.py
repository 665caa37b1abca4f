#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Closed-form manufactured fields, their derivatives and the matching forcing
#

"""
Stationary manufactured solution of the coupled problem.

u_P = (s, s) with s = sin(2 pi x) sin(2 pi y), p = sin(pi x) sin(pi y) and
u_E = u_P + (0, q) with q = -alpha p (y - y_G) / (lambda_P + 2 mu_P). The
correction q vanishes on the interface y = y_G together with its tangential
derivative, and its normal derivative cancels the jump of alpha p in the
normal stress.

All callables take coordinate arrays of equal shape and a time that is
ignored; vector results have shape (2, *x.shape).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core.constants import INTERFACE_HEIGHT
from ..core.types import FloatArray, SubdomainId
from .params import ModelParams

__all__ = ["ManufacturedSolution"]

_A = 2.0 * np.pi  # displacement wavenumber
_B = np.pi  # pressure wavenumber


@dataclass(frozen=True, eq=False)
class ManufacturedSolution:
    """Exact fields and forcing for a given material."""

    params: ModelParams
    interface_height: float = INTERFACE_HEIGHT

    @property
    def _shift(self) -> float:
        p = self.params
        return p.alpha / (p.lambda_P + 2.0 * p.mu_P)

    # Pressure and its derivatives

    def pressure(self, x: FloatArray, y: FloatArray, t: float = 0.0) -> FloatArray:
        return np.sin(_B * x) * np.sin(_B * y)

    def pressure_gradient(self, x: FloatArray, y: FloatArray, t: float = 0.0) -> FloatArray:
        return np.stack([_B * np.cos(_B * x) * np.sin(_B * y), _B * np.sin(_B * x) * np.cos(_B * y)])

    def _pressure_hessian(self, x: FloatArray, y: FloatArray) -> tuple[FloatArray, FloatArray, FloatArray]:
        p = self.pressure(x, y)
        pxy = _B * _B * np.cos(_B * x) * np.cos(_B * y)
        return -_B * _B * p, pxy, -_B * _B * p

    # Correction term q and its derivatives

    def _q_terms(self, x: FloatArray, y: FloatArray) -> dict[str, FloatArray]:
        c = self._shift
        yy = y - self.interface_height
        p = self.pressure(x, y)
        px, py = self.pressure_gradient(x, y)
        pxx, pxy, pyy = self._pressure_hessian(x, y)
        return {
            "q": -c * p * yy,
            "qx": -c * px * yy,
            "qy": -c * (py * yy + p),
            "qxx": -c * pxx * yy,
            "qyy": -c * (pyy * yy + 2.0 * py),
            "qxy": -c * (pxy * yy + px),
        }

    # Displacement

    def _s_terms(self, x: FloatArray, y: FloatArray) -> dict[str, FloatArray]:
        sx_, sy_ = np.sin(_A * x), np.sin(_A * y)
        cx_, cy_ = np.cos(_A * x), np.cos(_A * y)
        return {
            "s": sx_ * sy_,
            "sx": _A * cx_ * sy_,
            "sy": _A * sx_ * cy_,
            "c": cx_ * cy_,
        }

    def displacement(self, subdomain: SubdomainId, x: FloatArray, y: FloatArray, t: float = 0.0) -> FloatArray:
        s = self._s_terms(x, y)["s"]
        u = np.stack([s, s.copy()])
        if SubdomainId(subdomain) is SubdomainId.E:
            u[1] = u[1] + self._q_terms(x, y)["q"]
        return u

    def displacement_gradient(self, subdomain: SubdomainId, x: FloatArray, y: FloatArray) -> FloatArray:
        """grad u with entry [i, j] = d u_i / d x_j, shape (2, 2, *x.shape)."""
        s = self._s_terms(x, y)
        grad = np.stack([np.stack([s["sx"], s["sy"]]), np.stack([s["sx"], s["sy"]])])
        if SubdomainId(subdomain) is SubdomainId.E:
            q = self._q_terms(x, y)
            grad[1, 0] = grad[1, 0] + q["qx"]
            grad[1, 1] = grad[1, 1] + q["qy"]
        return grad

    def divergence(self, subdomain: SubdomainId, x: FloatArray, y: FloatArray, t: float = 0.0) -> FloatArray:
        grad = self.displacement_gradient(subdomain, x, y)
        return grad[0, 0] + grad[1, 1]

    def total_stress(self, subdomain: SubdomainId, x: FloatArray, y: FloatArray) -> FloatArray:
        """Total stress tensor, shape (2, 2, *x.shape); includes -alpha p I on the poroelastic side."""
        lam, mu = self.params.lame(subdomain)
        grad = self.displacement_gradient(subdomain, x, y)
        div = grad[0, 0] + grad[1, 1]
        sigma = mu * (grad + grad.transpose(1, 0, *range(2, grad.ndim)))
        iso = lam * div
        if SubdomainId(subdomain) is SubdomainId.P:
            iso = iso - self.params.alpha * self.pressure(x, y)
        sigma[0, 0] = sigma[0, 0] + iso
        sigma[1, 1] = sigma[1, 1] + iso
        return sigma

    # Forcing

    def body_force(self, subdomain: SubdomainId, x: FloatArray, y: FloatArray, t: float = 0.0) -> FloatArray:
        """f = -div(total stress)."""
        lam, mu = self.params.lame(subdomain)
        s = self._s_terms(x, y)
        a2 = _A * _A
        g = 2.0 * mu * a2 * s["s"] - (lam + mu) * a2 * (s["c"] - s["s"])
        f = np.stack([g, g.copy()])
        if SubdomainId(subdomain) is SubdomainId.P:
            return f + self.params.alpha * self.pressure_gradient(x, y)
        q = self._q_terms(x, y)
        f[0] = f[0] - (lam + mu) * q["qxy"]
        f[1] = f[1] - mu * (q["qxx"] + q["qyy"]) - (lam + mu) * q["qyy"]
        return f

    def source(self, x: FloatArray, y: FloatArray, t: float = 0.0) -> FloatArray:
        """z = -div(K grad p) / mu_f; the fluid content is stationary."""
        k = self.params.K
        pxx, pxy, pyy = self._pressure_hessian(x, y)
        return -(k[0, 0] * pxx + (k[0, 1] + k[1, 0]) * pxy + k[1, 1] * pyy) / self.params.mu_f
