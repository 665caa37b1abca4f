#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Physical parameters of both subdomains with derived Lame constants
# - Reformulation constants kappa1..kappa3 and the forward/inverse change of variables
# - Selectable shear modulus convention
#

"""
Physical parameters and the elastic-pressure / fluid-content reformulation.

With xi = alpha p - lambda div u and eta = c0 p + alpha div u, the pressure and
the volumetric strain are recovered as

    p     = kappa1 xi + kappa2 eta
    div u = kappa1 eta - kappa3 xi
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from ..core.constants import (
    DEFAULT_BIOT_WILLIS,
    DEFAULT_FLUID_DENSITY,
    DEFAULT_FLUID_VISCOSITY,
    DEFAULT_POISSON_RATIO,
    DEFAULT_STORAGE_COEFFICIENT,
    DEFAULT_YOUNG_MODULUS,
)
from ..core.exceptions import ParameterError
from ..core.types import FloatArray, MuConvention, SubdomainId

__all__ = [
    "ModelParams",
    "lame_from_young_poisson",
    "derived_kappas",
    "reformulate",
    "recover_pressure_and_divergence",
]


def lame_from_young_poisson(
    young: float,
    poisson: float,
    convention: MuConvention = MuConvention.UNHALVED,
) -> tuple[float, float]:
    """Convert Young's modulus and Poisson ratio to (lambda, mu).

    Args:
        young: Young's modulus, > 0
        poisson: Poisson ratio in [0, 0.5)
        convention: ``UNHALVED`` gives mu = E/(1+nu), ``STANDARD`` gives mu = E/(2(1+nu))

    Returns:
        Tuple (lambda, mu)

    Raises:
        ParameterError: If E <= 0 or nu outside [0, 0.5)
    """
    if not young > 0.0:
        raise ParameterError(f"Young's modulus must be positive, got {young}")
    if not 0.0 <= poisson < 0.5:
        raise ParameterError(f"Poisson ratio must lie in [0, 0.5), got {poisson}")
    lam = young * poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson))
    mu = young / (1.0 + poisson)
    if MuConvention(convention) is MuConvention.STANDARD:
        mu *= 0.5
    return lam, mu


def derived_kappas(alpha: float, c0: float, lam_p: float) -> tuple[float, float, float]:
    """Reformulation constants (kappa1, kappa2, kappa3).

    Raises:
        ParameterError: If alpha^2 + c0 lambda_P is not positive
    """
    denom = alpha * alpha + c0 * lam_p
    if not denom > 0.0:
        raise ParameterError(f"alpha^2 + c0*lambda_P must be positive, got {denom}")
    return alpha / denom, lam_p / denom, c0 / denom


@dataclass(frozen=True, eq=False)
class ModelParams:
    """Material constants of the poroelastic (P) and elastic (E) subdomains.

    Attributes:
        E_P, E_E: Young's moduli
        nu_P, nu_E: Poisson ratios
        alpha: Biot-Willis constant
        c0: Constrained specific storage coefficient
        K: 2x2 symmetric positive definite permeability tensor
        mu_f: Fluid viscosity
        rho_f: Fluid density
        gravity: Gravity vector
        convention: Shear modulus convention
    """

    E_P: float = DEFAULT_YOUNG_MODULUS
    E_E: float = DEFAULT_YOUNG_MODULUS
    nu_P: float = DEFAULT_POISSON_RATIO
    nu_E: float = DEFAULT_POISSON_RATIO
    alpha: float = DEFAULT_BIOT_WILLIS
    c0: float = DEFAULT_STORAGE_COEFFICIENT
    K: FloatArray = field(default_factory=lambda: np.eye(2))
    mu_f: float = DEFAULT_FLUID_VISCOSITY
    rho_f: float = DEFAULT_FLUID_DENSITY
    gravity: FloatArray = field(default_factory=lambda: np.zeros(2))
    convention: MuConvention = MuConvention.UNHALVED

    def __post_init__(self) -> None:
        object.__setattr__(self, "K", np.asarray(self.K, dtype=np.float64).reshape(2, 2))
        object.__setattr__(self, "gravity", np.asarray(self.gravity, dtype=np.float64).reshape(2))
        object.__setattr__(self, "convention", MuConvention(self.convention))

        # Both conversions validate E and nu
        lame_from_young_poisson(self.E_P, self.nu_P, self.convention)
        lam_e, _ = lame_from_young_poisson(self.E_E, self.nu_E, self.convention)
        if lam_e <= 0.0:
            raise ParameterError("the elastic subdomain needs nu_E > 0 (its pressure block scales with 1/lambda_E)")
        if self.alpha < 0.0 or self.c0 < 0.0:
            raise ParameterError("alpha and c0 must be nonnegative")
        if self.mu_f <= 0.0:
            raise ParameterError(f"fluid viscosity must be positive, got {self.mu_f}")
        if not np.allclose(self.K, self.K.T, rtol=0.0, atol=1e-14 * max(1.0, float(np.abs(self.K).max()))):
            raise ParameterError("permeability tensor must be symmetric")
        if np.linalg.eigvalsh(self.K).min() <= 0.0:
            raise ParameterError("permeability tensor must be positive definite")
        derived_kappas(self.alpha, self.c0, self.lambda_P)

    def lame(self, subdomain: SubdomainId) -> tuple[float, float]:
        """(lambda, mu) of one subdomain."""
        if SubdomainId(subdomain) is SubdomainId.P:
            return lame_from_young_poisson(self.E_P, self.nu_P, self.convention)
        return lame_from_young_poisson(self.E_E, self.nu_E, self.convention)

    @property
    def lambda_P(self) -> float:
        return self.lame(SubdomainId.P)[0]

    @property
    def mu_P(self) -> float:
        return self.lame(SubdomainId.P)[1]

    @property
    def lambda_E(self) -> float:
        return self.lame(SubdomainId.E)[0]

    @property
    def mu_E(self) -> float:
        return self.lame(SubdomainId.E)[1]

    @property
    def kappas(self) -> tuple[float, float, float]:
        return derived_kappas(self.alpha, self.c0, self.lambda_P)

    @property
    def kappa1(self) -> float:
        return self.kappas[0]

    @property
    def kappa2(self) -> float:
        return self.kappas[1]

    @property
    def kappa3(self) -> float:
        return self.kappas[2]

    def with_poisson(self, nu: float) -> "ModelParams":
        """Same material with both Poisson ratios replaced."""
        return dataclasses.replace(self, nu_P=nu, nu_E=nu)


def reformulate(params: ModelParams, pressure: FloatArray, divergence: FloatArray) -> tuple[FloatArray, FloatArray]:
    """Map (p, div u_P) to (xi_P, eta)."""
    p = np.asarray(pressure, dtype=np.float64)
    d = np.asarray(divergence, dtype=np.float64)
    xi = params.alpha * p - params.lambda_P * d
    eta = params.c0 * p + params.alpha * d
    return xi, eta


def recover_pressure_and_divergence(
    params: ModelParams,
    xi: FloatArray,
    eta: FloatArray,
) -> tuple[FloatArray, FloatArray]:
    """Map (xi_P, eta) back to (p, div u_P)."""
    k1, k2, k3 = params.kappas
    xi = np.asarray(xi, dtype=np.float64)
    eta = np.asarray(eta, dtype=np.float64)
    return k1 * xi + k2 * eta, k1 * eta - k3 * xi
