#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Scenario container with per-label, per-component boundary conditions
# - Manufactured-solution scenario on the unit square
# - Barry-Mercer benchmark scenario with the time-dependent loaded segment
# - Name-based lookup for the CLI
# - Discretization of the scenario geometry
#

"""
Scenarios: geometry, forcing, boundary and initial data of a run.

The poroelastic subdomain is the lower half [0,1]x[0,1/2], the elastic
subdomain the upper half [0,1]x[1/2,1] of the unit square. Boundary data
callables receive the facet label so that tractions and fluxes can depend on
which segment they act on.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ..core.constants import (
    BARRY_MERCER_FINAL_TIME,
    BARRY_MERCER_LOAD_END,
    BARRY_MERCER_LOAD_START,
    BARRY_MERCER_TIME_STEP,
    COORDINATE_TOLERANCE,
    DOMAIN_HEIGHT,
    DOMAIN_WIDTH,
    INTERFACE_HEIGHT,
    MMS_FINAL_TIME,
    MMS_TIME_STEP,
)
from ..core.exceptions import MissingBoundaryDataError
from ..core.types import BoundaryKind, BoundaryLabel, FloatArray, ScalarField, ScenarioName, SubdomainId, VectorField
from ..mesh.discretization import Discretization, build_discretization
from ..mesh.dofs import FieldOrders
from ..mesh.grid import Rectangle
from .manufactured import ManufacturedSolution
from .params import ModelParams

__all__ = [
    "BoundaryField",
    "FacetCondition",
    "SubdomainData",
    "InitialData",
    "ExactSolution",
    "Scenario",
    "outward_normal",
    "loaded_segment_pressure",
    "mms_scenario",
    "barry_mercer_scenario",
    "get_scenario",
]

# g(label, x, y, t) -> (k, n) values on a labelled boundary segment
BoundaryField = Callable[[BoundaryLabel, FloatArray, FloatArray, float], FloatArray]

_OUTWARD: Mapping[BoundaryLabel, tuple[float, float]] = {
    BoundaryLabel.GAMMA_1: (1.0, 0.0),
    BoundaryLabel.GAMMA_2: (0.0, -1.0),
    BoundaryLabel.GAMMA_3: (-1.0, 0.0),
    BoundaryLabel.GAMMA_4: (0.0, 1.0),
}


def outward_normal(subdomain: SubdomainId, label: BoundaryLabel) -> FloatArray:
    """Unit outward normal of a labelled segment; the interface normal points out of ``subdomain``."""
    if label is BoundaryLabel.INTERFACE:
        return np.array([0.0, 1.0]) if SubdomainId(subdomain) is SubdomainId.P else np.array([0.0, -1.0])
    return np.array(_OUTWARD[label])


@dataclass(frozen=True)
class FacetCondition:
    """Conditions on one labelled segment.

    Attributes:
        displacement: Per component, DISPLACEMENT (Dirichlet), TRACTION or INTERFACE
        pressure: PRESSURE (Dirichlet), FLUX or None (elastic subdomain)
    """

    displacement: tuple[BoundaryKind, BoundaryKind]
    pressure: BoundaryKind | None = None

    def is_dirichlet(self, component: int) -> bool:
        return self.displacement[component] is BoundaryKind.DISPLACEMENT

    def has_traction(self) -> bool:
        return BoundaryKind.TRACTION in self.displacement


def _zero_vector(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
    return np.zeros((2, *np.shape(x)))


def _zero_scalar(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
    return np.zeros(np.shape(x))


def _zero_boundary_vector(label: BoundaryLabel, x: FloatArray, y: FloatArray, t: float) -> FloatArray:
    return np.zeros((2, *np.shape(x)))


def _zero_boundary_scalar(label: BoundaryLabel, x: FloatArray, y: FloatArray, t: float) -> FloatArray:
    return np.zeros(np.shape(x))


@dataclass(frozen=True, eq=False)
class SubdomainData:
    """Forcing and boundary data of one subdomain."""

    rect: Rectangle
    conditions: Mapping[BoundaryLabel, FacetCondition]
    body_force: VectorField = _zero_vector
    displacement_bc: VectorField = _zero_vector
    traction: BoundaryField = _zero_boundary_vector


@dataclass(frozen=True, eq=False)
class InitialData:
    """u_0 and p_0; eta_0 and xi_0 follow from the discrete divergence of u_0."""

    displacement_p: VectorField = _zero_vector
    displacement_e: VectorField = _zero_vector
    pressure: ScalarField = _zero_scalar


@dataclass(frozen=True, eq=False)
class ExactSolution:
    """Closed-form fields for error measurement."""

    displacement_p: VectorField
    displacement_e: VectorField
    pressure: ScalarField

    def displacement(self, subdomain: SubdomainId) -> VectorField:
        return self.displacement_p if SubdomainId(subdomain) is SubdomainId.P else self.displacement_e


@dataclass(frozen=True, eq=False)
class Scenario:
    """Everything that defines a run apart from the discretization."""

    name: ScenarioName
    params: ModelParams
    poro: SubdomainData
    elastic: SubdomainData
    final_time: float
    time_step: float
    interface_height: float = INTERFACE_HEIGHT
    source: ScalarField = _zero_scalar
    pressure_bc: ScalarField = _zero_scalar
    flux_bc: BoundaryField = _zero_boundary_scalar
    initial: InitialData = field(default_factory=InitialData)
    exact: ExactSolution | None = None

    def subdomain(self, sid: SubdomainId) -> SubdomainData:
        return self.poro if SubdomainId(sid) is SubdomainId.P else self.elastic

    def condition(self, sid: SubdomainId, label: BoundaryLabel) -> FacetCondition:
        """Condition on ``label`` of subdomain ``sid``.

        Raises:
            MissingBoundaryDataError: If the scenario leaves the segment unspecified
        """
        conditions = self.subdomain(sid).conditions
        if label not in conditions:
            raise MissingBoundaryDataError(f"scenario {self.name.value} has no condition for {label.value} on subdomain {SubdomainId(sid).value}")
        return conditions[label]

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.final_time / self.time_step)))

    def with_params(self, params: ModelParams) -> "Scenario":
        """Rebuild the scenario for another material."""
        return get_scenario(self.name, params, final_time=self.final_time, time_step=self.time_step)

    def discretize(self, n: int, orders: FieldOrders | None = None) -> Discretization:
        """Mesh both subdomains with ``n`` cells along the interface."""
        return build_discretization(self.poro.rect, self.elastic.rect, self.interface_height, n, orders or FieldOrders())

    def with_time(self, final_time: float | None = None, time_step: float | None = None) -> "Scenario":
        return dataclasses.replace(
            self,
            final_time=self.final_time if final_time is None else final_time,
            time_step=self.time_step if time_step is None else time_step,
        )


def _layout(interface_height: float) -> tuple[Rectangle, Rectangle]:
    return (
        Rectangle(0.0, DOMAIN_WIDTH, 0.0, interface_height),
        Rectangle(0.0, DOMAIN_WIDTH, interface_height, DOMAIN_HEIGHT),
    )


_CLAMPED = FacetCondition(displacement=(BoundaryKind.DISPLACEMENT, BoundaryKind.DISPLACEMENT))
_GLUED = (BoundaryKind.INTERFACE, BoundaryKind.INTERFACE)


def mms_scenario(
    params: ModelParams | None = None,
    final_time: float = MMS_FINAL_TIME,
    time_step: float = MMS_TIME_STEP,
) -> Scenario:
    """Manufactured-solution scenario with Dirichlet data on every outer segment.

    Args:
        params: Material; defaults to ``ModelParams()``
        final_time: T
        time_step: tau

    Returns:
        Scenario with an exact solution attached
    """
    params = params if params is not None else ModelParams()
    exact = ManufacturedSolution(params, INTERFACE_HEIGHT)
    rect_p, rect_e = _layout(INTERFACE_HEIGHT)

    def u_p(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        return exact.displacement(SubdomainId.P, x, y, t)

    def u_e(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        return exact.displacement(SubdomainId.E, x, y, t)

    def f_p(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        return exact.body_force(SubdomainId.P, x, y, t)

    def f_e(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        return exact.body_force(SubdomainId.E, x, y, t)

    def flux(label: BoundaryLabel, x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        # -w.n = (K/mu_f)(grad p - rho_f g).n
        grad = exact.pressure_gradient(x, y, t) - params.rho_f * params.gravity.reshape(2, *([1] * np.ndim(x)))
        kn = params.K.T @ outward_normal(SubdomainId.P, label)
        return (kn[0] * grad[0] + kn[1] * grad[1]) / params.mu_f

    outer = {label: _CLAMPED for label in (BoundaryLabel.GAMMA_1, BoundaryLabel.GAMMA_2, BoundaryLabel.GAMMA_3)}
    poro_conditions = {
        **{label: dataclasses.replace(cond, pressure=BoundaryKind.PRESSURE) for label, cond in outer.items()},
        BoundaryLabel.INTERFACE: FacetCondition(displacement=_GLUED, pressure=BoundaryKind.FLUX),
    }
    elastic_conditions = {
        BoundaryLabel.GAMMA_1: _CLAMPED,
        BoundaryLabel.GAMMA_3: _CLAMPED,
        BoundaryLabel.GAMMA_4: _CLAMPED,
        BoundaryLabel.INTERFACE: FacetCondition(displacement=_GLUED),
    }
    return Scenario(
        name=ScenarioName.MMS,
        params=params,
        poro=SubdomainData(rect=rect_p, conditions=poro_conditions, body_force=f_p, displacement_bc=u_p),
        elastic=SubdomainData(rect=rect_e, conditions=elastic_conditions, body_force=f_e, displacement_bc=u_e),
        final_time=final_time,
        time_step=time_step,
        interface_height=INTERFACE_HEIGHT,
        source=exact.source,
        pressure_bc=exact.pressure,
        flux_bc=flux,
        initial=InitialData(
            displacement_p=u_p,
            displacement_e=u_e,
            pressure=exact.pressure,
        ),
        exact=ExactSolution(displacement_p=u_p, displacement_e=u_e, pressure=exact.pressure),
    )


def loaded_segment_pressure(x: FloatArray, t: float) -> FloatArray:
    """p_2(x, t) = sin t on the loaded part of the bottom edge, 0 elsewhere."""
    x = np.asarray(x, dtype=np.float64)
    inside = (x >= BARRY_MERCER_LOAD_START - COORDINATE_TOLERANCE) & (x <= BARRY_MERCER_LOAD_END + COORDINATE_TOLERANCE)
    return np.where(inside, np.sin(t), 0.0)


def barry_mercer_scenario(
    params: ModelParams | None = None,
    final_time: float = BARRY_MERCER_FINAL_TIME,
    time_step: float = BARRY_MERCER_TIME_STEP,
) -> Scenario:
    """Barry-Mercer benchmark: zero forcing and initial data, loaded bottom segment.

    The poroelastic side has p = 0 and u_x = 0 on the vertical sides, p = p_2
    and u_y = 0 on the bottom with normal stress (0, alpha p_2), and no flux
    across the interface. The elastic side has u_x = 0 on the vertical sides
    and u_y = 0 on the top.
    """
    params = params if params is not None else ModelParams()
    rect_p, rect_e = _layout(INTERFACE_HEIGHT)
    roller_x = FacetCondition(displacement=(BoundaryKind.DISPLACEMENT, BoundaryKind.TRACTION))
    roller_y = FacetCondition(displacement=(BoundaryKind.TRACTION, BoundaryKind.DISPLACEMENT))

    def traction(label: BoundaryLabel, x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        values = np.zeros((2, *np.shape(x)))
        if label is BoundaryLabel.GAMMA_2:
            values[1] = params.alpha * loaded_segment_pressure(x, t)
        return values

    def pressure_bc(x: FloatArray, y: FloatArray, t: float) -> FloatArray:
        on_bottom = np.abs(np.asarray(y) - rect_p.y0) <= COORDINATE_TOLERANCE
        return np.where(on_bottom, loaded_segment_pressure(x, t), 0.0)

    poro_conditions = {
        BoundaryLabel.GAMMA_1: dataclasses.replace(roller_x, pressure=BoundaryKind.PRESSURE),
        BoundaryLabel.GAMMA_3: dataclasses.replace(roller_x, pressure=BoundaryKind.PRESSURE),
        BoundaryLabel.GAMMA_2: dataclasses.replace(roller_y, pressure=BoundaryKind.PRESSURE),
        BoundaryLabel.INTERFACE: FacetCondition(displacement=_GLUED, pressure=BoundaryKind.FLUX),
    }
    elastic_conditions = {
        BoundaryLabel.GAMMA_1: roller_x,
        BoundaryLabel.GAMMA_3: roller_x,
        BoundaryLabel.GAMMA_4: roller_y,
        BoundaryLabel.INTERFACE: FacetCondition(displacement=_GLUED),
    }
    return Scenario(
        name=ScenarioName.BARRY_MERCER,
        params=params,
        poro=SubdomainData(rect=rect_p, conditions=poro_conditions, traction=traction),
        elastic=SubdomainData(rect=rect_e, conditions=elastic_conditions),
        final_time=final_time,
        time_step=time_step,
        interface_height=INTERFACE_HEIGHT,
        pressure_bc=pressure_bc,
    )


def get_scenario(
    name: ScenarioName | str,
    params: ModelParams | None = None,
    final_time: float | None = None,
    time_step: float | None = None,
) -> Scenario:
    """Build a scenario by name, keeping its default horizon unless overridden.

    Raises:
        ValueError: If ``name`` is not a known scenario
    """
    factory = {ScenarioName.MMS: mms_scenario, ScenarioName.BARRY_MERCER: barry_mercer_scenario}[ScenarioName(name)]
    scenario = factory(params)
    return scenario.with_time(final_time, time_step)
