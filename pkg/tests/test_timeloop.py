#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Tests for the time grid, initial projection and the backward Euler loop
#

"""
Tests for the timeloop package.
"""

from __future__ import annotations

import dataclasses
from unittest.mock import patch

import numpy as np
import pytest

from poro_feti.assembly.blocks import BlockSystem, assemble_block_system
from poro_feti.core.exceptions import ParameterError, SimulationStepError
from poro_feti.core.types import RetentionPolicy, SolverKind, SubdomainId
from poro_feti.mesh.discretization import Discretization
from poro_feti.model.manufactured import ManufacturedSolution
from poro_feti.model.params import recover_pressure_and_divergence
from poro_feti.model.scenarios import Scenario
from poro_feti.solver.factorization import factor_matrix
from poro_feti.solver.pcg import PcgReport
from poro_feti.timeloop.state import StateSnapshot, interpolate_vector, project_initial, projected_divergence
from poro_feti.timeloop.stepper import (
    SolverSettings,
    advance_step,
    mass_balance_residual,
    prepare_simulation,
    run_simulation,
)
from poro_feti.timeloop.time_grid import TimeGrid
from poro_feti.verify.norms import l2_error, linf_l2_error, state_errors
from poro_feti.verify.oscillation import peak_on_loaded_segment, pressure_peak_location


class TestTimeGrid:
    """Uniform backward Euler levels."""

    def test_levels(self) -> None:
        grid = TimeGrid(final_time=1e-2, n_steps=100)
        assert grid.tau == pytest.approx(1e-4)
        assert grid.t(0) == 0.0
        assert grid.t(100) == 1e-2
        assert grid.times().size == 101

    def test_step_out_of_range(self) -> None:
        with pytest.raises(IndexError):
            TimeGrid(1.0, 4).t(5)

    @pytest.mark.parametrize("final_time, n_steps", [(1.0, 0), (0.0, 3), (-1.0, 3)])
    def test_invalid_grid(self, final_time: float, n_steps: int) -> None:
        with pytest.raises(ParameterError):
            TimeGrid(final_time, n_steps)

    def test_from_scenario(self, mms: Scenario) -> None:
        grid = TimeGrid.from_scenario(mms)
        assert grid.n_steps == 2
        assert grid.tau == pytest.approx(mms.time_step)


class TestInitialState:
    """Projection of the initial data."""

    def test_barry_mercer_starts_at_rest(self, barry_mercer: Scenario) -> None:
        disc = barry_mercer.discretize(4)
        state = project_initial(barry_mercer, disc, 5)
        for vector in (state.u_P, state.xi_P, state.eta, state.p, state.u_E, state.xi_E, state.lam):
            np.testing.assert_array_equal(vector, 0.0)
        assert state.lam.shape == (5,)

    def test_reformulated_fields_recover_the_data(self, mms: Scenario, small_disc: Discretization) -> None:
        state = project_initial(mms, small_disc)
        p, _ = recover_pressure_and_divergence(mms.params, state.xi_P, state.eta)
        np.testing.assert_allclose(p, state.p, rtol=1e-9, atol=1e-9)

    def test_saddle_round_trip(self, mms: Scenario, small_disc: Discretization) -> None:
        with prepare_simulation(mms, small_disc) as ctx:
            state = project_initial(mms, small_disc, ctx.system.n_multipliers)
            vectors = {sid: state.saddle_vector(ctx.system, sid) for sid in SubdomainId}
            back = StateSnapshot.from_saddle(ctx.system, vectors, state.lam, state.n, state.t)
        np.testing.assert_array_equal(back.eta, state.eta)
        np.testing.assert_array_equal(back.xi_E, state.xi_E)
        np.testing.assert_array_equal(back.displacement(SubdomainId.E), state.u_E)

    def test_initial_state_satisfies_the_constitutive_rows(self, mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> None:
        state = project_initial(mms, small_disc, system=raw_system)
        k1, _, k3 = mms.params.kappas
        poro, elastic = raw_system.poro, raw_system.elastic
        div_p = poro.B @ state.u_P
        row_p = div_p + k1 * (poro.R @ state.eta) - k3 * (poro.R @ state.xi_P)
        assert np.abs(row_p).max() <= 1e-9 * np.abs(div_p).max()
        div_e = elastic.B @ state.u_E
        row_e = div_e - (elastic.R @ state.xi_E) / mms.params.lambda_E
        assert np.abs(row_e).max() <= 1e-9 * np.abs(div_e).max()

    def test_projected_divergence_converges(self, mms: Scenario) -> None:
        exact = ManufacturedSolution(mms.params)
        errors = []
        for n in (4, 8):
            disc = mms.discretize(n)
            system = assemble_block_system(disc, mms.params, mms.time_step)
            u = interpolate_vector(disc.poro.displacement, lambda x, y, t: exact.displacement(SubdomainId.P, x, y, t), 0.0)
            d = projected_divergence(system.poro, u)
            errors.append(l2_error(d, lambda x, y, t: exact.divergence(SubdomainId.P, x, y, t), disc.poro.mesh, disc.poro.scalar, 0.0))
        assert errors[1] < 0.5 * errors[0]


class TestTimeStepping:
    """Backward Euler steps."""

    def test_zero_data_stays_at_rest(self, barry_mercer: Scenario) -> None:
        unloaded = dataclasses.replace(
            barry_mercer,
            poro=dataclasses.replace(barry_mercer.poro, traction=lambda label, x, y, t: np.zeros((2, *np.shape(x)))),
            pressure_bc=lambda x, y, t: np.zeros(np.shape(x)),
        )
        result = run_simulation(unloaded, unloaded.discretize(4))
        for state in result.snapshots:
            np.testing.assert_array_equal(state.p, 0.0)
            np.testing.assert_array_equal(state.u_P, 0.0)
            np.testing.assert_array_equal(state.u_E, 0.0)
        assert all(report.iterations == 0 for report in result.reports)

    @pytest.mark.parametrize("retention, kept", [(RetentionPolicy.FULL, 3), (RetentionPolicy.LAST_TWO, 2)])
    def test_retention(self, mms: Scenario, small_disc: Discretization, retention: RetentionPolicy, kept: int) -> None:
        result = run_simulation(mms, small_disc, retention=retention)
        assert len(result.snapshots) == kept
        assert len(result.reports) == 2
        assert result.final.n == 2
        assert result.final.t == pytest.approx(mms.final_time)

    def test_hooks_run_after_every_step(self, mms: Scenario, small_disc: Discretization) -> None:
        seen: list[int] = []

        def hook(state: StateSnapshot, report: PcgReport) -> None:
            seen.append(state.n)

        run_simulation(mms, small_disc, hooks=[hook])
        assert seen == [1, 2]

    @pytest.mark.parametrize("kind", [SolverKind.FETI_GENERALIZED, SolverKind.FETI_SCHUR, SolverKind.MONOLITHIC])
    def test_mass_balance_holds(self, mms: Scenario, small_disc: Discretization, kind: SolverKind) -> None:
        with prepare_simulation(mms, small_disc, SolverSettings(kind=kind, tol=1e-12)) as ctx:
            prev = project_initial(mms, small_disc, ctx.system.n_multipliers)
            state, report = advance_step(ctx, prev)
            assert report.converged
            assert mass_balance_residual(ctx, prev, state) < 1e-8

    def test_solvers_agree_on_a_step(self, mms: Scenario, small_disc: Discretization) -> None:
        states = {}
        for kind in (SolverKind.FETI_GENERALIZED, SolverKind.MONOLITHIC):
            with prepare_simulation(mms, small_disc, SolverSettings(kind=kind, tol=1e-12)) as ctx:
                prev = project_initial(mms, small_disc, ctx.system.n_multipliers)
                states[kind], _ = advance_step(ctx, prev)
        feti, mono = states[SolverKind.FETI_GENERALIZED], states[SolverKind.MONOLITHIC]
        np.testing.assert_allclose(feti.u_P, mono.u_P, rtol=1e-6, atol=1e-8 * np.abs(mono.u_P).max())
        np.testing.assert_allclose(feti.p, mono.p, rtol=1e-6, atol=1e-8 * np.abs(mono.p).max())

    def test_monolithic_run_factorizes_once(self, mms: Scenario, small_disc: Discretization) -> None:
        with patch("poro_feti.solver.monolithic.factor_matrix", wraps=factor_matrix) as spy:
            result = run_simulation(mms, small_disc, SolverSettings(kind=SolverKind.MONOLITHIC))
        assert spy.call_count == 1
        assert len(result.reports) == mms.n_steps == 2
        assert all(report.variant is SolverKind.MONOLITHIC for report in result.reports)

    def test_iteration_limit_fails_the_step(self, mms: Scenario, small_disc: Discretization) -> None:
        settings = SolverSettings(max_iter=0, strict=True)
        with pytest.raises(SimulationStepError) as excinfo:
            run_simulation(mms, small_disc, settings)
        assert excinfo.value.step == 1

    @pytest.mark.integration
    def test_stationary_solution_has_flat_errors(self, mms: Scenario) -> None:
        scenario = mms.with_time(final_time=5e-3, time_step=1e-3)
        assert scenario.exact is not None
        exact = scenario.exact
        disc = scenario.discretize(8)
        result = run_simulation(scenario, disc, SolverSettings(tol=1e-10))
        steps = result.snapshots[1:]
        errors_p = [state_errors(state, exact, disc)[1] for state in steps]
        assert len(errors_p) == 5
        assert max(errors_p) < 1.5 * min(errors_p)
        assert linf_l2_error(steps, lambda s: state_errors(s, exact, disc)[1]) == pytest.approx(max(errors_p))
    def test_threaded_run(self, mms: Scenario, small_disc: Discretization) -> None:
        serial = run_simulation(mms, small_disc, SolverSettings(concurrent=False))
        threaded = run_simulation(mms, small_disc, SolverSettings(concurrent=True))
        np.testing.assert_array_equal(threaded.final.lam, serial.final.lam)
        np.testing.assert_array_equal(threaded.final.u_E, serial.final.u_E)

    @pytest.mark.slow
    def test_warm_start_saves_iterations(self, barry_mercer: Scenario) -> None:
        scenario = barry_mercer.with_time(final_time=0.1)
        disc = scenario.discretize(16)
        cold = run_simulation(scenario, disc, SolverSettings(warm_start=False))
        warm = run_simulation(scenario, disc, SolverSettings(warm_start=True))
        # steps 2 to 10; step 1 starts from zero either way
        assert np.mean([r.iterations for r in warm.reports[1:]]) <= np.mean([r.iterations for r in cold.reports[1:]])


class TestBarryMercerStep:
    """First step of the loaded benchmark."""

    def test_pressure_peaks_on_the_loaded_segment(self, barry_mercer: Scenario) -> None:
        disc = barry_mercer.discretize(10)
        result = run_simulation(barry_mercer.with_time(final_time=1e-2), disc)
        state = result.snapshots[1]
        location = pressure_peak_location(state.p, disc.poro.scalar)
        assert peak_on_loaded_segment(location, disc.h)
        assert state.p.max() > 0.0
