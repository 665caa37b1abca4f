#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Tests for subdomain factorizations, the FETI operators, PCG and back-substitution
# - FETI results are checked against the monolithic direct solve
# - Every step of short runs compared field by field on two meshes and both displacement orders
#

"""
Tests for the solver package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pytest

from poro_feti.assembly.blocks import BlockSystem
from poro_feti.assembly.constraints import (
    ConstraintSet,
    FieldConstraint,
    apply_constraints,
    build_constraints,
    constrain_rhs,
    prescribed_vector,
)
from poro_feti.assembly.loads import assemble_rhs_step, saddle_rhs
from poro_feti.core.exceptions import SingularSubproblemError, SolverConvergenceError, SolverError
from poro_feti.core.types import FieldKind, FloatArray, SolverKind, SubdomainId
from poro_feti.mesh.discretization import Discretization
from poro_feti.mesh.dofs import FieldOrders
from poro_feti.model.scenarios import Scenario
from poro_feti.solver.back_substitution import back_substitute, interface_jump
from poro_feti.solver.factorization import backward_error, factor_subdomain, schur_complement
from poro_feti.solver.monolithic import factor_monolithic, monolithic_matrix, monolithic_solve
from poro_feti.solver.operators import build_feti_operator, feti_rhs, materialize, operator_apply, preconditioner_apply
from poro_feti.solver.parallel import SubdomainExecutor
from poro_feti.solver.pcg import feti_pcg
from poro_feti.timeloop.stepper import SolverSettings, run_simulation

FETI = [SolverKind.FETI_GENERALIZED, SolverKind.FETI_SCHUR]


@dataclass
class StepProblem:
    rhs: dict[SubdomainId, FloatArray]
    lift: FloatArray


@pytest.fixture
def step(mms: Scenario, small_disc: Discretization, constrained_system: BlockSystem) -> StepProblem:
    """Constrained right-hand sides of the first MMS step."""
    t = mms.time_step
    cs = build_constraints(mms, small_disc, t)
    eta_prev = np.zeros(small_disc.poro.n_scalar)
    loads = assemble_rhs_step(mms, small_disc, constrained_system, t, eta_prev)
    rhs = {sid: constrain_rhs(constrained_system, sid, saddle_rhs(constrained_system, loads, sid), cs) for sid in SubdomainId}
    lift = constrained_system.multiplier_lift({sid: prescribed_vector(constrained_system, sid, cs) for sid in SubdomainId})
    return StepProblem(rhs, lift)


def node_coords(disc: Discretization) -> dict[SubdomainId, FloatArray]:
    return {sid: disc.subdomain(sid).displacement.node_coords for sid in SubdomainId}


class TestFactorization:
    """Subdomain factorizations."""

    @pytest.mark.parametrize("sid", [SubdomainId.P, SubdomainId.E])
    def test_solve_round_trip(self, constrained_system: BlockSystem, small_disc: Discretization, sid: SubdomainId) -> None:
        factor = factor_subdomain(constrained_system, sid, small_disc.subdomain(sid).displacement.node_coords)
        b = np.random.default_rng(7).standard_normal(factor.size)
        assert backward_error(factor.matrix, factor.solve(b), b) < 1e-10

    def test_floating_elastic_side(self, mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> None:
        cs = build_constraints(mms, small_disc, 0.0)
        entries = dict(cs.entries)
        entries[(SubdomainId.E, FieldKind.DISPLACEMENT)] = FieldConstraint(np.empty(0, dtype=np.int64), np.empty(0))
        floating = apply_constraints(raw_system, ConstraintSet(entries, cs.dropped_multipliers, 0.0))
        with pytest.raises(SingularSubproblemError) as excinfo:
            factor_subdomain(floating, SubdomainId.E, small_disc.elastic.displacement.node_coords)
        assert excinfo.value.subdomain == "E"

    @pytest.mark.parametrize("sid", [SubdomainId.P, SubdomainId.E])
    def test_schur_complement_inverse(self, constrained_system: BlockSystem, sid: SubdomainId) -> None:
        schur = schur_complement(constrained_system, sid)
        y = np.random.default_rng(3).standard_normal(schur.boundary.size)
        np.testing.assert_allclose(schur.apply(schur.solve(y)), y, rtol=1e-8, atol=1e-8)

    def test_schur_expand_recovers_the_saddle_solve(self, constrained_system: BlockSystem) -> None:
        sid = SubdomainId.P
        schur = schur_complement(constrained_system, sid)
        factor = factor_subdomain(constrained_system, sid)
        b = np.random.default_rng(11).standard_normal(factor.size)
        x = schur.expand(schur.solve(schur.condense(b)), b)
        np.testing.assert_allclose(x, factor.solve(b), rtol=1e-7, atol=1e-9 * np.abs(x).max())


class TestFetiOperator:
    """The interface operator and its preconditioner."""

    @pytest.mark.parametrize("variant", FETI)
    def test_zero_maps_to_zero(self, constrained_system: BlockSystem, variant: SolverKind) -> None:
        op = build_feti_operator(constrained_system, variant)
        np.testing.assert_array_equal(operator_apply(op, np.zeros(op.size)), 0.0)

    @pytest.mark.parametrize("variant", FETI)
    def test_operator_is_spd(self, constrained_system: BlockSystem, variant: SolverKind) -> None:
        k, m = materialize(build_feti_operator(constrained_system, variant))
        assert np.abs(k - k.T).max() < 1e-10 * np.abs(k).max()
        assert np.linalg.eigvalsh(0.5 * (k + k.T)).min() > 0.0
        assert np.abs(m - m.T).max() < 1e-10 * np.abs(m).max()
        assert np.linalg.eigvalsh(0.5 * (m + m.T)).min() > 0.0

    @pytest.mark.parametrize("variant", FETI)
    def test_operator_is_the_multiplier_schur_complement(self, constrained_system: BlockSystem, variant: SolverKind) -> None:
        k, _ = materialize(build_feti_operator(constrained_system, variant))
        expected = np.zeros_like(k)
        for sid in SubdomainId:
            h = constrained_system.coupling(sid).toarray()
            expected += h @ np.linalg.solve(constrained_system.saddle(sid).toarray(), h.T)
        np.testing.assert_allclose(k, expected, rtol=1e-8, atol=1e-10 * np.abs(expected).max())

    def test_generalized_preconditioner(self, constrained_system: BlockSystem) -> None:
        op = build_feti_operator(constrained_system, SolverKind.FETI_GENERALIZED)
        r = np.linspace(-1.0, 1.0, op.size)
        expected = sum(constrained_system.coupling(sid) @ (constrained_system.saddle(sid) @ (constrained_system.coupling(sid).T @ r)) for sid in SubdomainId)
        np.testing.assert_allclose(preconditioner_apply(op, r), expected, rtol=1e-9, atol=1e-12 * np.abs(expected).max())

    def test_variants_agree(self, constrained_system: BlockSystem) -> None:
        k_gen, _ = materialize(build_feti_operator(constrained_system, SolverKind.FETI_GENERALIZED))
        k_schur, _ = materialize(build_feti_operator(constrained_system, SolverKind.FETI_SCHUR))
        np.testing.assert_allclose(k_schur, k_gen, rtol=1e-8, atol=1e-10 * np.abs(k_gen).max())

    def test_monolithic_is_not_a_feti_variant(self, constrained_system: BlockSystem) -> None:
        with pytest.raises(SolverError):
            build_feti_operator(constrained_system, SolverKind.MONOLITHIC)

    def test_floating_subdomain_is_detected(self, mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> None:
        cs = build_constraints(mms, small_disc, 0.0)
        entries = dict(cs.entries)
        entries[(SubdomainId.E, FieldKind.DISPLACEMENT)] = FieldConstraint(np.empty(0, dtype=np.int64), np.empty(0))
        floating = apply_constraints(raw_system, ConstraintSet(entries, cs.dropped_multipliers, 0.0))
        with pytest.raises(SingularSubproblemError):
            build_feti_operator(floating, node_coords=node_coords(small_disc))


class TestPcg:
    """Preconditioned conjugate gradients on the interface."""

    @pytest.mark.parametrize("variant", FETI)
    def test_matches_monolithic_solve(self, constrained_system: BlockSystem, step: StepProblem, variant: SolverKind) -> None:
        ref_x, ref_lam, err = monolithic_solve(constrained_system, step.rhs, step.lift)
        assert err < 1e-10
        op = build_feti_operator(constrained_system, variant)
        lam, report = feti_pcg(op, feti_rhs(op, step.rhs, step.lift), tol=1e-12, max_iter=200)
        assert report.converged
        assert report.iterations <= op.size + 1
        np.testing.assert_allclose(lam, ref_lam, rtol=1e-6, atol=1e-8 * np.abs(ref_lam).max())
        x = back_substitute(op, lam, step.rhs)
        for sid in SubdomainId:
            scale = np.abs(ref_x[sid]).max()
            np.testing.assert_allclose(x[sid], ref_x[sid], rtol=1e-6, atol=1e-8 * scale)

    def test_interface_constraint_holds(self, constrained_system: BlockSystem, step: StepProblem) -> None:
        op = build_feti_operator(constrained_system)
        lam, _ = feti_pcg(op, feti_rhs(op, step.rhs, step.lift), tol=1e-12)
        x = back_substitute(op, lam, step.rhs)
        jump = interface_jump(op, x, step.lift)
        scale = np.abs(op.couplings[SubdomainId.P] @ x[SubdomainId.P]).max()
        assert np.abs(jump).max() < 1e-8 * scale

    def test_zero_rhs(self, constrained_system: BlockSystem) -> None:
        op = build_feti_operator(constrained_system)
        lam, report = feti_pcg(op, np.zeros(op.size))
        assert report.iterations == 0
        assert report.converged
        assert report.residual_history == [0.0]
        np.testing.assert_array_equal(lam, 0.0)

    def test_warm_start_from_the_solution(self, constrained_system: BlockSystem, step: StepProblem) -> None:
        op = build_feti_operator(constrained_system)
        F = feti_rhs(op, step.rhs, step.lift)
        lam, _ = feti_pcg(op, F, tol=1e-12)
        _, report = feti_pcg(op, F, lam_init=lam, tol=1e-6)
        assert report.iterations == 0

    def test_energy_history(self, constrained_system: BlockSystem, step: StepProblem) -> None:
        op = build_feti_operator(constrained_system)
        _, report = feti_pcg(op, feti_rhs(op, step.rhs, step.lift), tol=1e-10)
        energy = np.asarray(report.energy_history)
        assert energy.size == report.iterations
        assert np.all(np.diff(energy) <= 1e-12 * energy[0])
        assert len(report.residual_history) == report.iterations + 1
        assert report.residual_history[-1] < report.residual_history[0]

    @pytest.mark.parametrize("tol", [0.0, -1e-8])
    def test_tolerance_must_be_positive(self, constrained_system: BlockSystem, tol: float) -> None:
        op = build_feti_operator(constrained_system)
        with pytest.raises(SolverError):
            feti_pcg(op, np.ones(op.size), tol=tol)

    def test_iteration_limit(self, constrained_system: BlockSystem, step: StepProblem) -> None:
        op = build_feti_operator(constrained_system)
        F = feti_rhs(op, step.rhs, step.lift)
        _, report = feti_pcg(op, F, max_iter=0)
        assert not report.converged
        with pytest.raises(SolverConvergenceError):
            feti_pcg(op, F, max_iter=0, strict=True)

    def test_threaded_run_is_identical(self, constrained_system: BlockSystem, step: StepProblem) -> None:
        serial = build_feti_operator(constrained_system)
        lam_serial, _ = feti_pcg(serial, feti_rhs(serial, step.rhs, step.lift), tol=1e-10)
        with SubdomainExecutor(concurrent=True) as executor:
            threaded = build_feti_operator(constrained_system, executor=executor)
            lam_threaded, report = feti_pcg(threaded, feti_rhs(threaded, step.rhs, step.lift), tol=1e-10)
        np.testing.assert_array_equal(lam_threaded, lam_serial)
        assert set(report.solve_times) == {SubdomainId.P, SubdomainId.E}


class TestMonolithic:
    """Direct reference solve."""

    def test_matrix_size(self, constrained_system: BlockSystem) -> None:
        n = sum(constrained_system.layout(sid).size for sid in SubdomainId) + constrained_system.n_multipliers
        assert monolithic_matrix(constrained_system).shape == (n, n)

    def test_zero_rhs_gives_zero_solution(self, constrained_system: BlockSystem) -> None:
        rhs = {sid: np.zeros(constrained_system.layout(sid).size) for sid in SubdomainId}
        x, lam, _ = monolithic_solve(constrained_system, rhs)
        np.testing.assert_allclose(lam, 0.0)
        for sid in SubdomainId:
            np.testing.assert_allclose(x[sid], 0.0)

    def test_reused_factorization(self, constrained_system: BlockSystem, step: StepProblem) -> None:
        factors = factor_monolithic(constrained_system)
        assert factors.matrix.shape == monolithic_matrix(constrained_system).shape
        fresh_x, fresh_lam, _ = monolithic_solve(constrained_system, step.rhs, step.lift)
        x, lam, err = monolithic_solve(constrained_system, step.rhs, step.lift, factors=factors)
        assert err < 1e-10
        np.testing.assert_array_equal(lam, fresh_lam)
        for sid in SubdomainId:
            np.testing.assert_array_equal(x[sid], fresh_x[sid])


class TestOracleEquivalence:
    """FETI against the monolithic solve over whole runs."""

    FIELDS = ("u_P", "xi_P", "eta", "p", "u_E", "xi_E", "lam")

    @pytest.mark.integration
    @pytest.mark.parametrize("variant", FETI)
    @pytest.mark.parametrize("displacement_order", [1, 2])
    @pytest.mark.parametrize("subdivisions", [4, 8])
    def test_every_step_matches(self, mms: Scenario, subdivisions: int, displacement_order: int, variant: SolverKind) -> None:
        disc = mms.discretize(subdivisions, FieldOrders(displacement=displacement_order))
        reference = run_simulation(mms, disc, SolverSettings(kind=SolverKind.MONOLITHIC))
        result = run_simulation(mms, disc, SolverSettings(kind=variant, tol=1e-12, max_iter=500))
        assert len(result.snapshots) == len(reference.snapshots) == mms.n_steps + 1
        for state, ref in zip(result.snapshots[1:], reference.snapshots[1:]):
            assert state.n == ref.n
            for name in self.FIELDS:
                actual, expected = getattr(state, name), getattr(ref, name)
                assert np.linalg.norm(actual - expected) <= 1e-6 * np.linalg.norm(expected), f"{name} at step {state.n}"
