#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Tests for block assembly, interface coupling, constraints, step loads and block dumps
# - Galerkin consistency of the assembled rows against interpolated manufactured fields
#

"""
Tests for the assembly package.
"""

from __future__ import annotations

import dataclasses
import math
from functools import partial
from pathlib import Path

import numpy as np
import pytest
import scipy.io
import scipy.sparse as sp

from poro_feti.assembly.blocks import BlockSystem, assemble_block_system, coupled_matrix, rigid_body_modes
from poro_feti.assembly.constraints import (
    ConstraintSet,
    FieldConstraint,
    apply_constraints,
    build_constraints,
    constrain_rhs,
    prescribed_vector,
)
from poro_feti.assembly.dump import dump_blocks
from poro_feti.assembly.interface import assemble_interface, multiplier_trace_nodes
from poro_feti.assembly.loads import assemble_rhs_step, saddle_rhs, source_load
from poro_feti.core.exceptions import ConstraintError, DimensionMismatchError
from poro_feti.core.types import FieldKind, SubdomainId
from poro_feti.mesh.discretization import Discretization
from poro_feti.mesh.dofs import FieldOrders
from poro_feti.model.manufactured import ManufacturedSolution
from poro_feti.model.params import reformulate
from poro_feti.model.scenarios import Scenario
from poro_feti.timeloop.state import StateSnapshot, interpolate_scalar, interpolate_vector


def max_asymmetry(matrix: sp.spmatrix) -> float:
    m = sp.csr_matrix(matrix)
    return float(abs(m - m.T).max()) / float(abs(m).max())


class TestSubdomainBlocks:
    """Volume blocks of each subdomain."""

    def test_single_cell_p1_elastic_block(self, mms: Scenario) -> None:
        disc = mms.discretize(1, FieldOrders(displacement=1))
        system = assemble_block_system(disc, mms.params, mms.time_step)
        assert system.elastic.A.shape == (8, 8)
        assert system.elastic.B.shape == (4, 8)

    def test_mass_matrix_integrates_the_indicator(self, raw_system: BlockSystem) -> None:
        assert raw_system.poro.R.sum() == pytest.approx(0.5, rel=1e-12)
        assert raw_system.elastic.R.sum() == pytest.approx(0.5, rel=1e-12)

    def test_blocks_are_symmetric(self, raw_system: BlockSystem) -> None:
        p = raw_system.poro
        assert p.Af is not None
        for block in (p.A, p.R, p.Af, raw_system.elastic.A, raw_system.elastic.R):
            assert max_asymmetry(block) < 1e-12

    def test_diffusion_has_constants_in_kernel(self, raw_system: BlockSystem) -> None:
        assert raw_system.poro.Af is not None
        row_sums = np.asarray(raw_system.poro.Af.sum(axis=1)).ravel()
        np.testing.assert_allclose(row_sums, 0.0, atol=1e-12)

    def test_rigid_motions_are_in_the_elastic_kernel(self, raw_system: BlockSystem, small_disc: Discretization) -> None:
        modes = rigid_body_modes(small_disc.poro.displacement.node_coords)
        image = raw_system.poro.A @ modes.T
        assert np.abs(image).max() < 1e-9 * abs(raw_system.poro.A).max()

    def test_divergence_of_linear_field(self, raw_system: BlockSystem, small_disc: Discretization) -> None:
        u = interpolate_vector(small_disc.poro.displacement, lambda x, y, t: np.stack([x, y]), 0.0)
        expected = -2.0 * (raw_system.poro.R @ np.ones(small_disc.poro.n_scalar))
        np.testing.assert_allclose(raw_system.poro.B @ u, expected, atol=1e-13)

    def test_composite_blocks(self, raw_system: BlockSystem) -> None:
        k1, k2, k3 = raw_system.params.kappas
        c = raw_system.composite
        nu, ns = raw_system.poro.n_displacement, raw_system.poro.n_scalar
        assert c["A_P*"].shape == (nu + ns, nu + ns)
        assert c["B_P*"].shape == (2 * ns, nu + ns)
        np.testing.assert_allclose(c["B_P*"][ns:, nu:].toarray(), -raw_system.poro.R.toarray())
        np.testing.assert_allclose(c["B_P*"][:ns, nu:].toarray(), k1 * raw_system.poro.R.toarray())
        np.testing.assert_allclose(c["A_P*"][nu:, nu:].toarray(), k2 * raw_system.poro.R.toarray())
        np.testing.assert_allclose(c["C_P*"][:ns, :ns].toarray(), k3 * raw_system.poro.R.toarray())
        np.testing.assert_allclose(c["C_E"].toarray(), raw_system.elastic.R.toarray() / raw_system.params.lambda_E)

    def test_time_step_scales_the_diffusion_block(self, raw_system: BlockSystem) -> None:
        ns = raw_system.poro.n_scalar
        half = raw_system.with_tau(raw_system.tau / 2)
        np.testing.assert_allclose(
            half.composite["C_P*"][ns:, ns:].toarray(),
            0.5 * raw_system.composite["C_P*"][ns:, ns:].toarray(),
        )


class TestInterfaceCoupling:
    """H_P and H_E."""

    def test_row_sums_give_interface_length(self, small_disc: Discretization) -> None:
        h_p, h_e = assemble_interface(small_disc)
        for h in (h_p, h_e):
            assert h[0::2].sum() == pytest.approx(1.0, rel=1e-12)
            assert h[1::2].sum() == pytest.approx(1.0, rel=1e-12)

    def test_paired_columns_are_identical(self, small_disc: Discretization) -> None:
        h_p, h_e = assemble_interface(small_disc)
        pairs = small_disc.pairing.pairs
        np.testing.assert_allclose(h_p[:, pairs[:, 0]].toarray(), h_e[:, pairs[:, 1]].toarray())

    def test_only_trace_columns_are_touched(self, small_disc: Discretization) -> None:
        h_p, _ = assemble_interface(small_disc)
        touched = np.flatnonzero(np.asarray(abs(h_p).sum(axis=0)).ravel())
        assert np.all(small_disc.poro.displacement.interface_mask[touched])

    def test_equal_traces_have_no_jump(self, small_disc: Discretization) -> None:
        h_p, h_e = assemble_interface(small_disc)

        def field(x: np.ndarray, y: np.ndarray, t: float) -> np.ndarray:
            return np.stack([np.sin(3 * x) + y, x * x])

        u_p = interpolate_vector(small_disc.poro.displacement, field, 0.0)
        u_e = interpolate_vector(small_disc.elastic.displacement, field, 0.0)
        np.testing.assert_allclose(h_p @ u_p - h_e @ u_e, 0.0, atol=1e-14)

    def test_multiplier_nodes_sit_on_trace_vertices(self, small_disc: Discretization) -> None:
        nodes = multiplier_trace_nodes(small_disc)
        np.testing.assert_allclose(small_disc.poro.displacement.node_coords[nodes], small_disc.multiplier.node_coords)


class TestCoupledSystem:
    """The assembled monolithic matrix."""

    def test_raw_system_is_symmetric(self, raw_system: BlockSystem) -> None:
        assert max_asymmetry(coupled_matrix(raw_system)) < 1e-12

    def test_constrained_system_is_symmetric(self, constrained_system: BlockSystem) -> None:
        assert max_asymmetry(coupled_matrix(constrained_system, constrained=True)) < 1e-12

    def test_coupling_signs(self, raw_system: BlockSystem) -> None:
        h_p = raw_system.raw_coupling(SubdomainId.P)
        h_e = raw_system.raw_coupling(SubdomainId.E)
        assert h_p.sum() == pytest.approx(2.0)
        assert h_e.sum() == pytest.approx(-2.0)


class TestGalerkinConsistency:
    """Exact manufactured fields against the assembled rows."""

    @staticmethod
    def exact_state(mms: Scenario, disc: Discretization, system: BlockSystem) -> dict[SubdomainId, np.ndarray]:
        params = mms.params
        exact = ManufacturedSolution(params)
        p = interpolate_scalar(disc.poro.scalar, exact.pressure, 0.0)
        d_p = interpolate_scalar(disc.poro.scalar, partial(exact.divergence, SubdomainId.P), 0.0)
        d_e = interpolate_scalar(disc.elastic.scalar, partial(exact.divergence, SubdomainId.E), 0.0)
        xi_p, eta = reformulate(params, p, d_p)
        state = StateSnapshot(
            n=0,
            t=0.0,
            u_P=interpolate_vector(disc.poro.displacement, partial(exact.displacement, SubdomainId.P), 0.0),
            xi_P=xi_p,
            eta=eta,
            p=p,
            u_E=interpolate_vector(disc.elastic.displacement, partial(exact.displacement, SubdomainId.E), 0.0),
            xi_E=-params.lambda_E * d_e,
            lam=np.empty(0),
        )
        return {sid: state.saddle_vector(system, sid) for sid in SubdomainId}

    @classmethod
    def row_residuals(cls, mms: Scenario, subdivisions: int) -> dict[tuple[SubdomainId, FieldKind], float]:
        """Scaled max residual per row block on rows free of constraints and of the interface coupling."""
        disc = mms.discretize(subdivisions)
        raw = assemble_block_system(disc, mms.params, mms.time_step)
        system = apply_constraints(raw, build_constraints(mms, disc, 0.0))
        x = cls.exact_state(mms, disc, system)
        layout_p = system.layout(SubdomainId.P)
        # stationary fields, so eta_prev = eta
        loads = assemble_rhs_step(mms, disc, system, mms.time_step, x[SubdomainId.P][layout_p.field_slice(FieldKind.FLUID_CONTENT)])
        out = {}
        for sid in SubdomainId:
            matrix = system.raw_saddle(sid)
            b = saddle_rhs(system, loads, sid)
            residual = np.abs(matrix @ x[sid] - b)
            scale = abs(matrix) @ np.abs(x[sid]) + np.abs(b)
            skip = np.union1d(system.constrained_dofs(sid), np.flatnonzero(system.raw_coupling(sid).tocsc().getnnz(axis=0)))
            layout = system.layout(sid)
            for kind, _ in layout.fields:
                block = layout.field_slice(kind)
                rows = np.setdiff1d(np.arange(block.start, block.stop), skip)
                out[(sid, kind)] = float(residual[rows].max() / scale[rows].max())
        return out

    def test_residual_shrinks_with_the_mesh(self, mms: Scenario) -> None:
        coarse = self.row_residuals(mms, 4)
        fine = self.row_residuals(mms, 8)
        for key, value in coarse.items():
            if key == (SubdomainId.P, FieldKind.FLUID_CONTENT):
                continue
            assert fine[key] < 0.75 * value, key

    def test_constitutive_row_holds_for_interpolants(self, mms: Scenario) -> None:
        # k2 eta + k1 xi - p vanishes pointwise
        assert self.row_residuals(mms, 4)[(SubdomainId.P, FieldKind.FLUID_CONTENT)] < 1e-12


class TestConstraints:
    """Dirichlet elimination and multiplier dropping."""

    def test_clamped_sides_drop_both_endpoint_multipliers(self, constrained_system: BlockSystem) -> None:
        assert constrained_system.n_multipliers_full == 10
        assert constrained_system.n_multipliers == 6

    def test_rollers_drop_only_the_normal_component(self, barry_mercer: Scenario) -> None:
        disc = barry_mercer.discretize(4)
        cs = build_constraints(barry_mercer, disc, 0.0)
        np.testing.assert_array_equal(cs.dropped_multipliers % 2, [0, 0])

    def test_constrained_rows_are_unit_rows(self, constrained_system: BlockSystem) -> None:
        fixed = constrained_system.constrained_dofs(SubdomainId.P)
        saddle = constrained_system.saddle(SubdomainId.P).tocsr()
        np.testing.assert_allclose(saddle[fixed][:, fixed].toarray(), np.eye(fixed.size))
        assert abs(saddle[fixed]).sum() == pytest.approx(fixed.size)

    def test_constrained_columns_leave_coupling(self, constrained_system: BlockSystem) -> None:
        for sid in SubdomainId:
            fixed = constrained_system.constrained_dofs(sid)
            assert abs(constrained_system.coupling(sid)[:, fixed]).sum() == 0.0

    def test_idempotent(self, mms: Scenario, small_disc: Discretization, constrained_system: BlockSystem) -> None:
        again = apply_constraints(constrained_system, build_constraints(mms, small_disc, 0.0))
        for sid in SubdomainId:
            assert abs(again.saddle(sid) - constrained_system.saddle(sid)).max() == 0.0
            assert abs(again.coupling(sid) - constrained_system.coupling(sid)).max() == 0.0

    def test_rhs_lifting(self, mms: Scenario, small_disc: Discretization, constrained_system: BlockSystem) -> None:
        cs = build_constraints(mms, small_disc, 0.0)
        sid = SubdomainId.P
        raw = np.zeros(constrained_system.layout(sid).size)
        b = constrain_rhs(constrained_system, sid, raw, cs)
        g = prescribed_vector(constrained_system, sid, cs)
        fixed = constrained_system.constrained_dofs(sid)
        free = np.setdiff1d(np.arange(raw.size), fixed)
        np.testing.assert_allclose(b[fixed], g[fixed])
        np.testing.assert_allclose(b[free], -(constrained_system.raw_saddle(sid) @ g)[free])

    def test_pattern_mismatch(self, constrained_system: BlockSystem) -> None:
        with pytest.raises(ConstraintError):
            constrain_rhs(constrained_system, SubdomainId.P, np.zeros(constrained_system.layout(SubdomainId.P).size), ConstraintSet())

    def test_multiplier_dofs_cannot_be_constrained(self) -> None:
        with pytest.raises(ConstraintError):
            ConstraintSet(entries={(SubdomainId.P, FieldKind.MULTIPLIER): FieldConstraint(np.array([0]), np.array([0.0]))})

    def test_out_of_range_constraint(self, raw_system: BlockSystem) -> None:
        bad = ConstraintSet(entries={(SubdomainId.E, FieldKind.DISPLACEMENT): FieldConstraint(np.array([10**6]), np.array([0.0]))})
        with pytest.raises(ConstraintError):
            apply_constraints(raw_system, bad)

    def test_clamped_values_match_exact_trace(self, mms: Scenario, small_disc: Discretization) -> None:
        cs = build_constraints(mms, small_disc, 0.0)
        fc = cs.entries[(SubdomainId.E, FieldKind.DISPLACEMENT)]
        xy = small_disc.elastic.displacement.node_coords[fc.indices // 2]
        exact = mms.elastic.displacement_bc(xy[:, 0], xy[:, 1], 0.0)
        np.testing.assert_allclose(fc.values, exact[fc.indices % 2, np.arange(fc.indices.size)])


class TestStepLoads:
    """Right-hand sides of one time step."""

    def test_zero_data_gives_zero_loads(self, barry_mercer: Scenario) -> None:
        disc = barry_mercer.discretize(4)
        system = assemble_block_system(disc, barry_mercer.params, barry_mercer.time_step)
        loads = assemble_rhs_step(barry_mercer, disc, system, 0.0, np.zeros(disc.poro.n_scalar))
        for vector in (loads.F_P, loads.F_E, loads.Z, loads.mass_balance):
            np.testing.assert_allclose(vector, 0.0)

    def test_loaded_segment_traction(self, barry_mercer: Scenario) -> None:
        disc = barry_mercer.discretize(5)
        system = assemble_block_system(disc, barry_mercer.params, barry_mercer.time_step)
        tau = barry_mercer.time_step
        loads = assemble_rhs_step(barry_mercer, disc, system, tau, np.zeros(disc.poro.n_scalar))
        assert loads.F_P[1::2].sum() == pytest.approx(barry_mercer.params.alpha * math.sin(tau) * 0.6, rel=1e-12)
        np.testing.assert_allclose(loads.F_P[0::2], 0.0)

    def test_unit_source_sums_to_area(self, barry_mercer: Scenario) -> None:
        scenario = dataclasses.replace(barry_mercer, source=lambda x, y, t: np.ones_like(x))
        disc = scenario.discretize(4)
        assert source_load(scenario, disc, 0.0).sum() == pytest.approx(0.5, rel=1e-12)

    def test_mass_balance_row(self, mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> None:
        eta_prev = np.linspace(0.0, 1.0, small_disc.poro.n_scalar)
        loads = assemble_rhs_step(mms, small_disc, raw_system, 0.01, eta_prev)
        np.testing.assert_allclose(loads.mass_balance, -(raw_system.poro.R @ eta_prev) - raw_system.tau * loads.Z)

    def test_saddle_rhs_layout(self, mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> None:
        loads = assemble_rhs_step(mms, small_disc, raw_system, 0.01, np.zeros(small_disc.poro.n_scalar))
        layout = raw_system.layout(SubdomainId.P)
        b = saddle_rhs(raw_system, loads, SubdomainId.P)
        np.testing.assert_allclose(b[layout.field_slice(FieldKind.DISPLACEMENT)], loads.F_P)
        np.testing.assert_allclose(b[layout.field_slice(FieldKind.FLUID_PRESSURE)], loads.mass_balance)
        np.testing.assert_allclose(b[layout.field_slice(FieldKind.ELASTIC_PRESSURE)], 0.0)

    def test_wrong_eta_length(self, mms: Scenario, small_disc: Discretization, raw_system: BlockSystem) -> None:
        with pytest.raises(DimensionMismatchError):
            assemble_rhs_step(mms, small_disc, raw_system, 0.0, np.zeros(3))


class TestBlockDump:
    """Matrix-market export."""

    def test_dump_and_read_back(self, raw_system: BlockSystem, tmp_path: Path) -> None:
        paths = dump_blocks(raw_system, tmp_path / "blocks")
        assert sorted(p.stem for p in paths) == sorted(["A_P", "B_P", "R_P", "H_P", "A_f", "A_E", "B_E", "R_E", "H_E"])
        back = sp.csr_matrix(scipy.io.mmread(str(tmp_path / "blocks" / "B_P.mtx")))
        assert abs(back - raw_system.poro.B).max() < 1e-12 * abs(raw_system.poro.B).max()
