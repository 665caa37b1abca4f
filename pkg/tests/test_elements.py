#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Tests for Lagrange bases, quadrature rules and local element matrices
#

"""
Tests for the elements package.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poro_feti.assembly.blocks import rigid_body_modes
from poro_feti.core.exceptions import DegenerateElementError, QuadratureDegreeError, UnsupportedOrderError
from poro_feti.core.types import FormKind, SubdomainId
from poro_feti.elements.basis import eval_basis, eval_edge_basis, n_basis, reference_nodes
from poro_feti.elements.local_forms import (
    div_coupling_matrices,
    elastic_matrices,
    local_form,
    local_interface,
    quadrature_points,
)
from poro_feti.elements.quadrature import edge_quadrature_rule, quadrature_rule
from poro_feti.mesh.dofs import FieldOrders
from poro_feti.model.params import ModelParams

REFERENCE = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
SKEWED = np.array([[0.1, 0.2], [0.9, 0.35], [0.3, 0.8]])


def triangle_area(tri: np.ndarray) -> float:
    (x0, y0), (x1, y1), (x2, y2) = tri
    return 0.5 * abs((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0))


@st.composite
def reference_points(draw: st.DrawFn) -> np.ndarray:
    a = draw(st.floats(min_value=0.0, max_value=1.0))
    b = draw(st.floats(min_value=0.0, max_value=1.0))
    if a + b > 1.0:
        a, b = 1.0 - a, 1.0 - b
    return np.array([a, b])


class TestBasis:
    """P1 and P2 shape functions on the reference triangle."""

    @pytest.mark.parametrize("order", [1, 2])
    def test_lagrange_property(self, order: int) -> None:
        values = eval_basis(order, reference_nodes(order)).values
        np.testing.assert_allclose(values, np.eye(n_basis(order)), atol=1e-14)

    @pytest.mark.parametrize("order", [1, 2])
    @given(point=reference_points())
    @settings(max_examples=50, deadline=None)
    def test_partition_of_unity(self, order: int, point: np.ndarray) -> None:
        basis = eval_basis(order, point)
        assert basis.values.sum() == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(basis.grads.sum(axis=1), 0.0, atol=1e-12)

    def test_p2_midpoints_follow_local_edges(self) -> None:
        np.testing.assert_allclose(reference_nodes(2)[3:], [[0.5, 0.0], [0.5, 0.5], [0.0, 0.5]])

    def test_point_outside_is_rejected(self) -> None:
        with pytest.raises(ValueError):
            eval_basis(1, np.array([0.8, 0.8]))

    def test_unsupported_order(self) -> None:
        with pytest.raises(UnsupportedOrderError):
            eval_basis(3, np.array([0.1, 0.1]))

    @pytest.mark.parametrize("order", [1, 2])
    def test_edge_basis_is_nodal(self, order: int) -> None:
        nodes = np.array([0.0, 1.0]) if order == 1 else np.array([0.0, 1.0, 0.5])
        np.testing.assert_allclose(eval_edge_basis(order, nodes), np.eye(order + 1), atol=1e-14)


class TestQuadrature:
    """Triangle and edge rules."""

    @pytest.mark.parametrize("degree", [0, 1, 2, 3, 4])
    def test_weights_sum_to_reference_area(self, degree: int) -> None:
        assert quadrature_rule(degree).weights.sum() == pytest.approx(0.5, abs=1e-14)

    @pytest.mark.parametrize("degree", [1, 2, 4])
    def test_monomials_are_integrated_exactly(self, degree: int) -> None:
        rule = quadrature_rule(degree)
        x, y = rule.points[:, 0], rule.points[:, 1]
        for a in range(degree + 1):
            for b in range(degree + 1 - a):
                exact = math.factorial(a) * math.factorial(b) / math.factorial(a + b + 2)
                assert rule.weights @ (x**a * y**b) == pytest.approx(exact, abs=1e-14)

    def test_degree_three_uses_degree_four_rule(self) -> None:
        assert quadrature_rule(3).n_points == 6

    def test_unsupported_degree(self) -> None:
        with pytest.raises(QuadratureDegreeError):
            quadrature_rule(5)

    def test_edge_rule(self) -> None:
        rule = edge_quadrature_rule(3)
        assert rule.degree == 5
        for k in range(6):
            assert rule.weights @ rule.points**k == pytest.approx(1.0 / (k + 1), abs=1e-14)

    def test_physical_points_stay_inside(self) -> None:
        pts = quadrature_points(SKEWED[None])[0]
        centroid = SKEWED.mean(axis=0)
        np.testing.assert_allclose(pts.mean(axis=0), centroid, atol=1e-12)


class TestLocalForms:
    """Element matrices on single triangles and edges."""

    def test_p1_mass(self, params: ModelParams) -> None:
        mass = local_form(FormKind.MASS, SKEWED, params).entries
        area = triangle_area(SKEWED)
        expected = area / 12.0 * np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]])
        np.testing.assert_allclose(mass, expected, rtol=1e-12)

    @pytest.mark.parametrize("order", [1, 2])
    def test_elastic_kernel_is_rigid_motions(self, order: int) -> None:
        nodes = reference_nodes(order) @ np.array([[0.8, 0.15], [0.2, 0.6]]).T + np.array([0.1, 0.2])
        local = elastic_matrices(nodes[:3][None], order, mu=3.0)[0]
        np.testing.assert_allclose(local, local.T, atol=1e-12)
        modes = rigid_body_modes(nodes)
        np.testing.assert_allclose(local @ modes.T, 0.0, atol=1e-12)
        assert np.linalg.matrix_rank(local, tol=1e-9) == local.shape[0] - 3

    def test_div_of_constant_vanishes(self) -> None:
        local = div_coupling_matrices(SKEWED[None], 2, 1)[0]
        translation = np.tile([1.0, -2.0], 6)
        np.testing.assert_allclose(local @ translation, 0.0, atol=1e-13)

    def test_div_of_linear_field(self) -> None:
        # u = (x, 0) has unit divergence: -(psi_i, 1) = -A/3
        local = div_coupling_matrices(SKEWED[None], 1, 1)[0]
        u = np.column_stack([SKEWED[:, 0], np.zeros(3)]).ravel()
        np.testing.assert_allclose(local @ u, -triangle_area(SKEWED) / 3.0, rtol=1e-12)

    def test_diffusion_annihilates_constants(self, params: ModelParams) -> None:
        stiff = local_form(FormKind.DIFFUSION, SKEWED, params).entries
        np.testing.assert_allclose(stiff.sum(axis=1), 0.0, atol=1e-13)
        assert np.all(np.linalg.eigvalsh(stiff) > -1e-13)

    def test_elastic_form_uses_subdomain_shear_modulus(self) -> None:
        params = ModelParams(E_P=1e4, E_E=2e4)
        a_p = local_form(FormKind.ELASTIC, SKEWED, params, FieldOrders(displacement=1)).entries
        a_e = local_form(FormKind.ELASTIC, SKEWED, params, FieldOrders(displacement=1), SubdomainId.E).entries
        np.testing.assert_allclose(a_e, 2.0 * a_p, rtol=1e-12)

    def test_interface_form_p1(self) -> None:
        edge = np.array([[0.0, 0.5], [0.25, 0.5]])
        local = local_interface(edge, trace_order=1).entries
        np.testing.assert_allclose(local, 0.25 / 6.0 * np.array([[2.0, 1.0], [1.0, 2.0]]), rtol=1e-12)

    def test_interface_form_p2_trace(self) -> None:
        local = local_interface(np.array([[0.0, 0.5], [0.5, 0.5]]), trace_order=2).entries
        assert local.shape == (3, 2)
        np.testing.assert_allclose(local.sum(axis=0), 0.25, rtol=1e-12)

    def test_degenerate_triangle(self, params: ModelParams) -> None:
        with pytest.raises(DegenerateElementError):
            local_form(FormKind.MASS, np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]), params)

    def test_interface_is_not_a_volume_form(self, params: ModelParams) -> None:
        with pytest.raises(ValueError):
            local_form(FormKind.INTERFACE, REFERENCE, params)
