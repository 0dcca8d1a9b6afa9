import numpy as np
import pytest

from mbph import (
    Field,
    LinearTrajectory,
    Mesh,
    PHSystem,
    StaticTrajectory,
    UnsupportedClosure,
    boundary_ports,
    discrete_hamiltonian,
    element_ports,
    element_rhs,
    element_rhs_all,
    power_audit,
    project_state,
    reconstruct_nodal_efforts,
)
from mbph.discretization import basis_omega_elem, basis_omega_node, element_hamiltonians
from mbph.quadrature import gauss_rule


class TestBasis:
    def test_nodal_basis_is_cardinal(self):
        mesh = Mesh(5)
        for i in range(1, 7):
            vals = basis_omega_node(mesh, i, mesh.nodes)
            expected = np.zeros(6)
            expected[i - 1] = 1.0
            assert np.allclose(vals, expected)

    def test_element_basis_values(self):
        mesh = Mesh(4)
        inside = basis_omega_elem(mesh, 2, np.array([0.3]))
        assert inside[0] == 4.0
        edges = basis_omega_elem(mesh, 2, np.array([0.25, 0.5]))
        assert np.allclose(edges, [2.0, 2.0])
        outside = basis_omega_elem(mesh, 2, np.array([0.1, 0.7, 1.0]))
        assert np.all(outside == 0.0)

    def test_element_basis_unit_integral(self):
        mesh = Mesh(7)
        gx, gw = gauss_rule(8, 7 * 4)
        for i in (1, 4, 7):
            vals = basis_omega_elem(mesh, i, gx)
            assert float(gw @ vals) == pytest.approx(1.0, rel=1e-12)

    def test_element_basis_is_hat_slope(self):
        mesh = Mesh(6)
        h = 1e-7
        for i in (2, 5):
            mid = 0.5 * (mesh.nodes[i - 1] + mesh.nodes[i])
            slope = (
                basis_omega_node(mesh, i + 1, np.array([mid + h]))
                - basis_omega_node(mesh, i + 1, np.array([mid - h]))
            ) / (2 * h)
            assert slope[0] == pytest.approx(basis_omega_elem(mesh, i, np.array([mid]))[0], rel=1e-6)

    def test_index_bounds(self):
        mesh = Mesh(3)
        with pytest.raises(IndexError):
            basis_omega_elem(mesh, 0, np.array([0.5]))
        with pytest.raises(IndexError):
            basis_omega_elem(mesh, 4, np.array([0.5]))
        with pytest.raises(IndexError):
            basis_omega_node(mesh, 5, np.array([0.5]))


class TestReconstruction:
    def test_two_element_hand_case(self, tl):
        mesh = Mesh(2)
        x = np.array([[0.5, 0.25], [0.75, 0.25]])
        e = reconstruct_nodal_efforts(tl, mesh, x, left=0.5, right=0.5)
        assert np.allclose(e, [[0.5, 0.5], [1.5, 0.5], [1.5, 0.5]])

    def test_zero_state_zero_traces(self, tl):
        mesh = Mesh(6)
        e = reconstruct_nodal_efforts(tl, mesh, np.zeros((6, 2)), 0.0, 0.0)
        assert np.all(e == 0.0)

    def test_element_average_invariant(self, tl):
        rng = np.random.default_rng(31)
        for N in (1, 3, 10, 64):
            mesh = Mesh(N)
            x = rng.uniform(-1, 1, size=(N, 2))
            e = reconstruct_nodal_efforts(tl, mesh, x, rng.uniform(-1, 1), rng.uniform(-1, 1))
            gap = 0.5 * (e[:-1] + e[1:]) - N * x @ tl.Q.T
            assert np.max(np.abs(gap)) <= 1e-13

    def test_swapped_components(self, tl):
        # imposing current on the left and voltage on the right also closes
        mesh = Mesh(4)
        rng = np.random.default_rng(8)
        x = rng.uniform(-1, 1, size=(4, 2))
        e = reconstruct_nodal_efforts(
            tl, mesh, x, left=0.3, right=-0.2, left_component=1, right_component=0
        )
        gap = 0.5 * (e[:-1] + e[1:]) - 4 * x @ tl.Q.T
        assert np.max(np.abs(gap)) <= 1e-13
        assert e[0, 1] == pytest.approx(0.3) and e[-1, 0] == pytest.approx(-0.2)

    def test_rejects_unsupported_patterns(self, tl):
        mesh = Mesh(3)
        x = np.zeros((3, 2))
        with pytest.raises(UnsupportedClosure):
            reconstruct_nodal_efforts(tl, mesh, x, 0.0, 0.0, left_component=0, right_component=0)
        wide = PHSystem(J0=np.zeros((3, 3)), J1=np.eye(3), Q=np.eye(3))
        with pytest.raises(UnsupportedClosure):
            reconstruct_nodal_efforts(wide, Mesh(3), np.zeros((3, 3)), 0.0, 0.0)


class TestElementRhs:
    def test_static_unit_width_hand_case(self, tl):
        traj = StaticTrajectory(0.0, 1.0)
        f = element_rhs(tl, traj, 0.0, Mesh(1), 1, [0.0, 0.0], [0.0, 0.0], [0.0, 1.0])
        assert np.allclose(f, [-1.0, 0.0])

    def test_rigid_translation_drops_compression(self, tl):
        traj = LinearTrajectory(0.0, 1.0, 0.05, 0.05)
        mesh = Mesh(2)
        x = np.array([2.0, -1.0])
        e = np.array([1.0, 1.0])
        f = element_rhs(tl, traj, 0.0, mesh, 1, x, e, e)
        # equal efforts and rigid motion: pure advection of a flat field
        assert np.allclose(f, 0.0, atol=1e-15)

    def test_constant_field_static_domain(self, tl):
        traj = StaticTrajectory(0.2, 0.8)
        f = element_rhs(tl, traj, 0.0, Mesh(3), 2, [0.4, 0.4], [1.0, -2.0], [1.0, -2.0])
        assert np.allclose(f, 0.0, atol=1e-15)

    def test_matches_vectorized_kernel(self, tl, benchmark_traj):
        rng = np.random.default_rng(12)
        mesh = Mesh(5)
        x = rng.uniform(-1, 1, size=(5, 2))
        e = rng.uniform(-1, 1, size=(6, 2))
        from mbph.domain import eval_bounds

        bounds = eval_bounds(benchmark_traj, 3.0)
        full = element_rhs_all(tl, bounds, mesh, x, e)
        for i in range(1, 6):
            single = element_rhs(tl, benchmark_traj, 3.0, mesh, i, x[i - 1], e[i - 1], e[i])
            assert np.allclose(single, full[i - 1], atol=1e-16)

    def test_static_scheme_oracle(self, tl):
        # hand-coded classical mixed-element update: each component's rate
        # is the jump of the conjugate effort across the element over the
        # domain width
        rng = np.random.default_rng(4)
        for w, N in [(1.0, 4), (0.37, 9)]:
            traj = StaticTrajectory(0.0, w)
            mesh = Mesh(N)
            x = rng.uniform(-1, 1, size=(N, 2))
            e = rng.uniform(-1, 1, size=(N + 1, 2))
            from mbph.domain import eval_bounds

            f = element_rhs_all(tl, eval_bounds(traj, 0.0), mesh, x, e)
            for i in range(N):
                f_q = (e[i, 1] - e[i + 1, 1]) / w
                f_phi = (e[i, 0] - e[i + 1, 0]) / w
                assert abs(f[i, 0] - f_q) <= 1e-14
                assert abs(f[i, 1] - f_phi) <= 1e-14

    def test_rejects_gyrator_coupling(self):
        J0 = np.array([[0.0, 1.0], [-1.0, 0.0]])
        sys_ = PHSystem(J0=J0, J1=np.array([[0.0, -1.0], [-1.0, 0.0]]), Q=np.eye(2))
        with pytest.raises(UnsupportedClosure):
            element_rhs(sys_, StaticTrajectory(0, 1), 0.0, Mesh(1), 1, [0, 0], [0, 0], [0, 0])


class TestDiscreteHamiltonian:
    def test_zero(self, tl):
        assert discrete_hamiltonian(tl, Mesh(4), np.zeros((4, 2))) == 0.0

    def test_single_element_hand_value(self, tl):
        assert discrete_hamiltonian(tl, Mesh(1), np.array([[1.0, 1.0]])) == pytest.approx(1.0)

    def test_four_element_hand_value(self, tl):
        x = np.tile([0.25, 0.0], (4, 1))
        assert discrete_hamiltonian(tl, Mesh(4), x) == pytest.approx(0.5)

    def test_per_element_sum(self, tl):
        rng = np.random.default_rng(2)
        x = rng.uniform(-1, 1, size=(6, 2))
        mesh = Mesh(6)
        assert element_hamiltonians(tl, mesh, x).sum() == pytest.approx(
            discrete_hamiltonian(tl, mesh, x), rel=1e-14
        )


class TestElementPorts:
    def test_single_element_equals_continuous_ports(self, tl, benchmark_traj):
        e0, e1 = np.array([0.7, -0.3]), np.array([0.1, 0.9])
        mesh = Mesh(1)
        p_elem = element_ports(tl, benchmark_traj, 3.0, mesh, 1, e0, e1)
        p_cont = boundary_ports(tl, benchmark_traj, 3.0, e0, e1)
        assert np.array_equal(p_elem.f, p_cont.f)
        assert np.array_equal(p_elem.e, p_cont.e)

    def test_static_motion_blocks_vanish(self, tl):
        traj = StaticTrajectory(0.0, 1.0)
        p = element_ports(tl, traj, 0.0, Mesh(4), 2, [1.0, 2.0], [3.0, 4.0])
        assert np.all(p.f_motion == 0.0) and np.all(p.e_motion == 0.0)

    def test_moving_ports_finite_and_real_power(self, tl, benchmark_traj):
        rng = np.random.default_rng(77)
        mesh = Mesh(6)
        for i in (1, 3, 6):
            p = element_ports(
                tl, benchmark_traj, 3.0, mesh, i, rng.uniform(-1, 1, 2), rng.uniform(-1, 1, 2)
            )
            assert np.all(np.isfinite(p.f.view(float))) and np.all(np.isfinite(p.e.view(float)))
            assert abs(p.power().imag) <= 1e-12 * max(1.0, abs(p.power()))


class TestPowerAudit:
    def _state(self, tl, traj, t, N, seed):
        rng = np.random.default_rng(seed)
        mesh = Mesh(N)
        x = rng.uniform(-1, 1, size=(N, 2))
        e = reconstruct_nodal_efforts(tl, mesh, x, rng.uniform(-1, 1), rng.uniform(-1, 1))
        from mbph.domain import eval_bounds

        f = element_rhs_all(tl, eval_bounds(traj, t), mesh, x, e)
        return mesh, x, e, f

    def test_zero_state(self, tl):
        traj = StaticTrajectory(0.0, 1.0)
        mesh = Mesh(3)
        z = np.zeros((3, 2))
        audit = power_audit(tl, traj, 0.0, mesh, z, np.zeros((4, 2)), z)
        assert audit["dH_dt"] == 0.0 and audit["port_power"] == 0.0 and audit["residual"] == 0.0

    def test_static_domain_structure_preserving(self, tl):
        traj = StaticTrajectory(0.2, 0.4)
        for seed in range(5):
            mesh, x, e, f = self._state(tl, traj, 0.0, 10, seed)
            audit = power_audit(tl, traj, 0.0, mesh, x, e, f)
            scale = max(abs(audit["dH_dt"]), abs(audit["port_power"]), 1e-300)
            assert audit["residual"] <= 1e-12 * scale

    def test_moving_domain_residual_nonzero(self, tl, benchmark_traj):
        mesh, x, e, f = self._state(tl, benchmark_traj, 3.0, 10, 1)
        audit = power_audit(tl, benchmark_traj, 3.0, mesh, x, e, f)
        assert audit["residual"] > 1e-6 * max(abs(audit["dH_dt"]), 1.0)

    def test_port_power_matches_elementwise_sum(self, tl, benchmark_traj):
        mesh, x, e, f = self._state(tl, benchmark_traj, 3.0, 8, 2)
        audit = power_audit(tl, benchmark_traj, 3.0, mesh, x, e, f)
        total = sum(
            element_ports(tl, benchmark_traj, 3.0, mesh, i, e[i - 1], e[i]).power().real
            for i in range(1, mesh.N + 1)
        )
        assert audit["port_power"] == pytest.approx(total, rel=1e-12)


class TestProjection:
    def test_projection_reproduces_constants(self, tl):
        mesh = Mesh(5)
        x = project_state(mesh, Field.constant([2.0, -3.0]))
        assert np.allclose(x, np.tile([0.4, -0.6], (5, 1)))

    def test_interpolation_error_first_order(self):
        # piecewise-constant representation of a smooth field converges
        # at first order in L2
        field = Field(
            2, lambda s: np.stack([np.sin(2 * np.pi * s), np.cos(np.pi * s)], axis=-1)
        )
        errs = []
        sizes = (10, 20, 40, 80)
        gx, gw = gauss_rule(6)
        for N in sizes:
            mesh = Mesh(N)
            x = project_state(mesh, field)
            err2 = 0.0
            for i in range(N):
                pts = mesh.nodes[i] + mesh.h * gx
                diff = field(pts) - N * x[i]
                err2 += mesh.h * float(gw @ np.sum(diff**2, axis=-1))
            errs.append(np.sqrt(err2))
        order = np.polyfit(np.log(sizes), np.log(errs), 1)[0]
        assert -order >= 0.9
