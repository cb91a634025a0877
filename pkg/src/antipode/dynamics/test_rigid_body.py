import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from antipode.dynamics import (
    BodyState,
    HoverGains,
    Inputs,
    RigidBodyParams,
    SimulationMode,
    derivatives,
    diagonal_entries,
    hover_thrust,
)
from antipode.dynamics.errors import InvalidRigidBodyParams
from antipode.errors import HelpfulException
from antipode.quat import E3, from_axis_angle
from antipode.utils_for_tests import TestCaseWithOutputFixtures, validate_output

PARAMS = RigidBodyParams()


class TestRigidBodyParams(TestCaseWithOutputFixtures):
    def test_defaults_to_the_crazyflie_inertia(self) -> None:
        assert_allclose(PARAMS.j, [16.6e-6, 16.7e-6, 29.3e-6])
        self.assertGreater(PARAMS.m, 0.0)

    def test_diagonal_entries(self) -> None:
        assert_array_equal(diagonal_entries(np.diag([1.0, 2.0, 3.0])), [1.0, 2.0, 3.0])
        self.assertIsNone(diagonal_entries(np.ones((3, 3))))
        self.assertIsNone(diagonal_entries(np.eye(2)))

    @validate_output
    def test_rejects_non_positive_mass(self) -> HelpfulException:
        with self.assertRaises(InvalidRigidBodyParams) as ctx:
            RigidBodyParams(m=-1.0)
        self.assertEqual(ctx.exception.field, "m")
        return ctx.exception

    def test_rejects_non_diagonal_inertia(self) -> None:
        inertia = np.diag([1.0, 1.0, 1.0])
        inertia[0, 1] = 0.1
        with self.assertRaises(InvalidRigidBodyParams) as ctx:
            RigidBodyParams(J=inertia)
        self.assertEqual(ctx.exception.requirement, "a 3x3 diagonal matrix")

    def test_rejects_zero_inertia_entries(self) -> None:
        with self.assertRaises(InvalidRigidBodyParams):
            RigidBodyParams(J=np.diag([1.0, 0.0, 1.0]))


class TestDerivatives(TestCaseWithOutputFixtures):
    def test_hover_is_an_equilibrium(self) -> None:
        d = derivatives(BodyState.at_rest(), Inputs(PARAMS.m * PARAMS.g, np.zeros(3)), PARAMS)
        assert_allclose(d.dv, np.zeros(3), atol=1e-14)
        assert_array_equal(d.dr, np.zeros(3))
        assert_array_equal(d.dq, np.zeros(4))
        assert_array_equal(d.dw, np.zeros(3))

    def test_spin_about_a_principal_axis_has_no_gyroscopic_term(self) -> None:
        d = derivatives(BodyState.at_rest(w=[0.0, 0.0, 1.0]), Inputs(0.0, np.zeros(3)), PARAMS)
        assert_array_equal(d.dw, np.zeros(3))

    def test_torque_free_rate_matches_euler_equations(self) -> None:
        w = np.array([1.0, 2.0, 3.0])
        jx, jy, jz = PARAMS.j
        expected = [
            (jy - jz) * w[1] * w[2] / jx,
            (jz - jx) * w[2] * w[0] / jy,
            (jx - jy) * w[0] * w[1] / jz,
        ]
        d = derivatives(BodyState.at_rest(w=w), Inputs(0.0, np.zeros(3)), PARAMS)
        assert_allclose(d.dw, expected, rtol=1e-12)

    def test_quaternion_rate(self) -> None:
        d = derivatives(BodyState.at_rest(w=[0.0, 0.0, 2.0]), Inputs(0.0, np.zeros(3)), PARAMS)
        assert_allclose(d.dq, [0.0, 0.0, 0.0, 1.0])

    def test_thrust_acts_along_the_body_z_axis(self) -> None:
        tilted = BodyState.at_rest(q=from_axis_angle([1.0, 0.0, 0.0], np.pi / 2))
        d = derivatives(tilted, Inputs(2 * PARAMS.m, np.zeros(3)), PARAMS)
        assert_allclose(d.dv, [0.0, -2.0, -PARAMS.g], atol=1e-12)

    def test_torque_accelerates_through_the_inertia(self) -> None:
        tau = np.array([1e-6, -2e-6, 3e-6])
        d = derivatives(BodyState.at_rest(), Inputs(0.0, tau), PARAMS)
        assert_allclose(d.dw, tau / PARAMS.j)

    def test_broadcasts_over_batches(self) -> None:
        states = BodyState.at_rest(q=from_axis_angle(E3, np.linspace(0, 1, 4)))
        self.assertEqual(states.members(), 4)
        d = derivatives(states, Inputs(np.zeros(4), np.zeros((4, 3))), PARAMS)
        self.assertEqual(d.dq.shape, (4, 4))
        self.assertEqual(d.dv.shape, (4, 3))

    def test_rotational_energy(self) -> None:
        self.assertAlmostEqual(
            float(PARAMS.rotational_energy(np.array([0.0, 0.0, 2.0]))), 2 * 29.3e-6, places=15
        )


class TestHoverThrust(TestCaseWithOutputFixtures):
    def test_attitude_mode_balances_gravity(self) -> None:
        fa = hover_thrust(BodyState.at_rest(), PARAMS, HoverGains(), SimulationMode.ATTITUDE)
        self.assertAlmostEqual(float(fa), PARAMS.m * PARAMS.g)

    def test_holds_altitude_with_pd_correction(self) -> None:
        s = BodyState.at_rest()
        low = BodyState(r=np.array([0.0, 0.0, -0.1]), v=s.v, q=s.q, w=s.w)
        fa = hover_thrust(low, PARAMS, HoverGains(), SimulationMode.SIX_DOF)
        self.assertAlmostEqual(float(fa), PARAMS.m * (PARAMS.g + 40.0 * 0.1))

    def test_compensates_tilt_with_a_clamped_projection(self) -> None:
        gains = HoverGains()
        tilted = BodyState.at_rest(q=from_axis_angle([1.0, 0.0, 0.0], np.pi / 3))
        fa = hover_thrust(tilted, PARAMS, gains, SimulationMode.SIX_DOF)
        self.assertAlmostEqual(float(fa), PARAMS.m * PARAMS.g / 0.5)
        sideways = BodyState.at_rest(q=from_axis_angle([1.0, 0.0, 0.0], np.pi / 2))
        fa = hover_thrust(sideways, PARAMS, gains, SimulationMode.SIX_DOF)
        self.assertAlmostEqual(float(fa), PARAMS.m * PARAMS.g / 0.1)

    def test_never_pulls_downwards(self) -> None:
        s = BodyState.at_rest()
        high = BodyState(r=np.array([0.0, 0.0, 10.0]), v=s.v, q=s.q, w=s.w)
        fa = hover_thrust(high, PARAMS, HoverGains(), SimulationMode.SIX_DOF)
        self.assertEqual(float(fa), 0.0)
