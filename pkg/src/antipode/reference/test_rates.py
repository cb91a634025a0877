import numpy as np
from numpy.testing import assert_allclose

from antipode.errors import HelpfulException
from antipode.quat import IDENTITY, E3, from_axis_angle, pure, qmul
from antipode.reference import desired_rate_tilde, map_desired_rate
from antipode.reference.errors import InconsistentReference
from antipode.utils_for_tests import (
    TestCaseWithOutputFixtures,
    random_unit_quaternions,
    validate_output,
)


class TestDesiredRateTilde(TestCaseWithOutputFixtures):
    def test_still_reference_has_no_rate(self) -> None:
        assert_allclose(desired_rate_tilde(IDENTITY, np.zeros(4)), np.zeros(3))

    def test_inverts_the_attitude_kinematics(self) -> None:
        assert_allclose(desired_rate_tilde(IDENTITY, 0.5 * pure([0.0, 0.0, 2.5])), [0, 0, 2.5])
        qd = random_unit_quaternions(self.rng, 20)
        wd = self.rng.normal(size=(20, 3))
        assert_allclose(desired_rate_tilde(qd, 0.5 * qmul(qd, pure(wd))), wd, atol=1e-14)

    def test_constant_rate_yaw_by_central_difference(self) -> None:
        h, rate, t = 1e-6, 3.0, 0.4
        qd = from_axis_angle(E3, rate * t)
        qd_dot = (from_axis_angle(E3, rate * (t + h)) - from_axis_angle(E3, rate * (t - h))) / (
            2 * h
        )
        assert_allclose(desired_rate_tilde(qd, qd_dot), [0.0, 0.0, rate], atol=1e-6)

    @validate_output
    def test_rejects_rates_leaving_the_unit_sphere(self) -> HelpfulException:
        with self.assertRaises(InconsistentReference) as ctx:
            desired_rate_tilde(IDENTITY, [0.5, 0.0, 0.0, 0.0])
        return ctx.exception


class TestMapDesiredRate(TestCaseWithOutputFixtures):
    def test_aligned_frames_leave_the_rate_unchanged(self) -> None:
        q = random_unit_quaternions(self.rng, 10)
        w = self.rng.normal(size=(10, 3))
        assert_allclose(map_desired_rate(q, q, w), w, atol=1e-14)

    def test_zero_rate_maps_to_zero(self) -> None:
        q, qd = random_unit_quaternions(self.rng, 2)
        assert_allclose(map_desired_rate(q, qd, np.zeros(3)), np.zeros(3))

    def test_quarter_turn_in_yaw(self) -> None:
        qd = from_axis_angle(E3, np.pi / 2)
        assert_allclose(map_desired_rate(IDENTITY, qd, [1.0, 0.0, 0.0]), [0, 1, 0], atol=1e-15)

    def test_yaw_rates_are_frame_independent_for_yaw_only_attitudes(self) -> None:
        q = from_axis_angle(E3, 0.3)
        qd = from_axis_angle(E3, 2.0)
        assert_allclose(map_desired_rate(q, qd, [0.0, 0.0, 3.0]), [0.0, 0.0, 3.0], atol=1e-14)
