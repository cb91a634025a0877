import math
from dataclasses import replace

import numpy as np
from numpy.testing import assert_allclose, assert_array_equal

from antipode.control import ControllerKind, Gains, error_state, torque_switching
from antipode.dynamics import BodyState, RigidBodyParams, SimulationMode
from antipode.harness import RUN_COLUMNS, ExperimentConfig, NoiseConfig, RunLog, run_experiment
from antipode.harness.closed_loop import STILL
from antipode.harness.simulation import (
    control_step,
    first_switch_after,
    measure,
    sample_count,
)
from antipode.quat import from_axis_angle
from antipode.reference import YawManeuverProfile
from antipode.swlyap import SwitchState
from antipode.utils_for_tests import TestCaseWithOutputFixtures

QUIET = ExperimentConfig(noise=None)
SHORT = replace(QUIET, profile=YawManeuverProfile(t_hover=0.2, t_final=0.6))


def _wrapped(angle: np.ndarray) -> np.ndarray:
    return np.angle(np.exp(1j * angle))


def _onset_state() -> BodyState:
    """Spinning at 3 rad/s, 120 degrees away from the level attitude."""
    return BodyState.at_rest(q=from_axis_angle([0.0, 0.0, 1.0], 2.0 * math.pi / 3), w=[0, 0, 3])


class TestRunExperiment(TestCaseWithOutputFixtures):
    switching: RunLog
    benchmark: RunLog
    case: ExperimentConfig

    @classmethod
    def setUpClass(cls) -> None:
        super().setUpClass()
        cls.case = QUIET.with_ic(3.0, 120.0)
        cls.switching = run_experiment(cls.case, ControllerKind.SWITCHING)
        cls.benchmark = run_experiment(cls.case, ControllerKind.BENCHMARK)

    def _onset(self, log: RunLog) -> int:
        return int(np.searchsorted(log.t, self.case.t0 - 1e-12))

    def test_uniform_time_grid(self) -> None:
        log = self.switching
        self.assertEqual(len(log), sample_count(self.case.t_final, self.case.dt))
        self.assertEqual(log.as_table().shape, (len(log), len(RUN_COLUMNS)))
        assert_allclose(np.diff(log.t), self.case.dt, rtol=1e-9)
        self.assertEqual(log.t[0], 0.0)
        self.assertGreaterEqual(log.t[-1], self.case.tf)

    def test_reset_starts_from_the_expected_switching_function(self) -> None:
        onset = self._onset(self.switching)
        self.assertAlmostEqual(
            self.switching.lambda_[onset], 2.0 - 3.0 * math.sqrt(3.0), delta=0.05
        )

    def test_switching_controller_takes_the_long_way_round(self) -> None:
        onset = self._onset(self.switching)
        event = first_switch_after(self.switching, 0.0)
        self.assertIsNotNone(event)
        self.assertEqual((event.old_sigma, event.new_sigma), (1, -1))
        self.assertLessEqual(abs(event.t - self.case.t0), 0.05)
        self.assertLessEqual(len(self.switching.events), 2)
        self.assertTrue(np.any(np.abs(np.diff(self.switching.psi[onset:])) > math.pi))
        self.assertEqual(self.switching.sigma[onset], -1.0)

    def test_benchmark_controller_turns_back(self) -> None:
        onset = self._onset(self.benchmark)
        psi = self.benchmark.psi[onset:]
        self.assertEqual(self.benchmark.events, ())
        self.assertFalse(np.any(np.abs(np.diff(psi)) > math.pi))
        self.assertLess(psi[-1], psi[0])
        self.assertLess(abs(psi[-1]), math.radians(1.0))

    def test_both_controllers_settle_at_the_level_attitude(self) -> None:
        for log in (self.switching, self.benchmark):
            self.assertLess(abs(_wrapped(log.psi[-1])), math.radians(1.0))
            assert_allclose(log.w[-1], 0.0, atol=0.05)

    def test_both_controllers_track_the_yaw_stage(self) -> None:
        for log in (self.switching, self.benchmark):
            steady = (log.t > self.case.profile.t_hover + 0.3) & (log.t < self.case.t0 - 0.01)
            error = np.abs(_wrapped(log.psi[steady] - log.psi_d[steady]))
            self.assertLess(error.max(), math.radians(5.0))

    def test_logged_switching_function_matches_the_lyapunov_functions(self) -> None:
        log = self.switching
        assert_allclose(log.lambda_, log.v_minus - log.v_plus, rtol=0.0, atol=1e-9)

    def test_attitude_stays_on_the_unit_sphere(self) -> None:
        norms = np.linalg.norm(self.switching.q, axis=-1)
        self.assertLess(np.max(np.abs(norms - 1.0)), 1e-9)

    def test_hover_only_profile_holds_the_identity(self) -> None:
        hover = replace(
            QUIET,
            profile=YawManeuverProfile(w0=np.zeros(3), psi0=0.0, t_hover=0.5, t_final=1.0),
        )
        for controller in ControllerKind:
            log = run_experiment(hover, controller)
            assert_allclose(log.q, np.tile([1.0, 0.0, 0.0, 0.0], (len(log), 1)), atol=1e-12)
            assert_allclose(log.tau, 0.0, atol=1e-15)

    def test_same_seed_same_run(self) -> None:
        noisy = replace(SHORT, noise=NoiseConfig(), rng_seed=5)
        first = run_experiment(noisy, ControllerKind.SWITCHING)
        second = run_experiment(noisy, ControllerKind.SWITCHING)
        assert_array_equal(first.as_table(), second.as_table())
        other = run_experiment(replace(noisy, rng_seed=6), ControllerKind.SWITCHING)
        self.assertFalse(np.array_equal(first.tau, other.tau))

    def test_six_dof_runs_hold_altitude_while_level(self) -> None:
        log = run_experiment(replace(SHORT, mode=SimulationMode.SIX_DOF), ControllerKind.BENCHMARK)
        self.assertIsNotNone(log.r)
        self.assertLess(np.max(np.abs(log.r[:, 2])), 1e-6)
        assert_allclose(log.fa, SHORT.params.m * SHORT.params.g, rtol=1e-6)

    def test_attitude_runs_have_no_position(self) -> None:
        self.assertIsNone(self.switching.r)


class TestControlStep(TestCaseWithOutputFixtures):
    def test_switch_happens_before_the_torque_is_computed(self) -> None:
        p = RigidBodyParams()
        gains = Gains.switching(p.J)
        state = _onset_state()
        step = control_step(ControllerKind.SWITCHING, state, STILL, gains, p, SwitchState(), 1.7)
        self.assertEqual(step.switch.sigma, -1)
        self.assertEqual(len(step.switch.events), 1)
        self.assertAlmostEqual(step.lambda_, 2.0 - 3.0 * math.sqrt(3.0), delta=1e-9)
        es = error_state(state, STILL, -1, gains.kn)
        assert_allclose(step.tau, torque_switching(es, state, STILL, gains, p.J, -1), atol=0.0)

    def test_other_controllers_never_switch(self) -> None:
        p = RigidBodyParams()
        gains = Gains.benchmark(p.J)
        state = _onset_state()
        for controller in (ControllerKind.BENCHMARK, ControllerKind.CONTINUOUS):
            step = control_step(controller, state, STILL, gains, p, SwitchState(), 1.7)
            self.assertEqual(step.switch, SwitchState())


class TestMeasure(TestCaseWithOutputFixtures):
    def test_silent_noise_is_the_identity(self) -> None:
        state = BodyState.at_rest(w=[0.0, 0.0, 1.0])
        self.assertIs(measure(state, None, self.rng), state)
        self.assertIs(measure(state, NoiseConfig(0.0, 0.0), self.rng), state)

    def test_noise_keeps_unit_attitudes_and_spares_the_plant(self) -> None:
        state = BodyState.at_rest(w=[0.0, 0.0, 1.0])
        seen = measure(state, NoiseConfig(omega_sigma=0.1, attitude_sigma=0.01), self.rng)
        self.assertAlmostEqual(float(np.linalg.norm(seen.q)), 1.0, delta=1e-12)
        self.assertFalse(np.array_equal(seen.w, state.w))
        assert_array_equal(state.w, [0.0, 0.0, 1.0])
        assert_array_equal(state.q, [1.0, 0.0, 0.0, 0.0])
