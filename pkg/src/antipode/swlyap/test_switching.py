import numpy as np
from numpy.testing import assert_array_equal

from antipode.control.errors import InvalidGains
from antipode.swlyap import (
    SwitchEvent,
    SwitchState,
    check_return_decrease,
    next_sigma,
    switch_update,
    switch_update_batch,
)
from antipode.utils_for_tests import TestCaseWithOutputFixtures


def _log(*values: float) -> SwitchState:
    events = []
    sigma = 1
    for k, v in enumerate(values):
        events.append(SwitchEvent(t=0.1 * (k + 1), old_sigma=sigma, new_sigma=-sigma, v=v))
        sigma = -sigma
    return SwitchState(sigma=sigma, events=tuple(events))


class TestHysteresis(TestCaseWithOutputFixtures):
    def test_next_sigma(self) -> None:
        lam = np.array([0.0, 0.49, -0.49, 0.5, -0.5, 4.0, -3.196])
        assert_array_equal(next_sigma(1, lam, 0.5), [1, 1, 1, 1, -1, 1, -1])
        assert_array_equal(next_sigma(-1, lam, 0.5), [-1, -1, -1, 1, -1, 1, -1])

    def test_dead_band_keeps_the_state(self) -> None:
        st = SwitchState()
        self.assertIs(switch_update(st, 0.0, 0.5, 1.0, 0.3), st)
        self.assertEqual(st.sigma, 1)

    def test_switches_after_a_large_reversal(self) -> None:
        st = switch_update(SwitchState(), -3.196, 0.5, 1.7, 0.8)
        self.assertEqual(st.sigma, -1)
        self.assertEqual(st.events, (SwitchEvent(t=1.7, old_sigma=1, new_sigma=-1, v=0.8),))
        st = switch_update(st, 4.0, 0.5, 2.5, 0.0)
        self.assertEqual(st.sigma, 1)
        self.assertEqual(len(st.events), 2)

    def test_rejects_non_positive_width(self) -> None:
        with self.assertRaises(InvalidGains):
            switch_update(SwitchState(), 1.0, 0.0, 0.0, 0.0)

    def test_batch_matches_member_updates(self) -> None:
        flipped = switch_update(SwitchState(), -1.0, 0.5, 0.2, 0.4)
        states = (SwitchState(), SwitchState(sigma=-1), flipped)
        lam = np.array([-3.196, 0.3, 0.9])
        v = np.array([0.8, 0.1, 0.05])
        batch = switch_update_batch(states, lam, 0.5, 1.0, v)
        for i, st in enumerate(states):
            self.assertEqual(batch[i], switch_update(st, lam[i], 0.5, 1.0, v[i]))
        self.assertIs(batch[1], states[1])
        self.assertEqual([st.sigma for st in batch], [-1, -1, 1])
        self.assertEqual(len(batch[2].events), 2)

    def test_batch_rejects_non_positive_width(self) -> None:
        with self.assertRaises(InvalidGains):
            switch_update_batch((SwitchState(),), 0.0, 0.0, 0.0, 0.0)


class TestReturnDecrease(TestCaseWithOutputFixtures):
    def test_short_logs_have_nothing_to_check(self) -> None:
        self.assertEqual(check_return_decrease(SwitchState(), 0.5), [])
        self.assertEqual(check_return_decrease(_log(3.0), 0.5), [])
        self.assertEqual(check_return_decrease(_log(3.0, 1.0), 0.5), [])

    def test_sufficient_decrease(self) -> None:
        self.assertEqual(check_return_decrease(_log(3.0, 1.0, 2.0), 0.5), [])
        self.assertEqual(check_return_decrease(_log(3.0, 1.0, 2.5), 0.5), [])

    def test_insufficient_decrease(self) -> None:
        st = _log(3.0, 1.0, 2.8, 0.9)
        violations = check_return_decrease(st, 0.5)
        self.assertEqual(len(violations), 2)
        self.assertEqual(violations[0].left, st.events[0])
        self.assertEqual(violations[0].returned, st.events[2])
        self.assertAlmostEqual(violations[0].change, -0.2)
        self.assertAlmostEqual(violations[1].change, -0.1)
