import logging
from unittest import TestCase as RegularTestCase

from .app_settings import get_settings, override_settings
from .exceptions import SafetyViolation
from .moreiterutils import cyclic_pairs, pairwise, runs
from .timing import time_to_logger


class MoreIterUtilsTestCase(RegularTestCase):

    def test_pairwise(self):
        self.assertEqual([], list(pairwise([])))
        self.assertEqual([(0, 1), (1, 2)], list(pairwise(range(3))))

    def test_cyclic_pairs(self):
        self.assertEqual([(1, 2), (2, 3), (3, 1)], list(cyclic_pairs([1, 2, 3])))
        self.assertEqual([(1, 1)], list(cyclic_pairs([1])))

    def test_runs(self):
        self.assertEqual([("a", 0, 1), ("b", 2, 2), ("c", 3, 5)], list(runs("aabccc")))
        self.assertEqual([], list(runs("")))
        self.assertEqual([(True, 0, 1), (False, 2, 2)], list(runs([1, 3, 4], key=lambda n: n % 2 == 1)))


class AppSettingsTestCase(RegularTestCase):

    def test_defaults(self):
        self.assertEqual(0.02, get_settings().DELTA)
        self.assertEqual(0.05, get_settings().DOCK_TOL)

    def test_override(self):
        with override_settings(DELTA=0.1):
            self.assertEqual(0.1, get_settings().DELTA)
        self.assertEqual(0.02, get_settings().DELTA)

    def test_override_unknown(self):
        with self.assertRaises(AssertionError):
            with override_settings(DELTAA=0.1):
                pass

    def test_missing_attribute(self):
        with self.assertRaises(AttributeError):
            get_settings().NO_SUCH_SETTING


class MiscTestCase(RegularTestCase):

    def test_time_to_logger(self):
        with self.assertLogs("guidepath.performance.tests", level="INFO") as cm:
            with time_to_logger(logging.getLogger("guidepath.performance.tests"), "nothing"):
                pass
        self.assertTrue(cm.output[0].endswith("ms nothing"))

    def test_safety_violation_message(self):
        e = SafetyViolation(0.25, "x=(e1, 0.5) y=(e1, 0.51)")
        self.assertEqual("diagonal guard breached at t=0.250000000 (x=(e1, 0.5) y=(e1, 0.51))", str(e))
