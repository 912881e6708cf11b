import unittest
from unittest import mock

from pasa.logging import Logger, Timer


class FakeWriter(object):
    def __init__(self):
        self.scalars = []

    def add_scalar(self, name, value, i):
        self.scalars.append((name, value, i))


class LoggerTest(unittest.TestCase):
    def test_iterations(self):
        logger = Logger({"log_unit": "iterations", "log_every": 3}, verbose=False)
        checks = [logger.check() for _ in range(3)]
        self.assertEqual(checks, [False, False, True])
        logger.log({"E": 0.5})
        self.assertEqual(logger.log_count, 1)
        self.assertFalse(logger.check())
        self.assertEqual(logger.iteration, 4)

    def test_never(self):
        logger = Logger({"log_unit": "iterations", "log_every": 0}, verbose=False)
        self.assertFalse(any(logger.check() for _ in range(10)))

    def test_writer(self):
        writer = FakeWriter()
        logger = Logger(
            {"log_unit": "iterations", "log_every": 1}, writer=writer, verbose=False
        )
        logger.check()
        logger.log({"f": 1.0, "phase": 2})
        self.assertEqual(writer.scalars, [("f", 1.0, 1), ("phase", 2, 1)])

    def test_print(self):
        logger = Logger({"log_unit": "iterations", "log_every": 1})
        logger.check()
        with mock.patch("builtins.print") as fake_print:
            logger.log({"E": 0.25, "phase": 1})
        fake_print.assert_called_once_with("[1 ite]: E=2.500e-01, phase=1")

    def test_bad_unit(self):
        with self.assertRaises(Exception):
            Logger({"log_unit": "epochs", "log_every": 1})

    def test_timer(self):
        timer = Timer()
        self.assertGreaterEqual(timer.elapsed(), 0.0)
        self.assertGreaterEqual(timer.total_elapsed(), timer.elapsed())


if __name__ == "__main__":
    unittest.main()
