import json
import os
import tempfile
import unittest

import numpy as np

from pasa.logging import LogWriter


class LogWriterTest(unittest.TestCase):
    def test_write(self):
        with tempfile.TemporaryDirectory() as log_dir:
            writer = LogWriter(
                log_dir=log_dir, run_dir="runs", run_name="demo", verbose=False
            )
            self.assertTrue(writer.add_scalar("E", np.float64(0.5), 1))
            writer.add_scalar("E", 0.25, 2)
            path = writer.write(
                config={"objective": len, "x0": np.array([1.0, 2.0]), "rows": (0, 1)},
                result={"status": "converged"},
            )

            run_subdir = os.path.dirname(path)
            self.assertEqual(os.path.dirname(run_subdir), os.path.join(log_dir, "runs"))
            self.assertTrue(os.path.basename(run_subdir).startswith("demo_"))
            with open(path) as f:
                log = json.load(f)
        self.assertEqual(log["run_log"]["E"], [[1, 0.5], [2, 0.25]])
        self.assertEqual(log["config"]["x0"], [1.0, 2.0])
        self.assertEqual(log["config"]["rows"], [0, 1])
        self.assertIsInstance(log["config"]["objective"], str)
        self.assertEqual(log["result"]["status"], "converged")
        self.assertIn("commit", log)

    def test_metric_whitelist(self):
        with tempfile.TemporaryDirectory() as log_dir:
            writer = LogWriter(log_dir=log_dir, writer_metrics=["E"], verbose=False)
            self.assertFalse(writer.add_scalar("f", 1.0, 1))
            self.assertTrue(writer.add_scalar("E", 1.0, 1))
            self.assertEqual(list(writer.log_dict["run_log"]), ["E"])


if __name__ == "__main__":
    unittest.main()
