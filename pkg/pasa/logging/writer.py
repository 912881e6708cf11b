import json
import os
from subprocess import DEVNULL, CalledProcessError, check_output
from time import strftime

import numpy as np


def git_commit():
    """The short hash of HEAD, or None outside a git checkout"""
    try:
        commit = check_output(["git", "rev-parse", "--short", "HEAD"], stderr=DEVNULL)
    except (CalledProcessError, OSError):
        return None
    return commit.decode().strip()


def jsonable(obj):
    """obj with arrays, tuples and numpy scalars turned into plain JSON values and
    callables (objectives, gradients) into their repr"""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if callable(obj):
        return str(obj)
    return obj


class LogWriter(object):
    """Collects the config, the logged scalars and the result of one solver run
    and writes them to a single JSON file

    Args:
        log_dir: (str) base directory (default: the working directory)
        run_dir: (str) sub-directory (default: the start date, %Y_%m_%d)
        run_name: (str) prefix of the run directory; the start time
            (%H_%M_%S) is always appended
        writer_metrics: (list) if nonempty, only these scalars are recorded
        verbose: (bool) print the log path when writing

    The log lands in log_dir/run_dir/run_name_HH_MM_SS/log.json.
    """

    def __init__(
        self, log_dir=None, run_dir=None, run_name=None, writer_metrics=(), verbose=True
    ):
        start_date, start_time = strftime("%Y_%m_%d"), strftime("%H_%M_%S")
        run_name = f"{run_name}_{start_time}" if run_name else start_time
        self.log_subdir = os.path.join(
            log_dir or os.getcwd(), run_dir or start_date, run_name
        )
        os.makedirs(self.log_subdir, exist_ok=True)
        self.writer_metrics = set(writer_metrics)
        self.verbose = verbose
        self.log_dict = {
            "start_date": start_date,
            "start_time": start_time,
            "commit": git_commit(),
            "config": None,
            "run_log": {},
            "result": None,
        }

    @property
    def log_path(self):
        return os.path.join(self.log_subdir, "log.json")

    def add_scalar(self, name, value, iteration):
        """Records (iteration, value); returns False if name is filtered out"""
        if self.writer_metrics and name not in self.writer_metrics:
            return False
        run_log = self.log_dict["run_log"]
        run_log.setdefault(name, []).append((int(iteration), jsonable(value)))
        return True

    def write(self, config=None, result=None):
        """Dumps the log and returns its path"""
        if config is not None:
            self.log_dict["config"] = jsonable(config)
        if result is not None:
            self.log_dict["result"] = jsonable(result)
        if self.verbose:
            print(f"Writing log to {self.log_path}")
        with open(self.log_path, "w") as f:
            json.dump(self.log_dict, f, indent=1)
        return self.log_path
