import time

from pasa.errors import InputError

LOG_UNITS = ("iterations", "seconds")


def format_metric(name, value):
    """'E=2.500e-01' for floats, 'phase=2' for everything else"""
    if isinstance(value, float):
        return f"{name}={value:0.3e}"
    return f"{name}={value}"


class Logger(object):
    """Decides when to report solver progress and reports it

    Args:
        config: a logger_config dict with keys log_unit ('iterations' or
            'seconds') and log_every (0 disables reporting)
        writer: an optional LogWriter receiving every reported scalar
        verbose: (bool) print one line per report

    The driver calls check() once per iteration and log() when it returns True.
    """

    def __init__(self, config, writer=None, verbose=True):
        self.log_unit = config["log_unit"]
        if self.log_unit not in LOG_UNITS:
            raise InputError(f"Unrecognized log_unit: {self.log_unit}")
        self.log_every = config["log_every"]
        self.writer = writer
        self.verbose = verbose
        self.iteration = 0
        self.log_count = 0
        self.timer = Timer()
        self._since_log = 0

    def check(self):
        """Counts one iteration; True once log_every units have passed since the
        last report"""
        self.iteration += 1
        self._since_log += 1
        if not self.log_every:
            return False
        if self.log_unit == "seconds":
            return self.timer.elapsed() >= self.log_every
        return self._since_log >= self.log_every

    def log(self, metrics):
        """Print the scalars in metrics and forward them to the writer"""
        self.log_count += 1
        if self.writer is not None:
            for name, value in metrics.items():
                self.writer.add_scalar(name, value, self.iteration)
        if self.verbose:
            scores = ", ".join(format_metric(k, v) for k, v in metrics.items())
            print(f"[{self.header()}]: {scores}")
        self._since_log = 0
        self.timer.update()

    def header(self):
        if self.log_unit == "seconds":
            return f"{int(self.timer.total_elapsed())} sec ({self.iteration} ite)"
        return f"{self.iteration} ite"


class Timer(object):
    """Wall-clock time since construction and since the last update()"""

    def __init__(self):
        self.start = time.time()
        self.click = self.start

    def update(self):
        self.click = time.time()

    def elapsed(self):
        return time.time() - self.click

    def total_elapsed(self):
        return time.time() - self.start
