from .logger import Logger, Timer
from .writer import LogWriter

__all__ = ["Logger", "LogWriter", "Timer"]
