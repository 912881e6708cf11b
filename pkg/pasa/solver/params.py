from dataclasses import asdict, dataclass
from typing import Optional

from pasa.errors import InputError
from pasa.solver.pasa_defaults import pasa_default_config
from pasa.utils import recursive_merge_dicts

STEP_RULES = ("fixed", "bb")


@dataclass(frozen=True)
class PasaParams:
    """The validated, flat, immutable view of a solver config

    Build one with PasaParams.from_config(config) or PasaParams(**fields);
    every interval constraint is checked at construction.
    """

    eps: float = 1e-8
    theta0: float = 0.1
    mu: float = 0.5
    delta: float = 1e-4
    eta: float = 0.5
    alpha: float = 1.0
    gamma: float = 0.5
    beta: float = 1.5
    max_iter: int = 10000
    backtrack_cap: int = 60
    step_rule: str = "fixed"
    bb_min: float = 1e-4
    bb_max: float = 1e4
    act_tol: float = 1e-10
    feas_tol: float = 1e-9
    rank_tol: float = 1e-12
    max_changes: Optional[int] = None
    phase1_sweeps: int = 10

    def __post_init__(self):
        def check(name, ok, interval):
            if not ok:
                raise InputError(
                    f"{name}={getattr(self, name)} must lie in {interval}."
                )

        check("eps", self.eps >= 0, "[0, inf)")
        for name in ("theta0", "mu", "delta", "eta", "gamma"):
            value = getattr(self, name)
            check(name, 0 < value < 1, "(0, 1)")
        check("alpha", self.alpha > 0, "(0, inf)")
        check("beta", 1 < self.beta < 2, "(1, 2)")
        check("max_iter", self.max_iter >= 0, "{0, 1, 2, ...}")
        check("backtrack_cap", self.backtrack_cap >= 0, "{0, 1, 2, ...}")
        check("step_rule", self.step_rule in STEP_RULES, str(STEP_RULES))
        check("bb_min", 0 < self.bb_min <= self.bb_max, "(0, bb_max]")
        for name in ("act_tol", "feas_tol", "rank_tol"):
            check(name, getattr(self, name) > 0, "(0, inf)")
        if self.max_changes is not None:
            check("max_changes", self.max_changes > 0, "{1, 2, ...}")
        check("phase1_sweeps", self.phase1_sweeps >= 1, "{1, 2, ...}")

    @classmethod
    def from_config(cls, config):
        """Flatten a (possibly partial) nested config into PasaParams"""
        config = recursive_merge_dicts(pasa_default_config, config, misses="ignore")
        solve = config["solve_config"]
        gpa = solve["gpa_config"]
        lco = solve["lco_config"]
        undecided = solve["undecided_config"]
        proj = config["projection_config"]
        return cls(
            eps=float(solve["eps"]),
            theta0=float(solve["theta"]),
            mu=float(solve["mu"]),
            delta=float(gpa["delta"]),
            eta=float(gpa["eta"]),
            alpha=float(gpa["alpha"]),
            gamma=float(undecided["gamma"]),
            beta=float(undecided["beta"]),
            max_iter=int(solve["max_iter"]),
            backtrack_cap=int(gpa["backtrack_cap"]),
            step_rule=lco["step_rule"],
            bb_min=float(lco["bb_min"]),
            bb_max=float(lco["bb_max"]),
            act_tol=float(proj["act_tol"]),
            feas_tol=float(proj["feas_tol"]),
            rank_tol=float(proj["rank_tol"]),
            max_changes=proj["max_changes"],
            phase1_sweeps=int(proj["phase1_sweeps"]),
        )

    def projection_config(self):
        """Keyword arguments for pasa.projection"""
        return {
            "act_tol": self.act_tol,
            "feas_tol": self.feas_tol,
            "rank_tol": self.rank_tol,
            "max_changes": self.max_changes,
            "phase1_sweeps": self.phase1_sweeps,
        }

    def to_dict(self):
        return asdict(self)
