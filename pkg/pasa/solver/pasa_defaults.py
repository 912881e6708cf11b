pasa_default_config = {
    # GENERAL
    "seed": None,
    "verbose": True,
    # SOLVE
    "solve_config": {
        # Terminate when E(x) <= eps
        "eps": 1e-8,
        # Branching: phase two is entered when e >= theta * E
        "theta": 0.1,
        # theta <- mu * theta when U is empty and e < theta * E
        "mu": 0.5,
        "max_iter": 10000,
        # Phase one (gradient projection with Armijo backtracking)
        "gpa_config": {
            "alpha": 1.0,
            "delta": 1e-4,
            "eta": 0.5,
            # s >= eta^backtrack_cap; exceeding it is a line-search failure
            "backtrack_cap": 60,
        },
        # Phase two (projected gradient on the face)
        "lco_config": {
            # 'fixed' uses alpha every iteration; 'bb' starts each line search
            # from a Barzilai-Borwein step clipped to [bb_min, bb_max]
            "step_rule": "fixed",
            "bb_min": 1e-4,
            "bb_max": 1e4,
        },
        # Undecided set U(x) = {lambda_i >= E^gamma and slack_i >= E^beta}
        "undecided_config": {"gamma": 0.5, "beta": 1.5},
        # Finite-difference gradient check at x0 (debug mode)
        "check_gradient": False,
        "progress_bar": False,
        # Logger (see pasa/logging/logger.py)
        "logger": True,
        "logger_config": {
            "log_unit": "iterations",  # ['iterations', 'seconds']
            "log_every": 100,
        },
        # Writer (see pasa/logging/writer.py); None disables the JSON log
        "writer": None,
        "writer_config": {"log_dir": "logs", "run_dir": None, "run_name": None},
    },
    # PROJECTION
    "projection_config": {
        "act_tol": 1e-10,
        "feas_tol": 1e-9,
        "rank_tol": 1e-12,
        # None means 50 * (m + 1) working-set changes
        "max_changes": None,
        "phase1_sweeps": 10,
    },
}
