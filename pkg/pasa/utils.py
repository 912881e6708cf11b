import copy
import random

import numpy as np
import torch

from pasa.errors import InputError


def as_vector(array_like, n=None, name="vector"):
    """Convert a 1d array-like (list, tuple, np.ndarray, torch.Tensor) to a
    float64 np.ndarray

    Args:
        array_like: the input
        n: (int) if not None, the required length
        name: (str) used in error messages
    Returns:
        v: a fresh 1d float64 np.ndarray with finite entries
    """
    if isinstance(array_like, torch.Tensor):
        array_like = array_like.detach().cpu().numpy()
    v = np.array(array_like, dtype=np.float64)
    if v.ndim == 0:
        v = v.reshape(1)
    if v.ndim > 1 and 1 in v.shape:
        v = v.flatten()
    if v.ndim != 1:
        raise InputError(f"{name} must be 1-dimensional, got shape {v.shape}.")
    if n is not None and v.shape[0] != n:
        raise InputError(f"{name} must have length {n}, not {v.shape[0]}.")
    if not np.all(np.isfinite(v)):
        raise InputError(f"{name} contains non-finite entries.")
    return v


def as_matrix(array_like, n_cols=None, name="matrix"):
    """Convert a 2d array-like to a float64 np.ndarray with finite entries.

    An empty input (e.g. []) becomes a [0, n_cols] matrix when n_cols is given.
    """
    M = np.array(array_like, dtype=np.float64)
    if M.size == 0 and n_cols is not None:
        return np.zeros((0, n_cols))
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.ndim != 2:
        raise InputError(f"{name} must be 2-dimensional, got shape {M.shape}.")
    if n_cols is not None and M.shape[1] != n_cols:
        raise InputError(f"{name} must have {n_cols} columns, not {M.shape[1]}.")
    if not np.all(np.isfinite(M)):
        raise InputError(f"{name} contains non-finite entries.")
    return M


def as_index_set(indices, m=None):
    """Normalize an iterable of row indices to an ascending, duplicate-free tuple

    Args:
        indices: an iterable of ints
        m: (int) if not None, every index must lie in [0, m)
    """
    S = tuple(sorted(set(int(i) for i in indices)))
    if m is not None and S and (S[0] < 0 or S[-1] >= m):
        raise InputError(f"Index set {S} out of range for {m} constraints.")
    return S


def recursive_merge_dicts(x, y, misses="report", verbose=None):
    """
    Merge dictionary y into a copy of x, overwriting elements of x when there
    is a conflict, except if the element is a dictionary, in which case recurse.
    Keys of y may name a leaf anywhere inside x (e.g. {"alpha": 2.0} updates
    x["solve_config"]["gpa_config"]["alpha"]).

    misses: what to do if a key in y is not in x
        'insert'    -> set x[key] = value
        'exception' -> raise an InputError
        'report'    -> print the name of the missing key
        'ignore'    -> do nothing
    verbose: If verbose is None, look for a value for verbose in y first, then x

    Example:
        >>> recursive_merge_dicts({"a": {"b": 1}, "c": 2}, {"b": 3})
        {'a': {'b': 3}, 'c': 2}
    """

    def place(z, key, value, verbose):
        """Set key in z or in the first nested dict holding it; True if placed"""
        if key in z:
            if isinstance(z[key], dict):
                if not isinstance(value, dict):
                    raise InputError(
                        f"Attempted to overwrite dict {key} with non-dict: {value}"
                    )
                # An empty dict replaces the whole sub-config
                if value:
                    merge(z[key], value, misses, verbose)
                else:
                    z[key] = value
            else:
                if verbose > 1 and key != "verbose" and z[key] != value:
                    print(f"Overwriting {key}={z[key]} to {key}={value}")
                z[key] = value
            return True
        return any(
            place(sub, key, value, verbose)
            for sub in z.values()
            if isinstance(sub, dict)
        )

    def merge(z, y, misses, verbose):
        for key, value in y.items():
            if place(z, key, value, verbose):
                continue
            msg = f'Could not find kwarg "{key}" in destination dict.'
            if misses == "insert":
                z[key] = value
            elif misses == "exception":
                raise InputError(msg)
            elif misses == "report":
                print(msg)

    if verbose is None:
        verbose = y.get("verbose", x.get("verbose", 1))

    z = copy.deepcopy(x)
    merge(z, y, misses, verbose)
    return z


def flatten_config(config):
    """Collect the leaves of a nested config dict into one flat dict"""
    flat = {}
    for k, v in config.items():
        if isinstance(v, dict):
            flat.update(flatten_config(v))
        else:
            flat[k] = v
    return flat


def add_flags_from_config(parser, config_dict, whitelist=None):
    """
    Adds a flag to an ArgumentParser for each leaf parameter in a (nested) config.

    Underscores become dashes in the flag name (max_iter -> --max-iter) while the
    dest keeps the config name. Defaults are None so that only flags the user
    actually passed are merged back into the config.

    Args:
        parser: an argparse.ArgumentParser (or subparser)
        config_dict: the config whose leaves provide names and value types
        whitelist: (list) if not None, only these leaves become flags
    """
    for param, default in flatten_config(config_dict).items():
        if whitelist is not None and param not in whitelist:
            continue
        if param == "verbose" or default is None:
            continue
        if isinstance(default, bool):
            kind = str2bool
        else:
            kind = type(default)
        parser.add_argument(
            f"--{param.replace('_', '-')}",
            dest=param,
            type=kind,
            default=None,
            help=f"(default: {default})",
        )
    return parser


def str2bool(string):
    if string == "0" or string.lower() == "false":
        return False
    elif string == "1" or string.lower() == "true":
        return True
    else:
        raise InputError(f"Invalid value {string} for boolean flag")


def set_seed(seed):
    seed = int(seed)
    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)


def format_number(value, digits=10):
    """Stable text rendering of a float for the CLI"""
    return f"{float(value):.{digits}g}"


def format_vector(v, digits=10):
    return " ".join(format_number(x, digits) for x in v)
