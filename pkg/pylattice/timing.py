"""
Wall-clock timing of experiments.
"""

import functools
import logging
import time


def _describe(args) -> str:
    "The experiment name of a configuration argument, if the first argument is one."

    if args:
        experiment = getattr(args[0], "experiment", None)
        if experiment is not None:
            return str(getattr(experiment, "value", experiment))
    return ""


def timing(func):
    "Decorator to log how long a function takes to execute."

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        ts = time.perf_counter()
        result = func(*args, **kwargs)
        te = time.perf_counter()
        logging.info("%s(%s) took %2.4f sec", func.__name__, _describe(args), te - ts)
        return result

    return wrapper
