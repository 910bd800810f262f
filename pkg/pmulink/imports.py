# basics
import numpy as np

import copy, os, glob, struct, math
from dataclasses import dataclass, field, fields, replace
from tqdm.auto import tqdm

import warnings, textwrap


def custom_formatwarning(message, *args, **kwargs):
    return f"📡🤖 {textwrap.dedent(str(message)).strip()}\n\n"


original_warning_format = warnings.formatwarning


def cheerfully_suggest(*args, **kwargs):
    warnings.formatwarning = custom_formatwarning
    warnings.warn(*args, **kwargs)
    warnings.formatwarning = original_warning_format


# astropy
from astropy.io import ascii
from astropy.table import Table
from astropy.time import Time

# for the carrier-side delay model
from scipy.stats import truncnorm, norm

# for converting traces to pandas dataframes
import pandas as pd

from .units import *
from .errors import *

# define a directory where we can put any necessary data files
data_directory = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

# everything inside the package counts time in integer microseconds
microseconds_per_second = 1_000_000
microseconds_per_millisecond = 1_000


def wrap_phase(phase):
    """
    Wrap an angle (or array of angles) into [-pi, pi).

    Parameters
    ----------
    phase : float, array
        The angle(s), in radians.

    Returns
    -------
    wrapped : float, array
        The same angle(s), folded into [-pi, pi).
    """
    wrapped = np.mod(np.asarray(phase, dtype=float) + np.pi, 2 * np.pi) - np.pi

    # np.mod can round up to exactly 2pi for tiny negative inputs
    wrapped = np.where(wrapped >= np.pi, wrapped - 2 * np.pi, wrapped)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped
