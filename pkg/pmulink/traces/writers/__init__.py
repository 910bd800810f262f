from ...imports import *
from .delay_csv import *
from .phasor_csv import *


# construct a dictionary of available writers
available_writers = {k: globals()[k] for k in globals() if k[0:3] == "to_"}


def guess_writer(filepath, format=None):
    """
    A wrapper to guess the appropriate writer from the filename
    (and possibly an explicitly-set file format string).

    Parameters
    ----------
    filepath : str
        The path to the file to be written.
    format : str, None
        The file format to use.
    """
    from fnmatch import fnmatch

    f = os.path.basename(str(filepath)).lower()

    # if format='abcdefgh', return the `to_abcdefgh` function
    if format is not None:
        try:
            return available_writers[f"to_{format}"]
        except KeyError:
            raise ConfigurationError(
                f"""
            There's no writer for format='{format}'.
            Please choose from {[k[3:] for k in available_writers]}.
            """
            )
    elif fnmatch(f, "*phasor*.csv"):
        return to_phasor_csv
    elif fnmatch(f, "*.csv") or fnmatch(f, "*.txt"):
        return to_delay_csv
    else:
        raise ConfigurationError(
            f"""
        We're having trouble guessing the output format from the filename
        {filepath}
        Please try specifying a `format=` keyword to your `.save` call.
        """
        )
