from ...imports import *
from .delay_csv import *
from .phasor_csv import *


# construct a dictionary of available readers
available_readers = {k: globals()[k] for k in globals() if k[0:5] == "from_"}


def guess_reader(filepath, format=None):
    """
    A wrapper to guess the appropriate reader from the filename
    (and possibly an explicitly-set file format string).

    Parameters
    ----------
    filepath : str
        The path to the file.
    format : str, None
        The file format to use.
    """
    from fnmatch import fnmatch

    f = os.path.basename(str(filepath)).lower()

    # if format='abcdefgh', return the `from_abcdefgh` function
    if format is not None:
        try:
            return available_readers[f"from_{format}"]
        except KeyError:
            raise ConfigurationError(
                f"""
            There's no reader for format='{format}'.
            Please choose from {[k[5:] for k in available_readers]}.
            """
            )
    # does it look like a synchrophasor series?
    elif fnmatch(f, "*phasor*.csv"):
        return from_phasor_csv
    # does it look like a table of delay records?
    elif fnmatch(f, "*.csv") or fnmatch(f, "*.txt"):
        return from_delay_csv
    else:
        raise ConfigurationError(
            f"""
        We're having trouble guessing the input format from the filename
        {filepath}
        Please try specifying a `format=` keyword to your call.
        """
        )
