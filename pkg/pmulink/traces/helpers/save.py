from ..writers import *

__all__ = ["save"]


def save(self, filepath="records.csv", format=None, **kw):
    """
    Save this object out to a file.

    Parameters
    ----------
    filepath : str
        The file to write.
    format : str, optional
        The file format to write (like "delay_csv" or "phasor_csv").
        If `None`, it will be guessed from the filepath.
    **kw : dict, optional
        All other keywords will be passed to the writer.
    """
    writer = guess_writer(filepath, format=format or self._default_format)
    writer(self, filepath, **kw)
