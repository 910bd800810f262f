"""
Define a writer for synchrophasor series CSV files.
"""
from ...imports import *

__all__ = ["to_phasor_csv"]


def to_phasor_csv(self, filepath, overwrite=True, precision=9):
    """
    Write a SynchrophasorSeries to a CSV file with
    columns `t_us, v, phi, f, rho`.

    Parameters
    ----------
    self : SynchrophasorSeries
        The object to be saved.
    filepath : str
        The path to the file to write.
    overwrite : bool
        Should an existing file be replaced?
    precision : int
        How many decimal places to write for v, phi, f, and rho.
    """
    table = Table({k: self.framelike[k] for k in ["t_us", "v", "phi", "f", "rho"]})
    for k in ["v", "phi", "f", "rho"]:
        table[k].info.format = f".{precision}f"
    try:
        table.write(filepath, format="ascii.csv", overwrite=overwrite)
    except OSError as e:
        raise StartupError(f"Couldn't write {filepath}: {e}")
