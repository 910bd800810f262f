"""
Define a writer for delay record CSV files.
"""
from ...imports import *

__all__ = ["to_delay_csv", "record_columns", "budget_columns"]

record_columns = ["stream_id", "seq", "t_us", "t_prime_us", "delay_us", "size", "status"]
budget_columns = [f"delta{i}_us" for i in range(1, 7)]


def to_delay_csv(self, filepath, overwrite=True, include_budget=False):
    """
    Write a DelayTrace to a CSV file, one row per frame.

    Parameters
    ----------
    self : DelayTrace
        The object to be saved.
    filepath : str
        The path to the file to write.
    overwrite : bool
        Should an existing file be replaced?
    include_budget : bool
        Also write the delta1_us ... delta6_us columns
        (where they're known)?
    """
    columns = list(record_columns)
    if include_budget:
        columns += [k for k in budget_columns if k in self.framelike]

    table = Table({k: self.framelike[k] for k in columns})
    try:
        table.write(filepath, format="ascii.csv", overwrite=overwrite)
    except OSError as e:
        raise StartupError(f"Couldn't write {filepath}: {e}")
