from ...imports import *

__all__ = ["to_df"]


def to_df(self):
    """
    Convert to a pandas DataFrame, one row per frame.

    Returns
    -------
    df : pd.DataFrame
        Every framelike array as a column.
    """
    df = pd.DataFrame({k: v for k, v in self.framelike.items()})
    if self.name is not None:
        df.attrs["name"] = self.name
    return df
