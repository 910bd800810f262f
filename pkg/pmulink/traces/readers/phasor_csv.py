from ...imports import *

__all__ = ["from_phasor_csv"]


def from_phasor_csv(series, filepath, **kw):
    """
    Populate a SynchrophasorSeries from a CSV with
    columns `t_us, v, phi, f, rho`.

    Parameters
    ----------
    series : SynchrophasorSeries
        The object to be populated.
    filepath : str
        The path to the file.
    """
    if not os.path.exists(filepath):
        raise StartupError(f"The synchrophasor file {filepath} doesn't exist.")

    data = ascii.read(filepath, format="csv", **kw)
    framelike = {"t_us": np.array(data["t_us"], dtype=np.int64)}
    for k in ["v", "phi", "f", "rho"]:
        framelike[k] = np.array(data[k], dtype=float)
    for k in data.colnames:
        if k not in framelike:
            framelike[k] = np.array(data[k])

    series._initialize_from_dictionaries(
        framelike=framelike, metadata=dict(filename=filepath)
    )
