from ...imports import *

__all__ = ["from_delay_csv"]

# the integer columns of a delay record file
_integer_columns = [
    "stream_id",
    "seq",
    "t_us",
    "t_prime_us",
    "delay_us",
    "size",
    "delta1_us",
    "delta2_us",
    "delta3_us",
    "delta4_us",
    "delta5_us",
    "delta6_us",
    "buffer_delay_us",
    "group",
]


def from_delay_csv(trace, filepath, **kw):
    """
    Populate a DelayTrace from a delay record CSV,
    with columns `stream_id,seq,t_us,t_prime_us,delay_us,size,status`
    (plus, optionally, the delay budget columns).

    Parameters
    ----------
    trace : DelayTrace
        The object to be populated.
    filepath : str
        The path to the file.
    """
    if not os.path.exists(filepath):
        raise StartupError(f"The delay record file {filepath} doesn't exist.")

    data = ascii.read(
        filepath,
        format="csv",
        converters={"status": [ascii.convert_numpy(str)]},
        **kw,
    )

    framelike = {}
    for k in data.colnames:
        if k == "status":
            framelike[k] = np.array(data[k], dtype=str)
        elif k in _integer_columns:
            framelike[k] = np.array(data[k], dtype=np.int64)
        else:
            framelike[k] = np.array(data[k])

    trace._initialize_from_dictionaries(
        framelike=framelike, metadata=dict(filename=filepath)
    )
