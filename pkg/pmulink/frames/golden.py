"""
Load the reference frames that ship in `pmulink/data/golden/`.
"""
from ..imports import *

__all__ = ["read_golden", "available_golden", "parse_hex", "golden_directory"]

golden_directory = os.path.join(data_directory, "golden")


def available_golden():
    """
    List the names of the golden frames.
    """
    files = glob.glob(os.path.join(golden_directory, "*.hex"))
    return sorted([os.path.basename(f).replace(".hex", "") for f in files])


def parse_hex(text):
    """
    Turn whitespace-separated hex (with optional # comments) into bytes.

    Parameters
    ----------
    text : str
        Something like "AA01 001A  # sync and size".
    """
    lines = [l.split("#")[0] for l in str(text).splitlines()]
    digits = "".join("".join(lines).split())
    try:
        return bytes.fromhex(digits)
    except ValueError:
        raise UsageError(f"'{digits}' isn't an even number of hex digits.")


def read_golden(name):
    """
    Read one golden frame.

    Parameters
    ----------
    name : str
        One of `available_golden()`, like "single_phase".

    Returns
    -------
    frame : bytes
    """
    path = os.path.join(golden_directory, f"{name}.hex")
    if not os.path.exists(path):
        raise UsageError(
            f"""
        There's no golden frame called '{name}'.
        Please choose from {available_golden()}.
        """
        )
    with open(path) as f:
        return parse_hex(f.read())
