"""
CRC-CCITT, the check word that closes every C37.118.2 frame.

Polynomial x^16 + x^12 + x^5 + 1 (0x1021), initial value 0xFFFF,
no reflection and no final XOR. The byte-wise lookup table is
built once, on import.
"""
from ..imports import *

__all__ = ["crc16", "crc_polynomial", "crc_initial"]

crc_polynomial = 0x1021
crc_initial = 0xFFFF


def _build_table(polynomial=crc_polynomial):
    table = []
    for byte in range(256):
        crc = byte << 8
        for _ in range(8):
            if crc & 0x8000:
                crc = (crc << 1) ^ polynomial
            else:
                crc = crc << 1
        table.append(crc & 0xFFFF)
    return table


_table = _build_table()


def crc16(data, initial=crc_initial):
    """
    Calculate the 16-bit CRC of some bytes.

    Parameters
    ----------
    data : bytes
        The bytes to check.
    initial : int
        The starting register value.

    Returns
    -------
    crc : int
        The unsigned 16-bit check word.
    """
    crc = initial
    for byte in bytes(data):
        crc = ((crc << 8) & 0xFFFF) ^ _table[((crc >> 8) ^ byte) & 0xFF]
    return crc
