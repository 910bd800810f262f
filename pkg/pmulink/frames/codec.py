"""
Bit-exact encoder and decoder for IEEE C37.118.2 data frames,
using fixed 16-bit polar phasors and a CRC-CCITT check word.

Layout (big-endian):

    SYNC(2) FRAMESIZE(2) IDCODE(2) SOC(4) FRACSEC(4) STAT(2)
    PHASORS(4 per phasor) FREQ(2) DFREQ(2) CHK(2)

so one phasor makes a 26-byte frame and three phasors make 42.
"""
from ..imports import *
from ..configuration import register_config
from ..signals.estimator import Synchrophasor
from .crc import crc16

__all__ = [
    "ScalingConfig",
    "DataFrame",
    "encode",
    "decode",
    "pack_datagram",
    "split_datagram",
    "split_leading_frames",
    "hexdump",
    "frame_size_for",
    "sync_data_frame",
]

# data frame, version 1
sync_data_frame = 0xAA01

_header = struct.Struct(">HHHIIH")
_phasor = struct.Struct(">Hh")
_tail = struct.Struct(">hh")
_check = struct.Struct(">H")

# angles are stored as radians * 1e4
angle_scale = 10_000
# FREQ is a deviation in mHz, DFREQ is rho * 100
freq_scale = 1000
dfreq_scale = 100

_int16_range = (-(2**15), 2**15 - 1)


def frame_size_for(phase_count):
    """
    The number of bytes in a data frame carrying `phase_count` phasors.
    """
    return _header.size + _phasor.size * phase_count + _tail.size + _check.size


@register_config
@dataclass
class ScalingConfig:
    """
    Out-of-band scaling for the fixed-format frame fields.

    Parameters
    ----------
    phunit : float
        Volts per count of the 16-bit phasor magnitude.
        The default puts full scale at 2 V.
    time_base : int
        FRACSEC ticks per second (default 1 µs ticks).
    nominal_frequency : float
        The f0 (Hz) that FREQ is a deviation from.
    """

    phunit: float = 2.0 / 65535
    time_base: int = 1_000_000
    nominal_frequency: float = 50.0

    def __post_init__(self):
        if not self.phunit > 0:
            raise ConfigurationError(f"phunit={self.phunit} must be > 0.")
        if not self.time_base > 0 or int(self.time_base) != self.time_base:
            raise ConfigurationError(
                f"time_base={self.time_base} must be a positive integer."
            )
        if self.time_base > 2**24:
            raise ConfigurationError(
                f"time_base={self.time_base} doesn't fit the 24-bit FRACSEC count."
            )
        if not self.nominal_frequency > 0:
            raise ConfigurationError(
                f"nominal_frequency={self.nominal_frequency} must be > 0."
            )
        self.time_base = int(self.time_base)


@dataclass(frozen=True)
class DataFrame:
    """
    A decoded C37.118.2 data frame, holding the raw integer fields.

    Use `.timestamp()` and `.to_synchrophasor()` to get physical values.
    """

    sync: int
    frame_size: int
    idcode: int
    soc: int
    fracsec: int
    time_quality: int
    stat: int
    phasors: tuple
    freq: int
    dfreq: int
    chk: int

    @property
    def phase_count(self):
        return len(self.phasors)

    def timestamp(self, scaling=None):
        """
        The frame's t_i, in integer µs since the UNIX epoch.
        """
        scaling = scaling or ScalingConfig()
        fraction = int(
            np.round(self.fracsec * microseconds_per_second / scaling.time_base)
        )
        return self.soc * microseconds_per_second + fraction

    def to_synchrophasor(self, scaling=None):
        """
        Convert phase A of this frame back into a `Synchrophasor`.

        Parameters
        ----------
        scaling : ScalingConfig
            The same scaling used to encode the frame.
        """
        scaling = scaling or ScalingConfig()
        magnitude, angle = self.phasors[0]
        return Synchrophasor(
            magnitude=magnitude * scaling.phunit,
            phase=wrap_phase(angle / angle_scale),
            frequency=scaling.nominal_frequency + self.freq / freq_scale,
            rocof=self.dfreq / dfreq_scale,
            timestamp=self.timestamp(scaling),
        )


def _to_int16(value, name):
    count = int(np.round(value))
    if not _int16_range[0] <= count <= _int16_range[1]:
        raise FrameRangeError(
            f"""
        {name} = {value} doesn't fit in a signed 16-bit field
        (it would need a count of {count}).
        """
        )
    return count


def encode(s, idcode=1, scaling=None, phase_count=1, time_quality=0):
    """
    Encode a synchrophasor into a C37.118.2 data frame.

    Parameters
    ----------
    s : Synchrophasor
        The measurement to send.
    idcode : int
        The 16-bit stream identifier.
    scaling : ScalingConfig, optional
        Field scaling. Defaults to `ScalingConfig()`.
    phase_count : int
        1 for a single-phase frame (26 bytes), 3 for a
        three-phase frame (42 bytes). Phases B and C are
        phase A rotated by -120 and +120 degrees.
    time_quality : int
        The 8-bit time-quality flags stored above FRACSEC.

    Returns
    -------
    frame : bytes
    """
    scaling = scaling or ScalingConfig()
    if phase_count not in [1, 3]:
        raise ConfigurationError(f"phase_count={phase_count} must be 1 or 3.")
    if not 0 <= idcode <= 0xFFFF:
        raise FrameRangeError(f"idcode={idcode} doesn't fit in 16 bits.")

    # SOC + FRACSEC
    if s.timestamp < 0:
        raise FrameRangeError(
            f"t_i = {s.timestamp} µs is before the UNIX epoch; SOC can't hold it."
        )
    soc, microseconds = divmod(int(s.timestamp), microseconds_per_second)
    count = int(np.round(microseconds * scaling.time_base / microseconds_per_second))
    if count >= scaling.time_base:
        soc, count = soc + 1, count - scaling.time_base
    if soc > 0xFFFFFFFF:
        raise FrameRangeError(f"SOC = {soc} doesn't fit in 32 bits.")
    fracsec = ((time_quality & 0xFF) << 24) | count

    # phasors
    magnitude = int(np.round(s.magnitude / scaling.phunit))
    if magnitude > 0xFFFF:
        raise FrameRangeError(
            f"""
        The magnitude {s.magnitude} V needs {magnitude} counts at
        phunit={scaling.phunit}, more than a 16-bit field can hold.
        """
        )
    angles = [s.phase]
    if phase_count == 3:
        angles += [wrap_phase(s.phase - 2 * np.pi / 3), wrap_phase(s.phase + 2 * np.pi / 3)]
    phasors = b"".join(
        _phasor.pack(magnitude, _to_int16(a * angle_scale, "angle")) for a in angles
    )

    freq = _to_int16((s.frequency - scaling.nominal_frequency) * freq_scale, "FREQ")
    dfreq = _to_int16(s.rocof * dfreq_scale, "DFREQ")

    body = (
        _header.pack(
            sync_data_frame,
            frame_size_for(phase_count),
            idcode,
            soc,
            fracsec,
            0,
        )
        + phasors
        + _tail.pack(freq, dfreq)
    )
    return body + _check.pack(crc16(body))


def decode(data):
    """
    Decode one C37.118.2 data frame.

    The checks run in this order, so that any corruption of
    the bytes (even inside SYNC or FRAMESIZE) surfaces as a
    CRC failure:

    1. fewer than 4 bytes -> TruncatedFrameError
    2. CHK != CRC of everything before it -> IntegrityError
    3. SYNC != 0xAA01 -> MalformedFrameError
    4. FRAMESIZE != number of bytes -> TruncatedFrameError
    5. not 1 or 3 phasors -> MalformedFrameError

    Parameters
    ----------
    data : bytes
        The bytes of exactly one frame.

    Returns
    -------
    frame : DataFrame
    """
    data = bytes(data)
    if len(data) < 4:
        raise TruncatedFrameError(
            f"{len(data)} bytes is too short to hold even a frame header."
        )

    chk = _check.unpack(data[-2:])[0]
    if crc16(data[:-2]) != chk:
        raise IntegrityError(
            f"CHK 0x{chk:04X} doesn't match the CRC 0x{crc16(data[:-2]):04X} of the frame."
        )

    sync, frame_size = struct.unpack(">HH", data[:4])
    if sync != sync_data_frame:
        raise MalformedFrameError(
            f"SYNC is 0x{sync:04X}, but data frames start with 0x{sync_data_frame:04X}."
        )
    if frame_size != len(data):
        raise TruncatedFrameError(
            f"FRAMESIZE says {frame_size} bytes, but {len(data)} bytes arrived."
        )

    nphasors, leftover = divmod(
        frame_size - _header.size - _tail.size - _check.size, _phasor.size
    )
    if leftover != 0 or nphasors not in [1, 3]:
        raise MalformedFrameError(
            f"A {frame_size}-byte frame can't hold 1 or 3 fixed-format phasors."
        )

    _, _, idcode, soc, fracsec, stat = _header.unpack(data[: _header.size])
    phasors = tuple(
        _phasor.unpack_from(data, _header.size + i * _phasor.size)
        for i in range(nphasors)
    )
    freq, dfreq = _tail.unpack_from(data, _header.size + nphasors * _phasor.size)
    return DataFrame(
        sync=sync,
        frame_size=frame_size,
        idcode=idcode,
        soc=soc,
        fracsec=fracsec & 0x00FFFFFF,
        time_quality=fracsec >> 24,
        stat=stat,
        phasors=phasors,
        freq=freq,
        dfreq=dfreq,
        chk=chk,
    )


def pack_datagram(frames):
    """
    Concatenate encoded frames into one datagram (for example,
    two 26-byte frames make a 52-byte datagram).
    """
    return b"".join(bytes(f) for f in frames)


def split_leading_frames(data):
    """
    Split off as many whole frames as the FRAMESIZE fields allow.

    Parameters
    ----------
    data : bytes
        One or more concatenated frames, maybe damaged at the end.

    Returns
    -------
    frames : list of bytes
        The frames that split cleanly (still undecoded).
    tail : bytes
        Whatever couldn't be split (empty if everything could).
    error : FrameError, None
        Why the tail couldn't be split.
    """
    data = bytes(data)
    frames = []
    offset = 0
    try:
        while offset < len(data):
            size = _next_frame_size(data, offset)
            frames.append(data[offset : offset + size])
            offset += size
    except FrameError as e:
        return frames, data[offset:], e
    return frames, b"", None


def _next_frame_size(data, offset):
    remaining = len(data) - offset
    if remaining < 4:
        raise TruncatedFrameError(
            f"Only {remaining} bytes are left at offset {offset}; no room for a header."
        )
    size = struct.unpack(">H", data[offset + 2 : offset + 4])[0]
    if size < 4:
        raise MalformedFrameError(
            f"FRAMESIZE = {size} at offset {offset} can't describe a frame."
        )
    if size > remaining:
        raise TruncatedFrameError(
            f"The frame at offset {offset} claims {size} bytes, but only {remaining} are left."
        )
    return size


def split_datagram(data):
    """
    Split a datagram into frames on FRAMESIZE boundaries.

    Parameters
    ----------
    data : bytes
        One or more concatenated frames.

    Returns
    -------
    frames : list of bytes
        The individual (still undecoded) frames.
    """
    frames, tail, error = split_leading_frames(data)
    if error is not None:
        raise error
    if len(frames) == 0:
        raise TruncatedFrameError("An empty datagram holds no frames.")
    return frames


def hexdump(data, scaling=None):
    """
    Describe a frame field by field, for debugging.

    Parameters
    ----------
    data : bytes
        One encoded frame (it doesn't need to be valid).
    scaling : ScalingConfig, optional
        Used to translate the raw counts into physical units.

    Returns
    -------
    text : str
        A multi-line description.
    """
    scaling = scaling or ScalingConfig()
    data = bytes(data)
    lines = [f"{'offset':<8}{'field':<12}{'raw':<12}value"]

    def describe(offset, name, width, meaning=""):
        raw = data[offset : offset + width]
        lines.append(f"{offset:04d}    {name:<12}{raw.hex():<12}{meaning}")

    if len(data) < _header.size + _tail.size + _check.size:
        lines.append(f"(only {len(data)} bytes) {data.hex()}")
    else:
        sync, size, idcode, soc, fracsec, stat = _header.unpack(data[: _header.size])
        describe(0, "SYNC", 2, "data frame, version 1" if sync == sync_data_frame else "not a data frame")
        describe(2, "FRAMESIZE", 2, f"{size} bytes")
        describe(4, "IDCODE", 2, f"stream {idcode}")
        describe(6, "SOC", 4, Time(soc, format="unix").iso)
        describe(10, "FRACSEC", 4, f"{fracsec & 0xFFFFFF}/{scaling.time_base} s, quality 0x{fracsec >> 24:02X}")
        describe(14, "STAT", 2, f"0x{stat:04X}")
        nphasors = (len(data) - _header.size - _tail.size - _check.size) // _phasor.size
        for i in range(nphasors):
            offset = _header.size + i * _phasor.size
            magnitude, angle = _phasor.unpack_from(data, offset)
            describe(
                offset,
                f"PHASOR {'ABC'[i] if nphasors == 3 else i}",
                4,
                f"{magnitude * scaling.phunit:.6f} V at {angle / angle_scale:+.4f} rad",
            )
        offset = _header.size + nphasors * _phasor.size
        freq, dfreq = _tail.unpack_from(data, offset)
        describe(offset, "FREQ", 2, f"{scaling.nominal_frequency + freq / freq_scale:.3f} Hz")
        describe(offset + 2, "DFREQ", 2, f"{dfreq / dfreq_scale:.2f}")
        describe(offset + 4, "CHK", 2, "")

    try:
        decode(data)
        lines.append("(decodes cleanly)")
    except FrameError as e:
        lines.append(f"({e.__class__.__name__}: {e})")
    return "\n".join(lines)
