"""
Read flat `key = value` configuration files and apply
them to the configuration dataclasses.

A config file looks like this:

```
# a calibrated cat-M channel
si_window = 80
si_grid_offset = 22.5
loss_prob_by_size = 26:0, 42:0.002, 52:0.006, 78:0.033
```
"""
from .imports import *

__all__ = [
    "read_config",
    "parse_value",
    "parse_size_map",
    "apply_config",
    "configure",
    "register_config",
    "recognized_keys",
    "preset_directory",
    "available_presets",
]

preset_directory = os.path.join(data_directory, "presets")

# the configuration dataclasses a config file can fill in, by name
available_configs = {}


def register_config(cls):
    """
    Let config files set the fields of a configuration dataclass.
    """
    available_configs[cls.__name__] = cls
    return cls


def recognized_keys():
    """
    Every key that some registered configuration understands.
    """
    return {f.name for cls in available_configs.values() for f in fields(cls)}


def available_presets():
    """
    List the names of the config presets that ship with `pmulink`.
    """
    files = glob.glob(os.path.join(preset_directory, "*.cfg"))
    return sorted([os.path.basename(f).replace(".cfg", "") for f in files])


def read_config(path):
    """
    Read a flat key-value config file.

    Parameters
    ----------
    path : str
        The file to read, or the name of one of the
        `available_presets()` (like "default").

    Returns
    -------
    values : dict
        The raw {key: value} strings, in file order.
    """
    if not os.path.exists(path):
        preset = os.path.join(preset_directory, f"{path}.cfg")
        if os.path.exists(preset):
            path = preset
        else:
            raise ConfigurationError(
                f"""
            The config file {path} doesn't exist, and it isn't
            one of the presets {available_presets()} either.
            """
            )

    # an all-comment file is a valid (empty) config
    with open(path) as f:
        lines = [l.strip() for l in f.readlines()]
    if not any(l and not l.startswith("#") for l in lines):
        return {}

    table = ascii.read(
        path,
        format="no_header",
        delimiter="=",
        comment=r"\s*#",
        names=["key", "value"],
        converters={
            "key": [ascii.convert_numpy(str)],
            "value": [ascii.convert_numpy(str)],
        },
        guess=False,
    )
    values = {}
    for row in table:
        values[str(row["key"]).strip()] = str(row["value"]).split("#")[0].strip()
    return values


def parse_size_map(text):
    """
    Parse a "size:value, size:value" string into a dictionary.

    Parameters
    ----------
    text : str, dict
        Something like "26:0, 42:0.002". A dictionary passes straight through.

    Returns
    -------
    mapping : dict
        Integer frame sizes (bytes) mapped onto floats.
    """
    if isinstance(text, dict):
        return {int(k): float(v) for k, v in text.items()}
    mapping = {}
    text = str(text).strip()
    if text.lower() in ["", "none", "{}"]:
        return mapping
    for item in text.replace(";", ",").split(","):
        if item.strip() == "":
            continue
        try:
            size, value = item.split(":")
            mapping[int(size)] = float(value)
        except ValueError:
            raise ConfigurationError(
                f"""
            Couldn't understand '{item.strip()}' in '{text}'.
            Maps should look like "26:0, 42:0.002".
            """
            )
    return mapping


def _parse_bool(text):
    if isinstance(text, (bool, np.bool_)):
        return bool(text)
    lowered = str(text).strip().lower()
    if lowered in ["true", "yes", "on", "1"]:
        return True
    if lowered in ["false", "no", "off", "0"]:
        return False
    raise ConfigurationError(f"'{text}' is neither true nor false.")


def _parse_int(text):
    value = float(text)
    if not value.is_integer():
        raise ConfigurationError(f"'{text}' should be a whole number.")
    return int(value)


def _parse_tuple(text):
    if isinstance(text, (tuple, list)):
        return tuple(float(x) for x in text)
    return tuple(float(x) for x in str(text).split(",") if x.strip() != "")


_parsers = {
    bool: _parse_bool,
    int: _parse_int,
    float: float,
    dict: parse_size_map,
    tuple: _parse_tuple,
    str: str,
}


def parse_value(text, kind, key="?"):
    """
    Convert a raw config string into the type a dataclass field wants.

    Parameters
    ----------
    text : str
        The raw string from the config file.
    kind : type
        The annotated type of the field.
    key : str
        The name of the field (for friendlier error messages).
    """
    if str(text).strip().lower() == "none":
        return None
    try:
        return _parsers.get(kind, str)(text)
    except (TypeError, ValueError) as e:
        if isinstance(e, ConfigurationError):
            raise
        raise ConfigurationError(
            f"""
        The config value {key} = {text} can't be read as {kind.__name__}.
        """
        )


def apply_config(obj, values):
    """
    Create a copy of a configuration dataclass with some fields replaced.

    Only keys that match a field of `obj` are used. Keys meant for
    another registered configuration (a preset can hold experiment
    and channel settings side by side) are skipped quietly; keys
    that no configuration understands are ignored with a warning.

    Parameters
    ----------
    obj : dataclass
        The configuration to start from.
    values : dict
        {field: raw string or already-typed value}

    Returns
    -------
    updated : dataclass
        A new object, validated by its own `__post_init__`.
    """
    kinds = {f.name: f.type for f in fields(obj)}
    unknown = [k for k in values if k not in kinds and k not in recognized_keys()]
    if len(unknown) > 0:
        cheerfully_suggest(
            f"""
        These config keys weren't recognized by any configuration
        and will be ignored: {unknown}
        """
        )

    changes = {}
    for key, value in values.items():
        if key not in kinds:
            continue
        if isinstance(value, str):
            value = parse_value(value, kinds[key], key)
        changes[key] = value
    return replace(obj, **changes)


def configure(values, *objects):
    """
    Apply one set of key-value pairs to several configuration objects.

    Keys that belong to more than one object are applied to all of them.
    Keys that belong to none of them trigger a warning.

    Parameters
    ----------
    values : dict
        {key: value}, for example from `read_config`.
    *objects : dataclass
        The configurations to update.

    Returns
    -------
    updated : list
        The updated configurations, in the same order.
    """
    claimed = set()
    updated = []
    for obj in objects:
        names = {f.name for f in fields(obj)}
        mine = {k: v for k, v in values.items() if k in names}
        claimed.update(mine)
        updated.append(apply_config(obj, mine))

    unknown = [k for k in values if k not in claimed]
    if len(unknown) > 0:
        cheerfully_suggest(
            f"""
        These config keys weren't recognized and will be ignored:
        {unknown}
        """
        )
    return updated
