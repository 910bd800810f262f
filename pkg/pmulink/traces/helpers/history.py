"""
Let traces keep track of their own history.

Each action appends one line, written roughly the way it
could be typed, so `.history()` reads like a recipe:

```
(
DelayTrace(filepath='records.csv')
.realign()
[<6 of 7 frames>]
.compute_stats()
)
```
"""
from ...imports import *

__all__ = [
    "_setup_history",
    "_record_history_entry",
    "_remove_last_history_entry",
    "_create_history_entry",
    "history",
]

# arrays longer than this are summarized instead of spelled out
_longest_literal = 8


def _setup_history(self):
    self.metadata["history"] = []


def _record_history_entry(self, h):
    """
    Append an entry made by `_create_history_entry`.
    """
    self.metadata.setdefault("history", []).append(h)


def _remove_last_history_entry(self):
    """
    Drop the newest entry (used when one action is built out of another).
    """
    entries = self.metadata.get("history", [])
    if len(entries) > 0:
        entries.pop()


def _describe(x):
    """
    Write one input to an action as a short string.
    """
    if isinstance(x, u.Quantity):
        return f"{_describe(x.value)}*u.Unit('{x.unit}')"
    if isinstance(x, slice):
        text = f"{'' if x.start is None else x.start}:{'' if x.stop is None else x.stop}"
        return text if x.step is None else f"{text}:{x.step}"
    if isinstance(x, np.ndarray):
        if x.dtype == bool:
            return f"<{np.sum(x)} of {len(x)} frames>"
        if x.size > _longest_literal:
            return f"<{x.size} values>"
        return f"np.array({x.tolist()})"
    if isinstance(x, (list, tuple)) and len(x) > _longest_literal:
        return f"<{len(x)} values>"
    return repr(x)


def _create_history_entry(self, name, inputs={}):
    """
    Describe an action and its inputs.

    Parameters
    ----------
    name : str
        The action (a method name, "__getitem__",
        or a class name for constructors).
    inputs : dict
        The action's arguments, usually `locals()`.
        `self` and anything that's None are left out.

    Returns
    -------
    h : str
        One line of history.
    """
    inputs = {k: v for k, v in inputs.items() if k != "self" and v is not None}

    if name == "__getitem__":
        return f"[{_describe(inputs['key'])}]"

    arguments = ", ".join(f"{k}={_describe(v)}" for k, v in inputs.items())

    # constructors don't get a leading dot
    prefix = "" if name[0].isupper() else "."
    return f"{prefix}{name}({arguments})"


def history(self):
    """
    Summarize every action that went into this object.

    Returns
    -------
    history : str
        One action per line, from the moment it was created.
    """
    return "(\n" + "\n".join(self.metadata.get("history", [])) + "\n)"
