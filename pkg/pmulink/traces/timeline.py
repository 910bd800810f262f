from ..imports import *
from .readers import *

__all__ = ["Timeline"]


class Timeline:
    """
    `Timeline` objects hold one row of values per frame (or per
    report), along with metadata and a history of what's been
    done to them. `DelayTrace` and `SynchrophasorSeries` inherit
    from `Timeline`.

    Attributes
    ----------
    framelike : dict
        A dictionary of 1D arrays with shape `(nframes,)`,
        for which there's one value for each frame.
    metadata : dict
        A dictionary containing all other useful information
        that should stay connected to the object, in any format.
    """

    # all Timelines must contain these core dictionaries
    _core_dictionaries = ["framelike", "metadata"]

    # the columns that must exist (in this order), with their types
    _required_columns = {}

    # the reader/writer to use when a filename doesn't say
    _default_format = None

    def __init__(self, filepath=None, format=None, framelike=None, metadata=None, **kw):
        """
        Initialize a `Timeline` object.

        Parameters
        ----------
        filepath : str, optional
            A file to read.
        format : str, optional
            The file format to read. If None, it
            will be guessed from the filepath.
        framelike : dict, optional
            A dictionary of 1D arrays, all with the same length.
        metadata : dict, optional
            A dictionary of anything else.
        **kw : dict, optional
            Additional 1D arrays to put into `framelike`.
        """
        # create a history entry for this action (arrays are left out)
        h = self._create_history_entry(
            self.__class__.__name__, dict(filepath=filepath, format=format)
        )

        self.__dict__["framelike"] = {}
        self.__dict__["metadata"] = {}
        self._setup_history()

        if filepath is not None:
            self._initialize_from_file(filepath=filepath, format=format)
        else:
            framelike = dict(framelike or {})
            framelike.update(kw)
            self._initialize_from_dictionaries(
                framelike=framelike, metadata=metadata or {}
            )

        self._record_history_entry(h)

    def _initialize_from_dictionaries(self, framelike={}, metadata={}):
        """
        Populate from dictionaries in the correct format.

        Parameters
        ----------
        framelike : dict
            A dictionary of 1D arrays, all with the same length.
        metadata : dict
            A dictionary of anything else.
        """

        # copy, to prevent accidental links
        for k in framelike:
            self.framelike[k] = np.array(framelike[k], copy=True)

        history = self.metadata.get("history", [])
        self.metadata.update(**metadata)
        if "history" not in metadata:
            self.metadata["history"] = history

        self._validate_core_dictionaries()

    def _initialize_from_file(self, filepath=None, format=None, **kw):
        """
        Populate from a file.

        Parameters
        ----------
        filepath : str
            The file to read.
        format : str, optional
            The file format. If None, it will be guessed.
        """
        assert filepath is not None
        reader = guess_reader(filepath=filepath, format=format or self._default_format)
        reader(self, filepath, **kw)
        self._validate_core_dictionaries()

    def _validate_core_dictionaries(self):
        """
        Make sure every framelike array has the same length,
        and that the required columns exist.
        """
        # an empty object still gets its (empty) required columns
        if len(self.framelike) == 0:
            for k, dtype in self._required_columns.items():
                self.framelike[k] = np.array([], dtype=dtype)

        lengths = {k: len(v) for k, v in self.framelike.items()}
        if len(set(lengths.values())) > 1:
            raise ContractViolation(
                f"""
            Every framelike array needs the same length,
            but these don't agree: {lengths}
            """
            )
        missing = [k for k in self._required_columns if k not in self.framelike]
        if len(missing) > 0:
            raise ContractViolation(f"These required columns are missing: {missing}")

        # keep the columns in a predictable order
        ordered = {k: self.framelike[k] for k in self._required_columns}
        ordered.update(
            {k: v for k, v in self.framelike.items() if k not in ordered}
        )
        self.__dict__["framelike"] = ordered

    def _get_core_dictionaries(self):
        """
        Get the core dictionaries of this object.

        Returns
        -------
        core : dict
            Dictionary containing the keys ['framelike', 'metadata']
        """
        return {k: vars(self)[k] for k in self._core_dictionaries}

    def _create_copy(self):
        """
        Create a copy of self, with the core dictionaries copied.
        """
        new = type(self)()
        new._initialize_from_dictionaries(
            **copy.deepcopy(self._get_core_dictionaries())
        )
        return new

    def __getattr__(self, key):
        """
        If an attribute isn't explicitly defined,
        try to pull it from one of the core dictionaries,
        so `t.delay_us` works like `t.framelike['delay_us']`.

        Parameters
        ----------
        key : str
            The attribute we're trying to get.
        """
        if key not in self._core_dictionaries:
            for dictionary_name in self._core_dictionaries:
                try:
                    return self.__dict__[dictionary_name][key]
                except KeyError:
                    pass
        message = f"📡.{key} does not exist for this {self.__class__.__name__}"
        raise AttributeError(message)

    def __setattr__(self, key, value):
        """
        Sort arrays with one value per frame into `framelike`,
        strings into `metadata`, and everything else onto the object.
        """
        if key in self._core_dictionaries:
            raise ContractViolation(f"{key} is a core dictionary, and can't be replaced.")
        elif isinstance(value, str):
            self.metadata[key] = value
        elif np.ndim(value) == 1 and len(value) == self.nframes:
            self.framelike[key] = np.array(value, copy=True)
        else:
            self.__dict__[key] = value

    @property
    def nframes(self):
        """
        The number of rows.
        """
        for k in list(self._required_columns) + list(self.framelike):
            if k in self.framelike:
                return len(self.framelike[k])
        return 0

    def __len__(self):
        return self.nframes

    @property
    def name(self):
        return self.metadata.get("name", None)

    def __getitem__(self, key):
        """
        Trim by indexing, slicing, or masking.

        Examples
        --------
        ```
        t[10:20]
        t[np.arange(10, 20)]
        t[t.status == "delivered"]
        ```

        Parameters
        ----------
        key : int, slice, array
            The rows to keep.
        """
        # create a history entry for this action (before other variables are defined)
        h = self._create_history_entry("__getitem__", locals())

        new = self._create_copy()

        # make sure we don't drop down to scalars
        if isinstance(key, (int, np.integer)):
            key = [key]

        for k in self.framelike:
            new.framelike[k] = self.framelike[k][key]

        new._validate_core_dictionaries()
        new._record_history_entry(h)
        return new

    def __eq__(self, other):
        """
        Test whether `self == other`, comparing every framelike
        array exactly and skipping the metadata.
        """
        if not isinstance(other, Timeline):
            return False
        if set(self.framelike) != set(other.framelike):
            return False
        return all(
            np.array_equal(self.framelike[k], other.framelike[k])
            for k in self.framelike
        )

    def __repr__(self):
        """
        How should this object be represented as a string?
        """
        n = self.__class__.__name__
        if self.name is not None:
            n += f"'{self.name}'"
        return f"<{n}({self.nframes} frames)>"

    from .helpers import (
        _setup_history,
        _record_history_entry,
        _remove_last_history_entry,
        _create_history_entry,
        history,
        help,
        save,
        get,
    )
    from .converters import to_df
