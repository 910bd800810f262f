from ..imports import *
from .timeline import Timeline
from ..signals.estimator import Synchrophasor

__all__ = ["SynchrophasorSeries"]


class SynchrophasorSeries(Timeline):
    """
    `SynchrophasorSeries` objects hold a sequence of synchrophasor
    reports: `t_us` (integer µs), magnitude `v` (V), phase `phi`
    (rad), frequency `f` (Hz), and ROCOF `rho`.
    """

    _required_columns = {
        "t_us": np.int64,
        "v": float,
        "phi": float,
        "f": float,
        "rho": float,
    }
    _default_format = "phasor_csv"

    @classmethod
    def from_synchrophasors(cls, synchrophasors, metadata=None):
        """
        Make a series from a list of `Synchrophasor`.

        Parameters
        ----------
        synchrophasors : list of Synchrophasor
            The reports, in any order (they'll be kept in this order).
        metadata : dict, optional
            Anything else to keep with the series.
        """
        synchrophasors = list(synchrophasors)
        if len(synchrophasors) == 0:
            return cls(metadata=metadata)
        framelike = dict(
            t_us=np.array([s.timestamp for s in synchrophasors], dtype=np.int64),
            v=np.array([s.magnitude for s in synchrophasors], dtype=float),
            phi=np.array([s.phase for s in synchrophasors], dtype=float),
            f=np.array([s.frequency for s in synchrophasors], dtype=float),
            rho=np.array([s.rocof for s in synchrophasors], dtype=float),
        )
        return cls(framelike=framelike, metadata=metadata)

    def synchrophasors(self):
        """
        Convert back into a list of `Synchrophasor`.
        """
        return [
            Synchrophasor(
                magnitude=float(self.v[i]),
                phase=float(self.phi[i]),
                frequency=float(self.f[i]),
                rocof=float(self.rho[i]),
                timestamp=int(self.t_us[i]),
            )
            for i in range(self.nframes)
        ]

    @property
    def reporting_interval(self):
        """
        The median time between reports (µs), or None for fewer than two.
        """
        if self.nframes < 2:
            return None
        return float(np.median(np.diff(self.t_us)))
