from .waveform import *
from .estimator import *
