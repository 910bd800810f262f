from .records import *
from .timeline import *
from .trace import *
from .phasors import *
from .actions.realign import compute_buffer_delays
from .actions.groups import si_group
