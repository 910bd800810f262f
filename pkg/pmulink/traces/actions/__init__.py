from .realign import *
from .statistics import *
from .trim import *
from .groups import *
